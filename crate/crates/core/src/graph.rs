//! Simple undirected graphs and their serialisations.

use std::collections::VecDeque;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Simple undirected graph on vertices `0..n`.
///
/// Edges are kept as a sorted, duplicate-free list of `(min, max)` pairs and
/// the adjacency lists are derived from them. Labels are display metadata
/// only: they are ignored by equality and by every algorithm.
#[derive(Clone, Debug)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl Graph {
    /// Builds a graph, rejecting self-loops, out-of-range endpoints and
    /// duplicate edges (in either orientation).
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut norm = Vec::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::input(format!("self-loop at vertex {a}")));
            }
            if a >= n || b >= n {
                return Err(Error::input(format!("edge ({a}, {b}) out of range for {n} vertices")));
            }
            norm.push((a.min(b), a.max(b)));
        }
        norm.sort_unstable();
        if let Some(w) = norm.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::input(format!("duplicate edge ({}, {})", w[0].0, w[0].1)));
        }
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &norm {
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { n, edges: norm, adj, labels: None })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::input(format!("{} labels given for {} vertices", labels.len(), self.n)));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => format!("{}", v + 1),
        }
    }

    /// Sorted neighbour list of `v`. Panics when `v` is out of range.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.n && self.adj[a].binary_search(&b).is_ok()
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        self.adj
            .get(v)
            .map(Vec::len)
            .ok_or_else(|| Error::input(format!("vertex {v} out of range for {} vertices", self.n)))
    }

    /// Δ(G).
    pub fn max_degree(&self) -> Result<usize> {
        self.adj.iter().map(Vec::len).max().ok_or_else(|| Error::input("max degree of an empty graph"))
    }

    pub fn is_connected(&self) -> Result<bool> {
        if self.n == 0 {
            return Err(Error::input("connectivity of an empty graph"));
        }
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        Ok(count == self.n)
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.n * self.n.saturating_sub(1) / 2
    }

    /// Connected and 2-regular with an odd number of vertices.
    pub fn is_odd_cycle(&self) -> bool {
        self.n >= 3
            && self.n % 2 == 1
            && self.edges.len() == self.n
            && self.adj.iter().all(|a| a.len() == 2)
            && self.is_connected().unwrap_or(false)
    }

    pub fn export(&self, format: ExportFormat) -> String {
        match format {
            ExportFormat::DimacsCol => self.to_dimacs(),
            ExportFormat::Json => self.to_json(),
            ExportFormat::Dot => self.to_dot(),
        }
    }

    /// `p edge n m` followed by 1-based `e u v` lines in edge order.
    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p edge {} {}\n", self.n, self.edges.len());
        for &(a, b) in &self.edges {
            let _ = writeln!(out, "e {} {}", a + 1, b + 1);
        }
        out
    }

    pub fn from_dimacs(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            let bad = || Error::Parse(format!("dimacs line {}: {line:?}", lineno + 1));
            let mut parts = line.split_whitespace();
            match parts.next() {
                None | Some("c") => continue,
                Some("p") => {
                    if header.is_some() || parts.next() != Some("edge") {
                        return Err(bad());
                    }
                    let n = parts.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
                    let m = parts.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
                    header = Some((n, m));
                }
                Some("e") => {
                    let a: usize = parts.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
                    let b: usize = parts.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
                    if a == 0 || b == 0 || header.is_none() {
                        return Err(bad());
                    }
                    edges.push((a - 1, b - 1));
                }
                Some(_) => return Err(bad()),
            }
        }
        let (n, m) = header.ok_or_else(|| Error::Parse("dimacs: missing 'p edge' header".into()))?;
        if edges.len() != m {
            return Err(Error::Parse(format!("dimacs: header declares {m} edges, found {}", edges.len())));
        }
        Graph::new(n, edges)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphJson::from(self)).expect("graph serialises")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: GraphJson = serde_json::from_str(text)?;
        let g = Graph::new(raw.n, raw.edges.into_iter().map(|[a, b]| (a, b)))?;
        match raw.labels {
            Some(l) => g.with_labels(l),
            None => Ok(g),
        }
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for v in 0..self.n {
            let _ = writeln!(out, "  {v} [label=\"{}\"];", self.label(v).replace('"', "\\\""));
        }
        for &(a, b) in &self.edges {
            let _ = writeln!(out, "  {a} -- {b};");
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson { n: g.n, edges: g.edges.iter().map(|&(a, b)| [a, b]).collect(), labels: g.labels.clone() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    DimacsCol,
    Json,
    Dot,
}

impl FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dimacs" | "dimacs-col" | "col" => Ok(ExportFormat::DimacsCol),
            "json" => Ok(ExportFormat::Json),
            "dot" => Ok(ExportFormat::Dot),
            _ => Err(Error::input(format!("unknown graph format {s:?}"))),
        }
    }
}

/// Cycle on `n` vertices without labels; handy in tests and for callers
/// building small fixtures.
pub fn cycle(n: usize) -> Graph {
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid cycle")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_malformed_edges() {
        assert!(matches!(Graph::new(3, [(1, 1)]), Err(Error::InvalidInput(_))));
        assert!(matches!(Graph::new(3, [(0, 3)]), Err(Error::InvalidInput(_))));
        assert!(matches!(Graph::new(3, [(0, 1), (1, 0)]), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn degree_queries() {
        let c3 = cycle(3);
        assert_eq!(c3.degree(0).unwrap(), 2);
        assert!(c3.degree(3).is_err());
        assert_eq!(cycle(5).max_degree().unwrap(), 2);
        assert!(Graph::new(0, []).unwrap().max_degree().is_err());
    }

    #[test]
    fn connectivity() {
        assert!(cycle(4).is_connected().unwrap());
        let two_edges = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert!(!two_edges.is_connected().unwrap());
        assert!(Graph::new(0, []).unwrap().is_connected().is_err());
    }

    #[test]
    fn dimacs_export() {
        assert_eq!(cycle(3).to_dimacs(), "p edge 3 3\ne 1 2\ne 1 3\ne 2 3\n");
        assert_eq!(Graph::new(1, []).unwrap().to_dimacs(), "p edge 1 0\n");
        let back = Graph::from_dimacs(&cycle(6).to_dimacs()).unwrap();
        assert_eq!(back, cycle(6));
    }

    #[test]
    fn dimacs_rejects_count_mismatch() {
        assert!(Graph::from_dimacs("p edge 3 2\ne 1 2\n").is_err());
        assert!(Graph::from_dimacs("e 1 2\n").is_err());
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let g = cycle(4).with_labels(vec!["v1".into(), "v2".into(), "v3".into(), "v4".into()]).unwrap();
        let text = g.to_json();
        assert_eq!(text, r#"{"n":4,"edges":[[0,1],[0,3],[1,2],[2,3]],"labels":["v1","v2","v3","v4"]}"#);
        let back = Graph::from_json(&text).unwrap();
        assert_eq!(back, g);
        assert_eq!(back.to_json(), text);
    }

    #[test]
    fn labels_do_not_affect_equality() {
        let a = cycle(3);
        let b = cycle(3).with_labels(vec!["x".into(), "y".into(), "z".into()]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn dot_mentions_every_edge() {
        let dot = cycle(3).to_dot();
        assert!(dot.starts_with("graph G {"));
        assert_eq!(dot.matches(" -- ").count(), 3);
    }
}
