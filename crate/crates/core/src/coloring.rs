//! Colourings, their validity checks, and the exact equitable-colouring
//! search.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{FamilyId, FamilyKind};
use crate::graph::Graph;

/// Environment variable overriding the per-`(graph, k)` search budget.
pub const TIMEOUT_ENV: &str = "EQUICHROMA_TIMEOUT_MS";

/// A vertex colouring with colours `1..=k`, every one of them used.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coloring {
    k: usize,
    assignment: Vec<usize>,
}

impl Coloring {
    pub fn new(k: usize, assignment: Vec<usize>) -> Result<Self> {
        if k == 0 {
            return Err(Error::input("a colouring needs at least one colour"));
        }
        let mut used = vec![false; k];
        for (v, &c) in assignment.iter().enumerate() {
            if c == 0 || c > k {
                return Err(Error::input(format!("vertex {v} has colour {c}, outside 1..={k}")));
            }
            used[c - 1] = true;
        }
        if let Some(c) = used.iter().position(|u| !u) {
            return Err(Error::input(format!("colour {} of {k} is never used", c + 1)));
        }
        Ok(Coloring { k, assignment })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n_vertices(&self) -> usize {
        self.assignment.len()
    }

    /// 1-based colour of every vertex.
    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    /// Size of each colour class, indexed by colour - 1.
    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.k];
        for &c in &self.assignment {
            sizes[c - 1] += 1;
        }
        sizes
    }

    pub fn to_json(&self, family: Option<FamilyId>) -> String {
        let file = ColoringFile {
            family: family.map(|f| f.kind.name().to_string()),
            n: family.map(|f| f.n),
            k: self.k,
            assignment: self.assignment.clone(),
        };
        serde_json::to_string(&file).expect("colouring serialises")
    }

    /// Parses the colouring file format, returning the family tag when the
    /// file carries one.
    pub fn from_json(text: &str) -> Result<(Coloring, Option<FamilyId>)> {
        let file: ColoringFile = serde_json::from_str(text)?;
        let family = match (file.family, file.n) {
            (Some(name), Some(n)) => Some(FamilyId::new(name.parse::<FamilyKind>()?, n)?),
            (None, None) => None,
            _ => return Err(Error::Parse("colouring file sets only one of family / n".into())),
        };
        Ok((Coloring::new(file.k, file.assignment)?, family))
    }
}

#[derive(Serialize, Deserialize)]
struct ColoringFile {
    family: Option<String>,
    n: Option<u32>,
    k: usize,
    assignment: Vec<usize>,
}

pub fn is_proper(g: &Graph, c: &Coloring) -> Result<bool> {
    if c.n_vertices() != g.n_vertices() {
        return Err(Error::input(format!(
            "colouring covers {} vertices, graph has {}",
            c.n_vertices(),
            g.n_vertices()
        )));
    }
    let a = c.assignment();
    Ok(g.edges().iter().all(|&(u, v)| a[u] != a[v]))
}

/// Class sizes pairwise differ by at most one.
pub fn is_equitable(c: &Coloring) -> bool {
    let sizes = c.class_sizes();
    let max = sizes.iter().max().copied().unwrap_or(0);
    let min = sizes.iter().min().copied().unwrap_or(0);
    max - min <= 1
}

/// The only class-size multiset an equitable `k`-colouring of `n` vertices
/// can have, largest first.
pub fn forced_class_sizes(n: usize, k: usize) -> Result<Vec<usize>> {
    if k == 0 || k > n {
        return Err(Error::input(format!("cannot split {n} vertices into {k} nonempty classes")));
    }
    let (q, r) = (n / k, n % k);
    Ok(std::iter::repeat_n(q + 1, r).chain(std::iter::repeat_n(q, k - r)).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolverConfig {
    /// Wall-clock budget for one `(graph, k)` feasibility test.
    pub timeout: Duration,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { timeout: Duration::from_secs(10) }
    }
}

impl SolverConfig {
    /// Default budget, overridden by `EQUICHROMA_TIMEOUT_MS` when it is set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(TIMEOUT_ENV) {
            Ok(v) => {
                let ms: u64 = v
                    .trim()
                    .parse()
                    .map_err(|_| Error::input(format!("{TIMEOUT_ENV}={v:?} is not a millisecond count")))?;
                Ok(SolverConfig { timeout: Duration::from_millis(ms) })
            }
            Err(_) => Ok(SolverConfig::default()),
        }
    }
}

/// Exact search for an equitable colouring with exactly `k` classes.
///
/// Returns `Ok(None)` when none exists. Exceeding the budget is an
/// [`Error::Timeout`], never a `None`.
pub fn find_equitable_coloring(g: &Graph, k: usize, config: &SolverConfig) -> Result<Option<Coloring>> {
    let n = g.n_vertices();
    if n == 0 {
        return Err(Error::input("cannot colour an empty graph"));
    }
    if k == 0 || k > n {
        return Err(Error::input(format!("k = {k} is outside 1..={n}")));
    }
    let mut search = Search::new(g, k, config.timeout);
    if search.run(0)? {
        let assignment = search.color.clone();
        Ok(Some(Coloring::new(k, assignment).expect("search fills every class")))
    } else {
        Ok(None)
    }
}

/// χₑ(G): the smallest `k` admitting an equitable colouring.
///
/// The scan starts at the size of a greedily grown clique (a genuine
/// clique, so a valid lower bound) and tests every `k` exactly, since
/// equitable colourability is not monotone in `k`.
pub fn equitable_chromatic_number(g: &Graph, config: &SolverConfig) -> Result<usize> {
    let n = g.n_vertices();
    if n == 0 {
        return Err(Error::input("cannot colour an empty graph"));
    }
    let start = greedy_clique(g).len().max(1);
    for k in start..=n {
        if find_equitable_coloring(g, k, config)?.is_some() {
            return Ok(k);
        }
    }
    unreachable!("n singleton classes always form an equitable colouring")
}

/// Largest clique found by growing greedily from each vertex in
/// descending-degree order.
pub fn greedy_clique(g: &Graph) -> Vec<usize> {
    let order = degree_order(g);
    let mut best = Vec::new();
    for &seed in &order {
        let mut clique = vec![seed];
        for &v in &order {
            if v != seed && clique.iter().all(|&c| g.has_edge(c, v)) {
                clique.push(v);
            }
        }
        if clique.len() > best.len() {
            best = clique;
        }
    }
    best
}

fn degree_order(g: &Graph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.n_vertices()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.neighbors(v).len()), v));
    order
}

/// Backtracking state. Classes are 0-based here; the public colouring is
/// 1-based.
struct Search<'g> {
    g: &'g Graph,
    k: usize,
    q: usize,
    r: usize,
    order: Vec<usize>,
    color: Vec<usize>,
    size: Vec<usize>,
    /// `forbidden[c * n + v]`: neighbours of `v` already in class `c`.
    forbidden: Vec<u32>,
    /// Unassigned vertices that class `c` could still absorb.
    available: Vec<usize>,
    opened: usize,
    full_big: usize,
    unassigned: usize,
    nodes: u64,
    deadline: Instant,
    budget: Duration,
}

impl<'g> Search<'g> {
    fn new(g: &'g Graph, k: usize, budget: Duration) -> Self {
        let n = g.n_vertices();
        Search {
            g,
            k,
            q: n / k,
            r: n % k,
            order: degree_order(g),
            color: vec![0; n],
            size: vec![0; k],
            forbidden: vec![0; k * n],
            available: vec![n; k],
            opened: 0,
            full_big: 0,
            unassigned: n,
            nodes: 0,
            deadline: Instant::now() + budget,
            budget,
        }
    }

    fn can_take(&self, c: usize) -> bool {
        self.size[c] < self.q || (self.size[c] == self.q && self.full_big < self.r)
    }

    fn assign(&mut self, v: usize, c: usize) {
        let n = self.g.n_vertices();
        self.color[v] = c + 1;
        self.size[c] += 1;
        if self.size[c] == self.q + 1 {
            self.full_big += 1;
        }
        self.unassigned -= 1;
        for cc in 0..self.k {
            if self.forbidden[cc * n + v] == 0 {
                self.available[cc] -= 1;
            }
        }
        for &w in self.g.neighbors(v) {
            if self.color[w] == 0 {
                let f = &mut self.forbidden[c * n + w];
                *f += 1;
                if *f == 1 {
                    self.available[c] -= 1;
                }
            }
        }
        if c == self.opened {
            self.opened += 1;
        }
    }

    fn unassign(&mut self, v: usize, c: usize) {
        let n = self.g.n_vertices();
        for &w in self.g.neighbors(v) {
            if self.color[w] == 0 {
                let f = &mut self.forbidden[c * n + w];
                *f -= 1;
                if *f == 0 {
                    self.available[c] += 1;
                }
            }
        }
        for cc in 0..self.k {
            if self.forbidden[cc * n + v] == 0 {
                self.available[cc] += 1;
            }
        }
        if self.size[c] == self.q + 1 {
            self.full_big -= 1;
        }
        self.size[c] -= 1;
        self.unassigned += 1;
        self.color[v] = 0;
        if self.size[c] == 0 && c + 1 == self.opened {
            self.opened -= 1;
        }
    }

    fn feasible(&self) -> bool {
        let mut deficit = 0;
        for c in 0..self.k {
            let need = self.q.saturating_sub(self.size[c]);
            if need > self.available[c] {
                return false;
            }
            deficit += need;
        }
        if deficit > self.unassigned {
            return false;
        }
        if self.opened < self.k {
            return true;
        }
        // With every class open, each remaining vertex needs a class with
        // room and no neighbour in it.
        let n = self.g.n_vertices();
        self.order
            .iter()
            .filter(|&&v| self.color[v] == 0)
            .all(|&v| (0..self.k).any(|c| self.forbidden[c * n + v] == 0 && self.can_take(c)))
    }

    fn run(&mut self, depth: usize) -> Result<bool> {
        if depth == self.order.len() {
            return Ok(true);
        }
        self.nodes += 1;
        if self.nodes.is_multiple_of(4096) && Instant::now() > self.deadline {
            return Err(Error::Timeout { k: self.k, budget: self.budget });
        }
        let n = self.g.n_vertices();
        let v = self.order[depth];
        let limit = (self.opened + 1).min(self.k);
        for c in 0..limit {
            if self.forbidden[c * n + v] != 0 || !self.can_take(c) {
                continue;
            }
            self.assign(v, c);
            if self.feasible() && self.run(depth + 1)? {
                return Ok(true);
            }
            self.unassign(v, c);
        }
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{generate, FamilyKind};
    use crate::graph::cycle;

    fn cfg() -> SolverConfig {
        SolverConfig::default()
    }

    fn family(kind: FamilyKind, n: u32) -> Graph {
        generate(FamilyId::new(kind, n).unwrap()).unwrap()
    }

    #[test]
    fn coloring_rejects_unused_or_out_of_range_colours() {
        assert!(Coloring::new(3, vec![1, 2, 2]).is_err());
        assert!(Coloring::new(2, vec![1, 3]).is_err());
        assert!(Coloring::new(2, vec![0, 1]).is_err());
        assert!(Coloring::new(0, vec![]).is_err());
    }

    #[test]
    fn properness() {
        let c4 = cycle(4);
        assert!(is_proper(&c4, &Coloring::new(2, vec![1, 2, 1, 2]).unwrap()).unwrap());
        let c3 = cycle(3);
        assert!(!is_proper(&c3, &Coloring::new(2, vec![1, 1, 2]).unwrap()).unwrap());
        assert!(is_proper(&c3, &Coloring::new(2, vec![1, 2]).unwrap()).is_err());
    }

    #[test]
    fn equitability() {
        assert!(is_equitable(&Coloring::new(3, vec![1, 1, 2, 2, 3]).unwrap()));
        assert!(!is_equitable(&Coloring::new(2, vec![1, 1, 1, 2]).unwrap()));
    }

    #[test]
    fn forced_sizes() {
        assert_eq!(forced_class_sizes(9, 5).unwrap(), [2, 2, 2, 2, 1]);
        assert_eq!(forced_class_sizes(17, 4).unwrap(), [5, 4, 4, 4]);
        assert!(forced_class_sizes(3, 4).is_err());
    }

    #[test]
    fn solver_spot_cases() {
        assert!(find_equitable_coloring(&cycle(5), 2, &cfg()).unwrap().is_none());
        let w3 = family(FamilyKind::Wheel, 3);
        assert!(find_equitable_coloring(&w3, 3, &cfg()).unwrap().is_none());
        let w8 = family(FamilyKind::Wheel, 8);
        let c = find_equitable_coloring(&w8, 5, &cfg()).unwrap().unwrap();
        assert!(is_proper(&w8, &c).unwrap());
        let mut sizes = c.class_sizes();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        assert_eq!(sizes, [2, 2, 2, 2, 1]);
    }

    #[test]
    fn solver_rejects_bad_k() {
        let c3 = cycle(3);
        assert!(find_equitable_coloring(&c3, 4, &cfg()).is_err());
        assert!(find_equitable_coloring(&c3, 0, &cfg()).is_err());
    }

    #[test]
    fn chromatic_numbers() {
        assert_eq!(equitable_chromatic_number(&family(FamilyKind::Wheel, 8), &cfg()).unwrap(), 5);
        assert_eq!(equitable_chromatic_number(&family(FamilyKind::Wheel, 9), &cfg()).unwrap(), 6);
        assert_eq!(equitable_chromatic_number(&family(FamilyKind::Helm, 7), &cfg()).unwrap(), 4);
        assert_eq!(equitable_chromatic_number(&cycle(4), &cfg()).unwrap(), 2);
        assert_eq!(equitable_chromatic_number(&cycle(7), &cfg()).unwrap(), 3);
        assert_eq!(equitable_chromatic_number(&Graph::new(1, []).unwrap(), &cfg()).unwrap(), 1);
    }

    #[test]
    fn even_helm_needs_only_three_colours() {
        let h4 = family(FamilyKind::Helm, 4);
        let c = find_equitable_coloring(&h4, 3, &cfg()).unwrap().unwrap();
        assert!(is_proper(&h4, &c).unwrap());
        assert_eq!(c.class_sizes(), [3, 3, 3]);
    }

    #[test]
    fn blossom_needs_n_plus_one_colours() {
        for n in 3..=10 {
            let g = family(FamilyKind::Blossom, n);
            assert_eq!(equitable_chromatic_number(&g, &cfg()).unwrap(), n as usize + 1, "n = {n}");
        }
    }

    #[test]
    fn tiny_budget_reports_timeout() {
        let g = family(FamilyKind::ClosedHelm, 30);
        let quick = SolverConfig { timeout: Duration::ZERO };
        match find_equitable_coloring(&g, 3, &quick) {
            Err(Error::Timeout { k: 3, .. }) | Ok(None) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn greedy_clique_is_a_clique() {
        let g = family(FamilyKind::Blossom, 5);
        let cl = greedy_clique(&g);
        assert_eq!(cl.len(), 4);
        for (i, &a) in cl.iter().enumerate() {
            for &b in &cl[i + 1..] {
                assert!(g.has_edge(a, b));
            }
        }
    }

    #[test]
    fn coloring_file_round_trip() {
        let fid = FamilyId::new(FamilyKind::Wheel, 4).unwrap();
        let c = Coloring::new(3, vec![1, 2, 1, 2, 3]).unwrap();
        let text = c.to_json(Some(fid));
        assert_eq!(text, r#"{"family":"wheel","n":4,"k":3,"assignment":[1,2,1,2,3]}"#);
        let (back, f) = Coloring::from_json(&text).unwrap();
        assert_eq!((back, f), (c.clone(), Some(fid)));
        let bare = c.to_json(None);
        assert_eq!(bare, r#"{"family":null,"n":null,"k":3,"assignment":[1,2,1,2,3]}"#);
        assert!(Coloring::from_json(r#"{"family":"wheel","n":null,"k":1,"assignment":[1]}"#).is_err());
    }
}
