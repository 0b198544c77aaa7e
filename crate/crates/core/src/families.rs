//! Generators for the wheel-related graph families and the constructive
//! equitable colorings that go with them.
//!
//! Every family uses one fixed vertex layout: rim vertices `v1..vn` at
//! indices `0..n`, the hub (when present) at index `n`, and the outer or
//! pendant vertices `u1..un` at indices `n+1..=2n`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::coloring::{forced_class_sizes, is_equitable, is_proper, Coloring};
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    Cycle,
    Wheel,
    DoubleWheel,
    Helm,
    ClosedHelm,
    Flower,
    Sunflower,
    ClosedSunflower,
    Blossom,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 9] = [
        FamilyKind::Cycle,
        FamilyKind::Wheel,
        FamilyKind::DoubleWheel,
        FamilyKind::Helm,
        FamilyKind::ClosedHelm,
        FamilyKind::Flower,
        FamilyKind::Sunflower,
        FamilyKind::ClosedSunflower,
        FamilyKind::Blossom,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Cycle => "cycle",
            FamilyKind::Wheel => "wheel",
            FamilyKind::DoubleWheel => "double_wheel",
            FamilyKind::Helm => "helm",
            FamilyKind::ClosedHelm => "closed_helm",
            FamilyKind::Flower => "flower",
            FamilyKind::Sunflower => "sunflower",
            FamilyKind::ClosedSunflower => "closed_sunflower",
            FamilyKind::Blossom => "blossom",
        }
    }

    fn has_hub(self) -> bool {
        self != FamilyKind::Cycle
    }

    fn has_outer(self) -> bool {
        !matches!(self, FamilyKind::Cycle | FamilyKind::Wheel)
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FamilyKind::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| Error::input(format!("unknown family {s:?}")))
    }
}

/// A concrete family member, e.g. the helm on a 9-cycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FamilyId {
    pub kind: FamilyKind,
    pub n: u32,
}

impl FamilyId {
    pub fn new(kind: FamilyKind, n: u32) -> Result<Self> {
        if n < 3 {
            return Err(Error::input(format!("{kind} needs n >= 3, got {n}")));
        }
        Ok(FamilyId { kind, n })
    }

    pub fn n_vertices(&self) -> usize {
        let n = self.n as usize;
        match self.kind {
            FamilyKind::Cycle => n,
            FamilyKind::Wheel => n + 1,
            _ => 2 * n + 1,
        }
    }

    pub fn n_edges(&self) -> usize {
        let n = self.n as usize;
        n * match self.kind {
            FamilyKind::Cycle => 1,
            FamilyKind::Wheel => 2,
            FamilyKind::Helm => 3,
            FamilyKind::DoubleWheel | FamilyKind::ClosedHelm | FamilyKind::Flower | FamilyKind::Sunflower => 4,
            FamilyKind::ClosedSunflower => 5,
            FamilyKind::Blossom => 6,
        }
    }

    /// Number of colours used by the published colouring patterns.
    pub fn published_color_count(&self) -> usize {
        let n = self.n as usize;
        match self.kind {
            FamilyKind::Cycle => {
                if n.is_multiple_of(2) {
                    2
                } else {
                    3
                }
            }
            FamilyKind::Wheel => {
                if n.is_multiple_of(2) {
                    n / 2 + 1
                } else {
                    (n - 1) / 2 + 2
                }
            }
            FamilyKind::DoubleWheel | FamilyKind::Flower | FamilyKind::Blossom => n + 1,
            FamilyKind::Helm | FamilyKind::ClosedHelm | FamilyKind::Sunflower | FamilyKind::ClosedSunflower => 4,
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.kind, self.n)
    }
}

struct Layout {
    n: usize,
}

impl Layout {
    fn v(&self, i: usize) -> usize {
        i % self.n
    }
    fn hub(&self) -> usize {
        self.n
    }
    fn u(&self, i: usize) -> usize {
        self.n + 1 + i % self.n
    }
}

pub fn generate(id: FamilyId) -> Result<Graph> {
    let id = FamilyId::new(id.kind, id.n)?;
    let n = id.n as usize;
    let at = Layout { n };
    let kind = id.kind;

    let mut edges = Vec::with_capacity(id.n_edges());
    let rim_cycle = |edges: &mut Vec<(usize, usize)>| (0..n).for_each(|i| edges.push((at.v(i), at.v(i + 1))));
    let outer_cycle = |edges: &mut Vec<(usize, usize)>| (0..n).for_each(|i| edges.push((at.u(i), at.u(i + 1))));

    rim_cycle(&mut edges);
    if kind.has_hub() {
        (0..n).for_each(|i| edges.push((at.v(i), at.hub())));
    }
    match kind {
        FamilyKind::Cycle | FamilyKind::Wheel => {}
        FamilyKind::DoubleWheel => {
            outer_cycle(&mut edges);
            (0..n).for_each(|i| edges.push((at.u(i), at.hub())));
        }
        FamilyKind::Helm | FamilyKind::ClosedHelm | FamilyKind::Flower => {
            (0..n).for_each(|i| edges.push((at.v(i), at.u(i))));
            if kind == FamilyKind::ClosedHelm {
                outer_cycle(&mut edges);
            }
            if kind == FamilyKind::Flower {
                (0..n).for_each(|i| edges.push((at.u(i), at.hub())));
            }
        }
        FamilyKind::Sunflower | FamilyKind::ClosedSunflower | FamilyKind::Blossom => {
            // u_i closes the triangle on the rim edge v_i v_{i+1}.
            for i in 0..n {
                edges.push((at.u(i), at.v(i)));
                edges.push((at.u(i), at.v(i + 1)));
            }
            if kind != FamilyKind::Sunflower {
                outer_cycle(&mut edges);
            }
            if kind == FamilyKind::Blossom {
                (0..n).for_each(|i| edges.push((at.u(i), at.hub())));
            }
        }
    }

    let mut labels: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    if kind.has_hub() {
        labels.push("hub".into());
    }
    if kind.has_outer() {
        labels.extend((1..=n).map(|i| format!("u{i}")));
    }
    Graph::new(id.n_vertices(), edges)?.with_labels(labels)
}

/// Equitable colouring following the published figure patterns, using
/// exactly [`FamilyId::published_color_count`] colours.
///
/// The result is checked for properness, equitability and colour count
/// before it is returned; a pattern that does not hold for this `n` is a
/// [`Error::Construction`], never an invalid colouring.
pub fn constructive_coloring(id: FamilyId) -> Result<Coloring> {
    let id = FamilyId::new(id.kind, id.n)?;
    let n = id.n as usize;
    let at = Layout { n };
    let even = n.is_multiple_of(2);
    let mut color = vec![0usize; id.n_vertices()];
    let fail = |reason: &str| Error::Construction { family: id.kind.to_string(), n: id.n, reason: reason.to_string() };

    match id.kind {
        FamilyKind::Cycle => {
            for i in 0..n {
                color[at.v(i)] = if even { i % 2 + 1 } else { i % 3 + 1 };
            }
            if !even && n % 3 == 1 {
                color[at.v(n - 1)] = 2;
            }
        }
        FamilyKind::Wheel => {
            let pairs = if even { n / 2 } else { (n - 1) / 2 };
            if !even && pairs < 2 {
                return Err(fail("the rim is a triangle, so no two rim vertices can share a colour"));
            }
            for i in 0..n {
                color[at.v(i)] = i % pairs + 1;
            }
            if even {
                color[at.hub()] = pairs + 1;
            } else {
                color[at.v(n - 1)] = pairs + 1;
                color[at.hub()] = pairs + 2;
            }
        }
        FamilyKind::DoubleWheel | FamilyKind::Flower | FamilyKind::Blossom => {
            // Each rim vertex shares its colour with one outer vertex it is
            // not adjacent to; blossom outer vertices see two rim vertices.
            let offset = if id.kind == FamilyKind::Blossom { 2 } else { 1 };
            for i in 0..n {
                color[at.v(i)] = i + 1;
                color[at.u(i)] = (i + offset) % n + 1;
            }
            color[at.hub()] = n + 1;
        }
        FamilyKind::Helm | FamilyKind::ClosedHelm => {
            color[at.hub()] = 1;
            for i in 0..n {
                color[at.v(i)] = if i % 2 == 0 { 3 } else { 4 };
                color[at.u(i)] = if i % 2 == 0 { 1 } else { 2 };
            }
            if !even {
                color[at.v(n - 1)] = 2;
                color[at.u(n - 1)] = 3;
            }
        }
        FamilyKind::Sunflower | FamilyKind::ClosedSunflower => {
            color[at.hub()] = 1;
            for i in 0..n {
                color[at.v(i)] = if i % 2 == 0 { 2 } else { 3 };
            }
            if even {
                for i in 0..n {
                    color[at.u(i)] = if i % 2 == 0 { 1 } else { 4 };
                }
            } else {
                color[at.v(n - 1)] = 4;
                for i in 0..n - 2 {
                    color[at.u(i)] = if i % 2 == 0 { 4 } else { 1 };
                }
                color[at.u(n - 2)] = 2;
                color[at.u(n - 1)] = 1;
            }
        }
    }

    let k = id.published_color_count();
    let coloring = Coloring::new(k, color).map_err(|e| fail(&e.to_string()))?;
    let g = generate(id)?;
    if !is_proper(&g, &coloring)? {
        return Err(fail("pattern is not a proper colouring"));
    }
    if !is_equitable(&coloring) {
        return Err(fail("pattern is not equitable"));
    }
    let mut sizes = coloring.class_sizes();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    if sizes != forced_class_sizes(g.n_vertices(), k)? {
        return Err(fail("class sizes differ from the forced equitable sizes"));
    }
    Ok(coloring)
}
