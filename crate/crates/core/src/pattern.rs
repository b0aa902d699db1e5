//! Double stars `S(m,l)` and subgraph detection.
//!
//! `S(m,l)` sits on an edge `xy` iff `x` has at least `m` neighbours other
//! than `y`, `y` has at least `l` neighbours other than `x`, and together
//! they see at least `m + l` distinct vertices besides `x` and `y`. Exclusive
//! neighbours are spent first, common neighbours fill the remainder.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// The double star `S(m,l)`, normalised so that `m <= l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PatternSpec {
    m: usize,
    l: usize,
}

impl PatternSpec {
    pub fn new(m: usize, l: usize) -> Result<Self> {
        if m == 0 || l == 0 {
            return Err(Error::InvalidPattern { m, l });
        }
        Ok(PatternSpec {
            m: m.min(l),
            l: m.max(l),
        })
    }

    /// The balanced double star `S(m,m)`.
    pub fn balanced(m: usize) -> Result<Self> {
        Self::new(m, m)
    }

    pub fn s33() -> Self {
        PatternSpec { m: 3, l: 3 }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn vertex_count(&self) -> usize {
        self.m + self.l + 2
    }

    /// The pattern itself as a graph: centres 0 and 1, arms of 0 first.
    pub fn to_graph(&self) -> Result<Graph> {
        let mut edges = vec![(0, 1)];
        edges.extend((0..self.m).map(|i| (0, 2 + i)));
        edges.extend((0..self.l).map(|i| (1, 2 + self.m + i)));
        Graph::from_edges(self.vertex_count(), &edges)
    }
}

impl fmt::Display for PatternSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S({},{})", self.m, self.l)
    }
}

impl std::str::FromStr for PatternSpec {
    type Err = Error;

    /// Parses `"m,l"`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidConstraints(format!("pattern must look like 3,3, got {s:?}"));
        let (a, b) = s.split_once(',').ok_or_else(bad)?;
        let m = a.trim().parse().map_err(|_| bad())?;
        let l = b.trim().parse().map_err(|_| bad())?;
        PatternSpec::new(m, l)
    }
}

/// An embedded copy of `S(m,l)`: centres `x`, `y` and their arms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoubleStarWitness {
    pub x: usize,
    pub y: usize,
    pub x_arms: VertexSet,
    pub y_arms: VertexSet,
}

impl DoubleStarWitness {
    /// Checks every structural requirement against `g` and `p`.
    pub fn is_valid(&self, g: &Graph, p: PatternSpec) -> bool {
        let n = g.order();
        if self.x >= n || self.y >= n || self.x == self.y || !g.has_edge(self.x, self.y) {
            return false;
        }
        let arms = self.x_arms.union(self.y_arms);
        self.x_arms.len() == p.m()
            && self.y_arms.len() == p.l()
            && self.x_arms.intersection(self.y_arms).is_empty()
            && !arms.contains(self.x)
            && !arms.contains(self.y)
            && self.x_arms.is_subset(g.neighbors(self.x))
            && self.y_arms.is_subset(g.neighbors(self.y))
    }
}

impl fmt::Display for DoubleStarWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "centres {}-{}, arms {:?} / {:?}",
            self.x, self.y, self.x_arms, self.y_arms
        )
    }
}

/// Takes the `k` lowest vertices of `s`.
fn take_lowest(s: VertexSet, k: usize) -> VertexSet {
    s.iter().take(k).collect()
}

/// Tries to hang `m` arms on `x` and `l` arms on `y` along the edge `xy`.
#[inline]
fn assemble(g: &Graph, x: usize, y: usize, m: usize, l: usize) -> Option<DoubleStarWitness> {
    let nx = g.neighbors(x).without(y);
    let ny = g.neighbors(y).without(x);
    if nx.len() < m || ny.len() < l || nx.union(ny).len() < m + l {
        return None;
    }
    let only_x = nx.difference(ny);
    let only_y = ny.difference(nx);
    let common = nx.intersection(ny);
    let mut x_arms = take_lowest(only_x, m);
    let x_from_common = take_lowest(common, m - x_arms.len());
    x_arms = x_arms.union(x_from_common);
    let mut y_arms = take_lowest(only_y, l);
    let rest = common.difference(x_from_common);
    y_arms = y_arms.union(take_lowest(rest, l - y_arms.len()));
    Some(DoubleStarWitness {
        x,
        y,
        x_arms,
        y_arms,
    })
}

#[inline]
fn on_edge(g: &Graph, p: PatternSpec, u: usize, v: usize) -> Option<DoubleStarWitness> {
    assemble(g, u, v, p.m(), p.l()).or_else(|| {
        if p.m() != p.l() {
            assemble(g, v, u, p.m(), p.l())
        } else {
            None
        }
    })
}

fn checked(g: &Graph, p: PatternSpec, w: DoubleStarWitness) -> DoubleStarWitness {
    assert!(
        w.is_valid(g, p),
        "assembled double-star witness failed validation: {w}"
    );
    w
}

/// Finds a copy of `S(m,l)` in `g` (not necessarily induced), if any.
///
/// Central edges are scanned in lexicographic order, so the witness is
/// deterministic.
pub fn detect_double_star(g: &Graph, p: PatternSpec) -> Option<DoubleStarWitness> {
    let need = p.m() + 1;
    for (u, v) in g.edges() {
        if g.degree(u) < need || g.degree(v) < need {
            continue;
        }
        if let Some(w) = on_edge(g, p, u, v) {
            return Some(checked(g, p, w));
        }
    }
    None
}

pub fn contains_double_star(g: &Graph, p: PatternSpec) -> bool {
    detect_double_star(g, p).is_some()
}

/// Like [`detect_double_star`] but only looks at copies that use vertex `k`.
/// Every such copy has its central edge incident to `N[k]`.
pub(crate) fn contains_double_star_through(g: &Graph, p: PatternSpec, k: usize) -> bool {
    let need = p.m() + 1;
    let near = g.neighbors(k).with(k);
    for u in near {
        if g.degree(u) < need {
            continue;
        }
        for v in g.neighbors(u) {
            if g.degree(v) < need {
                continue;
            }
            if on_edge(g, p, u, v).is_some() {
                return true;
            }
        }
    }
    false
}
