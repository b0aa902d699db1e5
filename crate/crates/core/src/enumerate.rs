//! Isomorph-free generation by canonical augmentation.
//!
//! Graphs grow one vertex at a time. A child `C = P + v` is kept only when
//! `v` could be the canonical deletion vertex of `C`: minimum degree, then the
//! largest neighbour-degree sum, then the largest canonical position. When
//! another vertex `w` wins the tie-break, `C` is kept only if `C - w` is
//! isomorphic to `P`; isomorphic siblings of one parent are merged. Every node
//! is stored in canonical form, so each isomorphism class appears once.
//!
//! Planarity and pattern-freeness are hereditary and checked at every level.
//! The edge window is enforced at the leaves; internal nodes are cut when the
//! window is unreachable.

use std::collections::HashSet;
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::canonical_graph;
use crate::error::{Error, Result};
use crate::formats::graph6;
use crate::graph::Graph;
use crate::pattern::{contains_double_star_through, PatternSpec};
use crate::planarity::is_planar;

pub const ENUMERATION_LIMIT: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumConstraints {
    pub n: usize,
    pub min_edges: usize,
    pub max_edges: usize,
    pub require_planar: bool,
    pub forbid: Option<PatternSpec>,
    pub require_connected: bool,
    /// Lifts the vertex-count guard.
    #[serde(default)]
    pub allow_large: bool,
}

impl EnumConstraints {
    /// No constraints beyond the vertex count.
    pub fn all(n: usize) -> Self {
        EnumConstraints {
            n,
            min_edges: 0,
            max_edges: n * n.saturating_sub(1) / 2,
            require_planar: false,
            forbid: None,
            require_connected: false,
            allow_large: false,
        }
    }

    pub fn planar(mut self) -> Self {
        self.require_planar = true;
        self
    }

    pub fn forbidding(mut self, p: PatternSpec) -> Self {
        self.forbid = Some(p);
        self
    }

    pub fn edges(mut self, min: usize, max: usize) -> Self {
        self.min_edges = min;
        self.max_edges = max;
        self
    }

    pub fn connected(mut self) -> Self {
        self.require_connected = true;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.n > crate::graph::MAX_VERTICES {
            return Err(Error::VertexCount(self.n));
        }
        if !self.allow_large && self.n > ENUMERATION_LIMIT {
            return Err(Error::Guard {
                what: "enumeration vertex count",
                limit: ENUMERATION_LIMIT,
                got: self.n,
            });
        }
        let total = self.n * (self.n - 1) / 2;
        if self.min_edges > self.max_edges || self.max_edges > total {
            return Err(Error::InvalidConstraints(format!(
                "edge window {}..={} invalid for {} vertices (at most {total} edges)",
                self.min_edges, self.max_edges, self.n
            )));
        }
        Ok(())
    }

    /// Checks every constraint directly on `g`.
    pub fn admits(&self, g: &Graph) -> bool {
        g.order() == self.n
            && (self.min_edges..=self.max_edges).contains(&g.size())
            && (!self.require_planar || is_planar(g))
            && self
                .forbid
                .is_none_or(|p| !crate::pattern::contains_double_star(g, p))
            && (!self.require_connected || g.is_connected())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumStats {
    /// Canonical graphs accepted at any level, the root included.
    pub visited: u64,
    /// Graphs on `n` vertices that satisfied every constraint.
    pub emitted: u64,
    pub pruned_planarity: u64,
    pub pruned_pattern: u64,
    pub pruned_edges: u64,
}

impl EnumStats {
    pub fn merge(&mut self, o: &EnumStats) {
        self.visited += o.visited;
        self.emitted += o.emitted;
        self.pruned_planarity += o.pruned_planarity;
        self.pruned_pattern += o.pruned_pattern;
        self.pruned_edges += o.pruned_edges;
    }
}

fn edge_cap(j: usize, planar: bool) -> usize {
    if planar && j >= 3 {
        3 * j - 6
    } else {
        j * (j - 1) / 2
    }
}

/// Upper bound on the edge count a level-`k` node with `e` edges can reach at
/// level `n`. Each step adds a minimum-degree vertex, so the step to `j`
/// vertices adds at most `min(2e_j / j, j - 1)` edges, and at most 5 when
/// planar.
fn reachable_edges(k: usize, e: usize, n: usize, planar: bool) -> usize {
    let mut e = e;
    for j in k + 1..=n {
        let step_cap = |x: usize| {
            let c = (2 * x / j).min(j - 1);
            if planar {
                c.min(5)
            } else {
                c
            }
        };
        let cap = edge_cap(j, planar);
        e = (e..=cap).rev().find(|&x| x - step_cap(x) <= e).unwrap_or(e);
    }
    e
}

/// Accepted canonical children of `parent`, in increasing order of the new
/// vertex's neighbourhood bitset.
fn children(c: &EnumConstraints, parent: &Graph, stats: &mut EnumStats) -> Vec<Graph> {
    let k = parent.order();
    let leaf = k + 1 == c.n;
    let degs = parent.degrees();
    let mut below = [0u64; 66];
    for (t, slot) in below.iter_mut().enumerate().take(k + 2) {
        *slot = degs
            .iter()
            .enumerate()
            .filter(|&(_, &d)| d < t)
            .fold(0u64, |m, (v, _)| m | 1 << v);
    }
    let max_d = if c.require_planar { k.min(5) } else { k };
    let e_parent = parent.size();
    let mut seen: HashSet<Graph> = HashSet::new();
    let mut out = Vec::new();
    for s in 0u64..(1u64 << k) {
        let d = s.count_ones() as usize;
        if d > max_d {
            continue;
        }
        // the new vertex must have minimum degree in the child
        if d >= 1 && (below[d - 1] != 0 || below[d] & !s != 0) {
            continue;
        }
        let e = e_parent + d;
        let reach = if leaf {
            e
        } else {
            reachable_edges(k + 1, e, c.n, c.require_planar)
        };
        if e > c.max_edges || reach < c.min_edges {
            stats.pruned_edges += 1;
            continue;
        }
        let child = parent.with_vertex_unchecked(crate::graph::VertexSet::from_bits(s));
        if let Some(p) = c.forbid {
            if contains_double_star_through(&child, p, k) {
                stats.pruned_pattern += 1;
                continue;
            }
        }
        if c.require_planar && !is_planar(&child) {
            stats.pruned_planarity += 1;
            continue;
        }
        if let Some(canon) = canonical_child(parent, &child, k, d) {
            if seen.insert(canon.clone()) {
                out.push(canon);
            }
        }
    }
    out
}

/// The canonical form of `child` if `v` passes the canonical deletion test.
fn canonical_child(parent: &Graph, child: &Graph, v: usize, d: usize) -> Option<Graph> {
    let degs = child.degrees();
    let inv = |u: usize| -> usize { child.neighbors(u).iter().map(|w| degs[w]).sum() };
    let inv_v = inv(v);
    let mut ties = Vec::new();
    for (u, &du) in degs.iter().enumerate() {
        if du != d {
            continue;
        }
        let iu = inv(u);
        if iu > inv_v {
            return None;
        }
        if iu == inv_v {
            ties.push(u);
        }
    }
    let (canon, labeling) = canonical_graph(child);
    if ties.len() > 1 {
        let w = *ties.iter().max_by_key(|&&u| labeling[u]).unwrap();
        if w != v && canonical_graph(&child.remove_vertex(w)).0 != *parent {
            return None;
        }
    }
    Some(canon)
}

fn dfs(c: &EnumConstraints, g: &Graph, stats: &mut EnumStats, visit: &mut dyn FnMut(&Graph)) {
    if g.order() == c.n {
        if (!c.require_connected || g.is_connected())
            && (c.min_edges..=c.max_edges).contains(&g.size())
        {
            stats.emitted += 1;
            visit(g);
        }
        return;
    }
    for ch in children(c, g, stats) {
        stats.visited += 1;
        dfs(c, &ch, stats, visit);
    }
}

fn root(c: &EnumConstraints, stats: &mut EnumStats) -> Option<Graph> {
    if reachable_edges(1, 0, c.n, c.require_planar) < c.min_edges {
        stats.pruned_edges += 1;
        return None;
    }
    stats.visited += 1;
    Some(Graph::empty(1).expect("one vertex"))
}

/// Visits one representative of every isomorphism class on `c.n` vertices
/// that satisfies `c`. Graphs are passed in canonical labeling.
pub fn enumerate_graphs(c: &EnumConstraints, mut visit: impl FnMut(&Graph)) -> Result<EnumStats> {
    c.validate()?;
    let mut stats = EnumStats::default();
    if let Some(r) = root(c, &mut stats) {
        dfs(c, &r, &mut stats, &mut visit);
    }
    Ok(stats)
}

/// Collects the nodes at `level` in depth-first order, visiting leaves met
/// on the way.
fn frontier(
    c: &EnumConstraints,
    g: &Graph,
    level: usize,
    stats: &mut EnumStats,
    out: &mut Vec<Graph>,
) {
    if g.order() == level {
        out.push(g.clone());
        return;
    }
    for ch in children(c, g, stats) {
        stats.visited += 1;
        frontier(c, &ch, level, stats, out);
    }
}

/// Parallel form of [`enumerate_graphs`]. Subtrees below a split level are
/// distributed over `workers` threads; each subtree folds its graphs into a
/// fresh accumulator from `init`, and the accumulators are merged with
/// `merge` in the same order a serial run would visit them.
pub fn enumerate_parallel<A, I, V, M>(
    c: &EnumConstraints,
    workers: usize,
    init: I,
    visit: V,
    merge: M,
) -> Result<(EnumStats, A)>
where
    A: Send,
    I: Fn() -> A + Sync,
    V: Fn(&mut A, &Graph) + Sync,
    M: Fn(A, A) -> A,
{
    c.validate()?;
    let workers = workers.max(1);
    if workers == 1 || c.n <= 3 {
        let mut acc = init();
        let stats = enumerate_graphs(c, |g| visit(&mut acc, g))?;
        return Ok((stats, acc));
    }
    let mut stats = EnumStats::default();
    let Some(r) = root(c, &mut stats) else {
        return Ok((stats, init()));
    };
    let split = c.n - 2;
    let mut nodes = Vec::new();
    frontier(c, &r, split, &mut stats, &mut nodes);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("thread pool");
    let parts: Vec<(EnumStats, A)> = pool.install(|| {
        nodes
            .par_iter()
            .map(|g| {
                let mut acc = init();
                let mut st = EnumStats::default();
                dfs(c, g, &mut st, &mut |h| visit(&mut acc, h));
                (st, acc)
            })
            .collect()
    });
    let mut acc = init();
    for (st, a) in parts {
        stats.merge(&st);
        acc = merge(acc, a);
    }
    Ok((stats, acc))
}

/// Streams every admitted graph to `out` as one graph6 line.
pub fn write_graph6(c: &EnumConstraints, out: &mut dyn Write) -> Result<EnumStats> {
    let mut err = None;
    let stats = enumerate_graphs(c, |g| {
        if err.is_none() {
            if let Err(e) = writeln!(out, "{}", graph6::encode(g)) {
                err = Some(e);
            }
        }
    })?;
    match err {
        Some(e) => Err(e.into()),
        None => Ok(stats),
    }
}
