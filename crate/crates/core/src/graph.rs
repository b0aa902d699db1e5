//! Simple undirected graphs on at most 64 vertices, stored as one
//! neighbourhood bitset per vertex.

use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 64;

/// A set of vertices of a graph with at most 64 vertices.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    /// `{0, 1, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | 1u64 << v)
    }

    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1u64 << v))
    }

    pub fn union(self, other: VertexSet) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VertexSet) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: VertexSet) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = VertexIter;
    fn into_iter(self) -> VertexIter {
        self.iter()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let vs = Vec::<usize>::deserialize(d)?;
        if let Some(&v) = vs.iter().find(|&&v| v >= MAX_VERTICES) {
            return Err(serde::de::Error::custom(format!("vertex {v} out of range")));
        }
        Ok(vs.into_iter().collect())
    }
}

#[derive(Clone, Debug)]
pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let v = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(v)
        }
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for VertexIter {}

/// An immutable simple undirected graph. Build one with [`GraphBuilder`]
/// or one of the constructors.
#[derive(Clone)]
pub struct Graph {
    n: usize,
    adj: [u64; MAX_VERTICES],
    edges: usize,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Graph> {
        if n == 0 || n > MAX_VERTICES {
            return Err(Error::VertexCount(n));
        }
        Ok(Graph {
            n,
            adj: [0; MAX_VERTICES],
            edges: 0,
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut b = GraphBuilder::new(n)?;
        for &(u, v) in edges {
            b.add_edge(u, v)?;
        }
        Ok(b.build())
    }

    pub fn complete(n: usize) -> Result<Graph> {
        let mut b = GraphBuilder::new(n)?;
        for u in 0..n {
            for v in u + 1..n {
                b.add_edge(u, v)?;
            }
        }
        Ok(b.build())
    }

    pub fn cycle(n: usize) -> Result<Graph> {
        if n < 3 {
            return Err(Error::VertexCount(n));
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges)
    }

    pub fn path(n: usize) -> Result<Graph> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges)
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph> {
        let mut edges = Vec::new();
        for u in 0..a {
            for v in a..a + b {
                edges.push((u, v));
            }
        }
        Graph::from_edges(a + b, &edges)
    }

    /// Builds from raw rows; the caller guarantees symmetry and no loops.
    pub(crate) fn from_rows_unchecked(n: usize, rows: &[u64]) -> Graph {
        let mut adj = [0u64; MAX_VERTICES];
        adj[..n].copy_from_slice(&rows[..n]);
        let twice: u32 = adj[..n].iter().map(|r| r.count_ones()).sum();
        Graph {
            n,
            adj,
            edges: twice as usize / 2,
        }
    }

    /// Number of vertices.
    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    /// Number of edges.
    #[inline]
    pub fn size(&self) -> usize {
        self.edges
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    #[inline]
    pub(crate) fn rows(&self) -> &[u64] {
        &self.adj[..self.n]
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            let above = if u >= 63 { 0 } else { !0u64 << (u + 1) };
            VertexSet(self.adj[u] & above).iter().map(move |v| (u, v))
        })
    }

    /// Number of edges with both ends in `h`.
    pub fn edges_within(&self, h: VertexSet) -> usize {
        h.iter()
            .map(|v| (self.adj[v] & h.0).count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// Number of edges with exactly one end in `h`.
    pub fn edges_leaving(&self, h: VertexSet) -> usize {
        h.iter()
            .map(|v| (self.adj[v] & !h.0).count_ones() as usize)
            .sum()
    }

    /// `g` with a new vertex `n` adjacent to `nbrs`.
    pub fn with_vertex(&self, nbrs: VertexSet) -> Result<Graph> {
        let n = self.n;
        if n + 1 > MAX_VERTICES {
            return Err(Error::VertexCount(n + 1));
        }
        if let Some(v) = nbrs.iter().find(|&v| v >= n) {
            return Err(Error::VertexOutOfRange { v, n });
        }
        Ok(self.with_vertex_unchecked(nbrs))
    }

    #[inline]
    pub(crate) fn with_vertex_unchecked(&self, nbrs: VertexSet) -> Graph {
        let n = self.n;
        let mut g = self.clone();
        g.adj[n] = nbrs.0;
        for v in nbrs {
            g.adj[v] |= 1u64 << n;
        }
        g.n = n + 1;
        g.edges += nbrs.len();
        g
    }

    /// Deletes `v`; vertices above `v` shift down by one.
    pub fn remove_vertex(&self, v: usize) -> Graph {
        let keep = self.vertices().without(v);
        self.induced(keep).0
    }

    /// Subgraph induced on `h`, relabelled `0..|h|` in increasing order.
    /// Also returns the original label of each new vertex.
    pub fn induced(&self, h: VertexSet) -> (Graph, Vec<usize>) {
        let old: Vec<usize> = h.iter().collect();
        let mut rows = [0u64; MAX_VERTICES];
        for (i, &u) in old.iter().enumerate() {
            let mut row = 0u64;
            for (j, &w) in old.iter().enumerate() {
                if self.has_edge(u, w) {
                    row |= 1u64 << j;
                }
            }
            rows[i] = row;
        }
        let k = old.len().max(1);
        (Graph::from_rows_unchecked(k, &rows), old)
    }

    /// Applies `perm`, sending vertex `v` to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n, "permutation length");
        let mut rows = [0u64; MAX_VERTICES];
        for u in 0..self.n {
            let mut row = 0u64;
            for w in self.neighbors(u) {
                row |= 1u64 << perm[w];
            }
            rows[perm[u]] = row;
        }
        Graph::from_rows_unchecked(self.n, &rows)
    }

    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.n + other.n;
        if n > MAX_VERTICES {
            return Err(Error::VertexCount(n));
        }
        let mut rows = [0u64; MAX_VERTICES];
        rows[..self.n].copy_from_slice(self.rows());
        for v in 0..other.n {
            rows[self.n + v] = other.adj[v] << self.n;
        }
        Ok(Graph::from_rows_unchecked(n, &rows))
    }

    /// Connected components, each as a vertex set, ordered by smallest vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = VertexSet::EMPTY;
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen.contains(s) {
                continue;
            }
            let mut comp = VertexSet::singleton(s);
            let mut frontier = comp;
            while !frontier.is_empty() {
                let mut next = 0u64;
                for v in frontier {
                    next |= self.adj[v];
                }
                frontier = VertexSet(next & !comp.0);
                comp = comp.union(frontier);
            }
            seen = seen.union(comp);
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Checks the representation invariants; used by tests and debug assertions.
    pub fn check_invariants(&self) -> bool {
        let mask = VertexSet::full(self.n).0;
        let mut twice = 0usize;
        for u in 0..self.n {
            if self.adj[u] & !mask != 0 || self.has_edge(u, u) {
                return false;
            }
            for v in self.neighbors(u) {
                if !self.has_edge(v, u) {
                    return false;
                }
            }
            twice += self.degree(u);
        }
        self.adj[self.n..].iter().all(|&r| r == 0) && twice == 2 * self.edges
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.rows() == other.rows()
    }
}

impl Eq for Graph {}

impl Hash for Graph {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.rows().hash(state);
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "])")
    }
}

/// Mutable staging area for a [`Graph`].
#[derive(Clone, Debug)]
pub struct GraphBuilder {
    n: usize,
    adj: [u64; MAX_VERTICES],
}

impl GraphBuilder {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_VERTICES {
            return Err(Error::VertexCount(n));
        }
        Ok(GraphBuilder {
            n,
            adj: [0; MAX_VERTICES],
        })
    }

    pub fn from_graph(g: &Graph) -> Self {
        GraphBuilder { n: g.n, adj: g.adj }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    fn check(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange { v, n: self.n })
        } else {
            Ok(())
        }
    }

    /// Adds `uv`; adding an existing edge is a no-op.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<&mut Self> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        self.adj[u] |= 1u64 << v;
        self.adj[v] |= 1u64 << u;
        Ok(self)
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<&mut Self> {
        self.check(u)?;
        self.check(v)?;
        self.adj[u] &= !(1u64 << v);
        self.adj[v] &= !(1u64 << u);
        Ok(self)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    /// Identifies `b` into `a`: `b`'s edges move to `a`, then `b` is deleted
    /// and higher vertices shift down.
    pub fn merge_vertices(&mut self, a: usize, b: usize) -> Result<&mut Self> {
        self.check(a)?;
        self.check(b)?;
        if a == b {
            return Ok(self);
        }
        for w in VertexSet(self.adj[b]) {
            if w != a {
                self.adj[a] |= 1u64 << w;
                self.adj[w] |= 1u64 << a;
            }
        }
        let g = Graph::from_rows_unchecked(self.n, &{
            let mut rows = self.adj;
            for r in rows.iter_mut() {
                *r &= !(1u64 << b);
            }
            rows[b] = 0;
            rows
        });
        let g = g.remove_vertex(b);
        self.n = g.n;
        self.adj = g.adj;
        Ok(self)
    }

    pub fn build(&self) -> Graph {
        Graph::from_rows_unchecked(self.n, &self.adj)
    }
}
