//! Extremal constructions and a bounded search for sporadic extremal graphs.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::canon::canonical_form;
use crate::enumerate::{enumerate_graphs, EnumConstraints};
use crate::error::{Error, Result};
use crate::formats::graph6;
use crate::graph::{Graph, GraphBuilder, MAX_VERTICES};
use crate::pattern::{contains_double_star, PatternSpec};
use crate::planarity::is_planar;
use crate::turan::{compute_planar_turan_with, TuranOptions};

/// 4-regular planar S(3,3)-free graph on 9 vertices.
const FOUR_REGULAR_9: &str = "HBYleZQ";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "recipe", content = "n", rename_all = "kebab-case")]
pub enum ConstructionRecipe {
    /// Two non-adjacent hubs joined to every vertex of `C_{n-2}`; `5 <= n`.
    DoubleWheel(usize),
    /// Disjoint triangles plus a remainder star; `1 <= n`.
    TriangleForest(usize),
    /// Two non-adjacent centres sharing `n - 2` peripherals, with a maximum
    /// matching on the peripherals; `10 <= n`.
    GluedStars(usize),
    /// Square antiprism.
    FourRegular8,
    FourRegular9,
    /// A 6-6 edge whose ends share five neighbours forming a path.
    Component66,
    /// A 6-5 edge `uv` whose ends share `a1..a4` spanning the path
    /// `a1 a4 a3 a2`, plus a vertex adjacent to `u`, `a1` and `a4`.
    Component65,
    /// Stacked triangulation; `1 <= n <= 7`.
    MaximalPlanar(usize),
}

use ConstructionRecipe::*;

impl ConstructionRecipe {
    pub const NAMES: [&'static str; 8] = [
        "double-wheel",
        "triangle-forest",
        "glued-stars",
        "four-regular-8",
        "four-regular-9",
        "component-66",
        "component-65",
        "maximal-planar",
    ];

    /// Parses a recipe name, taking the vertex count from `n` where the
    /// recipe has one.
    pub fn from_name(name: &str, n: Option<usize>) -> Result<Self> {
        let need = || n.ok_or_else(|| Error::InvalidRecipe(format!("{name} needs a vertex count")));
        let r = match name {
            "double-wheel" => DoubleWheel(need()?),
            "triangle-forest" => TriangleForest(need()?),
            "glued-stars" => GluedStars(need()?),
            "four-regular-8" => FourRegular8,
            "four-regular-9" => FourRegular9,
            "component-66" => Component66,
            "component-65" => Component65,
            "maximal-planar" => MaximalPlanar(need()?),
            _ => return Err(Error::InvalidRecipe(format!("unknown recipe {name:?}"))),
        };
        if let (Some(n), Some(own)) = (n, r.order_if_fixed()) {
            if n != own {
                return Err(Error::InvalidRecipe(format!(
                    "{name} has {own} vertices, not {n}"
                )));
            }
        }
        r.validate()?;
        Ok(r)
    }

    pub fn name(&self) -> &'static str {
        let i = match self {
            DoubleWheel(_) => 0,
            TriangleForest(_) => 1,
            GluedStars(_) => 2,
            FourRegular8 => 3,
            FourRegular9 => 4,
            Component66 => 5,
            Component65 => 6,
            MaximalPlanar(_) => 7,
        };
        Self::NAMES[i]
    }

    fn order_if_fixed(&self) -> Option<usize> {
        match self {
            FourRegular8 => Some(8),
            FourRegular9 => Some(9),
            Component66 | Component65 => Some(7),
            _ => None,
        }
    }

    pub fn order(&self) -> usize {
        match *self {
            DoubleWheel(n) | TriangleForest(n) | GluedStars(n) | MaximalPlanar(n) => n,
            _ => self.order_if_fixed().unwrap_or(0),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let (lo, hi) = match self {
            DoubleWheel(_) => (5, MAX_VERTICES),
            TriangleForest(_) => (1, MAX_VERTICES),
            GluedStars(_) => (10, MAX_VERTICES),
            MaximalPlanar(_) => (1, 7),
            _ => return Ok(()),
        };
        let n = self.order();
        if (lo..=hi).contains(&n) {
            Ok(())
        } else {
            Err(Error::InvalidRecipe(format!(
                "{} needs {lo} <= n <= {hi}, got {n}",
                self.name()
            )))
        }
    }

    /// The pattern the construction avoids.
    pub fn target_pattern(&self) -> PatternSpec {
        let m = match self {
            DoubleWheel(_) => 4,
            TriangleForest(_) => 1,
            _ => 3,
        };
        PatternSpec::balanced(m).expect("positive arm count")
    }

    pub fn expected_edges(&self) -> usize {
        let n = self.order();
        match self {
            DoubleWheel(_) => 3 * n - 6,
            TriangleForest(_) => {
                if n.is_multiple_of(3) {
                    n
                } else {
                    n - 1
                }
            }
            GluedStars(_) => 5 * n / 2 - 5,
            FourRegular8 => 16,
            FourRegular9 => 18,
            Component66 | Component65 => 15,
            MaximalPlanar(_) => {
                if n >= 3 {
                    3 * n - 6
                } else {
                    n - 1
                }
            }
        }
    }
}

impl fmt::Display for ConstructionRecipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.order_if_fixed() {
            Some(_) => f.write_str(self.name()),
            None => write!(f, "{}({})", self.name(), self.order()),
        }
    }
}

impl FromStr for ConstructionRecipe {
    type Err = Error;

    /// `name` or `name(n)`.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().strip_suffix(')').and_then(|t| t.split_once('(')) {
            Some((name, n)) => {
                let n = n
                    .trim()
                    .parse()
                    .map_err(|_| Error::InvalidRecipe(format!("bad vertex count in {s:?}")))?;
                Self::from_name(name.trim(), Some(n))
            }
            None => Self::from_name(s.trim(), None),
        }
    }
}

fn build(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Graph> {
    let mut b = GraphBuilder::new(n)?;
    for (u, v) in edges {
        b.add_edge(u, v)?;
    }
    Ok(b.build())
}

fn raw(r: ConstructionRecipe) -> Result<Graph> {
    let n = r.order();
    match r {
        DoubleWheel(_) => {
            let k = n - 2;
            build(
                n,
                (0..k).flat_map(|i| [(i, (i + 1) % k), (i, k), (i, k + 1)]),
            )
        }
        TriangleForest(_) => {
            let t = match n % 3 {
                1 if n >= 4 => (n - 4) / 3,
                _ => n / 3,
            };
            let mut edges: Vec<_> = (0..t)
                .flat_map(|i| {
                    [
                        (3 * i, 3 * i + 1),
                        (3 * i + 1, 3 * i + 2),
                        (3 * i, 3 * i + 2),
                    ]
                })
                .collect();
            let s = 3 * t;
            match n - s {
                2 => edges.push((s, s + 1)),
                4 => edges.extend([(s, s + 1), (s, s + 2), (s, s + 3)]),
                _ => {}
            }
            build(n, edges)
        }
        GluedStars(_) => {
            let mut edges: Vec<_> = (2..n).flat_map(|p| [(0, p), (1, p)]).collect();
            edges.extend((2..n - 1).step_by(2).map(|p| (p, p + 1)));
            build(n, edges)
        }
        FourRegular8 => build(
            8,
            (0..4).flat_map(|i| {
                let j = (i + 1) % 4;
                [(i, j), (4 + i, 4 + j), (i, 4 + i), (i, 4 + j)]
            }),
        ),
        FourRegular9 => graph6::decode(FOUR_REGULAR_9),
        Component66 => build(
            7,
            [(0, 1)]
                .into_iter()
                .chain((2..7).flat_map(|a| [(0, a), (1, a)]))
                .chain((2..6).map(|a| (a, a + 1))),
        ),
        Component65 => build(
            7,
            [(0, 1), (0, 6), (2, 6), (5, 6), (2, 5), (5, 4), (4, 3)]
                .into_iter()
                .chain((2..6).flat_map(|a| [(0, a), (1, a)])),
        ),
        MaximalPlanar(_) => build(
            n,
            (1..n).flat_map(|k| (k.saturating_sub(3)..k).map(move |j| (j, k))),
        ),
    }
}

/// Builds the recipe's graph and verifies planarity, freeness of the target
/// pattern and the edge count before returning it.
pub fn construct(r: ConstructionRecipe) -> Result<Graph> {
    r.validate()?;
    let g = raw(r)?;
    let fail = |what: String| Err(Error::SelfVerification(format!("{r}: {what}")));
    if g.size() != r.expected_edges() {
        return fail(format!(
            "{} edges, expected {}",
            g.size(),
            r.expected_edges()
        ));
    }
    if !is_planar(&g) {
        return fail("not planar".into());
    }
    if contains_double_star(&g, r.target_pattern()) {
        return fail(format!("contains {}", r.target_pattern()));
    }
    if matches!(r, FourRegular8 | FourRegular9) && (g.min_degree() != 4 || g.max_degree() != 4) {
        return fail("not 4-regular".into());
    }
    Ok(g)
}

pub const SEARCH_LIMIT: usize = 14;
/// Candidate graphs tested before giving up.
pub const DEFAULT_SEARCH_BUDGET: u64 = 2_000_000;
/// Orders up to which the search enumerates exhaustively.
const EXHAUSTIVE_LIMIT: usize = 9;
/// Largest order of an exhaustively computed gluing piece.
const PIECE_LIMIT: usize = 8;

pub fn search_extremal(n: usize, p: PatternSpec, target_edges: usize) -> Result<Option<Graph>> {
    search_extremal_with_budget(n, p, target_edges, DEFAULT_SEARCH_BUDGET)
}

/// Looks for a planar `p`-free graph on `n` vertices with exactly
/// `target_edges` edges.
///
/// Up to 9 vertices the search is exhaustive, so `None` is a proof of
/// absence. Above that, pieces (extremal graphs on at most 8 vertices and the
/// fixed constructions) are combined by identifying one vertex, by adding one
/// or two connecting edges, or by disjoint union. Spare edges are removed
/// from the result. `None` then only means the budget ran out.
pub fn search_extremal_with_budget(
    n: usize,
    p: PatternSpec,
    target_edges: usize,
    budget: u64,
) -> Result<Option<Graph>> {
    if n == 0 {
        return Err(Error::VertexCount(0));
    }
    if n > SEARCH_LIMIT {
        return Err(Error::Guard {
            what: "search_extremal n",
            limit: SEARCH_LIMIT,
            got: n,
        });
    }
    let max = if n >= 3 { 3 * n - 6 } else { n * (n - 1) / 2 };
    if target_edges > max {
        return Ok(None);
    }
    if n <= EXHAUSTIVE_LIMIT {
        let c = EnumConstraints::all(n)
            .planar()
            .forbidding(p)
            .edges(target_edges, max);
        let mut hit = None;
        enumerate_graphs(&c, |g| {
            if hit.is_none() {
                hit = Some(g.clone());
            }
        })?;
        return Ok(hit.map(|g| trim(&g, target_edges)));
    }
    let pieces = pieces(n, p)?;
    let mut s = Search {
        p,
        target: target_edges,
        budget,
    };
    Ok(s.glue_vertex(n, &pieces)
        .or_else(|| s.bridge(n, &pieces))
        .or_else(|| s.union(n, &pieces)))
}

/// Drops the last edges in edge order until `target` remain.
fn trim(g: &Graph, target: usize) -> Graph {
    let mut b = GraphBuilder::from_graph(g);
    let edges: Vec<_> = g.edges().collect();
    for &(u, v) in edges.iter().rev().take(g.size().saturating_sub(target)) {
        b.remove_edge(u, v).expect("edge of g");
    }
    b.build()
}

fn pieces(n: usize, p: PatternSpec) -> Result<Vec<Graph>> {
    let opts = TuranOptions {
        workers: 1,
        ..TuranOptions::default()
    };
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut push = |g: Graph, out: &mut Vec<Graph>| {
        if seen.insert(canonical_form(&g)) {
            out.push(g);
        }
    };
    for k in 1..=PIECE_LIMIT.min(n - 1) {
        for g in compute_planar_turan_with(k, p, &opts)?.witness_graphs()? {
            push(g, &mut out);
        }
    }
    let mut catalog = vec![Component66, Component65, FourRegular8, FourRegular9];
    catalog.extend((10..n).map(GluedStars));
    catalog.extend((5..n).map(DoubleWheel));
    for r in catalog {
        let g = construct(r)?;
        if g.order() < n && !contains_double_star(&g, p) {
            push(g, &mut out);
        }
    }
    Ok(out)
}

struct Search {
    p: PatternSpec,
    target: usize,
    budget: u64,
}

impl Search {
    /// Tests one candidate, spending budget. `None` also when exhausted.
    fn accept(&mut self, g: Graph) -> Option<Graph> {
        if self.budget == 0 {
            return None;
        }
        self.budget -= 1;
        (g.size() >= self.target && is_planar(&g) && !contains_double_star(&g, self.p))
            .then(|| trim(&g, self.target))
    }

    fn exhausted(&self) -> bool {
        self.budget == 0
    }

    /// Identifies a vertex of one piece with a vertex of another, removing up
    /// to two edges at the merged vertex.
    fn glue_vertex(&mut self, n: usize, pieces: &[Graph]) -> Option<Graph> {
        for a in pieces {
            for b in pieces {
                if a.order() + b.order() != n + 1 || a.size() + b.size() < self.target {
                    continue;
                }
                let u = a.disjoint_union(b).ok()?;
                for x in 0..a.order() {
                    for y in 0..b.order() {
                        let mut gb = GraphBuilder::from_graph(&u);
                        gb.merge_vertices(x, a.order() + y).ok()?;
                        let g = gb.build();
                        let spare = g.size().saturating_sub(self.target).min(2);
                        let inc: Vec<usize> = g.neighbors(x).to_vec();
                        for drop in 0..=spare {
                            for cut in subsets(&inc, drop) {
                                let mut h = GraphBuilder::from_graph(&g);
                                for w in &cut {
                                    h.remove_edge(x, *w).ok()?;
                                }
                                if let Some(found) = self.accept(h.build()) {
                                    return Some(found);
                                }
                                if self.exhausted() {
                                    return None;
                                }
                            }
                        }
                    }
                }
            }
        }
        None
    }

    /// Joins two pieces by one or two new edges.
    fn bridge(&mut self, n: usize, pieces: &[Graph]) -> Option<Graph> {
        for a in pieces {
            for b in pieces {
                if a.order() + b.order() != n {
                    continue;
                }
                let u = a.disjoint_union(b).ok()?;
                let cross: Vec<(usize, usize)> = (0..a.order())
                    .flat_map(|x| (a.order()..n).map(move |y| (x, y)))
                    .collect();
                for k in 1..=2 {
                    if u.size() + k < self.target {
                        continue;
                    }
                    for add in subsets(&cross, k) {
                        let mut h = GraphBuilder::from_graph(&u);
                        for (x, y) in add {
                            h.add_edge(x, y).ok()?;
                        }
                        if let Some(found) = self.accept(h.build()) {
                            return Some(found);
                        }
                        if self.exhausted() {
                            return None;
                        }
                    }
                }
            }
        }
        None
    }

    /// Disjoint unions of two or three pieces.
    fn union(&mut self, n: usize, pieces: &[Graph]) -> Option<Graph> {
        for (i, a) in pieces.iter().enumerate() {
            for (j, b) in pieces.iter().enumerate().skip(i) {
                let ab = a.order() + b.order();
                if ab == n {
                    if let Some(found) = self.accept(a.disjoint_union(b).ok()?) {
                        return Some(found);
                    }
                } else if ab < n {
                    for c in pieces.iter().skip(j).filter(|c| ab + c.order() == n) {
                        let g = a.disjoint_union(b).ok()?.disjoint_union(c).ok()?;
                        if let Some(found) = self.accept(g) {
                            return Some(found);
                        }
                    }
                }
                if self.exhausted() {
                    return None;
                }
            }
        }
        None
    }
}

/// All `k`-element subsets of `items` in lexicographic index order.
fn subsets<T: Copy>(items: &[T], k: usize) -> Vec<Vec<T>> {
    fn go<T: Copy>(items: &[T], k: usize, start: usize, cur: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            go(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(items, k, 0, &mut Vec::with_capacity(k), &mut out);
    out
}
