//! Star-block decompositions of `S(3,3)`-free planar graphs.
//!
//! Every vertex of degree at least 5 is placed in exactly one elementary
//! block, chosen by scanning block kinds in a fixed priority order. Blocks
//! carry exact weights in quarter units; [`refine`] grows failing blocks by
//! potential vertices and [`audit`] recomputes every accounting identity.

mod audit;
mod refine;
mod remark;
mod weight;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::pattern::{detect_double_star, PatternSpec};
use crate::planarity::is_planar;

pub use audit::{
    audit, BipartiteCheck, BlockAudit, ChainCheck, EdgeIdentity, LedgerCheck, MultiBlockCheck,
    SingleBlockCheck, WeightAudit,
};
pub use refine::{refine_until_bounded, RefineOutcome, RefineStatus, DEFAULT_MAX_ROUNDS};
pub use remark::{degree_class_report, DegreeClassReport, RemarkBranch};
pub use weight::QuarterWeight;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BlockKind {
    Star5Plus3Minus,
    #[serde(rename = "Star5_4Minus")]
    Star5_4Minus,
    Edge66,
    Edge65,
    Edge64,
    Edge55,
    Path545,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BlockClass {
    B0,
    B1,
    B2,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarBlock {
    pub kind: BlockKind,
    pub centres: VertexSet,
    pub core: VertexSet,
    /// Potential vertices absorbed during refinement.
    pub extension: VertexSet,
    pub peripheral: VertexSet,
    pub shared_deg_le3: VertexSet,
    pub shared_deg4: VertexSet,
    pub has_triple_shared: bool,
    pub w0: QuarterWeight,
    pub w: QuarterWeight,
}

impl StarBlock {
    pub fn vertices(&self) -> VertexSet {
        self.core.union(self.extension)
    }

    pub fn order(&self) -> usize {
        self.vertices().len()
    }

    /// `s`, the number of shared vertices of degree at most 3.
    pub fn s(&self) -> usize {
        self.shared_deg_le3.len()
    }

    /// `s'`, the number of shared vertices of degree 4.
    pub fn s_prime(&self) -> usize {
        self.shared_deg4.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarBlockBase {
    pub blocks: Vec<StarBlock>,
    pub g1_vertices: VertexSet,
    pub g2_vertices: VertexSet,
    pub class_of: Vec<BlockClass>,
    pub t0: usize,
    pub t1: usize,
    pub t2: usize,
    pub t: usize,
    pub r1: usize,
    pub r2: usize,
    pub r3: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCounts {
    pub t0: usize,
    pub t1: usize,
    pub t2: usize,
    pub t: usize,
}

/// The elementary part of a block: what refinement starts from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct BlockSeed {
    pub kind: BlockKind,
    pub centres: VertexSet,
    pub core: VertexSet,
    pub extension: VertexSet,
}

impl BlockSeed {
    fn vertices(&self) -> VertexSet {
        self.core.union(self.extension)
    }
}

/// Number of blocks containing `v`.
fn multiplicity(seeds: &[BlockSeed], v: usize) -> usize {
    seeds.iter().filter(|b| b.vertices().contains(v)).count()
}

/// `v` in `b` is peripheral: degree at most 3 with a neighbour outside `b`,
/// or degree 4 with exactly two neighbours outside `b`.
pub fn is_peripheral(g: &Graph, b: VertexSet, v: usize) -> bool {
    let outside = g.neighbors(v).difference(b).len();
    match g.degree(v) {
        0..=3 => outside >= 1,
        4 => outside == 2,
        _ => false,
    }
}

/// `v` outside the elementary block `core` may be absorbed into it.
pub fn is_potential(g: &Graph, core: VertexSet, v: usize) -> bool {
    if core.contains(v) {
        return false;
    }
    let inside = g.neighbors(v).intersection(core).len();
    match g.degree(v) {
        0..=3 => inside >= 1,
        4 => inside == 2,
        _ => false,
    }
}

/// `w0(H) = e(H) + e[H, G - H] / 2 = (sum of degrees over H) / 2`.
pub fn primary_weight(g: &Graph, h: VertexSet) -> QuarterWeight {
    let degree_sum: usize = h.iter().map(|v| g.degree(v)).sum();
    let by_edges = 2 * g.edges_within(h) + g.edges_leaving(h);
    assert_eq!(
        degree_sum, by_edges,
        "primary weight formulas disagree on {h:?}"
    );
    QuarterWeight::from_halves(degree_sum as i64)
}

/// `w(B) = w0(B) + s/2 + s'/4 + 1_B`, recomputed from the base.
pub fn modified_weight(g: &Graph, base: &StarBlockBase, b: &StarBlock) -> QuarterWeight {
    let vs = b.vertices();
    let mult = |v: usize| {
        base.blocks
            .iter()
            .filter(|x| x.vertices().contains(v))
            .count()
    };
    let shared: Vec<usize> = vs.iter().filter(|&v| mult(v) >= 2).collect();
    let s = shared.iter().filter(|&&v| g.degree(v) <= 3).count() as i64;
    let s4 = shared.iter().filter(|&&v| g.degree(v) == 4).count() as i64;
    let indicator = vs.iter().any(|v| mult(v) == 3) as i64;
    primary_weight(g, vs) + QuarterWeight::from_quarters(2 * s + s4 + 4 * indicator)
}

fn class_of(b: &StarBlock) -> BlockClass {
    if b.s() + b.s_prime() == 0 {
        BlockClass::B0
    } else if b.has_triple_shared {
        BlockClass::B2
    } else {
        BlockClass::B1
    }
}

/// Class tags and class sizes of a base.
pub fn classify(base: &StarBlockBase) -> (Vec<BlockClass>, ClassCounts) {
    let tags: Vec<BlockClass> = base.blocks.iter().map(class_of).collect();
    let count = |c| tags.iter().filter(|&&x| x == c).count();
    let (t0, t1, t2) = (
        count(BlockClass::B0),
        count(BlockClass::B1),
        count(BlockClass::B2),
    );
    (
        tags,
        ClassCounts {
            t0,
            t1,
            t2,
            t: t1 + t2,
        },
    )
}

/// The per-class weight bound on a block with `v` vertices, where `t` counts
/// blocks with shared vertices. The B1 bound `5v/2 - 5/t` need not lie in
/// quarter units; it is rounded down to the nearest quarter, which is exact
/// for comparisons against quarter-unit weights.
pub fn lemma1_bound(class: BlockClass, v: usize, t: usize) -> Result<QuarterWeight> {
    let v = v as i64;
    let q = match class {
        BlockClass::B0 => 10 * v - 10,
        BlockClass::B2 => 10 * v - 4,
        BlockClass::B1 => {
            if t == 0 {
                return Err(Error::ZeroBlockCount);
            }
            let t = t as i64;
            10 * v - (20 + t - 1) / t
        }
    };
    Ok(QuarterWeight::from_quarters(q))
}

/// Edge bound for graphs on `n >= 7` vertices with a single block.
pub fn single_block_edge_bound(n: usize) -> Option<usize> {
    match n {
        0..=6 => None,
        7 => Some(15),
        8 => Some(16),
        9 => Some(18),
        _ => Some(5 * n / 2 - 5),
    }
}

/// Fills in every derived field from the block seeds.
pub(crate) fn assemble(g: &Graph, seeds: &[BlockSeed]) -> StarBlockBase {
    let g1 = seeds
        .iter()
        .fold(VertexSet::EMPTY, |acc, b| acc.union(b.vertices()));
    let mult: Vec<usize> = (0..g.order()).map(|v| multiplicity(seeds, v)).collect();
    let blocks: Vec<StarBlock> = seeds
        .iter()
        .map(|seed| {
            let vs = seed.vertices();
            let peripheral: VertexSet = vs.iter().filter(|&v| is_peripheral(g, vs, v)).collect();
            let shared: VertexSet = vs.iter().filter(|&v| mult[v] >= 2).collect();
            let shared_deg_le3: VertexSet = shared.iter().filter(|&v| g.degree(v) <= 3).collect();
            let shared_deg4: VertexSet = shared.iter().filter(|&v| g.degree(v) == 4).collect();
            let has_triple_shared = vs.iter().any(|v| mult[v] == 3);
            let w0 = primary_weight(g, vs);
            let w = w0
                + QuarterWeight::from_quarters(
                    2 * shared_deg_le3.len() as i64
                        + shared_deg4.len() as i64
                        + 4 * has_triple_shared as i64,
                );
            StarBlock {
                kind: seed.kind,
                centres: seed.centres,
                core: seed.core,
                extension: seed.extension,
                peripheral,
                shared_deg_le3,
                shared_deg4,
                has_triple_shared,
                w0,
                w,
            }
        })
        .collect();
    let count = |pred: &dyn Fn(usize) -> bool| g1.iter().filter(|&v| pred(v)).count();
    let r1 = count(&|v| mult[v] == 2 && g.degree(v) <= 3);
    let r2 = count(&|v| mult[v] == 2 && g.degree(v) == 4);
    let r3 = count(&|v| mult[v] == 3);
    let mut base = StarBlockBase {
        blocks,
        g1_vertices: g1,
        g2_vertices: g.vertices().difference(g1),
        class_of: Vec::new(),
        t0: 0,
        t1: 0,
        t2: 0,
        t: 0,
        r1,
        r2,
        r3,
    };
    let (tags, c) = classify(&base);
    base.class_of = tags;
    base.t0 = c.t0;
    base.t1 = c.t1;
    base.t2 = c.t2;
    base.t = c.t;
    base
}

impl StarBlockBase {
    pub(crate) fn seeds(&self) -> Vec<BlockSeed> {
        self.blocks
            .iter()
            .map(|b| BlockSeed {
                kind: b.kind,
                centres: b.centres,
                core: b.core,
                extension: b.extension,
            })
            .collect()
    }

    /// Number of blocks containing `v`.
    pub fn multiplicity(&self, v: usize) -> usize {
        self.blocks
            .iter()
            .filter(|b| b.vertices().contains(v))
            .count()
    }

    /// Vertices lying in two or more blocks.
    pub fn shared_vertices(&self) -> VertexSet {
        self.g1_vertices
            .iter()
            .filter(|&v| self.multiplicity(v) >= 2)
            .collect()
    }

    /// Checks the structural conditions of a star-block partition of `g`.
    pub fn check_invariants(&self, g: &Graph) -> std::result::Result<(), String> {
        for v in 0..g.order() {
            let d = g.degree(v);
            let m = self.multiplicity(v);
            if d >= 5 && m != 1 {
                return Err(format!("vertex {v} of degree {d} lies in {m} blocks"));
            }
        }
        for v in self.g2_vertices {
            if g.degree(v) > 4 {
                return Err(format!("residual vertex {v} has degree {}", g.degree(v)));
            }
        }
        for (i, a) in self.blocks.iter().enumerate() {
            for v in a.extension {
                if !is_potential(g, a.core, v) {
                    return Err(format!(
                        "extension vertex {v} of block {i} is not potential"
                    ));
                }
            }
            for (j, b) in self.blocks.iter().enumerate().skip(i + 1) {
                for v in a.vertices().intersection(b.vertices()) {
                    if !a.peripheral.contains(v) || !b.peripheral.contains(v) {
                        return Err(format!(
                            "common vertex {v} of blocks {i} and {j} is not peripheral in both"
                        ));
                    }
                }
            }
        }
        for v in self.shared_vertices() {
            let d = g.degree(v);
            if !(2..=4).contains(&d) {
                return Err(format!("shared vertex {v} has degree {d}"));
            }
        }
        Ok(())
    }
}

/// Scan positions, highest priority first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Slot {
    Star7Plus,
    Edge66,
    Edge65,
    Edge64,
    Star6,
    Edge55,
    Path545,
    Star5,
}

const SCAN_ORDER: [Slot; 8] = [
    Slot::Star7Plus,
    Slot::Edge66,
    Slot::Edge65,
    Slot::Edge64,
    Slot::Star6,
    Slot::Edge55,
    Slot::Path545,
    Slot::Star5,
];

fn closed(g: &Graph, v: usize) -> VertexSet {
    g.neighbors(v).with(v)
}

fn candidates(g: &Graph, slot: Slot) -> Vec<BlockSeed> {
    let d = |v: usize| g.degree(v);
    let star = |c: usize, kind| BlockSeed {
        kind,
        centres: VertexSet::singleton(c),
        core: closed(g, c),
        extension: VertexSet::EMPTY,
    };
    let edge = |u: usize, v: usize, kind| BlockSeed {
        kind,
        centres: VertexSet::from_iter([u, v]),
        core: closed(g, u).union(closed(g, v)),
        extension: VertexSet::EMPTY,
    };
    let low_nbrs = |c: usize, max: usize| g.neighbors(c).iter().all(|u| d(u) <= max);
    let mut out: Vec<BlockSeed> = match slot {
        Slot::Star7Plus => (0..g.order())
            .filter(|&c| d(c) >= 7 && low_nbrs(c, 3))
            .map(|c| star(c, BlockKind::Star5Plus3Minus))
            .collect(),
        Slot::Star6 => (0..g.order())
            .filter(|&c| d(c) == 6 && low_nbrs(c, 3))
            .map(|c| star(c, BlockKind::Star5Plus3Minus))
            .collect(),
        Slot::Star5 => (0..g.order())
            .filter(|&c| d(c) == 5 && low_nbrs(c, 4))
            .map(|c| {
                let kind = if low_nbrs(c, 3) {
                    BlockKind::Star5Plus3Minus
                } else {
                    BlockKind::Star5_4Minus
                };
                star(c, kind)
            })
            .collect(),
        Slot::Edge66 | Slot::Edge65 | Slot::Edge64 | Slot::Edge55 => {
            let (a, b, kind) = match slot {
                Slot::Edge66 => (6, 6, BlockKind::Edge66),
                Slot::Edge65 => (6, 5, BlockKind::Edge65),
                Slot::Edge64 => (6, 4, BlockKind::Edge64),
                _ => (5, 5, BlockKind::Edge55),
            };
            g.edges()
                .filter(|&(u, v)| (d(u), d(v)) == (a, b) || (d(u), d(v)) == (b, a))
                .map(|(u, v)| edge(u, v, kind))
                .collect()
        }
        Slot::Path545 => {
            let mut out = Vec::new();
            for v in (0..g.order()).filter(|&v| d(v) == 4) {
                let ends: Vec<usize> = g.neighbors(v).iter().filter(|&u| d(u) == 5).collect();
                for (i, &u) in ends.iter().enumerate() {
                    for &w in &ends[i + 1..] {
                        if !g.has_edge(u, w) {
                            out.push(BlockSeed {
                                kind: BlockKind::Path545,
                                centres: VertexSet::from_iter([u, v, w]),
                                core: closed(g, u).union(closed(g, v)).union(closed(g, w)),
                                extension: VertexSet::EMPTY,
                            });
                        }
                    }
                }
            }
            out
        }
    };
    out.sort_by_key(|b| (b.centres.to_vec(), b.core.to_vec()));
    out
}

/// Checks the preconditions shared by every star-block operation.
pub(crate) fn require_s33_free_planar(g: &Graph) -> Result<()> {
    if let Some(w) = detect_double_star(g, PatternSpec::s33()) {
        return Err(Error::NotS33Free(w));
    }
    if !is_planar(g) {
        return Err(Error::NotPlanar);
    }
    Ok(())
}

/// Greedy elementary decomposition: kinds are scanned in priority order and a
/// candidate is taken when none of its vertices of degree at least 5 is
/// already covered. Blocks are not extended here.
pub fn build_base(g: &Graph) -> Result<StarBlockBase> {
    require_s33_free_planar(g)?;
    let high: VertexSet = (0..g.order()).filter(|&v| g.degree(v) >= 5).collect();
    let mut covered = VertexSet::EMPTY;
    let mut seeds = Vec::new();
    for slot in SCAN_ORDER {
        if high.is_subset(covered) {
            break;
        }
        for cand in candidates(g, slot) {
            if cand
                .core
                .intersection(high)
                .intersection(covered)
                .is_empty()
                && !cand.centres.intersection(high).is_empty()
            {
                covered = covered.union(cand.core);
                seeds.push(cand);
            }
        }
    }
    if let Some(v) = high.difference(covered).min() {
        return Err(Error::BaseConstruction(format!(
            "vertex {v} of degree {} fits no elementary block",
            g.degree(v)
        )));
    }
    let base = assemble(g, &seeds);
    base.check_invariants(g).map_err(Error::BaseConstruction)?;
    Ok(base)
}
