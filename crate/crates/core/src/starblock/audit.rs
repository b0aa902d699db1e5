use serde::{Deserialize, Serialize};

use super::{
    classify, lemma1_bound, modified_weight, primary_weight, single_block_edge_bound, BlockClass,
    BlockKind, QuarterWeight, StarBlockBase,
};
use crate::graph::{Graph, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockAudit {
    pub kind: BlockKind,
    pub vertices: Vec<usize>,
    pub w0: QuarterWeight,
    pub w: QuarterWeight,
    pub s: usize,
    pub s_prime: usize,
    pub indicator: bool,
    pub class: BlockClass,
    /// Absent only for a B1 block when no block has shared vertices, which
    /// cannot happen.
    pub bound: Option<QuarterWeight>,
    pub pass: bool,
}

/// `e(G) = w0(G1) + w0(G2)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeIdentity {
    pub edges: usize,
    pub w0_g1: QuarterWeight,
    pub w0_g2: QuarterWeight,
    pub pass: bool,
}

/// `sum_B w0(B)` against `w0(G1) + 3/2 r1 + 2 r2 + 3 r3`. Exact equality is
/// required unless a shared vertex has degree 2, in which case the left side
/// may fall short.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerCheck {
    pub lhs: QuarterWeight,
    pub rhs: QuarterWeight,
    pub degree2_shared: usize,
    pub exact: bool,
    pub pass: bool,
}

/// `r3 <= 2 t2 - 4` and `t2 >= 3` whenever `t2 > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartiteCheck {
    pub r3: usize,
    pub t2: usize,
    pub applies: bool,
    pub pass: bool,
}

/// `e(G) <= 5n/2 - 5` when the base has at least two blocks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiBlockCheck {
    pub applies: bool,
    pub edges: usize,
    pub bound: QuarterWeight,
    pub pass: bool,
}

/// `w0(G1) <= 5 v(G1)/2 - 5` when the base has at least two blocks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainCheck {
    pub applies: bool,
    pub w0_g1: QuarterWeight,
    pub bound: QuarterWeight,
    pub pass: bool,
}

/// Edge bound for a single block on `n >= 7` vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingleBlockCheck {
    pub applies: bool,
    pub edges: usize,
    pub bound: Option<usize>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightAudit {
    pub n: usize,
    pub blocks: Vec<BlockAudit>,
    pub t0: usize,
    pub t1: usize,
    pub t2: usize,
    pub t: usize,
    pub r1: usize,
    pub r2: usize,
    pub r3: usize,
    pub edge_identity: EdgeIdentity,
    pub ledger: LedgerCheck,
    pub bipartite: BipartiteCheck,
    pub multi_block: MultiBlockCheck,
    pub chain: ChainCheck,
    pub single_block: SingleBlockCheck,
    /// Stored weights match a recomputation from the base.
    pub weights_consistent: bool,
    /// Every shared vertex has degree 2, 3 or 4.
    pub shared_degrees_ok: bool,
    /// Largest number of blocks meeting at one vertex.
    pub max_multiplicity: usize,
    pub pass: bool,
}

impl WeightAudit {
    pub fn blocks_pass(&self) -> bool {
        self.blocks.iter().all(|b| b.pass)
    }

    /// Accounting identities only, ignoring the per-block bounds.
    pub fn identities_pass(&self) -> bool {
        self.edge_identity.pass
            && self.ledger.pass
            && self.bipartite.pass
            && self.multi_block.pass
            && self.weights_consistent
            && self.shared_degrees_ok
            && self.max_multiplicity <= 3
    }
}

/// Recomputes every weight and accounting identity of `base` from `g`.
pub fn audit(g: &Graph, base: &StarBlockBase) -> WeightAudit {
    let n = g.order();
    let e = g.size();
    let mult: Vec<usize> = (0..n).map(|v| base.multiplicity(v)).collect();
    let g1: VertexSet = base
        .blocks
        .iter()
        .fold(VertexSet::EMPTY, |a, b| a.union(b.vertices()));
    let g2 = g.vertices().difference(g1);
    let (classes, counts) = classify(base);
    let r1 = g1
        .iter()
        .filter(|&v| mult[v] == 2 && g.degree(v) <= 3)
        .count();
    let r2 = g1
        .iter()
        .filter(|&v| mult[v] == 2 && g.degree(v) == 4)
        .count();
    let r3 = g1.iter().filter(|&v| mult[v] == 3).count();

    let mut weights_consistent = g1 == base.g1_vertices
        && (base.r1, base.r2, base.r3) == (r1, r2, r3)
        && classes == base.class_of;
    let blocks: Vec<BlockAudit> = base
        .blocks
        .iter()
        .zip(&classes)
        .map(|(b, &class)| {
            let vs = b.vertices();
            let w0 = primary_weight(g, vs);
            let w = modified_weight(g, base, b);
            let shared = vs.iter().filter(|&v| mult[v] >= 2);
            let s = shared.clone().filter(|&v| g.degree(v) <= 3).count();
            let s_prime = shared.filter(|&v| g.degree(v) == 4).count();
            let indicator = vs.iter().any(|v| mult[v] == 3);
            let extra =
                QuarterWeight::from_quarters(2 * s as i64 + s_prime as i64 + 4 * indicator as i64);
            weights_consistent &= w0 == b.w0 && w == b.w && w - w0 == extra;
            let bound = lemma1_bound(class, vs.len(), counts.t).ok();
            BlockAudit {
                kind: b.kind,
                vertices: vs.to_vec(),
                w0,
                w,
                s,
                s_prime,
                indicator,
                class,
                bound,
                pass: bound.is_some_and(|bd| w <= bd),
            }
        })
        .collect();

    let w0_g1 = primary_weight(g, g1);
    let w0_g2 = primary_weight(g, g2);
    let edge_identity = EdgeIdentity {
        edges: e,
        w0_g1,
        w0_g2,
        pass: w0_g1 + w0_g2 == QuarterWeight::from_int(e as i64),
    };

    let lhs: QuarterWeight = blocks.iter().map(|b| b.w0).sum();
    let rhs = w0_g1 + QuarterWeight::from_quarters(6 * r1 as i64 + 8 * r2 as i64 + 12 * r3 as i64);
    let degree2_shared = g1
        .iter()
        .filter(|&v| mult[v] >= 2 && g.degree(v) == 2)
        .count();
    let exact = degree2_shared == 0;
    let ledger = LedgerCheck {
        lhs,
        rhs,
        degree2_shared,
        exact,
        pass: if exact { lhs == rhs } else { lhs <= rhs },
    };

    let bip_applies = counts.t2 > 0;
    let bipartite = BipartiteCheck {
        r3,
        t2: counts.t2,
        applies: bip_applies,
        pass: !bip_applies || (r3 + 4 <= 2 * counts.t2 && counts.t2 >= 3),
    };

    let multi = base.blocks.len() >= 2;
    let multi_bound = QuarterWeight::from_quarters(10 * n as i64 - 20);
    let multi_block = MultiBlockCheck {
        applies: multi,
        edges: e,
        bound: multi_bound,
        pass: !multi || QuarterWeight::from_int(e as i64) <= multi_bound,
    };
    let chain_bound = QuarterWeight::from_quarters(10 * g1.len() as i64 - 20);
    let chain = ChainCheck {
        applies: multi,
        w0_g1,
        bound: chain_bound,
        pass: !multi || w0_g1 <= chain_bound,
    };

    let single = base.blocks.len() == 1 && n >= 7;
    let sb_bound = single_block_edge_bound(n);
    let single_block = SingleBlockCheck {
        applies: single,
        edges: e,
        bound: sb_bound,
        pass: !single || sb_bound.is_some_and(|b| e <= b),
    };

    let shared_degrees_ok = g1
        .iter()
        .filter(|&v| mult[v] >= 2)
        .all(|v| (2..=4).contains(&g.degree(v)));
    let max_multiplicity = mult.iter().copied().max().unwrap_or(0);

    let mut out = WeightAudit {
        n,
        blocks,
        t0: counts.t0,
        t1: counts.t1,
        t2: counts.t2,
        t: counts.t,
        r1,
        r2,
        r3,
        edge_identity,
        ledger,
        bipartite,
        multi_block,
        chain,
        single_block,
        weights_consistent,
        shared_degrees_ok,
        max_multiplicity,
        pass: false,
    };
    out.pass =
        out.identities_pass() && out.blocks_pass() && out.chain.pass && out.single_block.pass;
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::starblock::build_base;

    #[test]
    fn cycle_audit() {
        let g = Graph::cycle(5).unwrap();
        let a = audit(&g, &build_base(&g).unwrap());
        assert!(a.pass);
        assert_eq!(a.edge_identity.w0_g2, QuarterWeight::from_int(5));
        assert!(!a.multi_block.applies && !a.bipartite.applies);
    }
}
