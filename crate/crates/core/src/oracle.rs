//! Slow, independent reference implementations. They share no code with the
//! fast paths they check and are meant for tests and small inputs only.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::pattern::PatternSpec;

pub const BRUTE_CONTAINS_LIMIT: usize = 14;
pub const BRUTE_PLANARITY_LIMIT: usize = 8;
pub const BRUTE_CANON_LIMIT: usize = 8;

fn guard(what: &'static str, limit: usize, got: usize) -> Result<()> {
    if got > limit {
        return Err(Error::Guard { what, limit, got });
    }
    Ok(())
}

/// Every subset of `s` with exactly `k` elements.
fn subsets_of_size(s: VertexSet, k: usize) -> Vec<VertexSet> {
    let bits = s.bits();
    let mut out = Vec::new();
    let mut sub = bits;
    loop {
        if sub.count_ones() as usize == k {
            out.push(VertexSet::from_bits(sub));
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & bits;
    }
    out
}

/// Tries every ordered central edge and every pair of arm sets.
pub fn brute_force_contains(g: &Graph, p: PatternSpec) -> Result<bool> {
    guard(
        "brute-force containment vertex count",
        BRUTE_CONTAINS_LIMIT,
        g.order(),
    )?;
    for x in 0..g.order() {
        for y in g.neighbors(x) {
            let nx = g.neighbors(x).without(y);
            let ny = g.neighbors(y).without(x);
            for a in subsets_of_size(nx, p.m()) {
                for b in subsets_of_size(ny, p.l()) {
                    if a.intersection(b).is_empty() {
                        return Ok(true);
                    }
                }
            }
        }
    }
    Ok(false)
}

/// Looks for internally disjoint paths realising every pair in `pairs`,
/// with interiors drawn from `free`.
fn route(g: &Graph, pairs: &[(usize, usize)], free: VertexSet) -> bool {
    let Some((&(a, b), rest)) = pairs.split_first() else {
        return true;
    };
    fn extend(
        g: &Graph,
        at: usize,
        target: usize,
        free: VertexSet,
        used: VertexSet,
        rest: &[(usize, usize)],
    ) -> bool {
        if g.has_edge(at, target) && route(g, rest, free.difference(used)) {
            return true;
        }
        for w in g.neighbors(at).intersection(free.difference(used)) {
            if extend(g, w, target, free, used.with(w), rest) {
                return true;
            }
        }
        false
    }
    extend(g, a, b, free, VertexSet::EMPTY, rest)
}

/// Kuratowski's theorem applied literally: searches for a subdivision of
/// `K5` or `K3,3`.
pub fn brute_force_is_planar(g: &Graph) -> Result<bool> {
    let n = g.order();
    guard(
        "brute-force planarity vertex count",
        BRUTE_PLANARITY_LIMIT,
        n,
    )?;
    let all = g.vertices();
    if n >= 5 {
        for branch in subsets_of_size(all, 5) {
            if branch.iter().any(|v| g.degree(v) < 4) {
                continue;
            }
            let b = branch.to_vec();
            let pairs: Vec<_> = (0..5)
                .flat_map(|i| (i + 1..5).map(move |j| (i, j)))
                .map(|(i, j)| (b[i], b[j]))
                .collect();
            if route(g, &pairs, all.difference(branch)) {
                return Ok(false);
            }
        }
    }
    if n >= 6 {
        for branch in subsets_of_size(all, 6) {
            if branch.iter().any(|v| g.degree(v) < 3) {
                continue;
            }
            let b = branch.to_vec();
            // sides containing b[0]
            for side in subsets_of_size(VertexSet::from_bits(0b111110), 2) {
                let left: Vec<usize> = std::iter::once(b[0])
                    .chain(side.iter().map(|i| b[i]))
                    .collect();
                let right: Vec<usize> = (1..6)
                    .filter(|&i| !side.contains(i))
                    .map(|i| b[i])
                    .collect();
                let pairs: Vec<_> = left
                    .iter()
                    .flat_map(|&u| right.iter().map(move |&v| (u, v)))
                    .collect();
                if route(g, &pairs, all.difference(branch)) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Lexicographically largest relabeled row vector over all `n!` permutations.
pub fn brute_force_canonical(g: &Graph) -> Result<Vec<u64>> {
    let n = g.order();
    guard("brute-force canonical vertex count", BRUTE_CANON_LIMIT, n)?;
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<u64>> = None;
    loop {
        // perm[i] = original vertex placed at position i
        let mut pos = vec![0; n];
        for (i, &v) in perm.iter().enumerate() {
            pos[v] = i;
        }
        let code: Vec<u64> = perm
            .iter()
            .map(|&v| g.neighbors(v).iter().fold(0u64, |r, w| r | 1 << pos[w]))
            .collect();
        if best.as_ref().is_none_or(|b| code > *b) {
            best = Some(code);
        }
        // next permutation in lexicographic order
        let Some(i) = (1..n).rev().find(|&i| perm[i - 1] < perm[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| perm[j] > perm[i - 1]).unwrap();
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
    Ok(best.unwrap())
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Number of unlabeled graphs on `n` vertices, by Burnside's lemma over the
/// cycle types of the symmetric group acting on vertex pairs.
pub fn unlabeled_graph_count(n: usize) -> u128 {
    fn partitions(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=max.min(n)).rev() {
            cur.push(k);
            partitions(n - k, k, cur, out);
            cur.pop();
        }
    }
    assert!(n <= 12, "count overflows past 12 vertices");
    let mut parts = Vec::new();
    partitions(n, n, &mut Vec::new(), &mut parts);
    let fact = |k: usize| (1..=k as u128).product::<u128>();
    let mut total: u128 = 0;
    for lambda in parts {
        // z_lambda = prod k^{m_k} m_k!
        let mut z: u128 = 1;
        let mut k = 0;
        while k < lambda.len() {
            let len = lambda[k];
            let mult = lambda[k..].iter().take_while(|&&x| x == len).count();
            z *= (len as u128).pow(mult as u32) * fact(mult);
            k += mult;
        }
        let mut cycles = 0usize;
        for (i, &a) in lambda.iter().enumerate() {
            cycles += a / 2;
            for &b in &lambda[i + 1..] {
                cycles += gcd(a, b);
            }
        }
        total += fact(n) / z * (1u128 << cycles);
    }
    total / fact(n)
}
