//! Canonical labeling by individualization-refinement.
//!
//! The search tree individualizes a vertex of the first non-singleton cell and
//! refines to an equitable partition. The canonical leaf is the one whose
//! relabeled adjacency rows are lexicographically largest. Automorphisms found
//! at leaves prune sibling branches through orbits and backjumping.

use std::cmp::Ordering;
use std::collections::VecDeque;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::formats::graph6;
use crate::graph::Graph;

/// Isomorphism-invariant encoding of a graph plus the labeling that produced it.
///
/// Equality, ordering and hashing look only at the encoding, so two forms are
/// equal iff their graphs are isomorphic.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CanonicalForm {
    code: Vec<u8>,
    labeling: Vec<usize>,
}

impl CanonicalForm {
    /// graph6 bytes of the canonical graph.
    pub fn code(&self) -> &[u8] {
        &self.code
    }

    pub fn as_graph6(&self) -> &str {
        std::str::from_utf8(&self.code).expect("graph6 is ASCII")
    }

    /// `labeling[v]` is the canonical position of vertex `v`.
    pub fn labeling(&self) -> &[usize] {
        &self.labeling
    }

    pub fn to_graph(&self) -> Graph {
        graph6::decode(self.as_graph6()).expect("canonical code is valid graph6")
    }
}

impl PartialEq for CanonicalForm {
    fn eq(&self, other: &Self) -> bool {
        self.code == other.code
    }
}

impl Eq for CanonicalForm {}

impl Hash for CanonicalForm {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.code.hash(state);
    }
}

impl PartialOrd for CanonicalForm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CanonicalForm {
    fn cmp(&self, other: &Self) -> Ordering {
        self.code.cmp(&other.code)
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let (canon, labeling) = canonical_graph(g);
    CanonicalForm {
        code: graph6::encode(&canon).into_bytes(),
        labeling,
    }
}

/// The canonical relabeling of `g` and the labeling `v -> position`.
pub fn canonical_graph(g: &Graph) -> (Graph, Vec<usize>) {
    let n = g.order();
    let mut search = Search::new(g);
    let mut root = Partition::unit(n);
    let cells = root.cell_starts();
    root.refine(g.rows(), cells);
    search.run(root, &mut Vec::new());
    let best = search.best.expect("search reaches at least one leaf");
    let mut labeling = vec![0; n];
    for (pos, &v) in best.lab.iter().enumerate() {
        labeling[v as usize] = pos;
    }
    (Graph::from_rows_unchecked(n, &best.code), labeling)
}

/// Ordered partition of the vertex set. `cell_end[s]` is meaningful only for
/// cell starts `s`.
#[derive(Clone)]
struct Partition {
    lab: Vec<u8>,
    cell_end: Vec<u8>,
}

impl Partition {
    fn unit(n: usize) -> Self {
        let mut cell_end = vec![0; n];
        if n > 0 {
            cell_end[0] = n as u8;
        }
        Partition {
            lab: (0..n as u8).collect(),
            cell_end,
        }
    }

    fn n(&self) -> usize {
        self.lab.len()
    }

    fn cell_starts(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut s = 0;
        while s < self.n() {
            out.push(s);
            s = self.cell_end[s] as usize;
        }
        out
    }

    fn is_discrete(&self) -> bool {
        let mut s = 0;
        while s < self.n() {
            let e = self.cell_end[s] as usize;
            if e - s > 1 {
                return false;
            }
            s = e;
        }
        true
    }

    fn first_nonsingleton(&self) -> Option<usize> {
        let mut s = 0;
        while s < self.n() {
            let e = self.cell_end[s] as usize;
            if e - s > 1 {
                return Some(s);
            }
            s = e;
        }
        None
    }

    /// Splits `v` off the front of the cell starting at `s`.
    fn individualize(&mut self, s: usize, v: u8) {
        let e = self.cell_end[s] as usize;
        let p = (s..e).find(|&p| self.lab[p] == v).expect("vertex in cell");
        self.lab.swap(s, p);
        self.cell_end[s] = (s + 1) as u8;
        self.cell_end[s + 1] = e as u8;
    }

    /// Refines to the coarsest equitable partition finer than `self`, using
    /// the cells starting at `queue` as initial splitters.
    fn refine(&mut self, rows: &[u64], queue: Vec<usize>) {
        let n = self.n();
        let mut in_queue = vec![false; n];
        for &s in &queue {
            in_queue[s] = true;
        }
        let mut queue: VecDeque<usize> = queue.into();
        let mut counts: Vec<(u32, u8)> = Vec::with_capacity(n);
        let mut frags: Vec<(usize, usize)> = Vec::with_capacity(n);
        while let Some(ws) = queue.pop_front() {
            in_queue[ws] = false;
            let we = self.cell_end[ws] as usize;
            let wmask = self.lab[ws..we].iter().fold(0u64, |m, &v| m | (1u64 << v));
            let mut s = 0;
            let mut singletons = true;
            while s < n {
                let e = self.cell_end[s] as usize;
                if e - s > 1 {
                    counts.clear();
                    counts.extend(
                        self.lab[s..e]
                            .iter()
                            .map(|&v| ((rows[v as usize] & wmask).count_ones(), v)),
                    );
                    let c0 = counts[0].0;
                    if counts.iter().any(|&(c, _)| c != c0) {
                        counts.sort_unstable();
                        frags.clear();
                        let mut fs = s;
                        for i in 0..counts.len() {
                            self.lab[s + i] = counts[i].1;
                            if i + 1 == counts.len() || counts[i + 1].0 != counts[i].0 {
                                frags.push((fs, s + i + 1));
                                fs = s + i + 1;
                            }
                        }
                        let was_queued = in_queue[s];
                        let largest = frags
                            .iter()
                            .enumerate()
                            .max_by_key(|&(i, &(a, b))| (b - a, std::cmp::Reverse(i)))
                            .map(|(i, _)| i)
                            .unwrap();
                        for (i, &(a, b)) in frags.iter().enumerate() {
                            self.cell_end[a] = b as u8;
                            if (was_queued || i != largest) && !in_queue[a] {
                                in_queue[a] = true;
                                queue.push_back(a);
                            }
                            if b - a > 1 {
                                singletons = false;
                            }
                        }
                    } else {
                        singletons = false;
                    }
                }
                s = e;
            }
            if singletons {
                break;
            }
        }
    }
}

struct Leaf {
    lab: Vec<u8>,
    code: Vec<u64>,
    path: Vec<u8>,
}

struct Search<'g> {
    rows: &'g [u64],
    n: usize,
    first: Option<Leaf>,
    best: Option<Leaf>,
    generators: Vec<Vec<u8>>,
}

fn common_prefix(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

impl<'g> Search<'g> {
    fn new(g: &'g Graph) -> Self {
        Search {
            rows: g.rows(),
            n: g.order(),
            first: None,
            best: None,
            generators: Vec::new(),
        }
    }

    /// Explores the subtree below `part`. Returns the level to jump back to
    /// when an automorphism makes the rest of an ancestor's branch redundant.
    fn run(&mut self, part: Partition, path: &mut Vec<u8>) -> Option<usize> {
        let Some(s) = part.first_nonsingleton() else {
            return self.leaf(&part, path);
        };
        let level = path.len();
        let e = part.cell_end[s] as usize;
        let mut cell = part.lab[s..e].to_vec();
        cell.sort_unstable();
        let mut explored: Vec<u8> = Vec::new();
        for v in cell {
            if !explored.is_empty() {
                let orbit = self.orbits_fixing(path);
                if explored
                    .iter()
                    .any(|&u| orbit[u as usize] == orbit[v as usize])
                {
                    continue;
                }
            }
            let mut child = part.clone();
            child.individualize(s, v);
            child.refine(self.rows, vec![s]);
            path.push(v);
            let jump = self.run(child, path);
            path.pop();
            explored.push(v);
            if let Some(target) = jump {
                if target < level {
                    return Some(target);
                }
            }
        }
        None
    }

    fn leaf(&mut self, part: &Partition, path: &[u8]) -> Option<usize> {
        debug_assert!(part.is_discrete());
        let mut pos = [0u8; 64];
        for (i, &v) in part.lab.iter().enumerate() {
            pos[v as usize] = i as u8;
        }
        let code: Vec<u64> = part
            .lab
            .iter()
            .map(|&v| {
                let mut row = 0u64;
                let mut r = self.rows[v as usize];
                while r != 0 {
                    let w = r.trailing_zeros() as usize;
                    row |= 1u64 << pos[w];
                    r &= r - 1;
                }
                row
            })
            .collect();
        let leaf = Leaf {
            lab: part.lab.clone(),
            code,
            path: path.to_vec(),
        };
        let Some(first) = &self.first else {
            self.best = Some(Leaf {
                lab: leaf.lab.clone(),
                code: leaf.code.clone(),
                path: leaf.path.clone(),
            });
            self.first = Some(leaf);
            return None;
        };
        if leaf.code == first.code {
            let jump = common_prefix(&leaf.path, &first.path);
            let gen = self.mapping(&first.lab, &leaf.lab);
            self.generators.push(gen);
            return Some(jump);
        }
        let best = self.best.as_ref().unwrap();
        match leaf.code.cmp(&best.code) {
            Ordering::Equal => {
                let jump = common_prefix(&leaf.path, &best.path);
                let gen = self.mapping(&best.lab, &leaf.lab);
                self.generators.push(gen);
                Some(jump)
            }
            Ordering::Greater => {
                self.best = Some(leaf);
                None
            }
            Ordering::Less => None,
        }
    }

    /// The permutation sending `from[i]` to `to[i]`.
    fn mapping(&self, from: &[u8], to: &[u8]) -> Vec<u8> {
        let mut gen = vec![0u8; self.n];
        for (&a, &b) in from.iter().zip(to) {
            gen[a as usize] = b;
        }
        gen
    }

    /// Orbit representatives under the stored automorphisms fixing `path`.
    fn orbits_fixing(&self, path: &[u8]) -> Vec<u8> {
        let mut parent: Vec<u8> = (0..self.n as u8).collect();
        fn find(p: &mut [u8], mut x: u8) -> u8 {
            while p[x as usize] != x {
                p[x as usize] = p[p[x as usize] as usize];
                x = p[x as usize];
            }
            x
        }
        for gen in &self.generators {
            if path.iter().any(|&v| gen[v as usize] != v) {
                continue;
            }
            for (a, &b) in gen.iter().enumerate() {
                let ra = find(&mut parent, a as u8);
                let rb = find(&mut parent, b);
                if ra != rb {
                    let (lo, hi) = (ra.min(rb), ra.max(rb));
                    parent[hi as usize] = lo;
                }
            }
        }
        (0..self.n as u8).map(|v| find(&mut parent, v)).collect()
    }
}
