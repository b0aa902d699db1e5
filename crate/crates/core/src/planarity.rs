//! Left-right planarity testing with combinatorial embeddings.
//!
//! The test follows the DFS orientation / conflict-pair formulation of the
//! left-right criterion. When the graph is planar the recorded sides are
//! turned into a rotation system, which [`Embedding::check`] verifies with
//! Euler's formula. Non-planar graphs can be reduced to a Kuratowski
//! subdivision by edge deletion.

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, GraphBuilder, VertexSet};

const NONE: usize = usize::MAX;

type EdgeId = usize;

#[derive(Clone, Copy, Default, Debug)]
struct Interval {
    low: Option<EdgeId>,
    high: Option<EdgeId>,
}

impl Interval {
    fn is_empty(&self) -> bool {
        self.low.is_none() && self.high.is_none()
    }
}

#[derive(Clone, Copy, Default, Debug)]
struct ConflictPair {
    left: Interval,
    right: Interval,
}

impl ConflictPair {
    fn swap(&mut self) {
        std::mem::swap(&mut self.left, &mut self.right);
    }
}

struct LrState<'g> {
    g: &'g Graph,
    n: usize,
    height: Vec<usize>,
    parent_edge: Vec<Option<EdgeId>>,
    // oriented edges
    src: Vec<usize>,
    dst: Vec<usize>,
    edge_id: Vec<EdgeId>,
    lowpt: Vec<usize>,
    lowpt2: Vec<usize>,
    nesting_depth: Vec<i64>,
    out: Vec<Vec<EdgeId>>,
    // testing
    refs: Vec<Option<EdgeId>>,
    side: Vec<i64>,
    lowpt_edge: Vec<Option<EdgeId>>,
    stack_bottom: Vec<usize>,
    stack: Vec<ConflictPair>,
    roots: Vec<usize>,
}

impl<'g> LrState<'g> {
    fn new(g: &'g Graph) -> Self {
        let n = g.order();
        let m = g.size();
        LrState {
            g,
            n,
            height: vec![NONE; n],
            parent_edge: vec![None; n],
            src: Vec::with_capacity(m),
            dst: Vec::with_capacity(m),
            edge_id: vec![NONE; n * n],
            lowpt: Vec::with_capacity(m),
            lowpt2: Vec::with_capacity(m),
            nesting_depth: Vec::with_capacity(m),
            out: vec![Vec::new(); n],
            refs: vec![None; m],
            side: vec![1; m],
            lowpt_edge: vec![None; m],
            stack_bottom: vec![0; m],
            stack: Vec::new(),
            roots: Vec::new(),
        }
    }

    fn oriented(&self, v: usize, w: usize) -> bool {
        self.edge_id[v * self.n + w] != NONE || self.edge_id[w * self.n + v] != NONE
    }

    fn orient(&mut self, v: usize) {
        let e = self.parent_edge[v];
        for w in self.g.neighbors(v) {
            if self.oriented(v, w) {
                continue;
            }
            let vw = self.src.len();
            self.src.push(v);
            self.dst.push(w);
            self.edge_id[v * self.n + w] = vw;
            self.out[v].push(vw);
            self.lowpt.push(self.height[v]);
            self.lowpt2.push(self.height[v]);
            self.nesting_depth.push(0);
            if self.height[w] == NONE {
                self.parent_edge[w] = Some(vw);
                self.height[w] = self.height[v] + 1;
                self.orient(w);
            } else {
                self.lowpt[vw] = self.height[w];
            }
            let mut depth = 2 * self.lowpt[vw] as i64;
            if self.lowpt2[vw] < self.height[v] {
                depth += 1; // chordal
            }
            self.nesting_depth[vw] = depth;
            if let Some(e) = e {
                if self.lowpt[vw] < self.lowpt[e] {
                    self.lowpt2[e] = self.lowpt[e].min(self.lowpt2[vw]);
                    self.lowpt[e] = self.lowpt[vw];
                } else if self.lowpt[vw] > self.lowpt[e] {
                    self.lowpt2[e] = self.lowpt2[e].min(self.lowpt[vw]);
                } else {
                    self.lowpt2[e] = self.lowpt2[e].min(self.lowpt2[vw]);
                }
            }
        }
    }

    fn conflicting(&self, i: &Interval, b: EdgeId) -> bool {
        match i.high {
            Some(h) if !i.is_empty() => self.lowpt[h] > self.lowpt[b],
            _ => false,
        }
    }

    fn lowest(&self, p: &ConflictPair) -> usize {
        if p.left.is_empty() {
            return self.lowpt[p.right.low.expect("non-empty pair")];
        }
        if p.right.is_empty() {
            return self.lowpt[p.left.low.expect("non-empty pair")];
        }
        self.lowpt[p.left.low.unwrap()].min(self.lowpt[p.right.low.unwrap()])
    }

    fn test(&mut self, v: usize) -> bool {
        let e = self.parent_edge[v];
        let adjs = self.out[v].clone();
        for (idx, &ei) in adjs.iter().enumerate() {
            let w = self.dst[ei];
            self.stack_bottom[ei] = self.stack.len();
            if self.parent_edge[w] == Some(ei) {
                if !self.test(w) {
                    return false;
                }
            } else {
                self.lowpt_edge[ei] = Some(ei);
                self.stack.push(ConflictPair {
                    left: Interval::default(),
                    right: Interval {
                        low: Some(ei),
                        high: Some(ei),
                    },
                });
            }
            if self.lowpt[ei] < self.height[v] {
                let e = e.expect("return edge below the root");
                if idx == 0 {
                    self.lowpt_edge[e] = self.lowpt_edge[ei];
                } else if !self.add_constraints(ei, e) {
                    return false;
                }
            }
        }
        if let Some(e) = e {
            self.remove_back_edges(e);
        }
        true
    }

    fn add_constraints(&mut self, ei: EdgeId, e: EdgeId) -> bool {
        let mut p = ConflictPair::default();
        // merge return edges of ei into p.right
        loop {
            let mut q = self.stack.pop().expect("conflict stack underflow");
            if !q.left.is_empty() {
                q.swap();
            }
            if !q.left.is_empty() {
                return false;
            }
            let qrl = q.right.low.expect("non-empty right interval");
            if self.lowpt[qrl] > self.lowpt[e] {
                if p.right.is_empty() {
                    p.right = q.right;
                } else {
                    let prl = p.right.low.unwrap();
                    self.refs[prl] = q.right.high;
                }
                p.right.low = q.right.low;
            } else {
                self.refs[qrl] = self.lowpt_edge[e];
            }
            if self.stack.len() == self.stack_bottom[ei] {
                break;
            }
        }
        // merge conflicting return edges of earlier siblings into p.left
        while let Some(top) = self.stack.last() {
            if !(self.conflicting(&top.left, ei) || self.conflicting(&top.right, ei)) {
                break;
            }
            let mut q = self.stack.pop().unwrap();
            if self.conflicting(&q.right, ei) {
                q.swap();
            }
            if self.conflicting(&q.right, ei) {
                return false;
            }
            if let Some(prl) = p.right.low {
                self.refs[prl] = q.right.high;
            }
            if q.right.low.is_some() {
                p.right.low = q.right.low;
            }
            if p.left.is_empty() {
                p.left = q.left;
            } else if let Some(pll) = p.left.low {
                self.refs[pll] = q.left.high;
            }
            p.left.low = q.left.low;
        }
        if !(p.left.is_empty() && p.right.is_empty()) {
            self.stack.push(p);
        }
        true
    }

    fn remove_back_edges(&mut self, e: EdgeId) {
        let u = self.src[e];
        while let Some(top) = self.stack.last() {
            if self.lowest(top) != self.height[u] {
                break;
            }
            let p = self.stack.pop().unwrap();
            if let Some(l) = p.left.low {
                self.side[l] = -1;
            }
        }
        if let Some(mut p) = self.stack.pop() {
            // trim left interval
            while let Some(h) = p.left.high {
                if self.dst[h] != u {
                    break;
                }
                p.left.high = self.refs[h];
            }
            if p.left.high.is_none() {
                if let Some(l) = p.left.low {
                    self.refs[l] = p.right.low;
                    self.side[l] = -1;
                    p.left.low = None;
                }
            }
            // trim right interval
            while let Some(h) = p.right.high {
                if self.dst[h] != u {
                    break;
                }
                p.right.high = self.refs[h];
            }
            if p.right.high.is_none() {
                if let Some(r) = p.right.low {
                    self.refs[r] = p.left.low;
                    self.side[r] = -1;
                    p.right.low = None;
                }
            }
            self.stack.push(p);
        }
        // side of e is the side of a highest return edge
        if self.lowpt[e] < self.height[u] {
            if let Some(top) = self.stack.last() {
                let hl = top.left.high;
                let hr = top.right.high;
                self.refs[e] = match (hl, hr) {
                    (Some(l), Some(r)) if self.lowpt[l] > self.lowpt[r] => Some(l),
                    (Some(l), None) => Some(l),
                    _ => hr,
                };
            }
        }
    }

    fn sign(&mut self, e: EdgeId) -> i64 {
        // iterative form of the recursive sign resolution
        let mut chain = vec![e];
        while let Some(r) = self.refs[*chain.last().unwrap()] {
            chain.push(r);
        }
        let mut acc = self.side[*chain.last().unwrap()];
        for &x in chain.iter().rev().skip(1) {
            acc *= self.side[x];
            self.side[x] = acc;
            self.refs[x] = None;
        }
        self.side[e]
    }

    fn run(&mut self) -> bool {
        let n = self.n;
        if n > 2 && self.g.size() > 3 * n - 6 {
            return false;
        }
        for v in 0..n {
            if self.height[v] == NONE {
                self.height[v] = 0;
                self.roots.push(v);
                self.orient(v);
            }
        }
        for v in 0..n {
            let mut adj = std::mem::take(&mut self.out[v]);
            adj.sort_by_key(|&e| self.nesting_depth[e]);
            self.out[v] = adj;
        }
        let roots = self.roots.clone();
        roots.into_iter().all(|r| self.test(r))
    }

    fn embed(mut self) -> Embedding {
        let n = self.n;
        let m = self.src.len();
        for e in 0..m {
            let s = self.sign(e);
            self.nesting_depth[e] *= s;
        }
        let mut rot = RotationBuilder::new(n);
        for v in 0..n {
            let mut adj = std::mem::take(&mut self.out[v]);
            adj.sort_by_key(|&e| self.nesting_depth[e]);
            let mut prev = None;
            for &e in &adj {
                let w = self.dst[e];
                rot.add_cw(v, w, prev);
                prev = Some(w);
            }
            self.out[v] = adj;
        }
        let mut left_ref = vec![NONE; n];
        let mut right_ref = vec![NONE; n];
        let roots = self.roots.clone();
        for r in roots {
            self.embed_dfs(r, &mut rot, &mut left_ref, &mut right_ref);
        }
        rot.finish()
    }

    fn embed_dfs(
        &self,
        v: usize,
        rot: &mut RotationBuilder,
        left_ref: &mut [usize],
        right_ref: &mut [usize],
    ) {
        for &ei in &self.out[v] {
            let w = self.dst[ei];
            if self.parent_edge[w] == Some(ei) {
                rot.add_first(w, v);
                left_ref[v] = w;
                right_ref[v] = w;
                self.embed_dfs(w, rot, left_ref, right_ref);
            } else if self.side[ei] == 1 {
                rot.add_cw(w, v, Some(right_ref[w]));
            } else {
                rot.add_ccw(w, v, Some(left_ref[w]));
                left_ref[w] = v;
            }
        }
    }
}

/// Doubly linked cyclic neighbour orders under construction.
struct RotationBuilder {
    n: usize,
    cw: Vec<usize>,
    ccw: Vec<usize>,
    first: Vec<usize>,
}

impl RotationBuilder {
    fn new(n: usize) -> Self {
        RotationBuilder {
            n,
            cw: vec![NONE; n * n],
            ccw: vec![NONE; n * n],
            first: vec![NONE; n],
        }
    }

    fn add_cw(&mut self, v: usize, w: usize, reference: Option<usize>) {
        let n = self.n;
        match reference {
            None => {
                self.cw[v * n + w] = w;
                self.ccw[v * n + w] = w;
                self.first[v] = w;
            }
            Some(r) => {
                let after = self.cw[v * n + r];
                self.cw[v * n + r] = w;
                self.cw[v * n + w] = after;
                self.ccw[v * n + after] = w;
                self.ccw[v * n + w] = r;
            }
        }
    }

    fn add_ccw(&mut self, v: usize, w: usize, reference: Option<usize>) {
        match reference {
            None => self.add_cw(v, w, None),
            Some(r) => {
                let before = self.ccw[v * self.n + r];
                self.add_cw(v, w, Some(before));
                if self.first[v] == r {
                    self.first[v] = w;
                }
            }
        }
    }

    fn add_first(&mut self, v: usize, w: usize) {
        let r = self.first[v];
        self.add_ccw(v, w, (r != NONE).then_some(r));
    }

    fn finish(self) -> Embedding {
        let n = self.n;
        let rotation = (0..n)
            .map(|v| {
                let mut order = Vec::new();
                let start = self.first[v];
                if start != NONE {
                    let mut w = start;
                    loop {
                        order.push(w);
                        w = self.cw[v * n + w];
                        if w == start || order.len() > n {
                            break;
                        }
                    }
                }
                order
            })
            .collect();
        Embedding { rotation }
    }
}

/// A combinatorial embedding: the clockwise neighbour order at each vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Embedding {
    pub rotation: Vec<Vec<usize>>,
}

/// Face count of a verified embedding and the Euler characteristic check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerCheck {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub components: usize,
}

impl Embedding {
    /// Verifies that the rotation system describes `g` and is planar:
    /// every non-trivial component must satisfy `v - e + f = 2`.
    /// Returns the global counts, which satisfy `v - e + f = 1 + c`.
    pub fn check(&self, g: &Graph) -> Option<EulerCheck> {
        let n = g.order();
        if self.rotation.len() != n {
            return None;
        }
        for v in 0..n {
            let set: VertexSet = self.rotation[v].iter().copied().collect();
            if set != g.neighbors(v) || self.rotation[v].len() != g.degree(v) {
                return None;
            }
        }
        // position of w in the rotation at v
        let mut pos = vec![NONE; n * n];
        for v in 0..n {
            for (i, &w) in self.rotation[v].iter().enumerate() {
                pos[v * n + w] = i;
            }
        }
        let mut used = vec![false; n * n];
        let comps = g.components();
        let mut face_total = 0usize;
        let mut nontrivial = 0usize;
        for comp in &comps {
            let ec = g.edges_within(*comp);
            if ec == 0 {
                continue;
            }
            nontrivial += 1;
            let mut faces = 0usize;
            for u in comp.iter() {
                for &v in &self.rotation[u] {
                    if used[u * n + v] {
                        continue;
                    }
                    faces += 1;
                    let (mut a, mut b) = (u, v);
                    while !used[a * n + b] {
                        used[a * n + b] = true;
                        // next half-edge: at b, the successor of a in the rotation
                        let rb = &self.rotation[b];
                        let next = rb[(pos[b * n + a] + 1) % rb.len()];
                        a = b;
                        b = next;
                    }
                }
            }
            if comp.len() + faces != ec + 2 {
                return None;
            }
            face_total += faces;
        }
        let faces = if nontrivial == 0 {
            1
        } else {
            face_total + 1 - nontrivial
        };
        Some(EulerCheck {
            vertices: n,
            edges: g.size(),
            faces,
            components: comps.len(),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum KuratowskiKind {
    K5,
    K33,
}

/// A subdivision of `K5` or `K3,3` contained in a graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KuratowskiWitness {
    pub kind: KuratowskiKind,
    pub branch_vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PlanarityCertificate {
    Planar(Embedding),
    NonPlanar(KuratowskiWitness),
}

/// `true` iff `g` is planar.
pub fn is_planar(g: &Graph) -> bool {
    let n = g.order();
    if n <= 4 || g.size() <= 8 {
        return true;
    }
    if g.size() > 3 * n - 6 {
        return false;
    }
    LrState::new(g).run()
}

/// A rotation system for `g`, or `None` if `g` is not planar. The returned
/// embedding has already passed [`Embedding::check`].
pub fn planar_embedding(g: &Graph) -> Option<Embedding> {
    let mut st = LrState::new(g);
    if !st.run() {
        return None;
    }
    let emb = st.embed();
    assert!(
        emb.check(g).is_some(),
        "left-right embedding failed the Euler check for {g:?}"
    );
    Some(emb)
}

/// Reduces a non-planar graph to a Kuratowski subdivision by deleting every
/// edge whose removal keeps it non-planar.
pub fn kuratowski_witness(g: &Graph) -> Option<KuratowskiWitness> {
    if is_planar(g) {
        return None;
    }
    let mut b = GraphBuilder::from_graph(g);
    for (u, v) in g.edges() {
        b.remove_edge(u, v).expect("edge in range");
        if is_planar(&b.build()) {
            b.add_edge(u, v).expect("edge in range");
        }
    }
    let h = b.build();
    let edges: Vec<_> = h.edges().collect();
    let branch: Vec<usize> = (0..h.order()).filter(|&v| h.degree(v) >= 3).collect();
    let kind = match branch.len() {
        5 if branch.iter().all(|&v| h.degree(v) == 4) => KuratowskiKind::K5,
        6 if branch.iter().all(|&v| h.degree(v) == 3) => KuratowskiKind::K33,
        _ => panic!("edge-minimal non-planar subgraph is not a Kuratowski subdivision: {h:?}"),
    };
    Some(KuratowskiWitness {
        kind,
        branch_vertices: branch,
        edges,
    })
}

/// Planarity with a certificate either way.
pub fn planarity_certificate(g: &Graph) -> PlanarityCertificate {
    match planar_embedding(g) {
        Some(e) => PlanarityCertificate::Planar(e),
        None => PlanarityCertificate::NonPlanar(
            kuratowski_witness(g).expect("non-planar graph has a witness"),
        ),
    }
}
