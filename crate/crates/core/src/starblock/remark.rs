//! Degree-class counting for graphs with minimum degree 3, no 3-3 edge and
//! every vertex of degree at least 6 adjacent only to vertices of degree 3.
//!
//! Classes: `B` = degree 3, `A` = degree 4 or 5, `C` = degree at least 6.
//! `x` counts edges between `A` and `B`.

use serde::{Deserialize, Serialize};

use super::require_s33_free_planar;
use crate::error::Result;
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RemarkBranch {
    /// `m6 >= 2`
    ManyHigh,
    /// `m6 == 1`
    OneHigh,
    /// `m6 == 0`
    NoHigh,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeClassReport {
    pub min_degree_at_least_3: bool,
    pub no_3_3_edge: bool,
    /// No 6-6, 6-5 or 6-4 edge.
    pub no_6_4plus_edge: bool,
    pub no_7plus_4plus_edge: bool,
    pub preconditions_met: bool,
    pub m3: usize,
    pub m4: usize,
    pub m5: usize,
    pub m6: usize,
    pub x: usize,
    pub edges: usize,
    pub branch: Option<RemarkBranch>,
    /// `e = 3 m3 + (4 m4 + 5 m5 - x) / 2`
    pub edge_identity: Option<bool>,
    /// `3 m3 - x <= 2 (m3 + m6) - 4`
    pub bipartite_bound: Option<bool>,
    /// `3 m3 - x <= m3`
    pub single_high_bound: Option<bool>,
    /// Every degree-5 vertex has at least two neighbours of degree at most 3.
    pub five_vertex_property: Option<bool>,
    /// `2 m5 <= 3 m3 + 4 m4`
    pub five_count_bound: Option<bool>,
    pub offending_five_vertices: Vec<usize>,
    pub pass: bool,
}

pub fn degree_class_report(g: &Graph) -> Result<DegreeClassReport> {
    require_s33_free_planar(g)?;
    let d = |v: usize| g.degree(v);
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let any_edge = |p: &dyn Fn(usize, usize) -> bool| {
        edges.iter().any(|&(u, v)| p(d(u), d(v)) || p(d(v), d(u)))
    };
    let min_degree_at_least_3 = g.min_degree() >= 3;
    let no_3_3_edge = !any_edge(&|a, b| a == 3 && b == 3);
    let no_6_4plus_edge = !any_edge(&|a, b| a == 6 && (4..=6).contains(&b));
    let no_7plus_4plus_edge = !any_edge(&|a, b| a >= 7 && b >= 4);
    let preconditions_met =
        min_degree_at_least_3 && no_3_3_edge && no_6_4plus_edge && no_7plus_4plus_edge;

    let count = |p: &dyn Fn(usize) -> bool| (0..g.order()).filter(|&v| p(d(v))).count();
    let m3 = count(&|k| k == 3);
    let m4 = count(&|k| k == 4);
    let m5 = count(&|k| k == 5);
    let m6 = count(&|k| k >= 6);
    let x = edges
        .iter()
        .filter(|&&(u, v)| {
            let (a, b) = (d(u), d(v));
            (a == 3 && (4..=5).contains(&b)) || (b == 3 && (4..=5).contains(&a))
        })
        .count();
    let e = g.size();

    let mut r = DegreeClassReport {
        min_degree_at_least_3,
        no_3_3_edge,
        no_6_4plus_edge,
        no_7plus_4plus_edge,
        preconditions_met,
        m3,
        m4,
        m5,
        m6,
        x,
        edges: e,
        branch: None,
        edge_identity: None,
        bipartite_bound: None,
        single_high_bound: None,
        five_vertex_property: None,
        five_count_bound: None,
        offending_five_vertices: Vec::new(),
        pass: true,
    };
    if !preconditions_met {
        return Ok(r);
    }
    let (m3i, m4i, m5i, m6i, xi) = (m3 as i64, m4 as i64, m5 as i64, m6 as i64, x as i64);
    r.edge_identity = Some(2 * e as i64 == 6 * m3i + 4 * m4i + 5 * m5i - xi);
    match m6 {
        0 => {
            r.branch = Some(RemarkBranch::NoHigh);
            r.offending_five_vertices = (0..g.order())
                .filter(|&v| d(v) == 5 && g.neighbors(v).iter().filter(|&u| d(u) <= 3).count() < 2)
                .collect();
            r.five_vertex_property = Some(r.offending_five_vertices.is_empty());
            r.five_count_bound = Some(2 * m5i <= 3 * m3i + 4 * m4i);
        }
        1 => {
            r.branch = Some(RemarkBranch::OneHigh);
            r.single_high_bound = Some(3 * m3i - xi <= m3i);
        }
        _ => {
            r.branch = Some(RemarkBranch::ManyHigh);
            r.bipartite_bound = Some(3 * m3i - xi <= 2 * (m3i + m6i) - 4);
        }
    }
    r.pass = [
        r.edge_identity,
        r.bipartite_bound,
        r.single_high_bound,
        r.five_vertex_property,
        r.five_count_bound,
    ]
    .iter()
    .all(|c| c.unwrap_or(true));
    Ok(r)
}
