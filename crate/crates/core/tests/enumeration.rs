use std::collections::BTreeSet;

use planar_turan_core::enumerate::{write_graph6, EnumConstraints};
use planar_turan_core::formats::graph6;
use planar_turan_core::{canonical_form, enumerate_graphs, enumerate_parallel, PatternSpec};

fn codes(c: &EnumConstraints) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    enumerate_graphs(c, |g| {
        assert!(
            out.insert(canonical_form(g).as_graph6().to_owned()),
            "duplicate"
        );
    })
    .unwrap();
    out
}

fn parallel_count(c: &EnumConstraints, workers: usize) -> u64 {
    let (stats, count) =
        enumerate_parallel(c, workers, || 0u64, |a, _| *a += 1, |a, b| a + b).unwrap();
    assert_eq!(stats.emitted, count);
    count
}

#[test]
fn parallel_eight_vertices() {
    assert_eq!(parallel_count(&EnumConstraints::all(8), 4), 12346);
}

#[test]
fn parallel_stats_match_serial() {
    let c = EnumConstraints::all(8)
        .planar()
        .forbidding(PatternSpec::s33())
        .edges(14, 16);
    let serial = enumerate_graphs(&c, |_| {}).unwrap();
    let (parallel, ()) = enumerate_parallel(&c, 4, || (), |_, _| {}, |_, _| ()).unwrap();
    assert_eq!(serial, parallel);
}

#[test]
fn single_worker_matches_serial_stats() {
    for c in [
        EnumConstraints::all(6),
        EnumConstraints::all(7)
            .planar()
            .forbidding(PatternSpec::s33()),
    ] {
        let serial = enumerate_graphs(&c, |_| {}).unwrap();
        let (one, ()) = enumerate_parallel(&c, 1, || (), |_, _| {}, |_, _| ()).unwrap();
        assert_eq!(serial, one);
    }
}

/// Constrained enumeration returns exactly the admitted part of the
/// unconstrained enumeration.
#[test]
fn pruning_is_sound() {
    let p = PatternSpec::new(2, 3).unwrap();
    for n in 1..=7 {
        let all = EnumConstraints::all(n);
        let mut everything = Vec::new();
        enumerate_graphs(&all, |g| everything.push(g.clone())).unwrap();
        let max = n * (n - 1) / 2;
        for c in [
            EnumConstraints::all(n).planar(),
            EnumConstraints::all(n).forbidding(p),
            EnumConstraints::all(n)
                .planar()
                .forbidding(PatternSpec::s33()),
            EnumConstraints::all(n).edges(max / 3, max / 2),
            EnumConstraints::all(n)
                .planar()
                .connected()
                .edges(n - 1, max),
        ] {
            let want: BTreeSet<String> = everything
                .iter()
                .filter(|g| c.admits(g))
                .map(|g| canonical_form(g).as_graph6().to_owned())
                .collect();
            assert_eq!(codes(&c), want, "n={n} {c:?}");
        }
    }
}

#[test]
fn graph6_stream() {
    let mut buf = Vec::new();
    let stats = write_graph6(&EnumConstraints::all(5), &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    assert_eq!(stats.emitted, 34);
    assert_eq!(graph6::decode_all(&text).unwrap().len(), 34);
}
