use std::collections::HashSet;

use planar_turan_core::enumerate::EnumConstraints;
use planar_turan_core::formats::{graph6, planar_code};
use planar_turan_core::oracle::{
    brute_force_canonical, brute_force_contains, brute_force_is_planar,
};
use planar_turan_core::planarity::{kuratowski_witness, KuratowskiKind};
use planar_turan_core::turan::{compute_planar_turan_with, TuranOptions};
use planar_turan_core::{
    canonical_form, enumerate_graphs, is_planar, planar_embedding, Graph, GraphBuilder, PatternSpec,
};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

fn random_graph(rng: &mut StdRng, n: usize, density: f64) -> Graph {
    let mut b = GraphBuilder::new(n).unwrap();
    for j in 0..n {
        for i in 0..j {
            if rng.gen_bool(density) {
                b.add_edge(i, j).unwrap();
            }
        }
    }
    b.build()
}

fn all_unlabeled(n: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    enumerate_graphs(&EnumConstraints::all(n), |g| out.push(g.clone())).unwrap();
    out
}

#[test]
fn canonical_form_agrees_with_brute_force() {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..300 {
        let n = rng.gen_range(1..=7);
        let g = {
            let d = rng.gen_range(0.2..0.8);
            random_graph(&mut rng, n, d)
        };
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        let h = g.relabel(&perm);
        assert_eq!(canonical_form(&g), canonical_form(&h));
        let c = canonical_form(&g).to_graph();
        assert_eq!(
            brute_force_canonical(&c).unwrap(),
            brute_force_canonical(&g).unwrap()
        );
    }
}

#[test]
fn canonical_form_separates_what_brute_force_separates() {
    for n in 1..=6 {
        let graphs = all_unlabeled(n);
        let fast: HashSet<_> = graphs.iter().map(canonical_form).collect();
        let slow: HashSet<_> = graphs
            .iter()
            .map(|g| brute_force_canonical(g).unwrap())
            .collect();
        assert_eq!(fast.len(), graphs.len());
        assert_eq!(slow.len(), graphs.len());
    }
}

#[test]
fn planarity_agrees_with_kuratowski_search() {
    let mut planar_counts = Vec::new();
    for n in 1..=7 {
        let mut count = 0;
        for g in all_unlabeled(n) {
            let slow = brute_force_is_planar(&g).unwrap();
            assert_eq!(is_planar(&g), slow, "{}", graph6::encode(&g));
            count += slow as u64;
        }
        planar_counts.push(count);
    }
    assert_eq!(planar_counts, [1, 2, 4, 11, 33, 142, 822]);

    let mut rng = StdRng::seed_from_u64(12);
    for _ in 0..200 {
        let g = {
            let d = rng.gen_range(0.3..0.6);
            random_graph(&mut rng, 8, d)
        };
        assert_eq!(
            is_planar(&g),
            brute_force_is_planar(&g).unwrap(),
            "{}",
            graph6::encode(&g)
        );
    }
}

#[test]
fn planarity_certificates_are_valid() {
    let mut rng = StdRng::seed_from_u64(13);
    for _ in 0..300 {
        let n = rng.gen_range(5..=14);
        let g = {
            let d = rng.gen_range(0.15..0.5);
            random_graph(&mut rng, n, d)
        };
        match planar_embedding(&g) {
            Some(emb) => {
                let e = emb.check(&g).expect("embedding satisfies Euler's formula");
                assert_eq!((e.vertices, e.edges), (n, g.size()));
                assert!(is_planar(&g));
            }
            None => {
                assert!(!is_planar(&g));
                let w = kuratowski_witness(&g).expect("non-planar graph has a witness");
                let want = match w.kind {
                    KuratowskiKind::K5 => 5,
                    KuratowskiKind::K33 => 6,
                };
                assert_eq!(w.branch_vertices.len(), want);
                assert!(w.edges.iter().all(|&(u, v)| g.has_edge(u, v)));
                let sub = Graph::from_edges(n, &w.edges).unwrap();
                assert!(!is_planar(&sub));
            }
        }
    }
}

#[test]
fn planar_code_round_trip() {
    let mut rng = StdRng::seed_from_u64(14);
    let mut items = Vec::new();
    while items.len() < 50 {
        let n = rng.gen_range(1..=12);
        let g = random_graph(&mut rng, n, 0.3);
        if let Some(emb) = planar_embedding(&g) {
            items.push((g, emb));
        }
    }
    let refs: Vec<_> = items.iter().map(|(g, e)| (g, e)).collect();
    let back = planar_code::read(&planar_code::write(&refs)).unwrap();
    assert_eq!(back.len(), items.len());
    for ((g, e), (h, f)) in items.iter().zip(&back) {
        assert_eq!(g, h);
        assert_eq!(e, f);
    }
}

#[test]
fn detection_agrees_on_dense_random_graphs() {
    let mut rng = StdRng::seed_from_u64(15);
    for _ in 0..400 {
        let n = rng.gen_range(6..=12);
        let g = {
            let d = rng.gen_range(0.2..0.5);
            random_graph(&mut rng, n, d)
        };
        for p in [(1, 1), (2, 2), (2, 3), (3, 3), (3, 4), (4, 4)] {
            let p = PatternSpec::new(p.0, p.1).unwrap();
            assert_eq!(
                planar_turan_core::contains_double_star(&g, p),
                brute_force_contains(&g, p).unwrap(),
                "{} {p}",
                graph6::encode(&g)
            );
        }
    }
}

/// Maximum over all unlabeled graphs, filtered by the brute-force oracles.
fn naive_planar_turan(n: usize, p: PatternSpec) -> usize {
    all_unlabeled(n)
        .iter()
        .filter(|g| brute_force_is_planar(g).unwrap() && !brute_force_contains(g, p).unwrap())
        .map(Graph::size)
        .max()
        .unwrap()
}

#[test]
fn turan_values_agree_with_naive_maximum() {
    let opts = TuranOptions {
        workers: 1,
        ..TuranOptions::default()
    };
    for n in 1..=7 {
        for m in 1..=3 {
            let p = PatternSpec::balanced(m).unwrap();
            let got = compute_planar_turan_with(n, p, &opts).unwrap().value;
            assert_eq!(got, naive_planar_turan(n, p), "n={n} {p}");
        }
        let p = PatternSpec::new(1, 2).unwrap();
        assert_eq!(
            compute_planar_turan_with(n, p, &opts).unwrap().value,
            naive_planar_turan(n, p)
        );
    }
}

#[test]
fn turan_value_is_monotone_in_n() {
    let opts = TuranOptions::default();
    for m in 1..=3 {
        let p = PatternSpec::balanced(m).unwrap();
        let values: Vec<usize> = (1..=9)
            .map(|n| compute_planar_turan_with(n, p, &opts).unwrap().value)
            .collect();
        assert!(values.windows(2).all(|w| w[0] <= w[1]), "{p}: {values:?}");
    }
}
