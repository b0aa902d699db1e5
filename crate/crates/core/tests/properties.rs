use proptest::prelude::*;

use planar_turan_core::extremal::ConstructionRecipe::{DoubleWheel, GluedStars, TriangleForest};
use planar_turan_core::formats::graph6;
use planar_turan_core::oracle::brute_force_contains;
use planar_turan_core::starblock::{is_peripheral, RefineStatus};
use planar_turan_core::{
    audit, build_base, canonical_form, construct, contains_double_star, detect_double_star,
    is_planar, primary_weight, refine_until_bounded, Graph, GraphBuilder, PatternSpec,
    QuarterWeight, VertexSet,
};

fn graph(max_n: usize, density: f64) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec(proptest::bool::weighted(density), n * (n - 1) / 2).prop_map(
            move |bits| {
                let mut b = GraphBuilder::new(n).unwrap();
                let mut k = 0;
                for j in 0..n {
                    for i in 0..j {
                        if bits[k] {
                            b.add_edge(i, j).unwrap();
                        }
                        k += 1;
                    }
                }
                b.build()
            },
        )
    })
}

fn pattern() -> impl Strategy<Value = PatternSpec> {
    (1usize..=4, 1usize..=4).prop_map(|(m, l)| PatternSpec::new(m, l).unwrap())
}

fn s33_free_planar(g: &Graph) -> bool {
    is_planar(g) && !contains_double_star(g, PatternSpec::s33())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn graph6_round_trip(g in graph(40, 0.3)) {
        prop_assert_eq!(graph6::decode(&graph6::encode(&g)).unwrap(), g);
    }

    #[test]
    fn canonical_form_ignores_labels(g in graph(14, 0.4), seed in any::<u64>()) {
        let n = g.order();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut x = seed;
        for i in (1..n).rev() {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (x >> 33) as usize % (i + 1));
        }
        let c = canonical_form(&g);
        prop_assert_eq!(&c, &canonical_form(&g.relabel(&perm)));
        prop_assert_eq!(g.relabel(c.labeling()), c.to_graph());
    }

    #[test]
    fn witness_is_a_subgraph(g in graph(12, 0.45), p in pattern()) {
        let w = detect_double_star(&g, p);
        prop_assert_eq!(w.is_some(), brute_force_contains(&g, p).unwrap());
        if let Some(w) = w {
            prop_assert!(w.is_valid(&g, p));
        }
    }

    #[test]
    fn freeness_and_planarity_are_hereditary(g in graph(12, 0.35), pick in any::<prop::sample::Index>()) {
        let edges: Vec<_> = g.edges().collect();
        prop_assume!(!edges.is_empty());
        let (u, v) = edges[pick.index(edges.len())];
        let mut b = GraphBuilder::from_graph(&g);
        b.remove_edge(u, v).unwrap();
        let h = b.build();
        prop_assert!(!is_planar(&g) || is_planar(&h));
        let p = PatternSpec::s33();
        prop_assert!(contains_double_star(&g, p) || !contains_double_star(&h, p));
    }

    #[test]
    fn planar_graphs_respect_euler_bound(g in graph(16, 0.3)) {
        let n = g.order();
        if n >= 3 && is_planar(&g) {
            prop_assert!(g.size() <= 3 * n - 6);
        }
    }

    #[test]
    fn primary_weight_splits_edges(g in graph(16, 0.3), bits in any::<u64>()) {
        let h = VertexSet::from_bits(bits).intersection(g.vertices());
        let rest = g.vertices().difference(h);
        let total = primary_weight(&g, h) + primary_weight(&g, rest);
        prop_assert_eq!(total, QuarterWeight::from_int(g.size() as i64));
    }

    #[test]
    fn quarter_weight_text_round_trip(q in -10_000i64..10_000) {
        let w = QuarterWeight::from_quarters(q);
        prop_assert_eq!(w.to_string().parse::<QuarterWeight>().unwrap(), w);
    }

    #[test]
    fn base_refine_audit_pipeline(g in graph(14, 0.22)) {
        prop_assume!(s33_free_planar(&g));
        let base = build_base(&g).unwrap();
        prop_assert_eq!(base.check_invariants(&g), Ok(()));
        for b in &base.blocks {
            for v in base.shared_vertices().intersection(b.vertices()) {
                prop_assert!(is_peripheral(&g, b.vertices(), v));
            }
        }
        let out = refine_until_bounded(&g, &base, 4).unwrap();
        prop_assert_eq!(out.status, RefineStatus::Resolved);
        let a = audit(&g, &out.base);
        prop_assert!(a.pass, "{}", graph6::encode(&g));
    }

    #[test]
    fn glued_stars_family(n in 10usize..=64) {
        let g = construct(GluedStars(n)).unwrap();
        prop_assert_eq!(g.size(), 5 * n / 2 - 5);
        prop_assert!(s33_free_planar(&g));
    }

    #[test]
    fn double_wheel_family(n in 5usize..=64) {
        let g = construct(DoubleWheel(n)).unwrap();
        prop_assert_eq!(g.size(), 3 * n - 6);
        prop_assert!(!contains_double_star(&g, PatternSpec::balanced(4).unwrap()));
        prop_assert_eq!(contains_double_star(&g, PatternSpec::s33()), n >= 8);
    }

    #[test]
    fn triangle_forest_family(n in 1usize..=64) {
        let g = construct(TriangleForest(n)).unwrap();
        prop_assert_eq!(g.size(), if n % 3 == 0 { n } else { n - 1 });
        prop_assert!(!contains_double_star(&g, PatternSpec::balanced(1).unwrap()));
    }
}
