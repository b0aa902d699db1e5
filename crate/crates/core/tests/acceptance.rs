//! Acceptance gate. Prints one line per criterion and exits non-zero when a
//! criterion fails unexpectedly.
//!
//! Criterion 7 has a pinned known failure: the degree-5 neighbourhood
//! property does not hold on six graphs. The line reports FAIL; the process
//! only fails if the set of counterexamples changes or another check breaks.

use std::collections::{BTreeSet, HashSet};
use std::io::Write;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use planar_turan_core::enumerate::EnumConstraints;
use planar_turan_core::extremal::ConstructionRecipe::{DoubleWheel, GluedStars};
use planar_turan_core::formats::graph6;
use planar_turan_core::oracle::{
    brute_force_canonical, brute_force_contains, unlabeled_graph_count,
};
use planar_turan_core::turan::{verify_corpus_lemmas_with, TuranOptions};
use planar_turan_core::{
    canonical_form, compute_planar_turan, construct, detect_double_star, enumerate_graphs,
    enumerate_parallel, is_planar, search_extremal, Graph, GraphBuilder, PatternSpec,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Every numeric comparison in this gate is exact.
const VALUE_TOLERANCE: usize = 0;
const RANDOM_SEED: u64 = 0x5eed_0033;
const RANDOM_GRAPHS: usize = 1000;
const PARALLEL_WORKERS: usize = 4;

const BUDGET_TABLE_TO_8: Duration = Duration::from_secs(60);
const BUDGET_TABLE_9: Duration = Duration::from_secs(15 * 60);
const BUDGET_CORPUS: Duration = Duration::from_secs(30 * 60);

/// Graphs meeting every degree-class precondition that have a degree-5
/// vertex with fewer than two neighbours of degree at most 3.
const KNOWN_FIVE_VERTEX_COUNTEREXAMPLES: [&str; 6] =
    ["FJvdw", "FTX}w", "FLr~o", "FJn^W", "GI}TJk", "HHQu[px"];

#[allow(clippy::absurd_extreme_comparisons)]
fn within(got: usize, want: usize) -> bool {
    got.abs_diff(want) <= VALUE_TOLERANCE
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn s(m: usize, l: usize) -> PatternSpec {
    PatternSpec::new(m, l).unwrap()
}

fn criterion_1() -> Outcome {
    let want = [
        (3, 3),
        (4, 6),
        (5, 9),
        (6, 12),
        (7, 15),
        (8, 16),
        (9, 18),
        (10, 20),
    ];
    let mut bad = Vec::new();
    let mut slow = Vec::new();
    let start = Instant::now();
    for (n, v) in want {
        let t = Instant::now();
        let got = compute_planar_turan(n, PatternSpec::s33()).unwrap().value;
        if !within(got, v) {
            bad.push(format!("n={n}: {got} != {v}"));
        }
        if n == 9 && t.elapsed() > BUDGET_TABLE_9 {
            slow.push("n=9");
        }
        if n == 8 && start.elapsed() > BUDGET_TABLE_TO_8 {
            slow.push("n<=8");
        }
    }
    outcome(
        bad.is_empty() && slow.is_empty(),
        format!("S(3,3) values n=3..10 {bad:?} over budget {slow:?}"),
    )
}

fn criterion_2() -> Outcome {
    let mut bad = Vec::new();
    for n in [3, 4, 5, 6, 7, 8, 9] {
        let want = if n % 3 == 0 { n } else { n - 1 };
        let got = compute_planar_turan(n, s(1, 1)).unwrap().value;
        if !within(got, want) {
            bad.push(format!("n={n}: {got} != {want}"));
        }
    }
    outcome(bad.is_empty(), format!("S(1,1) values n=3..9 {bad:?}"))
}

fn criterion_3() -> Outcome {
    let mut bad = Vec::new();
    for n in 10..=60 {
        let g = construct(GluedStars(n)).unwrap();
        if !(is_planar(&g)
            && detect_double_star(&g, s(3, 3)).is_none()
            && within(g.size(), 5 * n / 2 - 5))
        {
            bad.push(format!("glued-stars({n})"));
        }
    }
    for n in 8..=50 {
        let g = construct(DoubleWheel(n)).unwrap();
        let ok = is_planar(&g)
            && detect_double_star(&g, s(4, 4)).is_none()
            && within(g.size(), 3 * n - 6)
            && detect_double_star(&g, s(3, 3)).is_some();
        if !ok {
            bad.push(format!("double-wheel({n})"));
        }
    }
    outcome(
        bad.is_empty(),
        format!("glued-stars 10..=60, double-wheel 8..=50 {bad:?}"),
    )
}

fn verified(g: &Option<Graph>, n: usize, e: usize) -> bool {
    g.as_ref().is_some_and(|g| {
        g.order() == n
            && within(g.size(), e)
            && is_planar(g)
            && detect_double_star(g, s(3, 3)).is_none()
    })
}

fn criterion_4() -> Outcome {
    let g13 = search_extremal(13, s(3, 3), 27).unwrap();
    let g14 = search_extremal(14, s(3, 3), 30).unwrap();
    let ex8 = compute_planar_turan(8, s(3, 3)).unwrap().value;
    let none17 = search_extremal(8, s(3, 3), 17).unwrap().is_none();
    let found = |g: &Option<Graph>| g.as_ref().map_or("none".to_owned(), graph6::encode);
    outcome(
        verified(&g13, 13, 27) && verified(&g14, 14, 30) && ex8 < 17 && none17,
        format!("13/27 {} 14/30 {} ex(8) = {ex8}", found(&g13), found(&g14)),
    )
}

fn serial() -> TuranOptions {
    TuranOptions {
        workers: 1,
        ..TuranOptions::default()
    }
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let mut graphs = 0;
    let mut bad = Vec::new();
    let mut refined = 0;
    let mut relaxed = 0;
    for n in 1..=9 {
        let r = verify_corpus_lemmas_with(n, &TuranOptions::default()).unwrap();
        graphs += r.graphs;
        refined = refined.max(r.max_rounds_used);
        relaxed += r.relaxed_steps;
        if !r.lemmas_pass() {
            bad.extend(
                r.failures
                    .into_iter()
                    .filter(|f| f.check != "remark")
                    .map(|f| f.graph6),
            );
        }
    }
    let slow = start.elapsed() > BUDGET_CORPUS;
    outcome(
        bad.is_empty() && !slow,
        format!("{graphs} graphs, at most {refined} refinement rounds ({relaxed} fallback steps), failures {bad:?}"),
    )
}

fn all_labeled(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        let mut b = GraphBuilder::new(n).unwrap();
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                b.add_edge(i, j).unwrap();
            }
        }
        b.build()
    })
}

fn detect_agrees(g: &Graph, p: PatternSpec) -> bool {
    let fast = detect_double_star(g, p);
    let slow = brute_force_contains(g, p).unwrap();
    fast.is_some() == slow && fast.is_none_or(|w| w.is_valid(g, p))
}

fn criterion_6() -> Outcome {
    let mut bad = Vec::new();

    let patterns: Vec<PatternSpec> = (1..=5)
        .flat_map(|m| (m..=6 - m).map(move |l| s(m, l)))
        .collect();
    for n in 1..=6 {
        for g in all_labeled(n) {
            for &p in &patterns {
                if !detect_agrees(&g, p) {
                    bad.push(format!("detect {} {p}", graph6::encode(&g)));
                }
            }
        }
    }
    let mut rng = StdRng::seed_from_u64(RANDOM_SEED);
    for _ in 0..RANDOM_GRAPHS {
        let n = rng.gen_range(1..=12);
        let density = rng.gen_range(0.1..0.7);
        let mut b = GraphBuilder::new(n).unwrap();
        for j in 0..n {
            for i in 0..j {
                if rng.gen_bool(density) {
                    b.add_edge(i, j).unwrap();
                }
            }
        }
        let g = b.build();
        let m = rng.gen_range(1..=4);
        let p = s(m, rng.gen_range(m..=4));
        if !detect_agrees(&g, p) {
            bad.push(format!("detect {} {p}", graph6::encode(&g)));
        }
    }

    let want = [1u64, 2, 4, 11, 34, 156, 1044];
    for n in 1..=7 {
        let emitted = enumerate_graphs(&EnumConstraints::all(n), |_| {})
            .unwrap()
            .emitted;
        let labeled = if n <= 6 {
            all_labeled(n)
                .map(|g| brute_force_canonical(&g).unwrap())
                .collect::<HashSet<_>>()
                .len()
        } else {
            all_labeled(n)
                .map(|g| canonical_form(&g))
                .collect::<HashSet<_>>()
                .len()
        } as u64;
        let burnside = unlabeled_graph_count(n) as u64;
        if !(emitted == want[n - 1] && labeled == emitted && burnside == emitted) {
            bad.push(format!("count n={n}: {emitted} / {labeled} / {burnside}"));
        }
    }

    for n in 1..=7 {
        for c in [
            EnumConstraints::all(n),
            EnumConstraints::all(n).planar().forbidding(s(3, 3)),
            EnumConstraints::all(n)
                .planar()
                .edges(n - 1, (2 * n).min(n * (n - 1) / 2)),
        ] {
            let mut serial = Vec::new();
            let st = enumerate_graphs(&c, |g| serial.push(graph6::encode(g))).unwrap();
            let (pt, parallel) = enumerate_parallel(
                &c,
                PARALLEL_WORKERS,
                Vec::new,
                |v: &mut Vec<String>, g| v.push(graph6::encode(g)),
                |mut a, b| {
                    a.extend(b);
                    a
                },
            )
            .unwrap();
            if st.emitted != pt.emitted || serial != parallel {
                bad.push(format!("parallel n={n}"));
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!("detect, counts n=1..7, serial vs parallel {bad:?}"),
    )
}

/// Returns the criterion outcome and whether the result matches the pinned
/// record.
fn criterion_7() -> (Outcome, bool) {
    let mut offenders = BTreeSet::new();
    let mut other = Vec::new();
    let (mut checked, mut five_count_failed) = (0, 0);
    for n in 1..=9 {
        let r = verify_corpus_lemmas_with(n, &serial()).unwrap();
        checked += r.remark.checked;
        five_count_failed += r.remark_five_count.failed;
        for f in r.failures.iter().filter(|f| f.check == "remark") {
            let g = graph6::decode(&f.graph6).unwrap();
            let rep = planar_turan_core::degree_class_report(&g).unwrap();
            let only_five_vertex = rep.five_vertex_property == Some(false)
                && [
                    rep.edge_identity,
                    rep.bipartite_bound,
                    rep.single_high_bound,
                    rep.five_count_bound,
                ]
                .iter()
                .all(|c| c.unwrap_or(true));
            if only_five_vertex {
                offenders.insert(canonical_form(&g));
            } else {
                other.push(f.graph6.clone());
            }
        }
    }
    let pinned: BTreeSet<_> = KNOWN_FIVE_VERTEX_COUNTEREXAMPLES
        .iter()
        .map(|s| canonical_form(&graph6::decode(s).unwrap()))
        .collect();
    let pass = offenders.is_empty() && other.is_empty();
    let as_pinned = offenders == pinned && other.is_empty() && five_count_failed == 0;
    let names: Vec<&str> = offenders.iter().map(|c| c.as_graph6()).collect();
    (
        outcome(
            pass,
            format!(
                "{checked} graphs meet the preconditions; degree-5 property fails on {names:?}; other failures {other:?}"
            ),
        ),
        as_pinned,
    )
}

fn report(out: &mut impl Write, k: usize, o: &Outcome, elapsed: Duration) {
    let tag = if o.pass { "PASS" } else { "FAIL" };
    writeln!(out, "criterion {k}: {tag}  {}  ({:.2?})", o.detail, elapsed).unwrap();
}

fn main() -> ExitCode {
    let mut out = std::io::stdout().lock();
    let checks: [fn() -> Outcome; 6] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
    ];
    let mut unexpected = 0;
    for (i, f) in checks.iter().enumerate() {
        let t = Instant::now();
        let o = f();
        report(&mut out, i + 1, &o, t.elapsed());
        unexpected += !o.pass as usize;
    }
    let t = Instant::now();
    let (o, as_pinned) = criterion_7();
    report(&mut out, 7, &o, t.elapsed());
    if !as_pinned {
        writeln!(
            out,
            "criterion 7: result differs from the pinned counterexample set"
        )
        .unwrap();
        unexpected += 1;
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
