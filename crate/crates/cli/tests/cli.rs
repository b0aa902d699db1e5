use std::io::Write;
use std::process::{Command, Output, Stdio};

use planar_turan_core::formats::graph6;
use planar_turan_core::{Graph, PatternSpec};
use serde_json::Value;

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_planar-turan"))
        .args(args)
        .env_remove("TURAN_WORKERS")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary starts");
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is one JSON document")
}

#[test]
fn compute_eight_vertices() {
    let o = run(
        &["compute", "-n", "8", "-p", "3,3", "--format", "json"],
        None,
    );
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["value"], 16);
    assert_eq!(v["n"], 8);
    assert!(v.get("elapsed_ms").is_none());
    for w in v["witnesses"].as_array().unwrap() {
        assert_eq!(graph6::decode(w.as_str().unwrap()).unwrap().size(), 16);
    }
}

#[test]
fn compute_triangle() {
    let o = run(&["compute", "-n", "3", "-p", "3,3"], None);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o)
        .lines()
        .any(|l| l.split_whitespace().eq(["value", "3"])));
}

#[test]
fn compute_guard() {
    let o = run(&["compute", "-n", "11", "-p", "3,3"], None);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("limit of 10"));
    assert!(o.stdout.is_empty());
}

#[test]
fn malformed_flags_exit_one() {
    for args in [
        &["compute", "-n", "eight"][..],
        &["compute", "-n", "8", "-p", "3"],
        &["compute", "-n", "8", "-p", "0,3"],
        &["compute", "-n", "8", "--format", "xml"],
        &["compute"],
        &["frobnicate"],
        &["--workers", "0", "compute", "-n", "4"],
        &["verify", "--format", "graph6"],
        &["construct", "glued-stars"],
        &["construct", "glued-stars", "-n", "9"],
        &["construct", "no-such-recipe"],
    ] {
        assert_eq!(code(&run(args, None)), 1, "{args:?}");
    }
}

#[test]
fn help_exits_zero() {
    assert_eq!(code(&run(&["--help"], None)), 0);
}

#[test]
fn garbage_input_exits_one() {
    assert_eq!(code(&run(&["decompose"], Some("not graph6 at all\n"))), 1);
    assert_eq!(code(&run(&["decompose"], Some(""))), 1);
}

#[test]
fn construct_glued_stars_twelve() {
    let o = run(
        &["construct", "glued-stars", "-n", "12", "--format", "graph6"],
        None,
    );
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 1);
    let g = graph6::decode(text.trim()).unwrap();
    assert_eq!((g.order(), g.size()), (12, 25));
}

#[test]
fn construct_accepts_parenthesised_order() {
    let a = run(&["construct", "double-wheel(9)"], None);
    let b = run(&["construct", "double-wheel", "-n", "9"], None);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

fn recipes() -> Vec<String> {
    let mut out: Vec<String> = [
        "four-regular-8",
        "four-regular-9",
        "component-66",
        "component-65",
    ]
    .map(String::from)
    .to_vec();
    out.extend((10..=14).map(|n| format!("glued-stars({n})")));
    out.extend((1..=12).map(|n| format!("triangle-forest({n})")));
    out.extend((5..=9).map(|n| format!("double-wheel({n})")));
    out.extend((1..=7).map(|n| format!("maximal-planar({n})")));
    out
}

/// Every construction decomposes. Double wheels on 8 or more vertices are
/// only `S(4,4)`-free, so they are reported with an `S(3,3)` witness.
#[test]
fn construct_pipes_into_decompose() {
    for r in recipes() {
        let g6 = stdout(&run(&["construct", &r, "--format", "graph6"], None));
        let o = run(&["decompose"], Some(&g6));
        let v = json(&o);
        let g = graph6::decode(g6.trim()).unwrap();
        if r.starts_with("double-wheel") && g.order() >= 8 {
            assert_eq!(code(&o), 3, "{r}");
            assert_eq!(v["result"], "contains-s33", "{r}");
        } else {
            assert_eq!(code(&o), 0, "{r}: {}", String::from_utf8_lossy(&o.stderr));
            assert_eq!(v["result"], "decomposed", "{r}");
            assert_eq!(v["pass"], true, "{r}");
            assert_eq!(v["edges"], g.size(), "{r}");
        }
    }
}

#[test]
fn component_certificate() {
    let g6 = stdout(&run(&["construct", "component-66"], None));
    let v = json(&run(&["decompose"], Some(&g6)));
    let blocks = v["audit"]["blocks"].as_array().unwrap();
    assert_eq!(blocks.len(), 1);
    assert_eq!(blocks[0]["kind"], "Edge66");
    assert_eq!(blocks[0]["class"], "B0");
    assert_eq!(blocks[0]["w"], blocks[0]["bound"]);
    assert_eq!(blocks[0]["pass"], true);
}

#[test]
fn decompose_rejects_k5() {
    let k5 = graph6::encode(&Graph::complete(5).unwrap());
    let o = run(&["decompose"], Some(&k5));
    assert_eq!(code(&o), 4);
    assert_eq!(json(&o)["kuratowski"]["kind"], "K5");
}

#[test]
fn decompose_reports_double_star_witness() {
    let s33 = graph6::encode(&PatternSpec::s33().to_graph().unwrap());
    let o = run(&["decompose"], Some(&s33));
    assert_eq!(code(&o), 3);
    let w = &json(&o)["witness"];
    assert!(w["x"].is_u64() && w["y"].is_u64());
}

#[test]
fn decompose_reads_files() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    let g6 = stdout(&run(&["construct", "glued-stars", "-n", "11"], None));
    writeln!(f, "{}", g6.trim()).unwrap();
    writeln!(f, "{}", graph6::encode(&Graph::complete(5).unwrap())).unwrap();
    let o = run(
        &["decompose", f.path().to_str().unwrap(), "--format", "table"],
        None,
    );
    assert_eq!(code(&o), 4);
    assert_eq!(
        stdout(&o).lines().filter(|l| !l.starts_with(' ')).count(),
        2
    );
}

#[test]
fn double_wheel_has_no_s44() {
    let g6 = stdout(&run(&["construct", "double-wheel", "-n", "20"], None));
    let o = run(&["detect", "-p", "4,4"], Some(&g6));
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "not found");

    let o = run(&["detect", "-p", "3,3", "--format", "json"], Some(&g6));
    assert_eq!(code(&o), 3);
    assert!(json(&o)["witness"].is_object());
}

#[test]
fn detect_emits_witness_dot() {
    let g6 = graph6::encode(&PatternSpec::s33().to_graph().unwrap());
    let o = run(&["detect", "-p", "3,3", "--format", "dot"], Some(&g6));
    assert_eq!(code(&o), 3);
    assert_eq!(stdout(&o).matches(" -- ").count(), 7);
}

#[test]
fn verify_small_table() {
    let o = run(&["verify", "--n-max", "7", "--format", "json"], None);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["pass"], true);
    assert_eq!(v["rows"].as_array().unwrap().len(), 5 * 4);
}

#[test]
fn verify_corpus_small() {
    let o = run(
        &["verify", "--corpus", "--n-max", "6", "--format", "json"],
        None,
    );
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["reports"].as_array().unwrap().len(), 6);
}

#[test]
fn enumerate_stream_and_stats() {
    let o = run(&["enumerate", "-n", "7", "--planar"], None);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().count(), 822);
    let o = run(&["enumerate", "-n", "7", "--planar", "--connected"], None);
    assert_eq!(stdout(&o).lines().count(), 646);

    let o = run(&["enumerate", "-n", "7", "--format", "json"], None);
    assert_eq!(json(&o)["stats"]["emitted"], 1044);

    let o = run(
        &[
            "enumerate",
            "-n",
            "5",
            "--min-edges",
            "9",
            "--max-edges",
            "11",
        ],
        None,
    );
    assert_eq!(code(&o), 1);
}

#[test]
fn audit_four_regular_nine() {
    let g6 = stdout(&run(&["construct", "four-regular-9"], None));
    let o = run(&["audit"], Some(&g6));
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["m4"], 9);
    assert_eq!(v["branch"], "NoHigh");
}

#[test]
fn search_finds_sporadic_graph() {
    let o = run(&["search", "-n", "13", "-e", "27"], None);
    assert_eq!(code(&o), 0);
    let g = graph6::decode(stdout(&o).trim()).unwrap();
    assert_eq!((g.order(), g.size()), (13, 27));
}

/// Output depends on neither the run nor the worker count.
#[test]
fn output_is_deterministic() {
    for args in [
        &["compute", "-n", "8", "-p", "3,3", "--format", "json"][..],
        &["compute", "-n", "7", "-p", "2,2", "--format", "graph6"],
        &[
            "enumerate",
            "-n",
            "7",
            "--planar",
            "--forbid",
            "3,3",
            "--format",
            "json",
        ],
        &["enumerate", "-n", "6"],
        &["verify", "--n-max", "6", "--format", "json"],
    ] {
        let reference = run(&[args, &["--workers", "1"]].concat(), None);
        assert_eq!(code(&reference), 0);
        for workers in ["1", "3", "8"] {
            let o = run(&[args, &["--workers", workers]].concat(), None);
            assert_eq!(o.stdout, reference.stdout, "{args:?} workers={workers}");
        }
    }
}

#[test]
fn workers_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_planar-turan"))
        .args(["compute", "-n", "6", "--format", "json"])
        .env("TURAN_WORKERS", "2")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["value"], 12);

    let o = Command::new(env!("CARGO_BIN_EXE_planar-turan"))
        .args(["compute", "-n", "6"])
        .env("TURAN_WORKERS", "none")
        .output()
        .unwrap();
    assert_eq!(code(&o), 1);
}
