use std::fmt;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use anyhow::Result;
use serde::Serialize;
use serde_json::{json, Value};

use planar_turan_core::enumerate::write_graph6;
use planar_turan_core::extremal::search_extremal_with_budget;
use planar_turan_core::formats::{dot::to_dot, graph6};
use planar_turan_core::planarity::kuratowski_witness;
use planar_turan_core::starblock::{RefineOutcome, RefineStatus};
use planar_turan_core::turan::{
    compute_planar_turan_with, verify_corpus_lemmas_with, verify_theorem_with, TuranOptions,
};
use planar_turan_core::{
    audit as weight_audit, build_base, construct as build_recipe, degree_class_report,
    detect_double_star, enumerate_parallel, is_planar, refine_until_bounded, ConstructionRecipe,
    EnumConstraints, Error, Graph, PatternSpec, WeightAudit,
};

use crate::input::read_graphs;
use crate::{
    CliConfig, Format, EXIT_GUARD, EXIT_MISMATCH, EXIT_NON_PLANAR, EXIT_PATTERN, EXIT_USAGE,
};

/// Malformed request detected after argument parsing.
#[derive(Debug)]
pub struct Usage(pub String);

impl fmt::Display for Usage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

pub fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::Guard { .. }) => EXIT_GUARD,
        Some(Error::NotS33Free(_)) => EXIT_PATTERN,
        Some(Error::NotPlanar) => EXIT_NON_PLANAR,
        _ => EXIT_USAGE,
    }
}

fn format_or(cfg: &CliConfig, default: Format, allowed: &[Format], cmd: &str) -> Result<Format> {
    let f = cfg.format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        let names: Vec<String> = allowed
            .iter()
            .map(|a| format!("{a:?}").to_lowercase())
            .collect();
        Err(Usage(format!(
            "{cmd} supports --format {}, got {}",
            names.join("|"),
            format!("{f:?}").to_lowercase()
        ))
        .into())
    }
}

fn opts(cfg: &CliConfig) -> TuranOptions {
    TuranOptions {
        workers: cfg.workers(),
        allow_large: cfg.unsafe_large,
        ..TuranOptions::default()
    }
}

fn print_json(value: &impl Serialize) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn graph_json(g: &Graph) -> Value {
    json!({ "vertices": g.order(), "edges": g.size(), "graph6": graph6::encode(g) })
}

pub fn compute(cfg: &CliConfig, n: usize, p: PatternSpec, witness_cap: usize) -> Result<u8> {
    use Format::*;
    let f = format_or(cfg, Table, &[Table, Json, Graph6, Dot], "compute")?;
    let r = compute_planar_turan_with(
        n,
        p,
        &TuranOptions {
            witness_cap,
            ..opts(cfg)
        },
    )?;
    match f {
        Table => {
            println!("n         {}", r.n);
            println!("pattern   {p}");
            println!("value     {}", r.value);
            println!(
                "extremal  {} (listed {})",
                r.witness_count,
                r.witnesses.len()
            );
            println!("visited   {}", r.stats.visited);
            if cfg.timing {
                println!("elapsed   {} ms", r.elapsed_ms);
            }
        }
        Json => {
            let mut v = serde_json::to_value(&r)?;
            if !cfg.timing {
                v.as_object_mut()
                    .expect("result is an object")
                    .remove("elapsed_ms");
            }
            print_json(&v)?;
        }
        Graph6 => r.witnesses.iter().for_each(|w| println!("{w}")),
        Dot => {
            for (i, g) in r.witness_graphs()?.iter().enumerate() {
                print!("{}", to_dot(g, &format!("extremal_{i}")));
            }
        }
    }
    Ok(0)
}

pub fn verify(cfg: &CliConfig, n_max: usize) -> Result<u8> {
    let f = format_or(cfg, Format::Table, &[Format::Table, Format::Json], "verify")?;
    let rows = verify_theorem_with(n_max, &opts(cfg))?;
    let pass = rows.iter().all(|r| r.matches != Some(false));
    match f {
        Format::Json => print_json(&json!({ "n_max": n_max, "rows": rows, "pass": pass }))?,
        _ => {
            println!(
                "{:>3} {:>2} {:>9} {:>10}  status",
                "n", "m", "computed", "predicted"
            );
            for r in &rows {
                let status = match r.matches {
                    Some(true) => "match",
                    Some(false) => "MISMATCH",
                    None => "n/a",
                };
                println!(
                    "{:>3} {:>2} {:>9} {:>10}  {status}",
                    r.n, r.m, r.computed, r.predicted
                );
            }
            println!(
                "{}",
                if pass {
                    "all applicable rows match"
                } else {
                    "mismatch"
                }
            );
        }
    }
    Ok(if pass { 0 } else { EXIT_MISMATCH })
}

pub fn verify_corpus(cfg: &CliConfig, n_max: usize) -> Result<u8> {
    let f = format_or(
        cfg,
        Format::Table,
        &[Format::Table, Format::Json],
        "verify --corpus",
    )?;
    let o = opts(cfg);
    let reports = (1..=n_max)
        .map(|n| verify_corpus_lemmas_with(n, &o))
        .collect::<planar_turan_core::Result<Vec<_>>>()?;
    let pass = reports.iter().all(|r| r.lemmas_pass() && r.remark_pass());
    match f {
        Format::Json => print_json(&json!({ "n_max": n_max, "reports": reports, "pass": pass }))?,
        _ => {
            println!(
                "{:>2} {:>7} {:>5} {:>7} {:>6} {:>6} {:>6} {:>6}",
                "n", "graphs", "base", "refine", "ident", "multi", "remark", "rounds"
            );
            for r in &reports {
                println!(
                    "{:>2} {:>7} {:>5} {:>7} {:>6} {:>6} {:>6} {:>6}",
                    r.n,
                    r.graphs,
                    r.base.failed,
                    r.refinement.failed,
                    r.identities.failed,
                    r.multi_block.failed,
                    r.remark.failed,
                    r.max_rounds_used
                );
            }
            println!("columns base..remark count failures");
            for fail in reports.iter().flat_map(|r| &r.failures) {
                println!("failed {}  {}", fail.check, fail.graph6);
            }
        }
    }
    Ok(if pass { 0 } else { EXIT_MISMATCH })
}

fn emit_graph(f: Format, g: &Graph, label: &str, pattern: PatternSpec) -> Result<()> {
    match f {
        Format::Graph6 => println!("{}", graph6::encode(g)),
        Format::Dot => print!("{}", to_dot(g, &label.replace(['-', '(', ')'], "_"))),
        Format::Json => {
            let mut v = graph_json(g);
            v["name"] = json!(label);
            v["free_of"] = json!(pattern.to_string());
            print_json(&v)?;
        }
        Format::Table => {
            println!("name      {label}");
            println!("vertices  {}", g.order());
            println!("edges     {}", g.size());
            println!("free of   {pattern}");
            println!("graph6    {}", graph6::encode(g));
        }
    }
    Ok(())
}

pub fn construct(cfg: &CliConfig, r: ConstructionRecipe) -> Result<u8> {
    let f = cfg.format.unwrap_or(Format::Graph6);
    let g = build_recipe(r)?;
    emit_graph(f, &g, &r.to_string(), r.target_pattern())?;
    Ok(0)
}

pub fn search(cfg: &CliConfig, n: usize, p: PatternSpec, edges: usize, budget: u64) -> Result<u8> {
    let f = cfg.format.unwrap_or(Format::Graph6);
    match search_extremal_with_budget(n, p, edges, budget)? {
        Some(g) => emit_graph(f, &g, &format!("search_{n}_{edges}"), p)?,
        None if f == Format::Json => print_json(&json!({ "found": false }))?,
        None if f == Format::Table => println!("not found"),
        None => {}
    }
    Ok(0)
}

#[derive(Serialize)]
struct RefineSummary {
    rounds: usize,
    relaxed_steps: usize,
    status: RefineStatus,
}

#[derive(Serialize)]
#[serde(tag = "result", rename_all = "kebab-case")]
enum Certificate {
    NonPlanar {
        graph6: String,
        kuratowski: planar_turan_core::KuratowskiWitness,
    },
    ContainsS33 {
        graph6: String,
        witness: planar_turan_core::DoubleStarWitness,
    },
    BaseFailed {
        graph6: String,
        error: String,
    },
    Decomposed {
        graph6: String,
        vertices: usize,
        edges: usize,
        base: Box<planar_turan_core::StarBlockBase>,
        refinement: RefineSummary,
        audit: Box<WeightAudit>,
        pass: bool,
    },
}

impl Certificate {
    fn exit_code(&self) -> u8 {
        match self {
            Certificate::NonPlanar { .. } => EXIT_NON_PLANAR,
            Certificate::ContainsS33 { .. } => EXIT_PATTERN,
            Certificate::BaseFailed { .. } => EXIT_MISMATCH,
            Certificate::Decomposed { pass, .. } => {
                if *pass {
                    0
                } else {
                    EXIT_MISMATCH
                }
            }
        }
    }
}

fn decompose_one(g: &Graph, max_rounds: usize) -> Result<Certificate> {
    let graph6 = graph6::encode(g);
    if !is_planar(g) {
        let kuratowski = kuratowski_witness(g).expect("non-planar graph has a witness");
        return Ok(Certificate::NonPlanar { graph6, kuratowski });
    }
    if let Some(witness) = detect_double_star(g, PatternSpec::s33()) {
        return Ok(Certificate::ContainsS33 { graph6, witness });
    }
    let base = match build_base(g) {
        Ok(b) => b,
        Err(e) => {
            return Ok(Certificate::BaseFailed {
                graph6,
                error: e.to_string(),
            })
        }
    };
    let RefineOutcome {
        base,
        rounds,
        relaxed_steps,
        status,
        ..
    } = refine_until_bounded(g, &base, max_rounds)?;
    let audit = weight_audit(g, &base);
    let pass = audit.pass && status == RefineStatus::Resolved;
    Ok(Certificate::Decomposed {
        graph6,
        vertices: g.order(),
        edges: g.size(),
        base: Box::new(base),
        refinement: RefineSummary {
            rounds,
            relaxed_steps,
            status,
        },
        audit: Box::new(audit),
        pass,
    })
}

fn print_certificate_table(c: &Certificate) {
    match c {
        Certificate::NonPlanar { graph6, kuratowski } => {
            println!(
                "{graph6}: not planar, {:?} subdivision on {:?}",
                kuratowski.kind, kuratowski.branch_vertices
            );
        }
        Certificate::ContainsS33 { graph6, witness } => {
            println!("{graph6}: contains S(3,3), {witness}");
        }
        Certificate::BaseFailed { graph6, error } => println!("{graph6}: {error}"),
        Certificate::Decomposed {
            graph6,
            vertices,
            edges,
            refinement,
            audit,
            pass,
            ..
        } => {
            println!(
                "{graph6}: {vertices} vertices, {edges} edges, {} blocks, {} rounds, {}",
                audit.blocks.len(),
                refinement.rounds,
                if *pass { "pass" } else { "FAIL" }
            );
            for (i, b) in audit.blocks.iter().enumerate() {
                let bound = b.bound.map_or("-".to_owned(), |q| q.to_string());
                println!(
                    "  block {i}  {:?}  |B|={}  w0={}  w={}  class {:?}  bound {bound}  {}",
                    b.kind,
                    b.vertices.len(),
                    b.w0,
                    b.w,
                    b.class,
                    if b.pass { "pass" } else { "FAIL" }
                );
            }
        }
    }
}

/// Exit code is the largest one produced by any input graph.
pub fn decompose(cfg: &CliConfig, input: Option<&Path>, max_rounds: usize) -> Result<u8> {
    let f = format_or(
        cfg,
        Format::Json,
        &[Format::Json, Format::Table],
        "decompose",
    )?;
    let mut code = 0;
    for g in read_graphs(input)? {
        let c = decompose_one(&g, max_rounds)?;
        code = code.max(c.exit_code());
        match f {
            Format::Json => print_json(&c)?,
            _ => print_certificate_table(&c),
        }
    }
    Ok(code)
}

pub fn detect(cfg: &CliConfig, p: PatternSpec, input: Option<&Path>) -> Result<u8> {
    let f = format_or(
        cfg,
        Format::Table,
        &[Format::Table, Format::Json, Format::Dot],
        "detect",
    )?;
    let mut code = 0;
    for (i, g) in read_graphs(input)?.iter().enumerate() {
        let w = detect_double_star(g, p);
        if w.is_some() {
            code = EXIT_PATTERN;
        }
        match (f, &w) {
            (Format::Json, _) => {
                print_json(&json!({ "graph6": graph6::encode(g), "pattern": p, "witness": w }))?
            }
            (Format::Dot, Some(w)) => {
                let mut edges = vec![(w.x, w.y)];
                edges.extend(w.x_arms.iter().map(|a| (w.x, a)));
                edges.extend(w.y_arms.iter().map(|b| (w.y, b)));
                print!(
                    "{}",
                    to_dot(
                        &Graph::from_edges(g.order(), &edges)?,
                        &format!("witness_{i}")
                    )
                );
            }
            (Format::Dot, None) => {}
            (_, Some(w)) => println!("found {p}: {w}"),
            (_, None) => println!("not found"),
        }
    }
    Ok(code)
}

pub fn enumerate(cfg: &CliConfig, c: &EnumConstraints) -> Result<u8> {
    let f = format_or(
        cfg,
        Format::Graph6,
        &[Format::Graph6, Format::Json, Format::Table],
        "enumerate",
    )?;
    c.validate()?;
    if f == Format::Graph6 {
        // Serial, so the stream order does not depend on the worker count.
        let mut out = BufWriter::new(io::stdout().lock());
        write_graph6(c, &mut out)?;
        out.flush()?;
        return Ok(0);
    }
    let (stats, ()) = enumerate_parallel(c, cfg.workers(), || (), |_, _| {}, |_, _| ())?;
    if f == Format::Json {
        print_json(&json!({ "constraints": c, "stats": stats }))?;
    } else {
        println!("graphs             {}", stats.emitted);
        println!("visited            {}", stats.visited);
        println!("pruned planarity   {}", stats.pruned_planarity);
        println!("pruned pattern     {}", stats.pruned_pattern);
        println!("pruned edges       {}", stats.pruned_edges);
    }
    Ok(0)
}

/// Exit 5 when an applicable degree-class inequality fails.
pub fn audit(cfg: &CliConfig, input: Option<&Path>) -> Result<u8> {
    let f = format_or(cfg, Format::Json, &[Format::Json, Format::Table], "audit")?;
    let mut code = 0;
    for g in read_graphs(input)? {
        let r = degree_class_report(&g)?;
        if !r.pass {
            code = EXIT_MISMATCH;
        }
        match f {
            Format::Json => {
                let mut v = serde_json::to_value(&r)?;
                v["graph6"] = json!(graph6::encode(&g));
                print_json(&v)?;
            }
            _ => println!(
                "{}: preconditions {}, m3={} m4={} m5={} m6={} x={} e={} {}",
                graph6::encode(&g),
                if r.preconditions_met {
                    "met"
                } else {
                    "not met"
                },
                r.m3,
                r.m4,
                r.m5,
                r.m6,
                r.x,
                r.edges,
                if r.pass { "pass" } else { "FAIL" }
            ),
        }
    }
    Ok(code)
}
