use std::fmt::Write as _;

use serde_json::{json, Value};

use rootfire_core::ehrhart::{fit_ehrhart_like, perm_ehrhart, FitReport};
use rootfire_core::export::{fit_json, graph_dot, graph_json, graph_svg, points_json};
use rootfire_core::firing::{build_graph, eta, eta_inverse, fiber, stabilize, Policy};
use rootfire_core::polytope::DiscretePermutohedron;
use rootfire_core::{FiringKind, FiringParams, KParam, Limits, RootSystem, Weight};

use crate::resolve::{self, max_positional, require, slot, usage};
use crate::{Cli, CliError, Command, Opts};

pub const UNVERIFIED: &str = "unverified-confluence";

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Info(o) => info(&o, cli.max_points),
        Command::Stabilize(o) => stabilize_cmd(&o, cli.max_points),
        Command::Graph(o) => graph(&o, cli.max_points),
        Command::Fiber(o) => fiber_cmd(&o, cli.max_points),
        Command::Ehrhart(o) => ehrhart(&o, cli.max_points),
        Command::Verify(o) => crate::verify::run(&o, cli.max_points),
    }
}

pub fn emit(opts: &Opts, text: &str) -> Result<(), CliError> {
    match &opts.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values always serialize");
    s.push('\n');
    s
}

struct Setup {
    rs: RootSystem,
    params: FiringParams,
    limits: Limits,
    tags: Vec<&'static str>,
}

/// Reads [SYSTEM] [KIND] [K] from the first three slots.
/// Non-good parameters run with a tag; `strict` commands also need --force.
fn setup(opts: &Opts, cap: Option<usize>, strict: bool) -> Result<Setup, CliError> {
    let rs = resolve::system(&require(slot(opts, 0, &opts.system, "system")?, "system")?)?;
    let kind = resolve::kind(&require(slot(opts, 1, &opts.kind, "kind")?, "kind")?)?;
    let k_text = slot(opts, 2, &opts.k, "k")?;
    let k = resolve::kparam(&rs, k_text.as_deref(), opts.ks, opts.kl)?;
    let k = match (kind, k) {
        (FiringKind::Central, _) => KParam::zero(),
        (_, Some(k)) => k,
        (_, None) => return Err(usage("missing parameter k")),
    };
    let params = FiringParams::new(kind, k);
    let mut tags = Vec::new();
    if !params.is_good(&rs) {
        if strict && !opts.force {
            return Err(usage(format!(
                "k_s=0 with k_l={} is not a good parameter; pass --force to run without confluence guarantees",
                k.long
            )));
        }
        tags.push(UNVERIFIED);
        eprintln!("warning: {UNVERIFIED}: parameter {k} is not good");
    }
    Ok(Setup {
        rs,
        params,
        limits: resolve::limits(cap, opts.force)?,
        tags,
    })
}

fn params_json(p: &FiringParams) -> Value {
    json!({"kind": p.kind, "k_short": p.k.short, "k_long": p.k.long})
}

fn info(opts: &Opts, _cap: Option<usize>) -> Result<(), CliError> {
    max_positional(opts, 1)?;
    let rs = resolve::system(&require(slot(opts, 0, &opts.system, "system")?, "system")?)?;
    let fmt = resolve::format(opts, &["text", "json"], "text")?;
    let c = rs.subgroup_c()?;
    let minuscule: Vec<String> = rs.minuscule.iter().map(|i| format!("w{}", i + 1)).collect();
    let theta = rs.pos_roots[rs.highest_root].expansion();
    let theta_s = rs.pos_roots[rs.highest_short_root].expansion();
    if fmt == "json" {
        let roots: Vec<Value> = rs
            .pos_roots
            .iter()
            .enumerate()
            .map(|(i, r)| {
                json!({
                    "root": r.0,
                    "expansion": r.expansion(),
                    "weight": rs.root_weight(i),
                    "length": rs.length_class[i],
                })
            })
            .collect();
        let v = json!({
            "system": rs.name(),
            "rank": rs.rank(),
            "cartan": rs.cartan,
            "symmetrizer": rs.symmetrizer,
            "positive_roots": roots,
            "coxeter_number": rs.coxeter_number,
            "index_of_connection": rs.index_of_connection,
            "highest_root": theta,
            "highest_short_root": theta_s,
            "minuscule": minuscule,
            "c_order": c.len(),
        });
        return emit(opts, &pretty(&v));
    }
    let mut s = String::new();
    let _ = writeln!(s, "system: {}", rs.name());
    let _ = writeln!(s, "rank: {}", rs.rank());
    s.push_str("cartan matrix:\n");
    for row in &rs.cartan {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
        let _ = writeln!(s, " {}", cells.join(""));
    }
    let _ = writeln!(s, "positive roots: {}", rs.num_pos_roots());
    for (i, r) in rs.pos_roots.iter().enumerate() {
        let len = if rs.is_simply_laced() {
            String::new()
        } else {
            format!("  {:?}", rs.length_class[i]).to_lowercase()
        };
        let _ = writeln!(s, "  {:<14} weight {}{len}", r.expansion(), rs.root_weight(i));
    }
    let _ = writeln!(s, "coxeter number h: {}", rs.coxeter_number);
    let _ = writeln!(s, "index of connection f: {}", rs.index_of_connection);
    let _ = writeln!(s, "highest root: {theta}");
    let _ = writeln!(s, "highest short root: {theta_s}");
    let _ = writeln!(
        s,
        "minuscule: {}",
        if minuscule.is_empty() { "none".to_string() } else { minuscule.join(", ") }
    );
    let _ = writeln!(s, "|C|: {}", c.len());
    emit(opts, &s)
}

fn stabilize_cmd(opts: &Opts, cap: Option<usize>) -> Result<(), CliError> {
    max_positional(opts, 4)?;
    let st = setup(opts, cap, false)?;
    if st.params.kind == FiringKind::Central {
        return Err(usage("central firing is not confluent; explore it with `verify sinks`"));
    }
    let fmt = resolve::format(opts, &["text", "json"], "text")?;
    let lam = resolve::weight(&st.rs, &require(slot(opts, 3, &opts.weight, "weight")?, "weight")?)?;
    let policy = match opts.seed {
        Some(s) => Policy::SeededRandom(s),
        None => Policy::FirstFireable,
    };
    let res = stabilize(&st.rs, &lam, &st.params, policy)?;
    let label = eta_inverse(&st.rs, &res.sink, st.params.k);
    if label.is_none() && st.params.is_good(&st.rs) {
        return Err(CliError::Core(rootfire_core::Error::Invariant(format!(
            "sink {} is not an η image",
            res.sink
        ))));
    }
    if fmt == "json" {
        let v = json!({
            "system": st.rs.name(),
            "params": params_json(&st.params),
            "weight": lam,
            "sink": res.sink,
            "label": label,
            "steps": res.steps,
            "tags": st.tags,
        });
        return emit(opts, &pretty(&v));
    }
    let mut s = String::new();
    let _ = writeln!(s, "sink: {}", res.sink);
    match &label {
        Some(l) => {
            let _ = writeln!(s, "label: {l}");
        }
        None => s.push_str("label: none (sink is not an η image)\n"),
    }
    let _ = writeln!(s, "steps: {}", res.steps);
    for t in &st.tags {
        let _ = writeln!(s, "tag: {t}");
    }
    emit(opts, &s)
}

fn graph(opts: &Opts, cap: Option<usize>) -> Result<(), CliError> {
    max_positional(opts, 3)?;
    let st = setup(opts, cap, false)?;
    let fmt = resolve::format(opts, &["json", "dot", "svg"], "json")?;
    if fmt == "svg" && st.rs.rank() != 2 {
        return Err(usage(format!("svg output needs rank 2, {} has rank {}", st.rs.name(), st.rs.rank())));
    }
    let region = resolve::region(&st.rs, opts, 3)?;
    let g = build_graph(&st.rs, &region, &st.params, &st.limits)?;
    let text = match fmt.as_str() {
        "dot" => graph_dot(&st.rs, &g),
        "svg" => graph_svg(&st.rs, &g)?,
        _ => {
            let mut v = graph_json(&g);
            if !st.tags.is_empty() {
                v["tags"] = json!(st.tags);
            }
            pretty(&v)
        }
    };
    emit(opts, &text)
}

fn fiber_cmd(opts: &Opts, cap: Option<usize>) -> Result<(), CliError> {
    max_positional(opts, 4)?;
    let st = setup(opts, cap, true)?;
    if st.params.kind == FiringKind::Central {
        return Err(usage("fibers are defined for sym and tr only"));
    }
    let fmt = resolve::format(opts, &["text", "json"], "text")?;
    let lam = resolve::weight(&st.rs, &require(slot(opts, 3, &opts.weight, "weight")?, "weight")?)?;
    let points = fiber(&st.rs, &lam, &st.params, &st.limits)?;
    let sink = eta(&st.rs, &lam, st.params.k);
    if fmt == "json" {
        let p = DiscretePermutohedron {
            center: sink.clone(),
            points,
        };
        let mut v = points_json(&st.rs, &p);
        v["label"] = json!(lam);
        v["sink"] = json!(sink);
        v["params"] = params_json(&st.params);
        v["count"] = json!(p.points.len());
        v["tags"] = json!(st.tags);
        return emit(opts, &pretty(&v));
    }
    let mut s = String::new();
    let _ = writeln!(s, "label: {lam}");
    let _ = writeln!(s, "sink: {sink}");
    let _ = writeln!(s, "count: {}", points.len());
    for t in &st.tags {
        let _ = writeln!(s, "tag: {t}");
    }
    for p in &points {
        let _ = writeln!(s, "  {p}");
    }
    emit(opts, &s)
}

fn ehrhart(opts: &Opts, cap: Option<usize>) -> Result<(), CliError> {
    max_positional(opts, 3)?;
    let rs = resolve::system(&require(slot(opts, 0, &opts.system, "system")?, "system")?)?;
    let kind = require(slot(opts, 1, &opts.kind, "kind")?, "kind")?.to_ascii_lowercase();
    let lam = resolve::weight(&rs, &require(slot(opts, 2, &opts.weight, "weight")?, "weight")?)?;
    let fmt = resolve::format(opts, &["text", "json"], "text")?;
    let limits = resolve::limits(cap, false)?;
    let report = match kind.as_str() {
        "perm" => perm_ehrhart(&rs, &lam, opts.degree, &limits)?,
        other => {
            let k = resolve::kind(other)?;
            fit_ehrhart_like(&rs, &lam, k, opts.degree, &limits)?
        }
    };
    if fmt == "json" {
        return emit(opts, &pretty(&fit_json(&report)));
    }
    emit(opts, &fit_text(&report))
}

pub fn fit_text(r: &FitReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{} {} λ={}: {}", r.system, r.kind, r.label, r.polynomial);
    let _ = writeln!(s, "integer: {}  nonnegative: {}", r.integer, r.nonnegative);
    let fmt_k = |k: &[i64]| k.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
    let samples: Vec<String> = r.samples.iter().map(|x| format!("{}→{}", fmt_k(&x.k), x.count)).collect();
    let _ = writeln!(s, "samples: {}", samples.join(" "));
    let checks: Vec<String> = r.verified_at.iter().map(|x| format!("{}→{}", fmt_k(&x.k), x.count)).collect();
    let _ = writeln!(s, "verified at: {}", checks.join(" "));
    if let Some(k0) = &r.k0 {
        let _ = writeln!(s, "k=0 count: {}", k0.count);
    }
    for t in &r.tags {
        let _ = writeln!(s, "tag: {t}");
    }
    s
}

pub fn weights_line(ws: &[Weight]) -> String {
    ws.iter().map(|w| format!("({w})")).collect::<Vec<_>>().join(" ")
}
