use std::collections::BTreeSet;
use std::fmt::Write as _;

use rootfire_core::ehrhart::{
    conjecture_scan, decomposition_check, fit_ehrhart_like, iterate_check, perm_ehrhart, zero_one_dominant,
};
use rootfire_core::firing::{
    check_confluence_random, escaping_edges, eta, graph_symmetry_check, is_sink, reachable_central_sinks,
    sym_sink_labels_valid, Region,
};
use rootfire_core::polytope::{enumerate_perm, traverse_formula, traverse_in};
use rootfire_core::{FiringKind, FiringParams, KParam, Limits, RootSystem, Weight};

use crate::commands::{emit, weights_line};
use crate::reference;
use crate::resolve::{self, max_positional, require, slot, usage};
use crate::{CliError, Opts};

const SUITES: &[&str] = &[
    "confluence",
    "sinks",
    "traverse",
    "nonescape",
    "symmetry",
    "decompose",
    "iterate",
    "tables",
    "conjectures",
];

#[derive(Default)]
struct Report {
    text: String,
    checks: usize,
    failures: usize,
}

impl Report {
    fn pass(&mut self, msg: impl AsRef<str>) {
        self.checks += 1;
        let _ = writeln!(self.text, "PASS {}", msg.as_ref());
    }

    fn fail(&mut self, msg: impl AsRef<str>) {
        self.checks += 1;
        self.failures += 1;
        let _ = writeln!(self.text, "FAIL {}", msg.as_ref());
    }

    fn check(&mut self, ok: bool, msg: impl AsRef<str>) {
        if ok {
            self.pass(msg)
        } else {
            self.fail(msg)
        }
    }

    fn note(&mut self, msg: impl AsRef<str>) {
        let _ = writeln!(self.text, "NOTE {}", msg.as_ref());
    }
}

struct Ctx<'a> {
    rs: RootSystem,
    opts: &'a Opts,
    limits: Limits,
}

impl Ctx<'_> {
    fn explicit_k(&self) -> Result<Option<KParam>, CliError> {
        resolve::kparam(&self.rs, self.opts.k.as_deref(), self.opts.ks, self.opts.kl)
    }

    /// The explicit parameter if given, else every good parameter with entries ≤ `kmax`.
    fn params(&self, kmax: i64) -> Result<Vec<KParam>, CliError> {
        if let Some(k) = self.explicit_k()? {
            if !k.is_good(&self.rs) && !self.opts.force {
                return Err(usage(format!("{k} is not a good parameter; pass --force")));
            }
            return Ok(vec![k]);
        }
        Ok(good_params(&self.rs, kmax))
    }

    fn kinds(&self) -> Result<Vec<FiringKind>, CliError> {
        match &self.opts.kind {
            Some(k) => Ok(vec![resolve::kind(k)?]),
            None => Ok(vec![FiringKind::Symmetric, FiringKind::Truncated]),
        }
    }

    fn region(&self, default_radius: i64) -> Result<Region, CliError> {
        resolve::region(&self.rs, self.opts, default_radius)
    }
}

pub fn good_params(rs: &RootSystem, kmax: i64) -> Vec<KParam> {
    if rs.is_simply_laced() {
        return (0..=kmax).map(KParam::uniform).collect();
    }
    let mut out = Vec::new();
    for ks in 0..=kmax {
        for kl in 0..=kmax {
            let k = KParam::new(ks, kl);
            if k.is_good(rs) {
                out.push(k);
            }
        }
    }
    out
}

fn default_kmax(rs: &RootSystem) -> i64 {
    if rs.rank() <= 2 {
        2
    } else {
        1
    }
}

pub fn run(opts: &Opts, cap: Option<usize>) -> Result<(), CliError> {
    max_positional(opts, 2)?;
    let suite = opts
        .positional
        .first()
        .cloned()
        .ok_or_else(|| usage(format!("missing suite (one of {})", SUITES.join(", "))))?
        .to_ascii_lowercase();
    if !SUITES.contains(&suite.as_str()) {
        return Err(usage(format!("unknown suite {suite:?} (one of {})", SUITES.join(", "))));
    }
    let sys_opts = Opts {
        positional: opts.positional.iter().skip(1).cloned().collect(),
        ..opts.clone()
    };
    let rs = resolve::system(&require(slot(&sys_opts, 0, &opts.system, "system")?, "system")?)?;
    resolve::format(opts, &["text"], "text")?;
    let ctx = Ctx {
        rs,
        opts,
        limits: resolve::limits(cap, opts.force)?,
    };
    let mut rep = Report::default();
    match suite.as_str() {
        "confluence" => confluence(&ctx, &mut rep)?,
        "sinks" => sinks(&ctx, &mut rep)?,
        "traverse" => traverse(&ctx, &mut rep)?,
        "nonescape" => nonescape(&ctx, &mut rep)?,
        "symmetry" => symmetry(&ctx, &mut rep)?,
        "decompose" => decompose(&ctx, &mut rep)?,
        "iterate" => iterate(&ctx, &mut rep)?,
        "tables" => tables(&ctx, &mut rep)?,
        _ => conjectures(&ctx, &mut rep)?,
    }
    let _ = writeln!(
        rep.text,
        "suite {suite} on {}: {} checks, {} failures",
        ctx.rs.name(),
        rep.checks,
        rep.failures
    );
    emit(opts, &rep.text)?;
    if rep.failures > 0 && suite != "conjectures" {
        return Err(CliError::Failed(format!("{} of {} checks in suite {suite}", rep.failures, rep.checks)));
    }
    Ok(())
}

fn kmax_of(k: KParam) -> i64 {
    k.short.max(k.long)
}

fn confluence(ctx: &Ctx, rep: &mut Report) -> Result<(), CliError> {
    let rs = &ctx.rs;
    let trials = ctx.opts.trials.unwrap_or(25).max(2);
    let seed = ctx.opts.seed.unwrap_or(0);
    for kind in ctx.kinds()? {
        if kind == FiringKind::Central {
            let region = ctx.region(2)?;
            let mut multi = 0;
            let pts = region.points(rs, ctx.limits.max_points)?;
            for p in &pts {
                let r = reachable_central_sinks(rs, p, ctx.limits.max_points);
                if r.sinks.len() > 1 {
                    multi += 1;
                }
            }
            rep.note(format!("central: {multi} of {} weights reach more than one sink", pts.len()));
            continue;
        }
        for k in ctx.params(default_kmax(rs))? {
            let params = FiringParams::new(kind, k);
            let pts = ctx.region(2 * kmax_of(k) + 2)?.points(rs, ctx.limits.max_points)?;
            let mut bad = Vec::new();
            for (i, p) in pts.iter().enumerate() {
                if !check_confluence_random(rs, p, &params, trials, seed.wrapping_add(i as u64))? {
                    bad.push(p.clone());
                }
            }
            let what = format!("{kind} k={k}: {} weights x {trials} random orders", pts.len());
            if bad.is_empty() {
                rep.pass(format!("{what} agree"));
            } else {
                rep.fail(format!("{what}; disagreement at {}", weights_line(&bad)));
            }
        }
    }
    Ok(())
}

fn sinks(ctx: &Ctx, rep: &mut Report) -> Result<(), CliError> {
    let rs = &ctx.rs;
    for kind in ctx.kinds()? {
        if kind == FiringKind::Central {
            let r = reachable_central_sinks(rs, &Weight::zero(rs.rank()), ctx.limits.max_points);
            rep.note(format!(
                "central from 0: {} reachable sinks{}: {}",
                r.sinks.len(),
                if r.complete { "" } else { " (partial)" },
                weights_line(&r.sinks.iter().cloned().collect::<Vec<_>>())
            ));
            continue;
        }
        for k in ctx.params(default_kmax(rs))? {
            let params = FiringParams::new(kind, k);
            let region = ctx.region(2 * kmax_of(k) + 3)?;
            let pts = region.points(rs, ctx.limits.max_points)?;
            let members: BTreeSet<Weight> = pts.iter().cloned().collect();
            let found: BTreeSet<Weight> = pts.iter().filter(|v| is_sink(rs, v, &params)).cloned().collect();
            // every η preimage of a region point is within this margin of it
            let margin = rs.weyl_orbit(&k.rho(rs)).iter().map(Weight::max_abs).max().unwrap_or(0);
            let r = pts.iter().map(Weight::max_abs).max().unwrap_or(0) + margin;
            let predicted: BTreeSet<Weight> = Weight::box_points(rs.rank(), -r, r)
                .into_iter()
                .filter(|l| kind == FiringKind::Truncated || sym_sink_labels_valid(rs, l))
                .map(|l| eta(rs, &l, k))
                .filter(|v| members.contains(v))
                .collect();
            rep.check(
                found == predicted,
                format!("{kind} k={k}: {} sinks in region match the η image", found.len()),
            );
        }
    }
    Ok(())
}

fn traverse(ctx: &Ctx, rep: &mut Report) -> Result<(), CliError> {
    let rs = &ctx.rs;
    let cmax = ctx.opts.cmax.unwrap_or(3);
    if cmax < 0 {
        return Err(usage("--cmax must be nonnegative"));
    }
    let mut pairs = 0;
    let mut bad = 0;
    for lam in Weight::box_points(rs.rank(), 0, cmax) {
        let perm = enumerate_perm(rs, &lam, ctx.limits.max_points)?;
        for idx in 0..rs.num_pos_roots() {
            let brute = traverse_in(rs, &perm, idx);
            let f = traverse_formula(rs, &lam, &rs.pos_roots[idx])?;
            pairs += 1;
            if f != brute {
                bad += 1;
                rep.fail(format!(
                    "λ={lam} α={}: formula {f}, brute force {brute}",
                    rs.pos_roots[idx].expansion()
                ));
            }
        }
    }
    if bad == 0 {
        rep.pass(format!("{pairs} (λ, α) pairs with coordinates ≤ {cmax}: formula equals brute force"));
    }
    Ok(())
}

fn nonescape(ctx: &Ctx, rep: &mut Report) -> Result<(), CliError> {
    let rs = &ctx.rs;
    let labels = zero_one_dominant(rs.rank());
    for k in ctx.params(default_kmax(rs))? {
        let mut escapes = 0;
        for lam in &labels {
            escapes += escaping_edges(rs, lam, k, &ctx.limits)?.len();
        }
        let msg = format!("k={k}: {} permutohedra, {escapes} escaping edges", labels.len());
        if k.is_good(rs) {
            rep.check(escapes == 0, msg);
        } else {
            rep.note(msg);
        }
    }
    if !rs.is_simply_laced() && ctx.opts.k.is_none() {
        for kl in 1..=2 {
            let k = KParam::new(0, kl);
            let esc = escaping_edges(rs, &Weight::zero(rs.rank()), k, &ctx.limits)?;
            let shown: Vec<String> = esc
                .iter()
                .map(|e| format!("({}, {})", e.from, rs.pos_roots[e.root].expansion()))
                .collect();
            rep.note(format!(
                "non-good k={k}, λ=0: {} escaping edges {}",
                esc.len(),
                shown.join(" ")
            ));
        }
    }
    Ok(())
}

fn symmetry(ctx: &Ctx, rep: &mut Report) -> Result<(), CliError> {
    let rs = &ctx.rs;
    for kind in ctx.kinds()? {
        if kind == FiringKind::Central {
            return Err(usage("symmetry suite covers sym and tr"));
        }
        for k in ctx.params(default_kmax(rs))? {
            let region = ctx.region(2 * kmax_of(k) + 3)?;
            let r = graph_symmetry_check(rs, &FiringParams::new(kind, k), &region, &ctx.limits)?;
            let msg = format!(
                "{kind} k={k}: {} edges x {} maps, {} violations",
                r.edges_checked,
                r.maps_checked,
                r.violations.len()
            );
            if let Some(v) = r.violations.first() {
                rep.fail(format!("{msg}; first: {} maps ({}) -> ({}) to non-edge", v.map, v.edge.0, v.edge.1));
            } else {
                rep.pass(msg);
            }
        }
    }
    Ok(())
}

fn decompose(ctx: &Ctx, rep: &mut Report) -> Result<(), CliError> {
    let rs = &ctx.rs;
    let radius = if rs.rank() <= 2 { 3 } else { 2 };
    for k in ctx.params(default_kmax(rs))? {
        let r = decomposition_check(rs, &ctx.region(radius)?, k, &ctx.limits)?;
        rep.check(
            r.sym_failures.is_empty(),
            format!("k={k}: s^sym_k = s^sym_0 ∘ s^tr_k on {} weights ({} failures)", r.points, r.sym_failures.len()),
        );
        let msg = format!(
            "k={k}: s^tr_(k+1) = s^tr_1 ∘ s^sym_k on {} weights ({} failures)",
            r.points,
            r.tr_failures.len()
        );
        if r.tr_asserted {
            rep.check(r.tr_failures.is_empty(), msg);
        } else {
            rep.note(format!("{msg}; not simply laced, reported only"));
        }
    }
    Ok(())
}

fn iterate(ctx: &Ctx, rep: &mut Report) -> Result<(), CliError> {
    let rs = &ctx.rs;
    if !rs.is_simply_laced() {
        return Err(usage("iterate needs a simply laced system"));
    }
    let k_max = match ctx.explicit_k()? {
        Some(k) => k.long,
        None => 3,
    };
    for lam in zero_one_dominant(rs.rank()) {
        let r = iterate_check(rs, &lam, k_max, &ctx.limits)?;
        let counts: Vec<String> = r.rows.iter().map(|x| x.iterated.to_string()).collect();
        rep.check(
            r.passed(),
            format!("λ={lam}: iterated preimages {} match {}", counts.join(", "), r.polynomial),
        );
    }
    Ok(())
}

fn tables(ctx: &Ctx, rep: &mut Report) -> Result<(), CliError> {
    let rs = &ctx.rs;
    let name = rs.name();
    let sym_rows = reference::rows(reference::SYMMETRIC, &name);
    let tr_rows = reference::rows(reference::TRUNCATED, &name);
    for (kind, rows) in [(FiringKind::Symmetric, &sym_rows), (FiringKind::Truncated, &tr_rows)] {
        for (label, want) in rows.iter() {
            let lam = resolve::weight(rs, label)?;
            let fit = fit_ehrhart_like(rs, &lam, kind, None, &ctx.limits)?;
            let got = fit.polynomial.to_string();
            rep.check(got == *want, format!("{kind} λ={lam}: {got} (reference {want})"));
        }
    }
    if sym_rows.is_empty() {
        for lam in zero_one_dominant(rs.rank()) {
            let fit = fit_ehrhart_like(rs, &lam, FiringKind::Symmetric, None, &ctx.limits)?;
            rep.check(fit.integer, format!("sym λ={lam}: {} has integer coefficients", fit.polynomial));
        }
    }
    for lam in zero_one_dominant(rs.rank()) {
        let fit = perm_ehrhart(rs, &lam, None, &ctx.limits)?;
        rep.check(
            fit.integer && fit.nonnegative,
            format!("#Π^Q(λ+ρ_k) for λ={lam}: {}", fit.polynomial),
        );
    }
    Ok(())
}

fn conjectures(ctx: &Ctx, rep: &mut Report) -> Result<(), CliError> {
    let rs = &ctx.rs;
    let sym = conjecture_scan(rs, &zero_one_dominant(rs.rank()), FiringKind::Symmetric, &ctx.limits);
    let tr_labels = if rs.rank() <= 2 {
        Weight::box_points(rs.rank(), -2, 2)
    } else {
        Weight::box_points(rs.rank(), -1, 1)
    };
    let tr = conjecture_scan(rs, &tr_labels, FiringKind::Truncated, &ctx.limits);
    for (kind, entries) in [("sym", &sym), ("tr", &tr)] {
        let mut positive = 0;
        for e in entries.iter() {
            match &e.fit {
                Ok(r) => {
                    if e.positive() {
                        positive += 1;
                    } else {
                        rep.note(format!("{kind} λ={}: {} has a negative or fractional coefficient", e.label, r.polynomial));
                    }
                    if kind == "tr" && r.polynomial.constant_term().to_string() != "1" {
                        rep.note(format!("tr λ={}: constant term of {} is not 1", e.label, r.polynomial));
                    }
                }
                Err(msg) => rep.note(format!("{kind} λ={}: no fit ({msg})", e.label)),
            }
        }
        let tag = if kind == "tr" && !rs.is_simply_laced() { " [not-proven]" } else { "" };
        rep.note(format!(
            "{kind}: {positive} of {} fitted polynomials have nonnegative integer coefficients{tag}",
            entries.len()
        ));
    }
    Ok(())
}
