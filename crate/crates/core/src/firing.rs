//! Interval-firing relations on the weight lattice.
//!
//! For a positive root `α` with parameter `k = k(α)`, the move `λ → λ + α` is
//! allowed when `<λ, α^∨>` lies in
//!
//! * `[-k-1, k-1]` (symmetric),
//! * `[-k, k-1]` (truncated),
//! * `{0}` (central).
//!
//! Sinks of the symmetric and truncated processes are labelled through the
//! map `η_k(λ) = λ + w_λ(ρ_k)`.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::polytope::{contains_unchecked, enumerate_perm};
use crate::rootsys::{LengthClass, RootSystem};
use crate::weight::Weight;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FiringKind {
    Symmetric,
    Truncated,
    Central,
}

impl FiringKind {
    pub fn short_name(self) -> &'static str {
        match self {
            FiringKind::Symmetric => "sym",
            FiringKind::Truncated => "tr",
            FiringKind::Central => "central",
        }
    }
}

impl FromStr for FiringKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "sym" | "symmetric" => Ok(FiringKind::Symmetric),
            "tr" | "trunc" | "truncated" => Ok(FiringKind::Truncated),
            "central" => Ok(FiringKind::Central),
            _ => Err(format!("unknown firing kind {s:?} (expected sym, tr or central)")),
        }
    }
}

impl fmt::Display for FiringKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

/// A Weyl-invariant parameter: one value per root length.
/// For simply laced systems only `long` is consulted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct KParam {
    pub short: i64,
    pub long: i64,
}

impl KParam {
    pub fn uniform(k: i64) -> Self {
        KParam { short: k, long: k }
    }

    pub fn new(short: i64, long: i64) -> Self {
        KParam { short, long }
    }

    pub fn zero() -> Self {
        KParam::uniform(0)
    }

    pub fn plus(self, other: KParam) -> KParam {
        KParam {
            short: self.short + other.short,
            long: self.long + other.long,
        }
    }

    pub fn of_class(self, class: LengthClass) -> i64 {
        match class {
            LengthClass::Long => self.long,
            LengthClass::Short => self.short,
        }
    }

    /// `k(α)` for the positive root at `idx`.
    pub fn of_root(self, rs: &RootSystem, idx: usize) -> i64 {
        self.of_class(rs.length_class[idx])
    }

    /// `ρ_k = Σ k(α_i) ω_i`.
    pub fn rho(self, rs: &RootSystem) -> Weight {
        Weight((0..rs.rank()).map(|i| self.of_class(rs.simple_class(i))).collect())
    }

    /// Good means `k_short = 0 ⇒ k_long = 0`; always true when simply laced.
    pub fn is_good(self, rs: &RootSystem) -> bool {
        rs.is_simply_laced() || self.short != 0 || self.long == 0
    }

    pub fn is_nonnegative(self) -> bool {
        self.short >= 0 && self.long >= 0
    }

    /// Canonical form: for simply laced systems both entries carry `k_long`.
    pub fn normalized(self, rs: &RootSystem) -> KParam {
        if rs.is_simply_laced() {
            KParam::uniform(self.long)
        } else {
            self
        }
    }
}

impl fmt::Display for KParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.short == self.long {
            write!(f, "{}", self.long)
        } else {
            write!(f, "(k_s={}, k_l={})", self.short, self.long)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FiringParams {
    pub kind: FiringKind,
    pub k: KParam,
}

impl FiringParams {
    pub fn new(kind: FiringKind, k: KParam) -> Self {
        FiringParams { kind, k }
    }

    pub fn symmetric(k: i64) -> Self {
        FiringParams::new(FiringKind::Symmetric, KParam::uniform(k))
    }

    pub fn truncated(k: i64) -> Self {
        FiringParams::new(FiringKind::Truncated, KParam::uniform(k))
    }

    pub fn central() -> Self {
        FiringParams::new(FiringKind::Central, KParam::zero())
    }

    pub fn with_kind(self, kind: FiringKind) -> Self {
        FiringParams { kind, ..self }
    }

    pub fn is_good(&self, rs: &RootSystem) -> bool {
        self.kind == FiringKind::Central || self.k.is_good(rs)
    }

    /// Whether the positive root at `idx` may fire from a weight with pairing `p`.
    #[inline]
    pub fn allows(&self, rs: &RootSystem, idx: usize, p: i64) -> bool {
        let k = self.k.of_root(rs, idx);
        match self.kind {
            FiringKind::Symmetric => -k - 1 <= p && p <= k - 1,
            FiringKind::Truncated => -k <= p && p <= k - 1,
            FiringKind::Central => p == 0,
        }
    }
}

/// Positive-root indices fireable at `λ`, in `pos_roots` order.
pub fn fireable_roots(rs: &RootSystem, lambda: &Weight, params: &FiringParams) -> Vec<usize> {
    (0..rs.num_pos_roots())
        .filter(|&i| params.allows(rs, i, rs.pairing_idx(lambda, i)))
        .collect()
}

pub fn is_sink(rs: &RootSystem, lambda: &Weight, params: &FiringParams) -> bool {
    (0..rs.num_pos_roots()).all(|i| !params.allows(rs, i, rs.pairing_idx(lambda, i)))
}

/// True iff no positive root pairs to −1 with `λ`; exactly the labels of
/// symmetric sinks.
pub fn sym_sink_labels_valid(rs: &RootSystem, lambda: &Weight) -> bool {
    (0..rs.num_pos_roots()).all(|i| rs.pairing_idx(lambda, i) != -1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Out,
    In,
    Both,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Neighbor {
    pub weight: Weight,
    pub root: usize,
    /// True for `λ → weight`, false for `weight → λ`.
    pub outgoing: bool,
}

pub fn neighbors(rs: &RootSystem, lambda: &Weight, params: &FiringParams, dir: Direction) -> Vec<Neighbor> {
    let mut out = Vec::new();
    for i in 0..rs.num_pos_roots() {
        let a = rs.root_weight(i);
        if matches!(dir, Direction::Out | Direction::Both) && params.allows(rs, i, rs.pairing_idx(lambda, i)) {
            out.push(Neighbor {
                weight: lambda + a,
                root: i,
                outgoing: true,
            });
        }
        if matches!(dir, Direction::In | Direction::Both) {
            let src = lambda - a;
            if params.allows(rs, i, rs.pairing_idx(&src, i)) {
                out.push(Neighbor {
                    weight: src,
                    root: i,
                    outgoing: false,
                });
            }
        }
    }
    out
}

/// Whether `x` and `y` are joined by an edge of the underlying undirected graph.
pub fn adjacent(rs: &RootSystem, params: &FiringParams, x: &Weight, y: &Weight) -> bool {
    let Some(d) = rs.integral_root_coords(&(y - x)) else {
        return false;
    };
    match rs.signed_root_index(&crate::rootsys::RootVec(d)) {
        Some((i, false)) => params.allows(rs, i, rs.pairing_idx(x, i)),
        Some((i, true)) => params.allows(rs, i, rs.pairing_idx(y, i)),
        None => false,
    }
}

/// `η_k(λ) = λ + w_λ(ρ_k)`.
pub fn eta(rs: &RootSystem, lambda: &Weight, k: KParam) -> Weight {
    let (_, w) = rs.dominant_rep(lambda);
    lambda + &w.apply(rs, &k.rho(rs))
}

/// The unique `λ` with `η_k(λ) = μ`, or `None` when `μ` is not in the image.
pub fn eta_inverse(rs: &RootSystem, mu: &Weight, k: KParam) -> Option<Weight> {
    let (_, w) = rs.dominant_rep(mu);
    let lambda = mu - &w.apply(rs, &k.rho(rs));
    (eta(rs, &lambda, k) == *mu).then_some(lambda)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Policy {
    FirstFireable,
    SeededRandom(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stabilized {
    pub sink: Weight,
    pub steps: u64,
}

/// Upper bound on firing steps from `λ`: every move lowers
/// `φ(λ) = (ρ_{k+1} − λ, ρ_{k+1} − λ)` by at least `(α, α) ≥ 2`.
pub fn step_budget(rs: &RootSystem, lambda: &Weight, k: KParam) -> u64 {
    let v = &k.plus(KParam::uniform(1)).rho(rs) - lambda;
    let phi = rs.form_weights(&v, &v);
    let potential_bound = (phi / 2).floor().to_integer().max(0) as u64 + 1;
    let max_pair = (0..rs.num_pos_roots())
        .map(|i| rs.pairing_idx(lambda, i).abs())
        .max()
        .unwrap_or(0);
    let kmax = k.short.max(k.long);
    let crude = 4 * rs.num_pos_roots() as u64 * ((max_pair + kmax + 2) as u64).pow(2);
    potential_bound.max(crude)
}

/// Fires until no root is fireable. Each step is checked against the
/// termination potential.
pub fn stabilize(rs: &RootSystem, lambda: &Weight, params: &FiringParams, policy: Policy) -> Result<Stabilized> {
    if params.kind == FiringKind::Central {
        return Err(Error::WrongKind("symmetric or truncated"));
    }
    let budget = step_budget(rs, lambda, params.k);
    let target = params.k.plus(KParam::uniform(1)).rho(rs);
    let mut rng = match policy {
        Policy::SeededRandom(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        Policy::FirstFireable => None,
    };
    let mut cur = lambda.clone();
    let mut steps = 0u64;
    let mut fireable = Vec::with_capacity(rs.num_pos_roots());
    loop {
        fireable.clear();
        fireable.extend((0..rs.num_pos_roots()).filter(|&i| params.allows(rs, i, rs.pairing_idx(&cur, i))));
        if fireable.is_empty() {
            return Ok(Stabilized { sink: cur, steps });
        }
        let idx = match rng.as_mut() {
            Some(r) => fireable[r.gen_range(0..fireable.len())],
            None => fireable[0],
        };
        let root = &rs.pos_roots[idx];
        // φ(λ) − φ(λ+α) = 2(ρ_{k+1} − λ, α) − (α, α) must be at least (α, α).
        let norm2 = 2 * rs.root_norm(idx);
        let drop = 2 * rs.form_weight_root(&(&target - &cur), root) - norm2;
        if drop < norm2 {
            return Err(Error::Invariant(format!(
                "firing {} at {cur} does not decrease the potential",
                root.expansion()
            )));
        }
        for (x, a) in cur.0.iter_mut().zip(&rs.root_weight(idx).0) {
            *x += a;
        }
        steps += 1;
        if steps > budget {
            return Err(Error::StepBudget {
                budget,
                start: lambda.to_string(),
            });
        }
    }
}

fn require_firing_kind(params: &FiringParams) -> Result<()> {
    if params.kind == FiringKind::Central {
        Err(Error::WrongKind("symmetric or truncated"))
    } else {
        Ok(())
    }
}

fn require_good(rs: &RootSystem, params: &FiringParams, limits: &Limits) -> Result<()> {
    if params.is_good(rs) || limits.force {
        Ok(())
    } else {
        Err(Error::NotGood)
    }
}

/// The label `λ` with stabilization `η_k(λ)`.
pub fn stabilization_label(rs: &RootSystem, mu: &Weight, params: &FiringParams, limits: &Limits) -> Result<Weight> {
    require_firing_kind(params)?;
    require_good(rs, params, limits)?;
    let sink = stabilize(rs, mu, params, Policy::FirstFireable)?.sink;
    eta_inverse(rs, &sink, params.k).ok_or_else(|| {
        Error::Invariant(format!("sink {sink} of {mu} is not in the image of η_{}", params.k))
    })
}

/// Connected component of `μ` in the underlying undirected graph, sorted.
///
/// For good parameters every visited weight is checked to lie in the
/// permutohedron `Π^Q(η_k(λ_dom))`, `λ` the symmetric label of `μ`.
pub fn component(rs: &RootSystem, mu: &Weight, params: &FiringParams, limits: &Limits) -> Result<Vec<Weight>> {
    require_firing_kind(params)?;
    require_good(rs, params, limits)?;
    let bound = if params.is_good(rs) {
        let sym = params.with_kind(FiringKind::Symmetric);
        let label = stabilization_label(rs, mu, &sym, limits)?;
        Some(eta(rs, &rs.dominant(&label), params.k))
    } else {
        None
    };

    let mut seen: HashSet<Weight> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(mu.clone());
    queue.push_back(mu.clone());
    while let Some(v) = queue.pop_front() {
        if let Some(b) = &bound {
            if !contains_unchecked(rs, b, &v) {
                return Err(Error::Invariant(format!(
                    "component of {mu} escapes the permutohedron of {b} at {v}"
                )));
            }
        }
        for nb in neighbors(rs, &v, params, Direction::Both) {
            if !seen.contains(&nb.weight) {
                if seen.len() >= limits.max_points {
                    return Err(Error::ResourceCap { cap: limits.max_points });
                }
                seen.insert(nb.weight.clone());
                queue.push_back(nb.weight);
            }
        }
    }
    let mut out: Vec<Weight> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// All `μ` whose stabilization is `η_k(λ)`, sorted. Every member is
/// re-stabilized as a cross-check.
pub fn fiber(rs: &RootSystem, lambda: &Weight, params: &FiringParams, limits: &Limits) -> Result<Vec<Weight>> {
    require_firing_kind(params)?;
    require_good(rs, params, limits)?;
    if params.kind == FiringKind::Symmetric && !sym_sink_labels_valid(rs, lambda) {
        return Ok(Vec::new());
    }
    let sink = eta(rs, lambda, params.k);
    let comp = component(rs, &sink, params, limits)?;
    for m in &comp {
        let s = stabilize(rs, m, params, Policy::FirstFireable)?.sink;
        if s != sink {
            return Err(Error::Invariant(format!(
                "{m} lies in the component of sink {sink} but stabilizes to {s}"
            )));
        }
    }
    Ok(comp)
}

/// Stabilizes `λ` under `trials` independent seeded random policies and
/// returns the distinct sinks reached.
pub fn random_sinks(rs: &RootSystem, lambda: &Weight, params: &FiringParams, trials: usize, seed: u64) -> Result<BTreeSet<Weight>> {
    let mut sinks = BTreeSet::new();
    for t in 0..trials as u64 {
        let s = stabilize(rs, lambda, params, Policy::SeededRandom(seed.wrapping_mul(0x9E37_79B9).wrapping_add(t)))?;
        sinks.insert(s.sink);
    }
    Ok(sinks)
}

pub fn check_confluence_random(rs: &RootSystem, lambda: &Weight, params: &FiringParams, trials: usize, seed: u64) -> Result<bool> {
    Ok(random_sinks(rs, lambda, params, trials.max(2), seed)?.len() == 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CentralSinks {
    pub sinks: BTreeSet<Weight>,
    /// False when the state budget ran out before the search finished.
    pub complete: bool,
    pub explored: usize,
}

/// Every central-firing sink reachable from `λ` by forward moves.
pub fn reachable_central_sinks(rs: &RootSystem, lambda: &Weight, budget: usize) -> CentralSinks {
    let params = FiringParams::central();
    let mut seen: HashSet<Weight> = HashSet::new();
    let mut queue = VecDeque::new();
    let mut sinks = BTreeSet::new();
    seen.insert(lambda.clone());
    queue.push_back(lambda.clone());
    let mut complete = true;
    while let Some(v) = queue.pop_front() {
        let out = neighbors(rs, &v, &params, Direction::Out);
        if out.is_empty() {
            sinks.insert(v);
            continue;
        }
        for nb in out {
            if !seen.contains(&nb.weight) {
                if seen.len() >= budget {
                    complete = false;
                    continue;
                }
                seen.insert(nb.weight.clone());
                queue.push_back(nb.weight);
            }
        }
    }
    CentralSinks {
        sinks,
        complete,
        explored: seen.len(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Region {
    /// `[lo, hi]^n` in fundamental coordinates.
    Box { lo: i64, hi: i64 },
    /// `Π^Q(center)` for a dominant center.
    Permutohedron { center: Weight },
}

impl Region {
    pub fn centered_box(r: i64) -> Self {
        Region::Box { lo: -r, hi: r }
    }

    pub fn points(&self, rs: &RootSystem, cap: usize) -> Result<Vec<Weight>> {
        match self {
            Region::Box { lo, hi } => {
                if lo > hi {
                    return Ok(Vec::new());
                }
                let side = (hi - lo + 1) as f64;
                if side.powi(rs.rank() as i32) > cap as f64 {
                    return Err(Error::ResourceCap { cap });
                }
                Ok(Weight::box_points(rs.rank(), *lo, *hi))
            }
            Region::Permutohedron { center } => Ok(enumerate_perm(rs, center, cap)?.points),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphEdge {
    pub s: usize,
    pub t: usize,
    pub root: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiringGraph {
    pub system: String,
    pub params: FiringParams,
    /// Sorted lexicographically.
    pub vertices: Vec<Weight>,
    /// Sorted by (source, root).
    pub edges: Vec<GraphEdge>,
}

impl FiringGraph {
    pub fn sinks(&self) -> Vec<&Weight> {
        let mut has_out = vec![false; self.vertices.len()];
        for e in &self.edges {
            has_out[e.s] = true;
        }
        self.vertices
            .iter()
            .zip(has_out)
            .filter(|(_, o)| !o)
            .map(|(v, _)| v)
            .collect()
    }
}

/// The induced subgraph of `Γ` on a region.
pub fn build_graph(rs: &RootSystem, region: &Region, params: &FiringParams, limits: &Limits) -> Result<FiringGraph> {
    let vertices = region.points(rs, limits.max_points)?;
    let mut edges = Vec::new();
    for (s, v) in vertices.iter().enumerate() {
        for i in fireable_roots(rs, v, params) {
            let target = v + rs.root_weight(i);
            if let Ok(t) = vertices.binary_search(&target) {
                edges.push(GraphEdge { s, t, root: i });
            }
        }
    }
    Ok(FiringGraph {
        system: rs.name(),
        params: *params,
        vertices,
        edges,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymmetryViolation {
    pub map: String,
    pub edge: (Weight, Weight),
    pub image: (Weight, Weight),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SymmetryReport {
    pub maps_checked: usize,
    pub edges_checked: usize,
    pub violations: Vec<SymmetryViolation>,
}

impl SymmetryReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that the undirected firing graph is preserved by the simple
/// reflections (symmetric kind) or by `v ↦ w(v − ρ/h) + ρ/h` for every
/// `w ∈ C` (truncated kind), on all edges leaving the region.
pub fn graph_symmetry_check(rs: &RootSystem, params: &FiringParams, region: &Region, limits: &Limits) -> Result<SymmetryReport> {
    let points = region.points(rs, limits.max_points)?;
    let mut maps: Vec<(String, Box<dyn Fn(&Weight) -> Weight + '_>)> = Vec::new();
    match params.kind {
        FiringKind::Symmetric => {
            for i in 0..rs.rank() {
                maps.push((format!("s{}", i + 1), Box::new(move |v: &Weight| rs.reflect_simple(i, v))));
            }
        }
        FiringKind::Truncated => {
            let rho = rs.rho();
            let h = rs.coxeter_number;
            for c in rs.subgroup_c()? {
                // w(v − ρ/h) + ρ/h = w(v) + (ρ − w(ρ))/h, computed over Q.
                let diff = &rho - &c.word.apply(rs, &rho);
                let shift = diff
                    .0
                    .iter()
                    .map(|&x| {
                        let q = num_rational::Ratio::new(x, h);
                        if q.is_integer() {
                            Ok(q.to_integer())
                        } else {
                            Err(Error::Invariant(format!("(ρ − w(ρ))/h not integral for w = {}", c.word)))
                        }
                    })
                    .collect::<Result<Vec<_>>>()?;
                let shift = Weight(shift);
                let word = c.word.clone();
                maps.push((
                    format!("C[{}]", c.word),
                    Box::new(move |v: &Weight| &word.apply(rs, v) + &shift),
                ));
            }
        }
        FiringKind::Central => return Err(Error::WrongKind("symmetric or truncated")),
    }

    let mut report = SymmetryReport {
        maps_checked: maps.len(),
        ..Default::default()
    };
    for v in &points {
        for i in fireable_roots(rs, v, params) {
            let u = v + rs.root_weight(i);
            report.edges_checked += 1;
            for (name, f) in &maps {
                let (fv, fu) = (f(v), f(&u));
                if !adjacent(rs, params, &fv, &fu) {
                    report.violations.push(SymmetryViolation {
                        map: name.clone(),
                        edge: (v.clone(), u.clone()),
                        image: (fv, fu),
                    });
                }
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EscapingEdge {
    pub from: Weight,
    pub root: usize,
}

/// Edges of `Γ_sym,k` leaving `Π^Q(η_k(λ))` for dominant `λ`. Empty for good `k`.
pub fn escaping_edges(rs: &RootSystem, lambda_dom: &Weight, k: KParam, limits: &Limits) -> Result<Vec<EscapingEdge>> {
    let params = FiringParams::new(FiringKind::Symmetric, k);
    let center = eta(rs, lambda_dom, k);
    let perm = enumerate_perm(rs, &center, limits.max_points)?;
    let mut out = Vec::new();
    for mu in &perm.points {
        for i in fireable_roots(rs, mu, &params) {
            if !perm.contains(&(mu + rs.root_weight(i))) {
                out.push(EscapingEdge {
                    from: mu.clone(),
                    root: i,
                });
            }
        }
    }
    Ok(out)
}

/// `w_λ W_{I^{0,1}_λ}(η_k(λ_dom))`: the parabolic orbit every symmetric fiber contains.
pub fn parabolic_orbit_of_sink(rs: &RootSystem, lambda: &Weight, k: KParam) -> Vec<Weight> {
    let (dom, w) = rs.dominant_rep(lambda);
    let (_, i01) = rs.support_sets(&dom);
    let center = eta(rs, &dom, k);
    let mut out: Vec<Weight> = rs
        .parabolic_orbit(&center, &i01)
        .iter()
        .map(|v| w.apply(rs, v))
        .collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::RootVec;

    fn w(c: &[i64]) -> Weight {
        Weight(c.to_vec())
    }

    fn sys(s: &str) -> RootSystem {
        RootSystem::from_spec(s).unwrap()
    }

    #[test]
    fn fireable_examples() {
        let a2 = sys("A2");
        assert!(fireable_roots(&a2, &w(&[0, 0]), &FiringParams::symmetric(0)).is_empty());
        assert_eq!(fireable_roots(&a2, &w(&[0, 0]), &FiringParams::truncated(1)), vec![0, 1, 2]);
        assert!(fireable_roots(&a2, &a2.rho(), &FiringParams::symmetric(1)).is_empty());
    }

    #[test]
    fn neighbor_examples() {
        let a2 = sys("A2");
        assert!(neighbors(&a2, &w(&[0, 0]), &FiringParams::symmetric(0), Direction::Out).is_empty());
        let ins = neighbors(&a2, &a2.rho(), &FiringParams::symmetric(1), Direction::In);
        // ρ − α1 = (-1, 2)
        assert!(ins.iter().any(|n| n.weight == w(&[-1, 2]) && n.root == 0 && !n.outgoing));

        let a1 = sys("A1");
        let p = FiringParams::truncated(1);
        assert_eq!(
            neighbors(&a1, &w(&[0]), &p, Direction::Both),
            vec![Neighbor { weight: w(&[2]), root: 0, outgoing: true }]
        );
        assert_eq!(
            neighbors(&a1, &w(&[1]), &p, Direction::Both),
            vec![Neighbor { weight: w(&[-1]), root: 0, outgoing: false }]
        );
    }

    #[test]
    fn eta_examples() {
        let a2 = sys("A2");
        let k1 = KParam::uniform(1);
        assert_eq!(eta(&a2, &w(&[0, 0]), k1), a2.rho());
        assert_eq!(eta(&a2, &w(&[2, 1]), KParam::uniform(3)), w(&[5, 4]));
        assert_eq!(eta(&a2, &w(&[-1, 0]), k1), w(&[-3, 1]));

        assert_eq!(eta_inverse(&a2, &a2.rho(), k1), Some(w(&[0, 0])));
        assert_eq!(eta_inverse(&a2, &w(&[-3, 1]), k1), Some(w(&[-1, 0])));
        assert_eq!(eta_inverse(&a2, &w(&[1, 0]), k1), None);
    }

    #[test]
    fn eta_one_misses_omega1_in_a_box_scan() {
        // Exhaustive oracle for the not-in-image example.
        let a2 = sys("A2");
        let hits = Weight::box_points(2, -6, 6)
            .into_iter()
            .filter(|l| eta(&a2, l, KParam::uniform(1)) == w(&[1, 0]))
            .count();
        assert_eq!(hits, 0);
    }

    #[test]
    fn sink_examples() {
        let a2 = sys("A2");
        for k in 0..4 {
            let p = FiringParams::symmetric(k);
            assert!(is_sink(&a2, &KParam::uniform(k).rho(&a2), &p));
        }
        assert!(!is_sink(&a2, &w(&[0, 0]), &FiringParams::truncated(1)));
        assert!(!is_sink(&sys("A1"), &w(&[0]), &FiringParams::central()));
    }

    #[test]
    fn label_validity_examples() {
        let a2 = sys("A2");
        for lam in Weight::box_points(2, 0, 3) {
            assert!(sym_sink_labels_valid(&a2, &lam));
        }
        assert!(!sym_sink_labels_valid(&a2, &w(&[-1, 0])));
        assert!(!sym_sink_labels_valid(&a2, &w(&[1, -1])));
    }

    #[test]
    fn stabilize_examples() {
        let a2 = sys("A2");
        let sink = a2.rho();
        let s = stabilize(&a2, &sink, &FiringParams::symmetric(1), Policy::FirstFireable).unwrap();
        assert_eq!(s, Stabilized { sink, steps: 0 });

        for policy in [Policy::FirstFireable, Policy::SeededRandom(7), Policy::SeededRandom(99)] {
            let s = stabilize(&a2, &w(&[-1, 0]), &FiringParams::symmetric(0), policy).unwrap();
            assert_eq!(s.sink, w(&[0, 1]));
        }
        let s = stabilize(&a2, &w(&[0, 0]), &FiringParams::truncated(1), Policy::FirstFireable).unwrap();
        assert_eq!(s.sink, a2.rho());
        assert!(matches!(
            stabilize(&a2, &w(&[0, 0]), &FiringParams::central(), Policy::FirstFireable),
            Err(Error::WrongKind(_))
        ));
    }

    #[test]
    fn label_examples() {
        let a2 = sys("A2");
        let lim = Limits::default();
        assert_eq!(stabilization_label(&a2, &w(&[0, 0]), &FiringParams::symmetric(1), &lim).unwrap(), w(&[0, 0]));
        assert_eq!(stabilization_label(&a2, &w(&[-1, 0]), &FiringParams::symmetric(0), &lim).unwrap(), w(&[0, 1]));
        for mu in a2.weyl_orbit(&a2.rho()) {
            assert_eq!(stabilization_label(&a2, &mu, &FiringParams::symmetric(0), &lim).unwrap(), a2.rho());
        }
        let b2 = sys("B2");
        let bad = FiringParams::new(FiringKind::Symmetric, KParam::new(0, 1));
        assert_eq!(stabilization_label(&b2, &w(&[0, 0]), &bad, &lim), Err(Error::NotGood));
    }

    #[test]
    fn component_examples() {
        let a2 = sys("A2");
        let lim = Limits::default();
        assert_eq!(component(&a2, &w(&[0, 0]), &FiringParams::symmetric(0), &lim).unwrap(), vec![w(&[0, 0])]);
        assert_eq!(
            component(&a2, &a2.rho(), &FiringParams::symmetric(0), &lim).unwrap(),
            a2.weyl_orbit(&a2.rho())
        );
        let c = component(&a2, &a2.rho(), &FiringParams::truncated(1), &lim).unwrap();
        assert_eq!(c, enumerate_perm(&a2, &a2.rho(), 100).unwrap().points);
        assert_eq!(c.len(), 7);
    }

    #[test]
    fn component_respects_cap() {
        let a2 = sys("A2");
        let lim = Limits::with_max_points(5);
        assert_eq!(
            component(&a2, &a2.rho(), &FiringParams::truncated(1), &lim),
            Err(Error::ResourceCap { cap: 5 })
        );
    }

    #[test]
    fn fiber_examples() {
        let a2 = sys("A2");
        let lim = Limits::default();
        assert_eq!(fiber(&a2, &w(&[0, 0]), &FiringParams::symmetric(1), &lim).unwrap().len(), 7);
        for k in 0..3 {
            assert!(fiber(&a2, &w(&[-1, 0]), &FiringParams::symmetric(k), &lim).unwrap().is_empty());
        }
        assert_eq!(fiber(&a2, &w(&[-1, -1]), &FiringParams::truncated(2), &lim).unwrap().len(), 1);
    }

    #[test]
    fn graph_examples() {
        let a1 = sys("A1");
        let lim = Limits::default();
        let g = build_graph(&a1, &Region::centered_box(3), &FiringParams::symmetric(0), &lim).unwrap();
        // only c = -1 fires, to c = 1
        let edges: Vec<_> = g.edges.iter().map(|e| (g.vertices[e.s].clone(), g.vertices[e.t].clone())).collect();
        assert_eq!(edges, vec![(w(&[-1]), w(&[1]))]);

        let a2 = sys("A2");
        let region = Region::Permutohedron { center: a2.rho() };
        let g = build_graph(&a2, &region, &FiringParams::truncated(1), &lim).unwrap();
        assert_eq!(g.vertices.len(), 7);
        assert_eq!(g.sinks(), vec![&a2.rho()]);

        let empty = build_graph(&a2, &Region::Box { lo: 1, hi: 0 }, &FiringParams::symmetric(1), &lim).unwrap();
        assert!(empty.vertices.is_empty() && empty.edges.is_empty());
        assert!(matches!(
            build_graph(&a2, &Region::centered_box(10), &FiringParams::symmetric(1), &Limits::with_max_points(100)),
            Err(Error::ResourceCap { .. })
        ));
    }

    #[test]
    fn confluence_examples() {
        let a2 = sys("A2");
        assert!(check_confluence_random(&a2, &w(&[0, 0]), &FiringParams::symmetric(1), 50, 1).unwrap());
        assert!(check_confluence_random(&a2, &w(&[0, 0]), &FiringParams::truncated(2), 50, 1).unwrap());
    }

    #[test]
    fn central_examples() {
        let a1 = sys("A1");
        assert_eq!(reachable_central_sinks(&a1, &w(&[1]), 100).sinks, BTreeSet::from([w(&[1])]));
        assert_eq!(reachable_central_sinks(&a1, &w(&[0]), 100).sinks, BTreeSet::from([w(&[2])]));
        let a2 = sys("A2");
        let r = reachable_central_sinks(&a2, &w(&[0, 0]), 1000);
        assert!(r.complete);
        assert_eq!(r.sinks, BTreeSet::from([w(&[2, -1]), w(&[-1, 2]), w(&[1, 1])]));
        let partial = reachable_central_sinks(&a2, &w(&[0, 0]), 1);
        assert!(!partial.complete);
    }

    #[test]
    fn symmetry_examples() {
        let lim = Limits::default();
        let a2 = sys("A2");
        let r = graph_symmetry_check(&a2, &FiringParams::symmetric(1), &Region::centered_box(4), &lim).unwrap();
        assert!(r.passed() && r.edges_checked > 0 && r.maps_checked == 2);
        let r = graph_symmetry_check(&a2, &FiringParams::truncated(1), &Region::centered_box(4), &lim).unwrap();
        assert!(r.passed() && r.maps_checked == 3);
        let g2 = sys("G2");
        let r = graph_symmetry_check(&g2, &FiringParams::truncated(1), &Region::centered_box(4), &lim).unwrap();
        assert!(r.passed() && r.maps_checked == 1);
    }

    #[test]
    fn symmetric_graph_is_not_symmetric_under_c_for_truncated_maps() {
        // Sanity check that the checker can fail: the truncated graph is not
        // invariant under a bare simple reflection.
        let a2 = sys("A2");
        let p = FiringParams::truncated(1);
        let v = w(&[0, 0]);
        let u = &v + a2.root_weight(0);
        assert!(adjacent(&a2, &p, &v, &u));
        assert!(!adjacent(&a2, &p, &a2.reflect_simple(0, &v), &a2.reflect_simple(0, &u)));
    }

    #[test]
    fn b2_non_good_escape() {
        let b2 = sys("B2");
        let bad = KParam::new(0, 1);
        let esc = escaping_edges(&b2, &w(&[0, 0]), bad, &Limits::default()).unwrap();
        assert!(esc.contains(&EscapingEdge { from: w(&[0, 0]), root: 0 }));
        assert_eq!(b2.pos_roots[0], RootVec(vec![1, 0]));
        assert!(escaping_edges(&b2, &w(&[0, 0]), KParam::new(1, 1), &Limits::default()).unwrap().is_empty());
    }

    #[test]
    fn parameter_parsing_and_goodness() {
        assert_eq!("SYM".parse::<FiringKind>(), Ok(FiringKind::Symmetric));
        assert_eq!("tr".parse::<FiringKind>(), Ok(FiringKind::Truncated));
        assert!("foo".parse::<FiringKind>().is_err());
        let b2 = sys("B2");
        assert!(KParam::new(1, 0).is_good(&b2));
        assert!(!KParam::new(0, 2).is_good(&b2));
        assert!(KParam::new(0, 2).is_good(&sys("A2")));
        assert_eq!(KParam::new(2, 3).rho(&b2), w(&[3, 2]));
    }
}
