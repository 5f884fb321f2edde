//! Fiber counts as functions of the parameter `k`, exact polynomial fitting,
//! and the decomposition and iteration identities relating the symmetric and
//! truncated stabilization maps.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::firing::{eta, fiber, stabilization_label, FiringKind, FiringParams, KParam, Region};
use crate::limits::Limits;
use crate::polytope::enumerate_perm;
use crate::rootsys::RootSystem;
use crate::weight::Weight;

/// A polynomial in `k` (one variable) or in `(k_s, k_l)` (two variables) with
/// exact rational coefficients. Only nonzero coefficients are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePolynomial {
    pub variables: usize,
    pub degree_bound: usize,
    pub coeffs: BTreeMap<Vec<u32>, BigRational>,
}

impl LatticePolynomial {
    pub fn zero(variables: usize, degree_bound: usize) -> Self {
        LatticePolynomial {
            variables,
            degree_bound,
            coeffs: BTreeMap::new(),
        }
    }

    /// Builds a polynomial from integer terms; exponents are `[e]` or `[e_s, e_l]`.
    pub fn from_terms(variables: usize, terms: &[(&[u32], i64)]) -> Self {
        let mut p = LatticePolynomial::zero(variables, 0);
        for (exp, c) in terms {
            assert_eq!(exp.len(), variables);
            p.degree_bound = p.degree_bound.max(exp.iter().copied().max().unwrap_or(0) as usize);
            let e = p.coeffs.entry(exp.to_vec()).or_insert_with(BigRational::zero);
            *e += BigRational::from_integer(BigInt::from(*c));
        }
        p.coeffs.retain(|_, c| !c.is_zero());
        p
    }

    pub fn eval(&self, point: &[i64]) -> BigRational {
        assert_eq!(point.len(), self.variables);
        self.coeffs
            .iter()
            .map(|(exp, c)| c * monomial(exp, point))
            .fold(BigRational::zero(), |a, b| a + b)
    }

    pub fn is_integer(&self) -> bool {
        self.coeffs.values().all(|c| c.is_integer())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }

    pub fn total_degree(&self) -> usize {
        self.coeffs
            .keys()
            .map(|e| e.iter().sum::<u32>() as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coeffs
            .get(&vec![0; self.variables])
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Same nonzero coefficients; the declared degree bound is ignored.
    pub fn same_as(&self, other: &LatticePolynomial) -> bool {
        self.variables == other.variables && self.coeffs == other.coeffs
    }
}

fn monomial(exp: &[u32], point: &[i64]) -> BigRational {
    let mut m = BigInt::one();
    for (&e, &x) in exp.iter().zip(point) {
        m *= num_traits::pow(BigInt::from(x), e as usize);
    }
    BigRational::from_integer(m)
}

impl fmt::Display for LatticePolynomial {
    /// Terms by descending total degree, `k_l` before `k_s`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(&Vec<u32>, &BigRational)> = self.coeffs.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            let (da, db) = (a.iter().sum::<u32>(), b.iter().sum::<u32>());
            db.cmp(&da).then_with(|| b.last().cmp(&a.last()))
        });
        if terms.is_empty() {
            return f.write_str("0");
        }
        let names: &[&str] = if self.variables == 1 { &["k"] } else { &["k_s", "k_l"] };
        for (n, (exp, c)) in terms.iter().enumerate() {
            let mut vars = String::new();
            for i in (0..exp.len()).rev() {
                match exp[i] {
                    0 => {}
                    1 => vars.push_str(names[i]),
                    e => vars.push_str(&format!("{}^{e}", names[i])),
                }
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if n == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { "-" } else { "+" })?;
            }
            let coeff = if abs.is_integer() {
                abs.to_integer().to_string()
            } else {
                format!("({abs})")
            };
            if vars.is_empty() {
                f.write_str(&coeff)?;
            } else if abs.is_one() {
                f.write_str(&vars)?;
            } else {
                write!(f, "{coeff}{vars}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Sample {
    /// `[k]` or `[k_s, k_l]`.
    pub k: Vec<i64>,
    pub count: u64,
}

/// What a fit counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FitKind {
    Symmetric,
    Truncated,
    /// `#Π^Q(λ + ρ_k)`.
    Permutohedron,
}

impl fmt::Display for FitKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FitKind::Symmetric => "sym",
            FitKind::Truncated => "tr",
            FitKind::Permutohedron => "perm",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FitReport {
    pub system: String,
    pub label: Weight,
    pub kind: FitKind,
    pub polynomial: LatticePolynomial,
    pub samples: Vec<Sample>,
    /// Held-out points; every one matched the polynomial exactly.
    pub verified_at: Vec<Sample>,
    /// Truncated one-variable fits sample `k ≥ 1`; the `k = 0` count is kept here.
    pub k0: Option<Sample>,
    pub integer: bool,
    pub nonnegative: bool,
    pub tags: Vec<String>,
}

pub fn kparam_at(rs: &RootSystem, point: &[i64]) -> KParam {
    if rs.is_simply_laced() {
        KParam::uniform(point[0])
    } else {
        KParam::new(point[0], point[1])
    }
}

pub fn variables_of(rs: &RootSystem) -> usize {
    if rs.is_simply_laced() {
        1
    } else {
        2
    }
}

pub fn count_fiber(rs: &RootSystem, lambda: &Weight, kind: FiringKind, k: KParam, limits: &Limits) -> Result<u64> {
    Ok(fiber(rs, lambda, &FiringParams::new(kind, k), limits)?.len() as u64)
}

struct Plan {
    grid: Vec<Vec<i64>>,
    check: Vec<Vec<i64>>,
    k0: Option<Vec<i64>>,
}

fn plan(variables: usize, d: i64, truncated: bool) -> Plan {
    if variables == 1 {
        if truncated {
            Plan {
                grid: (1..=d + 1).map(|k| vec![k]).collect(),
                check: vec![vec![d + 2], vec![d + 3]],
                k0: Some(vec![0]),
            }
        } else {
            Plan {
                grid: (0..=d).map(|k| vec![k]).collect(),
                check: vec![vec![d + 1], vec![d + 2]],
                k0: None,
            }
        }
    } else {
        let mut grid = Vec::new();
        for ks in 1..=d + 1 {
            for kl in 0..=d {
                grid.push(vec![ks, kl]);
            }
        }
        Plan {
            grid,
            check: vec![vec![0, 0], vec![d + 2, 0], vec![1, d + 1], vec![d + 2, d + 1]],
            k0: None,
        }
    }
}

fn basis(variables: usize, d: u32) -> Vec<Vec<u32>> {
    if variables == 1 {
        (0..=d).map(|e| vec![e]).collect()
    } else {
        (0..=d).flat_map(|a| (0..=d).map(move |b| vec![a, b])).collect()
    }
}

/// Solves the square system `A x = b` over the rationals.
fn solve(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        b.swap(col, piv);
        let inv = a[col][col].recip();
        for j in col..n {
            a[col][j] = &a[col][j] * &inv;
        }
        b[col] = &b[col] * &inv;
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for j in col..n {
                    let t = &factor * &a[col][j];
                    a[r][j] -= t;
                }
                let t = &factor * &b[col];
                b[r] -= t;
            }
        }
    }
    Some(b)
}

fn interpolate(variables: usize, d: u32, samples: &[Sample]) -> Option<LatticePolynomial> {
    let mons = basis(variables, d);
    let a = samples
        .iter()
        .map(|s| mons.iter().map(|e| monomial(e, &s.k)).collect())
        .collect();
    let b = samples
        .iter()
        .map(|s| BigRational::from_integer(BigInt::from(s.count)))
        .collect();
    let x = solve(a, b)?;
    let mut p = LatticePolynomial::zero(variables, d as usize);
    for (e, c) in mons.into_iter().zip(x) {
        if !c.is_zero() {
            p.coeffs.insert(e, c);
        }
    }
    Some(p)
}

struct Fitted {
    polynomial: LatticePolynomial,
    samples: Vec<Sample>,
    verified_at: Vec<Sample>,
    k0: Option<Sample>,
}

fn try_fit<F>(variables: usize, d: usize, truncated: bool, count: &mut F) -> Result<std::result::Result<Fitted, String>>
where
    F: FnMut(&[i64]) -> Result<u64>,
{
    let p = plan(variables, d as i64, truncated);
    let mut samples = Vec::with_capacity(p.grid.len());
    for k in &p.grid {
        samples.push(Sample {
            k: k.clone(),
            count: count(k)?,
        });
    }
    let Some(poly) = interpolate(variables, d as u32, &samples) else {
        return Ok(Err(format!("singular sample system at degree {d}")));
    };
    if poly.total_degree() > d {
        return Ok(Err(format!("{poly} has total degree above {d}")));
    }
    let mut verified_at = Vec::new();
    for k in &p.check {
        let c = count(k)?;
        if poly.eval(k) != BigRational::from_integer(BigInt::from(c)) {
            return Ok(Err(format!("{poly} gives {} at k={k:?}, count is {c}", poly.eval(k))));
        }
        verified_at.push(Sample { k: k.clone(), count: c });
    }
    let k0 = match p.k0 {
        Some(k) => Some(Sample {
            count: count(&k)?,
            k,
        }),
        None => None,
    };
    Ok(Ok(Fitted {
        polynomial: poly,
        samples,
        verified_at,
        k0,
    }))
}

/// Fits at degree `d`, retrying once at `d + 1`.
fn fit_with_retry<F>(variables: usize, d: usize, truncated: bool, mut count: F) -> Result<Fitted>
where
    F: FnMut(&[i64]) -> Result<u64>,
{
    match try_fit(variables, d, truncated, &mut count)? {
        Ok(f) => Ok(f),
        Err(_) => try_fit(variables, d + 1, truncated, &mut count)?.map_err(Error::FitInconsistent),
    }
}

/// Fits the polynomial counting the fiber of `λ` under the symmetric or
/// truncated stabilization map. The degree bound defaults to the rank.
pub fn fit_ehrhart_like(
    rs: &RootSystem,
    lambda: &Weight,
    kind: FiringKind,
    degree_bound: Option<usize>,
    limits: &Limits,
) -> Result<FitReport> {
    let fit_kind = match kind {
        FiringKind::Symmetric => FitKind::Symmetric,
        FiringKind::Truncated => FitKind::Truncated,
        FiringKind::Central => return Err(Error::WrongKind("symmetric or truncated")),
    };
    let variables = variables_of(rs);
    let d = degree_bound.unwrap_or(rs.rank());
    let truncated = kind == FiringKind::Truncated && variables == 1;
    let fitted = fit_with_retry(variables, d, truncated, |k| {
        count_fiber(rs, lambda, kind, kparam_at(rs, k), limits)
    })?;
    let mut tags = Vec::new();
    if kind == FiringKind::Truncated && !rs.is_simply_laced() {
        tags.push("not-proven".to_string());
    }
    Ok(report(rs, lambda, fit_kind, fitted, tags))
}

/// Fits `#Π^Q(λ + ρ_k)` for dominant `λ`.
pub fn perm_ehrhart(rs: &RootSystem, lambda_dom: &Weight, degree_bound: Option<usize>, limits: &Limits) -> Result<FitReport> {
    if !lambda_dom.is_dominant() {
        return Err(Error::NotDominant(lambda_dom.to_string()));
    }
    let variables = variables_of(rs);
    let d = degree_bound.unwrap_or(rs.rank());
    let fitted = fit_with_retry(variables, d, false, |k| {
        let center = lambda_dom + &kparam_at(rs, k).rho(rs);
        Ok(enumerate_perm(rs, &center, limits.max_points)?.len() as u64)
    })?;
    Ok(report(rs, lambda_dom, FitKind::Permutohedron, fitted, Vec::new()))
}

fn report(rs: &RootSystem, lambda: &Weight, kind: FitKind, f: Fitted, tags: Vec<String>) -> FitReport {
    FitReport {
        system: rs.name(),
        label: lambda.clone(),
        kind,
        integer: f.polynomial.is_integer(),
        nonnegative: f.polynomial.is_nonnegative(),
        polynomial: f.polynomial,
        samples: f.samples,
        verified_at: f.verified_at,
        k0: f.k0,
        tags,
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub points: usize,
    /// Weights where `s^sym_k ≠ s^sym_0 ∘ s^tr_k`.
    pub sym_failures: Vec<Weight>,
    /// Weights where `s^tr_{k+1} ≠ s^tr_1 ∘ s^sym_k`.
    pub tr_failures: Vec<Weight>,
    /// The truncated identity is only a theorem for simply laced systems.
    pub tr_asserted: bool,
}

impl DecompositionReport {
    pub fn passed(&self) -> bool {
        self.sym_failures.is_empty() && (!self.tr_asserted || self.tr_failures.is_empty())
    }
}

pub fn decomposition_check(rs: &RootSystem, region: &Region, k: KParam, limits: &Limits) -> Result<DecompositionReport> {
    if !k.is_good(rs) {
        return Err(Error::NotGood);
    }
    let k = k.normalized(rs);
    let one = KParam::uniform(1);
    let sym_k = FiringParams::new(FiringKind::Symmetric, k);
    let sym_0 = FiringParams::new(FiringKind::Symmetric, KParam::zero());
    let tr_k = FiringParams::new(FiringKind::Truncated, k);
    let tr_k1 = FiringParams::new(FiringKind::Truncated, k.plus(one));
    let tr_1 = FiringParams::new(FiringKind::Truncated, one);
    let points = region.points(rs, limits.max_points)?;
    let mut rep = DecompositionReport {
        points: points.len(),
        tr_asserted: rs.is_simply_laced(),
        ..Default::default()
    };
    for mu in &points {
        let s_sym = stabilization_label(rs, mu, &sym_k, limits)?;
        let s_tr = stabilization_label(rs, mu, &tr_k, limits)?;
        if stabilization_label(rs, &s_tr, &sym_0, limits)? != s_sym {
            rep.sym_failures.push(mu.clone());
        }
        if stabilization_label(rs, mu, &tr_k1, limits)? != stabilization_label(rs, &s_sym, &tr_1, limits)? {
            rep.tr_failures.push(mu.clone());
        }
    }
    Ok(rep)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IterateRow {
    pub k: i64,
    /// `#((s^sym_1)^k)^{-1}(λ)`.
    pub iterated: u64,
    /// `#(s^sym_k)^{-1}(λ)` counted directly.
    pub direct: u64,
    /// The fitted polynomial at `k`.
    pub polynomial: BigRational,
}

impl IterateRow {
    pub fn agrees(&self) -> bool {
        self.iterated == self.direct && BigRational::from_integer(BigInt::from(self.iterated)) == self.polynomial
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IterateReport {
    pub label: Weight,
    pub polynomial: LatticePolynomial,
    pub rows: Vec<IterateRow>,
}

impl IterateReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(IterateRow::agrees)
    }
}

/// Compares iterated preimages under `s^sym_1` with the fitted symmetric polynomial.
pub fn iterate_check(rs: &RootSystem, lambda: &Weight, k_max: i64, limits: &Limits) -> Result<IterateReport> {
    if !rs.is_simply_laced() {
        return Err(Error::WrongKind("a simply laced system"));
    }
    let fit = fit_ehrhart_like(rs, lambda, FiringKind::Symmetric, None, limits)?;
    let sym1 = FiringParams::symmetric(1);
    let mut level: BTreeSet<Weight> = BTreeSet::from([lambda.clone()]);
    let mut rows = Vec::new();
    for k in 1..=k_max {
        let mut next = BTreeSet::new();
        for nu in &level {
            next.extend(fiber(rs, nu, &sym1, limits)?);
            if next.len() > limits.max_points {
                return Err(Error::ResourceCap { cap: limits.max_points });
            }
        }
        level = next;
        rows.push(IterateRow {
            k,
            iterated: level.len() as u64,
            direct: count_fiber(rs, lambda, FiringKind::Symmetric, KParam::uniform(k), limits)?,
            polynomial: fit.polynomial.eval(&[k]),
        });
    }
    Ok(IterateReport {
        label: lambda.clone(),
        polynomial: fit.polynomial,
        rows,
    })
}

/// `L^sym_λ(k)` against `Σ_{μ ∈ (s^sym_0)^{-1}(λ)} L^tr_μ(k)`. Returns both sides.
pub fn sum_identity(rs: &RootSystem, lambda: &Weight, k: i64, limits: &Limits) -> Result<(u64, u64)> {
    let lhs = count_fiber(rs, lambda, FiringKind::Symmetric, KParam::uniform(k), limits)?;
    let mut rhs = 0;
    for mu in fiber(rs, lambda, &FiringParams::symmetric(0), limits)? {
        rhs += count_fiber(rs, &mu, FiringKind::Truncated, KParam::uniform(k), limits)?;
    }
    Ok((lhs, rhs))
}

/// Whether the symmetric fiber of dominant `λ` is all of `Π^Q(η_k(λ))`,
/// together with both sizes.
pub fn saturation_check(rs: &RootSystem, lambda_dom: &Weight, k: KParam, limits: &Limits) -> Result<(bool, usize, usize)> {
    let f = fiber(rs, lambda_dom, &FiringParams::new(FiringKind::Symmetric, k), limits)?;
    let p = enumerate_perm(rs, &eta(rs, lambda_dom, k), limits.max_points)?;
    Ok((f == p.points, f.len(), p.len()))
}

/// Checks that the fibers meeting `region` are pairwise disjoint and that
/// each region weight lies in the fiber of its own label.
pub fn partition_check(rs: &RootSystem, region: &Region, params: &FiringParams, limits: &Limits) -> Result<bool> {
    let points = region.points(rs, limits.max_points)?;
    let mut fibers: BTreeMap<Weight, HashSet<Weight>> = BTreeMap::new();
    for mu in &points {
        let label = stabilization_label(rs, mu, params, limits)?;
        if !fibers.contains_key(&label) {
            let f = fiber(rs, &label, params, limits)?;
            fibers.insert(label.clone(), f.into_iter().collect());
        }
        if !fibers[&label].contains(mu) {
            return Ok(false);
        }
    }
    let mut seen: HashSet<&Weight> = HashSet::new();
    for f in fibers.values() {
        for mu in f {
            if !seen.insert(mu) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjectureEntry {
    pub label: Weight,
    pub fit: std::result::Result<FitReport, String>,
}

impl ConjectureEntry {
    /// Nonnegative integer coefficients.
    pub fn positive(&self) -> bool {
        matches!(&self.fit, Ok(r) if r.integer && r.nonnegative)
    }
}

/// Fits every label and records the outcome; never fails on findings.
pub fn conjecture_scan(rs: &RootSystem, labels: &[Weight], kind: FiringKind, limits: &Limits) -> Vec<ConjectureEntry> {
    labels
        .iter()
        .map(|l| ConjectureEntry {
            label: l.clone(),
            fit: fit_ehrhart_like(rs, l, kind, None, limits).map_err(|e| e.to_string()),
        })
        .collect()
}

/// Dominant weights with every coordinate in `{0, 1}`: the labels whose
/// support set `I^{0,1}` is everything.
pub fn zero_one_dominant(rank: usize) -> Vec<Weight> {
    Weight::box_points(rank, 0, 1)
}
