//! Irreducible crystallographic root systems in exact integer arithmetic.
//!
//! Conventions: the Cartan matrix is `C[i][j] = <α_i, α_j^∨>`, so the simple
//! root `α_i` has fundamental-weight coordinates given by row `i` of `C`.
//! Weights live in the fundamental-weight basis, roots in the simple-root
//! basis. Simple roots are numbered as in Bourbaki (0-based internally).

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::weight::Weight;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum RootType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl RootType {
    pub fn letter(self) -> char {
        match self {
            RootType::A => 'A',
            RootType::B => 'B',
            RootType::C => 'C',
            RootType::D => 'D',
            RootType::E => 'E',
            RootType::F => 'F',
            RootType::G => 'G',
        }
    }

    fn from_letter(c: char) -> Option<Self> {
        Some(match c.to_ascii_uppercase() {
            'A' => RootType::A,
            'B' => RootType::B,
            'C' => RootType::C,
            'D' => RootType::D,
            'E' => RootType::E,
            'F' => RootType::F,
            'G' => RootType::G,
            _ => return None,
        })
    }

    /// Whether `(self, rank)` appears in the Cartan-Killing classification.
    pub fn admits_rank(self, rank: usize) -> bool {
        match self {
            RootType::A => rank >= 1,
            RootType::B => rank >= 2,
            RootType::C => rank >= 3,
            RootType::D => rank >= 4,
            RootType::E => (6..=8).contains(&rank),
            RootType::F => rank == 4,
            RootType::G => rank == 2,
        }
    }
}

/// A parsed `"<letter><rank>"` specifier such as `"B3"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SystemSpec {
    pub root_type: RootType,
    pub rank: usize,
}

impl FromStr for SystemSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let mut chars = t.chars();
        let letter = chars.next().ok_or_else(|| Error::BadSpecifier(s.to_string()))?;
        let rest = chars.as_str();
        let root_type =
            RootType::from_letter(letter).ok_or_else(|| Error::BadSpecifier(s.to_string()))?;
        if rest.is_empty() || !rest.chars().all(|c| c.is_ascii_digit()) {
            return Err(Error::BadSpecifier(s.to_string()));
        }
        let rank: usize = rest.parse().map_err(|_| Error::BadSpecifier(s.to_string()))?;
        if !root_type.admits_rank(rank) {
            return Err(Error::Classification {
                letter: root_type.letter().to_string(),
                rank,
            });
        }
        Ok(SystemSpec { root_type, rank })
    }
}

impl fmt::Display for SystemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.root_type.letter(), self.rank)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LengthClass {
    Long,
    Short,
}

/// A vector in the simple-root basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct RootVec(pub Vec<i64>);

impl RootVec {
    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&a| a >= 0) && self.0.iter().any(|&a| a > 0)
    }

    pub fn is_negative(&self) -> bool {
        self.0.iter().all(|&a| a <= 0) && self.0.iter().any(|&a| a < 0)
    }

    pub fn negated(&self) -> RootVec {
        RootVec(self.0.iter().map(|a| -a).collect())
    }

    /// Human-readable expansion such as `"a1+2a2"`.
    pub fn expansion(&self) -> String {
        let mut s = String::new();
        for (i, &a) in self.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            if a < 0 {
                s.push('-');
            } else if !s.is_empty() {
                s.push('+');
            }
            if a.abs() != 1 {
                s.push_str(&a.abs().to_string());
            }
            s.push_str(&format!("a{}", i + 1));
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }
}

/// A Weyl group element written as the product `s_{word[0]} s_{word[1]} ...`
/// of simple reflections (0-based indices). Acting on a vector, the
/// rightmost letter is applied first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize)]
pub struct WeylWord {
    pub word: Vec<usize>,
}

impl WeylWord {
    pub fn identity() -> Self {
        WeylWord { word: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn inverse(&self) -> WeylWord {
        WeylWord {
            word: self.word.iter().rev().copied().collect(),
        }
    }

    pub fn then(&self, other: &WeylWord) -> WeylWord {
        let mut word = self.word.clone();
        word.extend_from_slice(&other.word);
        WeylWord { word }
    }

    pub fn apply(&self, rs: &RootSystem, w: &Weight) -> Weight {
        let mut v = w.clone();
        for &i in self.word.iter().rev() {
            rs.reflect_simple_in_place(i, &mut v.0);
        }
        v
    }

    pub fn apply_root(&self, rs: &RootSystem, r: &RootVec) -> RootVec {
        let mut v = r.clone();
        for &i in self.word.iter().rev() {
            v = rs.reflect_root_simple(i, &v);
        }
        v
    }

    /// Number of positive roots sent to negative roots.
    pub fn inversion_count(&self, rs: &RootSystem) -> usize {
        rs.pos_roots
            .iter()
            .filter(|r| self.apply_root(rs, r).is_negative())
            .count()
    }

    pub fn is_reduced(&self, rs: &RootSystem) -> bool {
        self.inversion_count(rs) == self.len()
    }
}

impl fmt::Display for WeylWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("e");
        }
        let parts: Vec<String> = self.word.iter().map(|i| format!("s{}", i + 1)).collect();
        f.write_str(&parts.join("·"))
    }
}

/// An element of the subgroup `C ⊆ W` paired with its `Ω_m^0` label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CElement {
    pub omega: Weight,
    pub word: WeylWord,
}

/// Immutable bundle of Cartan data, positive roots and invariants.
#[derive(Clone, Debug)]
pub struct RootSystem {
    pub spec: SystemSpec,
    pub cartan: Vec<Vec<i64>>,
    /// Positive roots sorted by height, ties broken by descending coefficient
    /// vectors (so the simple roots come first, in index order).
    pub pos_roots: Vec<RootVec>,
    /// `d_i` with `d_j C[i][j]` symmetric, min 1.
    pub symmetrizer: Vec<i64>,
    pub length_class: Vec<LengthClass>,
    pub highest_root: usize,
    pub highest_short_root: usize,
    pub coxeter_number: i64,
    pub index_of_connection: i64,
    /// 0-based indices `i` with `ω_i` minuscule.
    pub minuscule: Vec<usize>,
    /// `d_α` (half squared length) per positive root.
    root_norm: Vec<i64>,
    /// Coroot of each positive root in the simple-coroot basis.
    coroots: Vec<Vec<i64>>,
    /// Each positive root in fundamental-weight coordinates.
    root_weights: Vec<Weight>,
    root_index: HashMap<Vec<i64>, usize>,
    /// `det(C) · (C^T)^{-1}`, used to express weights in the simple-root basis.
    root_coord_adj: Vec<Vec<i64>>,
    det: i64,
}

impl RootSystem {
    pub fn new(root_type: RootType, rank: usize) -> Result<Self> {
        if !root_type.admits_rank(rank) {
            return Err(Error::Classification {
                letter: root_type.letter().to_string(),
                rank,
            });
        }
        Ok(Self::build(SystemSpec { root_type, rank }))
    }

    /// Builds from a specifier string like `"a2"` or `"G2"`.
    pub fn from_spec(s: &str) -> Result<Self> {
        let spec: SystemSpec = s.parse()?;
        Ok(Self::build(spec))
    }

    fn build(spec: SystemSpec) -> Self {
        let n = spec.rank;
        let cartan = cartan_matrix(spec.root_type, n);
        let symmetrizer = symmetrizer(&cartan);

        // Positive roots: close the simple roots under simple reflections,
        // keeping only positive images.
        let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            seen.insert(e.clone());
            queue.push_back(e);
        }
        while let Some(r) = queue.pop_front() {
            for i in 0..n {
                let img = reflect_root_raw(&cartan, i, &r);
                if img.iter().all(|&a| a >= 0) && seen.insert(img.clone()) {
                    queue.push_back(img);
                }
            }
        }
        let mut pos_roots: Vec<RootVec> = seen.into_iter().map(RootVec).collect();
        pos_roots.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.0.cmp(&a.0)));

        let root_norm: Vec<i64> = pos_roots
            .iter()
            .map(|r| {
                let mut s = 0;
                for i in 0..n {
                    for j in 0..n {
                        s += r.0[i] * r.0[j] * symmetrizer[j] * cartan[i][j];
                    }
                }
                s / 2
            })
            .collect();
        let max_norm = *root_norm.iter().max().unwrap();
        let length_class = root_norm
            .iter()
            .map(|&d| if d == max_norm { LengthClass::Long } else { LengthClass::Short })
            .collect::<Vec<_>>();
        let coroots = pos_roots
            .iter()
            .zip(&root_norm)
            .map(|(r, &d)| {
                r.0.iter()
                    .enumerate()
                    .map(|(j, &a)| a * symmetrizer[j] / d)
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>();
        let root_weights = pos_roots
            .iter()
            .map(|r| {
                Weight(
                    (0..n)
                        .map(|j| (0..n).map(|i| r.0[i] * cartan[i][j]).sum())
                        .collect(),
                )
            })
            .collect();
        let root_index = pos_roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.0.clone(), i))
            .collect();

        let highest_root = pos_roots.len() - 1;
        let highest_short_root = (0..pos_roots.len())
            .filter(|&i| length_class[i] == LengthClass::Short)
            .max_by_key(|&i| pos_roots[i].height())
            .unwrap_or(highest_root);
        let coxeter_number = coroots[highest_short_root].iter().sum::<i64>() + 1;

        let minuscule = (0..n)
            .filter(|&i| coroots.iter().all(|c| c[i] <= 1))
            .collect();

        let (root_coord_adj, det) = transpose_inverse_scaled(&cartan);

        RootSystem {
            spec,
            cartan,
            pos_roots,
            symmetrizer,
            length_class,
            highest_root,
            highest_short_root,
            coxeter_number,
            index_of_connection: det.abs(),
            minuscule,
            root_norm,
            coroots,
            root_weights,
            root_index,
            root_coord_adj,
            det,
        }
    }

    pub fn rank(&self) -> usize {
        self.spec.rank
    }

    pub fn name(&self) -> String {
        self.spec.to_string()
    }

    pub fn is_simply_laced(&self) -> bool {
        self.length_class.iter().all(|&c| c == LengthClass::Long)
    }

    pub fn num_pos_roots(&self) -> usize {
        self.pos_roots.len()
    }

    /// Length class of the simple root `α_i`.
    pub fn simple_class(&self, i: usize) -> LengthClass {
        let mut e = vec![0; self.rank()];
        e[i] = 1;
        self.length_class[self.root_index[&e]]
    }

    /// Half squared length of the positive root at `idx`.
    pub fn root_norm(&self, idx: usize) -> i64 {
        self.root_norm[idx]
    }

    pub fn coroot(&self, idx: usize) -> &[i64] {
        &self.coroots[idx]
    }

    /// The positive root at `idx` in fundamental-weight coordinates.
    pub fn root_weight(&self, idx: usize) -> &Weight {
        &self.root_weights[idx]
    }

    pub fn root_index(&self, r: &RootVec) -> Option<usize> {
        self.root_index.get(&r.0).copied()
    }

    /// Index of the positive root `±r`, with a flag that is true when `r` is negative.
    pub fn signed_root_index(&self, r: &RootVec) -> Option<(usize, bool)> {
        if let Some(i) = self.root_index(r) {
            return Some((i, false));
        }
        self.root_index(&r.negated()).map(|i| (i, true))
    }

    pub fn rho(&self) -> Weight {
        Weight(vec![1; self.rank()])
    }

    /// `<λ, α^∨>` for the positive root at `idx`.
    #[inline]
    pub fn pairing_idx(&self, lambda: &Weight, idx: usize) -> i64 {
        self.coroots[idx]
            .iter()
            .zip(&lambda.0)
            .map(|(a, c)| a * c)
            .sum()
    }

    /// `<λ, α^∨>` for any root `α` (positive or negative).
    pub fn pairing(&self, lambda: &Weight, alpha: &RootVec) -> Result<i64> {
        let (idx, neg) = self
            .signed_root_index(alpha)
            .ok_or_else(|| Error::NotARoot(alpha.0.clone()))?;
        let p = self.pairing_idx(lambda, idx);
        Ok(if neg { -p } else { p })
    }

    /// `(λ, α)` in the symmetrized form normalized so short simple roots have `d = 1`.
    pub fn form_weight_root(&self, lambda: &Weight, alpha: &RootVec) -> i64 {
        alpha
            .0
            .iter()
            .enumerate()
            .map(|(j, a)| a * self.symmetrizer[j] * lambda.0[j])
            .sum()
    }

    /// `(λ, μ)` in the same normalization as [`RootSystem::form_weight_root`].
    pub fn form_weights(&self, lambda: &Weight, mu: &Weight) -> Ratio<i64> {
        // λ = Σ x_i α_i, so (λ, μ) = Σ x_i d_i <μ, α_i^∨>.
        let n = self.rank();
        let mut num = 0i64;
        for i in 0..n {
            let xi: i64 = (0..n).map(|j| self.root_coord_adj[i][j] * lambda.0[j]).sum();
            num += xi * self.symmetrizer[i] * mu.0[i];
        }
        Ratio::new(num, self.det)
    }

    pub(crate) fn reflect_simple_in_place(&self, i: usize, c: &mut [i64]) {
        let ci = c[i];
        if ci != 0 {
            for (x, a) in c.iter_mut().zip(&self.cartan[i]) {
                *x -= ci * a;
            }
        }
    }

    /// `s_i(λ) = λ − <λ, α_i^∨> α_i`.
    pub fn reflect_simple(&self, i: usize, lambda: &Weight) -> Weight {
        let mut v = lambda.clone();
        self.reflect_simple_in_place(i, &mut v.0);
        v
    }

    /// `s_i` applied to a vector in the simple-root basis.
    pub fn reflect_root_simple(&self, i: usize, r: &RootVec) -> RootVec {
        RootVec(reflect_root_raw(&self.cartan, i, &r.0))
    }

    /// Reflection in an arbitrary positive root.
    pub fn reflect_root_idx(&self, idx: usize, lambda: &Weight) -> Weight {
        let p = self.pairing_idx(lambda, idx);
        let a = &self.root_weights[idx];
        Weight(lambda.0.iter().zip(&a.0).map(|(x, y)| x - p * y).collect())
    }

    /// Dominant representative `λ_dom` and the minimal-length `w_λ` with
    /// `w_λ(λ_dom) = λ`, found by reflecting at the smallest negative coordinate.
    pub fn dominant_rep(&self, lambda: &Weight) -> (Weight, WeylWord) {
        let mut v = lambda.clone();
        let mut word = Vec::new();
        while let Some(i) = v.0.iter().position(|&c| c < 0) {
            self.reflect_simple_in_place(i, &mut v.0);
            word.push(i);
        }
        (v, WeylWord { word })
    }

    pub fn dominant(&self, lambda: &Weight) -> Weight {
        self.dominant_rep(lambda).0
    }

    /// Coordinates of `λ` in the simple-root basis, exactly.
    pub fn root_coords(&self, lambda: &Weight) -> Vec<Ratio<i64>> {
        let n = self.rank();
        (0..n)
            .map(|i| {
                let num: i64 = (0..n).map(|j| self.root_coord_adj[i][j] * lambda.0[j]).sum();
                Ratio::new(num, self.det)
            })
            .collect()
    }

    /// Simple-root coordinates when `λ ∈ Q`, else `None`.
    pub fn integral_root_coords(&self, lambda: &Weight) -> Option<Vec<i64>> {
        let n = self.rank();
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let num: i64 = (0..n).map(|j| self.root_coord_adj[i][j] * lambda.0[j]).sum();
            if num % self.det != 0 {
                return None;
            }
            out.push(num / self.det);
        }
        Some(out)
    }

    pub fn in_root_lattice(&self, lambda: &Weight) -> bool {
        self.integral_root_coords(lambda).is_some()
    }

    /// Root order: `μ ≤ λ` iff `λ − μ ∈ Q_{≥0}`.
    pub fn root_order_leq(&self, mu: &Weight, lambda: &Weight) -> bool {
        match self.integral_root_coords(&(lambda - mu)) {
            Some(x) => x.iter().all(|&a| a >= 0),
            None => false,
        }
    }

    /// Convert simple-root coordinates to a weight.
    pub fn root_to_weight(&self, r: &RootVec) -> Weight {
        let n = self.rank();
        Weight(
            (0..n)
                .map(|j| (0..n).map(|i| r.0[i] * self.cartan[i][j]).sum())
                .collect(),
        )
    }

    /// The full Weyl orbit, sorted.
    pub fn weyl_orbit(&self, lambda: &Weight) -> Vec<Weight> {
        let mut seen: BTreeSet<Weight> = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(lambda.clone());
        queue.push_back(lambda.clone());
        while let Some(v) = queue.pop_front() {
            for i in 0..self.rank() {
                if v.0[i] == 0 {
                    continue;
                }
                let img = self.reflect_simple(i, &v);
                if !seen.contains(&img) {
                    seen.insert(img.clone());
                    queue.push_back(img);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Orbit of `λ` under the parabolic subgroup generated by `gens`.
    pub fn parabolic_orbit(&self, lambda: &Weight, gens: &[usize]) -> Vec<Weight> {
        let mut seen: BTreeSet<Weight> = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(lambda.clone());
        queue.push_back(lambda.clone());
        while let Some(v) = queue.pop_front() {
            for &i in gens {
                let img = self.reflect_simple(i, &v);
                if !seen.contains(&img) {
                    seen.insert(img.clone());
                    queue.push_back(img);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// `Ω_m^0`: zero together with the minuscule fundamental weights.
    pub fn minuscule_weights(&self) -> Vec<Weight> {
        let n = self.rank();
        let mut out = vec![Weight::zero(n)];
        out.extend(self.minuscule.iter().map(|&i| Weight::fundamental(n, i)));
        out
    }

    /// The subgroup `C = {w : ρ − w(ρ) ∈ hP}`, one element per `ω ∈ Ω_m^0`,
    /// recovered from the chamber of the regular weight `ρ − hω`.
    pub fn subgroup_c(&self) -> Result<Vec<CElement>> {
        let rho = self.rho();
        self.minuscule_weights()
            .into_iter()
            .map(|omega| {
                let target = &rho - &omega.scaled(self.coxeter_number);
                let (dom, word) = self.dominant_rep(&target);
                if dom != rho {
                    return Err(Error::Invariant(format!(
                        "ρ − hω for ω = {omega} is not in the orbit of ρ"
                    )));
                }
                Ok(CElement { omega, word })
            })
            .collect()
    }

    /// `(I^0, I^{0,1})` of `λ_dom`, as sorted 0-based index lists.
    pub fn support_sets(&self, lambda: &Weight) -> (Vec<usize>, Vec<usize>) {
        let dom = self.dominant(lambda);
        let i0 = (0..self.rank()).filter(|&i| dom.0[i] == 0).collect();
        let i01 = (0..self.rank()).filter(|&i| dom.0[i] == 0 || dom.0[i] == 1).collect();
        (i0, i01)
    }
}

fn reflect_root_raw(cartan: &[Vec<i64>], i: usize, r: &[i64]) -> Vec<i64> {
    // <β, α_i^∨> = Σ_j b_j C[j][i]
    let p: i64 = r.iter().enumerate().map(|(j, b)| b * cartan[j][i]).sum();
    let mut out = r.to_vec();
    out[i] -= p;
    out
}

fn cartan_matrix(t: RootType, n: usize) -> Vec<Vec<i64>> {
    let mut c = vec![vec![0i64; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        c[i][j] = -1;
        c[j][i] = -1;
    };
    match t {
        RootType::A | RootType::B | RootType::C => {
            for i in 0..n.saturating_sub(1) {
                link(i, i + 1);
            }
        }
        RootType::D => {
            for i in 0..n - 2 {
                link(i, i + 1);
            }
            link(n - 3, n - 1);
        }
        RootType::E => {
            link(0, 2);
            link(1, 3);
            for i in 2..n - 1 {
                link(i, i + 1);
            }
        }
        RootType::F => {
            link(0, 1);
            link(1, 2);
            link(2, 3);
        }
        RootType::G => link(0, 1),
    }
    // Multiple bonds: C[long][short] carries the larger magnitude.
    match t {
        RootType::B => c[n - 2][n - 1] = -2,
        RootType::C => c[n - 1][n - 2] = -2,
        RootType::F => c[1][2] = -2,
        RootType::G => c[1][0] = -3,
        _ => {}
    }
    c
}

/// Integers `d_i ≥ 1`, min 1, with `d_j C[i][j] = d_i C[j][i]`.
fn symmetrizer(c: &[Vec<i64>]) -> Vec<i64> {
    let n = c.len();
    let mut d: Vec<Option<Ratio<i64>>> = vec![None; n];
    d[0] = Some(Ratio::one());
    let mut stack = vec![0];
    while let Some(i) = stack.pop() {
        let di = d[i].unwrap();
        for j in 0..n {
            if j != i && c[i][j] != 0 && d[j].is_none() {
                d[j] = Some(di * Ratio::new(c[j][i], c[i][j]));
                stack.push(j);
            }
        }
    }
    let d: Vec<Ratio<i64>> = d.into_iter().map(|x| x.expect("Dynkin diagram is connected")).collect();
    let min = *d.iter().min().unwrap();
    d.iter()
        .map(|x| {
            let r = x / min;
            debug_assert!(r.is_integer());
            r.to_integer()
        })
        .collect()
}

/// Returns `(M, det C)` with `M = det(C) · (C^T)^{-1}` integral.
fn transpose_inverse_scaled(c: &[Vec<i64>]) -> (Vec<Vec<i64>>, i64) {
    let n = c.len();
    let mut a: Vec<Vec<Ratio<i64>>> = (0..n)
        .map(|i| {
            let mut row: Vec<Ratio<i64>> = (0..n).map(|j| Ratio::from_integer(c[j][i])).collect();
            row.extend((0..n).map(|j| if i == j { Ratio::one() } else { Ratio::zero() }));
            row
        })
        .collect();
    let mut det = Ratio::one();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero()).expect("Cartan matrix is invertible");
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        let p = a[col][col];
        det *= p;
        for x in a[col].iter_mut() {
            *x /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(pivot_row) {
                    *x -= f * y;
                }
            }
        }
    }
    let det = det.to_integer();
    let m = a
        .iter()
        .map(|row| {
            row[n..]
                .iter()
                .map(|x| {
                    let v = *x * Ratio::from_integer(det);
                    debug_assert!(v.is_integer());
                    v.to_integer()
                })
                .collect()
        })
        .collect();
    debug_assert!(det.is_positive());
    (m, det)
}
