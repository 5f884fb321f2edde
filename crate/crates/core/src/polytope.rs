//! Discrete permutohedra `Π^Q(λ) = ConvexHull(W λ) ∩ (Q + λ)`, traverse
//! lengths and funny weights.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rootsys::{LengthClass, RootSystem, RootVec};
use crate::weight::Weight;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiscretePermutohedron {
    pub center: Weight,
    /// Sorted lexicographically.
    pub points: Vec<Weight>,
}

impl DiscretePermutohedron {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, mu: &Weight) -> bool {
        self.points.binary_search(mu).is_ok()
    }

    pub fn point_set(&self) -> HashSet<Weight> {
        self.points.iter().cloned().collect()
    }
}

fn require_dominant(lambda: &Weight) -> Result<()> {
    if lambda.is_dominant() {
        Ok(())
    } else {
        Err(Error::NotDominant(lambda.to_string()))
    }
}

/// `μ ∈ Π^Q(λ)`: same `Q`-coset and `μ_dom ≤ λ` in root order.
pub fn perm_contains(rs: &RootSystem, lambda_dom: &Weight, mu: &Weight) -> Result<bool> {
    require_dominant(lambda_dom)?;
    Ok(contains_unchecked(rs, lambda_dom, mu))
}

pub(crate) fn contains_unchecked(rs: &RootSystem, lambda_dom: &Weight, mu: &Weight) -> bool {
    let mu_dom = rs.dominant(mu);
    rs.root_order_leq(&mu_dom, lambda_dom)
}

/// Enumerates `Π^Q(λ)` from its dominant slice `{ν dominant : ν ≤ λ}`
/// expanded by Weyl orbits.
pub fn enumerate_perm(rs: &RootSystem, lambda_dom: &Weight, cap: usize) -> Result<DiscretePermutohedron> {
    require_dominant(lambda_dom)?;
    let n = rs.rank();
    let bounds: Vec<i64> = rs
        .root_coords(lambda_dom)
        .iter()
        .map(|x| x.floor().to_integer())
        .collect();
    let simple: Vec<Weight> = (0..n).map(|i| Weight(rs.cartan[i].clone())).collect();

    let mut points: Vec<Weight> = Vec::new();
    let mut a = vec![0i64; n];
    loop {
        let mut nu = lambda_dom.clone();
        for (j, &aj) in a.iter().enumerate() {
            if aj != 0 {
                for (x, s) in nu.0.iter_mut().zip(&simple[j].0) {
                    *x -= aj * s;
                }
            }
        }
        if nu.is_dominant() {
            points.extend(rs.weyl_orbit(&nu));
            if points.len() > cap {
                return Err(Error::ResourceCap { cap });
            }
        }
        // odometer over 0 ≤ a_j ≤ bounds_j
        let mut j = 0;
        loop {
            if j == n {
                points.sort();
                return Ok(DiscretePermutohedron {
                    center: lambda_dom.clone(),
                    points,
                });
            }
            if a[j] < bounds[j] {
                a[j] += 1;
                break;
            }
            a[j] = 0;
            j += 1;
        }
    }
}

/// Minimal `<μ, α^∨>` over `μ ∈ Π^Q(λ)` with `μ + α ∉ Π^Q(λ)`, by exhaustion.
/// Negative roots are answered by their negatives.
pub fn traverse_bruteforce(rs: &RootSystem, lambda_dom: &Weight, alpha: &RootVec, cap: usize) -> Result<i64> {
    let perm = enumerate_perm(rs, lambda_dom, cap)?;
    let (idx, _) = rs
        .signed_root_index(alpha)
        .ok_or_else(|| Error::NotARoot(alpha.0.clone()))?;
    Ok(traverse_in(rs, &perm, idx))
}

/// Brute-force traverse length of the positive root at `idx` in an already
/// enumerated permutohedron.
pub fn traverse_in(rs: &RootSystem, perm: &DiscretePermutohedron, idx: usize) -> i64 {
    let a = rs.root_weight(idx);
    perm.points
        .iter()
        .filter(|mu| !perm.contains(&(*mu + a)))
        .map(|mu| rs.pairing_idx(mu, idx))
        .min()
        .expect("a finite nonempty point set has a top element in every direction")
}

/// `m_λ(α) = min{c_i : α_i ∈ W(α)}`; the simple roots in `W(α)` are those of
/// the same length.
pub fn m_lambda(rs: &RootSystem, lambda_dom: &Weight, class: LengthClass) -> i64 {
    (0..rs.rank())
        .filter(|&i| rs.simple_class(i) == class)
        .map(|i| lambda_dom.0[i])
        .min()
        .expect("every length class contains a simple root")
}

/// Closed-form traverse length: `m_λ(α)`, minus one when `α` is long and `λ` funny.
pub fn traverse_formula(rs: &RootSystem, lambda_dom: &Weight, alpha: &RootVec) -> Result<i64> {
    let (idx, _) = rs
        .signed_root_index(alpha)
        .ok_or_else(|| Error::NotARoot(alpha.0.clone()))?;
    let class = rs.length_class[idx];
    let m = m_lambda(rs, lambda_dom, class);
    if class == LengthClass::Long && is_funny(rs, lambda_dom)? {
        Ok(m - 1)
    } else {
        Ok(m)
    }
}

/// The unique adjacent (long, short) pair of simple roots, if any.
pub fn long_short_pair(rs: &RootSystem) -> Option<(usize, usize)> {
    if rs.is_simply_laced() {
        return None;
    }
    let n = rs.rank();
    (0..n)
        .flat_map(|l| (0..n).map(move |s| (l, s)))
        .find(|&(l, s)| {
            l != s
                && rs.cartan[l][s] != 0
                && rs.simple_class(l) == LengthClass::Long
                && rs.simple_class(s) == LengthClass::Short
        })
}

/// A dominant weight is funny when `c_s = 0`, `c_l ≥ 1` and `c_i ≥ c_l` for all
/// long simple `α_i`, where `(α_l, α_s)` is the long/short adjacent pair.
pub fn is_funny(rs: &RootSystem, lambda_dom: &Weight) -> Result<bool> {
    require_dominant(lambda_dom)?;
    let Some((l, s)) = long_short_pair(rs) else {
        return Ok(false);
    };
    let c = &lambda_dom.0;
    Ok(c[s] == 0
        && c[l] >= 1
        && (0..rs.rank())
            .filter(|&i| rs.simple_class(i) == LengthClass::Long)
            .all(|i| c[i] >= c[l]))
}
