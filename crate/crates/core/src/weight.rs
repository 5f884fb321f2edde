use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// An integral weight in the fundamental-weight basis: `coords[i] = <λ, α_i^∨>`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    /// The fundamental weight `ω_i` (0-based index).
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut c = vec![0; rank];
        c[i] = 1;
        Weight(c)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn scaled(&self, s: i64) -> Self {
        Weight(self.0.iter().map(|c| c * s).collect())
    }

    /// Largest absolute coordinate.
    pub fn max_abs(&self) -> i64 {
        self.0.iter().map(|c| c.abs()).max().unwrap_or(0)
    }

    /// All weights in the coordinate box `[lo, hi]^rank`, lexicographic order.
    pub fn box_points(rank: usize, lo: i64, hi: i64) -> Vec<Weight> {
        let mut out = Vec::new();
        if lo > hi {
            return out;
        }
        let mut cur = vec![lo; rank];
        loop {
            out.push(Weight(cur.clone()));
            let mut i = rank;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if cur[i] < hi {
                    cur[i] += 1;
                    for c in cur.iter_mut().skip(i + 1) {
                        *c = lo;
                    }
                    break;
                }
            }
        }
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for Weight {
    type Err = Error;

    /// Parses `"c1,...,cn"`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let t = s.trim();
        if t.is_empty() {
            return Err(Error::BadWeight(s.to_string()));
        }
        t.split(',')
            .map(|p| p.trim().parse::<i64>())
            .collect::<Result<Vec<_>, _>>()
            .map(Weight)
            .map_err(|_| Error::BadWeight(s.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let w: Weight = "1, -2,3".parse().unwrap();
        assert_eq!(w, Weight(vec![1, -2, 3]));
        assert_eq!(w.to_string(), "1,-2,3");
        assert!("".parse::<Weight>().is_err());
        assert!("1,,2".parse::<Weight>().is_err());
        assert!("a,b".parse::<Weight>().is_err());
    }

    #[test]
    fn box_enumeration() {
        let pts = Weight::box_points(2, -1, 1);
        assert_eq!(pts.len(), 9);
        assert_eq!(pts[0], Weight(vec![-1, -1]));
        assert_eq!(pts[8], Weight(vec![1, 1]));
        assert!(pts.windows(2).all(|w| w[0] < w[1]));
        assert!(Weight::box_points(2, 1, 0).is_empty());
    }
}
