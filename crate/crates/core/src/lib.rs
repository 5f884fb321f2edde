//! Interval root-firing on the weight lattice of an irreducible
//! crystallographic root system, in exact integer and rational arithmetic.

pub mod ehrhart;
pub mod error;
pub mod export;
pub mod firing;
pub mod limits;
pub mod polytope;
pub mod rootsys;
pub mod weight;

pub use ehrhart::{FitReport, LatticePolynomial};
pub use error::{Error, Result};
pub use firing::{FiringKind, FiringParams, KParam};
pub use limits::Limits;
pub use polytope::DiscretePermutohedron;
pub use rootsys::{CElement, LengthClass, RootSystem, RootType, RootVec, SystemSpec, WeylWord};
pub use weight::Weight;
