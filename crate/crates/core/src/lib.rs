//! Real (Majorana) representations of the Lorentz and Poincaré groups.
//!
//! The crate builds the Majorana basis of the Clifford algebra, the covering
//! map onto the Lorentz group, real irreducible representations and their
//! commutants, the Fourier-Majorana and Hankel-Majorana transforms of spinor
//! fields, and the spin-½ causal propagator.

// `!(x > 0.0)` rejects NaN on purpose; index loops mirror the tensor algebra.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod clifford;
pub mod error;
pub mod fields;
pub mod group;
pub mod linalg;
pub mod par;
pub mod propagator;
pub mod random;
pub mod rep;
pub mod selftest;
pub mod special;

pub use clifford::{build_majorana_basis, CliffordBasis, MinkowskiMetric};
pub use error::{Error, Result};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
