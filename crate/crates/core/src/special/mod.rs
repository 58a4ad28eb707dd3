//! Spherical Bessel functions, associated Legendre functions, spherical
//! harmonics and Clebsch-Gordan coefficients.

pub mod bessel;
pub mod cg;
pub mod harmonics;
pub mod legendre;
pub mod quadrature;

pub use bessel::spherical_bessel;
pub use cg::{clebsch_gordan, CouplingLabel};
pub use harmonics::{spherical_harmonic, AngularLabel};
pub use legendre::assoc_legendre;
