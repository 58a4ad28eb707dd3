//! The per-index momentum kernel of the Fourier-Majorana transform.
//!
//! In coordinates γ⁰H = m − Σ_j (iγ^j)∂_j is a real operator; on a plane wave
//! e^{ip·x} it becomes m − i p·g with p·g = Σ_j p^j (iγ^j). The factor
//! (E + γ⁰H)/√(2E(E+m)) is therefore the complex matrix
//! K(p) = (E + m − i p·g)/√(2E(E+m)), unitary because p·g is real symmetric
//! with square |p|².

use super::tensor::{apply_all_c, CMat4};
use crate::clifford::CliffordBasis;
use crate::error::{Error, Result};
use crate::linalg::{Mat4, RealMatrix};
use num_complex::Complex64;

#[derive(Debug, Clone, PartialEq)]
pub struct MomentumKernel {
    pub p: [f64; 3],
    pub mass: f64,
    pub energy: f64,
    pub rank: usize,
    factor: CMat4,
}

/// Σ_j p^j (iγ^j).
pub fn p_dot_g(p: &[f64; 3], basis: &CliffordBasis) -> Mat4 {
    basis.g(1) * p[0] + basis.g(2) * p[1] + basis.g(3) * p[2]
}

pub fn energy(p: &[f64; 3], mass: f64) -> f64 {
    (p[0] * p[0] + p[1] * p[1] + p[2] * p[2] + mass * mass).sqrt()
}

fn complex(re: &Mat4, im: &Mat4) -> CMat4 {
    CMat4::from_fn(|i, j| Complex64::new(re[(i, j)], im[(i, j)]))
}

pub fn derive_momentum_kernel(
    p: [f64; 3],
    mass: f64,
    j2: u32,
    basis: &CliffordBasis,
) -> Result<MomentumKernel> {
    let e = energy(&p, mass);
    if e == 0.0 {
        return Err(Error::MasslessZeroMomentum);
    }
    let norm = (2.0 * e * (e + mass)).sqrt();
    let factor = complex(
        &(Mat4::identity() * ((e + mass) / norm)),
        &(-p_dot_g(&p, basis) / norm),
    );
    Ok(MomentumKernel {
        p,
        mass,
        energy: e,
        rank: super::rank_for(j2),
        factor,
    })
}

/// The same expression with the operator ordered as H·γ⁰ acting on the
/// plane wave; kept to show that this ordering does not intertwine iH.
pub fn literal_ordering_kernel(p: [f64; 3], mass: f64, basis: &CliffordBasis) -> Result<CMat4> {
    let e = energy(&p, mass);
    if e == 0.0 {
        return Err(Error::MasslessZeroMomentum);
    }
    let norm = (2.0 * e * (e + mass)).sqrt();
    Ok(complex(
        &(Mat4::identity() * ((e + mass) / norm)),
        &(p_dot_g(&p, basis) / norm),
    ))
}

/// Symbol of iH on one index: iγ⁰(m − i p·g).
pub fn hamiltonian_symbol(p: &[f64; 3], mass: f64, basis: &CliffordBasis) -> CMat4 {
    let g0 = basis.g(0);
    complex(&(g0 * mass), &(-(g0 * p_dot_g(p, basis))))
}

impl MomentumKernel {
    pub fn factor(&self) -> &CMat4 {
        &self.factor
    }

    /// The factor as an 8×8 real matrix acting on (Re, Im) pairs.
    pub fn realified(&self) -> RealMatrix {
        RealMatrix::from_fn(8, 8, |i, j| {
            let z = self.factor[(i % 4, j % 4)];
            match (i / 4, j / 4) {
                (0, 0) | (1, 1) => z.re,
                (0, 1) => -z.im,
                _ => z.im,
            }
        })
    }

    /// ‖KᵀK − 1‖∞ of the realified factor.
    pub fn orthogonality_residual(&self) -> f64 {
        let r = self.realified();
        crate::linalg::max_abs(&(r.transpose() * &r - RealMatrix::identity(8, 8)))
    }

    /// Applies the factor on every index of a complex tensor.
    pub fn apply(&self, v: &mut [Complex64]) {
        apply_all_c(&self.factor, self.rank, v);
    }

    pub fn apply_adjoint(&self, v: &mut [Complex64]) {
        apply_all_c(&self.factor.adjoint(), self.rank, v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build_majorana_basis;
    use crate::linalg::max_abs4;

    #[test]
    fn rest_frame_is_identity() {
        let b = build_majorana_basis();
        let k = derive_momentum_kernel([0.0; 3], 1.3, 1, &b).unwrap();
        assert!((k.factor - CMat4::identity())
            .iter()
            .all(|z| z.norm() < 1e-15));
        assert_eq!(
            derive_momentum_kernel([0.0; 3], 0.0, 1, &b),
            Err(Error::MasslessZeroMomentum)
        );
    }

    #[test]
    fn orthogonal_and_diagonalizing() {
        let b = build_majorana_basis();
        for (p, m) in [
            ([0.3, -1.2, 0.7], 1.0),
            ([2.0, 0.1, -0.4], 0.0),
            ([0.0, 0.0, 5.0], 0.2),
        ] {
            let k = derive_momentum_kernel(p, m, 1, &b).unwrap();
            assert!(k.orthogonality_residual() < 1e-12);
            let h = hamiltonian_symbol(&p, m, &b);
            let conj = k.factor * h * k.factor.adjoint();
            let want = super::super::tensor::to_complex(b.g(0)) * Complex64::new(k.energy, 0.0);
            assert!((conj - want).iter().all(|z| z.norm() < 1e-12));
        }
    }

    #[test]
    fn literal_ordering_fails_to_diagonalize() {
        let b = build_majorana_basis();
        let p = [0.4, 0.9, -0.3];
        let k = literal_ordering_kernel(p, 0.0, &b).unwrap();
        let h = hamiltonian_symbol(&p, 0.0, &b);
        let conj = k * h * k.adjoint();
        let e = energy(&p, 0.0);
        // at m = 0 the literal ordering lands on −E iγ⁰
        let want = super::super::tensor::to_complex(&(-b.g(0) * e));
        assert!((conj - want).iter().all(|z| z.norm() < 1e-12));
        assert!(max_abs4(b.g(0)) > 0.5);
    }
}
