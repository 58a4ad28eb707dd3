//! Positive-energy projection of complexified fields and its failure to
//! commute with multiplication by a localized bump.
//!
//! A complexified field is a pair (a, b) of real fields standing for a + ib.
//! In Fourier-Majorana space the Hamiltonian acts as −i(iγ⁰)_1 E, so the
//! positive-energy projector is (1 − i(iγ⁰)_1)/2, i.e. (1 + γ⁰)/2.

use super::fourier::{fourier_majorana, inverse_fourier_majorana};
use super::{GridSpec, SpinorFieldGrid};
use crate::clifford::CliffordBasis;
use crate::error::Result;
use crate::linalg::apply_slot;
use crate::random::{normal, rng};

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexField {
    pub re: SpinorFieldGrid,
    pub im: SpinorFieldGrid,
}

impl ComplexField {
    pub fn norm(&self) -> f64 {
        (self.re.inner(&self.re) + self.im.inner(&self.im)).sqrt()
    }

    fn scaled(&self, s: f64) -> Self {
        Self {
            re: self.re.scaled(s),
            im: self.im.scaled(s),
        }
    }

    fn sub(&self, o: &Self) -> Self {
        Self {
            re: self.re.add(&o.re.scaled(-1.0)),
            im: self.im.add(&o.im.scaled(-1.0)),
        }
    }
}

pub fn positive_energy_project(
    field: &ComplexField,
    basis: &CliffordBasis,
) -> Result<ComplexField> {
    let a = fourier_majorana(&field.re, basis)?;
    let b = fourier_majorana(&field.im, basis)?;
    let rank = a.rank();
    let g0 = *basis.g(0);
    let mut ga = a.clone();
    let mut gb = b.clone();
    ga.map_points(|_, v| apply_slot(&g0, 0, rank, v));
    gb.map_points(|_, v| apply_slot(&g0, 0, rank, v));
    // (A + iB) ↦ ((A + g B) + i(B − g A))/2
    let re = a.add(&gb).scaled(0.5);
    let im = b.add(&ga.scaled(-1.0)).scaled(0.5);
    Ok(ComplexField {
        re: inverse_fourier_majorana(&re, basis)?,
        im: inverse_fourier_majorana(&im, basis)?,
    })
}

/// Multiplication by the bump e^{−|x−c|²/(2w²)}.
pub fn bump_multiply(field: &ComplexField, center: [f64; 3], width: f64) -> ComplexField {
    let grid = *field.re.grid().expect("cartesian");
    let bump = move |idx: usize| {
        let x = grid.position(idx);
        let d2 = (0..3).map(|a| (x[a] - center[a]).powi(2)).sum::<f64>();
        (-d2 / (2.0 * width * width)).exp()
    };
    let mut re = field.re.clone();
    let mut im = field.im.clone();
    re.map_points(|idx, v| v.iter_mut().for_each(|x| *x *= bump(idx)));
    im.map_points(|idx, v| v.iter_mut().for_each(|x| *x *= bump(idx)));
    ComplexField { re, im }
}

/// [Λ₊, χ] applied to `field`.
pub fn commutator(field: &ComplexField, width: f64, basis: &CliffordBasis) -> Result<ComplexField> {
    let c = [0.0; 3];
    let a = positive_energy_project(&bump_multiply(field, c, width), basis)?;
    let b = bump_multiply(&positive_energy_project(field, basis)?, c, width);
    Ok(a.sub(&b))
}

pub fn random_complex_field(grid: GridSpec, mass: f64, seed: u64) -> ComplexField {
    let mut r = rng(seed);
    let mut make = || {
        let mut f = SpinorFieldGrid::from_fn(1, Some(mass), grid, |_, _| {});
        f.data.iter_mut().for_each(|x| *x = normal(&mut r));
        f
    };
    let re = make();
    let im = make();
    ComplexField { re, im }
}

/// Lower estimate of the operator norm of [Λ₊, χ] by power iteration on
/// C†C = −C², started from a seeded random field.
pub fn commutator_norm_estimate(
    grid: GridSpec,
    mass: f64,
    width: f64,
    iterations: usize,
    seed: u64,
    basis: &CliffordBasis,
) -> Result<f64> {
    let mut v = random_complex_field(grid, mass, seed);
    v = v.scaled(1.0 / v.norm());
    let mut best = 0.0_f64;
    for _ in 0..iterations.max(1) {
        let cv = commutator(&v, width, basis)?;
        best = best.max(cv.norm() / v.norm());
        let next = commutator(&cv, width, basis)?.scaled(-1.0);
        let n = next.norm();
        if n == 0.0 {
            break;
        }
        v = next.scaled(1.0 / n);
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build_majorana_basis;

    #[test]
    fn projector_is_idempotent() {
        let b = build_majorana_basis();
        let grid = GridSpec::new(8, 0.4).unwrap();
        let f = random_complex_field(grid, 1.0, 3);
        let p = positive_energy_project(&f, &b).unwrap();
        let pp = positive_energy_project(&p, &b).unwrap();
        assert!(pp.sub(&p).norm() < 1e-10 * p.norm());
        // half of a white-noise field lies in each energy sign
        let ratio = p.norm() / f.norm();
        assert!(
            (ratio - std::f64::consts::FRAC_1_SQRT_2).abs() < 0.05,
            "{ratio}"
        );
    }

    #[test]
    fn bump_does_not_commute() {
        let b = build_majorana_basis();
        let grid = GridSpec::new(16, 0.25).unwrap();
        let est = commutator_norm_estimate(grid, 1.0, 0.5, 8, 11, &b).unwrap();
        assert!(est > 0.1, "{est}");
    }
}
