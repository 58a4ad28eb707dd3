//! Action of the Poincaré group on momentum-space fields.
//!
//! Massive case: (L_S ψ)(p) = √(E'/E) Π_k W_k ψ(p') with p' = Λ(S⁻¹)p and
//! W = α_p⁻¹ S α_{p'} in the little group of the rest momentum.
//! Massless case: the little-group element is reduced to its SE(2) angle θ
//! and acts as (cos θ + iγ⁰γ³γ⁵ sin θ)_k on helicity eigenfields.
//! Translations act as e^{−iγ⁰ p·a} on index 1.
//!
//! Values at p' are looked up when p' is a lattice point and otherwise
//! evaluated from the coordinate field by a direct Fourier sum.

use super::kernel::derive_momentum_kernel;
use super::{
    fourier::inverse_fourier_majorana, fourier::realify_into, FieldRep, GridSpec, SpinorFieldGrid,
};
use crate::clifford::CliffordBasis;
use crate::error::{Error, Result};
use crate::group::{
    boost_alpha_p, massless_alpha_p, se2_angle, wigner_element, FourVector, PinElement,
};
use crate::linalg::{apply_slot, Mat4};
use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MassCase {
    Massive,
    MasslessHelicity,
}

#[derive(Debug, Clone, PartialEq)]
pub enum PoincareElement {
    Lorentz(PinElement),
    Translation(FourVector),
}

const LATTICE_TOL: f64 = 1e-9;
const HELICITY_TOL: f64 = 1e-8;

pub fn poincare_act(
    field: &SpinorFieldGrid,
    element: &PoincareElement,
    case: MassCase,
    basis: &CliffordBasis,
) -> Result<SpinorFieldGrid> {
    field.require_rep(FieldRep::Momentum)?;
    let mass = field.require_mass()?;
    match case {
        MassCase::Massive if !(mass > 0.0) => return Err(Error::ZeroMass(mass)),
        MassCase::MasslessHelicity if mass != 0.0 => return Err(Error::OffShell(mass)),
        _ => {}
    }
    match element {
        PoincareElement::Translation(a) => Ok(translate(field, a, mass, basis)),
        PoincareElement::Lorentz(s) => {
            if case == MassCase::MasslessHelicity {
                helicity_sign(field, basis)?;
            }
            lorentz(field, s, mass, case, basis)
        }
    }
}

fn translate(
    field: &SpinorFieldGrid,
    a: &FourVector,
    mass: f64,
    basis: &CliffordBasis,
) -> SpinorFieldGrid {
    let grid = *field.grid().expect("cartesian");
    let rank = field.rank();
    let g0 = *basis.g(0);
    let mut out = field.clone();
    out.map_points(|idx, v| {
        let p = FourVector::on_shell(mass, grid.effective_momentum(idx));
        let phase = p.0[0] * a.0[0] - p.0[1] * a.0[1] - p.0[2] * a.0[2] - p.0[3] * a.0[3];
        let (s, c) = phase.sin_cos();
        let mut w = v.to_vec();
        apply_slot(&g0, 0, rank, &mut w);
        v.iter_mut().zip(w).for_each(|(x, y)| *x = c * *x - s * y);
    });
    out
}

/// Common sign s with (γ³γ⁵)_k ψ = s ψ on every index.
pub fn helicity_sign(field: &SpinorFieldGrid, basis: &CliffordBasis) -> Result<f64> {
    let h = basis.gamma3_gamma5();
    let rank = field.rank();
    let norm = field.data.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Ok(1.0);
    }
    let residual = |sign: f64| {
        let mut worst = 0.0_f64;
        for k in 0..rank {
            let mut acc = 0.0;
            for v in field.data.chunks(field.ncomp()) {
                let mut w = v.to_vec();
                apply_slot(&h, k, rank, &mut w);
                acc += w
                    .iter()
                    .zip(v)
                    .map(|(a, b)| (a - sign * b).powi(2))
                    .sum::<f64>();
            }
            worst = worst.max(acc.sqrt() / norm);
        }
        worst
    };
    let (rp, rm) = (residual(1.0), residual(-1.0));
    let (sign, r) = if rp <= rm { (1.0, rp) } else { (-1.0, rm) };
    if r > HELICITY_TOL {
        return Err(Error::HelicityViolation(r));
    }
    Ok(sign)
}

/// Index of the lattice point with momentum `q` (periodic), if any.
fn lattice_index(grid: &GridSpec, q: &[f64; 3]) -> Option<usize> {
    let dp = grid.dp();
    let n = grid.n as i64;
    let mut ix = [0usize; 3];
    for a in 0..3 {
        let k = q[a] / dp;
        let r = k.round();
        if (k - r).abs() > LATTICE_TOL * k.abs().max(1.0) {
            return None;
        }
        ix[a] = (r as i64 + n / 2).rem_euclid(n) as usize;
    }
    Some(grid.join(ix[0], ix[1], ix[2]))
}

/// Fourier-Majorana value at an arbitrary momentum from the coordinate field.
fn value_off_lattice(
    coord: &SpinorFieldGrid,
    q: &[f64; 3],
    mass: f64,
    basis: &CliffordBasis,
) -> Result<Vec<f64>> {
    let grid = coord.cartesian()?;
    let nc = coord.ncomp();
    let norm = grid.cell_volume() / (2.0 * std::f64::consts::PI).powf(1.5);
    let mut v = vec![Complex64::new(0.0, 0.0); nc];
    for idx in 0..grid.points() {
        let x = grid.position(idx);
        let ph = Complex64::from_polar(norm, -(q[0] * x[0] + q[1] * x[1] + q[2] * x[2]));
        for (c, val) in coord.point(idx).iter().enumerate() {
            v[c] += ph * *val;
        }
    }
    if let Ok(k) = derive_momentum_kernel(*q, mass, coord.j2, basis) {
        k.apply(&mut v);
    }
    let mut out = vec![0.0; nc];
    realify_into(&v, basis.g(0), coord.rank(), &mut out);
    Ok(out)
}

fn lorentz(
    field: &SpinorFieldGrid,
    s: &PinElement,
    mass: f64,
    case: MassCase,
    basis: &CliffordBasis,
) -> Result<SpinorFieldGrid> {
    let grid = field.cartesian()?;
    let rank = field.rank();
    let nc = field.ncomp();
    let s_inv = s.inverse();
    let y = basis.i_gamma0_gamma3_gamma5();
    // the full lattice momentum keeps Nyquist points distinct from p = 0
    let needs_coord = (0..grid.points()).any(|idx| {
        let p = FourVector::on_shell(mass, grid.momentum(idx));
        let q = crate::group::transform_momentum(s_inv.matrix(), &p, basis);
        lattice_index(&grid, &q.spatial()).is_none()
    });
    let coord = if needs_coord {
        Some(inverse_fourier_majorana(field, basis)?)
    } else {
        None
    };
    let rows: Vec<Result<Vec<f64>>> = crate::par::map_range(grid.points(), |idx| {
        let p = FourVector::on_shell(mass, grid.momentum(idx));
        if p.0[0] == 0.0 {
            return Ok(vec![0.0; nc]);
        }
        let pp = crate::group::transform_momentum(s_inv.matrix(), &p, basis);
        if pp.0[0] < 0.0 || pp.shell_defect(mass) > 1e-8 * pp.0[0].abs().max(1.0) {
            return Err(Error::OffShell(pp.0[0]));
        }
        // outside the Brillouin zone the band-limited field vanishes; the
        // periodic sum would alias it onto interior momenta
        let zone = std::f64::consts::PI / grid.dx * (1.0 + 1e-12);
        if pp.spatial().iter().any(|c| c.abs() > zone) {
            return Ok(vec![0.0; nc]);
        }
        let mut v = match lattice_index(&grid, &pp.spatial()) {
            Some(j) => field.point(j).to_vec(),
            None => value_off_lattice(
                coord.as_ref().expect("coordinate field"),
                &pp.spatial(),
                mass,
                basis,
            )?,
        };
        let w: Mat4 = match case {
            MassCase::Massive => {
                let (w, _) = wigner_element(s, &pp, |k| boost_alpha_p(k, mass, basis), basis)?;
                *w.matrix()
            }
            MassCase::MasslessHelicity => {
                if pp.0[0] == 0.0 {
                    return Ok(vec![0.0; nc]);
                }
                let (w, _) = wigner_element(s, &pp, |k| massless_alpha_p(k, basis), basis)?;
                let theta = se2_angle(&w, basis);
                Mat4::identity() * theta.cos() + y * theta.sin()
            }
        };
        for k in 0..rank {
            apply_slot(&w, k, rank, &mut v);
        }
        let jac = (pp.0[0] / p.0[0]).sqrt();
        v.iter_mut().for_each(|x| *x *= jac);
        Ok(v)
    });
    let mut out = field.clone();
    for (idx, r) in rows.into_iter().enumerate() {
        out.data[idx * nc..(idx + 1) * nc].copy_from_slice(&r?);
    }
    Ok(out)
}
