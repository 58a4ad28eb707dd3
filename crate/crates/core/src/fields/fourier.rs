//! Fourier-Majorana transform and the operators it diagonalizes.
//!
//! The forward map is G(p) = Π_k K(p)_k F(p) with F the continuum-normalized
//! Fourier transform, followed by realification ψ̂ = Re G + (iγ⁰)_1 Im G.
//! Since ψ is real, G(−p) = conj G(p), so the inverse recovers
//! Re G = (ψ̂(p) + ψ̂(−p))/2 and Im G = −(iγ⁰)_1 (ψ̂(p) − ψ̂(−p))/2.

use super::fft::{forward_components, inverse_components};
use super::kernel::{derive_momentum_kernel, energy, MomentumKernel};
use super::tensor::{n2_projectors, symmetrize};
use super::{FieldRep, GridSpec, SpinorFieldGrid};
use crate::clifford::CliffordBasis;
use crate::error::{Error, Result};
use crate::linalg::{apply_slot, Mat4};
use num_complex::Complex64;

/// Tolerance on [`bw_residual`] below which a field counts as Bargmann-Wigner.
pub const BW_TOLERANCE: f64 = 1e-6;

fn kernel_at(
    grid: &GridSpec,
    idx: usize,
    mass: f64,
    j2: u32,
    basis: &CliffordBasis,
) -> Option<MomentumKernel> {
    // massless p = 0: the kernel is taken as the identity
    derive_momentum_kernel(grid.effective_momentum(idx), mass, j2, basis).ok()
}

pub fn fourier_majorana(field: &SpinorFieldGrid, basis: &CliffordBasis) -> Result<SpinorFieldGrid> {
    let mass = field.require_mass()?;
    field.require_rep(FieldRep::Coordinate)?;
    let grid = field.cartesian()?;
    let nc = field.ncomp();
    let rank = field.rank();
    let np = grid.points();
    let blocks = forward_components(grid, &field.data, nc);
    let g0 = *basis.g(0);
    let mut out = SpinorFieldGrid::zeros(
        field.j2,
        field.mass,
        FieldRep::Momentum,
        field.layout.clone(),
    );
    crate::par::for_each_chunk_mut(&mut out.data, nc, |idx, dst| {
        let mut v: Vec<Complex64> = (0..nc).map(|c| blocks[c * np + idx]).collect();
        if let Some(k) = kernel_at(&grid, idx, mass, field.j2, basis) {
            k.apply(&mut v);
        }
        realify_into(&v, &g0, rank, dst);
    });
    Ok(out)
}

pub fn inverse_fourier_majorana(
    field: &SpinorFieldGrid,
    basis: &CliffordBasis,
) -> Result<SpinorFieldGrid> {
    let mass = field.require_mass()?;
    field.require_rep(FieldRep::Momentum)?;
    let grid = field.cartesian()?;
    let nc = field.ncomp();
    let rank = field.rank();
    let np = grid.points();
    let g0 = *basis.g(0);
    let per_point: Vec<Vec<Complex64>> = crate::par::map_range(np, |idx| {
        let mut v = unrealify(field.point(idx), field.point(grid.negated(idx)), &g0, rank);
        if let Some(k) = kernel_at(&grid, idx, mass, field.j2, basis) {
            k.apply_adjoint(&mut v);
        }
        v
    });
    let mut blocks = vec![Complex64::new(0.0, 0.0); np * nc];
    for (idx, v) in per_point.iter().enumerate() {
        for c in 0..nc {
            blocks[c * np + idx] = v[c];
        }
    }
    inverse_components(grid, &mut blocks);
    let mut out = SpinorFieldGrid::zeros(
        field.j2,
        field.mass,
        FieldRep::Coordinate,
        field.layout.clone(),
    );
    for idx in 0..np {
        for c in 0..nc {
            out.data[idx * nc + c] = blocks[c * np + idx].re;
        }
    }
    Ok(out)
}

/// dst = Re v + (iγ⁰)_1 Im v.
pub(crate) fn realify_into(v: &[Complex64], g0: &Mat4, rank: usize, dst: &mut [f64]) {
    let mut im: Vec<f64> = v.iter().map(|z| z.im).collect();
    apply_slot(g0, 0, rank, &mut im);
    for ((d, z), i) in dst.iter_mut().zip(v).zip(im) {
        *d = z.re + i;
    }
}

/// Inverse of the realification given the values at p and −p.
pub(crate) fn unrealify(
    at_p: &[f64],
    at_minus_p: &[f64],
    g0: &Mat4,
    rank: usize,
) -> Vec<Complex64> {
    let mut diff: Vec<f64> = at_p
        .iter()
        .zip(at_minus_p)
        .map(|(a, b)| 0.5 * (a - b))
        .collect();
    apply_slot(g0, 0, rank, &mut diff);
    at_p.iter()
        .zip(at_minus_p)
        .zip(diff)
        .map(|((a, b), d)| Complex64::new(0.5 * (a + b), -d))
        .collect()
}

/// Spectral derivatives ∂_1, ∂_2, ∂_3 of every component.
fn gradient(grid: GridSpec, data: &[f64], nc: usize) -> [Vec<f64>; 3] {
    let np = grid.points();
    let blocks = forward_components(grid, data, nc);
    let one = |axis: usize| {
        let mut b = blocks.clone();
        crate::par::for_each_chunk_mut(&mut b, np, |_, block| {
            for (idx, z) in block.iter_mut().enumerate() {
                *z *= Complex64::new(0.0, grid.effective_momentum(idx)[axis]);
            }
        });
        inverse_components(grid, &mut b);
        let mut out = vec![0.0; np * nc];
        for idx in 0..np {
            for c in 0..nc {
                out[idx * nc + c] = b[c * np + idx].re;
            }
        }
        out
    };
    [one(0), one(1), one(2)]
}

/// iH on index `k` (0-based): Σ_j γ⁰γ^j ∂_j + iγ⁰ m, i.e. −(iγ⁰)(iγ^j)∂_j + (iγ⁰)m.
pub fn apply_hamiltonian(
    field: &SpinorFieldGrid,
    k: usize,
    basis: &CliffordBasis,
) -> Result<SpinorFieldGrid> {
    field.require_rep(FieldRep::Coordinate)?;
    let grid = field.cartesian()?;
    if !grid.periodic {
        return Err(Error::NonPeriodicGrid);
    }
    let mass = field.require_mass()?;
    let rank = field.rank();
    let nc = field.ncomp();
    let grad = gradient(grid, &field.data, nc);
    let g0 = *basis.g(0);
    let gen: [Mat4; 3] = [1, 2, 3].map(|j| -(g0 * basis.g(j)));
    let mut out = field.clone();
    crate::par::for_each_chunk_mut(&mut out.data, nc, |idx, dst| {
        let mut acc = vec![0.0; nc];
        for (j, m) in gen.iter().enumerate() {
            let mut d = grad[j][idx * nc..(idx + 1) * nc].to_vec();
            apply_slot(m, k, rank, &mut d);
            acc.iter_mut().zip(d).for_each(|(a, b)| *a += b);
        }
        let mut mterm = dst.to_vec();
        apply_slot(&(g0 * mass), k, rank, &mut mterm);
        for ((d, a), b) in dst.iter_mut().zip(acc).zip(mterm) {
            *d = a + b;
        }
    });
    Ok(out)
}

/// max_k ‖iH_k Ψ − iH_1 Ψ‖ / ‖Ψ‖.
pub fn bw_residual(field: &SpinorFieldGrid, basis: &CliffordBasis) -> Result<f64> {
    let norm = field.norm();
    if norm == 0.0 || field.rank() < 2 {
        return Ok(0.0);
    }
    let h1 = apply_hamiltonian(field, 0, basis)?;
    let mut worst = 0.0_f64;
    for k in 1..field.rank() {
        let hk = apply_hamiltonian(field, k, basis)?;
        let diff = hk.add(&h1.scaled(-1.0));
        worst = worst.max(diff.norm() / norm);
    }
    Ok(worst)
}

/// Projects a coordinate field with j2 ≥ 2 onto the Bargmann-Wigner
/// subspace: in momentum space (iγ⁰)_k ψ̂ = (iγ⁰)_1 ψ̂ for every k, then
/// index symmetrization.
pub fn bw_project(field: &SpinorFieldGrid, basis: &CliffordBasis) -> Result<SpinorFieldGrid> {
    let mut hat = fourier_majorana(field, basis)?;
    let rank = field.rank();
    let g0 = *basis.g(0);
    hat.map_points(|_, v| {
        for k in 1..rank {
            // (1 − (iγ⁰)_1 (iγ⁰)_k)/2
            let mut w = v.to_vec();
            apply_slot(&g0, k, rank, &mut w);
            apply_slot(&g0, 0, rank, &mut w);
            v.iter_mut().zip(w).for_each(|(a, b)| *a = 0.5 * (*a - b));
        }
        symmetrize(v, rank, field.j2 == 0);
    });
    inverse_fourier_majorana(&hat, basis)
}

/// e^{iH_1 t}: multiplication by cos(E t) + (iγ⁰)_1 sin(E t) in momentum space.
pub fn evolve(field: &SpinorFieldGrid, t: f64, basis: &CliffordBasis) -> Result<SpinorFieldGrid> {
    field.require_rep(FieldRep::Coordinate)?;
    if field.j2 >= 2 {
        let r = bw_residual(field, basis)?;
        if r > BW_TOLERANCE {
            return Err(Error::NotBargmannWigner(r));
        }
    }
    let hat = fourier_majorana(field, basis)?;
    let evolved = evolve_momentum(&hat, t, basis)?;
    inverse_fourier_majorana(&evolved, basis)
}

/// The momentum-space half of [`evolve`].
pub fn evolve_momentum(
    hat: &SpinorFieldGrid,
    t: f64,
    basis: &CliffordBasis,
) -> Result<SpinorFieldGrid> {
    hat.require_rep(FieldRep::Momentum)?;
    let mass = hat.require_mass()?;
    let grid = hat.cartesian()?;
    let rank = hat.rank();
    let g0 = *basis.g(0);
    let mut out = hat.clone();
    out.map_points(|idx, v| {
        let e = energy(&grid.effective_momentum(idx), mass);
        let (s, c) = (e * t).sin_cos();
        let mut w = v.to_vec();
        apply_slot(&g0, 0, rank, &mut w);
        v.iter_mut().zip(w).for_each(|(a, b)| *a = c * *a + s * b);
    });
    Ok(out)
}

/// Splits a field into eigencomponents of Σ_k (γ⁰)_1(γ⁰γ³γ⁵)_k; returns
/// (2n, component) pairs whose sum is the input.
pub fn pinor_jn_split(
    field: &SpinorFieldGrid,
    basis: &CliffordBasis,
) -> Vec<(i32, SpinorFieldGrid)> {
    let projectors = n2_projectors(field.rank(), basis);
    projectors
        .into_iter()
        .map(|(label, p)| {
            let mut f = field.clone();
            let nc = field.ncomp();
            f.map_points(|_, v| {
                let x = nalgebra::DVector::from_column_slice(v);
                let y = &p * x;
                v.copy_from_slice(&y.as_slice()[..nc]);
            });
            (label, f)
        })
        .collect()
}
