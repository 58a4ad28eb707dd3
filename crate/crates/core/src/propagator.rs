//! The spin-½ propagator by radial quadrature.
//!
//! With p̸γ⁰ = E + (p·g)(iγ⁰) and e^{−iγ⁰p·x} = cos(p·x) − (iγ⁰) sin(p·x),
//! the integrand collapses to cos(p·x)(1 + (p·g)(iγ⁰)/E) − sin(p·x)(m/E)(iγ⁰).
//! Integrating the angles at x = (t, r x̂) leaves
//!
//!   Δ = A + B (x̂·g)(iγ⁰) + C (iγ⁰),
//!   A = (1/2π²) ∫ p² cos(Et) j₀(pr) dp,
//!   B = (1/2π²) ∫ (p³/E) sin(Et) j₁(pr) dp,
//!   C = −(1/2π²) ∫ p² (m/E) sin(Et) j₀(pr) dp,
//!
//! each integrand damped by e^{−p²/(2σ²)} and cut at p_max.
//! As a spatial convolution kernel Δ(t, ·) acts as e^{−iHt}.

use crate::clifford::CliffordBasis;
use crate::error::{Error, Result};
use crate::fields::fourier::evolve;
use crate::fields::{FieldRep, SpinorFieldGrid};
use crate::group::FourVector;
use crate::linalg::{max_abs4, Mat4};
use crate::special::bessel::spherical_bessel;
use crate::special::quadrature::gauss_legendre;
use serde::Serialize;
use std::collections::HashMap;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureSpec {
    pub p_max: f64,
    pub n_radial: usize,
    pub regulator_width: f64,
}

/// (p_max, σ) rungs of the default ladder, each with 256 radial nodes.
pub const DEFAULT_LADDER: [(f64, f64); 3] = [(4.0, 2.0), (8.0, 4.0), (16.0, 8.0)];
pub const DEFAULT_RADIAL_NODES: usize = 256;

impl QuadratureSpec {
    pub fn new(p_max: f64, n_radial: usize, regulator_width: f64) -> Result<Self> {
        if !(p_max > 0.0
            && regulator_width > 0.0
            && p_max.is_finite()
            && regulator_width.is_finite())
        {
            return Err(Error::InvalidGrid(format!(
                "quadrature p_max = {p_max}, sigma = {regulator_width}"
            )));
        }
        if n_radial < 64 {
            return Err(Error::InvalidGrid(format!("n_radial = {n_radial} < 64")));
        }
        Ok(Self {
            p_max,
            n_radial,
            regulator_width,
        })
    }

    pub fn regulator(&self, p: f64) -> f64 {
        (-p * p / (2.0 * self.regulator_width * self.regulator_width)).exp()
    }
}

pub fn default_ladder() -> Vec<QuadratureSpec> {
    DEFAULT_LADDER
        .iter()
        .map(|&(p, s)| QuadratureSpec::new(p, DEFAULT_RADIAL_NODES, s).expect("valid"))
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct PropagatorSample {
    pub x: FourVector,
    pub value: Mat4,
    pub quadrature: QuadratureSpec,
    pub mass: f64,
}

/// The scalar kernels (A, B, C) at time t and radius r.
pub fn radial_kernels(t: f64, r: f64, mass: f64, quad: &QuadratureSpec) -> Result<[f64; 3]> {
    let (nodes, weights) = gauss_legendre(quad.n_radial, 0.0, quad.p_max);
    let mut acc = [0.0; 3];
    for (p, w) in nodes.iter().zip(&weights) {
        let e = (p * p + mass * mass).sqrt();
        let reg = w * quad.regulator(*p);
        let (s, c) = (e * t).sin_cos();
        let j0 = spherical_bessel(0, p * r)?;
        let j1 = spherical_bessel(1, p * r)?;
        acc[0] += reg * p * p * c * j0;
        acc[1] += reg * p * p * p / e * s * j1;
        acc[2] -= reg * p * p * mass / e * s * j0;
    }
    let norm = 1.0 / (2.0 * PI * PI);
    Ok(acc.map(|a| a * norm))
}

fn assemble(k: [f64; 3], dir: [f64; 3], basis: &CliffordBasis) -> Mat4 {
    let g0 = basis.g(0);
    let xg = basis.g(1) * dir[0] + basis.g(2) * dir[1] + basis.g(3) * dir[2];
    Mat4::identity() * k[0] + xg * g0 * k[1] + g0 * k[2]
}

pub fn delta(
    x: &FourVector,
    mass: f64,
    quad: &QuadratureSpec,
    basis: &CliffordBasis,
) -> Result<PropagatorSample> {
    let s = x.spatial();
    let r = (s[0] * s[0] + s[1] * s[1] + s[2] * s[2]).sqrt();
    let dir = if r > 0.0 { s.map(|c| c / r) } else { [0.0; 3] };
    let k = radial_kernels(x.0[0], r, mass, quad)?;
    Ok(PropagatorSample {
        x: *x,
        value: assemble(k, dir, basis),
        quadrature: *quad,
        mass,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanRow {
    pub radius: f64,
    pub rung: usize,
    pub p_max: f64,
    pub regulator_width: f64,
    pub normalized_norm: f64,
}

/// ‖Δ(x)‖∞ / ‖Δ(0)‖∞ for one rung.
pub fn normalized_norm(
    x: &FourVector,
    mass: f64,
    quad: &QuadratureSpec,
    basis: &CliffordBasis,
) -> Result<f64> {
    let origin = delta(&FourVector::new(0.0, 0.0, 0.0, 0.0), mass, quad, basis)?;
    let v = delta(x, mass, quad, basis)?;
    Ok(max_abs4(&v.value) / max_abs4(&origin.value))
}

/// Normalized norms at (0, r ê₃) for every radius and rung.
pub fn causality_scan(
    radii: &[f64],
    mass: f64,
    ladder: &[QuadratureSpec],
    basis: &CliffordBasis,
) -> Result<Vec<ScanRow>> {
    if let Some(r) = radii.iter().find(|r| !(**r > 0.0)) {
        return Err(Error::InvalidGrid(format!(
            "scan radius {r} must be positive"
        )));
    }
    let jobs: Vec<(f64, usize)> = radii
        .iter()
        .flat_map(|&r| (0..ladder.len()).map(move |k| (r, k)))
        .collect();
    let rows = crate::par::map_range(jobs.len(), |i| {
        let (r, k) = jobs[i];
        let q = &ladder[k];
        normalized_norm(&FourVector::new(0.0, 0.0, 0.0, r), mass, q, basis).map(|n| ScanRow {
            radius: r,
            rung: k,
            p_max: q.p_max,
            regulator_width: q.regulator_width,
            normalized_norm: n,
        })
    });
    rows.into_iter().collect()
}

/// Normalized norm at the timelike point (t, 0⃗) for every rung.
pub fn timelike_control(
    t: f64,
    mass: f64,
    ladder: &[QuadratureSpec],
    basis: &CliffordBasis,
) -> Result<Vec<f64>> {
    ladder
        .iter()
        .map(|q| normalized_norm(&FourVector::new(t, 0.0, 0.0, 0.0), mass, q, basis))
        .collect()
}

/// Relative error between e^{−iHt}ψ and the lattice convolution Σ_y Δ(t, x−y)ψ(y)Δx³
/// (nearest periodic images included) on a probe set spread over the grid.
pub fn reproduce_check(
    field: &SpinorFieldGrid,
    t: f64,
    mass: f64,
    quad: &QuadratureSpec,
    basis: &CliffordBasis,
) -> Result<f64> {
    let (probes, values) = convolve_probes(field, t, mass, quad, basis)?;
    let mut psi = field.clone();
    psi.mass = Some(mass);
    let reference = evolve(&psi, -t, basis)?;
    Ok(probe_error(&reference, &probes, &values))
}

pub(crate) fn probe_error(
    reference: &SpinorFieldGrid,
    probes: &[usize],
    values: &[[f64; 4]],
) -> f64 {
    let mut err = 0.0;
    let mut norm = 0.0;
    for (idx, v) in probes.iter().zip(values) {
        let want = reference.point(*idx);
        err += (0..4).map(|c| (v[c] - want[c]).powi(2)).sum::<f64>();
        norm += want.iter().map(|w| w * w).sum::<f64>();
    }
    (err / norm).sqrt()
}

/// Convolution Σ_y Δ(t, x−y)ψ(y)Δx³ at every fourth lattice line, as (flat index, value).
pub(crate) fn convolve_probes(
    field: &SpinorFieldGrid,
    t: f64,
    mass: f64,
    quad: &QuadratureSpec,
    basis: &CliffordBasis,
) -> Result<(Vec<usize>, Vec<[f64; 4]>)> {
    if field.j2 != 1 || field.rep != FieldRep::Coordinate {
        return Err(Error::NotOnShell);
    }
    let grid = field.cartesian()?;
    let n = grid.n as i64;
    let stride = (n / 4).max(1);
    let lines: Vec<i64> = (0..n)
        .filter(|i| (i - n / 2).rem_euclid(stride) == 0)
        .collect();
    let mut probes = Vec::new();
    for &a in &lines {
        for &b in &lines {
            for &c in &lines {
                probes.push([a, b, c]);
            }
        }
    }
    let sep = |p: &[i64; 3], idx: usize, img: [i64; 3]| {
        let (i, j, k) = grid.split(idx);
        [
            p[0] - i as i64 + img[0] * n,
            p[1] - j as i64 + img[1] * n,
            p[2] - k as i64 + img[2] * n,
        ]
    };
    // Δ depends on the lattice separation only through its integer square
    let mut squares = Vec::new();
    for p in &probes {
        for idx in 0..grid.points() {
            for img in images() {
                let d = sep(p, idx, img);
                squares.push(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
            }
        }
    }
    squares.sort_unstable();
    squares.dedup();
    let kernels = crate::par::map_range(squares.len(), |i| {
        radial_kernels(t, (squares[i] as f64).sqrt() * grid.dx, mass, quad)
    });
    let mut cache: HashMap<i64, [f64; 3]> = HashMap::with_capacity(squares.len());
    for (s, k) in squares.iter().zip(kernels) {
        cache.insert(*s, k?);
    }
    let g0 = *basis.g(0);
    let gg0 = [basis.g(1) * g0, basis.g(2) * g0, basis.g(3) * g0];
    let vol = grid.cell_volume();
    let values = crate::par::map_range(probes.len(), |pi| {
        let p = &probes[pi];
        let mut acc = nalgebra::Vector4::zeros();
        for idx in 0..grid.points() {
            let y = nalgebra::Vector4::from_column_slice(field.point(idx));
            for img in images() {
                let d = sep(p, idx, img);
                let s2 = d[0] * d[0] + d[1] * d[1] + d[2] * d[2];
                let k = cache[&s2];
                let mut m = Mat4::identity() * k[0] + g0 * k[2];
                if s2 > 0 {
                    let r = (s2 as f64).sqrt();
                    m += (gg0[0] * d[0] as f64 + gg0[1] * d[1] as f64 + gg0[2] * d[2] as f64)
                        * (k[1] / r);
                }
                acc += m * y;
            }
        }
        [acc[0] * vol, acc[1] * vol, acc[2] * vol, acc[3] * vol]
    });
    let flat = probes
        .iter()
        .map(|p| grid.join(p[0] as usize, p[1] as usize, p[2] as usize))
        .collect();
    Ok((flat, values))
}

fn images() -> impl Iterator<Item = [i64; 3]> {
    (-1..=1).flat_map(|a| (-1..=1).flat_map(move |b| (-1..=1).map(move |c| [a, b, c])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build_majorana_basis;

    #[test]
    fn spec_validation() {
        assert!(QuadratureSpec::new(4.0, 32, 2.0).is_err());
        assert!(QuadratureSpec::new(-1.0, 128, 2.0).is_err());
        assert_eq!(default_ladder().len(), 3);
    }

    #[test]
    fn origin_is_scalar() {
        let b = build_majorana_basis();
        let q = QuadratureSpec::new(4.0, 128, 2.0).unwrap();
        let d = delta(&FourVector::new(0.0, 0.0, 0.0, 0.0), 1.0, &q, &b).unwrap();
        assert!(max_abs4(&(d.value - Mat4::identity() * d.value[(0, 0)])) < 1e-14);
        assert!(d.value[(0, 0)] > 0.0);
    }

    #[test]
    fn rotation_invariant_norm() {
        let b = build_majorana_basis();
        let q = QuadratureSpec::new(4.0, 128, 2.0).unwrap();
        let a = delta(&FourVector::new(0.7, 0.3, -0.5, 1.1), 1.0, &q, &b).unwrap();
        let c = delta(&FourVector::new(0.7, -0.5, 1.1, 0.3), 1.0, &q, &b).unwrap();
        assert!((a.value.norm() - c.value.norm()).abs() < 1e-12);
    }
}
