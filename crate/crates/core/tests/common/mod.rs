//! Independent oracles shared by the integration tests.
#![allow(dead_code, clippy::needless_range_loop)]

use nalgebra::{DMatrix, Vector4};
use pinrep::fields::{GridSpec, SpinorFieldGrid};
use pinrep::linalg::Mat4;
use pinrep::propagator::QuadratureSpec;
use pinrep::special::quadrature::gauss_legendre;
use pinrep::CliffordBasis;

/// ⟨l μ; j n | J ν⟩ by diagonalization: the highest-weight vector of J is the
/// null vector of J₊ in the M = J sector (Condon-Shortley sign: positive
/// coefficient at μ = l), then lowered with J₋ down to ν. Doubled labels.
pub fn cg_oracle(l2: i32, mu2: i32, j2: i32, n2: i32, jj2: i32, nu2: i32) -> f64 {
    if nu2 != mu2 + n2
        || nu2.abs() > jj2
        || jj2 < (l2 - j2).abs()
        || jj2 > l2 + j2
        || (l2 + j2 + jj2) % 2 != 0
    {
        return 0.0;
    }
    let states: Vec<(i32, i32)> = (-l2..=l2)
        .step_by(2)
        .flat_map(|a| (-j2..=j2).step_by(2).map(move |b| (a, b)))
        .collect();
    let d = states.len();
    let index = |a: i32, b: i32| states.iter().position(|&s| s == (a, b));
    // ladder amplitude √((j − m)(j + m + 1)) in doubled labels
    let up = |j: i32, m: i32| (((j - m) * (j + m + 2)) as f64 / 4.0).sqrt();
    let down = |j: i32, m: i32| (((j + m) * (j - m + 2)) as f64 / 4.0).sqrt();
    let mut jp = DMatrix::<f64>::zeros(d, d);
    let mut jm = DMatrix::<f64>::zeros(d, d);
    for (c, &(a, b)) in states.iter().enumerate() {
        if let Some(r) = index(a + 2, b) {
            jp[(r, c)] += up(l2, a);
        }
        if let Some(r) = index(a, b + 2) {
            jp[(r, c)] += up(j2, b);
        }
        if let Some(r) = index(a - 2, b) {
            jm[(r, c)] += down(l2, a);
        }
        if let Some(r) = index(a, b - 2) {
            jm[(r, c)] += down(j2, b);
        }
    }
    let sector: Vec<usize> = (0..d)
        .filter(|&i| states[i].0 + states[i].1 == jj2)
        .collect();
    let sub = DMatrix::from_fn(d, sector.len(), |r, c| jp[(r, sector[c])]);
    let gram = sub.transpose() * &sub;
    let eig = gram.symmetric_eigen();
    let k = eig.eigenvalues.imin();
    let mut v = DMatrix::<f64>::zeros(d, 1);
    for (c, &s) in sector.iter().enumerate() {
        v[(s, 0)] = eig.eigenvectors[(c, k)];
    }
    let lead = sector
        .iter()
        .copied()
        .max_by_key(|&s| states[s].0)
        .expect("non-empty");
    if v[(lead, 0)] < 0.0 {
        v = -v;
    }
    let mut m = jj2;
    while m > nu2 {
        v = &jm * v;
        v /= v.norm();
        m -= 2;
    }
    index(mu2, n2).map(|i| v[(i, 0)]).unwrap_or(0.0)
}

/// P_l^m(x) from Rodrigues' formula with exact integer polynomial coefficients:
/// (−1)^m (1 − x²)^{m/2} d^{l+m}/dx^{l+m} (x² − 1)^l / (2^l l!).
pub fn legendre_rodrigues(l: u32, m: u32, x: f64) -> f64 {
    // coefficients of (x² − 1)^l, index = power
    let mut c = vec![0i128; 2 * l as usize + 1];
    let mut binom = 1i128;
    for k in 0..=l as usize {
        let sign = if (l as usize - k).is_multiple_of(2) {
            1
        } else {
            -1
        };
        c[2 * k] = sign * binom;
        binom = binom * (l as i128 - k as i128) / (k as i128 + 1);
    }
    for _ in 0..(l + m) {
        c = (1..c.len()).map(|p| c[p] * p as i128).collect();
        if c.is_empty() {
            return 0.0;
        }
    }
    let poly = c.iter().rev().fold(0.0, |acc, &a| acc * x + a as f64);
    let fact: f64 = (1..=l).map(|k| k as f64).product();
    let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
    sign * (1.0 - x * x).powf(m as f64 / 2.0) * poly / (2f64.powi(l as i32) * fact)
}

/// Finite sum of real plane waves with known gradient.
pub struct TrigField {
    pub grid: GridSpec,
    pub modes: Vec<([i64; 3], [f64; 4], [f64; 4])>,
}

impl TrigField {
    pub fn seeded(grid: GridSpec, kmax: i64, seed: u64) -> Self {
        let mut r = pinrep::random::rng(seed);
        let mut modes = Vec::new();
        for a in -kmax..=kmax {
            for b in -kmax..=kmax {
                for c in -kmax..=kmax {
                    let mut cs = [0.0; 4];
                    let mut sn = [0.0; 4];
                    for i in 0..4 {
                        cs[i] = pinrep::random::normal(&mut r);
                        sn[i] = pinrep::random::normal(&mut r);
                    }
                    modes.push(([a, b, c], cs, sn));
                }
            }
        }
        Self { grid, modes }
    }

    /// Value and the three partial derivatives at x.
    pub fn eval(&self, x: [f64; 3]) -> (Vector4<f64>, [Vector4<f64>; 3]) {
        let dp = self.grid.dp();
        let mut v = Vector4::zeros();
        let mut g = [Vector4::zeros(); 3];
        for (k, cs, sn) in &self.modes {
            let kv = [k[0] as f64 * dp, k[1] as f64 * dp, k[2] as f64 * dp];
            let (s, c) = (kv[0] * x[0] + kv[1] * x[1] + kv[2] * x[2]).sin_cos();
            let a = Vector4::from(*cs);
            let b = Vector4::from(*sn);
            v += a * c + b * s;
            for j in 0..3 {
                g[j] += (b * c - a * s) * kv[j];
            }
        }
        (v, g)
    }

    pub fn sampled(&self, mass: f64) -> SpinorFieldGrid {
        SpinorFieldGrid::from_fn(1, Some(mass), self.grid, |x, out| {
            out.copy_from_slice(self.eval(x).0.as_slice());
        })
    }
}

/// Direct lattice quadrature of the Fourier-Majorana integral for one index:
/// Σ_x Δx³ (2π)^{−3/2} (cos p·x − iγ⁰ sin p·x) (E + m − g·∇)ψ(x) / √(2E(E+m)).
pub fn fm_direct(field: &TrigField, mass: f64, p: [f64; 3], basis: &CliffordBasis) -> Vector4<f64> {
    let grid = field.grid;
    let e = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2] + mass * mass).sqrt();
    let g0 = *basis.g(0);
    let mut acc = Vector4::zeros();
    for idx in 0..grid.points() {
        let x = grid.position(idx);
        let (v, grad) = field.eval(x);
        let mut w = v * (e + mass);
        for j in 0..3 {
            w -= basis.g(j + 1) * grad[j];
        }
        let (s, c) = (p[0] * x[0] + p[1] * x[1] + p[2] * x[2]).sin_cos();
        acc += w * c - g0 * w * s;
    }
    acc * grid.cell_volume()
        / (2.0 * std::f64::consts::PI).powf(1.5)
        / (2.0 * e * (e + mass)).sqrt()
}

/// Δ(x) by brute-force spherical-product quadrature of the unreduced integrand
/// (p̸γ⁰ + m) e^{−iγ⁰ p·x} (p̸γ⁰ + m) / ((2π)³ 2E (E + m)), regulated as in `quad`.
pub fn propagator_3d(
    x: [f64; 4],
    mass: f64,
    quad: &QuadratureSpec,
    basis: &CliffordBasis,
    n_r: usize,
    n_theta: usize,
    n_phi: usize,
) -> Mat4 {
    let (rs, rw) = gauss_legendre(n_r, 0.0, quad.p_max);
    let (cs, cw) = gauss_legendre(n_theta, -1.0, 1.0);
    let g0 = *basis.g(0);
    let mut acc = Mat4::zeros();
    for (p, wr) in rs.iter().zip(&rw) {
        let e = (p * p + mass * mass).sqrt();
        let reg = (-p * p / (2.0 * quad.regulator_width.powi(2))).exp();
        for (ct, wc) in cs.iter().zip(&cw) {
            let st = (1.0 - ct * ct).sqrt();
            for k in 0..n_phi {
                let phi = 2.0 * std::f64::consts::PI * k as f64 / n_phi as f64;
                let pv = [e, p * st * phi.cos(), p * st * phi.sin(), p * ct];
                let big = basis.slash_gamma0(&pv) + Mat4::identity() * mass;
                let phase = e * x[0] - (pv[1] * x[1] + pv[2] * x[2] + pv[3] * x[3]);
                let mid = Mat4::identity() * phase.cos() - g0 * phase.sin();
                let w = wr * p * p * wc * 2.0 * std::f64::consts::PI / n_phi as f64 * reg;
                acc += big * mid * big * (w / (2.0 * e * (e + mass)));
            }
        }
    }
    acc / (2.0 * std::f64::consts::PI).powi(3)
}

/// Smooth, rotation-breaking test field on a spherical product grid.
pub fn spherical_test_field(
    j2: u32,
    mass: f64,
    grid: &pinrep::fields::SphericalGrid,
) -> SpinorFieldGrid {
    SpinorFieldGrid::sample_spherical(j2, Some(mass), grid.clone(), |x, c| {
        let g = (-(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]) / 2.0).exp();
        for (k, v) in c.iter_mut().enumerate() {
            let s = k as f64;
            *v = g
                * (0.3 + 0.1 * s + (0.5 - 0.2 * s) * x[0] + 0.4 * x[1] * x[2] - 0.1 * s * x[2]
                    + 0.05 * x[0] * x[0] * x[1]);
        }
    })
}
