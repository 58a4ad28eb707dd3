//! The invariant suite behind `pinrep selftest`: quick, seeded checks of every
//! module, each reported with its measured value and tolerance.

use crate::clifford::{
    anticommutator_residual, build_majorana_basis, orthogonality_residual, similarity_residual,
    solve_real_similarity, CliffordBasis,
};
use crate::error::Result;
use crate::fields::energy::commutator_norm_estimate;
use crate::fields::lightcone::lightcone_check;
use crate::fields::spherical::{angular_momentum_z, multiply_nu};
use crate::fields::{
    apply_hamiltonian, band_limited, fourier_majorana, hankel_majorana, inverse_fourier_majorana,
    inverse_hankel_majorana, GridSpec, RadialSphericalSpec, SphericalGrid, SpinorFieldGrid,
};
use crate::group::{covering_map, spin_element, FourVector};
use crate::linalg::{max_abs4, Mat4};
use crate::propagator::{default_ladder, delta, timelike_control};
use crate::random::{random_orthogonal4, random_params, rng};
use crate::rep::{build_w_mn, commutant, CommutantKind, RepSpec, Subgroup};
use crate::special::cg::{clebsch_gordan, CouplingLabel};
use crate::special::harmonics::spherical_harmonic;
use crate::special::quadrature::gauss_legendre;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    Below,
    Above,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub value: f64,
    pub tolerance: f64,
    pub bound: Bound,
    pub passed: bool,
}

impl Check {
    fn below(name: &'static str, value: f64, tolerance: f64) -> Self {
        Self {
            name,
            value,
            tolerance,
            bound: Bound::Below,
            passed: value < tolerance,
        }
    }

    fn above(name: &'static str, value: f64, tolerance: f64) -> Self {
        Self {
            name,
            value,
            tolerance,
            bound: Bound::Above,
            passed: value > tolerance,
        }
    }

    /// 0 when the condition holds, 1 otherwise.
    fn flag(name: &'static str, ok: bool) -> Self {
        Self {
            name,
            value: if ok { 0.0 } else { 1.0 },
            tolerance: 0.5,
            bound: Bound::Below,
            passed: ok,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SelftestReport {
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<Check>,
}

pub fn run_selftest(seed: u64) -> Result<SelftestReport> {
    let b = build_majorana_basis();
    let mut checks = Vec::new();
    checks.extend(algebra(&b, seed)?);
    checks.extend(representations(&b, seed)?);
    checks.extend(special_functions()?);
    checks.extend(transforms(&b, seed)?);
    checks.extend(dynamics(&b, seed)?);
    let passed = checks.iter().all(|c| c.passed);
    Ok(SelftestReport {
        seed,
        passed,
        checks,
    })
}

fn algebra(b: &CliffordBasis, seed: u64) -> Result<Vec<Check>> {
    let mut out = vec![
        Check::below("clifford.anticommutator", anticommutator_residual(b), 1e-15),
        Check::below("clifford.orthogonality", orthogonality_residual(b), 1e-15),
    ];
    let mut r = rng(seed);
    let mut hom = 0.0_f64;
    let mut metric = 0.0_f64;
    let mut sign = 0.0_f64;
    for _ in 0..100 {
        let s1 = spin_element(&random_params(&mut r), b);
        let s2 = spin_element(&random_params(&mut r), b);
        let l1 = covering_map(&s1, b)?;
        let l2 = covering_map(&s2, b)?;
        let l12 = covering_map(&s1.mul(&s2), b)?;
        hom = hom.max(max_abs4(&(l12.matrix() - l1.matrix() * l2.matrix())));
        metric = metric.max(l1.metric_residual());
        sign = sign.max(max_abs4(
            &(covering_map(&s1.neg(), b)?.matrix() - l1.matrix()),
        ));
    }
    out.push(Check::below("cover.homomorphism", hom, 1e-10));
    out.push(Check::below("cover.metric", metric, 1e-10));
    out.push(Check::below("cover.sign_blind", sign, 1e-15));
    let mut sim = 0.0_f64;
    let mut det = 0.0_f64;
    for _ in 0..50 {
        let q = random_orthogonal4(&mut r);
        let c = b.conjugated(&q).expect("orthogonal");
        let s = solve_real_similarity(&b.igamma, &c.igamma)?;
        sim = sim
            .max(similarity_residual(&b.igamma, &c.igamma, &s))
            .max(max_abs4(&(s - q)).min(max_abs4(&(s + q))));
        det = det.max((s.determinant().abs() - 1.0).abs());
    }
    out.push(Check::below("similarity.recovery", sim, 1e-8));
    out.push(Check::below("similarity.unit_determinant", det, 1e-10));
    Ok(out)
}

fn representations(b: &CliffordBasis, seed: u64) -> Result<Vec<Check>> {
    let pinor = RepSpec::pinor(b);
    let full = commutant(&pinor, 32, seed)?;
    let rot = commutant(&pinor.restricted(Subgroup::Rotations), 32, seed)?;
    let w11 = commutant(&build_w_mn(1, 1, b)?, 32, seed)?;
    Ok(vec![
        Check::flag(
            "commutant.pinor_full_complex",
            full.kind == CommutantKind::ComplexType,
        ),
        Check::flag(
            "commutant.pinor_rotations_quaternion",
            rot.kind == CommutantKind::QuaternionType,
        ),
        Check::flag(
            "commutant.w_half_half_real",
            w11.kind == CommutantKind::RealType,
        ),
    ])
}

fn special_functions() -> Result<Vec<Check>> {
    // CG orthogonality over J for every coupling with 2J ≤ 6
    let mut cg = 0.0_f64;
    for l2 in (0..=6i32).step_by(2) {
        for j2 in 0..=3i32 {
            for mu2 in (-l2..=l2).step_by(2) {
                for n2 in (-j2..=j2).step_by(2) {
                    let s: f64 = ((l2 - j2).abs()..=(l2 + j2))
                        .step_by(2)
                        .map(|jj2| {
                            clebsch_gordan(&CouplingLabel::new(l2, mu2, j2, n2, jj2, mu2 + n2))
                                .powi(2)
                        })
                        .sum();
                    cg = cg.max((s - 1.0).abs());
                }
            }
        }
    }
    // Y_lμ orthonormality by Gauss-Legendre × trapezoid quadrature
    let (xs, ws) = gauss_legendre(8, -1.0, 1.0);
    let nphi = 12;
    let labels: Vec<(u32, i32)> = (0..=4u32)
        .flat_map(|l| (-(l as i32)..=l as i32).map(move |m| (l, m)))
        .collect();
    let mut samples = Vec::new();
    for (x, w) in xs.iter().zip(&ws) {
        for k in 0..nphi {
            let phi = 2.0 * std::f64::consts::PI * k as f64 / nphi as f64;
            let ys: Vec<(f64, f64)> = labels
                .iter()
                .map(|&(l, m)| spherical_harmonic(l, m, x.acos(), phi))
                .collect::<Result<_>>()?;
            samples.push((w * 2.0 * std::f64::consts::PI / nphi as f64, ys));
        }
    }
    let mut ylm = 0.0_f64;
    for a in 0..labels.len() {
        for c in 0..labels.len() {
            let (mut re, mut im) = (0.0, 0.0);
            for (w, ys) in &samples {
                let (ar, ai) = ys[a];
                let (cr, ci) = ys[c];
                re += w * (ar * cr + ai * ci);
                im += w * (ar * ci - ai * cr);
            }
            let want = if a == c { 1.0 } else { 0.0 };
            ylm = ylm.max((re - want).abs()).max(im.abs());
        }
    }
    Ok(vec![
        Check::below("special.cg_orthogonality", cg, 1e-12),
        Check::below("special.harmonic_orthonormality", ylm, 1e-10),
    ])
}

fn transforms(b: &CliffordBasis, seed: u64) -> Result<Vec<Check>> {
    let grid = GridSpec::new(16, 0.25)?;
    let f = band_limited(grid, 1, 1.0, 3, seed);
    let hat = fourier_majorana(&f, b)?;
    let back = inverse_fourier_majorana(&hat, b)?;
    let h = apply_hamiltonian(&f, 0, b)?;
    let lhs = fourier_majorana(&h, b)?;
    let mut rhs = hat.clone();
    let g0 = *b.g(0);
    rhs.map_points(|idx, v| {
        let e = crate::fields::kernel::energy(&grid.effective_momentum(idx), 1.0);
        let w = g0 * nalgebra::Vector4::from_column_slice(v) * e;
        v.copy_from_slice(w.as_slice());
    });
    let inter = lhs.relative_distance(&rhs);
    let sgrid = SphericalGrid::for_lmax(8, 96, 8.0)?;
    let spec = RadialSphericalSpec::default_for(0.25, 1)?;
    let sf = SpinorFieldGrid::sample_spherical(1, Some(1.0), sgrid.clone(), |x, c| {
        let g = (-(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]) / 2.0).exp();
        c.copy_from_slice(&[
            g * (0.3 + 0.5 * x[0]),
            g * (0.4 * x[1] * x[2]),
            g * (0.5 - 0.2 * x[2]),
            0.1 * g,
        ]);
    });
    let hm = hankel_majorana(&sf, &spec, b)?;
    let hback = inverse_hankel_majorana(&hm, &sgrid, b)?;
    let ang = hankel_majorana(&angular_momentum_z(&sf, 0.5, b)?, &spec, b)?
        .relative_distance(&multiply_nu(&hm, b)?);
    Ok(vec![
        Check::below(
            "fourier.parseval",
            (hat.norm() - f.norm()).abs() / f.norm(),
            1e-8,
        ),
        Check::below("fourier.round_trip", back.relative_distance(&f), 1e-8),
        Check::below("fourier.intertwining", inter, 1e-7),
        Check::below(
            "hankel.parseval",
            (hm.norm() - sf.norm()).abs() / sf.norm(),
            1e-3,
        ),
        Check::below("hankel.round_trip", hback.relative_distance(&sf), 1e-3),
        Check::below("hankel.angular_intertwining", ang, 1e-3),
    ])
}

fn dynamics(b: &CliffordBasis, seed: u64) -> Result<Vec<Check>> {
    let ladder = default_ladder();
    let timelike = timelike_control(2.0, 1.0, &ladder, b)?;
    let q = &ladder[1];
    let mut sym = 0.0_f64;
    for r in [0.5, 1.0, 2.0] {
        let norms: Vec<f64> = (1..4)
            .map(|axis| {
                let mut x = [0.0; 4];
                x[axis] = r;
                delta(&FourVector(x), 1.0, q, b).map(|d| max_abs4(&d.value))
            })
            .collect::<Result<_>>()?;
        sym = sym
            .max((norms[0] - norms[1]).abs())
            .max((norms[1] - norms[2]).abs());
    }
    let origin = delta(&FourVector::new(0.0, 0.0, 0.0, 0.0), 1.0, q, b)?.value;
    let scalar = max_abs4(&(origin - Mat4::identity() * origin[(0, 0)]));
    let lc = lightcone_check(GridSpec::new(32, 0.15)?, 1.0, 0.2, 1.0, b)?;
    let est = commutator_norm_estimate(GridSpec::new(16, 0.25)?, 1.0, 0.5, 8, seed, b)?;
    Ok(vec![
        Check::below("propagator.axis_symmetry", sym, 1e-10),
        Check::below("propagator.origin_scalar", scalar, 1e-12),
        Check::above(
            "propagator.timelike_min",
            timelike.iter().cloned().fold(f64::INFINITY, f64::min),
            1e-2,
        ),
        Check::below("evolve.round_trip", lc.round_trip, 1e-7),
        Check::below("evolve.norm_drift", lc.norm_drift, 1e-8),
        Check::below(
            "evolve.domain_of_dependence",
            lc.outside_ratio / lc.initial_outside_ratio,
            1.0,
        ),
        Check::above("energy.commutator_norm", est, 0.1),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes_and_is_reproducible() {
        let a = run_selftest(7).unwrap();
        if let Some(c) = a.checks.iter().find(|c| !c.passed) {
            panic!("{c:?}");
        }
        let again = run_selftest(7).unwrap();
        assert_eq!(a, again);
    }
}
