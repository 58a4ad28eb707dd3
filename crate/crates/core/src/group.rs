//! Spin group elements, the covering map onto the Lorentz group, the discrete
//! subgroup Ω, standard boosts and little groups.

use crate::clifford::{CliffordBasis, MinkowskiMetric};
use crate::error::{Error, Result};
use crate::linalg::{expm4, max_abs4, Mat4};
use serde::{Deserialize, Serialize};

/// Contravariant four-vector p^μ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FourVector(pub [f64; 4]);

impl FourVector {
    pub fn new(p0: f64, p1: f64, p2: f64, p3: f64) -> Self {
        FourVector([p0, p1, p2, p3])
    }

    /// Builds p^μ from covariant components p_μ.
    pub fn from_covariant(p: [f64; 4]) -> Self {
        FourVector([p[0], -p[1], -p[2], -p[3]])
    }

    /// (E_p, p⃗) with E_p = √(p⃗² + m²).
    pub fn on_shell(mass: f64, p: [f64; 3]) -> Self {
        let e = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2] + mass * mass).sqrt();
        FourVector([e, p[0], p[1], p[2]])
    }

    pub fn spatial(&self) -> [f64; 3] {
        [self.0[1], self.0[2], self.0[3]]
    }

    pub fn minkowski_sq(&self) -> f64 {
        MinkowskiMetric.dot(&self.0, &self.0)
    }

    /// |p⁰ − E_p| for the given mass.
    pub fn shell_defect(&self, mass: f64) -> f64 {
        let s = self.spatial();
        (self.0[0] - (s[0] * s[0] + s[1] * s[1] + s[2] * s[2] + mass * mass).sqrt()).abs()
    }

    pub fn is_on_shell(&self, mass: f64) -> bool {
        self.shell_defect(mass) < 1e-12
    }
}

/// Massless reference momentum: its slash is iγ⁰ + iγ³.
pub const MASSLESS_REFERENCE: FourVector = FourVector([1.0, 0.0, 0.0, -1.0]);

/// Half-angle rotation parameters θ^j and boost parameters b^j
/// (a boost parameter b has rapidity 2b).
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct BoostRotationParams {
    pub theta: [f64; 3],
    pub b: [f64; 3],
}

impl BoostRotationParams {
    pub fn rotation(theta: [f64; 3]) -> Self {
        Self { theta, b: [0.0; 3] }
    }

    pub fn boost(b: [f64; 3]) -> Self {
        Self { theta: [0.0; 3], b }
    }
}

/// A real 4×4 matrix preserving span{iγ^μ} under conjugation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PinElement(Mat4);

impl PinElement {
    /// Wraps `s` after checking |det s| = 1 and that conjugation preserves
    /// the span of the Majorana matrices.
    pub fn new(s: Mat4, basis: &CliffordBasis) -> Result<Self> {
        let det = s.determinant();
        if (det.abs() - 1.0).abs() > 1e-10 {
            return Err(Error::NotMajPreserving {
                residual: (det.abs() - 1.0).abs(),
            });
        }
        let e = PinElement(s);
        let (_, residual) = expand_conjugates(&e, basis);
        if residual > 1e-8 {
            return Err(Error::NotMajPreserving { residual });
        }
        Ok(e)
    }

    pub fn new_unchecked(s: Mat4) -> Self {
        PinElement(s)
    }

    pub fn identity() -> Self {
        PinElement(Mat4::identity())
    }

    pub fn matrix(&self) -> &Mat4 {
        &self.0
    }

    pub fn neg(&self) -> Self {
        PinElement(-self.0)
    }

    pub fn mul(&self, other: &PinElement) -> Self {
        PinElement(self.0 * other.0)
    }

    pub fn inverse(&self) -> Self {
        PinElement(self.0.try_inverse().expect("pin elements are invertible"))
    }
}

/// Λ^μ_ν as a 4×4 matrix with row μ, column ν.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzMatrix(Mat4);

impl LorentzMatrix {
    pub fn matrix(&self) -> &Mat4 {
        &self.0
    }

    /// ‖λᵀηλ − η‖∞.
    pub fn metric_residual(&self) -> f64 {
        let eta = MinkowskiMetric.eta();
        max_abs4(&(self.0.transpose() * eta * self.0 - eta))
    }

    pub fn apply(&self, v: &FourVector) -> FourVector {
        let w = self.0 * nalgebra::Vector4::from(v.0);
        FourVector([w[0], w[1], w[2], w[3]])
    }
}

fn frob_inner(a: &Mat4, b: &Mat4) -> f64 {
    a.component_mul(b).sum() / 4.0
}

/// Coefficients c[μ][ν] of S⁻¹ iγ^μ S in the iγ^ν basis, and the max-norm of
/// the unexpanded remainder.
fn expand_conjugates(s: &PinElement, basis: &CliffordBasis) -> ([[f64; 4]; 4], f64) {
    let si = s.0.try_inverse().unwrap_or_else(Mat4::zeros);
    let mut c = [[0.0; 4]; 4];
    let mut residual = 0.0_f64;
    for mu in 0..4 {
        let m = si * basis.igamma[mu] * s.0;
        let mut rest = m;
        for nu in 0..4 {
            c[mu][nu] = frob_inner(&basis.igamma[nu], &m);
            rest -= basis.igamma[nu] * c[mu][nu];
        }
        residual = residual.max(max_abs4(&rest));
    }
    (c, residual)
}

/// θ^j iγ⁵γ⁰γ^j + b^j γ⁰γ^j.
pub fn spin_generator(params: &BoostRotationParams, basis: &CliffordBasis) -> Mat4 {
    let mut x = Mat4::zeros();
    for j in 0..3 {
        x += basis.i_gamma5_gamma0_gamma(j + 1) * params.theta[j];
        x += basis.gamma0_gamma(j + 1) * params.b[j];
    }
    x
}

pub fn spin_element(params: &BoostRotationParams, basis: &CliffordBasis) -> PinElement {
    PinElement(expm4(&spin_generator(params, basis)))
}

/// Λ(S) from S⁻¹ iγ^μ S = Λ^μ_ν iγ^ν.
pub fn covering_map(s: &PinElement, basis: &CliffordBasis) -> Result<LorentzMatrix> {
    let (c, residual) = expand_conjugates(s, basis);
    if residual > 1e-8 {
        return Err(Error::NotMajPreserving { residual });
    }
    Ok(LorentzMatrix(Mat4::from_fn(|mu, nu| c[mu][nu])))
}

/// Names for the elements of Ω, in the order returned by [`discrete_omega`].
pub const OMEGA_NAMES: [&str; 8] = ["+1", "-1", "+ig0", "-ig0", "+g0g5", "-g0g5", "+ig5", "-ig5"];

/// Ω = {±1, ±iγ⁰, ±γ⁰γ⁵, ±iγ⁵}.
pub fn discrete_omega(basis: &CliffordBasis) -> [PinElement; 8] {
    let one = Mat4::identity();
    let g0 = basis.igamma[0];
    let g05 = basis.gamma0_gamma5();
    let g5 = basis.igamma5;
    [one, -one, g0, -g0, g05, -g05, g5, -g5].map(PinElement)
}

/// α_p = (p̸γ⁰ + m)/(√(E_p+m)√(2m)); maps the rest momentum (m, 0⃗) to p.
pub fn boost_alpha_p(p: &FourVector, mass: f64, basis: &CliffordBasis) -> Result<Mat4> {
    if !(mass > 0.0) {
        return Err(Error::ZeroMass(mass));
    }
    let e = p.0[0];
    let num = basis.slash_gamma0(&p.0) + Mat4::identity() * mass;
    Ok(num / ((e + mass).sqrt() * (2.0 * mass).sqrt()))
}

/// q with q̸ = S p̸ S⁻¹.
pub fn transform_momentum(s: &Mat4, p: &FourVector, basis: &CliffordBasis) -> FourVector {
    let si = s.try_inverse().expect("invertible");
    let m = s * basis.islash(&p.0) * si;
    let q0 = frob_inner(&basis.igamma[0], &m) / frob_inner(&basis.igamma[0], &basis.igamma[0]);
    let mut q = [q0, 0.0, 0.0, 0.0];
    for j in 1..4 {
        q[j] = -frob_inner(&basis.igamma[j], &m) / frob_inner(&basis.igamma[j], &basis.igamma[j]);
    }
    FourVector(q)
}

/// α_p = B R for a lightlike p: R turns the reference direction onto p̂ and
/// B boosts along p̂ with velocity (E²−1)/(E²+1).
pub fn massless_alpha_p(p: &FourVector, basis: &CliffordBasis) -> Result<Mat4> {
    let s = p.spatial();
    let e = (s[0] * s[0] + s[1] * s[1] + s[2] * s[2]).sqrt();
    if e == 0.0 {
        return Err(Error::MasslessZeroMomentum);
    }
    let n = [s[0] / e, s[1] / e, s[2] / e];
    let d = MASSLESS_REFERENCE.spatial();
    // axis d × n, angle between d and n
    let axis = [
        d[1] * n[2] - d[2] * n[1],
        d[2] * n[0] - d[0] * n[2],
        d[0] * n[1] - d[1] * n[0],
    ];
    let sin_a = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
    let cos_a = d[0] * n[0] + d[1] * n[1] + d[2] * n[2];
    let angle = sin_a.atan2(cos_a);
    let unit = if sin_a > 1e-14 {
        [axis[0] / sin_a, axis[1] / sin_a, axis[2] / sin_a]
    } else {
        [1.0, 0.0, 0.0]
    };
    let half = ROTATION_SENSE * angle / 2.0;
    let r = spin_element(
        &BoostRotationParams::rotation(unit.map(|u| u * half)),
        basis,
    );
    let rapidity = e.ln();
    let b = spin_element(
        &BoostRotationParams::boost(n.map(|u| u * BOOST_SENSE * rapidity / 2.0)),
        basis,
    );
    Ok(b.0 * r.0)
}

// Orientation of the spin exponential relative to the vector action of
// `transform_momentum`: spin_element(θ n̂ / 2 · ROTATION_SENSE) turns vectors
// by +θ about n̂, spin_element(η n̂ / 2 · BOOST_SENSE) boosts along +n̂.
const ROTATION_SENSE: f64 = 1.0;
const BOOST_SENSE: f64 = 1.0;

/// ‖g ℓ̸ − ℓ̸ g‖∞.
pub fn little_group_check(g: &PinElement, l: &FourVector, basis: &CliffordBasis) -> f64 {
    let ls = basis.islash(&l.0);
    max_abs4(&(g.0 * ls - ls * g.0))
}

/// (1 + iγ⁵(γ¹a + γ²b)(γ⁰+γ³)) e^{iγ⁰γ³γ⁵θ}.
pub fn se2_element(a: f64, b: f64, theta: f64, basis: &CliffordBasis) -> PinElement {
    let g = &basis.igamma;
    let n = -(basis.igamma5 * (g[1] * a + g[2] * b) * (g[0] + g[3]));
    let y = basis.i_gamma0_gamma3_gamma5();
    let rot = Mat4::identity() * theta.cos() + y * theta.sin();
    PinElement((Mat4::identity() + n) * rot)
}

/// Rotation angle θ of an SE(2) element, read off from tr(W) = 4cos θ and
/// tr(W·iγ⁰γ³γ⁵) = −4 sin θ.
pub fn se2_angle(w: &PinElement, basis: &CliffordBasis) -> f64 {
    let y = basis.i_gamma0_gamma3_gamma5();
    let c = w.0.trace() / 4.0;
    let s = -(w.0 * y).trace() / 4.0;
    s.atan2(c)
}

/// Wigner element α_q⁻¹ S α_p with q the transformed momentum.
pub fn wigner_element(
    s: &PinElement,
    p: &FourVector,
    alpha: impl Fn(&FourVector) -> Result<Mat4>,
    basis: &CliffordBasis,
) -> Result<(PinElement, FourVector)> {
    let q = transform_momentum(&s.0, p, basis);
    let aq = alpha(&q)?
        .try_inverse()
        .ok_or(Error::NoSolution { kernel_dim: 0 })?;
    Ok((PinElement(aq * s.0 * alpha(p)?), q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build_majorana_basis;
    use crate::random::{normal, random_params, rng};

    #[test]
    fn identity_params() {
        let b = build_majorana_basis();
        let s = spin_element(&BoostRotationParams::default(), &b);
        assert_eq!(*s.matrix(), Mat4::identity());
        let l = covering_map(&s, &b).unwrap();
        assert!(max_abs4(&(l.matrix() - Mat4::identity())) < 1e-15);
    }

    #[test]
    fn half_angle_parameters() {
        let b = build_majorana_basis();
        let quarter = spin_element(
            &BoostRotationParams::rotation([0.0, 0.0, std::f64::consts::FRAC_PI_2]),
            &b,
        );
        // rotation by π: squares to the 2π rotation −1
        let sq = quarter.matrix() * quarter.matrix();
        assert!(max_abs4(&(sq + Mat4::identity())) < 1e-13);
        let full = spin_element(
            &BoostRotationParams::rotation([0.0, 0.0, std::f64::consts::PI]),
            &b,
        );
        assert!(max_abs4(&(full.matrix() + Mat4::identity())) < 1e-13);
        let l = covering_map(&full, &b).unwrap();
        assert!(max_abs4(&(l.matrix() - Mat4::identity())) < 1e-13);
    }

    #[test]
    fn spin_elements_are_pin_elements() {
        let b = build_majorana_basis();
        let mut r = rng(3);
        for _ in 0..50 {
            let s = spin_element(&random_params(&mut r), &b);
            assert!((s.matrix().determinant() - 1.0).abs() < 1e-10);
            assert!(PinElement::new(*s.matrix(), &b).is_ok());
        }
    }

    #[test]
    fn z_boost_matches_analytic() {
        let bas = build_majorana_basis();
        for bz in [-0.7, 0.1, 0.35, 1.2] {
            let s = spin_element(&BoostRotationParams::boost([0.0, 0.0, bz]), &bas);
            let l = covering_map(&s, &bas).unwrap();
            let (c, sh) = ((2.0 * bz).cosh(), (2.0 * bz).sinh());
            let mut want = Mat4::identity();
            want[(0, 0)] = c;
            want[(3, 3)] = c;
            want[(0, 3)] = sh;
            want[(3, 0)] = sh;
            assert!(max_abs4(&(l.matrix() - want)) < 1e-10 * c);
        }
    }

    #[test]
    fn rotations_are_orthogonal_and_restricted() {
        let bas = build_majorana_basis();
        let mut r = rng(5);
        for _ in 0..20 {
            let mut p = random_params(&mut r);
            let s = spin_element(&p, &bas);
            let l = covering_map(&s, &bas).unwrap();
            assert!((l.matrix().determinant() - 1.0).abs() < 1e-9);
            assert!(l.matrix()[(0, 0)] >= 1.0 - 1e-12);
            p.b = [0.0; 3];
            let rot = covering_map(&spin_element(&p, &bas), &bas).unwrap();
            let m = rot.matrix();
            assert!(max_abs4(&(m.transpose() * m - Mat4::identity())) < 1e-12);
            assert!(
                max_abs4(
                    &(spin_element(&p, &bas).matrix().transpose()
                        * spin_element(&p, &bas).matrix()
                        - Mat4::identity())
                ) < 1e-12
            );
        }
    }

    #[test]
    fn omega_closure_and_images() {
        let bas = build_majorana_basis();
        let om = discrete_omega(&bas);
        let eta = MinkowskiMetric.eta();
        for e in &om {
            let l = *covering_map(e, &bas).unwrap().matrix();
            let ok = [Mat4::identity(), eta, -eta, -Mat4::identity()]
                .iter()
                .any(|d| max_abs4(&(l - d)) < 1e-14);
            assert!(ok);
        }
        let lg0 = *covering_map(&om[2], &bas).unwrap().matrix();
        assert!(max_abs4(&(lg0 - eta)) < 1e-14 || max_abs4(&(lg0 + eta)) < 1e-14);
        for x in &om {
            for y in &om {
                let p = x.mul(y);
                assert!(om.iter().any(|z| z.matrix() == p.matrix()));
            }
        }
    }

    #[test]
    fn alpha_p_intertwines() {
        let bas = build_majorana_basis();
        let mut r = rng(9);
        let m = 1.3;
        for _ in 0..20 {
            let p = FourVector::on_shell(m, [normal(&mut r), normal(&mut r), normal(&mut r)]);
            let a = boost_alpha_p(&p, m, &bas).unwrap();
            let l = FourVector::new(m, 0.0, 0.0, 0.0);
            let res = max_abs4(&(a * bas.islash(&l.0) - bas.islash(&p.0) * a));
            assert!(res < 1e-10);
            // α_p is symmetric and α_pᵀα_p = p̸γ⁰/m
            assert!(max_abs4(&(a - a.transpose())) < 1e-14);
            let gram = a.transpose() * a;
            assert!(max_abs4(&(gram - bas.slash_gamma0(&p.0) / m)) < 1e-12);
        }
        let rest = boost_alpha_p(&FourVector::on_shell(m, [0.0; 3]), m, &bas).unwrap();
        assert!(max_abs4(&(rest - Mat4::identity())) < 1e-15);
        assert!(matches!(
            boost_alpha_p(&FourVector::on_shell(0.0, [1.0, 0.0, 0.0]), 0.0, &bas),
            Err(Error::ZeroMass(_))
        ));
    }

    #[test]
    fn transform_momentum_matches_covering_map() {
        let bas = build_majorana_basis();
        let mut r = rng(21);
        for _ in 0..10 {
            let s = spin_element(&random_params(&mut r), &bas);
            let p = FourVector::on_shell(0.8, [normal(&mut r), normal(&mut r), normal(&mut r)]);
            let q = transform_momentum(s.matrix(), &p, &bas);
            let lam = covering_map(&s, &bas).unwrap();
            let want = lam.apply(&p);
            for i in 0..4 {
                assert!((q.0[i] - want.0[i]).abs() < 1e-10, "{q:?} {want:?}");
            }
            assert!((q.minkowski_sq() - p.minkowski_sq()).abs() < 1e-10);
        }
    }

    #[test]
    fn massless_alpha_intertwines() {
        let bas = build_majorana_basis();
        let mut r = rng(4);
        let mut dirs: Vec<[f64; 3]> = (0..20)
            .map(|_| [normal(&mut r), normal(&mut r), normal(&mut r)])
            .collect();
        dirs.push([0.0, 0.0, 2.0]);
        dirs.push([0.0, 0.0, -0.5]);
        for d in dirs {
            let p = FourVector::on_shell(0.0, d);
            let a = massless_alpha_p(&p, &bas).unwrap();
            let l = MASSLESS_REFERENCE;
            let res = max_abs4(&(a * bas.islash(&l.0) - bas.islash(&p.0) * a));
            assert!(res < 1e-10, "{d:?} {res}");
        }
    }

    #[test]
    fn little_groups() {
        let bas = build_majorana_basis();
        let rest = FourVector::new(1.0, 0.0, 0.0, 0.0);
        let rot = spin_element(&BoostRotationParams::rotation([0.3, -1.1, 0.7]), &bas);
        assert!(little_group_check(&rot, &rest, &bas) < 1e-10);
        let boost = spin_element(&BoostRotationParams::boost([1.0, 0.0, 0.0]), &bas);
        assert!(little_group_check(&boost, &rest, &bas) > 0.1);
        let reference = FourVector::from_covariant([1.0, 0.0, 0.0, 1.0]);
        assert_eq!(reference, MASSLESS_REFERENCE);
        for (a, b, t) in [(0.3, -0.2, 0.9), (1.5, 2.0, -2.0), (0.0, 0.0, 0.4)] {
            let g = se2_element(a, b, t, &bas);
            assert!(little_group_check(&g, &MASSLESS_REFERENCE, &bas) < 1e-10);
            assert!((se2_angle(&g, &bas) - t).abs() < 1e-12);
        }
    }

    #[test]
    fn se2_structure() {
        let bas = build_majorana_basis();
        assert!(max_abs4(&(se2_element(0.0, 0.0, 0.0, &bas).matrix() - Mat4::identity())) < 1e-15);
        let p = se2_element(0.3, -0.4, 0.0, &bas).mul(&se2_element(1.1, 0.25, 0.0, &bas));
        let want = se2_element(1.4, -0.15, 0.0, &bas);
        assert!(max_abs4(&(p.matrix() - want.matrix())) < 1e-14);
        let th = 0.8;
        let l = covering_map(&se2_element(0.0, 0.0, th, &bas), &bas).unwrap();
        let m = l.matrix();
        // half-angle parameter: the vector turns by 2θ in the x-y block
        let (c, s) = ((2.0 * th).cos(), (2.0 * th).sin());
        assert!((m[(1, 1)] - c).abs() < 1e-12 && (m[(2, 2)] - c).abs() < 1e-12);
        assert!((m[(2, 1)] - s).abs() < 1e-12 && (m[(1, 2)] + s).abs() < 1e-12);
        assert!(m[(1, 3)].abs() < 1e-12 && m[(0, 1)].abs() < 1e-12);
        assert!((m[(0, 0)] - 1.0).abs() < 1e-12 && (m[(3, 3)] - 1.0).abs() < 1e-12);
    }
}
