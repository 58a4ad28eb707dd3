mod common;

use common::{cg_oracle, legendre_rodrigues, propagator_3d};
use pinrep::build_majorana_basis;
use pinrep::group::FourVector;
use pinrep::linalg::max_abs4;
use pinrep::propagator::{delta, QuadratureSpec};
use pinrep::special::cg::{clebsch_gordan, CouplingLabel};
use pinrep::special::legendre::assoc_legendre;

#[test]
fn cg_known_value() {
    let c = CouplingLabel::new(2, 0, 1, 1, 3, 1);
    assert!((clebsch_gordan(&c) - (2.0f64 / 3.0).sqrt()).abs() < 1e-14);
    assert!((cg_oracle(2, 0, 1, 1, 3, 1) - (2.0f64 / 3.0).sqrt()).abs() < 1e-12);
}

#[test]
fn cg_matches_ladder_oracle_half_integer() {
    for l2 in 0..=5i32 {
        for j2 in 0..=5 {
            for jj2 in (l2 - j2).abs()..=(l2 + j2) {
                for mu2 in (-l2..=l2).step_by(2) {
                    for n2 in (-j2..=j2).step_by(2) {
                        let c = CouplingLabel::new(l2, mu2, j2, n2, jj2, mu2 + n2);
                        let want = cg_oracle(l2, mu2, j2, n2, jj2, mu2 + n2);
                        let got = if c.is_valid() {
                            clebsch_gordan(&c)
                        } else {
                            0.0
                        };
                        assert!((got - want).abs() < 1e-12, "{c:?}: {got} vs {want}");
                    }
                }
            }
        }
    }
}

#[test]
fn legendre_matches_rodrigues() {
    for l in 0..=8u32 {
        for m in 0..=l {
            for k in 0..=20 {
                let x = -1.0 + 0.1 * k as f64;
                let got = assoc_legendre(l, m as i32, x).unwrap();
                let want = legendre_rodrigues(l, m, x);
                assert!(
                    (got - want).abs() < 1e-9 * want.abs().max(1.0),
                    "l={l} m={m} x={x}: {got} vs {want}"
                );
            }
        }
    }
}

#[test]
fn propagator_matches_direct_quadrature() {
    let b = build_majorana_basis();
    let q = QuadratureSpec::new(4.0, 256, 2.0).unwrap();
    let scale = max_abs4(
        &delta(&FourVector::new(0.0, 0.0, 0.0, 0.0), 0.5, &q, &b)
            .unwrap()
            .value,
    );
    for x in [
        [0.3, 0.0, 0.0, 0.0],
        [0.5, 1.0, 0.0, 0.0],
        [1.0, -0.3, 0.8, 0.2],
        [-0.7, 0.0, 2.0, -1.0],
    ] {
        let radial = delta(&FourVector(x), 0.5, &q, &b).unwrap().value;
        let brute = propagator_3d(x, 0.5, &q, &b, 96, 64, 64);
        assert!(max_abs4(&(radial - brute)) < 1e-4 * scale, "{x:?}");
    }
}
