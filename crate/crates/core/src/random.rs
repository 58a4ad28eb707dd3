//! Seeded sampling helpers. Every random draw in the crate goes through a
//! `ChaCha8Rng` built from an explicit seed.

use crate::linalg::Mat4;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn normal(r: &mut SeededRng) -> f64 {
    r.sample(StandardNormal)
}

/// Haar-distributed 4×4 orthogonal matrix (QR of a Gaussian matrix with sign fix).
pub fn random_orthogonal4(r: &mut SeededRng) -> Mat4 {
    let g = Mat4::from_fn(|_, _| normal(r));
    let qr = g.qr();
    let (mut q, rr) = (qr.q(), qr.r());
    for j in 0..4 {
        if rr[(j, j)] < 0.0 {
            for i in 0..4 {
                q[(i, j)] = -q[(i, j)];
            }
        }
    }
    q
}

/// Half-angles θ ~ N(0, 1) and boost parameters b ~ N(0, 0.4²) per axis.
pub fn random_params(r: &mut SeededRng) -> crate::group::BoostRotationParams {
    crate::group::BoostRotationParams {
        theta: [normal(r), normal(r), normal(r)],
        b: [0.4 * normal(r), 0.4 * normal(r), 0.4 * normal(r)],
    }
}
