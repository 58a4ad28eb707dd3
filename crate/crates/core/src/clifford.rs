//! Majorana matrices and the real similarity problem between Clifford sets.

use crate::error::{Error, Result};
use crate::linalg::{max_abs4, Mat4, RealMatrix};
use serde::Serialize;

/// Minkowski metric diag(+1, −1, −1, −1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinkowskiMetric;

impl MinkowskiMetric {
    pub const DIAG: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

    pub fn eta(&self) -> Mat4 {
        Mat4::from_diagonal(&nalgebra::Vector4::from(Self::DIAG))
    }

    pub fn dot(&self, a: &[f64; 4], b: &[f64; 4]) -> f64 {
        (0..4).map(|i| Self::DIAG[i] * a[i] * b[i]).sum()
    }
}

/// The real matrices iγ⁰..iγ³ and iγ⁵.
#[derive(Debug, Clone, PartialEq)]
pub struct CliffordBasis {
    pub igamma: [Mat4; 4],
    pub igamma5: Mat4,
}

#[rustfmt::skip]
fn int_mat(rows: [[i8; 4]; 4]) -> Mat4 {
    Mat4::from_fn(|i, j| rows[i][j] as f64)
}

/// The Majorana basis with integer entries.
pub fn build_majorana_basis() -> CliffordBasis {
    let g0 = int_mat([[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]]);
    let g1 = int_mat([[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, -1, 0], [0, 0, 0, 1]]);
    let g2 = int_mat([[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]]);
    let g3 = int_mat([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, -1, 0]]);
    let g5 = int_mat([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]]);
    CliffordBasis {
        igamma: [g0, g1, g2, g3],
        igamma5: g5,
    }
}

impl CliffordBasis {
    pub fn g(&self, mu: usize) -> &Mat4 {
        &self.igamma[mu]
    }

    pub fn g5(&self) -> &Mat4 {
        &self.igamma5
    }

    /// γ⁰γ^j as a real matrix (symmetric boost generator).
    pub fn gamma0_gamma(&self, j: usize) -> Mat4 {
        -(self.igamma[0] * self.igamma[j])
    }

    /// iγ⁵γ⁰γ^j as a real matrix (rotation generator).
    pub fn i_gamma5_gamma0_gamma(&self, j: usize) -> Mat4 {
        -(self.igamma5 * self.igamma[0] * self.igamma[j])
    }

    /// γ³γ⁵ (real symmetric involution; helicity grading).
    pub fn gamma3_gamma5(&self) -> Mat4 {
        -(self.igamma[3] * self.igamma5)
    }

    /// γ⁰γ³ (real symmetric involution; boost grading).
    pub fn gamma0_gamma3(&self) -> Mat4 {
        -(self.igamma[0] * self.igamma[3])
    }

    /// iγ⁰γ³γ⁵ (squares to −1, commutes with iγ⁰).
    pub fn i_gamma0_gamma3_gamma5(&self) -> Mat4 {
        -(self.igamma[0] * self.igamma[3] * self.igamma5)
    }

    /// γ⁰γ⁵.
    pub fn gamma0_gamma5(&self) -> Mat4 {
        -(self.igamma[0] * self.igamma5)
    }

    /// i p̸ = p_μ iγ^μ with indices lowered by η.
    pub fn islash(&self, p: &[f64; 4]) -> Mat4 {
        self.igamma[0] * p[0]
            - self.igamma[1] * p[1]
            - self.igamma[2] * p[2]
            - self.igamma[3] * p[3]
    }

    /// p̸γ⁰ = p⁰ + p^j (iγ^j)(iγ⁰).
    pub fn slash_gamma0(&self, p: &[f64; 4]) -> Mat4 {
        let mut m = Mat4::identity() * p[0];
        for j in 1..4 {
            m += self.igamma[j] * self.igamma[0] * p[j];
        }
        m
    }

    /// γ⁰γ¹γ²γ³ computed from the four generators (the Dirac product equals the
    /// product of the real matrices since (−i)⁴ = 1).
    pub fn gamma_product(&self) -> Mat4 {
        self.igamma[0] * self.igamma[1] * self.igamma[2] * self.igamma[3]
    }

    /// Same matrices conjugated as S·M·S⁻¹.
    pub fn conjugated(&self, s: &Mat4) -> Option<CliffordBasis> {
        let si = s.try_inverse()?;
        Some(CliffordBasis {
            igamma: self.igamma.map(|g| s * g * si),
            igamma5: s * self.igamma5 * si,
        })
    }
}

/// Max-norm of (iγ^μ)(iγ^ν) + (iγ^ν)(iγ^μ) + 2η^{μν} over all pairs.
pub fn anticommutator_residual(basis: &CliffordBasis) -> f64 {
    clifford_residual(&basis.igamma)
}

pub fn clifford_residual(set: &[Mat4; 4]) -> f64 {
    let mut worst = 0.0_f64;
    for mu in 0..4 {
        for nu in mu..4 {
            let mut r = set[mu] * set[nu] + set[nu] * set[mu];
            if mu == nu {
                r += Mat4::identity() * 2.0 * MinkowskiMetric::DIAG[mu];
            }
            worst = worst.max(max_abs4(&r));
        }
    }
    worst
}

/// Max-norm of (iγ^μ)ᵀ(iγ^μ) − I over the five matrices.
pub fn orthogonality_residual(basis: &CliffordBasis) -> f64 {
    basis
        .igamma
        .iter()
        .chain(std::iter::once(&basis.igamma5))
        .map(|g| max_abs4(&(g.transpose() * g - Mat4::identity())))
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct SimilarityTolerances {
    /// Clifford precondition tolerance.
    pub clifford: f64,
    /// Kernel threshold relative to the largest singular value.
    pub kernel_rel: f64,
    /// Sign is fixed by the first row-major entry above this magnitude.
    pub sign_entry: f64,
}

impl Default for SimilarityTolerances {
    fn default() -> Self {
        Self {
            clifford: 1e-8,
            kernel_rel: 1e-10,
            sign_entry: 1e-6,
        }
    }
}

/// The real S with β^μ S = S α^μ, |det S| = 1, sign fixed by the first
/// significant row-major entry being positive.
pub fn solve_real_similarity(a: &[Mat4; 4], b: &[Mat4; 4]) -> Result<Mat4> {
    solve_real_similarity_with(a, b, &SimilarityTolerances::default())
}

pub fn solve_real_similarity_with(
    a: &[Mat4; 4],
    b: &[Mat4; 4],
    tol: &SimilarityTolerances,
) -> Result<Mat4> {
    for set in [a, b] {
        let r = clifford_residual(set);
        if !(r <= tol.clifford) {
            return Err(Error::NotCliffordSet {
                residual: r,
                tolerance: tol.clifford,
            });
        }
    }
    // unknown X in row-major order: x[4i + j] = X_ij
    let mut sys = RealMatrix::zeros(64, 16);
    for mu in 0..4 {
        for i in 0..4 {
            for j in 0..4 {
                let row = 16 * mu + 4 * i + j;
                for k in 0..4 {
                    sys[(row, 4 * k + j)] += b[mu][(i, k)];
                    sys[(row, 4 * i + k)] -= a[mu][(k, j)];
                }
            }
        }
    }
    let kernel = crate::linalg::nullspace(&sys, tol.kernel_rel);
    if kernel.ncols() != 1 {
        return Err(Error::NoSolution {
            kernel_dim: kernel.ncols(),
        });
    }
    let mut s = Mat4::from_fn(|i, j| kernel[(4 * i + j, 0)]);
    let det = s.determinant();
    if det.abs() < 1e-300 {
        return Err(Error::NoSolution { kernel_dim: 1 });
    }
    s /= det.abs().powf(0.25);
    let lead = s
        .transpose()
        .iter()
        .copied()
        .find(|x| x.abs() > tol.sign_entry)
        .unwrap_or(1.0);
    if lead < 0.0 {
        s = -s;
    }
    Ok(s)
}

/// max_μ ‖β^μ S − S α^μ‖∞.
pub fn similarity_residual(a: &[Mat4; 4], b: &[Mat4; 4], s: &Mat4) -> f64 {
    (0..4)
        .map(|mu| max_abs4(&(b[mu] * s - s * a[mu])))
        .fold(0.0, f64::max)
}
