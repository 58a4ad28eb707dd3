//! Small dense helpers shared by the algebraic modules.

use nalgebra::{DMatrix, Matrix4};

pub type Mat4 = Matrix4<f64>;
pub type RealMatrix = DMatrix<f64>;

pub fn max_abs4(m: &Mat4) -> f64 {
    m.iter().fold(0.0_f64, |a, x| a.max(x.abs()))
}

pub fn max_abs(m: &RealMatrix) -> f64 {
    m.iter().fold(0.0_f64, |a, x| a.max(x.abs()))
}

pub fn to_dyn(m: &Mat4) -> RealMatrix {
    RealMatrix::from_fn(4, 4, |i, j| m[(i, j)])
}

pub fn kron(a: &RealMatrix, b: &RealMatrix) -> RealMatrix {
    let (ar, ac) = a.shape();
    let (br, bc) = b.shape();
    RealMatrix::from_fn(ar * br, ac * bc, |i, j| {
        a[(i / br, j / bc)] * b[(i % br, j % bc)]
    })
}

/// `m ⊗ m ⊗ ... ⊗ m` with `k` factors; `k = 0` gives the 1×1 identity.
pub fn kron_power(m: &Mat4, k: usize) -> RealMatrix {
    let base = to_dyn(m);
    let mut out = RealMatrix::identity(1, 1);
    for _ in 0..k {
        out = kron(&out, &base);
    }
    out
}

/// Matrix acting as `m` on tensor slot `slot` of a `rank`-fold tensor power of ℝ⁴
/// (slot 0 is the most significant index).
pub fn on_slot(m: &Mat4, slot: usize, rank: usize) -> RealMatrix {
    let mut out = RealMatrix::identity(1, 1);
    for s in 0..rank {
        let f = if s == slot {
            to_dyn(m)
        } else {
            RealMatrix::identity(4, 4)
        };
        out = kron(&out, &f);
    }
    out
}

/// Applies a 4×4 matrix to slot `slot` of a single tensor (length 4^rank), in place.
pub fn apply_slot(m: &Mat4, slot: usize, rank: usize, v: &mut [f64]) {
    debug_assert_eq!(v.len(), 4usize.pow(rank as u32));
    let stride = 4usize.pow((rank - 1 - slot) as u32);
    let block = stride * 4;
    for outer in (0..v.len()).step_by(block) {
        for inner in 0..stride {
            let base = outer + inner;
            let x = [
                v[base],
                v[base + stride],
                v[base + 2 * stride],
                v[base + 3 * stride],
            ];
            for r in 0..4 {
                v[base + r * stride] =
                    m[(r, 0)] * x[0] + m[(r, 1)] * x[1] + m[(r, 2)] * x[2] + m[(r, 3)] * x[3];
            }
        }
    }
}

/// Orthonormal basis (as columns) of the numerical kernel of `a`: right singular
/// vectors whose singular value is below `rel_tol` times the largest one.
pub fn nullspace(a: &RealMatrix, rel_tol: f64) -> RealMatrix {
    kernel_by(a, |s, smax| smax == 0.0 || s <= rel_tol * smax)
}

/// Kernel with an absolute singular-value cutoff, for systems whose scale is
/// known and which may vanish identically.
pub fn nullspace_abs(a: &RealMatrix, abs_tol: f64) -> RealMatrix {
    kernel_by(a, |s, _| s <= abs_tol)
}

fn kernel_by(a: &RealMatrix, in_kernel: impl Fn(f64, f64) -> bool) -> RealMatrix {
    let (rows, cols) = a.shape();
    if cols == 0 {
        return RealMatrix::zeros(0, 0);
    }
    // pad short systems so the SVD returns a full set of right singular vectors
    let a = if rows < cols {
        let mut p = RealMatrix::zeros(cols, cols);
        p.view_mut((0, 0), (rows, cols)).copy_from(a);
        p
    } else {
        a.clone()
    };
    let svd = a.svd(false, true);
    let vt = svd.v_t.expect("v_t requested");
    let smax = svd.singular_values.iter().cloned().fold(0.0_f64, f64::max);
    let keep: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&i| in_kernel(svd.singular_values[i], smax))
        .collect();
    RealMatrix::from_fn(cols, keep.len(), |r, c| vt[(keep[c], r)])
}

/// Kernel of a symmetric positive semidefinite matrix via its eigendecomposition.
pub fn psd_kernel(g: &RealMatrix, rel_tol: f64) -> RealMatrix {
    let n = g.nrows();
    let eig = g.clone().symmetric_eigen();
    let emax = eig.eigenvalues.iter().cloned().fold(0.0_f64, f64::max);
    let keep: Vec<usize> = (0..n)
        .filter(|&i| eig.eigenvalues[i] <= rel_tol * emax.max(f64::MIN_POSITIVE))
        .collect();
    RealMatrix::from_fn(n, keep.len(), |r, c| eig.eigenvectors[(r, keep[c])])
}

/// Matrix exponential by scaling and squaring with a Taylor core.
pub fn expm4(a: &Mat4) -> Mat4 {
    let norm = a.iter().map(|x| x.abs()).sum::<f64>();
    let mut s = 0u32;
    let mut scale = 1.0;
    while norm * scale > 0.25 {
        scale *= 0.5;
        s += 1;
    }
    let x = a * scale;
    let mut term = Mat4::identity();
    let mut sum = Mat4::identity();
    for k in 1..=18 {
        term = term * x / k as f64;
        sum += term;
        if max_abs4(&term) < 1e-18 {
            break;
        }
    }
    for _ in 0..s {
        sum = sum * sum;
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn apply_slot_matches_kron() {
        let m = Mat4::from_fn(|i, j| (i * 4 + j) as f64 * 0.1 - 0.7);
        let rank = 3;
        let v: Vec<f64> = (0..64).map(|i| ((i * 37) % 11) as f64 - 5.0).collect();
        for slot in 0..rank {
            let full = on_slot(&m, slot, rank) * nalgebra::DVector::from_vec(v.clone());
            let mut w = v.clone();
            apply_slot(&m, slot, rank, &mut w);
            for i in 0..64 {
                assert!((full[i] - w[i]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn expm_of_rotation_generator() {
        let mut a = Mat4::zeros();
        a[(0, 1)] = -1.3;
        a[(1, 0)] = 1.3;
        let e = expm4(&a);
        assert!((e[(0, 0)] - 1.3f64.cos()).abs() < 1e-14);
        assert!((e[(1, 0)] - 1.3f64.sin()).abs() < 1e-14);
        assert!((e[(2, 2)] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn expm_matches_nalgebra() {
        let a = Mat4::from_fn(|i, j| ((i + 2 * j) as f64).sin() * 2.0);
        let ours = expm4(&a);
        let theirs = a.exp();
        assert!(max_abs4(&(ours - theirs)) < 1e-10 * max_abs4(&theirs));
    }

    #[test]
    fn nullspace_of_rank_deficient() {
        let a = RealMatrix::from_row_slice(2, 3, &[1.0, 0.0, 0.0, 0.0, 1.0, 0.0]);
        let k = nullspace(&a, 1e-10);
        assert_eq!(k.ncols(), 1);
        assert!((k[(2, 0)].abs() - 1.0).abs() < 1e-12);
    }
}
