//! Per-point operations on tensors of Majorana indexes.

use crate::linalg::Mat4;
use num_complex::Complex64;

pub type CMat4 = nalgebra::Matrix4<Complex64>;

/// Applies a complex 4×4 matrix to slot `slot` of a complex tensor of `rank` indexes.
pub fn apply_slot_c(m: &CMat4, slot: usize, rank: usize, v: &mut [Complex64]) {
    let stride = 4usize.pow((rank - 1 - slot) as u32);
    let block = stride * 4;
    for outer in (0..v.len()).step_by(block) {
        for inner in 0..stride {
            let b = outer + inner;
            let x = [v[b], v[b + stride], v[b + 2 * stride], v[b + 3 * stride]];
            for r in 0..4 {
                v[b + r * stride] =
                    m[(r, 0)] * x[0] + m[(r, 1)] * x[1] + m[(r, 2)] * x[2] + m[(r, 3)] * x[3];
            }
        }
    }
}

pub fn apply_slot(m: &Mat4, slot: usize, rank: usize, v: &mut [f64]) {
    crate::linalg::apply_slot(m, slot, rank, v)
}

/// Applies `m` on every slot.
pub fn apply_all(m: &Mat4, rank: usize, v: &mut [f64]) {
    for s in 0..rank {
        apply_slot(m, s, rank, v);
    }
}

pub fn apply_all_c(m: &CMat4, rank: usize, v: &mut [Complex64]) {
    for s in 0..rank {
        apply_slot_c(m, s, rank, v);
    }
}

pub fn to_complex(m: &Mat4) -> CMat4 {
    m.map(|x| Complex64::new(x, 0.0))
}

/// Component index with slots `a` and `b` exchanged.
fn swapped_index(idx: usize, a: usize, b: usize, rank: usize) -> usize {
    let sa = 4usize.pow((rank - 1 - a) as u32);
    let sb = 4usize.pow((rank - 1 - b) as u32);
    let da = (idx / sa) % 4;
    let db = (idx / sb) % 4;
    idx - da * sa - db * sb + db * sa + da * sb
}

/// Average over all index permutations (sign-weighted when `antisymmetric`).
pub fn symmetrize(v: &mut [f64], rank: usize, antisymmetric: bool) {
    if rank < 2 {
        return;
    }
    let perms = permutations(rank);
    let n = v.len();
    let mut out = vec![0.0; n];
    for (perm, sign) in &perms {
        let s = if antisymmetric { *sign } else { 1.0 };
        for idx in 0..n {
            out[permute_index(idx, perm, rank)] += s * v[idx];
        }
    }
    let scale = 1.0 / perms.len() as f64;
    for (a, b) in v.iter_mut().zip(out) {
        *a = b * scale;
    }
}

/// Max deviation from (anti)symmetry under adjacent transpositions.
pub fn symmetry_residual(v: &[f64], rank: usize, antisymmetric: bool) -> f64 {
    let mut worst = 0.0_f64;
    let sign = if antisymmetric { -1.0 } else { 1.0 };
    for s in 0..rank.saturating_sub(1) {
        for idx in 0..v.len() {
            let j = swapped_index(idx, s, s + 1, rank);
            worst = worst.max((v[idx] - sign * v[j]).abs());
        }
    }
    worst
}

fn permute_index(idx: usize, perm: &[usize], rank: usize) -> usize {
    let mut digits = vec![0usize; rank];
    let mut rem = idx;
    for s in (0..rank).rev() {
        digits[s] = rem % 4;
        rem /= 4;
    }
    let mut out = 0;
    for s in 0..rank {
        out = out * 4 + digits[perm[s]];
    }
    out
}

fn permutations(k: usize) -> Vec<(Vec<usize>, f64)> {
    fn rec(prefix: &mut Vec<usize>, left: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, f64)>) {
        if left.is_empty() {
            // sign from inversion count
            let mut inv = 0;
            for i in 0..prefix.len() {
                for j in i + 1..prefix.len() {
                    if prefix[i] > prefix[j] {
                        inv += 1;
                    }
                }
            }
            out.push((prefix.clone(), if inv % 2 == 0 { 1.0 } else { -1.0 }));
            return;
        }
        for i in 0..left.len() {
            let x = left.remove(i);
            prefix.push(x);
            rec(prefix, left, out);
            prefix.pop();
            left.insert(i, x);
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut (0..k).collect(), &mut out);
    out
}

/// N = Σ_k (γ⁰)_1 (γ⁰γ³γ⁵)_k on a rank-`rank` tensor. Its eigenvalues are 2n.
pub fn n2_operator(
    rank: usize,
    basis: &crate::clifford::CliffordBasis,
) -> crate::linalg::RealMatrix {
    use crate::linalg::on_slot;
    // with γ^μ = −i(iγ^μ): (γ⁰)_1(γ⁰γ³γ⁵)_k = −(iγ⁰)_1 (iγ⁰γ³γ⁵)_k
    let g0 = basis.g(0);
    let y = basis.i_gamma0_gamma3_gamma5();
    let dim = 4usize.pow(rank as u32);
    let mut n = crate::linalg::RealMatrix::zeros(dim, dim);
    for k in 0..rank {
        n -= on_slot(g0, 0, rank) * on_slot(&y, k, rank);
    }
    n
}

/// Orthogonal eigenprojectors of [`n2_operator`], keyed by the doubled
/// eigenvalue label 2n (ascending).
pub fn n2_projectors(
    rank: usize,
    basis: &crate::clifford::CliffordBasis,
) -> Vec<(i32, crate::linalg::RealMatrix)> {
    let n = n2_operator(rank, basis);
    let dim = n.nrows();
    let eig = nalgebra::SymmetricEigen::new(n);
    let mut out: Vec<(i32, crate::linalg::RealMatrix)> = Vec::new();
    for i in 0..dim {
        let label = eig.eigenvalues[i].round() as i32;
        let v = eig.eigenvectors.column(i);
        let outer = v * v.transpose();
        match out.iter_mut().find(|(l, _)| *l == label) {
            Some((_, p)) => *p += outer,
            None => out.push((label, outer)),
        }
    }
    out.sort_by_key(|(l, _)| *l);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetrize_is_projection() {
        let mut v: Vec<f64> = (0..64).map(|i| ((i * 13) % 7) as f64 - 3.0).collect();
        symmetrize(&mut v, 3, false);
        assert!(symmetry_residual(&v, 3, false) < 1e-14);
        let w = v.clone();
        symmetrize(&mut v, 3, false);
        assert!(v.iter().zip(&w).all(|(a, b)| (a - b).abs() < 1e-14));
        let mut a: Vec<f64> = (0..16).map(|i| i as f64).collect();
        symmetrize(&mut a, 2, true);
        assert!(symmetry_residual(&a, 2, true) < 1e-14);
    }

    #[test]
    fn n2_has_even_integer_spectrum() {
        let b = crate::build_majorana_basis();
        for rank in 1..4 {
            let n = n2_operator(rank, &b);
            assert!(crate::linalg::max_abs(&(&n - n.transpose())) < 1e-14);
            let eig = nalgebra::SymmetricEigen::new(n);
            for e in eig.eigenvalues.iter() {
                assert!((e - e.round()).abs() < 1e-10);
                assert_eq!((e.round() as i64 - rank as i64).rem_euclid(2), 0);
                assert!(e.abs() <= rank as f64 + 1e-10);
            }
        }
        let labels: Vec<i32> = n2_projectors(1, &b).iter().map(|(l, _)| *l).collect();
        assert_eq!(labels, vec![-1, 1]);
    }

    #[test]
    fn complex_slot_matches_real() {
        let m = Mat4::from_fn(|i, j| (i as f64 - 2.0 * j as f64).sin());
        let v: Vec<f64> = (0..16).map(|i| i as f64 * 0.3).collect();
        let mut r = v.clone();
        apply_slot(&m, 1, 2, &mut r);
        let mut c: Vec<Complex64> = v.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        apply_slot_c(&to_complex(&m), 1, 2, &mut c);
        assert!(r
            .iter()
            .zip(&c)
            .all(|(a, b)| (a - b.re).abs() < 1e-14 && b.im == 0.0));
    }
}
