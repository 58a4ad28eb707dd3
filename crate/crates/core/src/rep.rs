//! Finite-dimensional real representations of the spin group: the W_(m,n)
//! tensor construction, commutant classification, complexification and
//! realification, and the Pauli/Majorana identification Θ.

use crate::clifford::CliffordBasis;
use crate::error::{Error, Result};
use crate::group::{spin_element, BoostRotationParams};
use crate::linalg::{kron_power, max_abs, nullspace, on_slot, Mat4, RealMatrix};
use crate::random::{normal, rng};
use serde::Serialize;
use std::sync::Arc;

pub type Sampler = Arc<dyn Fn(&BoostRotationParams) -> RealMatrix + Send + Sync>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CommutantKind {
    RealType,
    ComplexType,
    QuaternionType,
}

impl CommutantKind {
    pub fn dimension(self) -> usize {
        match self {
            CommutantKind::RealType => 1,
            CommutantKind::ComplexType => 2,
            CommutantKind::QuaternionType => 4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CommutantClass {
    pub kind: CommutantKind,
    pub kernel_dim: usize,
    /// Smallest singular value kept outside the kernel, relative to the largest.
    pub gap: f64,
}

/// Which part of the spin group is sampled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Subgroup {
    Full,
    Rotations,
}

/// A real representation given by a sampler S ↦ ρ(S).
#[derive(Clone)]
pub struct RepSpec {
    pub dim: usize,
    pub label: Option<(u32, u32)>,
    pub sampler: Sampler,
    /// ρ of the six Lie algebra generators (rotations then boosts), when known.
    pub lie_generators: Option<Vec<RealMatrix>>,
    pub complex_structure: Option<RealMatrix>,
    pub subgroup: Subgroup,
    /// Orthonormal subspace basis inside the tensor power (W_(m,n) only).
    pub subspace: Option<(usize, RealMatrix)>,
}

impl std::fmt::Debug for RepSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RepSpec")
            .field("dim", &self.dim)
            .field("label", &self.label)
            .field("subgroup", &self.subgroup)
            .finish()
    }
}

impl RepSpec {
    pub fn sample(&self, params: &BoostRotationParams) -> RealMatrix {
        let p = match self.subgroup {
            Subgroup::Full => *params,
            Subgroup::Rotations => BoostRotationParams {
                b: [0.0; 3],
                ..*params
            },
        };
        (self.sampler)(&p)
    }

    pub fn restricted(&self, subgroup: Subgroup) -> RepSpec {
        let mut r = self.clone();
        r.subgroup = subgroup;
        if subgroup == Subgroup::Rotations {
            r.lie_generators = r.lie_generators.map(|g| g.into_iter().take(3).collect());
        }
        r
    }

    /// The same representation in the basis O: ρ'(S) = O ρ(S) Oᵀ.
    pub fn conjugated(&self, o: &RealMatrix) -> RepSpec {
        let inner = self.sampler.clone();
        let (o1, o2) = (o.clone(), o.transpose());
        let mut r = self.clone();
        r.sampler = Arc::new(move |p| &o1 * inner(p) * &o2);
        r.lie_generators = self
            .lie_generators
            .as_ref()
            .map(|g| g.iter().map(|x| o * x * o.transpose()).collect());
        r.complex_structure = self
            .complex_structure
            .as_ref()
            .map(|j| o * j * o.transpose());
        r.subspace = None;
        r
    }

    /// Pinor: the defining 4-dimensional action S ↦ S.
    pub fn pinor(basis: &CliffordBasis) -> RepSpec {
        build_w_mn(1, 0, basis).expect("supported label")
    }

    /// span{1, γ⁰γ⃗} with A ↦ S A Sᵀ, in the orthonormal basis {1, γ⁰γ¹, γ⁰γ², γ⁰γ³}.
    pub fn vector(basis: &CliffordBasis) -> RepSpec {
        let b = basis.clone();
        let elems: Vec<Mat4> = std::iter::once(Mat4::identity())
            .chain((1..4).map(|j| b.gamma0_gamma(j)))
            .collect();
        let els = elems.clone();
        let sampler: Sampler = Arc::new(move |p| {
            let s = *spin_element(p, &b).matrix();
            let mut out = RealMatrix::zeros(4, 4);
            for (c, e) in els.iter().enumerate() {
                let img = s * e * s.transpose();
                for (r, f) in els.iter().enumerate() {
                    out[(r, c)] = img.component_mul(f).sum() / 4.0;
                }
            }
            out
        });
        let mut gens = Vec::new();
        for g in lie_generators4(basis) {
            let mut out = RealMatrix::zeros(4, 4);
            for (c, e) in elems.iter().enumerate() {
                let img = g * e + e * g.transpose();
                for (r, f) in elems.iter().enumerate() {
                    out[(r, c)] = img.component_mul(f).sum() / 4.0;
                }
            }
            gens.push(out);
        }
        RepSpec {
            dim: 4,
            label: None,
            sampler,
            lie_generators: Some(gens),
            complex_structure: None,
            subgroup: Subgroup::Full,
            subspace: None,
        }
    }

    /// Translations at a fixed momentum p: a ↦ e^{−iγ⁰ p·a}. The sampled
    /// translation takes a⁰ from θ¹ and a⃗ from b⃗.
    pub fn translations_at(p: [f64; 4], basis: &CliffordBasis) -> RepSpec {
        let g0 = basis.igamma[0];
        let sampler: Sampler = Arc::new(move |par| {
            let a = [par.theta[0], par.b[0], par.b[1], par.b[2]];
            let pa = crate::MinkowskiMetric.dot(&p, &a);
            let m = Mat4::identity() * pa.cos() - g0 * pa.sin();
            crate::linalg::to_dyn(&m)
        });
        RepSpec {
            dim: 4,
            label: None,
            sampler,
            lie_generators: None,
            complex_structure: None,
            subgroup: Subgroup::Full,
            subspace: None,
        }
    }

    /// Real-linear action of the spin group on spinors whose scalars are
    /// restricted from ℂ to ℝ: the realification of the Pauli spin-½
    /// representation of SU(2), dim 4, complex structure included.
    pub fn pauli_realified() -> RepSpec {
        let sampler: Sampler = Arc::new(|p| {
            let x = su2_generator_realified(&p.theta);
            let e = crate::linalg::expm4(&x);
            crate::linalg::to_dyn(&e)
        });
        RepSpec {
            dim: 4,
            label: None,
            sampler,
            lie_generators: None,
            complex_structure: Some(crate::linalg::to_dyn(&pauli_i())),
            subgroup: Subgroup::Rotations,
            subspace: None,
        }
    }
}

/// Realified Pauli basis order: (P₊, P₋, iP₊, iP₋).
fn pauli_i() -> Mat4 {
    let mut j = Mat4::zeros();
    j[(2, 0)] = 1.0;
    j[(3, 1)] = 1.0;
    j[(0, 2)] = -1.0;
    j[(1, 3)] = -1.0;
    j
}

/// Realification of a complex 2×2 matrix (re, im) in the (P₊, P₋, iP₊, iP₋) basis.
pub fn realify2(re: [[f64; 2]; 2], im: [[f64; 2]; 2]) -> Mat4 {
    Mat4::from_fn(|r, c| {
        let (rb, cb) = (r / 2, c / 2);
        let (i, j) = (r % 2, c % 2);
        match (rb, cb) {
            (0, 0) | (1, 1) => re[i][j],
            (1, 0) => im[i][j],
            _ => -im[i][j],
        }
    })
}

/// Realified iσ_j: the Pauli matrices times i.
pub fn i_sigma(j: usize) -> Mat4 {
    match j {
        1 => realify2([[0.0, 0.0], [0.0, 0.0]], [[0.0, 1.0], [1.0, 0.0]]),
        2 => realify2([[0.0, 1.0], [-1.0, 0.0]], [[0.0, 0.0], [0.0, 0.0]]),
        _ => realify2([[0.0, 0.0], [0.0, 0.0]], [[1.0, 0.0], [0.0, -1.0]]),
    }
}

fn su2_generator_realified(theta: &[f64; 3]) -> Mat4 {
    (1..=3)
        .map(|j| i_sigma(j) * theta[j - 1])
        .fold(Mat4::zeros(), |a, b| a + b)
}

/// The six 4×4 generators: iγ⁵γ⁰γ^j (rotations) then γ⁰γ^j (boosts).
pub fn lie_generators4(basis: &CliffordBasis) -> Vec<Mat4> {
    (1..4)
        .map(|j| basis.i_gamma5_gamma0_gamma(j))
        .chain((1..4).map(|j| basis.gamma0_gamma(j)))
        .collect()
}

/// dim_ℝ W_(m,n) in the supported range.
pub fn expected_dimension(m2: u32, n2: u32) -> usize {
    let (a, b) = (m2 as usize + 1, n2 as usize + 1);
    match (m2, n2) {
        (0, 0) => 1,
        _ if m2 == n2 => a * a,
        _ => 2 * a * b,
    }
}

fn swap_matrix(slot: usize, rank: usize) -> RealMatrix {
    let n = 4usize.pow(rank as u32);
    let stride = 4usize.pow((rank - 2 - slot) as u32);
    let mut p = RealMatrix::zeros(n, n);
    for idx in 0..n {
        let a = (idx / (stride * 4)) % 4;
        let b = (idx / stride) % 4;
        let swapped = idx - a * stride * 4 - b * stride + b * stride * 4 + a * stride;
        p[(swapped, idx)] = 1.0;
    }
    p
}

/// Permutation exchanging the first `half` indices with the last `half`.
fn block_exchange(half: usize) -> RealMatrix {
    let rank = 2 * half;
    let n = 4usize.pow(rank as u32);
    let block = 4usize.pow(half as u32);
    let mut p = RealMatrix::zeros(n, n);
    for idx in 0..n {
        let (hi, lo) = (idx / block, idx % block);
        p[(lo * block + hi, idx)] = 1.0;
    }
    p
}

/// Restricts the orthonormal columns of `q` to vectors fixed by the involution `t`.
fn restrict(q: &RealMatrix, t: &RealMatrix) -> RealMatrix {
    if q.ncols() == 0 {
        return q.clone();
    }
    let defect = t * q - q;
    // constraints are involutions with unit-scale entries: absolute cutoff
    let v = crate::linalg::nullspace_abs(&defect, 1e-9);
    let mut out = q * v;
    // re-orthonormalize against rounding
    let qr = out.clone().qr();
    out = qr.q().columns(0, out.ncols()).into_owned();
    out
}

/// W_(m,n) built from the tensor power of Pinor with 2m + 2n indices.
pub fn build_w_mn(m2: u32, n2: u32, basis: &CliffordBasis) -> Result<RepSpec> {
    if m2 < n2 {
        return Err(Error::InvalidLabel { m2, n2 });
    }
    if m2 + n2 > 4 {
        return Err(Error::UnsupportedLabel { m2, n2 });
    }
    let (ma, nb) = (m2 as usize, n2 as usize);
    let rank = ma + nb;
    let dim_full = 4usize.pow(rank as u32);
    let mut q = RealMatrix::identity(dim_full, dim_full);
    let g5 = basis.igamma5;
    let pair = |a: usize, b: usize| on_slot(&g5, a, rank) * on_slot(&g5, b, rank);
    // symmetric within each block
    for s in 0..rank.saturating_sub(1) {
        if s + 1 != ma {
            q = restrict(&q, &swap_matrix(s, rank));
        }
    }
    // (iγ⁵)_first (iγ⁵)_k w = −w inside each block
    for k in 1..ma {
        q = restrict(&q, &(-pair(0, k)));
    }
    for k in (ma + 1)..rank {
        q = restrict(&q, &(-pair(ma, k)));
    }
    if nb > 0 {
        if ma == nb {
            q = restrict(&q, &block_exchange(ma));
        }
        q = restrict(&q, &pair(0, ma));
    }
    let dim = q.ncols();
    let b = basis.clone();
    let qs = q.clone();
    let sampler: Sampler = Arc::new(move |p| {
        let s = spin_element(p, &b);
        qs.transpose() * kron_power(s.matrix(), rank) * &qs
    });
    let gens = lie_generators4(basis)
        .iter()
        .map(|x| {
            let mut full = RealMatrix::zeros(dim_full, dim_full);
            for k in 0..rank {
                full += on_slot(x, k, rank);
            }
            q.transpose() * full * &q
        })
        .collect();
    Ok(RepSpec {
        dim,
        label: Some((m2, n2)),
        sampler,
        lie_generators: Some(gens),
        complex_structure: None,
        subgroup: Subgroup::Full,
        subspace: Some((rank, q)),
    })
}

/// ρ ⊕ ρ with the block imaginary unit J = [[0, −I], [I, 0]].
pub fn complexify(rep: &RepSpec) -> RepSpec {
    let d = rep.dim;
    let inner = rep.sampler.clone();
    let double = move |m: &RealMatrix| {
        let mut out = RealMatrix::zeros(2 * d, 2 * d);
        out.view_mut((0, 0), (d, d)).copy_from(m);
        out.view_mut((d, d), (d, d)).copy_from(m);
        out
    };
    let dbl = double;
    let mut j = RealMatrix::zeros(2 * d, 2 * d);
    for i in 0..d {
        j[(d + i, i)] = 1.0;
        j[(i, d + i)] = -1.0;
    }
    RepSpec {
        dim: 2 * d,
        label: rep.label,
        sampler: Arc::new(move |p| dbl(&inner(p))),
        lie_generators: rep
            .lie_generators
            .as_ref()
            .map(|g| g.iter().map(double).collect()),
        complex_structure: Some(j),
        subgroup: rep.subgroup,
        subspace: None,
    }
}

fn sample_params(seed: u64, count: usize, subgroup: Subgroup) -> Vec<BoostRotationParams> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let theta = [normal(&mut r), normal(&mut r), normal(&mut r)];
            let b = [
                0.4 * normal(&mut r),
                0.4 * normal(&mut r),
                0.4 * normal(&mut r),
            ];
            match subgroup {
                Subgroup::Full => BoostRotationParams { theta, b },
                Subgroup::Rotations => BoostRotationParams::rotation(theta),
            }
        })
        .collect()
}

/// Scalars are restricted to ℝ; checks that J is a complex structure commuting
/// with sampled representation matrices.
pub fn realify(rep: &RepSpec, j: &RealMatrix, samples: usize, seed: u64) -> Result<RepSpec> {
    let d = rep.dim;
    if j.shape() != (d, d) {
        return Err(Error::NoComplexStructure {
            residual: f64::INFINITY,
        });
    }
    let sq = j * j + RealMatrix::identity(d, d);
    let mut residual = max_abs(&sq);
    for p in sample_params(seed, samples, rep.subgroup) {
        let m = rep.sample(&p);
        let scale = max_abs(&m).max(1.0);
        residual = residual.max(max_abs(&(j * &m - &m * j)) / scale);
    }
    if residual > 1e-8 {
        return Err(Error::NoComplexStructure { residual });
    }
    let mut out = rep.clone();
    out.complex_structure = Some(j.clone());
    Ok(out)
}

/// Stacks vec(Xρ₁ − ρ₂X) for each sampled element; returns the singular
/// values (descending) and right singular vectors of the compressed system.
fn intertwiner_system(
    mats1: &[RealMatrix],
    mats2: &[RealMatrix],
    d1: usize,
    d2: usize,
) -> (Vec<f64>, RealMatrix) {
    // unknown X is d2×d1, row-major: x[d1*i + j] = X_ij
    let n = d1 * d2;
    let mut r_acc: Option<RealMatrix> = None;
    for (m1, m2) in mats1.iter().zip(mats2) {
        let scale = max_abs(m1).max(max_abs(m2)).max(1e-300);
        let mut k = RealMatrix::zeros(n, n);
        for i in 0..d2 {
            for j in 0..d1 {
                let row = d1 * i + j;
                // (X ρ₁)_ij = Σ_k X_ik ρ₁_kj
                for kk in 0..d1 {
                    k[(row, d1 * i + kk)] += m1[(kk, j)] / scale;
                }
                // (ρ₂ X)_ij = Σ_k ρ₂_ik X_kj
                for kk in 0..d2 {
                    k[(row, d1 * kk + j)] -= m2[(i, kk)] / scale;
                }
            }
        }
        let stacked = match r_acc.take() {
            None => k,
            Some(r) => {
                let mut s = RealMatrix::zeros(r.nrows() + n, n);
                s.view_mut((0, 0), (r.nrows(), n)).copy_from(&r);
                s.view_mut((r.nrows(), 0), (n, n)).copy_from(&k);
                s
            }
        };
        let qr = stacked.qr();
        r_acc = Some(qr.r());
    }
    let r = r_acc.unwrap_or_else(|| RealMatrix::zeros(n, n));
    let mut padded = RealMatrix::zeros(n.max(r.nrows()), n);
    padded.view_mut((0, 0), (r.nrows(), n)).copy_from(&r);
    let svd = padded.svd(false, true);
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
    let vt = svd.v_t.expect("requested");
    let sv: Vec<f64> = order.iter().map(|&i| svd.singular_values[i]).collect();
    let v = RealMatrix::from_fn(n, n, |r, c| vt[(order[c], r)]);
    (sv, v)
}

const KERNEL_REL_TOL: f64 = 1e-8;

fn kernel_from(sv: &[f64], v: &RealMatrix, rel: f64) -> (usize, f64, RealMatrix) {
    let smax = sv.first().copied().unwrap_or(0.0);
    let k = sv.iter().filter(|&&s| s <= rel * smax).count();
    let gap = if k < sv.len() {
        sv[sv.len() - k - 1] / smax
    } else {
        0.0
    };
    let n = v.nrows();
    let basis = v.columns(n - k, k).into_owned();
    (k, gap, basis)
}

/// Basis of matrices X (d₂×d₁, stored as flattened columns) with
/// ρ₂(g)X = Xρ₁(g) on `samples` seeded group elements.
pub fn intertwiner_space(
    rep1: &RepSpec,
    rep2: &RepSpec,
    samples: usize,
    seed: u64,
) -> Vec<RealMatrix> {
    let params = sample_params(seed, samples, rep1.subgroup);
    let m1: Vec<RealMatrix> = params.iter().map(|p| rep1.sample(p)).collect();
    let m2: Vec<RealMatrix> = params.iter().map(|p| rep2.sample(p)).collect();
    let (sv, v) = intertwiner_system(&m1, &m2, rep1.dim, rep2.dim);
    let (_, _, basis) = kernel_from(&sv, &v, KERNEL_REL_TOL);
    (0..basis.ncols())
        .map(|c| RealMatrix::from_fn(rep2.dim, rep1.dim, |i, j| basis[(rep1.dim * i + j, c)]))
        .collect()
}

fn commutant_basis(rep: &RepSpec, samples: usize, seed: u64) -> (usize, f64, Vec<RealMatrix>) {
    let params = sample_params(seed, samples, rep.subgroup);
    let mats: Vec<RealMatrix> = params.iter().map(|p| rep.sample(p)).collect();
    let (sv, v) = intertwiner_system(&mats, &mats, rep.dim, rep.dim);
    let (k, gap, basis) = kernel_from(&sv, &v, KERNEL_REL_TOL);
    let d = rep.dim;
    let elems = (0..k)
        .map(|c| RealMatrix::from_fn(d, d, |i, j| basis[(d * i + j, c)]))
        .collect();
    (k, gap, elems)
}

/// Kernel dimension of the commutant from `samples` seeded group elements and
/// its classification. The computation is repeated with twice the samples
/// and must agree.
pub fn commutant(rep: &RepSpec, samples: usize, seed: u64) -> Result<CommutantClass> {
    let samples = samples.max(8);
    let (k, gap, elems) = commutant_basis(rep, samples, seed);
    let (k2, _, _) = commutant_basis(rep, 2 * samples, seed.wrapping_add(0x9e37_79b9_7f4a_7c15));
    if k != k2 {
        return Err(Error::UnexpectedDimension {
            kernel_dim: k,
            reason: format!("kernel dimension changed to {k2} when doubling samples"),
        });
    }
    let kind = match k {
        1 => CommutantKind::RealType,
        2 | 4 => {
            if !is_division_algebra(&elems) {
                return Err(Error::UnexpectedDimension {
                    kernel_dim: k,
                    reason: "commutant is not a division algebra (representation is reducible)"
                        .into(),
                });
            }
            if k == 2 {
                CommutantKind::ComplexType
            } else {
                CommutantKind::QuaternionType
            }
        }
        _ => {
            return Err(Error::UnexpectedDimension {
                kernel_dim: k,
                reason: "not 1, 2 or 4".into(),
            })
        }
    };
    Ok(CommutantClass {
        kind,
        kernel_dim: k,
        gap,
    })
}

/// The traceless part of the algebra must square into negative multiples of
/// the identity (ℂ or ℍ) rather than being indefinite (ℝ⊕ℝ, M₂(ℝ)).
fn is_division_algebra(elems: &[RealMatrix]) -> bool {
    let d = elems[0].nrows();
    let id = RealMatrix::identity(d, d);
    // traceless parts, orthonormalized under the trace form
    let mut tl: Vec<RealMatrix> = Vec::new();
    for e in elems {
        let mut x = e - &id * (e.trace() / d as f64);
        for t in &tl {
            let c = (t.transpose() * &x).trace() / (t.transpose() * t).trace();
            x -= t * c;
        }
        if max_abs(&x) > 1e-6 {
            tl.push(x);
        }
    }
    if tl.len() != elems.len() - 1 {
        return false;
    }
    let n = tl.len();
    let mut form = RealMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let prod = &tl[i] * &tl[j] + &tl[j] * &tl[i];
            let s = prod.trace() / (2.0 * d as f64);
            // anticommutators of traceless quaternion units are scalars
            if max_abs(&(prod - &id * (2.0 * s))) > 1e-6 * max_abs(&tl[i]) * max_abs(&tl[j]) {
                return false;
            }
            form[(i, j)] = s;
        }
    }
    form.symmetric_eigen().eigenvalues.iter().all(|&e| e < 0.0)
}

/// Norm of the part of G^{⊗k} Q leaving span Q, G = iγ⁰ per tensor index.
pub fn parity_closure_check(rep: &RepSpec, basis: &CliffordBasis) -> Result<f64> {
    let (rank, q) = rep
        .subspace
        .clone()
        .ok_or(Error::InvalidLabel { m2: 0, n2: 0 })?;
    let g = kron_power(&basis.igamma[0], rank);
    Ok(closure_residual(&q, &g))
}

/// ‖(I − QQᵀ) G Q‖∞ for orthonormal Q.
pub fn closure_residual(q: &RealMatrix, g: &RealMatrix) -> f64 {
    let gq = g * q;
    let leak = &gq - q * (q.transpose() * &gq);
    max_abs(&leak)
}

/// The +1 eigenspace of the Dirac γ⁵ on complexified Pinor (realified as ℝ⁸)
/// and the realified parity iγ⁰; returns the closure residual.
pub fn chiral_contrast_residual(basis: &CliffordBasis) -> f64 {
    let pin = complexify(&RepSpec::pinor(basis));
    let j = pin.complex_structure.clone().expect("complexified");
    let g5 = crate::linalg::to_dyn(&basis.igamma5);
    let mut g5d = RealMatrix::zeros(8, 8);
    g5d.view_mut((0, 0), (4, 4)).copy_from(&g5);
    g5d.view_mut((4, 4), (4, 4)).copy_from(&g5);
    // γ⁵ = −i·(iγ⁵)
    let gamma5 = -(&j * &g5d);
    let q = nullspace(&(gamma5 - RealMatrix::identity(8, 8)), 1e-10);
    let g0 = crate::linalg::to_dyn(&basis.igamma[0]);
    let mut pd = RealMatrix::zeros(8, 8);
    pd.view_mut((0, 0), (4, 4)).copy_from(&g0);
    pd.view_mut((4, 4), (4, 4)).copy_from(&g0);
    closure_residual(&q, &pd)
}

/// Grading used to define M±.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Grading {
    /// γ³γ⁵ M± = ±M±, partner iγ⁰.
    Helicity,
    /// γ⁰γ³ M± = ±M±, partner iγ⁵.
    Boost,
}

/// Θ: columns are the images (M₊, M₋, P·M₊, P·M₋) of the realified Pauli basis
/// (P₊, P₋, iP₊, iP₋), P the partner of the grading.
pub fn pauli_pinor_iso(basis: &CliffordBasis, grading: Grading) -> Result<Mat4> {
    let (g, partner) = match grading {
        Grading::Helicity => (basis.gamma3_gamma5(), basis.igamma[0]),
        Grading::Boost => (basis.gamma0_gamma3(), basis.igamma5),
    };
    let eig = g.symmetric_eigen();
    let plus: Vec<usize> = (0..4)
        .filter(|&i| (eig.eigenvalues[i] - 1.0).abs() < 1e-8)
        .collect();
    let minus: Vec<usize> = (0..4)
        .filter(|&i| (eig.eigenvalues[i] + 1.0).abs() < 1e-8)
        .collect();
    if plus.len() != 2 || minus.len() != 2 {
        return Err(Error::DegenerateEigenbasis);
    }
    let mut mp = eig.eigenvectors.column(plus[0]).into_owned();
    // deterministic sign: largest entry positive
    let imax = mp.iamax();
    if mp[imax] < 0.0 {
        mp = -mp;
    }
    // M₋ from the rotation generator iγ⁵γ⁰γ¹ so that Θ carries iσ₁ to it
    let r1 = basis.i_gamma5_gamma0_gamma(1);
    let proj_minus = (Mat4::identity() - g) * 0.5;
    let pinv = partner.try_inverse().ok_or(Error::DegenerateEigenbasis)?;
    let mut mm = proj_minus * (pinv * r1 * mp);
    if mm.norm() < 1e-8 {
        mm = eig.eigenvectors.column(minus[0]).into_owned();
    }
    mm /= mm.norm();
    let cols = [mp, mm, partner * mp, partner * mm];
    let theta = Mat4::from_fn(|r, c| cols[c][r]);
    if theta.determinant().abs() < 1e-8 {
        return Err(Error::DegenerateEigenbasis);
    }
    Ok(theta)
}

/// Realified iσ_j in the (P₊, P₋, iP₊, iP₋) basis, j = 1..3.
pub fn pauli_i_sigma(j: usize) -> Mat4 {
    i_sigma(j)
}

/// Realified multiplication by i in the Pauli basis.
pub fn pauli_imaginary_unit() -> Mat4 {
    pauli_i()
}
