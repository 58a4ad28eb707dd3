//! Spherical and Hankel-Majorana transforms on spherical product grids.
//!
//! Coordinate samples live on r × θ × φ (Gauss-Legendre in r and cos θ,
//! uniform in φ). The transformed field is indexed by radial momentum nodes
//! and channels (l, J, ν), each carrying a full spinor tensor.
//!
//! Forward chain: angular projection c_lμ(r) = ∫ Y_lμ ψ dΩ, radial
//! transform z_lμ(p) = p √(2/π) ∫ r² j_l(pr) c_lμ(r) dr, optionally the
//! momentum kernel, realification f = Re z + (iγ⁰)_1 Im z, then the split by
//! 2n and Clebsch-Gordan coupling (l μ)(j n) → (J ν).

use super::fourier::{realify_into, unrealify};
use super::kernel::derive_momentum_kernel;
use super::tensor::n2_projectors;
use super::{FieldRep, Layout, SpinorFieldGrid};
use crate::clifford::CliffordBasis;
use crate::error::{Error, Result};
use crate::linalg::{apply_slot, Mat4, RealMatrix};
use crate::special::bessel::spherical_bessel_all;
use crate::special::cg::{clebsch_gordan, CouplingLabel};
use crate::special::harmonics::{spherical_harmonic, AngularLabel};
use crate::special::quadrature::gauss_legendre;
use num_complex::Complex64;
use std::f64::consts::PI;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Clone, PartialEq)]
pub struct SphericalGrid {
    pub radii: Vec<f64>,
    pub radial_weights: Vec<f64>,
    pub cos_theta: Vec<f64>,
    pub theta_weights: Vec<f64>,
    pub n_phi: usize,
}

impl SphericalGrid {
    pub fn new(n_r: usize, r_max: f64, n_theta: usize, n_phi: usize) -> Result<Self> {
        if n_r == 0 || n_theta == 0 || n_phi == 0 || !(r_max > 0.0) {
            return Err(Error::InvalidGrid(format!(
                "spherical grid {n_r}x{n_theta}x{n_phi}, r_max {r_max}"
            )));
        }
        let (radii, radial_weights) = gauss_legendre(n_r, 0.0, r_max);
        let (cos_theta, theta_weights) = gauss_legendre(n_theta, -1.0, 1.0);
        Ok(Self {
            radii,
            radial_weights,
            cos_theta,
            theta_weights,
            n_phi,
        })
    }

    /// Angular resolution exact for products of harmonics up to degree `lmax`.
    pub fn for_lmax(lmax: u32, n_r: usize, r_max: f64) -> Result<Self> {
        Self::new(n_r, r_max, lmax as usize + 2, 2 * lmax as usize + 4)
    }

    pub fn angles(&self) -> usize {
        self.cos_theta.len() * self.n_phi
    }

    pub fn points(&self) -> usize {
        self.radii.len() * self.angles()
    }

    pub fn split(&self, idx: usize) -> (usize, usize, usize) {
        let a = self.angles();
        (idx / a, (idx % a) / self.n_phi, idx % self.n_phi)
    }

    pub fn phi(&self, ip: usize) -> f64 {
        2.0 * PI * ip as f64 / self.n_phi as f64
    }

    pub fn theta(&self, it: usize) -> f64 {
        self.cos_theta[it].acos()
    }

    pub fn position(&self, idx: usize) -> [f64; 3] {
        let (ir, it, ip) = self.split(idx);
        let r = self.radii[ir];
        let ct = self.cos_theta[it];
        let st = (1.0 - ct * ct).max(0.0).sqrt();
        let (sp, cp) = self.phi(ip).sin_cos();
        [r * st * cp, r * st * sp, r * ct]
    }

    pub fn angular_weight(&self, it: usize) -> f64 {
        self.theta_weights[it] * 2.0 * PI / self.n_phi as f64
    }

    pub fn point_weights(&self) -> Vec<f64> {
        (0..self.points())
            .map(|idx| {
                let (ir, it, _) = self.split(idx);
                let r = self.radii[ir];
                r * r * self.radial_weights[ir] * self.angular_weight(it)
            })
            .collect()
    }
}

/// One output channel (l, 2J, 2ν).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Channel {
    pub l: u32,
    pub jj2: i32,
    pub nu2: i32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RadialSphericalSpec {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub l_max: u32,
    pub j2: u32,
    pub channels: Vec<Channel>,
}

impl RadialSphericalSpec {
    pub fn new(n_radial: usize, p_max: f64, l_max: u32, j2: u32) -> Result<Self> {
        if n_radial == 0 || !(p_max > 0.0) {
            return Err(Error::InvalidGrid(format!(
                "radial spec n = {n_radial}, p_max = {p_max}"
            )));
        }
        let (nodes, weights) = gauss_legendre(n_radial, 0.0, p_max);
        let js = j2 as i32;
        let mut channels = Vec::new();
        for l in 0..=l_max {
            let l2 = 2 * l as i32;
            for jj2 in ((l2 - js).abs()..=l2 + js).step_by(2) {
                for nu2 in (-jj2..=jj2).step_by(2) {
                    channels.push(Channel { l, jj2, nu2 });
                }
            }
        }
        Ok(Self {
            nodes,
            weights,
            l_max,
            j2,
            channels,
        })
    }

    /// 64 nodes on [0, π/Δx] with l_max = 8.
    pub fn default_for(dx: f64, j2: u32) -> Result<Self> {
        Self::new(64, PI / dx, 8, j2)
    }

    pub fn points(&self) -> usize {
        self.nodes.len() * self.channels.len()
    }

    pub fn point_weights(&self) -> Vec<f64> {
        self.weights
            .iter()
            .flat_map(|w| std::iter::repeat_n(*w, self.channels.len()))
            .collect()
    }

    pub fn channel_index(&self, ch: Channel) -> Option<usize> {
        self.channels.iter().position(|c| *c == ch)
    }
}

fn label_index(l: u32, mu: i32) -> usize {
    (l * l) as usize + (mu + l as i32) as usize
}

impl SpinorFieldGrid {
    /// Coordinate field sampled on a spherical product grid.
    pub fn sample_spherical(
        j2: u32,
        mass: Option<f64>,
        grid: SphericalGrid,
        f: impl Fn([f64; 3], &mut [f64]) + Sync + Send,
    ) -> Self {
        let mut out = Self::zeros(
            j2,
            mass,
            FieldRep::Coordinate,
            Layout::SphericalProduct(grid.clone()),
        );
        let nc = out.ncomp();
        crate::par::for_each_chunk_mut(&mut out.data, nc, |idx, c| f(grid.position(idx), c));
        out
    }

    /// Trigonometric interpolation of a periodic Cartesian coordinate field
    /// onto a spherical product grid.
    pub fn resample_spherical(&self, grid: SphericalGrid) -> Result<Self> {
        self.require_rep(FieldRep::Coordinate)?;
        let cart = self.cartesian()?;
        let nc = self.ncomp();
        let np = cart.points();
        let blocks = super::fft::forward_components(cart, &self.data, nc);
        let norm = cart.momentum_cell_volume() / (2.0 * PI).powf(1.5);
        let momenta: Vec<[f64; 3]> = (0..np).map(|i| cart.momentum(i)).collect();
        Ok(Self::sample_spherical(
            self.j2,
            self.mass,
            grid,
            |x, out| {
                out.iter_mut().for_each(|v| *v = 0.0);
                for (i, p) in momenta.iter().enumerate() {
                    let ph = Complex64::from_polar(norm, p[0] * x[0] + p[1] * x[1] + p[2] * x[2]);
                    for (c, o) in out.iter_mut().enumerate() {
                        *o += (ph * blocks[c * np + i]).re;
                    }
                }
            },
        ))
    }
}

struct Tables {
    labels: Vec<AngularLabel>,
    /// Y_lμ at each angular node, [label][angle].
    harmonics: Vec<Vec<Complex64>>,
}

fn harmonic_table(lmax: u32, cos_theta: &[f64], n_phi: usize) -> Result<Tables> {
    let labels = AngularLabel::all_up_to(lmax);
    let mut harmonics = Vec::with_capacity(labels.len());
    for lab in &labels {
        let mut row = Vec::with_capacity(cos_theta.len() * n_phi);
        for ct in cos_theta {
            for ip in 0..n_phi {
                let phi = 2.0 * PI * ip as f64 / n_phi as f64;
                let (re, im) = spherical_harmonic(lab.l(), lab.mu(), ct.acos(), phi)?;
                row.push(Complex64::new(re, im));
            }
        }
        harmonics.push(row);
    }
    Ok(Tables { labels, harmonics })
}

/// Complex coefficients z[(ip, label, comp)].
fn forward_complex(field: &SpinorFieldGrid, spec: &RadialSphericalSpec) -> Result<Vec<Complex64>> {
    let grid = match &field.layout {
        Layout::SphericalProduct(g) => g.clone(),
        _ => return Err(Error::ResampleRequired),
    };
    field.require_rep(FieldRep::Coordinate)?;
    let nc = field.ncomp();
    let tables = harmonic_table(spec.l_max, &grid.cos_theta, grid.n_phi)?;
    let nl = tables.labels.len();
    let na = grid.angles();
    // c[(ir, label, comp)]
    let c: Vec<Vec<Complex64>> = crate::par::map_range(grid.radii.len(), |ir| {
        let mut acc = vec![ZERO; nl * nc];
        for a in 0..na {
            let w = grid.angular_weight(a / grid.n_phi);
            let v = field.point(ir * na + a);
            for (li, row) in tables.harmonics.iter().enumerate() {
                let y = row[a] * w;
                for (k, x) in v.iter().enumerate() {
                    acc[li * nc + k] += y * *x;
                }
            }
        }
        acc
    });
    let radial = |p: f64| -> Result<Vec<Vec<f64>>> {
        grid.radii
            .iter()
            .map(|r| spherical_bessel_all(spec.l_max, p * r))
            .collect()
    };
    let rows: Vec<Result<Vec<Complex64>>> = crate::par::map_range(spec.nodes.len(), |ip| {
        let p = spec.nodes[ip];
        let jl = radial(p)?;
        let mut out = vec![ZERO; nl * nc];
        for (ir, r) in grid.radii.iter().enumerate() {
            let base = p * (2.0 / PI).sqrt() * grid.radial_weights[ir] * r * r;
            for (li, lab) in tables.labels.iter().enumerate() {
                let f = base * jl[ir][lab.l() as usize];
                for k in 0..nc {
                    out[li * nc + k] += c[ir][li * nc + k] * f;
                }
            }
        }
        Ok(out)
    });
    let mut z = Vec::with_capacity(spec.nodes.len() * nl * nc);
    for r in rows {
        z.extend(r?);
    }
    Ok(z)
}

fn inverse_complex(
    z: &[Complex64],
    spec: &RadialSphericalSpec,
    grid: &SphericalGrid,
    j2: u32,
    mass: Option<f64>,
) -> Result<SpinorFieldGrid> {
    let mut out = SpinorFieldGrid::zeros(
        j2,
        mass,
        FieldRep::Coordinate,
        Layout::SphericalProduct(grid.clone()),
    );
    let nc = out.ncomp();
    let tables = harmonic_table(spec.l_max, &grid.cos_theta, grid.n_phi)?;
    let nl = tables.labels.len();
    let na = grid.angles();
    let np = spec.nodes.len();
    let jl: Vec<Vec<Vec<f64>>> = grid
        .radii
        .iter()
        .map(|r| {
            spec.nodes
                .iter()
                .map(|p| spherical_bessel_all(spec.l_max, p * r))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    crate::par::for_each_chunk_mut(&mut out.data, na * nc, |ir, shell| {
        // c_lμ(r) = √(2/π) ∫ dp p j_l(pr) z_lμ(p)
        let mut c = vec![ZERO; nl * nc];
        for ip in 0..np {
            let p = spec.nodes[ip];
            let base = (2.0 / PI).sqrt() * spec.weights[ip] * p;
            for (li, lab) in tables.labels.iter().enumerate() {
                let f = base * jl[ir][ip][lab.l() as usize];
                for k in 0..nc {
                    c[li * nc + k] += z[(ip * nl + li) * nc + k] * f;
                }
            }
        }
        for a in 0..na {
            let dst = &mut shell[a * nc..(a + 1) * nc];
            for (li, row) in tables.harmonics.iter().enumerate() {
                let y = row[a].conj();
                for k in 0..nc {
                    dst[k] += (y * c[li * nc + k]).re;
                }
            }
        }
    });
    Ok(out)
}

/// Applies Π_k K(p p̂)_k (or its adjoint) to the angular expansion at each
/// radial node, through an angular quadrature in p̂.
fn kernel_step(
    z: &mut [Complex64],
    spec: &RadialSphericalSpec,
    nc: usize,
    mass: f64,
    j2: u32,
    adjoint: bool,
    basis: &CliffordBasis,
) -> Result<()> {
    let rank = super::rank_for(j2);
    let n_theta = spec.l_max as usize + rank + 2;
    let n_phi = 2 * (spec.l_max as usize + rank) + 4;
    let (ct, wt) = gauss_legendre(n_theta, -1.0, 1.0);
    let tables = harmonic_table(spec.l_max, &ct, n_phi)?;
    let nl = tables.labels.len();
    let na = n_theta * n_phi;
    let phase = |l: u32, sign: i32| -> Complex64 {
        // (∓i)^l
        Complex64::new(0.0, -(sign as f64)).powu(l)
    };
    let results: Vec<Result<Vec<Complex64>>> = crate::par::map_range(spec.nodes.len(), |ip| {
        let p = spec.nodes[ip];
        let src = &z[ip * nl * nc..(ip + 1) * nl * nc];
        let mut out = vec![ZERO; nl * nc];
        for a in 0..na {
            let (it, iph) = (a / n_phi, a % n_phi);
            let st = (1.0 - ct[it] * ct[it]).max(0.0).sqrt();
            let phi = 2.0 * PI * iph as f64 / n_phi as f64;
            let dir = [st * phi.cos(), st * phi.sin(), ct[it]];
            // F(p p̂) · p = Σ (−i)^l conj Y_lμ(p̂) z_lμ
            let mut v = vec![ZERO; nc];
            for (li, lab) in tables.labels.iter().enumerate() {
                let y = tables.harmonics[li][a].conj() * phase(lab.l(), 1);
                for k in 0..nc {
                    v[k] += y * src[li * nc + k];
                }
            }
            let kern = derive_momentum_kernel(dir.map(|d| d * p), mass, j2, basis)?;
            if adjoint {
                kern.apply_adjoint(&mut v);
            } else {
                kern.apply(&mut v);
            }
            let w = wt[it] * 2.0 * PI / n_phi as f64;
            for (li, lab) in tables.labels.iter().enumerate() {
                let y = tables.harmonics[li][a] * phase(lab.l(), -1) * w;
                for k in 0..nc {
                    out[li * nc + k] += y * v[k];
                }
            }
        }
        Ok(out)
    });
    for (ip, r) in results.into_iter().enumerate() {
        z[ip * nl * nc..(ip + 1) * nl * nc].copy_from_slice(&r?);
    }
    Ok(())
}

struct Coupler {
    projectors: Vec<(i32, RealMatrix)>,
    js: i32,
}

impl Coupler {
    fn new(j2: u32, basis: &CliffordBasis) -> Self {
        let rank = super::rank_for(j2);
        // the antisymmetric two-index space of j = 0 is coupled as spin 0
        let projectors = if j2 == 0 {
            vec![(0, RealMatrix::identity(16, 16))]
        } else {
            n2_projectors(rank, basis)
        };
        Self {
            projectors,
            js: j2 as i32,
        }
    }

    fn cg(&self, l: u32, mu2: i32, n2: i32, ch: &Channel) -> f64 {
        clebsch_gordan(&CouplingLabel::new(
            2 * l as i32,
            mu2,
            self.js,
            n2,
            ch.jj2,
            ch.nu2,
        ))
    }

    /// f[(ip, label, comp)] → F[(ip, channel, comp)].
    fn couple(&self, f: &[f64], spec: &RadialSphericalSpec, nc: usize) -> Vec<f64> {
        let nl = label_index(spec.l_max + 1, -(spec.l_max as i32 + 1));
        let nch = spec.channels.len();
        let mut out = vec![0.0; spec.nodes.len() * nch * nc];
        crate::par::for_each_chunk_mut(&mut out, nch * nc, |ip, dst| {
            for (label_ix, (l, mu)) in labels(spec.l_max).enumerate() {
                let v = nalgebra::DVector::from_column_slice(
                    &f[(ip * nl + label_ix) * nc..(ip * nl + label_ix + 1) * nc],
                );
                for (n2, proj) in &self.projectors {
                    let pv = proj * &v;
                    let nu2 = 2 * mu + n2;
                    for (ci, ch) in spec.channels.iter().enumerate() {
                        if ch.l != l || ch.nu2 != nu2 {
                            continue;
                        }
                        let c = self.cg(l, 2 * mu, *n2, ch);
                        if c != 0.0 {
                            for k in 0..nc {
                                dst[ci * nc + k] += c * pv[k];
                            }
                        }
                    }
                }
            }
        });
        out
    }

    fn decouple(&self, data: &[f64], spec: &RadialSphericalSpec, nc: usize) -> Vec<f64> {
        let nl = label_index(spec.l_max + 1, -(spec.l_max as i32 + 1));
        let nch = spec.channels.len();
        let mut out = vec![0.0; spec.nodes.len() * nl * nc];
        crate::par::for_each_chunk_mut(&mut out, nl * nc, |ip, dst| {
            for (label_ix, (l, mu)) in labels(spec.l_max).enumerate() {
                let mut acc = nalgebra::DVector::zeros(nc);
                for (n2, proj) in &self.projectors {
                    let nu2 = 2 * mu + n2;
                    let mut g = nalgebra::DVector::zeros(nc);
                    for (ci, ch) in spec.channels.iter().enumerate() {
                        if ch.l != l || ch.nu2 != nu2 {
                            continue;
                        }
                        let c = self.cg(l, 2 * mu, *n2, ch);
                        let src = &data[(ip * nch + ci) * nc..(ip * nch + ci + 1) * nc];
                        for k in 0..nc {
                            g[k] += c * src[k];
                        }
                    }
                    acc += proj * g;
                }
                dst[label_ix * nc..(label_ix + 1) * nc].copy_from_slice(acc.as_slice());
            }
        });
        out
    }
}

fn labels(lmax: u32) -> impl Iterator<Item = (u32, i32)> {
    (0..=lmax).flat_map(|l| (-(l as i32)..=l as i32).map(move |mu| (l, mu)))
}

fn realify_all(z: &[Complex64], nc: usize, rank: usize, g0: &Mat4) -> Vec<f64> {
    let mut f = vec![0.0; z.len()];
    for (dst, src) in f.chunks_mut(nc).zip(z.chunks(nc)) {
        realify_into(src, g0, rank, dst);
    }
    f
}

/// Inverse realification, pairing each (l, μ) with (l, −μ) through
/// z_{l,−μ} = (−1)^μ conj z_lμ.
fn unrealify_all(
    f: &[f64],
    spec: &RadialSphericalSpec,
    nc: usize,
    rank: usize,
    g0: &Mat4,
) -> Vec<Complex64> {
    let nl = label_index(spec.l_max + 1, -(spec.l_max as i32 + 1));
    let mut z = vec![ZERO; f.len()];
    for ip in 0..spec.nodes.len() {
        for (li, (l, mu)) in labels(spec.l_max).enumerate() {
            let a = &f[(ip * nl + li) * nc..(ip * nl + li + 1) * nc];
            let pair =
                &f[(ip * nl + label_index(l, -mu)) * nc..(ip * nl + label_index(l, -mu) + 1) * nc];
            let s = if mu.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            let b: Vec<f64> = pair.iter().map(|x| s * x).collect();
            let v = unrealify(a, &b, g0, rank);
            z[(ip * nl + li) * nc..(ip * nl + li + 1) * nc].copy_from_slice(&v);
        }
    }
    z
}

fn finish(
    z: &[Complex64],
    field: &SpinorFieldGrid,
    spec: &RadialSphericalSpec,
    basis: &CliffordBasis,
) -> SpinorFieldGrid {
    let nc = field.ncomp();
    let f = realify_all(z, nc, field.rank(), basis.g(0));
    let data = Coupler::new(field.j2, basis).couple(&f, spec, nc);
    SpinorFieldGrid {
        j2: field.j2,
        mass: field.mass,
        rep: FieldRep::Spherical,
        layout: Layout::Radial(spec.clone()),
        data,
    }
}

fn start(
    field: &SpinorFieldGrid,
    basis: &CliffordBasis,
) -> Result<(RadialSphericalSpec, Vec<Complex64>)> {
    field.require_rep(FieldRep::Spherical)?;
    let spec = match &field.layout {
        Layout::Radial(s) => s.clone(),
        _ => return Err(Error::ResampleRequired),
    };
    let nc = field.ncomp();
    let f = Coupler::new(field.j2, basis).decouple(&field.data, &spec, nc);
    let z = unrealify_all(&f, &spec, nc, field.rank(), basis.g(0));
    Ok((spec, z))
}

pub fn spherical_transform(
    field: &SpinorFieldGrid,
    spec: &RadialSphericalSpec,
    basis: &CliffordBasis,
) -> Result<SpinorFieldGrid> {
    let spec = with_spin(spec, field.j2)?;
    let z = forward_complex(field, &spec)?;
    Ok(finish(&z, field, &spec, basis))
}

pub fn inverse_spherical_transform(
    field: &SpinorFieldGrid,
    grid: &SphericalGrid,
    basis: &CliffordBasis,
) -> Result<SpinorFieldGrid> {
    let (spec, z) = start(field, basis)?;
    inverse_complex(&z, &spec, grid, field.j2, field.mass)
}

pub fn hankel_majorana(
    field: &SpinorFieldGrid,
    spec: &RadialSphericalSpec,
    basis: &CliffordBasis,
) -> Result<SpinorFieldGrid> {
    let mass = field.require_mass()?;
    let spec = with_spin(spec, field.j2)?;
    let mut z = forward_complex(field, &spec)?;
    kernel_step(&mut z, &spec, field.ncomp(), mass, field.j2, false, basis)?;
    Ok(finish(&z, field, &spec, basis))
}

pub fn inverse_hankel_majorana(
    field: &SpinorFieldGrid,
    grid: &SphericalGrid,
    basis: &CliffordBasis,
) -> Result<SpinorFieldGrid> {
    let mass = field.require_mass()?;
    let (spec, mut z) = start(field, basis)?;
    kernel_step(&mut z, &spec, field.ncomp(), mass, field.j2, true, basis)?;
    inverse_complex(&z, &spec, grid, field.j2, field.mass)
}

/// The spec with its channel list matching the field's spin.
fn with_spin(spec: &RadialSphericalSpec, j2: u32) -> Result<RadialSphericalSpec> {
    if spec.j2 == j2 {
        return Ok(spec.clone());
    }
    let mut s = RadialSphericalSpec::new(1, 1.0, spec.l_max, j2)?;
    s.nodes = spec.nodes.clone();
    s.weights = spec.weights.clone();
    Ok(s)
}

/// (−x¹∂₂ + x²∂₁ + s Σ_k (iγ⁰γ³γ⁵)_k) on a spherical product grid, with the
/// φ derivative taken spectrally. `spin_factor` is s.
pub fn angular_momentum_z(
    field: &SpinorFieldGrid,
    spin_factor: f64,
    basis: &CliffordBasis,
) -> Result<SpinorFieldGrid> {
    let grid = match &field.layout {
        Layout::SphericalProduct(g) => g.clone(),
        _ => return Err(Error::ResampleRequired),
    };
    let nc = field.ncomp();
    let rank = field.rank();
    let n_phi = grid.n_phi;
    let mut planner = rustfft::FftPlanner::new();
    let fwd = planner.plan_fft_forward(n_phi);
    let inv = planner.plan_fft_inverse(n_phi);
    let y = basis.i_gamma0_gamma3_gamma5();
    let mut out = field.clone();
    // −x¹∂₂ + x²∂₁ = −∂_φ
    let rings = grid.radii.len() * grid.cos_theta.len();
    for ring in 0..rings {
        for k in 0..nc {
            let mut line: Vec<Complex64> = (0..n_phi)
                .map(|ip| Complex64::new(field.data[(ring * n_phi + ip) * nc + k], 0.0))
                .collect();
            fwd.process(&mut line);
            for (m, z) in line.iter_mut().enumerate() {
                let freq = if 2 * m < n_phi {
                    m as f64
                } else if 2 * m == n_phi {
                    0.0
                } else {
                    m as f64 - n_phi as f64
                };
                *z *= Complex64::new(0.0, -freq / n_phi as f64);
            }
            inv.process(&mut line);
            for ip in 0..n_phi {
                out.data[(ring * n_phi + ip) * nc + k] = line[ip].re;
            }
        }
    }
    for idx in 0..grid.points() {
        let mut acc = vec![0.0; nc];
        for slot in 0..rank {
            let mut v = field.point(idx).to_vec();
            apply_slot(&y, slot, rank, &mut v);
            acc.iter_mut()
                .zip(v)
                .for_each(|(a, b)| *a += spin_factor * b);
        }
        out.data[idx * nc..(idx + 1) * nc]
            .iter_mut()
            .zip(acc)
            .for_each(|(a, b)| *a += b);
    }
    Ok(out)
}

/// (iγ⁰)_1 ν multiplication on a spherical-rep field.
pub fn multiply_nu(field: &SpinorFieldGrid, basis: &CliffordBasis) -> Result<SpinorFieldGrid> {
    field.require_rep(FieldRep::Spherical)?;
    let spec = match &field.layout {
        Layout::Radial(s) => s.clone(),
        _ => return Err(Error::ResampleRequired),
    };
    let nch = spec.channels.len();
    let rank = field.rank();
    let g0 = *basis.g(0);
    let mut out = field.clone();
    out.map_points(|idx, v| {
        let nu = spec.channels[idx % nch].nu2 as f64 / 2.0;
        apply_slot(&g0, 0, rank, v);
        v.iter_mut().for_each(|x| *x *= nu);
    });
    Ok(out)
}

/// E_p (iγ⁰)_k multiplication on a spherical-rep field.
pub fn multiply_energy(
    field: &SpinorFieldGrid,
    k: usize,
    basis: &CliffordBasis,
) -> Result<SpinorFieldGrid> {
    let mass = field.require_mass()?;
    let spec = match &field.layout {
        Layout::Radial(s) => s.clone(),
        _ => return Err(Error::ResampleRequired),
    };
    let nch = spec.channels.len();
    let rank = field.rank();
    let g0 = *basis.g(0);
    let mut out = field.clone();
    out.map_points(|idx, v| {
        let p = spec.nodes[idx / nch];
        let e = (p * p + mass * mass).sqrt();
        apply_slot(&g0, k, rank, v);
        v.iter_mut().for_each(|x| *x *= e);
    });
    Ok(out)
}
