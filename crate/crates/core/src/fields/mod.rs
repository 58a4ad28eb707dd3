//! Sampled spinor-tensor fields and their unitary transforms.

pub mod energy;
pub mod fft;
pub mod fourier;
pub mod io;
pub mod kernel;
pub mod lightcone;
pub mod poincare;
pub mod spherical;
pub mod tensor;

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

pub use fourier::{
    apply_hamiltonian, bw_project, bw_residual, evolve, fourier_majorana, inverse_fourier_majorana,
    pinor_jn_split,
};
pub use kernel::{derive_momentum_kernel, MomentumKernel};
pub use spherical::{
    hankel_majorana, inverse_hankel_majorana, inverse_spherical_transform, spherical_transform,
    RadialSphericalSpec, SphericalGrid,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FieldRep {
    Coordinate,
    Momentum,
    Spherical,
}

impl FieldRep {
    pub fn tag(self) -> &'static str {
        match self {
            FieldRep::Coordinate => "coord",
            FieldRep::Momentum => "mom",
            FieldRep::Spherical => "sph",
        }
    }

    pub fn from_tag(s: &str) -> Option<Self> {
        match s {
            "coord" => Some(FieldRep::Coordinate),
            "mom" => Some(FieldRep::Momentum),
            "sph" => Some(FieldRep::Spherical),
            _ => None,
        }
    }
}

/// Cubic grid with n points per axis and spacing dx. Coordinates are
/// x_i = (i − n/2)·dx; the dual lattice has spacing 2π/(n·dx) and momentum
/// index i stands for k = i − n/2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub n: usize,
    pub dx: f64,
    pub periodic: bool,
}

impl GridSpec {
    pub fn new(n: usize, dx: f64) -> Result<Self> {
        if n < 2 || !n.is_power_of_two() {
            return Err(Error::InvalidGrid(format!(
                "n = {n} is not a power of two >= 2"
            )));
        }
        if !(dx > 0.0 && dx.is_finite()) {
            return Err(Error::InvalidGrid(format!("dx = {dx}")));
        }
        Ok(Self {
            n,
            dx,
            periodic: true,
        })
    }

    pub fn points(&self) -> usize {
        self.n * self.n * self.n
    }

    pub fn dp(&self) -> f64 {
        2.0 * std::f64::consts::PI / (self.n as f64 * self.dx)
    }

    pub fn coord(&self, i: usize) -> f64 {
        (i as f64 - (self.n / 2) as f64) * self.dx
    }

    pub fn position(&self, idx: usize) -> [f64; 3] {
        let (i, j, k) = self.split(idx);
        [self.coord(i), self.coord(j), self.coord(k)]
    }

    /// Signed lattice momentum index k = i − n/2.
    pub fn signed(&self, i: usize) -> i64 {
        i as i64 - (self.n / 2) as i64
    }

    /// Lattice momentum of point `idx`.
    pub fn momentum(&self, idx: usize) -> [f64; 3] {
        let (i, j, k) = self.split(idx);
        let dp = self.dp();
        [
            self.signed(i) as f64 * dp,
            self.signed(j) as f64 * dp,
            self.signed(k) as f64 * dp,
        ]
    }

    /// Lattice momentum with Nyquist components set to zero. Kernels,
    /// derivatives and energies all use this so that p and −p stay paired.
    pub fn effective_momentum(&self, idx: usize) -> [f64; 3] {
        let (i, j, k) = self.split(idx);
        let dp = self.dp();
        let eff = |a: usize| {
            if a == 0 {
                0.0
            } else {
                self.signed(a) as f64 * dp
            }
        };
        [eff(i), eff(j), eff(k)]
    }

    /// Index of the lattice point −p (Nyquist maps to itself).
    pub fn negated(&self, idx: usize) -> usize {
        let (i, j, k) = self.split(idx);
        let neg = |a: usize| if a == 0 { 0 } else { self.n - a };
        self.join(neg(i), neg(j), neg(k))
    }

    pub fn split(&self, idx: usize) -> (usize, usize, usize) {
        let n = self.n;
        (idx / (n * n), (idx / n) % n, idx % n)
    }

    pub fn join(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.n + j) * self.n + k
    }

    pub fn cell_volume(&self) -> f64 {
        self.dx.powi(3)
    }

    pub fn momentum_cell_volume(&self) -> f64 {
        self.dp().powi(3)
    }
}

/// Where a field's samples live.
#[derive(Debug, Clone, PartialEq)]
pub enum Layout {
    Cartesian(GridSpec),
    SphericalProduct(SphericalGrid),
    Radial(RadialSphericalSpec),
}

/// Number of Majorana indexes carried by a field of doubled spin j2
/// (j = 0 uses the antisymmetric two-index space).
pub fn rank_for(j2: u32) -> usize {
    if j2 == 0 {
        2
    } else {
        j2 as usize
    }
}

/// A real spinor-tensor field sampled on a grid; `data` is row-major in
/// (point, tensor component).
#[derive(Debug, Clone, PartialEq)]
pub struct SpinorFieldGrid {
    pub j2: u32,
    pub mass: Option<f64>,
    pub rep: FieldRep,
    pub layout: Layout,
    pub data: Vec<f64>,
}

impl SpinorFieldGrid {
    pub fn zeros(j2: u32, mass: Option<f64>, rep: FieldRep, layout: Layout) -> Self {
        let len = layout_points(&layout) * 4usize.pow(rank_for(j2) as u32);
        Self {
            j2,
            mass,
            rep,
            layout,
            data: vec![0.0; len],
        }
    }

    /// Coordinate field from a function of position returning all components.
    pub fn from_fn(
        j2: u32,
        mass: Option<f64>,
        grid: GridSpec,
        f: impl Fn([f64; 3], &mut [f64]) + Sync + Send,
    ) -> Self {
        let mut out = Self::zeros(j2, mass, FieldRep::Coordinate, Layout::Cartesian(grid));
        let nc = out.ncomp();
        crate::par::for_each_chunk_mut(&mut out.data, nc, |idx, c| f(grid.position(idx), c));
        out
    }

    pub fn rank(&self) -> usize {
        rank_for(self.j2)
    }

    pub fn ncomp(&self) -> usize {
        4usize.pow(self.rank() as u32)
    }

    pub fn grid(&self) -> Option<&GridSpec> {
        match &self.layout {
            Layout::Cartesian(g) => Some(g),
            _ => None,
        }
    }

    pub fn cartesian(&self) -> Result<GridSpec> {
        match &self.layout {
            Layout::Cartesian(g) => Ok(*g),
            _ => Err(Error::ResampleRequired),
        }
    }

    pub fn require_mass(&self) -> Result<f64> {
        match self.mass {
            Some(m) if m >= 0.0 => Ok(m),
            _ => Err(Error::MassUnset),
        }
    }

    pub fn require_rep(&self, rep: FieldRep) -> Result<()> {
        if self.rep != rep {
            return Err(Error::WrongRepresentation {
                expected: rep.tag(),
                found: self.rep.tag(),
            });
        }
        Ok(())
    }

    pub fn point(&self, idx: usize) -> &[f64] {
        let nc = self.ncomp();
        &self.data[idx * nc..(idx + 1) * nc]
    }

    /// L² norm with the measure of the layout (dx³, dp³ or quadrature weights).
    pub fn norm(&self) -> f64 {
        self.inner(self).sqrt()
    }

    pub fn inner(&self, other: &SpinorFieldGrid) -> f64 {
        let nc = self.ncomp();
        let w = point_weights(&self.layout, self.rep);
        self.data
            .chunks(nc)
            .zip(other.data.chunks(nc))
            .zip(w.iter())
            .map(|((a, b), w)| w * a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>())
            .sum()
    }

    /// ‖self − other‖ / ‖other‖.
    pub fn relative_distance(&self, other: &SpinorFieldGrid) -> f64 {
        let mut d = self.clone();
        for (a, b) in d.data.iter_mut().zip(&other.data) {
            *a -= b;
        }
        let n = other.norm();
        if n == 0.0 {
            d.norm()
        } else {
            d.norm() / n
        }
    }

    pub fn scaled(&self, s: f64) -> Self {
        let mut o = self.clone();
        o.data.iter_mut().for_each(|x| *x *= s);
        o
    }

    pub fn add(&self, other: &SpinorFieldGrid) -> Self {
        let mut o = self.clone();
        o.data
            .iter_mut()
            .zip(&other.data)
            .for_each(|(a, b)| *a += b);
        o
    }

    /// Applies `f` to each point's component vector in place.
    pub fn map_points(&mut self, f: impl Fn(usize, &mut [f64]) + Sync + Send) {
        let nc = self.ncomp();
        crate::par::for_each_chunk_mut(&mut self.data, nc, f);
    }
}

fn layout_points(layout: &Layout) -> usize {
    match layout {
        Layout::Cartesian(g) => g.points(),
        Layout::SphericalProduct(s) => s.points(),
        Layout::Radial(r) => r.points(),
    }
}

fn point_weights(layout: &Layout, rep: FieldRep) -> Vec<f64> {
    match layout {
        Layout::Cartesian(g) => {
            let w = if rep == FieldRep::Momentum {
                g.momentum_cell_volume()
            } else {
                g.cell_volume()
            };
            vec![w; g.points()]
        }
        Layout::SphericalProduct(s) => s.point_weights(),
        Layout::Radial(r) => r.point_weights(),
    }
}
/// Real trigonometric polynomial with modes |k_a| ≤ `kmax` (in units of the
/// grid's momentum spacing) and seeded normal amplitudes.
pub fn band_limited(grid: GridSpec, j2: u32, mass: f64, kmax: i64, seed: u64) -> SpinorFieldGrid {
    let mut r = crate::random::rng(seed);
    let nc = 4usize.pow(rank_for(j2) as u32);
    let mut modes = Vec::new();
    for a in -kmax..=kmax {
        for b in -kmax..=kmax {
            for c in -kmax..=kmax {
                let amp: Vec<(f64, f64)> = (0..nc)
                    .map(|_| (crate::random::normal(&mut r), crate::random::normal(&mut r)))
                    .collect();
                modes.push(([a, b, c], amp));
            }
        }
    }
    let dp = grid.dp();
    SpinorFieldGrid::from_fn(j2, Some(mass), grid, |x, out| {
        out.iter_mut().for_each(|v| *v = 0.0);
        for (k, amp) in &modes {
            let ph = dp * (k[0] as f64 * x[0] + k[1] as f64 * x[1] + k[2] as f64 * x[2]);
            let (s, c) = ph.sin_cos();
            for (o, (a, b)) in out.iter_mut().zip(amp) {
                *o += a * c + b * s;
            }
        }
    })
}
