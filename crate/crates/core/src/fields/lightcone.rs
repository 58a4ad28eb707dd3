//! Light-cone confinement of free evolution for a localized initial field.

use super::fourier::evolve;
use super::{GridSpec, SpinorFieldGrid};
use crate::clifford::CliffordBasis;
use crate::error::Result;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LightConeReport {
    pub n: usize,
    pub dx: f64,
    pub width: f64,
    pub t: f64,
    pub radius: f64,
    /// ‖ψ(t) restricted to |x| > radius‖ / ‖ψ(t)‖.
    pub outside_ratio: f64,
    /// The same ratio for ψ(0) outside radius − t; causal evolution cannot exceed it.
    pub initial_outside_ratio: f64,
    /// ‖evolve(evolve(ψ, t), −t) − ψ‖ / ‖ψ‖.
    pub round_trip: f64,
    /// |‖ψ(t)‖ − ‖ψ‖| / ‖ψ‖.
    pub norm_drift: f64,
}

/// Gaussian bump e^{−|x|²/(2w²)} times a fixed Majorana spinor.
pub fn gaussian_bump(grid: GridSpec, mass: f64, width: f64) -> SpinorFieldGrid {
    SpinorFieldGrid::from_fn(1, Some(mass), grid, |x, c| {
        let g = (-(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]) / (2.0 * width * width)).exp();
        c.copy_from_slice(&[g, 0.5 * g, -0.25 * g, 0.0]);
    })
}

pub fn outside_ratio(field: &SpinorFieldGrid, radius: f64) -> f64 {
    let grid = *field.grid().expect("cartesian");
    let nc = field.ncomp();
    let mut out = 0.0;
    let mut all = 0.0;
    for (idx, v) in field.data.chunks(nc).enumerate() {
        let x = grid.position(idx);
        let s = v.iter().map(|a| a * a).sum::<f64>();
        all += s;
        if (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt() > radius {
            out += s;
        }
    }
    if all == 0.0 {
        0.0
    } else {
        (out / all).sqrt()
    }
}

/// Evolves a bump of the given width to time t and measures the norm left
/// outside radius width + t + 3Δx.
pub fn lightcone_check(
    grid: GridSpec,
    mass: f64,
    width: f64,
    t: f64,
    basis: &CliffordBasis,
) -> Result<LightConeReport> {
    let psi = gaussian_bump(grid, mass, width);
    let forward = evolve(&psi, t, basis)?;
    let back = evolve(&forward, -t, basis)?;
    let radius = width + t.abs() + 3.0 * grid.dx;
    Ok(LightConeReport {
        n: grid.n,
        dx: grid.dx,
        width,
        t,
        radius,
        outside_ratio: outside_ratio(&forward, radius),
        initial_outside_ratio: outside_ratio(&psi, radius - t.abs()),
        round_trip: back.relative_distance(&psi),
        norm_drift: (forward.norm() - psi.norm()).abs() / psi.norm(),
    })
}
