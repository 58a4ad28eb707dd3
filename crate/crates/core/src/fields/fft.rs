//! Centered 3D FFT in continuum normalization:
//! F(p) = (2π)^{−3/2} dx³ Σ_x e^{−ip·x} ψ(x), ψ(x) = (2π)^{−3/2} dp³ Σ_p e^{ip·x} F(p),
//! with both x and p stored in centered order (index i ↔ i − n/2).

use super::GridSpec;
use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use std::sync::Arc;

pub struct Fft3 {
    grid: GridSpec,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
}

impl Fft3 {
    pub fn new(grid: GridSpec) -> Self {
        let mut planner = FftPlanner::new();
        Self {
            grid,
            fwd: planner.plan_fft_forward(grid.n),
            inv: planner.plan_fft_inverse(grid.n),
        }
    }

    /// In-place transform of one scalar n³ block (centered in, centered out).
    pub fn forward_block(&self, block: &mut [Complex64]) {
        self.transform(block, true);
    }

    pub fn inverse_block(&self, block: &mut [Complex64]) {
        self.transform(block, false);
    }

    fn transform(&self, block: &mut [Complex64], forward: bool) {
        let n = self.grid.n;
        let plan = if forward { &self.fwd } else { &self.inv };
        // centered index i ↔ signed s = i − n/2; the DFT kernel is periodic in
        // s, so rotating by n/2 on both sides is all that is needed.
        let h = n / 2;
        let mut line = vec![Complex64::new(0.0, 0.0); n];
        let mut scratch = vec![Complex64::new(0.0, 0.0); plan.get_inplace_scratch_len()];
        for axis in 0..3 {
            let stride = n.pow(2 - axis as u32);
            for base in 0..n * n * n {
                // visit each line once: its first element has coordinate 0 on `axis`
                if !(base / stride).is_multiple_of(n) {
                    continue;
                }
                for i in 0..n {
                    line[i] = block[base + ((i + h) % n) * stride];
                }
                plan.process_with_scratch(&mut line, &mut scratch);
                for k in 0..n {
                    block[base + ((k + h) % n) * stride] = line[k];
                }
            }
        }
        let g = self.grid;
        let scale = if forward {
            g.cell_volume() / (2.0 * std::f64::consts::PI).powf(1.5)
        } else {
            g.momentum_cell_volume() / (2.0 * std::f64::consts::PI).powf(1.5)
        };
        block.iter_mut().for_each(|z| *z *= scale);
    }
}

/// Forward transform of a real multi-component field stored (point, comp);
/// returns complex data in component-major blocks.
pub fn forward_components(grid: GridSpec, data: &[f64], ncomp: usize) -> Vec<Complex64> {
    let np = grid.points();
    let mut blocks = vec![Complex64::new(0.0, 0.0); np * ncomp];
    for (p, chunk) in data.chunks(ncomp).enumerate() {
        for (c, x) in chunk.iter().enumerate() {
            blocks[c * np + p] = Complex64::new(*x, 0.0);
        }
    }
    let fft = Fft3::new(grid);
    crate::par::for_each_chunk_mut(&mut blocks, np, |_, b| fft.forward_block(b));
    blocks
}

/// Inverse transform of component-major complex blocks, in place.
pub fn inverse_components(grid: GridSpec, blocks: &mut [Complex64]) {
    let fft = Fft3::new(grid);
    crate::par::for_each_chunk_mut(blocks, grid.points(), |_, b| fft.inverse_block(b));
}

/// Forward transform of complex component-major blocks, in place.
pub fn forward_blocks(grid: GridSpec, blocks: &mut [Complex64]) {
    let fft = Fft3::new(grid);
    crate::par::for_each_chunk_mut(blocks, grid.points(), |_, b| fft.forward_block(b));
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_direct_sum() {
        let g = GridSpec::new(4, 0.7).unwrap();
        let data: Vec<f64> = (0..64).map(|i| ((i * 29) % 13) as f64 - 6.0).collect();
        let f = forward_components(g, &data, 1);
        let norm = g.cell_volume() / (2.0 * std::f64::consts::PI).powf(1.5);
        for pi in 0..64 {
            let p = g.momentum(pi);
            let mut acc = Complex64::new(0.0, 0.0);
            for xi in 0..64 {
                let x = g.position(xi);
                let ph = -(p[0] * x[0] + p[1] * x[1] + p[2] * x[2]);
                acc += Complex64::from_polar(1.0, ph) * data[xi];
            }
            assert!((acc * norm - f[pi]).norm() < 1e-12);
        }
        let mut back = f.clone();
        inverse_components(g, &mut back);
        for i in 0..64 {
            assert!((back[i].re - data[i]).abs() < 1e-12 && back[i].im.abs() < 1e-12);
        }
    }
}
