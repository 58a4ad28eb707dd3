use gauss_quad::GaussLegendre;
use std::num::NonZeroUsize;

/// Gauss-Legendre nodes (increasing) and weights on [a, b].
pub fn gauss_legendre(n: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    let rule = GaussLegendre::new(NonZeroUsize::new(n.max(1)).expect("nonzero"));
    let mut pairs: Vec<(f64, f64)> = rule.as_node_weight_pairs().to_vec();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    let half = 0.5 * (b - a);
    let mid = 0.5 * (b + a);
    pairs
        .into_iter()
        .map(|(x, w)| (mid + half * x, half * w))
        .unzip()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_polynomials() {
        let (x, w) = gauss_legendre(8, 0.0, 2.0);
        let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(15)).sum();
        assert!((s - 2f64.powi(16) / 16.0).abs() < 1e-9);
        assert!(x.windows(2).all(|p| p[0] < p[1]));
    }
}
