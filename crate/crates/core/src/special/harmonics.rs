use super::legendre::assoc_legendre;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AngularLabel {
    l: u32,
    mu: i32,
}

impl AngularLabel {
    pub fn new(l: u32, mu: i32) -> Result<Self> {
        if mu.unsigned_abs() > l {
            return Err(Error::InvalidOrder {
                l: l as i64,
                mu: mu as i64,
            });
        }
        Ok(Self { l, mu })
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn mu(&self) -> i32 {
        self.mu
    }

    /// All labels with l ≤ lmax, ordered by l then μ.
    pub fn all_up_to(lmax: u32) -> Vec<AngularLabel> {
        (0..=lmax)
            .flat_map(|l| (-(l as i32)..=l as i32).map(move |mu| AngularLabel { l, mu }))
            .collect()
    }
}

/// (l−μ)!/(l+μ)! as a float.
pub(crate) fn factorial_ratio(l: u32, mu: i32) -> f64 {
    let mut r = 1.0;
    if mu >= 0 {
        for k in (l - mu as u32 + 1)..=(l + mu as u32) {
            r /= k as f64;
        }
    } else {
        for k in (l - mu.unsigned_abs() + 1)..=(l + mu.unsigned_abs()) {
            r *= k as f64;
        }
    }
    r
}

/// Y_lμ(θ, φ) as (real, imaginary).
pub fn spherical_harmonic(l: u32, mu: i32, theta: f64, phi: f64) -> Result<(f64, f64)> {
    let p = assoc_legendre(l, mu, theta.cos())?;
    let norm = ((2 * l + 1) as f64 / (4.0 * std::f64::consts::PI) * factorial_ratio(l, mu)).sqrt();
    let (s, c) = (mu as f64 * phi).sin_cos();
    Ok((norm * p * c, norm * p * s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn closed_forms() {
        let (re, im) = spherical_harmonic(0, 0, 0.4, 1.0).unwrap();
        assert!((re - 1.0 / (4.0 * PI).sqrt()).abs() < 1e-15 && im == 0.0);
        let (re, im) = spherical_harmonic(1, 0, 0.7, 2.1).unwrap();
        assert!((re - (3.0 / (4.0 * PI)).sqrt() * 0.7f64.cos()).abs() < 1e-15 && im == 0.0);
    }

    #[test]
    fn conjugation_symmetry() {
        for l in 0..8u32 {
            for mu in 0..=l as i32 {
                let (a, b) = spherical_harmonic(l, mu, 1.1, -0.4).unwrap();
                let (c, d) = spherical_harmonic(l, -mu, 1.1, -0.4).unwrap();
                let s = if mu % 2 == 0 { 1.0 } else { -1.0 };
                assert!((c - s * a).abs() < 1e-12 && (d + s * b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn label_validation() {
        assert!(AngularLabel::new(2, -2).is_ok());
        assert!(AngularLabel::new(2, 3).is_err());
        assert_eq!(AngularLabel::all_up_to(3).len(), 16);
    }
}
