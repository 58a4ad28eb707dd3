use crate::error::{Error, Result};

/// P_l^μ(ξ) with the Condon-Shortley phase, for |μ| ≤ l.
pub fn assoc_legendre(l: u32, mu: i32, xi: f64) -> Result<f64> {
    if mu.unsigned_abs() > l {
        return Err(Error::InvalidOrder {
            l: l as i64,
            mu: mu as i64,
        });
    }
    let m = mu.unsigned_abs();
    let v = legendre_nonneg(l, m, xi);
    if mu >= 0 {
        Ok(v)
    } else {
        // P_l^{−m} = (−1)^m (l−m)!/(l+m)! P_l^m
        let mut ratio = 1.0;
        for k in (l - m + 1)..=(l + m) {
            ratio /= k as f64;
        }
        let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
        Ok(sign * ratio * v)
    }
}

fn legendre_nonneg(l: u32, m: u32, x: f64) -> f64 {
    let s = ((1.0 - x) * (1.0 + x)).max(0.0).sqrt();
    let mut pmm = 1.0;
    for k in 1..=m {
        pmm *= -((2 * k - 1) as f64) * s;
    }
    if l == m {
        return pmm;
    }
    let mut pm1 = x * (2 * m + 1) as f64 * pmm;
    if l == m + 1 {
        return pm1;
    }
    let mut pm0 = pmm;
    for ll in (m + 2)..=l {
        let next = ((2 * ll - 1) as f64 * x * pm1 - (ll + m - 1) as f64 * pm0) / (ll - m) as f64;
        pm0 = pm1;
        pm1 = next;
    }
    pm1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_orders() {
        for &x in &[-0.9, -0.2, 0.0, 0.5, 1.0] {
            assert_eq!(assoc_legendre(0, 0, x).unwrap(), 1.0);
            assert!((assoc_legendre(1, 0, x).unwrap() - x).abs() < 1e-15);
            let p11 = -(1.0 - x * x).sqrt();
            assert!((assoc_legendre(1, 1, x).unwrap() - p11).abs() < 1e-15);
            assert!((assoc_legendre(2, 0, x).unwrap() - 0.5 * (3.0 * x * x - 1.0)).abs() < 1e-15);
        }
        assert_eq!(assoc_legendre(1, 1, 0.0).unwrap(), -1.0);
        assert!(matches!(
            assoc_legendre(2, 3, 0.1),
            Err(Error::InvalidOrder { .. })
        ));
        assert!(matches!(
            assoc_legendre(2, -3, 0.1),
            Err(Error::InvalidOrder { .. })
        ));
    }

    #[test]
    fn three_term_recurrence() {
        for l in 1..15u32 {
            for mu in -(l as i32 - 1)..=(l as i32 - 1) {
                for &x in &[-0.77, -0.1, 0.33, 0.9] {
                    let lhs = (l as f64 - mu as f64 + 1.0) * assoc_legendre(l + 1, mu, x).unwrap();
                    let rhs = (2 * l + 1) as f64 * x * assoc_legendre(l, mu, x).unwrap()
                        - (l as f64 + mu as f64) * assoc_legendre(l - 1, mu, x).unwrap();
                    assert!(
                        (lhs - rhs).abs() < 1e-10 * (1.0 + lhs.abs()),
                        "l={l} mu={mu}"
                    );
                }
            }
        }
    }
}
