use crate::error::{Error, Result};

pub const MAX_BESSEL_ORDER: u32 = 20;

/// Spherical Bessel function of the first kind j_l(r), r ≥ 0.
pub fn spherical_bessel(l: u32, r: f64) -> Result<f64> {
    if l > MAX_BESSEL_ORDER {
        return Err(Error::UnsupportedOrder(l));
    }
    Ok(bessel_unchecked(l, r.abs()))
}

/// j_0..=j_lmax at r.
pub fn spherical_bessel_all(lmax: u32, r: f64) -> Result<Vec<f64>> {
    if lmax > MAX_BESSEL_ORDER {
        return Err(Error::UnsupportedOrder(lmax));
    }
    Ok((0..=lmax).map(|l| bessel_unchecked(l, r.abs())).collect())
}

fn bessel_unchecked(l: u32, r: f64) -> f64 {
    if r < 1.0 {
        series(l, r)
    } else if r > l as f64 {
        upward(l, r)
    } else {
        miller(l, r)
    }
}

// r^l Σ_k (−r²/2)^k / (k! (2l+2k+1)!!)
fn series(l: u32, r: f64) -> f64 {
    let mut dfact = 1.0;
    for k in 1..=l {
        dfact *= (2 * k + 1) as f64;
    }
    let mut term = r.powi(l as i32) / dfact;
    let mut sum = term;
    let x = -0.5 * r * r;
    for k in 1..40 {
        term *= x / (k as f64 * (2 * l + 2 * k + 1) as f64);
        sum += term;
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}

fn upward(l: u32, r: f64) -> f64 {
    let (s, c) = r.sin_cos();
    let j0 = s / r;
    if l == 0 {
        return j0;
    }
    let mut jm = j0;
    let mut j = s / (r * r) - c / r;
    for k in 1..l {
        let next = (2 * k + 1) as f64 / r * j - jm;
        jm = j;
        j = next;
    }
    j
}

fn miller(l: u32, r: f64) -> f64 {
    let start = l + 20 + r as u32;
    let mut above = 0.0;
    let mut cur = 1e-30;
    let mut at_l = 0.0;
    let (mut f0, mut f1) = (0.0, 0.0);
    for k in (1..=start).rev() {
        let below = (2 * k + 1) as f64 / r * cur - above;
        above = cur;
        cur = below;
        // cur is now the unnormalized value at order k − 1
        if k - 1 == l {
            at_l = cur;
        }
        if k == 1 {
            f0 = cur;
            f1 = above;
        }
        if cur.abs() > 1e200 {
            cur *= 1e-200;
            above *= 1e-200;
            at_l *= 1e-200;
        }
    }
    let (s, c) = r.sin_cos();
    let j0 = s / r;
    let j1 = s / (r * r) - c / r;
    if j0.abs() >= j1.abs() {
        at_l * j0 / f0
    } else {
        at_l * j1 / f1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_orders_closed_form() {
        for &r in &[0.3, 1.0, 2.5, 7.0, 19.0, 40.0] {
            let (s, c) = f64::sin_cos(r);
            assert!((spherical_bessel(0, r).unwrap() - s / r).abs() < 1e-14);
            assert!((spherical_bessel(1, r).unwrap() - (s / (r * r) - c / r)).abs() < 1e-14);
            let j2 = (3.0 / (r * r) - 1.0) * s / r - 3.0 * c / (r * r);
            assert!((spherical_bessel(2, r).unwrap() - j2).abs() < 1e-13);
        }
        assert_eq!(spherical_bessel(0, 0.0).unwrap(), 1.0);
        assert_eq!(spherical_bessel(3, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn small_argument_suppression() {
        let v = spherical_bessel(5, 0.01).unwrap();
        let want = 0.01f64.powi(5) / (3.0 * 5.0 * 7.0 * 9.0 * 11.0);
        assert!(v.is_finite() && v.abs() < 1e-10);
        assert!((v - want).abs() < 1e-4 * want);
    }

    #[test]
    fn order_limit() {
        assert!(matches!(
            spherical_bessel(21, 1.0),
            Err(Error::UnsupportedOrder(21))
        ));
    }

    #[test]
    fn integral_representation() {
        // j_l(r) = (−i)^l / 2 ∫ e^{irt} P_l(t) dt
        let (t, w) = crate::special::quadrature::gauss_legendre(160, -1.0, 1.0);
        for l in 0..=20u32 {
            for &r in &[0.05, 0.7, 1.0, 3.3, 9.9, 15.0, 20.0, 27.5] {
                let mut acc = 0.0;
                for (ti, wi) in t.iter().zip(&w) {
                    let p = crate::special::assoc_legendre(l, 0, *ti).unwrap();
                    let phase = if l % 2 == 0 {
                        (r * ti).cos()
                    } else {
                        (r * ti).sin()
                    };
                    acc += wi * p * phase;
                }
                let sign = if (l / 2) % 2 == 0 { 1.0 } else { -1.0 };
                let want = 0.5 * sign * acc;
                let got = spherical_bessel(l, r).unwrap();
                assert!((got - want).abs() < 1e-13, "l={l} r={r} {got} {want}");
            }
        }
    }
}
