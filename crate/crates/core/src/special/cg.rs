//! Clebsch-Gordan coefficients ⟨l μ; j n | J ν⟩ (Condon-Shortley convention)
//! from the Racah sum in exact rational arithmetic. All labels are doubled.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::sync::OnceLock;

const FACT_TABLE: usize = 64;

fn factorials() -> &'static [BigInt] {
    static TABLE: OnceLock<Vec<BigInt>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut v = vec![BigInt::one()];
        for k in 1..FACT_TABLE {
            let next = &v[k - 1] * BigInt::from(k);
            v.push(next);
        }
        v
    })
}

fn fact(n: i64) -> BigInt {
    let t = factorials();
    if (n as usize) < t.len() {
        t[n as usize].clone()
    } else {
        (t.len() as i64..=n).fold(t[t.len() - 1].clone(), |a, k| a * BigInt::from(k))
    }
}

/// Doubled coupling labels (2l, 2μ, 2j, 2n, 2J, 2ν).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CouplingLabel {
    pub l2: i32,
    pub mu2: i32,
    pub j2: i32,
    pub n2: i32,
    pub jj2: i32,
    pub nu2: i32,
}

impl CouplingLabel {
    pub fn new(l2: i32, mu2: i32, j2: i32, n2: i32, jj2: i32, nu2: i32) -> Self {
        Self {
            l2,
            mu2,
            j2,
            n2,
            jj2,
            nu2,
        }
    }

    /// Parity of projections, ranges, triangle rule and ν = μ + n.
    pub fn is_valid(&self) -> bool {
        let ok_pair = |j: i32, m: i32| j >= 0 && m.abs() <= j && (j - m) % 2 == 0;
        ok_pair(self.l2, self.mu2)
            && ok_pair(self.j2, self.n2)
            && ok_pair(self.jj2, self.nu2)
            && self.nu2 == self.mu2 + self.n2
            && (self.l2 + self.j2 + self.jj2) % 2 == 0
            && self.jj2 >= (self.l2 - self.j2).abs()
            && self.jj2 <= self.l2 + self.j2
    }
}

/// Exact square of the coefficient times its sign.
pub fn clebsch_gordan_exact(c: &CouplingLabel) -> (i8, BigRational) {
    if !c.is_valid() {
        return (0, BigRational::zero());
    }
    // undoubled integer combinations
    let (a, am, b, bm, j, m) = (
        c.l2 as i64,
        c.mu2 as i64,
        c.j2 as i64,
        c.n2 as i64,
        c.jj2 as i64,
        c.nu2 as i64,
    );
    let h = |x: i64| x / 2;
    let pref_num = BigInt::from(j + 1)
        * fact(h(j + a - b))
        * fact(h(j - a + b))
        * fact(h(a + b - j))
        * fact(h(j + m))
        * fact(h(j - m))
        * fact(h(a - am))
        * fact(h(a + am))
        * fact(h(b - bm))
        * fact(h(b + bm));
    let pref = BigRational::new(pref_num, fact(h(a + b + j) + 1));
    let kmin = 0.max(h(b - j - am)).max(h(a + bm - j));
    let kmax = h(a + b - j).min(h(a - am)).min(h(b + bm));
    let mut sum = BigRational::zero();
    for k in kmin..=kmax {
        let den = fact(k)
            * fact(h(a + b - j) - k)
            * fact(h(a - am) - k)
            * fact(h(b + bm) - k)
            * fact(h(j - b + am) + k)
            * fact(h(j - a - bm) + k);
        let term = BigRational::new(BigInt::one(), den);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    if sum.is_zero() {
        return (0, sum);
    }
    let sign = if sum.is_negative() { -1 } else { 1 };
    (sign, pref * &sum * &sum)
}

/// ⟨l μ; j n | J ν⟩; invalid couplings give 0.
pub fn clebsch_gordan(c: &CouplingLabel) -> f64 {
    let (sign, sq) = clebsch_gordan_exact(c);
    if sign == 0 {
        return 0.0;
    }
    sign as f64 * sq.to_f64().unwrap_or(0.0).sqrt()
}

/// Rows (l2, mu2, j2, n2, jj2, nu2, value) for all couplings with total 2J,
/// over all l ≤ J + j and 2j ≤ 2`j_max2`.
pub fn coupling_table(jj2: i32, j_max2: i32) -> Vec<(CouplingLabel, f64)> {
    let mut rows = Vec::new();
    for j2 in 0..=j_max2 {
        for l2 in (0..=(jj2 + j2)).step_by(2) {
            for mu2 in (-l2..=l2).step_by(2) {
                for n2 in (-j2..=j2).step_by(2) {
                    for nu2 in (-jj2..=jj2).step_by(2) {
                        let c = CouplingLabel::new(l2, mu2, j2, n2, jj2, nu2);
                        if c.is_valid() {
                            rows.push((c, clebsch_gordan(&c)));
                        }
                    }
                }
            }
        }
    }
    rows
}
