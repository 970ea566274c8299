use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Dense integer polynomial, coefficient `i` multiplying `X^i`.
///
/// The coefficient vector never ends in a zero, so the zero polynomial is
/// the empty vector. The same type represents classes of `Z[X]/(X^N - 1)`
/// once reduced with [`IntPoly::reduce_cyclic`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<i64>", into = "Vec<i64>")]
pub struct IntPoly {
    coeffs: Vec<i64>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly { coeffs: vec![1] }
    }

    pub fn monomial(coeff: i64, degree: usize) -> Self {
        let mut coeffs = vec![0; degree + 1];
        coeffs[degree] = coeff;
        IntPoly::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    /// `X^n - 1`.
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut coeffs = vec![0; n + 1];
        coeffs[0] = -1;
        coeffs[n] += 1;
        IntPoly::from_coeffs(coeffs)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> i64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> i64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff() == 1
    }

    pub fn eval(&self, x: i64) -> i64 {
        self.coeffs.iter().rev().fold(0i64, |acc, &c| {
            checked(acc.checked_mul(x).and_then(|v| v.checked_add(c)))
        })
    }

    pub fn scale(&self, c: i64) -> Self {
        IntPoly::from_coeffs(
            self.coeffs
                .iter()
                .map(|&a| checked(a.checked_mul(c)))
                .collect(),
        )
    }

    /// Shift by `X^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![0; k];
        coeffs.extend_from_slice(&self.coeffs);
        IntPoly { coeffs }
    }

    /// Quotient and remainder by a monic divisor; exact over the integers.
    ///
    /// Panics if `divisor` is not monic.
    pub fn div_rem_monic(&self, divisor: &IntPoly) -> (IntPoly, IntPoly) {
        assert!(divisor.is_monic(), "division by a non-monic polynomial");
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (IntPoly::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0i64; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i];
            if c == 0 {
                continue;
            }
            quot[i - dd] = c;
            for (j, &dj) in divisor.coeffs.iter().enumerate() {
                if dj != 0 {
                    let slot = &mut rem[i - dd + j];
                    *slot = checked(slot.checked_sub(checked(c.checked_mul(dj))));
                }
            }
        }
        rem.truncate(dd);
        (IntPoly::from_coeffs(quot), IntPoly::from_coeffs(rem))
    }

    pub fn rem_monic(&self, divisor: &IntPoly) -> IntPoly {
        self.div_rem_monic(divisor).1
    }

    /// `Some(self / divisor)` when the monic `divisor` divides `self` exactly.
    pub fn exact_div_monic(&self, divisor: &IntPoly) -> Option<IntPoly> {
        let (q, r) = self.div_rem_monic(divisor);
        r.is_zero().then_some(q)
    }

    /// True iff the monic `divisor` divides `self` in `Z[X]`.
    pub fn is_divisible_by(&self, divisor: &IntPoly) -> bool {
        self.rem_monic(divisor).is_zero()
    }

    /// Representative of degree `< n` modulo `X^n - 1`.
    pub fn reduce_cyclic(&self, n: u64) -> IntPoly {
        let n = n as usize;
        if self.coeffs.len() <= n {
            return self.clone();
        }
        let mut out = vec![0i64; n];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i % n] = checked(out[i % n].checked_add(c));
        }
        IntPoly::from_coeffs(out)
    }

    /// `f(X^k) mod (X^n - 1)`.
    pub fn compose_power(&self, k: u64, n: u64) -> IntPoly {
        let mut out = vec![0i64; n as usize];
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                let e = ((i as u128 * k as u128) % n as u128) as usize;
                out[e] = checked(out[e].checked_add(c));
            }
        }
        IntPoly::from_coeffs(out)
    }

    /// Product reduced modulo `X^n - 1`.
    pub fn mul_cyclic(&self, other: &IntPoly, n: u64) -> IntPoly {
        let n = n as usize;
        let mut out = vec![0i64; n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b != 0 {
                    let e = (i + j) % n;
                    out[e] = checked(out[e].checked_add(checked(a.checked_mul(b))));
                }
            }
        }
        IntPoly::from_coeffs(out)
    }
}

#[inline]
fn checked(v: Option<i64>) -> i64 {
    v.expect("integer polynomial coefficient overflow")
}

impl From<Vec<i64>> for IntPoly {
    fn from(v: Vec<i64>) -> Self {
        IntPoly::from_coeffs(v)
    }
}

impl From<IntPoly> for Vec<i64> {
    fn from(p: IntPoly) -> Self {
        p.coeffs
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::from_coeffs(
            (0..len)
                .map(|i| checked(self.coeff(i).checked_add(rhs.coeff(i))))
                .collect(),
        )
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::from_coeffs(
            (0..len)
                .map(|i| checked(self.coeff(i).checked_sub(rhs.coeff(i))))
                .collect(),
        )
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        self.scale(-1)
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![0i64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = checked(out[i + j].checked_add(checked(a.checked_mul(b))));
            }
        }
        IntPoly::from_coeffs(out)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c < 0 { '-' } else { '+' })?;
            }
            first = false;
            match (i, mag) {
                (0, _) => write!(f, "{mag}")?,
                (1, 1) => write!(f, "X")?,
                (1, _) => write!(f, "{mag}X")?,
                (_, 1) => write!(f, "X^{i}")?,
                _ => write!(f, "{mag}X^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_coeffs(c.to_vec())
    }

    #[test]
    fn normalization_trims_high_zeros() {
        assert_eq!(p(&[1, 2, 0, 0]).coeffs(), &[1, 2]);
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[0, 0]).degree(), None);
    }

    #[test]
    fn division_by_monic() {
        // X^6 - 1 = (X^3 - 1)(X^3 + 1)
        let f = IntPoly::x_pow_minus_one(6);
        let g = p(&[1, 0, 0, 1]);
        let (q, r) = f.div_rem_monic(&g);
        assert!(r.is_zero());
        assert_eq!(q, IntPoly::x_pow_minus_one(3));
        // 1 + X + X^2 mod (X + 1) = 1
        assert_eq!(p(&[1, 1, 1]).rem_monic(&p(&[1, 1])), IntPoly::one());
        assert_eq!(p(&[5]).rem_monic(&p(&[1, 1])), p(&[5]));
    }

    #[test]
    fn cyclic_reduction_and_composition() {
        assert_eq!(IntPoly::monomial(1, 4).compose_power(1, 4), IntPoly::one());
        assert_eq!(p(&[0, 1]).compose_power(4, 4), IntPoly::one());
        assert_eq!(p(&[1, 1]).compose_power(2, 4), p(&[1, 0, 1]));
        assert_eq!(p(&[1, 1, 1, 1, 1]).reduce_cyclic(4), p(&[2, 1, 1, 1]));
        let a = p(&[1, 1]);
        let b = p(&[1, 0, 1]);
        assert_eq!(a.mul_cyclic(&b, 4), p(&[1, 1, 1, 1]));
        assert_eq!(a.mul_cyclic(&b, 3), p(&[2, 1, 1]));
    }

    #[test]
    fn arithmetic_and_display() {
        let a = p(&[1, -1, 1]);
        let b = p(&[1, 1]);
        assert_eq!(&a * &b, p(&[1, 0, 0, 1]));
        assert_eq!(&(&a + &b) - &b, a);
        assert_eq!(format!("{}", p(&[-1, 1])), "-1 + X");
        assert_eq!(
            format!("{}", p(&[1, 1, 0, 0, 0, 0, 1, 1])),
            "1 + X + X^6 + X^7"
        );
        assert_eq!(format!("{}", p(&[2, 0, 0, -3])), "2 - 3X^3");
        assert_eq!(p(&[1, 1, 1]).eval(1), 3);
    }
}
