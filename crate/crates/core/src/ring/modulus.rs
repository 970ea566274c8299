use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The order `n` of a cyclic group `Z_n`, stored with its prime factorization.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct Modulus {
    n: u64,
    factorization: Vec<(u64, u32)>,
}

impl Modulus {
    pub fn new(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidModulus(n));
        }
        Ok(Modulus {
            n,
            factorization: factorize(n),
        })
    }

    #[inline]
    pub fn n(&self) -> u64 {
        self.n
    }

    /// `(prime, exponent)` pairs with strictly increasing primes.
    pub fn factorization(&self) -> &[(u64, u32)] {
        &self.factorization
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factorization.iter().map(|&(p, _)| p)
    }

    pub fn prime_count(&self) -> usize {
        self.factorization.len()
    }

    pub fn exponent_of(&self, p: u64) -> u32 {
        self.factorization
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, e)| e)
    }

    pub fn divides(&self, d: u64) -> bool {
        d != 0 && self.n % d == 0
    }

    pub fn check_divisor(&self, d: u64) -> Result<()> {
        if self.divides(d) {
            Ok(())
        } else {
            Err(Error::NotADivisor { d, n: self.n })
        }
    }

    pub fn reduce(&self, x: i64) -> u64 {
        x.rem_euclid(self.n as i64) as u64
    }

    /// All positive divisors in ascending order.
    pub fn divisors(&self) -> Vec<u64> {
        let mut out = vec![1u64];
        for &(p, e) in &self.factorization {
            let len = out.len();
            let mut pk = 1;
            for _ in 0..e {
                pk *= p;
                for i in 0..len {
                    out.push(out[i] * pk);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// The prime powers `p^a > 1` dividing `n`, ascending.
    pub fn prime_powers(&self) -> Vec<u64> {
        let mut out = Vec::new();
        for &(p, e) in &self.factorization {
            let mut pk = 1;
            for _ in 0..e {
                pk *= p;
                out.push(pk);
            }
        }
        out.sort_unstable();
        out
    }

    /// Residues coprime to `n`, ascending. For `n == 1` this is `[0]`.
    pub fn units(&self) -> Vec<u64> {
        if self.n == 1 {
            return vec![0];
        }
        (1..self.n).filter(|&u| gcd(u, self.n) == 1).collect()
    }

    /// `Some((p, e))` when `n = p^e` with `e >= 1`.
    pub fn as_prime_power(&self) -> Option<(u64, u32)> {
        match self.factorization.as_slice() {
            [(p, e)] => Some((*p, *e)),
            _ => None,
        }
    }

    /// The divisor class of `x`: `gcd(x mod n, n)`, with `gcd(0, n) = n`.
    pub fn class_of(&self, x: u64) -> u64 {
        gcd(x % self.n, self.n)
    }
}

impl TryFrom<u64> for Modulus {
    type Error = Error;
    fn try_from(n: u64) -> Result<Self> {
        Modulus::new(n)
    }
}

impl From<Modulus> for u64 {
    fn from(m: Modulus) -> u64 {
        m.n
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z_{}", self.n)
    }
}

/// Sorted divisor list of a modulus.
pub fn divisors(m: &Modulus) -> Vec<u64> {
    m.divisors()
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == [(n, 1)]
}

/// Trial-division factorization; `factorize(1)` is empty.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `p`-adic valuation of a nonzero integer.
pub fn valuation(mut x: u64, p: u64) -> u32 {
    debug_assert!(x != 0 && p >= 2);
    let mut v = 0;
    while x % p == 0 {
        x /= p;
        v += 1;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisor_lists() {
        assert_eq!(Modulus::new(1).unwrap().divisors(), vec![1]);
        assert_eq!(
            Modulus::new(12).unwrap().divisors(),
            vec![1, 2, 3, 4, 6, 12]
        );
        // p^a q^b has (a+1)(b+1) divisors
        let m = Modulus::new(2u64.pow(3) * 3u64.pow(2)).unwrap();
        assert_eq!(m.divisors().len(), 4 * 3);
        assert_eq!(Modulus::new(97).unwrap().divisors(), vec![1, 97]);
    }

    #[test]
    fn factorization_invariants() {
        for n in 1..500u64 {
            let m = Modulus::new(n).unwrap();
            let prod: u64 = m.factorization().iter().map(|&(p, e)| p.pow(e)).product();
            assert_eq!(prod, n);
            assert!(m.factorization().windows(2).all(|w| w[0].0 < w[1].0));
            assert!(m
                .factorization()
                .iter()
                .all(|&(p, e)| e >= 1 && is_prime(p)));
        }
    }

    #[test]
    fn zero_modulus_rejected() {
        assert!(matches!(Modulus::new(0), Err(Error::InvalidModulus(0))));
    }

    #[test]
    fn prime_powers_and_units() {
        let m = Modulus::new(24).unwrap();
        assert_eq!(m.prime_powers(), vec![2, 3, 4, 8]);
        assert_eq!(m.units(), vec![1, 5, 7, 11, 13, 17, 19, 23]);
        assert_eq!(m.class_of(0), 24);
        assert_eq!(m.class_of(18), 6);
        assert_eq!(Modulus::new(27).unwrap().as_prime_power(), Some((3, 3)));
        assert_eq!(Modulus::new(12).unwrap().as_prime_power(), None);
    }

    #[test]
    fn serde_as_integer() {
        let m: Modulus = serde_json::from_str("18").unwrap();
        assert_eq!(m.factorization(), &[(2, 1), (3, 2)]);
        assert_eq!(serde_json::to_string(&m).unwrap(), "18");
        assert!(serde_json::from_str::<Modulus>("0").is_err());
    }
}
