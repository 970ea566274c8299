//! Vanishing of mask polynomials at roots of unity, decided by exact
//! cyclotomic divisibility.
//!
//! Convention: with `w = exp(2 pi i / N)`, `A(w^d) = 0` for `d | N` holds iff
//! `Phi_{N/d}` divides `A(X)`. Galois conjugation permutes the residues of a
//! divisor class `d Z_N^*`, so the full zero set is the union of the classes
//! of the divisors returned by [`zero_divisors`].

use serde::{Deserialize, Serialize};

use super::cyclotomic::cyclotomic;
use super::modulus::{gcd, Modulus};
use super::poly::IntPoly;
use super::sets::MaskSource;
use crate::error::{Error, Result};

/// A union of divisor classes `d Z_N^*`, indexed by the divisors `d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DivisorClassSet {
    pub modulus: Modulus,
    /// Ascending divisors of `n`.
    pub divisors: Vec<u64>,
}

impl DivisorClassSet {
    pub fn new(modulus: Modulus, mut divisors: Vec<u64>) -> Result<Self> {
        divisors.sort_unstable();
        divisors.dedup();
        for &d in &divisors {
            modulus.check_divisor(d)?;
        }
        Ok(DivisorClassSet { modulus, divisors })
    }

    pub fn contains(&self, d: u64) -> bool {
        self.divisors.binary_search(&d).is_ok()
    }

    /// Whether the residue `x` lies in one of the classes.
    pub fn contains_residue(&self, x: u64) -> bool {
        self.contains(self.modulus.class_of(x))
    }

    /// Every residue of the union, ascending.
    pub fn residues(&self) -> Vec<u64> {
        (0..self.modulus.n())
            .filter(|&x| self.contains_residue(x))
            .collect()
    }

    pub fn is_empty(&self) -> bool {
        self.divisors.is_empty()
    }
}

/// True iff `A(w^d) = 0`, i.e. `Phi_{n/d} | A(X)`.
pub fn vanishes_at<A: MaskSource + ?Sized>(a: &A, d: u64) -> Result<bool> {
    let m = a.modulus();
    m.check_divisor(d)?;
    Ok(a.mask_poly().is_divisible_by(&cyclotomic(m.n() / d)))
}

/// The divisors `d | n` with `A(w^d) = 0`.
pub fn zero_divisors<A: MaskSource + ?Sized>(a: &A) -> DivisorClassSet {
    let m = a.modulus();
    let poly = a.mask_poly();
    let divisors = m
        .divisors()
        .into_iter()
        .filter(|&d| poly.is_divisible_by(&cyclotomic(m.n() / d)))
        .collect();
    DivisorClassSet {
        modulus: m.clone(),
        divisors,
    }
}

/// The divisors `d` such that no `m` with `d | m | n` is a zero divisor.
pub fn d_set<A: MaskSource + ?Sized>(a: &A) -> Vec<u64> {
    d_set_from_zeros(&zero_divisors(a))
}

pub fn d_set_from_zeros(zeros: &DivisorClassSet) -> Vec<u64> {
    zeros
        .modulus
        .divisors()
        .into_iter()
        .filter(|&d| !zeros.divisors.iter().any(|&z| z % d == 0))
        .collect()
}

/// Largest coefficient over the `n` slots of `f mod (X^n - 1)`.
pub fn max_coefficient(f: &IntPoly, m: &Modulus) -> i64 {
    let r = f.reduce_cyclic(m.n());
    let top = r.coeffs().iter().copied().max().unwrap_or(0);
    if (r.coeffs().len() as u64) < m.n() {
        top.max(0)
    } else {
        top
    }
}

/// `f(X^k) mod (X^n - 1)`.
pub fn compose_power(f: &IntPoly, k: u64, m: &Modulus) -> IntPoly {
    f.compose_power(k, m.n())
}

/// All `(s, t)` with `s, t >= 0` and `k = s m + t n`, for coprime `m`, `n`
/// and `0 < k <= m n`.
pub fn count_reps(k: u64, m: u64, n: u64) -> Result<Vec<(u64, u64)>> {
    if m == 0 || n == 0 {
        return Err(Error::Precondition("m and n must be positive".into()));
    }
    let g = gcd(m, n);
    if g != 1 {
        return Err(Error::NotCoprime { m, n, gcd: g });
    }
    if k == 0 || k > m * n {
        return Err(Error::Precondition(format!(
            "need 0 < k <= mn, got k = {k}"
        )));
    }
    Ok((0..=k / m)
        .filter(|s| (k - s * m) % n == 0)
        .map(|s| (s, (k - s * m) / n))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::sets::{ResidueMultiset, ResidueSet};

    fn set(n: u64, e: &[i64]) -> ResidueSet {
        ResidueSet::new(Modulus::new(n).unwrap(), e.iter().copied()).unwrap()
    }

    #[test]
    fn monomials_never_vanish() {
        let a = set(12, &[5]);
        for d in Modulus::new(12).unwrap().divisors() {
            assert!(!vanishes_at(&a, d).unwrap());
        }
        assert!(zero_divisors(&a).is_empty());
    }

    #[test]
    fn full_group_and_antipodal_pair() {
        let full = ResidueSet::full(Modulus::new(12).unwrap());
        assert!(vanishes_at(&full, 1).unwrap());
        assert!(!vanishes_at(&full, 12).unwrap());
        assert_eq!(zero_divisors(&full).divisors, vec![1, 2, 3, 4, 6]);
        let a = set(12, &[0, 6]);
        assert!(vanishes_at(&a, 1).unwrap());
        assert!(!vanishes_at(&a, 4).unwrap());
        assert!(matches!(
            vanishes_at(&a, 5),
            Err(Error::NotADivisor { d: 5, n: 12 })
        ));
    }

    #[test]
    fn four_consecutive_in_z8() {
        // 1 + X + X^2 + X^3 = Phi_2 Phi_4
        let a = set(8, &[0, 1, 2, 3]);
        assert_eq!(zero_divisors(&a).divisors, vec![2, 4]);
        assert_eq!(d_set(&a), vec![8]);
    }

    #[test]
    fn antipodal_pair_d_set_by_scan() {
        // 1 + X^6 = Phi_4 Phi_12, so the zero divisors are 3 and 1.
        let a = set(12, &[0, 6]);
        let zeros = zero_divisors(&a);
        assert_eq!(zeros.divisors, vec![1, 3]);
        // direct scan of the lattice: d is kept when no multiple of d dividing 12 is a zero
        let m = Modulus::new(12).unwrap();
        let mut expected = Vec::new();
        for d in m.divisors() {
            if m.divisors()
                .iter()
                .filter(|&&x| x % d == 0)
                .all(|&x| !zeros.contains(x))
            {
                expected.push(d);
            }
        }
        assert_eq!(expected, vec![2, 4, 6, 12]);
        assert_eq!(d_set(&a), expected);
    }

    #[test]
    fn empty_set_vanishes_everywhere() {
        let e = ResidueSet::new(Modulus::new(6).unwrap(), []).unwrap();
        assert_eq!(zero_divisors(&e).divisors, vec![1, 2, 3, 6]);
        let z = ResidueMultiset::zero(Modulus::new(6).unwrap());
        assert!(vanishes_at(&z, 6).unwrap());
    }

    #[test]
    fn no_zeros_means_full_d_set() {
        let a = set(10, &[0]);
        assert_eq!(d_set(&a), Modulus::new(10).unwrap().divisors());
    }

    #[test]
    fn class_membership() {
        let zeros = DivisorClassSet::new(Modulus::new(12).unwrap(), vec![2, 4]).unwrap();
        assert_eq!(zeros.residues(), vec![2, 4, 8, 10]);
        assert!(DivisorClassSet::new(Modulus::new(12).unwrap(), vec![5]).is_err());
    }

    #[test]
    fn max_coefficients() {
        let m = Modulus::new(12).unwrap();
        assert_eq!(max_coefficient(&set(12, &[0, 1, 6, 7]).mask_poly(), &m), 1);
        assert_eq!(max_coefficient(&IntPoly::zero(), &m), 0);
        // 6 X^2 Phi_2(X^6) = 6 X^2 + 6 X^8
        let f = IntPoly::from_coeffs(vec![0, 0, 6, 0, 0, 0, 0, 0, 6]);
        assert_eq!(max_coefficient(&f, &m), 6);
        assert_eq!(max_coefficient(&IntPoly::from_coeffs(vec![-1, -2]), &m), 0);
    }

    #[test]
    fn compose_power_examples() {
        let m = Modulus::new(4).unwrap();
        assert_eq!(
            compose_power(&IntPoly::monomial(1, 1), 4, &m),
            IntPoly::one()
        );
        let f = set(4, &[0, 1]).mask_poly();
        assert_eq!(compose_power(&f, 2, &m).coeffs(), &[1, 0, 1]);
        assert_eq!(compose_power(&f, 1, &m), f);
    }

    #[test]
    fn two_coin_representations() {
        assert_eq!(count_reps(6, 2, 3).unwrap(), vec![(0, 2), (3, 0)]);
        assert_eq!(count_reps(1, 2, 3).unwrap(), vec![]);
        assert_eq!(count_reps(5, 2, 3).unwrap(), vec![(1, 1)]);
        assert!(matches!(
            count_reps(4, 2, 4),
            Err(Error::NotCoprime { gcd: 2, .. })
        ));
        assert!(count_reps(0, 2, 3).is_err());
        assert!(count_reps(7, 2, 3).is_err());
    }

    #[test]
    fn count_reps_matches_brute_force() {
        for m in 1..12u64 {
            for n in 1..12u64 {
                if gcd(m, n) != 1 {
                    continue;
                }
                for k in 1..=m * n {
                    let mut brute = Vec::new();
                    for s in 0..=k {
                        for t in 0..=k {
                            if s * m + t * n == k {
                                brute.push((s, t));
                            }
                        }
                    }
                    let got = count_reps(k, m, n).unwrap();
                    assert_eq!(got, brute);
                    if k < m * n {
                        assert!(got.len() <= 1);
                    } else {
                        assert_eq!(got, vec![(0, m), (n, 0)]);
                    }
                }
            }
        }
    }
}
