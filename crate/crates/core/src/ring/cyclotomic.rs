//! Memoized cyclotomic polynomials.
//!
//! `Phi_m` is obtained by exact division of `X^m - 1` by `Phi_d` for every
//! proper divisor `d` of `m`. Entries are inserted fully built behind an
//! `RwLock`, so concurrent readers only ever observe finished polynomials.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use super::modulus::Modulus;
use super::poly::IntPoly;

fn table() -> &'static RwLock<HashMap<u64, Arc<IntPoly>>> {
    static TABLE: OnceLock<RwLock<HashMap<u64, Arc<IntPoly>>>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// The `m`-th cyclotomic polynomial. Panics for `m == 0`.
pub fn cyclotomic(m: u64) -> Arc<IntPoly> {
    assert!(m >= 1, "cyclotomic index must be positive");
    if let Some(p) = table().read().expect("cyclotomic table poisoned").get(&m) {
        return Arc::clone(p);
    }
    let poly = if m == 1 {
        IntPoly::from_coeffs(vec![-1, 1])
    } else {
        let modulus = Modulus::new(m).expect("positive index");
        let mut f = IntPoly::x_pow_minus_one(m as usize);
        for d in modulus.divisors() {
            if d < m {
                f = f
                    .exact_div_monic(&cyclotomic(d))
                    .expect("Phi_d divides X^m - 1 for d | m");
            }
        }
        f
    };
    let mut guard = table().write().expect("cyclotomic table poisoned");
    Arc::clone(guard.entry(m).or_insert_with(|| Arc::new(poly)))
}

/// Builds `Phi_d` for every divisor `d` of `m` up front, so later lookups
/// from worker threads only take the read lock.
pub fn prepopulate(m: &Modulus) {
    for d in m.divisors() {
        cyclotomic(d);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::modulus::{factorize, Modulus};

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_coeffs(c.to_vec())
    }

    #[test]
    fn small_indices() {
        assert_eq!(*cyclotomic(1), p(&[-1, 1]));
        assert_eq!(*cyclotomic(2), p(&[1, 1]));
        assert_eq!(*cyclotomic(4), p(&[1, 0, 1]));
        assert_eq!(*cyclotomic(12), p(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn phi6_by_explicit_division() {
        // (X^6 - 1) / ((X - 1)(X + 1)(X^2 + X + 1)), carried out by hand
        let denom = &(&p(&[-1, 1]) * &p(&[1, 1])) * &p(&[1, 1, 1]);
        let q = IntPoly::x_pow_minus_one(6).exact_div_monic(&denom).unwrap();
        assert_eq!(q, p(&[1, -1, 1]));
        assert_eq!(*cyclotomic(6), q);
    }

    #[test]
    fn phi105_has_a_minus_two() {
        assert!(cyclotomic(105).coeffs().contains(&-2));
    }

    #[test]
    fn values_at_one() {
        for m in 2..=300u64 {
            let f = factorize(m);
            let v = cyclotomic(m).eval(1);
            if f.len() == 1 {
                assert_eq!(v, f[0].0 as i64, "Phi_{m}(1)");
            } else {
                assert_eq!(v, 1, "Phi_{m}(1)");
            }
        }
    }

    #[test]
    fn product_over_divisors_is_x_n_minus_one() {
        for n in 1..=200u64 {
            let m = Modulus::new(n).unwrap();
            let prod = m
                .divisors()
                .into_iter()
                .fold(IntPoly::one(), |acc, d| &acc * &*cyclotomic(d));
            assert_eq!(prod, IntPoly::x_pow_minus_one(n as usize), "n = {n}");
        }
    }

    #[test]
    fn concurrent_readers_agree() {
        let handles: Vec<_> = (0..4)
            .map(|t| {
                std::thread::spawn(move || {
                    (1..120u64)
                        .map(|m| (*cyclotomic(m + t)).clone())
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        let results: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        for (t, polys) in results.iter().enumerate() {
            for (i, poly) in polys.iter().enumerate() {
                assert_eq!(*poly, *cyclotomic(i as u64 + 1 + t as u64));
            }
        }
    }
}
