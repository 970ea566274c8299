//! Translational tiles of `Z_N`: cyclotomic criteria, the `T1`/`T2`
//! conditions, complement search, and the explicit complement for `Z_{p^n}`.

use serde::{Deserialize, Serialize};

use crate::bits;
use crate::error::{Error, Result};
use crate::ring::{cyclotomic, vanishes_at, zero_divisors, MaskSource, Modulus, ResidueSet};

/// `A + B` covers every residue exactly `level` times.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TilingWitness {
    pub a: ResidueSet,
    pub b: ResidueSet,
    pub level: u64,
}

/// Exponents `nu` with `Phi_{p^nu} | A(X)` for `A` in `Z_{p^n}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimePowerSpectrumProfile {
    pub p: u64,
    pub n: u32,
    pub nu_list: Vec<u32>,
}

/// How `T2` treats products of powers of the same prime.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum T2Reading {
    /// Only products of pairwise coprime members of `S_A`, which divide `N`.
    #[default]
    Coprime,
    /// Every product of two or more distinct members of `S_A`.
    AllProducts,
}

/// Number of representations of each residue as `a + b`, or `None` when the
/// counts are not all equal.
pub fn tiling_level(a: &ResidueSet, b: &ResidueSet) -> Result<Option<u64>> {
    a.check_same_group(b)?;
    let n = a.n();
    let mut hits = vec![0u64; n as usize];
    for &x in a.elements() {
        for &y in b.elements() {
            hits[((x + y) % n) as usize] += 1;
        }
    }
    let first = hits[0];
    Ok(hits.iter().all(|&h| h == first).then_some(first))
}

/// `A (+) B = Z_N` with every residue hit exactly once.
pub fn is_tiling_pair(a: &ResidueSet, b: &ResidueSet) -> Result<bool> {
    a.check_same_group(b)?;
    if (a.len() * b.len()) as u64 != a.n() {
        return Ok(false);
    }
    Ok(tiling_level(a, b)? == Some(1))
}

/// `N = A(1) B(1)` and every `Phi_t`, `1 < t | N`, divides `A(X)` or `B(X)`.
pub fn cyclotomic_tiling_criterion(a: &ResidueSet, b: &ResidueSet) -> Result<bool> {
    a.check_same_group(b)?;
    let n = a.n();
    if (a.len() * b.len()) as u64 != n {
        return Ok(false);
    }
    let za = zero_divisors(a);
    let zb = zero_divisors(b);
    Ok(a.modulus()
        .divisors()
        .into_iter()
        .filter(|&d| d != n)
        .all(|d| za.contains(d) || zb.contains(d)))
}

/// `S_A`: prime powers `s | N` with `Phi_s | A(X)`, ascending.
pub fn s_a<A: MaskSource + ?Sized>(a: &A) -> Vec<u64> {
    let m = a.modulus();
    let poly = a.mask_poly();
    m.prime_powers()
        .into_iter()
        .filter(|&s| poly.is_divisible_by(&cyclotomic(s)))
        .collect()
}

/// `#A = prod_{s in S_A} Phi_s(1)`.
pub fn t1(a: &ResidueSet) -> bool {
    a.len() as u64 == s_a_product(a.modulus(), &s_a(a))
}

/// `prod_{s in S} Phi_s(1)`, i.e. the product of the underlying primes.
pub fn s_a_product(m: &Modulus, s: &[u64]) -> u64 {
    s.iter().map(|&x| prime_of(m, x)).product()
}

pub fn t2(a: &ResidueSet) -> bool {
    t2_with(a, T2Reading::Coprime)
}

pub fn t2_with(a: &ResidueSet, reading: T2Reading) -> bool {
    let s = s_a(a);
    let poly = a.mask_poly();
    let primes: Vec<u64> = s.iter().map(|&x| prime_of(a.modulus(), x)).collect();
    for subset in 1u64..(1 << s.len()) {
        if subset.count_ones() < 2 {
            continue;
        }
        let members: Vec<usize> = (0..s.len()).filter(|i| subset >> i & 1 == 1).collect();
        if reading == T2Reading::Coprime {
            let mut seen: Vec<u64> = members.iter().map(|&i| primes[i]).collect();
            seen.sort_unstable();
            seen.dedup();
            if seen.len() != members.len() {
                continue;
            }
        }
        let product: u64 = members.iter().map(|&i| s[i]).product();
        if !poly.is_divisible_by(&cyclotomic(product)) {
            return false;
        }
    }
    true
}

fn prime_of(m: &Modulus, s: u64) -> u64 {
    m.primes().find(|p| s % p == 0).expect("prime power")
}

/// Mask-level complement search with `0 in B`, covering residues in
/// ascending order. `neg_rots[r]` must be the mask of `r - A`, `rots[t]` the
/// mask of `A + t`.
struct CoverSearch<'a> {
    rots: &'a [u128],
    neg_rots: &'a [u128],
    full: u128,
}

impl CoverSearch<'_> {
    fn first(&self, covered: u128, chosen: u128) -> Option<u128> {
        if covered == self.full {
            return Some(chosen);
        }
        let r = (!covered).trailing_zeros() as usize;
        for t in bits::elements(self.neg_rots[r]) {
            let placed = self.rots[t];
            if placed & covered == 0 {
                if let Some(b) = self.first(covered | placed, chosen | 1u128 << t) {
                    return Some(b);
                }
            }
        }
        None
    }

    fn all(&self, covered: u128, chosen: u128, out: &mut Vec<u128>) {
        if covered == self.full {
            out.push(chosen);
            return;
        }
        let r = (!covered).trailing_zeros() as usize;
        for t in bits::elements(self.neg_rots[r]) {
            let placed = self.rots[t];
            if placed & covered == 0 {
                self.all(covered | placed, chosen | 1u128 << t, out);
            }
        }
    }
}

fn with_search<R>(a: u128, n: usize, f: impl FnOnce(&CoverSearch) -> R) -> R {
    let rots: Vec<u128> = (0..n).map(|t| bits::rotate(a, t, n)).collect();
    let neg = bits::negate(a, n);
    let neg_rots: Vec<u128> = (0..n).map(|t| bits::rotate(neg, t, n)).collect();
    let search = CoverSearch {
        rots: &rots,
        neg_rots: &neg_rots,
        full: bits::full(n),
    };
    f(&search)
}

/// First complement mask (containing 0) of the nonempty mask `a` in `Z_n`.
pub fn find_complement_mask(a: u128, n: usize) -> Option<u128> {
    debug_assert!(a != 0 && n <= 128);
    let k = a.count_ones() as usize;
    if n % k != 0 {
        return None;
    }
    with_search(a, n, |s| s.first(a, 1))
}

/// Every complement mask containing 0, in search order.
pub fn all_complement_masks(a: u128, n: usize) -> Vec<u128> {
    let k = a.count_ones() as usize;
    let mut out = Vec::new();
    if a == 0 || n % k != 0 {
        return out;
    }
    with_search(a, n, |s| s.all(a, 1, &mut out));
    out
}

fn mask_of(a: &ResidueSet) -> Result<u128> {
    a.mask().ok_or_else(|| {
        Error::ResourceLimit(format!(
            "complement search supports N <= {}, got {}",
            bits::MAX_MASK_N,
            a.n()
        ))
    })
}

/// A tiling complement with `0 in B`, or `None` when `A` does not tile.
pub fn find_complement(a: &ResidueSet) -> Result<Option<TilingWitness>> {
    if a.is_empty() {
        return Err(Error::Precondition(
            "the empty set has no complement".into(),
        ));
    }
    let mask = mask_of(a)?;
    Ok(
        find_complement_mask(mask, a.n() as usize).map(|b| TilingWitness {
            a: a.clone(),
            b: ResidueSet::from_mask(a.modulus().clone(), b),
            level: 1,
        }),
    )
}

/// Every complement containing 0.
pub fn all_complements(a: &ResidueSet) -> Result<Vec<ResidueSet>> {
    if a.is_empty() {
        return Err(Error::Precondition(
            "the empty set has no complement".into(),
        ));
    }
    let mask = mask_of(a)?;
    let mut out: Vec<ResidueSet> = all_complement_masks(mask, a.n() as usize)
        .into_iter()
        .map(|b| ResidueSet::from_mask(a.modulus().clone(), b))
        .collect();
    out.sort();
    Ok(out)
}

pub fn prime_power_profile(a: &ResidueSet) -> Result<PrimePowerSpectrumProfile> {
    let m = a.modulus();
    let (p, n) = m.as_prime_power().ok_or_else(|| Error::WrongModulusShape {
        n: m.n(),
        expected: "p^n".into(),
    })?;
    let mut nu_list = Vec::new();
    for nu in 1..=n {
        // Phi_{p^nu} | A  <=>  A(w^{N / p^nu}) = 0
        if vanishes_at(a, m.n() / p.pow(nu))? {
            nu_list.push(nu);
        }
    }
    Ok(PrimePowerSpectrumProfile { p, n, nu_list })
}

/// `E_nu = {0, p^{nu-1}, ..., (p-1) p^{nu-1}}`.
pub fn e_nu(m: &Modulus, nu: u32) -> Result<ResidueSet> {
    let (p, n) = m.as_prime_power().ok_or_else(|| Error::WrongModulusShape {
        n: m.n(),
        expected: "p^n".into(),
    })?;
    if nu == 0 || nu > n {
        return Err(Error::Precondition(format!("nu = {nu} outside [1, {n}]")));
    }
    let step = p.pow(nu - 1);
    ResidueSet::from_residues(m.clone(), &(0..p).map(|i| i * step).collect::<Vec<_>>())
}

/// `B = sum of E_nu` over the `nu` missing from the profile of `A`. The pair
/// is checked with [`is_tiling_pair`] before it is returned.
pub fn prime_power_complement(a: &ResidueSet) -> Result<TilingWitness> {
    let profile = prime_power_profile(a)?;
    let m = a.modulus();
    let mut b = vec![0u64];
    for nu in 1..=profile.n {
        if profile.nu_list.contains(&nu) {
            continue;
        }
        let e = e_nu(m, nu)?;
        b = b
            .iter()
            .flat_map(|&x| e.elements().iter().map(move |&y| (x + y) % m.n()))
            .collect();
    }
    let b = ResidueSet::from_residues(m.clone(), &b)
        .map_err(|e| Error::ConstructionFailed(format!("sum of E_nu is not direct: {e}")))?;
    if !is_tiling_pair(a, &b)? {
        return Err(Error::ConstructionFailed(format!(
            "{a} with B = {b} is not a tiling (level {:?})",
            tiling_level(a, &b)?
        )));
    }
    Ok(TilingWitness {
        a: a.clone(),
        b,
        level: 1,
    })
}

/// For a tiling pair: `S_A` and `S_B` partition the prime powers of `N`, and
/// `#A`, `#B` equal the products of `Phi_s(1)` over their own `S` sets.
pub fn prime_power_split_check(w: &TilingWitness) -> bool {
    let m = w.a.modulus();
    let sa = s_a(&w.a);
    let sb = s_a(&w.b);
    let disjoint = sa.iter().all(|s| !sb.contains(s));
    let mut union: Vec<u64> = sa.iter().chain(&sb).copied().collect();
    union.sort_unstable();
    union.dedup();
    disjoint
        && union == m.prime_powers()
        && w.a.len() as u64 == s_a_product(m, &sa)
        && w.b.len() as u64 == s_a_product(m, &sb)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64) -> Modulus {
        Modulus::new(n).unwrap()
    }

    fn set(n: u64, e: &[i64]) -> ResidueSet {
        ResidueSet::new(z(n), e.iter().copied()).unwrap()
    }

    #[test]
    fn tiling_pairs_in_z4() {
        let cases = [
            (set(4, &[0]), ResidueSet::full(z(4)), true),
            (set(4, &[0, 1]), set(4, &[0, 2]), true),
            (set(4, &[0, 2]), set(4, &[0, 2]), false),
        ];
        for (a, b, expect) in cases {
            assert_eq!(is_tiling_pair(&a, &b).unwrap(), expect);
            assert_eq!(cyclotomic_tiling_criterion(&a, &b).unwrap(), expect);
        }
        assert!(cyclotomic_tiling_criterion(&set(1, &[0]), &set(1, &[0])).unwrap());
        assert!(!cyclotomic_tiling_criterion(&set(6, &[0, 1]), &set(6, &[0, 1])).unwrap());
        assert!(is_tiling_pair(&set(4, &[0]), &set(6, &[0])).is_err());
        assert_eq!(
            tiling_level(&set(4, &[0, 2]), &set(4, &[0, 2])).unwrap(),
            None
        );
        assert_eq!(
            tiling_level(&ResidueSet::full(z(4)), &set(4, &[0, 1])).unwrap(),
            Some(2)
        );
    }

    #[test]
    fn s_a_examples() {
        assert_eq!(s_a(&set(4, &[0, 1])), vec![2]);
        assert!(s_a(&set(4, &[3])).is_empty());
        assert_eq!(s_a(&set(8, &[0, 1, 2, 3])), vec![2, 4]);
    }

    #[test]
    fn t1_t2_examples() {
        let a = set(4, &[0, 1]);
        assert!(t1(&a) && t2(&a));
        let a = set(8, &[0, 1, 2, 3]);
        assert!(t1(&a) && t2(&a));
        // 1 + X^3 is divisible by Phi_2 only among 3, 9, ...: S_A is empty in Z_9
        let a = set(9, &[0, 3]);
        assert!(s_a(&a).iter().all(|s| s % 3 == 0));
        assert!(!t1(&a));
    }

    #[test]
    fn t2_readings_can_disagree() {
        // 1 + X + X^2 + X^3 in Z_8: S_A = {2, 4}, Phi_8 does not divide
        let a = set(8, &[0, 1, 2, 3]);
        assert!(t2_with(&a, T2Reading::Coprime));
        assert!(!t2_with(&a, T2Reading::AllProducts));
        assert!(find_complement(&a).unwrap().is_some());
    }

    #[test]
    fn complements() {
        let w = find_complement(&set(4, &[0, 1])).unwrap().unwrap();
        assert_eq!(w.b, set(4, &[0, 2]));
        assert!(is_tiling_pair(&w.a, &w.b).unwrap());
        assert!(find_complement(&set(4, &[0, 1, 2])).unwrap().is_none());
        let w = find_complement(&ResidueSet::full(z(6))).unwrap().unwrap();
        assert_eq!(w.b, set(6, &[0]));
        assert!(find_complement(&set(8, &[0, 1, 3, 4])).unwrap().is_none());
        let all = all_complements(&set(12, &[0, 1])).unwrap();
        assert!(all
            .iter()
            .all(|b| is_tiling_pair(&set(12, &[0, 1]), b).unwrap()));
        assert!(all.contains(&set(12, &[0, 2, 4, 6, 8, 10])));
        let big = ResidueSet::new(z(130), [0]).unwrap();
        assert!(matches!(
            find_complement(&big),
            Err(Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn prime_power_construction() {
        let w = prime_power_complement(&set(4, &[0, 1])).unwrap();
        assert_eq!(w.b, set(4, &[0, 2]));
        let w = prime_power_complement(&set(4, &[0, 2])).unwrap();
        assert_eq!(w.b, set(4, &[0, 1]));
        let w = prime_power_complement(&set(7, &[0])).unwrap();
        assert_eq!(w.b, ResidueSet::full(z(7)));
        assert!(matches!(
            prime_power_complement(&set(12, &[0])),
            Err(Error::WrongModulusShape { .. })
        ));
        // {0, 1, 3} in Z_9 has an empty profile; the construction must refuse it
        assert!(matches!(
            prime_power_complement(&set(9, &[0, 1, 3])),
            Err(Error::ConstructionFailed(_))
        ));
    }

    #[test]
    fn split_check() {
        let w = TilingWitness {
            a: set(4, &[0, 1]),
            b: set(4, &[0, 2]),
            level: 1,
        };
        assert!(prime_power_split_check(&w));
        let w = TilingWitness {
            a: set(12, &[0]),
            b: ResidueSet::full(z(12)),
            level: 1,
        };
        assert!(prime_power_split_check(&w));
    }
}
