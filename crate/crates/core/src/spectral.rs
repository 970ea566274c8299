//! Spectral sets of `Z_N`.
//!
//! `B` is a spectrum of `A` iff `#B = #A` and every nonzero difference of
//! `B` lies in the zero set of `A(X)`. Spectra are found by a clique search
//! on the graph joining residues whose difference is a zero.

use serde::{Deserialize, Serialize};

use crate::bits;
use crate::error::{Error, Result};
use crate::ring::{d_set_from_zeros, zero_divisors, DivisorClassSet, Modulus, ResidueSet};
use crate::tiling::{s_a, s_a_product, t1, t2};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumWitness {
    pub a: ResidueSet,
    pub b: ResidueSet,
}

/// Equal sizes and every nonzero difference of `b` in the zero set of `a`.
pub fn is_spectrum(a: &ResidueSet, b: &ResidueSet) -> Result<bool> {
    a.check_same_group(b)?;
    if a.len() != b.len() {
        return Ok(false);
    }
    Ok(differences_in(&zero_divisors(a), b))
}

/// Whether all pairwise differences of `b` fall in the given classes.
pub fn differences_in(zeros: &DivisorClassSet, b: &ResidueSet) -> bool {
    let n = b.n();
    let e = b.elements();
    e.iter().enumerate().all(|(i, &x)| {
        e[i + 1..]
            .iter()
            .all(|&y| zeros.contains_residue((y + n - x) % n))
    })
}

/// Clique search over `Z_n` for a fixed zero set.
#[derive(Clone, Debug)]
pub struct SpectrumSearch {
    n: usize,
    adj: Vec<u128>,
    min_d: usize,
}

impl SpectrumSearch {
    /// Requires `n <= 128`.
    pub fn new(zeros: &DivisorClassSet) -> Self {
        let n = zeros.modulus.n() as usize;
        assert!(n as u64 <= bits::MAX_MASK_N);
        let conn = (1..n)
            .filter(|&x| zeros.contains_residue(x as u64))
            .fold(0u128, |m, x| m | 1u128 << x);
        let adj = (0..n).map(|v| bits::rotate(conn, v, n)).collect();
        let min_d = d_set_from_zeros(zeros)
            .into_iter()
            .min()
            .expect("n itself is always in D") as usize;
        SpectrumSearch { n, adj, min_d }
    }

    /// Smallest `n in D`; no spectrum is larger.
    pub fn min_d(&self) -> usize {
        self.min_d
    }

    /// Lexicographically first clique of size `k` containing 0.
    pub fn find(&self, k: usize) -> Option<u128> {
        if k == 0 || k > self.min_d {
            return None;
        }
        self.extend(1, self.adj[0], k - 1)
    }

    fn residue_span(&self, mask: u128) -> usize {
        // residues mod min_d hit by the mask
        let w = self.min_d;
        if w >= 128 {
            return mask.count_ones() as usize;
        }
        let low = bits::full(w);
        let mut folded = 0u128;
        let mut m = mask;
        while m != 0 {
            folded |= m & low;
            m >>= w;
        }
        folded.count_ones() as usize
    }

    fn extend(&self, chosen: u128, cand: u128, need: usize) -> Option<u128> {
        if need == 0 {
            return Some(chosen);
        }
        if (cand.count_ones() as usize) < need || self.residue_span(cand) < need {
            return None;
        }
        let mut cand = cand;
        while cand != 0 {
            let v = cand.trailing_zeros() as usize;
            let above = cand & !bits::full(v + 1);
            if let Some(b) = self.extend(chosen | 1u128 << v, above & self.adj[v], need - 1) {
                return Some(b);
            }
            cand = above;
            if (cand.count_ones() as usize) < need || self.residue_span(cand) < need {
                return None;
            }
        }
        None
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

/// A spectrum containing 0, or `None` when `A` is not spectral.
pub fn find_spectrum(a: &ResidueSet) -> Result<Option<SpectrumWitness>> {
    if a.is_empty() {
        return Err(Error::Precondition("the empty set has no spectrum".into()));
    }
    if a.n() > bits::MAX_MASK_N {
        return Err(Error::ResourceLimit(format!(
            "spectrum search supports N <= {}, got {}",
            bits::MAX_MASK_N,
            a.n()
        )));
    }
    let search = SpectrumSearch::new(&zero_divisors(a));
    Ok(search.find(a.len()).map(|b| SpectrumWitness {
        a: a.clone(),
        b: ResidueSet::from_mask(a.modulus().clone(), b),
    }))
}

/// `{ sum_s k_s N / s : 0 <= k_s < p_s }` over `s in S_A`, for sets with
/// `T1` and `T2`.
pub fn laba_spectrum(a: &ResidueSet) -> Result<SpectrumWitness> {
    if !(t1(a) && t2(a)) {
        return Err(Error::Precondition(format!(
            "{a} does not satisfy T1 and T2"
        )));
    }
    let b = laba_candidate(a.modulus(), &s_a(a))?;
    if !is_spectrum(a, &b)? {
        return Err(Error::ConstructionFailed(format!(
            "candidate {b} is not a spectrum of {a}"
        )));
    }
    Ok(SpectrumWitness { a: a.clone(), b })
}

/// The point set `{ sum_s k_s N / s }` for a list of prime powers `s | N`.
pub fn laba_candidate(m: &Modulus, s: &[u64]) -> Result<ResidueSet> {
    let n = m.n();
    let mut pts = vec![0u64];
    for &x in s {
        m.check_divisor(x)?;
        let p = crate::ring::factorize(x)[0].0;
        let step = n / x;
        pts = pts
            .iter()
            .flat_map(|&b| (0..p).map(move |k| (b + k * step) % n))
            .collect();
    }
    ResidueSet::from_residues(m.clone(), &pts)
        .map_err(|e| Error::ConstructionFailed(format!("points collide: {e}")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub size: u64,
    /// Smallest member of `D`; every spectral set has at most this size.
    pub min_d: u64,
    /// `prod_{s in S_A} Phi_s(1)`, which always divides `#A`.
    pub lower_bound: u64,
    pub within_spectral_bound: bool,
    pub divisibility_holds: bool,
}

pub fn bounds_report(a: &ResidueSet) -> BoundsReport {
    let zeros = zero_divisors(a);
    let min_d = d_set_from_zeros(&zeros).into_iter().min().unwrap_or(a.n());
    let lower_bound = s_a_product(a.modulus(), &s_a(a));
    let size = a.len() as u64;
    BoundsReport {
        size,
        min_d,
        lower_bound,
        within_spectral_bound: size <= min_d,
        divisibility_holds: size % lower_bound == 0,
    }
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
    fn spectrum_examples() {
        assert!(is_spectrum(&set(5, &[0]), &set(5, &[0])).unwrap());
        assert!(is_spectrum(&set(12, &[0, 6]), &set(12, &[0, 1])).unwrap());
        assert!(is_spectrum(&set(8, &[0, 1, 2, 3]), &set(8, &[0, 2, 4, 6])).unwrap());
        assert!(!is_spectrum(&set(8, &[0, 1, 2, 3]), &set(8, &[0, 1, 4, 6])).unwrap());
        assert!(!is_spectrum(&set(8, &[0, 1]), &set(8, &[0])).unwrap());
    }

    #[test]
    fn search_examples() {
        let w = find_spectrum(&ResidueSet::full(z(10))).unwrap().unwrap();
        assert_eq!(w.b, ResidueSet::full(z(10)));
        let a = set(9, &[0, 1, 2]);
        let w = find_spectrum(&a).unwrap().unwrap();
        assert!(is_spectrum(&a, &w.b).unwrap());
        assert_eq!(w.b, set(9, &[0, 3, 6]));
        assert!(find_spectrum(&set(9, &[0, 1])).unwrap().is_none());
        let w = find_spectrum(&set(8, &[0, 1, 2, 3])).unwrap().unwrap();
        assert_eq!(w.b, set(8, &[0, 2, 4, 6]));
        assert!(find_spectrum(&set(8, &[0, 1, 3])).unwrap().is_none());
    }

    #[test]
    fn laba_examples() {
        assert_eq!(laba_spectrum(&set(4, &[0, 1])).unwrap().b, set(4, &[0, 2]));
        assert_eq!(laba_spectrum(&set(7, &[3])).unwrap().b, set(7, &[0]));
        assert_eq!(
            laba_spectrum(&set(8, &[0, 1, 2, 3])).unwrap().b,
            set(8, &[0, 2, 4, 6])
        );
        assert!(matches!(
            laba_spectrum(&set(8, &[0, 1, 3])),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn bounds() {
        let r = bounds_report(&ResidueSet::full(z(12)));
        assert_eq!((r.min_d, r.size, r.lower_bound), (12, 12, 12));
        assert!(r.within_spectral_bound && r.divisibility_holds);
        let r = bounds_report(&set(12, &[0, 1, 5]));
        assert!(r.divisibility_holds);
    }
}
