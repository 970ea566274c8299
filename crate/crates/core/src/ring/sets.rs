use std::fmt;

use serde::{Deserialize, Serialize};

use super::modulus::Modulus;
use super::poly::IntPoly;
use crate::error::{Error, Result};

/// A subset of `Z_n`, elements sorted ascending and reduced.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "SetLiteral", into = "SetLiteral")]
pub struct ResidueSet {
    modulus: Modulus,
    elements: Vec<u64>,
}

/// Wire form `{"n": <int>, "elements": [<int>, ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SetLiteral {
    pub n: u64,
    pub elements: Vec<i64>,
}

impl ResidueSet {
    /// Reduces every element mod `n`; a repeated residue is an error.
    pub fn new<I: IntoIterator<Item = i64>>(modulus: Modulus, elements: I) -> Result<Self> {
        let mut out: Vec<u64> = elements.into_iter().map(|x| modulus.reduce(x)).collect();
        out.sort_unstable();
        if let Some(w) = out.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateElement {
                element: w[0],
                n: modulus.n(),
            });
        }
        Ok(ResidueSet {
            modulus,
            elements: out,
        })
    }

    pub fn from_residues(modulus: Modulus, elements: &[u64]) -> Result<Self> {
        Self::new(modulus, elements.iter().map(|&x| x as i64))
    }

    /// Decodes a bit mask (bit `i` set iff `i` is an element). Needs `n <= 128`.
    pub fn from_mask(modulus: Modulus, mask: u128) -> Self {
        debug_assert!(modulus.n() <= 128);
        let elements = crate::bits::elements(mask).map(|i| i as u64).collect();
        ResidueSet { modulus, elements }
    }

    pub fn full(modulus: Modulus) -> Self {
        let elements = (0..modulus.n()).collect();
        ResidueSet { modulus, elements }
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    pub fn n(&self) -> u64 {
        self.modulus.n()
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: u64) -> bool {
        self.elements.binary_search(&(x % self.n())).is_ok()
    }

    /// `Some(mask)` when `n <= 128`.
    pub fn mask(&self) -> Option<u128> {
        (self.n() <= 128).then(|| self.elements.iter().fold(0u128, |m, &x| m | (1u128 << x)))
    }

    pub fn translate(&self, t: i64) -> Self {
        let n = self.n() as i64;
        let mut elements: Vec<u64> = self
            .elements
            .iter()
            .map(|&x| (x as i64 + t).rem_euclid(n) as u64)
            .collect();
        elements.sort_unstable();
        ResidueSet {
            modulus: self.modulus.clone(),
            elements,
        }
    }

    /// `u * A`; a bijection only when `u` is a unit.
    pub fn dilate(&self, u: u64) -> Result<Self> {
        let n = self.n();
        ResidueSet::new(
            self.modulus.clone(),
            self.elements
                .iter()
                .map(|&x| ((x as u128 * u as u128) % n as u128) as i64),
        )
    }

    /// The multiset `k * A = {k a : a in A}`.
    pub fn scaled(&self, k: u64) -> ResidueMultiset {
        let n = self.n();
        let mut counts = vec![0u64; n as usize];
        for &x in &self.elements {
            counts[((x as u128 * k as u128) % n as u128) as usize] += 1;
        }
        ResidueMultiset {
            modulus: self.modulus.clone(),
            counts,
        }
    }

    pub fn to_multiset(&self) -> ResidueMultiset {
        self.scaled(1)
    }

    pub fn check_same_group(&self, other: &ResidueSet) -> Result<()> {
        if self.n() == other.n() {
            Ok(())
        } else {
            Err(Error::ModulusMismatch {
                left: self.n(),
                right: other.n(),
            })
        }
    }
}

impl TryFrom<SetLiteral> for ResidueSet {
    type Error = Error;
    fn try_from(lit: SetLiteral) -> Result<Self> {
        ResidueSet::new(Modulus::new(lit.n)?, lit.elements)
    }
}

impl From<ResidueSet> for SetLiteral {
    fn from(s: ResidueSet) -> Self {
        SetLiteral {
            n: s.n(),
            elements: s.elements.iter().map(|&x| x as i64).collect(),
        }
    }
}

impl fmt::Display for ResidueSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.elements.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}} in Z_{}", self.n())
    }
}

/// Nonnegative integer weights on `Z_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "MultisetLiteral", into = "MultisetLiteral")]
pub struct ResidueMultiset {
    modulus: Modulus,
    counts: Vec<u64>,
}

/// Wire form `{"n": <int>, "counts": [<int> x n]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MultisetLiteral {
    pub n: u64,
    pub counts: Vec<u64>,
}

impl ResidueMultiset {
    pub fn new(modulus: Modulus, counts: Vec<u64>) -> Result<Self> {
        if counts.len() as u64 != modulus.n() {
            return Err(Error::CountLength {
                n: modulus.n(),
                got: counts.len(),
            });
        }
        Ok(ResidueMultiset { modulus, counts })
    }

    pub fn zero(modulus: Modulus) -> Self {
        let counts = vec![0; modulus.n() as usize];
        ResidueMultiset { modulus, counts }
    }

    pub fn from_elements<I: IntoIterator<Item = i64>>(modulus: Modulus, elements: I) -> Self {
        let mut ms = ResidueMultiset::zero(modulus);
        for x in elements {
            let r = ms.modulus.reduce(x) as usize;
            ms.counts[r] += 1;
        }
        ms
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    pub fn n(&self) -> u64 {
        self.modulus.n()
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn count(&self, x: u64) -> u64 {
        self.counts[(x % self.n()) as usize]
    }

    pub fn mass(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.counts.iter().all(|&c| c == 0)
    }

    pub fn support(&self) -> impl Iterator<Item = u64> + '_ {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, _)| i as u64)
    }

    pub fn add_assign(&mut self, other: &ResidueMultiset) {
        assert_eq!(self.n(), other.n());
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
    }

    pub(crate) fn counts_mut(&mut self) -> &mut [u64] {
        &mut self.counts
    }
}

impl TryFrom<MultisetLiteral> for ResidueMultiset {
    type Error = Error;
    fn try_from(lit: MultisetLiteral) -> Result<Self> {
        ResidueMultiset::new(Modulus::new(lit.n)?, lit.counts)
    }
}

impl From<ResidueMultiset> for MultisetLiteral {
    fn from(m: ResidueMultiset) -> Self {
        MultisetLiteral {
            n: m.n(),
            counts: m.counts,
        }
    }
}

/// Anything with a mask polynomial `A(X) = sum m_a X^a` over a fixed modulus.
pub trait MaskSource {
    fn modulus(&self) -> &Modulus;
    fn mask_poly(&self) -> IntPoly;
    fn weight(&self) -> u64;
}

impl MaskSource for ResidueSet {
    fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    fn mask_poly(&self) -> IntPoly {
        let mut coeffs = vec![0i64; self.n() as usize];
        for &x in &self.elements {
            coeffs[x as usize] = 1;
        }
        IntPoly::from_coeffs(coeffs)
    }

    fn weight(&self) -> u64 {
        self.len() as u64
    }
}

impl MaskSource for ResidueMultiset {
    fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    fn mask_poly(&self) -> IntPoly {
        IntPoly::from_coeffs(self.counts.iter().map(|&c| c as i64).collect())
    }

    fn weight(&self) -> u64 {
        self.mass()
    }
}

/// Mask polynomial of a set or multiset; degree `< n`.
pub fn mask_poly<A: MaskSource + ?Sized>(a: &A) -> IntPoly {
    a.mask_poly()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64) -> Modulus {
        Modulus::new(n).unwrap()
    }

    #[test]
    fn ingest_reduces_and_rejects_duplicates() {
        let s = ResidueSet::new(z(12), [13, -1, 0]).unwrap();
        assert_eq!(s.elements(), &[0, 1, 11]);
        assert!(matches!(
            ResidueSet::new(z(4), [1, 5]),
            Err(Error::DuplicateElement { element: 1, n: 4 })
        ));
    }

    #[test]
    fn mask_polynomials() {
        assert_eq!(
            mask_poly(&ResidueSet::new(z(4), [0]).unwrap()),
            IntPoly::one()
        );
        assert_eq!(
            mask_poly(&ResidueSet::new(z(12), [0, 1, 6, 7]).unwrap()).coeffs(),
            &[1, 1, 0, 0, 0, 0, 1, 1]
        );
        let ms = ResidueMultiset::from_elements(z(6), [0, 0, 3]);
        assert_eq!(mask_poly(&ms).coeffs(), &[2, 0, 0, 1]);
    }

    #[test]
    fn json_round_trip() {
        let s: ResidueSet = serde_json::from_str(r#"{"n": 8, "elements": [9, 3, -2]}"#).unwrap();
        assert_eq!(s.elements(), &[1, 3, 6]);
        let back: serde_json::Value = serde_json::to_value(&s).unwrap();
        assert_eq!(back, serde_json::json!({"n": 8, "elements": [1, 3, 6]}));
        assert!(serde_json::from_str::<ResidueSet>(r#"{"n": 4, "elements": [0, 4]}"#).is_err());
        let m: ResidueMultiset = serde_json::from_str(r#"{"n": 3, "counts": [1, 0, 2]}"#).unwrap();
        assert_eq!(m.mass(), 3);
        assert!(serde_json::from_str::<ResidueMultiset>(r#"{"n": 3, "counts": [1]}"#).is_err());
    }

    #[test]
    fn scaling_and_masks() {
        let s = ResidueSet::new(z(12), [0, 3, 4]).unwrap();
        assert_eq!(s.scaled(3).counts()[0], 2);
        assert_eq!(s.scaled(3).counts()[9], 1);
        assert_eq!(s.mask(), Some(0b1_1001));
        assert_eq!(ResidueSet::from_mask(z(12), 0b1_1001), s);
        assert_eq!(s.translate(9).elements(), &[0, 1, 9]);
        assert_eq!(s.dilate(5).unwrap().elements(), &[0, 3, 8]);
    }
}
