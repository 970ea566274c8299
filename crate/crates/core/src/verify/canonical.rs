//! Canonical representatives under translation, optionally with unit
//! dilation.

use serde::{Deserialize, Serialize};

use crate::bits;
use crate::ring::ResidueSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalClass {
    pub representative: ResidueSet,
    pub affine: bool,
}

/// Least translate (and least unit dilate of a translate when `affine`) under
/// the order on sorted element lists.
pub fn canonicalize(a: &ResidueSet, affine: bool) -> CanonicalClass {
    let units = if affine { a.modulus().units() } else { vec![1] };
    let best = units
        .iter()
        .map(|&u| least_translate(&a.dilate(u).expect("units act bijectively")))
        .min()
        .unwrap_or_else(|| a.clone());
    CanonicalClass {
        representative: best,
        affine,
    }
}

fn least_translate(a: &ResidueSet) -> ResidueSet {
    a.elements()
        .iter()
        .map(|&x| a.translate(-(x as i64)))
        .min()
        .unwrap_or_else(|| a.clone())
}

/// Least translate of a mask.
pub fn least_translate_mask(mask: u128, n: usize) -> u128 {
    bits::elements(mask)
        .map(|a| bits::rotate(mask, (n - a) % n, n))
        .fold(
            mask,
            |best, m| if bits::lex_less(m, best) { m } else { best },
        )
}

/// For a mask that is already its least translate: whether no unit dilate
/// has a smaller translate.
pub fn is_affine_least(mask: u128, n: usize, units: &[usize]) -> bool {
    units.iter().all(|&u| {
        u == 1 || !bits::lex_less(least_translate_mask(bits::dilate(mask, u, n), n), mask)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Modulus;

    fn set(n: u64, e: &[i64]) -> ResidueSet {
        ResidueSet::new(Modulus::new(n).unwrap(), e.iter().copied()).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(
            canonicalize(&set(4, &[1, 2]), false).representative,
            set(4, &[0, 1])
        );
        assert_eq!(
            canonicalize(&set(5, &[0, 2]), true).representative,
            set(5, &[0, 1])
        );
        assert_eq!(
            canonicalize(&set(5, &[0, 2]), false).representative,
            set(5, &[0, 2])
        );
        for (a, affine) in [(set(12, &[3, 5, 10]), false), (set(12, &[3, 5, 10]), true)] {
            let c = canonicalize(&a, affine).representative;
            assert_eq!(canonicalize(&c, affine).representative, c);
        }
    }

    #[test]
    fn mask_forms_agree() {
        let m = Modulus::new(10).unwrap();
        let units: Vec<usize> = m.units().into_iter().map(|u| u as usize).collect();
        for mask in 1u128..(1 << 10) {
            let a = ResidueSet::from_mask(m.clone(), mask);
            let t = canonicalize(&a, false).representative.mask().unwrap();
            assert_eq!(least_translate_mask(mask, 10), t);
            let f = canonicalize(&a, true).representative.mask().unwrap();
            if t == mask {
                assert_eq!(is_affine_least(mask, 10, &units), f == mask);
            }
        }
    }
}
