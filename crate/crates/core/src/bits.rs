//! `u128` residue masks for moduli up to 128, used by the search routines.

/// Largest modulus the mask-based searches accept.
pub const MAX_MASK_N: u64 = 128;

#[inline]
pub fn full(n: usize) -> u128 {
    if n >= 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

/// Mask of `{x + t mod n : x in mask}` for `t < n`.
#[inline]
pub fn rotate(mask: u128, t: usize, n: usize) -> u128 {
    if t == 0 {
        mask
    } else {
        ((mask << t) | (mask >> (n - t))) & full(n)
    }
}

/// Mask of `{-x mod n}`.
pub fn negate(mask: u128, n: usize) -> u128 {
    elements(mask).fold(0u128, |acc, x| acc | (1u128 << ((n - x) % n)))
}

/// Mask of `{u x mod n}`.
pub fn dilate(mask: u128, u: usize, n: usize) -> u128 {
    elements(mask).fold(0u128, |acc, x| acc | (1u128 << ((x * u) % n)))
}

/// Set bits in ascending order.
pub fn elements(mut mask: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

/// Lexicographic comparison of the sorted element lists of two masks of the
/// same cardinality: the smaller list owns the lowest differing element.
#[inline]
pub fn lex_less(x: u128, y: u128) -> bool {
    let d = x ^ y;
    d != 0 && x & d & d.wrapping_neg() != 0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotation_wraps() {
        assert_eq!(rotate(0b1011, 2, 4), 0b1110);
        assert_eq!(rotate(0b1, 3, 4), 0b1000);
        assert_eq!(rotate(1u128 << 127, 1, 128), 1);
        assert_eq!(negate(0b0110, 4), 0b1100);
        assert_eq!(negate(0b0011, 4), 0b1001);
        assert_eq!(dilate(0b0110, 3, 4), 0b1100);
    }

    #[test]
    fn lex_order_matches_lists() {
        let sets: Vec<u128> = (0u128..256).filter(|m| m.count_ones() == 3).collect();
        for &x in &sets {
            for &y in &sets {
                let lx: Vec<usize> = elements(x).collect();
                let ly: Vec<usize> = elements(y).collect();
                assert_eq!(lex_less(x, y), lx < ly);
            }
        }
    }
}
