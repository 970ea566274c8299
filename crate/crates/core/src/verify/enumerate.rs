//! Subset enumeration with incremental zero-set tracking.
//!
//! [`ZeroTable`] stores, for each residue `a`, the remainders of `X^a`
//! modulo `Phi_{N/d}` for every `d | N`, laid out side by side in `N` lanes.
//! The remainder vector of a set is the sum of its rows, so a depth-first
//! walk updates it with one vector add per step, and `A(w^d) = 0` iff the
//! lanes of segment `d` are all zero.
//!
//! [`Walker`] visits one representative per translation class, namely the
//! lexicographically least translate, by generating binary necklaces with
//! the Fredricksen-Kessler-Maiorana recursion. A residue being present sorts
//! before it being absent, so necklace order agrees with the order on sorted
//! element lists.

use std::collections::BTreeSet;

use crate::bits;
use crate::error::{Error, Result};
use crate::ring::{cyclotomic, IntPoly, Modulus};
use crate::tiling::all_complement_masks;
use crate::verify::canonical::least_translate_mask;

#[derive(Clone, Debug)]
pub struct ZeroTable {
    n: usize,
    divisors: Vec<u64>,
    /// `(start, len)` of each divisor's lanes.
    segments: Vec<(usize, usize)>,
    rows: Vec<i16>,
}

impl ZeroTable {
    pub fn new(m: &Modulus) -> Result<Self> {
        let n = m.n() as usize;
        if n as u64 > bits::MAX_MASK_N {
            return Err(Error::ResourceLimit(format!(
                "enumeration supports N <= {}, got {n}",
                bits::MAX_MASK_N
            )));
        }
        let divisors = m.divisors();
        let mut segments = Vec::with_capacity(divisors.len());
        let mut start = 0;
        for &d in &divisors {
            let len = cyclotomic(m.n() / d).degree().expect("nonzero");
            segments.push((start, len));
            start += len;
        }
        debug_assert_eq!(start, n);
        let mut wide = vec![0i64; n * n];
        for a in 0..n {
            let x = IntPoly::monomial(1, a);
            for (&d, &(s, len)) in divisors.iter().zip(&segments) {
                let r = x.rem_monic(&cyclotomic(m.n() / d));
                for i in 0..len {
                    wide[a * n + s + i] = r.coeff(i);
                }
            }
        }
        for lane in 0..n {
            let total: i64 = (0..n).map(|a| wide[a * n + lane].abs()).sum();
            if total > i16::MAX as i64 {
                return Err(Error::ResourceLimit(format!(
                    "remainder lanes for N = {n} exceed 16 bits"
                )));
            }
        }
        let rows = wide.into_iter().map(|v| v as i16).collect();
        Ok(ZeroTable {
            n,
            divisors,
            segments,
            rows,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Divisors of `N`, ascending; bit `i` of a zero mask refers to entry `i`.
    pub fn divisors(&self) -> &[u64] {
        &self.divisors
    }

    pub fn row(&self, a: usize) -> &[i16] {
        &self.rows[a * self.n..(a + 1) * self.n]
    }

    /// Bit `i` set iff segment `i` of `rem` vanishes.
    #[inline]
    pub fn zero_mask(&self, rem: &[i16]) -> u32 {
        let mut z = 0u32;
        for (i, &(s, len)) in self.segments.iter().enumerate() {
            if rem[s..s + len].iter().all(|&x| x == 0) {
                z |= 1 << i;
            }
        }
        z
    }

    /// Zero mask of a set given as a bit mask.
    pub fn mask_zeros(&self, mask: u128) -> u32 {
        let mut rem = vec![0i16; self.n];
        for a in bits::elements(mask) {
            add_into(&mut rem, self.row(a));
        }
        self.zero_mask(&rem)
    }

    pub fn divisor_index(&self, d: u64) -> Option<usize> {
        self.divisors.binary_search(&d).ok()
    }

    /// Divisors flagged in a zero mask.
    pub fn zeros_of(&self, zmask: u32) -> Vec<u64> {
        self.divisors
            .iter()
            .enumerate()
            .filter(|(i, _)| zmask >> i & 1 == 1)
            .map(|(_, &d)| d)
            .collect()
    }
}

#[inline]
fn add_into(dst: &mut [i16], row: &[i16]) {
    for (x, &r) in dst.iter_mut().zip(row) {
        *x += r;
    }
}

#[inline]
fn sum_into(dst: &mut [i16], src: &[i16], row: &[i16]) {
    for ((x, &s), &r) in dst.iter_mut().zip(src).zip(row) {
        *x = s + r;
    }
}

/// A subtree of the necklace recursion: the first `len` symbols are fixed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WorkUnit {
    /// Residues `< len` that are present.
    pub prefix: u128,
    pub len: usize,
    /// Period of the prefix as a prenecklace.
    pub period: usize,
}

/// Depth-first necklace walk with incremental remainders.
pub struct Walker<'a> {
    table: &'a ZeroTable,
    n: usize,
    max_size: usize,
    // symbols a[1..=n]: 0 = present, 1 = absent; a[0] = 0
    sym: Vec<u8>,
    // remainder after the first t symbols, depth-major
    rems: Vec<i16>,
}

impl<'a> Walker<'a> {
    pub fn new(table: &'a ZeroTable, max_size: Option<usize>) -> Self {
        let n = table.n;
        Walker {
            table,
            n,
            max_size: max_size.unwrap_or(n),
            sym: vec![0; n + 1],
            rems: vec![0; (n + 1) * n],
        }
    }

    /// Splits the walk into subtrees rooted at depth `depth`, in walk order.
    pub fn units(n: usize, depth: usize) -> Vec<WorkUnit> {
        let depth = depth.min(n);
        let mut out = Vec::new();
        let mut sym = vec![0u8; n + 1];
        fn rec(t: usize, p: usize, depth: usize, sym: &mut Vec<u8>, out: &mut Vec<WorkUnit>) {
            if t > depth {
                let prefix = (1..=depth)
                    .filter(|&i| sym[i] == 0)
                    .fold(0u128, |m, i| m | 1u128 << (i - 1));
                out.push(WorkUnit {
                    prefix,
                    len: depth,
                    period: p,
                });
                return;
            }
            let base = sym[t - p];
            sym[t] = base;
            rec(t + 1, p, depth, sym, out);
            if base == 0 {
                sym[t] = 1;
                rec(t + 1, t, depth, sym, out);
            }
        }
        rec(1, 1, depth, &mut sym, &mut out);
        out
    }

    /// Calls `visit(mask, size, zero_mask, remainder)` for every nonempty
    /// translation class inside `unit`, least translate first.
    pub fn run<F: FnMut(u128, usize, u32)>(&mut self, unit: &WorkUnit, mut visit: F) {
        let n = self.n;
        self.rems[..n].fill(0);
        let mut mask = 0u128;
        let mut size = 0;
        for t in 1..=unit.len {
            let present = unit.prefix >> (t - 1) & 1 == 1;
            self.sym[t] = if present { 0 } else { 1 };
            let (done, rest) = self.rems.split_at_mut(t * n);
            let prev = &done[(t - 1) * n..];
            let cur = &mut rest[..n];
            if present {
                sum_into(cur, prev, self.table.row(t - 1));
                mask |= 1u128 << (t - 1);
                size += 1;
            } else {
                cur.copy_from_slice(prev);
            }
        }
        if size > self.max_size {
            return;
        }
        self.rec(unit.len + 1, unit.period, mask, size, &mut visit);
    }

    fn rec<F: FnMut(u128, usize, u32)>(
        &mut self,
        t: usize,
        p: usize,
        mask: u128,
        size: usize,
        visit: &mut F,
    ) {
        let n = self.n;
        if t > n {
            if n % p == 0 && size > 0 {
                let rem = &self.rems[n * n..(n + 1) * n];
                visit(mask, size, self.table.zero_mask(rem));
            }
            return;
        }
        let base = self.sym[t - p];
        // copy the period symbol
        self.step(t, base);
        let (m2, s2) = if base == 0 {
            (mask | 1u128 << (t - 1), size + 1)
        } else {
            (mask, size)
        };
        if s2 <= self.max_size {
            self.rec(t + 1, p, m2, s2, visit);
        }
        if base == 0 {
            // a larger symbol breaks the period
            self.step(t, 1);
            self.rec(t + 1, t, mask, size, visit);
        }
    }

    #[inline]
    fn step(&mut self, t: usize, symbol: u8) {
        let n = self.n;
        self.sym[t] = symbol;
        let (done, rest) = self.rems.split_at_mut(t * n);
        let prev = &done[(t - 1) * n..];
        let cur = &mut rest[..n];
        if symbol == 0 {
            sum_into(cur, prev, self.table.row(t - 1));
        } else {
            cur.copy_from_slice(prev);
        }
    }
}

/// Every nonempty translation class of `Z_n` (as least translates), with
/// size and zero mask, in walk order.
pub fn for_each_class<F: FnMut(u128, usize, u32)>(
    table: &ZeroTable,
    max_size: Option<usize>,
    mut visit: F,
) {
    let mut walker = Walker::new(table, max_size);
    for unit in Walker::units(table.n(), 0) {
        walker.run(&unit, &mut visit);
    }
}

/// Every subset containing 0 (not only least translates), by a plain
/// depth-first walk. Meant for cross-checks at small `n`.
pub fn for_each_subset_with_zero<F: FnMut(u128, usize, u32)>(table: &ZeroTable, mut visit: F) {
    let n = table.n();
    let mut rems = vec![0i16; (n + 1) * n];
    rems[..n].copy_from_slice(table.row(0));
    fn rec<F: FnMut(u128, usize, u32)>(
        table: &ZeroTable,
        rems: &mut [i16],
        depth: usize,
        next: usize,
        mask: u128,
        visit: &mut F,
    ) {
        let n = table.n();
        visit(
            mask,
            depth + 1,
            table.zero_mask(&rems[depth * n..(depth + 1) * n]),
        );
        for x in next..n {
            let (done, rest) = rems.split_at_mut((depth + 1) * n);
            sum_into(&mut rest[..n], &done[depth * n..], table.row(x));
            rec(table, rems, depth + 1, x + 1, mask | 1u128 << x, visit);
        }
    }
    rec(table, &mut rems, 0, 1, 1, &mut visit);
}

/// Least translates of every tile of `Z_N`. Tiles with `k^2 <= N` elements
/// are found by walking those sizes; each larger tile has a smaller
/// complement and is read off from its complement list.
pub fn tile_classes(table: &ZeroTable) -> BTreeSet<u128> {
    let n = table.n();
    let small = (1..=n).take_while(|k| k * k <= n).last().unwrap_or(1);
    let mut out = BTreeSet::new();
    for_each_class(table, Some(small), |mask, k, _| {
        if n % k != 0 {
            return;
        }
        let complements = all_complement_masks(mask, n);
        if complements.is_empty() {
            return;
        }
        out.insert(mask);
        if k * k < n {
            out.extend(complements.into_iter().map(|b| least_translate_mask(b, n)));
        }
    });
    out
}

/// Whether `mask` is the least of its translates.
pub fn is_least_translate(mask: u128, n: usize) -> bool {
    bits::elements(mask).all(|a| !bits::lex_less(bits::rotate(mask, (n - a) % n, n), mask))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{zero_divisors, ResidueSet};

    fn table(n: u64) -> ZeroTable {
        ZeroTable::new(&Modulus::new(n).unwrap()).unwrap()
    }

    #[test]
    fn zero_masks_match_exact_division() {
        for n in [1u64, 6, 8, 12, 15] {
            let t = table(n);
            let m = Modulus::new(n).unwrap();
            for mask in 1u128..(1 << n) {
                let exact = zero_divisors(&ResidueSet::from_mask(m.clone(), mask));
                assert_eq!(
                    t.zeros_of(t.mask_zeros(mask)),
                    exact.divisors,
                    "n={n} mask={mask:b}"
                );
            }
        }
    }

    #[test]
    fn necklaces_are_least_translates() {
        for n in 1..=14usize {
            let t = table(n as u64);
            let mut seen = Vec::new();
            for_each_class(&t, None, |mask, size, z| {
                assert_eq!(mask.count_ones() as usize, size);
                assert_eq!(z, t.mask_zeros(mask));
                seen.push(mask);
            });
            let brute: Vec<u128> = (1u128..(1 << n))
                .filter(|&m| m & 1 == 1 && is_least_translate(m, n))
                .collect();
            let mut sorted = seen.clone();
            sorted.sort_unstable();
            sorted.dedup();
            assert_eq!(sorted.len(), seen.len(), "n={n}: repeated class");
            assert_eq!(sorted, brute, "n={n}");
        }
    }

    #[test]
    fn units_partition_the_walk() {
        let t = table(13);
        let mut whole = Vec::new();
        for_each_class(&t, None, |m, _, _| whole.push(m));
        for depth in [1, 3, 6, 13] {
            let mut parts = Vec::new();
            let mut w = Walker::new(&t, None);
            for u in Walker::units(13, depth) {
                w.run(&u, |m, _, _| parts.push(m));
            }
            assert_eq!(parts, whole, "depth {depth}");
        }
    }

    #[test]
    fn size_cap() {
        let t = table(12);
        let mut capped = 0;
        for_each_class(&t, Some(3), |m, s, _| {
            assert!(s <= 3 && m.count_ones() <= 3);
            capped += 1;
        });
        let mut all = 0;
        for_each_class(&t, None, |m, _, _| all += (m.count_ones() <= 3) as usize);
        assert_eq!(capped, all);
    }

    #[test]
    fn tiles_by_complements_match_a_full_walk() {
        for n in [1u64, 8, 12, 15, 16] {
            let t = table(n);
            let mut walked = BTreeSet::new();
            for_each_class(&t, None, |m, _, _| {
                if crate::tiling::find_complement_mask(m, n as usize).is_some() {
                    walked.insert(m);
                }
            });
            assert_eq!(tile_classes(&t), walked, "n={n}");
        }
    }

    #[test]
    fn subsets_with_zero() {
        let t = table(10);
        let mut count = 0;
        for_each_subset_with_zero(&t, |m, s, z| {
            assert!(m & 1 == 1);
            assert_eq!(m.count_ones() as usize, s);
            assert_eq!(z, t.mask_zeros(m));
            count += 1;
        });
        assert_eq!(count, 1 << 9);
    }
}
