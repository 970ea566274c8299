//! Vanishing sums of roots of unity as nonnegative combinations of prime
//! cycles.
//!
//! A multiset `M` on `scale * Z_N` with `M(w) = 0` is a sum of roots of unity
//! of order dividing `N / scale`. When that order has at most two prime
//! divisors `p`, `q`, the multiset is a union of `p`-cycles and `q`-cycles.
//! [`decompose`] finds such a union by branch-and-peel; with three or more
//! primes it may instead return an [`InfeasibilityCertificate`].

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{
    cyclotomic, factorize, vanishes_at, IntPoly, MaskSource, Modulus, ResidueMultiset, ResidueSet,
};

/// The `prime`-cycle `{offset + l N / prime : 0 <= l < prime}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CycleSpec {
    pub prime: u64,
    /// Reduced into `[0, N / prime)`.
    pub offset: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleDecomposition {
    pub modulus: Modulus,
    pub scale: u64,
    /// `N / scale`, the order of the roots being summed.
    pub order: u64,
    /// Sorted by `(prime, offset)`; repeats allowed.
    pub cycles: Vec<CycleSpec>,
}

impl CycleDecomposition {
    /// Offsets of the cycles of the given prime, ascending with repeats.
    pub fn offsets(&self, prime: u64) -> Vec<u64> {
        self.cycles
            .iter()
            .filter(|c| c.prime == prime)
            .map(|c| c.offset)
            .collect()
    }

    pub fn count(&self, prime: u64) -> usize {
        self.cycles.iter().filter(|c| c.prime == prime).count()
    }

    /// Sum of all cycle indicators.
    pub fn recompose(&self) -> ResidueMultiset {
        let mut out = ResidueMultiset::zero(self.modulus.clone());
        for c in &self.cycles {
            add_cycle(out.counts_mut(), self.modulus.n(), c.prime, c.offset, 1);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InfeasibilityCertificate {
    pub multiset: ResidueMultiset,
    pub scale: u64,
    /// Primes whose cycles were allowed.
    pub primes: Vec<u64>,
    /// Set only after the full branch tree was searched.
    pub exhausted: bool,
}

impl InfeasibilityCertificate {
    /// Reruns the search and confirms it still fails.
    pub fn replay(&self) -> bool {
        self.exhausted && peel_first(&self.multiset, &self.primes).is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DecompositionOutcome {
    Decomposed(CycleDecomposition),
    Infeasible(InfeasibilityCertificate),
}

impl DecompositionOutcome {
    pub fn decomposition(&self) -> Option<&CycleDecomposition> {
        match self {
            DecompositionOutcome::Decomposed(d) => Some(d),
            DecompositionOutcome::Infeasible(_) => None,
        }
    }
}

/// Indicator multiset of the `r`-cycle through `offset`.
pub fn cycle_multiset(m: &Modulus, r: u64, offset: i64) -> Result<ResidueMultiset> {
    if !crate::ring::is_prime(r) {
        return Err(Error::NotPrime(r));
    }
    m.check_divisor(r)?;
    let mut out = ResidueMultiset::zero(m.clone());
    let k = m.reduce(offset) % (m.n() / r);
    add_cycle(out.counts_mut(), m.n(), r, k, 1);
    Ok(out)
}

fn add_cycle(counts: &mut [u64], n: u64, r: u64, offset: u64, times: u64) {
    let step = n / r;
    for l in 0..r {
        counts[(offset + l * step) as usize] += times;
    }
}

/// Removes the cycle if every slot still has positive count.
fn try_remove(counts: &mut [u64], n: u64, r: u64, offset: u64) -> bool {
    let step = n / r;
    if (0..r).any(|l| counts[(offset + l * step) as usize] == 0) {
        return false;
    }
    for l in 0..r {
        counts[(offset + l * step) as usize] -= 1;
    }
    true
}

fn restore(counts: &mut [u64], n: u64, r: u64, offset: u64) {
    add_cycle(counts, n, r, offset, 1);
}

fn check_scale(ms: &ResidueMultiset, scale: u64) -> Result<Vec<u64>> {
    let m = ms.modulus();
    m.check_divisor(scale)?;
    if let Some(x) = ms.support().find(|x| x % scale != 0) {
        return Err(Error::Precondition(format!(
            "residue {x} lies outside {scale}·Z_{}",
            m.n()
        )));
    }
    if !vanishes_at(ms, 1)? {
        return Err(Error::NonVanishing(format!(
            "weighted sum over Z_{} does not vanish",
            m.n()
        )));
    }
    // larger primes first
    let mut primes: Vec<u64> = factorize(m.n() / scale)
        .into_iter()
        .map(|(p, _)| p)
        .collect();
    primes.reverse();
    Ok(primes)
}

/// Peels one decomposition, depth-first, larger primes first.
fn peel_first(ms: &ResidueMultiset, primes: &[u64]) -> Option<Vec<CycleSpec>> {
    let n = ms.n();
    let mut counts = ms.counts().to_vec();
    let mut path = Vec::new();
    peel(&mut counts, n, primes, 0, &mut path).then_some(path)
}

fn peel(
    counts: &mut [u64],
    n: u64,
    primes: &[u64],
    from: usize,
    path: &mut Vec<CycleSpec>,
) -> bool {
    let Some(j) = (from..counts.len()).find(|&i| counts[i] > 0) else {
        return true;
    };
    for &r in primes {
        let offset = j as u64 % (n / r);
        // a cycle reaching below j would need a slot already emptied
        if offset != j as u64 {
            continue;
        }
        if try_remove(counts, n, r, offset) {
            path.push(CycleSpec { prime: r, offset });
            if peel(counts, n, primes, j, path) {
                return true;
            }
            path.pop();
            restore(counts, n, r, offset);
        }
    }
    false
}

fn peel_all(
    counts: &mut [u64],
    n: u64,
    primes: &[u64],
    from: usize,
    path: &mut Vec<CycleSpec>,
    out: &mut BTreeSet<Vec<CycleSpec>>,
) {
    let Some(j) = (from..counts.len()).find(|&i| counts[i] > 0) else {
        let mut found = path.clone();
        found.sort_unstable();
        out.insert(found);
        return;
    };
    for &r in primes {
        let offset = j as u64 % (n / r);
        if offset == j as u64 && try_remove(counts, n, r, offset) {
            path.push(CycleSpec { prime: r, offset });
            peel_all(counts, n, primes, j, path, out);
            path.pop();
            restore(counts, n, r, offset);
        }
    }
}

fn build(ms: &ResidueMultiset, scale: u64, mut cycles: Vec<CycleSpec>) -> CycleDecomposition {
    cycles.sort_unstable();
    CycleDecomposition {
        modulus: ms.modulus().clone(),
        scale,
        order: ms.n() / scale,
        cycles,
    }
}

/// Decomposes a vanishing multiset supported on `scale * Z_N` into prime
/// cycles of order dividing `N / scale`.
pub fn decompose(ms: &ResidueMultiset, scale: u64) -> Result<DecompositionOutcome> {
    let primes = check_scale(ms, scale)?;
    Ok(match peel_first(ms, &primes) {
        Some(cycles) => DecompositionOutcome::Decomposed(build(ms, scale, cycles)),
        None => DecompositionOutcome::Infeasible(InfeasibilityCertificate {
            multiset: ms.clone(),
            scale,
            primes,
            exhausted: true,
        }),
    })
}

/// Every decomposition, as distinct multisets of cycles.
pub fn all_decompositions(ms: &ResidueMultiset, scale: u64) -> Result<Vec<CycleDecomposition>> {
    let primes = check_scale(ms, scale)?;
    let mut counts = ms.counts().to_vec();
    let mut found = BTreeSet::new();
    peel_all(&mut counts, ms.n(), &primes, 0, &mut Vec::new(), &mut found);
    Ok(found.into_iter().map(|c| build(ms, scale, c)).collect())
}

/// Slot-by-slot recomposition check.
pub fn verify_decomposition(ms: &ResidueMultiset, dec: &CycleDecomposition) -> bool {
    if ms.modulus() != &dec.modulus {
        return false;
    }
    let n = ms.n();
    let valid = dec
        .cycles
        .iter()
        .all(|c| c.prime > 1 && n % c.prime == 0 && c.offset < n / c.prime);
    valid && dec.recompose() == *ms
}

/// One prime's share of a decomposition of `n * A`: `poly` is `P_n(X^n)`
/// written in `X`, with one monomial `X^k` per cycle offset `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeComponent {
    pub prime: u64,
    pub poly: IntPoly,
}

/// `A(X^n) = sum_r poly_r(X) Phi_r(X^{N/r}) mod X^N - 1` over the primes `r`
/// of `N`, with nonnegative coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PqWitness {
    pub scale: u64,
    pub components: Vec<PrimeComponent>,
    pub decomposition: CycleDecomposition,
}

impl PqWitness {
    /// The component for `prime`; zero when that prime carries no cycle.
    pub fn poly_for(&self, prime: u64) -> IntPoly {
        self.components
            .iter()
            .find(|c| c.prime == prime)
            .map(|c| c.poly.clone())
            .unwrap_or_default()
    }

    pub fn is_nonzero(&self, prime: u64) -> bool {
        !self.poly_for(prime).is_zero()
    }

    /// Recomputes both sides of the identity for `a`.
    pub fn check_identity(&self, a: &ResidueSet) -> bool {
        let m = a.modulus();
        let n = m.n();
        let lhs = a.mask_poly().compose_power(self.scale, n);
        let mut rhs = IntPoly::zero();
        for c in &self.components {
            if c.poly.coeffs().iter().any(|&x| x < 0) {
                return false;
            }
            let phi = cyclotomic(c.prime).compose_power(n / c.prime, n);
            rhs = &rhs + &c.poly.mul_cyclic(&phi, n);
        }
        lhs == rhs.reduce_cyclic(n)
    }
}

/// Splits `n * A` into prime cycles and packages the cycle offsets as
/// polynomials, one per prime of `N`.
pub fn pq_witness(a: &ResidueSet, n: u64) -> Result<PqWitness> {
    let m = a.modulus();
    m.check_divisor(n)?;
    let order_primes = factorize(m.n() / n).len();
    if order_primes > 2 {
        return Err(Error::Precondition(format!(
            "N/n = {} has {order_primes} prime divisors",
            m.n() / n
        )));
    }
    if !vanishes_at(a, n)? {
        return Err(Error::NonVanishing(format!("A(w^{n}) != 0 in Z_{}", m.n())));
    }
    let dec = match decompose(&a.scaled(n), n)? {
        DecompositionOutcome::Decomposed(d) => d,
        DecompositionOutcome::Infeasible(_) => {
            return Err(Error::Discrepancy(format!(
                "two-prime vanishing sum {a} at scale {n} has no cycle decomposition"
            )))
        }
    };
    Ok(witness_from(m, n, dec))
}

pub(crate) fn witness_from(m: &Modulus, n: u64, dec: CycleDecomposition) -> PqWitness {
    let components = m
        .primes()
        .map(|r| {
            let mut coeffs = vec![0i64; (m.n() / r) as usize];
            for k in dec.offsets(r) {
                coeffs[k as usize] += 1;
            }
            PrimeComponent {
                prime: r,
                poly: IntPoly::from_coeffs(coeffs),
            }
        })
        .collect();
    PqWitness {
        scale: n,
        components,
        decomposition: dec,
    }
}

/// Whether the multiset is a union of `r`-cycles: constant counts along each
/// coset of the order-`r` subgroup. Returns the quotient offsets if so.
pub fn union_of_cycles(ms: &ResidueMultiset, r: u64) -> Option<IntPoly> {
    let n = ms.n();
    if r <= 1 || n % r != 0 {
        return None;
    }
    let step = n / r;
    let mut coeffs = vec![0i64; step as usize];
    for k in 0..step {
        let c = ms.count(k);
        if (1..r).any(|l| ms.count(k + l * step) != c) {
            return None;
        }
        coeffs[k as usize] = c as i64;
    }
    Some(IntPoly::from_coeffs(coeffs))
}
