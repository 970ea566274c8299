//! Structure of spectral sets in `Z_N` with `N = p^n q`.
//!
//! Each check evaluates one stated property of a concrete set (and spectrum)
//! with exact arithmetic. A failing clause is recorded with a counterexample
//! payload instead of panicking, so exhaustive runs can report every
//! discrepancy they meet.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ring::{
    compose_power, cyclotomic, gcd, max_coefficient, vanishes_at, zero_divisors, DivisorClassSet,
    IntPoly, MaskSource, Modulus, ResidueSet,
};
use crate::spectral::is_spectrum;
use crate::vanishing::union_of_cycles;

/// Base-`p` digits `b_0, ..., b_{n-1}` of `b mod p^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PadicDigits {
    pub p: u64,
    pub digits: Vec<u64>,
}

impl PadicDigits {
    pub fn value(&self) -> u64 {
        self.digits.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    /// Index of the lowest nonzero digit.
    pub fn lowest_nonzero(&self) -> Option<usize> {
        self.digits.iter().position(|&d| d != 0)
    }
}

pub fn padic_digits(b: u64, p: u64, n: u32) -> PadicDigits {
    let mut x = b % p.pow(n);
    let digits = (0..n)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect();
    PadicDigits { p, digits }
}

/// `p^i || x`: `p^i` divides `x` and `p^{i+1}` does not. False for `x = 0`.
pub fn exactly_divides(p: u64, i: u32, x: u64) -> bool {
    x != 0 && x % p.pow(i) == 0 && x % p.pow(i + 1) != 0
}

/// A factorization `N = p^n q` with `q` prime. For `N = p q` both
/// orientations exist.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PnqShape {
    pub p: u64,
    pub n: u32,
    pub q: u64,
}

impl PnqShape {
    pub fn modulus_value(&self) -> u64 {
        self.p.pow(self.n) * self.q
    }

    /// Every orientation of `m` as `p^n q`, empty when `m` has another shape.
    pub fn all_of(m: &Modulus) -> Vec<PnqShape> {
        let f = m.factorization();
        if f.len() != 2 {
            return Vec::new();
        }
        let mut out = Vec::new();
        for (i, &(q, e)) in f.iter().enumerate() {
            if e == 1 {
                let (p, n) = f[1 - i];
                out.push(PnqShape { p, n, q });
            }
        }
        // the prime with the larger exponent first
        out.sort_by_key(|s| std::cmp::Reverse(s.n));
        out
    }

    pub fn of(m: &Modulus) -> Result<PnqShape> {
        PnqShape::all_of(m)
            .into_iter()
            .next()
            .ok_or_else(|| Error::WrongModulusShape {
                n: m.n(),
                expected: "p^n q".into(),
            })
    }

    fn check(&self, m: &Modulus) -> Result<()> {
        if self.modulus_value() == m.n() && PnqShape::all_of(m).contains(self) {
            Ok(())
        } else {
            Err(Error::WrongModulusShape {
                n: m.n(),
                expected: format!("{}^{}·{}", self.p, self.n, self.q),
            })
        }
    }
}

/// The exponents `a in [0, n-1]` with `A(w^{p^a q}) = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QRootProfile {
    pub shape: PnqShape,
    pub a_list: Vec<u32>,
}

impl QRootProfile {
    pub fn m(&self) -> usize {
        self.a_list.len()
    }

    pub fn a_max(&self) -> Option<u32> {
        self.a_list.last().copied()
    }
}

pub fn q_root_profile(a: &ResidueSet) -> Result<QRootProfile> {
    q_root_profile_for(a, PnqShape::of(a.modulus())?)
}

pub fn q_root_profile_for(a: &ResidueSet, shape: PnqShape) -> Result<QRootProfile> {
    shape.check(a.modulus())?;
    profile_from_zeros(&zero_divisors(a), shape)
}

fn profile_from_zeros(zeros: &DivisorClassSet, shape: PnqShape) -> Result<QRootProfile> {
    shape.check(&zeros.modulus)?;
    let a_list = (0..shape.n)
        .filter(|&a| zeros.contains(shape.p.pow(a) * shape.q))
        .collect();
    Ok(QRootProfile { shape, a_list })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ClauseStatus {
    Pass,
    Fail { counterexample: Value },
    Skipped { reason: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClauseResult {
    pub clause: String,
    #[serde(flatten)]
    pub status: ClauseStatus,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StructureReport {
    pub check: String,
    pub shape: PnqShape,
    pub clauses: Vec<ClauseResult>,
    /// Extra facts about the instance, e.g. the branch that held.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub notes: BTreeMap<String, Value>,
}

impl StructureReport {
    fn new(check: &str, shape: PnqShape) -> Self {
        StructureReport {
            check: check.into(),
            shape,
            clauses: Vec::new(),
            notes: BTreeMap::new(),
        }
    }

    fn record(&mut self, clause: &str, ok: bool, counterexample: impl FnOnce() -> Value) {
        let status = if ok {
            ClauseStatus::Pass
        } else {
            ClauseStatus::Fail {
                counterexample: counterexample(),
            }
        };
        self.clauses.push(ClauseResult {
            clause: clause.into(),
            status,
        });
    }

    fn skip(&mut self, clause: &str, reason: impl Into<String>) {
        self.clauses.push(ClauseResult {
            clause: clause.into(),
            status: ClauseStatus::Skipped {
                reason: reason.into(),
            },
        });
    }

    pub fn failures(&self) -> impl Iterator<Item = &ClauseResult> {
        self.clauses
            .iter()
            .filter(|c| matches!(c.status, ClauseStatus::Fail { .. }))
    }

    pub fn passed(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn status(&self, clause: &str) -> Option<&ClauseStatus> {
        self.clauses
            .iter()
            .find(|c| c.clause == clause)
            .map(|c| &c.status)
    }
}

struct Ctx<'a> {
    a: &'a ResidueSet,
    zeros: DivisorClassSet,
    shape: PnqShape,
    profile: QRootProfile,
    n_val: u64,
}

impl<'a> Ctx<'a> {
    fn new(a: &'a ResidueSet, shape: PnqShape) -> Result<Self> {
        shape.check(a.modulus())?;
        let zeros = zero_divisors(a);
        let profile = profile_from_zeros(&zeros, shape)?;
        Ok(Ctx {
            a,
            zeros,
            shape,
            profile,
            n_val: a.n(),
        })
    }

    fn vanishes(&self, d: u64) -> bool {
        self.zeros.contains(d)
    }

    fn pow(&self, a: u32) -> u64 {
        self.shape.p.pow(a)
    }

    fn spectral_hypothesis(&self, b: &ResidueSet) -> Result<()> {
        if !is_spectrum(self.a, b)? {
            return Err(Error::Precondition(format!(
                "{b} is not a spectrum of {}",
                self.a
            )));
        }
        let pm = self.pow(self.profile.m() as u32);
        if self.a.len() as u64 <= pm {
            return Err(Error::HypothesisNotMet(format!(
                "#A = {} <= p^m = {pm}",
                self.a.len()
            )));
        }
        Ok(())
    }

    fn norm_at(&self, k: u64) -> i64 {
        let m = self.a.modulus();
        max_coefficient(&compose_power(&self.a.mask_poly(), k, m), m)
    }
}

/// The exponents `a in [0, n]` outside the profile for which some difference
/// of `b` lies in `p^a Z_N^*` and `A(w^{p^a}) = 0`.
fn extra_difference_exponents(ctx: &Ctx, b: &ResidueSet) -> Vec<u32> {
    let n = ctx.n_val;
    let e = b.elements();
    let mut out = Vec::new();
    for a in 0..=ctx.shape.n {
        if ctx.profile.a_list.contains(&a) || !ctx.vanishes(ctx.pow(a)) {
            continue;
        }
        let target = ctx.pow(a);
        let hit = e.iter().enumerate().any(|(i, &x)| {
            e[i + 1..]
                .iter()
                .any(|&y| gcd((y + n - x) % n, n) == target)
        });
        if hit {
            out.push(a);
        }
    }
    out
}

/// The size, class, digit, difference, and root clauses for a spectral set
/// with `#A > p^m`, where `m` is the length of the q-root profile.
pub fn check_prop_main(a: &ResidueSet, b: &ResidueSet, shape: PnqShape) -> Result<StructureReport> {
    let ctx = Ctx::new(a, shape)?;
    ctx.spectral_hypothesis(b)?;
    let PnqShape { p, n: pn, q } = shape;
    let m = ctx.profile.m() as u32;
    let a_list = ctx.profile.a_list.clone();
    let n = ctx.n_val;
    let mut rep = StructureReport::new("prop_main", shape);
    rep.notes.insert("a_list".into(), json!(a_list));
    let pm = p.pow(m);

    rep.record(
        "size",
        a.len() as u64 == pm * q,
        || json!({"set": a, "size": a.len(), "expected": pm * q}),
    );

    // class sizes and distinct digit tuples
    let mut bad_class = None;
    for i in 0..q {
        let class: Vec<u64> = b
            .elements()
            .iter()
            .copied()
            .filter(|x| x % q == i)
            .collect();
        let mut tuples: Vec<Vec<u64>> = class
            .iter()
            .map(|&x| {
                let d = padic_digits(x, p, pn);
                a_list.iter().map(|&ai| d.digits[ai as usize]).collect()
            })
            .collect();
        tuples.sort();
        tuples.dedup();
        if class.len() as u64 != pm || tuples.len() != class.len() {
            bad_class = Some(json!({"residue": i, "class": class}));
            break;
        }
    }
    rep.record(
        "class_sizes",
        bad_class.is_none(),
        || json!({"set": a, "spectrum": b, "class": bad_class}),
    );

    // for every b and j some b' with gcd(b - b', N) = p^{a_j} q
    let mut missing = None;
    'outer: for &x in b.elements() {
        for &aj in &a_list {
            let target = p.pow(aj) * q;
            if !b
                .elements()
                .iter()
                .any(|&y| gcd((y + n - x) % n, n) == target)
            {
                missing = Some(json!({"b": x, "a_j": aj}));
                break 'outer;
            }
        }
    }
    rep.record(
        "digit_neighbours",
        missing.is_none(),
        || json!({"set": a, "spectrum": b, "missing": missing}),
    );

    let extra = extra_difference_exponents(&ctx, b);
    rep.notes.insert("extra_exponents".into(), json!(extra));
    let Some(&a_star) = extra.last() else {
        rep.record(
            "extra_difference",
            false,
            || json!({"set": a, "spectrum": b}),
        );
        rep.skip("high_branch_roots", "no exponent outside the profile");
        rep.skip("low_branch_shape", "no exponent outside the profile");
        return Ok(rep);
    };
    rep.record("extra_difference", true, || Value::Null);
    rep.notes.insert("a_star".into(), json!(a_star));

    let above = a_list.last().is_none_or(|&am| a_star > am);
    if above {
        let mut missing: Vec<u32> = a_list
            .iter()
            .copied()
            .filter(|&aj| !ctx.vanishes(p.pow(aj)))
            .collect();
        missing.extend((a_star..=pn).filter(|&x| !ctx.vanishes(p.pow(x))));
        rep.record("high_branch_roots", missing.is_empty(), || {
            json!({"set": a, "spectrum": b, "a_star": a_star, "nonvanishing_exponents": missing})
        });
        rep.skip("low_branch_shape", "a > a_m");
    } else {
        rep.skip("high_branch_roots", "a < a_m");
        let am = *a_list.last().expect("a_star < a_m needs m >= 1");
        let f = compose_power(&a.mask_poly(), p.pow(am) * q, a.modulus());
        let c = (p.pow(m - 1) * q) as i64;
        let ok = is_scaled_p_cycle(&f, n, p, c);
        rep.record("low_branch_shape", ok, || {
            json!({"set": a, "spectrum": b, "a_star": a_star, "poly": f.coeffs(), "expected_coefficient": c})
        });
    }
    Ok(rep)
}

/// `f = c X^k Phi_p(X^{N/p})` modulo `X^N - 1` for some `k`.
fn is_scaled_p_cycle(f: &IntPoly, n: u64, p: u64, c: i64) -> bool {
    let f = f.reduce_cyclic(n);
    let support: Vec<usize> = (0..f.coeffs().len()).filter(|&i| f.coeff(i) != 0).collect();
    let Some(&k) = support.first() else {
        return false;
    };
    let step = (n / p) as usize;
    support.len() == p as usize
        && (k as u64) < n / p
        && support
            .iter()
            .enumerate()
            .all(|(l, &i)| i == k + l * step && f.coeff(i) == c)
}

/// The two lower bounds on largest coefficients used for spectral sets with
/// `#A > p^m`.
pub fn check_norm_claims(
    a: &ResidueSet,
    b: &ResidueSet,
    shape: PnqShape,
) -> Result<StructureReport> {
    let ctx = Ctx::new(a, shape)?;
    ctx.spectral_hypothesis(b)?;
    let PnqShape { p, n: pn, q } = shape;
    let a_list = &ctx.profile.a_list;
    let mut rep = StructureReport::new("norm_claims", shape);

    let exps: Vec<u32> = (0..=pn)
        .filter(|x| !a_list.contains(x) && ctx.vanishes(p.pow(*x)))
        .collect();
    if exps.is_empty() {
        rep.skip(
            "first_norm_bound",
            "no exponent a outside the profile with A(w^{p^a}) = 0",
        );
    } else {
        let mut bad = Vec::new();
        for &x in &exps {
            let i = a_list.iter().filter(|&&aj| aj < x).count() as u32;
            let norm = ctx.norm_at(p.pow(x) * q);
            let bound = (p.pow(i) * q) as i64;
            if norm < bound {
                bad.push(json!({"a": x, "norm": norm, "bound": bound}));
            }
        }
        rep.record(
            "first_norm_bound",
            bad.is_empty(),
            || json!({"set": a, "violations": bad}),
        );
    }

    if a_list.len() < 2 {
        rep.skip("successive_norm_bound", "fewer than two profile entries");
    } else {
        let mut bad = Vec::new();
        for w in a_list.windows(2) {
            let lo = ctx.norm_at(p.pow(w[0]) * q);
            let hi = ctx.norm_at(p.pow(w[1]) * q);
            if hi < p as i64 * lo {
                bad.push(json!({"a_j": w[0], "a_j1": w[1], "norm_j": lo, "norm_j1": hi}));
            }
        }
        rep.record(
            "successive_norm_bound",
            bad.is_empty(),
            || json!({"set": a, "violations": bad}),
        );
    }
    Ok(rep)
}

/// Splits `A` by which interval `[Nj/p, N(j+1)/p)` contains the least
/// residue of `p^{a_m} q a`. Needs `m >= 1`.
pub fn partition_by_am(a: &ResidueSet, shape: PnqShape) -> Result<Vec<ResidueSet>> {
    let profile = q_root_profile_for(a, shape)?;
    let am = profile
        .a_max()
        .ok_or_else(|| Error::Precondition("empty q-root profile (m = 0)".into()))?;
    Ok(partition_at(a, shape, am))
}

fn partition_at(a: &ResidueSet, shape: PnqShape, am: u32) -> Vec<ResidueSet> {
    let n = a.n();
    let mult = shape.p.pow(am) * shape.q;
    let width = n / shape.p;
    let mut parts = vec![Vec::new(); shape.p as usize];
    for &x in a.elements() {
        let r = ((x as u128 * mult as u128) % n as u128) as u64;
        parts[(r / width) as usize].push(x);
    }
    parts
        .into_iter()
        .map(|e| ResidueSet::from_residues(a.modulus().clone(), &e).expect("subset of a set"))
        .collect()
}

/// Equal part sizes, inherited vanishing below `p^{a_m} q`, and nonvanishing
/// of every part at `p^{a_m} q`. The conclusions are only evaluated when
/// `spectral` is set.
pub fn check_partition(a: &ResidueSet, shape: PnqShape, spectral: bool) -> Result<StructureReport> {
    let ctx = Ctx::new(a, shape)?;
    let am = ctx
        .profile
        .a_max()
        .ok_or_else(|| Error::Precondition("empty q-root profile (m = 0)".into()))?;
    let parts = partition_at(a, shape, am);
    let mut rep = StructureReport::new("partition", shape);
    rep.notes.insert("a_m".into(), json!(am));
    rep.notes.insert(
        "part_sizes".into(),
        json!(parts.iter().map(|s| s.len()).collect::<Vec<_>>()),
    );
    if !spectral {
        for c in ["equal_parts", "inherited_vanishing", "parts_nonvanishing"] {
            rep.skip(c, "set is not spectral");
        }
        return Ok(rep);
    }
    let size = parts[0].len();
    rep.record(
        "equal_parts",
        parts.iter().all(|s| s.len() == size),
        || json!({"set": a, "parts": parts}),
    );

    if am == 0 {
        rep.skip(
            "inherited_vanishing",
            "a_m = 0: p^{a_m - 1} q is not an integer",
        );
    } else {
        let bound = ctx.pow(am - 1) * shape.q;
        let mut bad = Vec::new();
        for d in crate::ring::divisors(a.modulus()) {
            if bound % d != 0 || !ctx.vanishes(d) {
                continue;
            }
            for (j, part) in parts.iter().enumerate() {
                if !vanishes_at(part, d)? {
                    bad.push(json!({"d": d, "part": j}));
                }
            }
        }
        rep.record(
            "inherited_vanishing",
            bad.is_empty(),
            || json!({"set": a, "parts": parts, "violations": bad}),
        );
    }

    let top = ctx.pow(am) * shape.q;
    let mut bad = Vec::new();
    for (j, part) in parts.iter().enumerate() {
        if vanishes_at(part, top)? {
            bad.push(j);
        }
    }
    rep.record(
        "parts_nonvanishing",
        bad.is_empty(),
        || json!({"set": a, "parts": parts, "vanishing_parts": bad, "d": top}),
    );
    Ok(rep)
}

/// For `#A = p^m q` and `A(w^{d_i}) = 0` at increasing powers `d_1 < ... <
/// d_m` of `p`: either every `d_j A` is a union of `p`-cycles, or `d_m A` is
/// a union of `q`-cycles.
pub fn check_many_roots(
    a: &ResidueSet,
    shape: PnqShape,
    d_list: &[u64],
) -> Result<StructureReport> {
    let ctx = Ctx::new(a, shape)?;
    let PnqShape { p, n: pn, q } = shape;
    if d_list.is_empty() {
        return Err(Error::HypothesisNotMet("no roots given".into()));
    }
    let m = d_list.len() as u32;
    if a.len() as u64 != p.pow(m) * q {
        return Err(Error::HypothesisNotMet(format!(
            "#A = {} differs from p^m q = {}",
            a.len(),
            p.pow(m) * q
        )));
    }
    for (i, &d) in d_list.iter().enumerate() {
        let power = crate::ring::valuation(d, p);
        if p.pow(power) != d || power > pn || (i > 0 && d <= d_list[i - 1]) {
            return Err(Error::Precondition(format!(
                "{d_list:?} is not an increasing list of powers of {p} up to p^{pn}"
            )));
        }
        if !ctx.vanishes(d) {
            return Err(Error::HypothesisNotMet(format!("A(w^{d}) != 0")));
        }
    }
    let first = d_list
        .iter()
        .all(|&d| union_of_cycles(&a.scaled(d), p).is_some_and(|f| !f.is_zero()));
    let dm = *d_list.last().expect("nonempty");
    let second = union_of_cycles(&a.scaled(dm), q).is_some_and(|f| !f.is_zero());
    let mut rep = StructureReport::new("many_roots", shape);
    rep.notes.insert("d_list".into(), json!(d_list));
    rep.notes.insert("p_branch".into(), json!(first));
    rep.notes.insert("q_branch".into(), json!(second));
    rep.record(
        "cycle_dichotomy",
        first || second,
        || json!({"set": a, "d_list": d_list}),
    );
    Ok(rep)
}

/// Everything checkable for one set and orientation: the profile, and, when a
/// spectrum is given, every structure check whose hypotheses hold.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StructureSummary {
    pub shape: PnqShape,
    pub profile: Vec<u32>,
    pub reports: Vec<StructureReport>,
    /// Checks whose hypotheses did not hold, with the reason.
    pub not_applicable: BTreeMap<String, String>,
}

impl StructureSummary {
    pub fn failures(&self) -> usize {
        self.reports.iter().map(|r| r.failures().count()).sum()
    }
}

fn note_err(map: &mut BTreeMap<String, String>, key: &str, e: Error) -> Result<()> {
    match e {
        Error::HypothesisNotMet(s) | Error::Precondition(s) => {
            map.insert(key.into(), s);
            Ok(())
        }
        other => Err(other),
    }
}

/// Runs every structure check on `a` (with spectrum `b`) for each
/// orientation of `N` as `p^n q`.
pub fn structure_suite(a: &ResidueSet, b: Option<&ResidueSet>) -> Result<Vec<StructureSummary>> {
    let mut out = Vec::new();
    for shape in PnqShape::all_of(a.modulus()) {
        let profile = q_root_profile_for(a, shape)?;
        let mut s = StructureSummary {
            shape,
            profile: profile.a_list.clone(),
            reports: Vec::new(),
            not_applicable: BTreeMap::new(),
        };
        let Some(b) = b else {
            s.not_applicable
                .insert("spectral".into(), "no spectrum given".into());
            out.push(s);
            continue;
        };
        match check_prop_main(a, b, shape) {
            Ok(r) => s.reports.push(r),
            Err(e) => note_err(&mut s.not_applicable, "prop_main", e)?,
        }
        match check_norm_claims(a, b, shape) {
            Ok(r) => s.reports.push(r),
            Err(e) => note_err(&mut s.not_applicable, "norm_claims", e)?,
        }
        match check_partition(a, shape, true) {
            Ok(r) => s.reports.push(r),
            Err(e) => note_err(&mut s.not_applicable, "partition", e)?,
        }
        many_roots_all(a, shape, &mut s)?;
        out.push(s);
    }
    Ok(out)
}

fn many_roots_all(a: &ResidueSet, shape: PnqShape, s: &mut StructureSummary) -> Result<()> {
    let PnqShape { p, n: pn, q } = shape;
    let size = a.len() as u64;
    let k = (1..=pn).find(|&k| p.pow(k) * q == size);
    let Some(k) = k else {
        s.not_applicable.insert(
            "many_roots".into(),
            format!("#A = {size} is not p^m q with m >= 1"),
        );
        return Ok(());
    };
    let zeros = zero_divisors(a);
    let roots: Vec<u64> = (0..=pn)
        .map(|j| p.pow(j))
        .filter(|&d| zeros.contains(d))
        .collect();
    if roots.len() < k as usize {
        s.not_applicable.insert(
            "many_roots".into(),
            format!("only {} roots at powers of p, need {k}", roots.len()),
        );
        return Ok(());
    }
    for pick in combinations(roots.len(), k as usize) {
        let d_list: Vec<u64> = pick.iter().map(|&i| roots[i]).collect();
        s.reports.push(check_many_roots(a, shape, &d_list)?);
    }
    Ok(())
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// `Phi_p(X^{N/p})` reduced mod `X^N - 1`, the mask of the `p`-cycle through 0.
pub fn p_cycle_poly(m: &Modulus, p: u64) -> IntPoly {
    cyclotomic(p).compose_power(m.n() / p, m.n())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::find_spectrum;

    fn z(n: u64) -> Modulus {
        Modulus::new(n).unwrap()
    }

    fn set(n: u64, e: &[i64]) -> ResidueSet {
        ResidueSet::new(z(n), e.iter().copied()).unwrap()
    }

    #[test]
    fn digits() {
        assert_eq!(padic_digits(0, 3, 3).digits, vec![0, 0, 0]);
        assert_eq!(padic_digits(3, 3, 3).digits, vec![0, 1, 0]);
        assert_eq!(padic_digits(26, 3, 3).digits, vec![2, 2, 2]);
        assert_eq!(padic_digits(26, 3, 3).value(), 26);
        assert_eq!(padic_digits(12, 2, 4).lowest_nonzero(), Some(2));
        for x in 1..64u64 {
            let i = padic_digits(x, 2, 6).lowest_nonzero().unwrap() as u32;
            assert!(exactly_divides(2, i, x));
            assert!(!exactly_divides(2, i + 1, x));
        }
    }

    #[test]
    fn shapes() {
        assert_eq!(
            PnqShape::all_of(&z(12)),
            vec![PnqShape { p: 2, n: 2, q: 3 }]
        );
        assert_eq!(PnqShape::all_of(&z(6)).len(), 2);
        assert!(PnqShape::all_of(&z(36)).is_empty());
        assert!(PnqShape::all_of(&z(30)).is_empty());
        assert!(q_root_profile(&set(8, &[0])).is_err());
    }

    #[test]
    fn profiles() {
        assert_eq!(q_root_profile(&set(12, &[0])).unwrap().m(), 0);
        let full = q_root_profile(&ResidueSet::full(z(12))).unwrap();
        assert_eq!(full.a_list, vec![0, 1]);
    }

    #[test]
    fn prop_main_on_small_examples() {
        // {0, 4, 8}: a 3-cycle in Z_12, q = 3, m = 0
        let a = set(12, &[0, 4, 8]);
        let b = find_spectrum(&a).unwrap().unwrap().b;
        let shape = PnqShape::of(a.modulus()).unwrap();
        let rep = check_prop_main(&a, &b, shape).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(rep.status("high_branch_roots"), Some(&ClauseStatus::Pass));
        // a singleton misses the size hypothesis
        let a = set(12, &[0]);
        let b = set(12, &[0]);
        assert!(matches!(
            check_prop_main(&a, &b, shape),
            Err(Error::HypothesisNotMet(_))
        ));
    }

    #[test]
    fn low_branch_shape_detection() {
        let m = z(12);
        let f = p_cycle_poly(&m, 2).scale(3).shift(1);
        assert!(is_scaled_p_cycle(&f, 12, 2, 3));
        assert!(!is_scaled_p_cycle(&f, 12, 2, 2));
        assert_eq!(max_coefficient(&f, &m), 3);
    }

    #[test]
    fn partition_of_cycles() {
        let a = set(12, &[0, 3, 6, 9]);
        let shape = PnqShape::of(a.modulus()).unwrap();
        let prof = q_root_profile_for(&a, shape).unwrap();
        if prof.m() >= 1 {
            let parts = partition_by_am(&a, shape).unwrap();
            assert_eq!(parts.len(), 2);
            assert_eq!(parts.iter().map(|s| s.len()).sum::<usize>(), 4);
        }
        assert!(matches!(
            partition_by_am(&set(12, &[0]), shape),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn many_roots_branches() {
        let shape = PnqShape { p: 2, n: 2, q: 3 };
        // three 2-cycles
        let a = set(12, &[0, 1, 2, 6, 7, 8]);
        let r = check_many_roots(&a, shape, &[1]).unwrap();
        assert_eq!(r.notes["p_branch"], json!(true));
        assert!(r.passed());
        // (X^0 + X^4 + X^8)(1 + X^3) vanishes at w and is a union of 3-cycles
        let a = set(12, &[0, 4, 8, 3, 7, 11]);
        let r = check_many_roots(&a, shape, &[1]).unwrap();
        assert_eq!(r.notes["q_branch"], json!(true));
        assert!(check_many_roots(&a, shape, &[]).is_err());
        assert!(check_many_roots(&set(12, &[0, 1]), shape, &[1]).is_err());
    }

    #[test]
    fn suite_runs_on_full_group() {
        let a = ResidueSet::full(z(12));
        let s = structure_suite(&a, Some(&a)).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].failures(), 0, "{s:?}");
    }
}
