//! Exhaustive tile/spectral classification over one modulus.

use std::collections::{BTreeMap, HashMap};
use std::path::PathBuf;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::cache::Cache;
use super::canonical::is_affine_least;
use super::enumerate::{Walker, WorkUnit, ZeroTable};
use crate::bits;
use crate::error::{Error, Result};
use crate::ring::{prepopulate, DivisorClassSet, Modulus, ResidueSet};
use crate::spectral::SpectrumSearch;
use crate::structure::{structure_suite, ClauseStatus, PnqShape, StructureSummary};
use crate::tiling::find_complement_mask;

/// Depth of the necklace prefix that defines one work unit.
pub const UNIT_DEPTH: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOptions {
    /// Reduce by unit dilations as well as translations.
    pub affine: bool,
    pub jobs: usize,
    pub cache_dir: Option<PathBuf>,
    /// Only classes with at most this many elements.
    pub max_size: Option<usize>,
    /// Largest modulus accepted.
    pub max_n: u64,
    /// Run the structure checks on spectral sets when `N = p^n q`.
    pub structure: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            affine: false,
            jobs: 1,
            cache_dir: None,
            max_size: None,
            max_n: 36,
            structure: true,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub classes: u64,
    pub tiles: u64,
    pub spectral: u64,
    pub both: u64,
    pub neither: u64,
    /// `size -> [classes, tiles, spectral]`.
    pub by_size: BTreeMap<usize, [u64; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Counterexample {
    pub set: Vec<u64>,
    pub tile: bool,
    pub spectral: bool,
    pub complement: Option<Vec<u64>>,
    pub spectrum: Option<Vec<u64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Violation {
    pub kind: String,
    pub set: Vec<u64>,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundChecks {
    /// Spectral classes checked against `#A <= min D`.
    pub spectral_size_bound: u64,
    /// Classes checked for `prod Phi_s(1) | #A`.
    pub divisibility: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImplicationChecks {
    /// Classes with `T1` and `T2`, each required to tile.
    pub t1t2_to_tile: u64,
    /// Tiles required to satisfy `T1` and `T2` (only when `N` has at most two
    /// prime divisors).
    pub tile_to_t1t2: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClauseCounts {
    pub pass: u64,
    pub fail: u64,
    pub skipped: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct StructureTally {
    pub sets_checked: u64,
    /// `"check.clause" -> counts`.
    pub clauses: BTreeMap<String, ClauseCounts>,
    /// Checks whose hypotheses failed, by check name.
    pub not_applicable: BTreeMap<String, u64>,
    pub discrepancies: Vec<Value>,
}

impl StructureTally {
    pub fn absorb_summaries(&mut self, set: &[u64], summaries: &[StructureSummary]) {
        self.sets_checked += 1;
        for s in summaries {
            for r in &s.reports {
                for c in &r.clauses {
                    let e = self
                        .clauses
                        .entry(format!("{}.{}", r.check, c.clause))
                        .or_default();
                    match &c.status {
                        ClauseStatus::Pass => e.pass += 1,
                        ClauseStatus::Skipped { .. } => e.skipped += 1,
                        ClauseStatus::Fail { counterexample } => {
                            e.fail += 1;
                            self.discrepancies.push(json!({
                                "set": set,
                                "shape": s.shape,
                                "check": r.check,
                                "clause": c.clause,
                                "counterexample": counterexample,
                            }));
                        }
                    }
                }
            }
            for k in s.not_applicable.keys() {
                *self.not_applicable.entry(k.clone()).or_default() += 1;
            }
        }
    }

    pub fn merge(&mut self, other: &StructureTally) {
        self.sets_checked += other.sets_checked;
        for (k, c) in &other.clauses {
            let e = self.clauses.entry(k.clone()).or_default();
            e.pass += c.pass;
            e.fail += c.fail;
            e.skipped += c.skipped;
        }
        for (k, v) in &other.not_applicable {
            *self.not_applicable.entry(k.clone()).or_default() += v;
        }
        self.discrepancies
            .extend(other.discrepancies.iter().cloned());
    }

    pub fn failures(&self) -> u64 {
        self.clauses.values().map(|c| c.fail).sum()
    }

    pub fn passes(&self, prefix: &str) -> u64 {
        self.clauses
            .iter()
            .filter(|(k, _)| k.starts_with(prefix))
            .map(|(_, c)| c.pass)
            .sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Parameters {
    pub affine: bool,
    pub max_size: Option<usize>,
    /// Set when `max_size` excluded some classes.
    pub size_capped: bool,
    pub work_units: usize,
    pub unit_depth: usize,
    pub t2_reading: String,
    pub structure: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timing {
    pub elapsed_ms: u128,
    pub jobs: usize,
    pub cached_units: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub modulus: u64,
    pub parameters: Parameters,
    pub counts: Counts,
    pub counterexamples: Vec<Counterexample>,
    pub bound_checks: BoundChecks,
    pub bound_violations: Vec<Violation>,
    pub implication_checks: ImplicationChecks,
    pub implication_violations: Vec<Violation>,
    pub structure: Option<StructureTally>,
    pub timing: Timing,
}

impl VerificationReport {
    /// Equality of every field except timing.
    pub fn same_results(&self, other: &VerificationReport) -> bool {
        let strip = |r: &VerificationReport| VerificationReport {
            timing: Timing::default(),
            ..r.clone()
        };
        strip(self) == strip(other)
    }

    pub fn discrepancy_found(&self) -> bool {
        !self.counterexamples.is_empty()
            || !self.bound_violations.is_empty()
            || !self.implication_violations.is_empty()
            || self.structure.as_ref().is_some_and(|s| s.failures() > 0)
    }
}

/// One classified translation class, as stored in the cache.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SetRecord {
    pub set: Vec<u64>,
    pub complement: Option<Vec<u64>>,
    pub spectrum: Option<Vec<u64>>,
    pub t1: bool,
    pub t2: bool,
    pub min_d: u64,
    pub lower_bound: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub structure: Option<StructureTally>,
}

impl SetRecord {
    pub fn mask(&self) -> u128 {
        to_mask(&self.set)
    }
}

pub(crate) fn to_mask(e: &[u64]) -> u128 {
    e.iter().fold(0u128, |m, &x| m | 1u128 << x)
}

fn to_list(mask: u128) -> Vec<u64> {
    bits::elements(mask).map(|x| x as u64).collect()
}

/// Facts that depend only on the zero mask.
#[derive(Clone, Debug)]
pub(crate) struct ZeroInfo {
    pub lower_bound: u64,
    pub min_d: u64,
    pub t2: bool,
}

pub(crate) struct Shared {
    pub modulus: Modulus,
    pub n: usize,
    pub table: ZeroTable,
    pub units: Vec<usize>,
    pub shapes: Vec<PnqShape>,
    pub options: VerifyOptions,
}

impl Shared {
    pub fn new(m: &Modulus, options: &VerifyOptions) -> Result<Self> {
        let n = m.n();
        if n > options.max_n || n > bits::MAX_MASK_N {
            return Err(Error::ResourceLimit(format!(
                "N = {n} exceeds the configured limit {}",
                options.max_n.min(bits::MAX_MASK_N)
            )));
        }
        prepopulate(m);
        Ok(Shared {
            modulus: m.clone(),
            n: n as usize,
            table: ZeroTable::new(m)?,
            units: m.units().into_iter().map(|u| u as usize).collect(),
            shapes: PnqShape::all_of(m),
            options: options.clone(),
        })
    }

    pub fn zero_info(&self, zmask: u32) -> ZeroInfo {
        let zeros = self.table.zeros_of(zmask);
        let n = self.modulus.n();
        let has = |d: u64| zeros.binary_search(&d).is_ok();
        let s_a: Vec<(u64, u64)> = self
            .modulus
            .factorization()
            .iter()
            .flat_map(|&(p, e)| (1..=e).map(move |k| (p, p.pow(k))))
            .filter(|&(_, s)| has(n / s))
            .collect();
        let lower_bound = s_a.iter().map(|&(p, _)| p).product();
        let min_d = self
            .table
            .divisors()
            .iter()
            .copied()
            .find(|&d| !zeros.iter().any(|&z| z % d == 0))
            .expect("N itself is never a zero of a nonempty set");
        let mut t2 = true;
        for subset in 1u64..(1 << s_a.len()) {
            if subset.count_ones() < 2 {
                continue;
            }
            let chosen: Vec<(u64, u64)> = (0..s_a.len())
                .filter(|i| subset >> i & 1 == 1)
                .map(|i| s_a[i])
                .collect();
            let mut primes: Vec<u64> = chosen.iter().map(|c| c.0).collect();
            primes.dedup();
            if primes.len() != chosen.len() {
                continue;
            }
            let prod: u64 = chosen.iter().map(|c| c.1).product();
            if !has(n / prod) {
                t2 = false;
                break;
            }
        }
        ZeroInfo {
            lower_bound,
            min_d,
            t2,
        }
    }

    pub fn divisor_classes(&self, zmask: u32) -> DivisorClassSet {
        DivisorClassSet {
            modulus: self.modulus.clone(),
            divisors: self.table.zeros_of(zmask),
        }
    }
}

pub(crate) struct UnitCtx<'a> {
    pub shared: &'a Shared,
    searches: HashMap<u32, SpectrumSearch>,
    spectra: HashMap<(u32, usize), Option<u128>>,
    infos: HashMap<u32, ZeroInfo>,
}

impl<'a> UnitCtx<'a> {
    pub fn new(shared: &'a Shared) -> Self {
        UnitCtx {
            shared,
            searches: HashMap::new(),
            spectra: HashMap::new(),
            infos: HashMap::new(),
        }
    }

    pub fn info(&mut self, zmask: u32) -> ZeroInfo {
        let shared = self.shared;
        self.infos
            .entry(zmask)
            .or_insert_with(|| shared.zero_info(zmask))
            .clone()
    }

    pub fn spectrum(&mut self, zmask: u32, k: usize) -> Option<u128> {
        if let Some(s) = self.spectra.get(&(zmask, k)) {
            return *s;
        }
        let shared = self.shared;
        let search = self
            .searches
            .entry(zmask)
            .or_insert_with(|| SpectrumSearch::new(&shared.divisor_classes(zmask)));
        let found = search.find(k);
        self.spectra.insert((zmask, k), found);
        found
    }

    /// `None` for a class that is neither a tile nor spectral and breaks no
    /// bound or implication; such classes are only counted.
    pub fn classify(&mut self, mask: u128, k: usize, zmask: u32) -> Result<Option<SetRecord>> {
        let n = self.shared.n;
        let complement = if n % k == 0 {
            find_complement_mask(mask, n)
        } else {
            None
        };
        let spectrum = self.spectrum(zmask, k);
        let info = self.info(zmask);
        let t1 = k as u64 == info.lower_bound;
        if complement.is_none()
            && spectrum.is_none()
            && k as u64 % info.lower_bound == 0
            && !(t1 && info.t2)
        {
            return Ok(None);
        }
        let set = to_list(mask);
        let structure = match (
            spectrum,
            self.shared.options.structure && !self.shared.shapes.is_empty(),
        ) {
            (Some(b), true) => {
                let m = &self.shared.modulus;
                let a = ResidueSet::from_mask(m.clone(), mask);
                let b = ResidueSet::from_mask(m.clone(), b);
                let summaries = structure_suite(&a, Some(&b))?;
                let mut tally = StructureTally::default();
                tally.absorb_summaries(&set, &summaries);
                Some(tally)
            }
            _ => None,
        };
        Ok(Some(SetRecord {
            set,
            complement: complement.map(to_list),
            spectrum: spectrum.map(to_list),
            t1,
            t2: info.t2,
            min_d: info.min_d,
            lower_bound: info.lower_bound,
            structure,
        }))
    }
}

/// Aggregate of the records of one or more work units.
#[derive(Clone, Debug, Default)]
pub(crate) struct Accum {
    pub counts: Counts,
    pub counterexamples: Vec<Counterexample>,
    pub bound_checks: BoundChecks,
    pub bound_violations: Vec<Violation>,
    pub implication_checks: ImplicationChecks,
    pub implication_violations: Vec<Violation>,
    pub structure: StructureTally,
}

impl Accum {
    pub fn absorb(&mut self, r: &SetRecord, prime_count: usize) {
        let k = r.set.len();
        let tile = r.complement.is_some();
        let spectral = r.spectrum.is_some();
        let c = &mut self.counts;
        c.classes += 1;
        c.tiles += tile as u64;
        c.spectral += spectral as u64;
        c.both += (tile && spectral) as u64;
        c.neither += (!tile && !spectral) as u64;
        let row = c.by_size.entry(k).or_default();
        row[0] += 1;
        row[1] += tile as u64;
        row[2] += spectral as u64;
        if tile != spectral {
            self.counterexamples.push(Counterexample {
                set: r.set.clone(),
                tile,
                spectral,
                complement: r.complement.clone(),
                spectrum: r.spectrum.clone(),
            });
        }
        self.bound_checks.divisibility += 1;
        if k as u64 % r.lower_bound != 0 {
            self.bound_violations.push(Violation {
                kind: "divisibility".into(),
                set: r.set.clone(),
                detail: format!("product {} does not divide {k}", r.lower_bound),
            });
        }
        if spectral {
            self.bound_checks.spectral_size_bound += 1;
            if k as u64 > r.min_d {
                self.bound_violations.push(Violation {
                    kind: "spectral_size".into(),
                    set: r.set.clone(),
                    detail: format!("#A = {k} > min D = {}", r.min_d),
                });
            }
        }
        if r.t1 && r.t2 {
            self.implication_checks.t1t2_to_tile += 1;
            if !tile {
                self.implication_violations.push(Violation {
                    kind: "t1t2_to_tile".into(),
                    set: r.set.clone(),
                    detail: "T1 and T2 hold but no complement exists".into(),
                });
            }
        }
        if tile && prime_count <= 2 {
            self.implication_checks.tile_to_t1t2 += 1;
            if !(r.t1 && r.t2) {
                self.implication_violations.push(Violation {
                    kind: "tile_to_t1t2".into(),
                    set: r.set.clone(),
                    detail: format!("tile with t1 = {}, t2 = {}", r.t1, r.t2),
                });
            }
        }
        if let Some(s) = &r.structure {
            self.structure.merge(s);
        }
    }

    pub fn absorb_plain(&mut self, k: usize, count: u64) {
        let c = &mut self.counts;
        c.classes += count;
        c.neither += count;
        c.by_size.entry(k).or_default()[0] += count;
        self.bound_checks.divisibility += count;
    }

    pub fn merge(&mut self, o: Accum) {
        let c = &mut self.counts;
        c.classes += o.counts.classes;
        c.tiles += o.counts.tiles;
        c.spectral += o.counts.spectral;
        c.both += o.counts.both;
        c.neither += o.counts.neither;
        for (k, v) in o.counts.by_size {
            let row = c.by_size.entry(k).or_default();
            for i in 0..3 {
                row[i] += v[i];
            }
        }
        self.counterexamples.extend(o.counterexamples);
        self.bound_checks.divisibility += o.bound_checks.divisibility;
        self.bound_checks.spectral_size_bound += o.bound_checks.spectral_size_bound;
        self.bound_violations.extend(o.bound_violations);
        self.implication_checks.t1t2_to_tile += o.implication_checks.t1t2_to_tile;
        self.implication_checks.tile_to_t1t2 += o.implication_checks.tile_to_t1t2;
        self.implication_violations.extend(o.implication_violations);
        self.structure.merge(&o.structure);
    }
}

/// The classes of one work unit: full records for the notable ones and a
/// per-size count of the rest.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct UnitOutput {
    pub records: Vec<SetRecord>,
    pub plain: BTreeMap<usize, u64>,
}

impl UnitOutput {
    pub(crate) fn fold(&self, prime_count: usize) -> Accum {
        let mut acc = Accum::default();
        for r in &self.records {
            acc.absorb(r, prime_count);
        }
        for (&k, &v) in &self.plain {
            acc.absorb_plain(k, v);
        }
        acc
    }
}

/// Classifies every class in one work unit.
pub(crate) fn run_unit(shared: &Shared, unit: &WorkUnit) -> Result<UnitOutput> {
    let mut ctx = UnitCtx::new(shared);
    let mut walker = Walker::new(&shared.table, shared.options.max_size);
    let mut out = UnitOutput::default();
    let mut err = None;
    walker.run(unit, |mask, k, zmask| {
        if err.is_some() {
            return;
        }
        if shared.options.affine && !is_affine_least(mask, shared.n, &shared.units) {
            return;
        }
        match ctx.classify(mask, k, zmask) {
            Ok(Some(r)) => out.records.push(r),
            Ok(None) => *out.plain.entry(k).or_default() += 1,
            Err(e) => err = Some(e),
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// Enumerates one representative per class of nonempty subsets of `Z_N`,
/// decides tile and spectral for each, and cross-checks the two verdicts,
/// the size bounds, the `T1`/`T2` implications, and (for `N = p^n q`) the
/// structure of every spectral set.
pub fn verify_fuglede(m: &Modulus, options: &VerifyOptions) -> Result<VerificationReport> {
    let start = Instant::now();
    let shared = Shared::new(m, options)?;
    let units = Walker::units(shared.n, UNIT_DEPTH);
    let jobs = options.jobs.max(1);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::ResourceLimit(format!("thread pool: {e}")))?;

    let mut cache = match &options.cache_dir {
        Some(dir) => Some(Cache::open(dir, &shared)?),
        None => None,
    };
    let prime_count = m.prime_count();
    let mut total = Accum::default();
    let mut cached_units = 0;
    let batch = (jobs * 4).max(1);
    let indices: Vec<usize> = (0..units.len()).collect();
    for chunk in indices.chunks(batch) {
        let todo: Vec<usize> = chunk
            .iter()
            .copied()
            .filter(|&i| cache.as_ref().is_none_or(|c| !c.has_unit(i)))
            .collect();
        let computed: Vec<Result<UnitOutput>> = pool.install(|| {
            use rayon::prelude::*;
            todo.par_iter()
                .map(|&i| run_unit(&shared, &units[i]))
                .collect()
        });
        let mut fresh: HashMap<usize, UnitOutput> = HashMap::new();
        for (&i, r) in todo.iter().zip(computed) {
            fresh.insert(i, r?);
        }
        for &i in chunk {
            let output = match fresh.remove(&i) {
                Some(v) => {
                    if let Some(c) = cache.as_mut() {
                        c.append_unit(i, &v)?;
                    }
                    v
                }
                None => {
                    cached_units += 1;
                    cache.as_ref().expect("cached unit").unit(i)?
                }
            };
            total.merge(output.fold(prime_count));
        }
    }

    total.counterexamples.sort();
    total.bound_violations.sort();
    total.implication_violations.sort();
    let structure = (options.structure && !shared.shapes.is_empty()).then_some(total.structure);
    Ok(VerificationReport {
        modulus: m.n(),
        parameters: Parameters {
            affine: options.affine,
            max_size: options.max_size,
            size_capped: options.max_size.is_some_and(|c| c < shared.n),
            work_units: units.len(),
            unit_depth: UNIT_DEPTH,
            t2_reading: "coprime".into(),
            structure: options.structure,
        },
        counts: total.counts,
        counterexamples: total.counterexamples,
        bound_checks: total.bound_checks,
        bound_violations: total.bound_violations,
        implication_checks: total.implication_checks,
        implication_violations: total.implication_violations,
        structure,
        timing: Timing {
            elapsed_ms: start.elapsed().as_millis(),
            jobs,
            cached_units,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(n: u64, o: &VerifyOptions) -> VerificationReport {
        verify_fuglede(&Modulus::new(n).unwrap(), o).unwrap()
    }

    #[test]
    fn trivial_group() {
        let r = run(1, &VerifyOptions::default());
        assert_eq!(r.counts.classes, 1);
        assert_eq!((r.counts.tiles, r.counts.spectral), (1, 1));
    }

    #[test]
    fn prime_moduli() {
        for p in [2u64, 3, 5, 7, 11] {
            let r = run(p, &VerifyOptions::default());
            assert!(r.counterexamples.is_empty());
            // only singletons and the whole group
            assert_eq!(r.counts.tiles, 2, "p={p}");
            assert_eq!((r.counts.spectral, r.counts.both), (2, 2));
            // binary necklaces of length p, less the empty one
            assert_eq!(r.counts.classes, ((1u64 << p) - 2) / p + 1);
        }
    }

    #[test]
    fn twelve() {
        let r = run(12, &VerifyOptions::default());
        assert!(!r.discrepancy_found(), "{:?}", r.counterexamples);
        // necklaces of length 12, minus the empty one
        assert_eq!(r.counts.classes, 351);
        let s = r.structure.unwrap();
        assert!(s.sets_checked > 0 && s.failures() == 0);
    }

    #[test]
    fn affine_is_a_subset() {
        let t = run(10, &VerifyOptions::default());
        let a = run(
            10,
            &VerifyOptions {
                affine: true,
                ..VerifyOptions::default()
            },
        );
        assert!(a.counts.classes < t.counts.classes);
        assert!(a.counterexamples.is_empty());
    }

    #[test]
    fn size_cap_is_reported() {
        let r = run(
            12,
            &VerifyOptions {
                max_size: Some(4),
                ..VerifyOptions::default()
            },
        );
        assert!(r.parameters.size_capped);
        assert!(r.counts.by_size.keys().all(|&k| k <= 4));
        assert!(matches!(
            verify_fuglede(&Modulus::new(40).unwrap(), &VerifyOptions::default()),
            Err(Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn jobs_and_cache_do_not_change_results() {
        let dir = tempfile::tempdir().unwrap();
        let serial = run(14, &VerifyOptions::default());
        let o = VerifyOptions {
            jobs: 4,
            cache_dir: Some(dir.path().to_path_buf()),
            ..VerifyOptions::default()
        };
        let cold = run(14, &o);
        let warm = run(14, &o);
        assert!(serial.same_results(&cold) && cold.same_results(&warm));
        assert_eq!(warm.timing.cached_units, warm.parameters.work_units);

        // a tampered witness is rejected
        let path = dir.path().join("z14.jsonl");
        let text = std::fs::read_to_string(&path).unwrap();
        let bad = text.replacen("\"complement\":[0,", "\"complement\":[1,", 1);
        assert_ne!(bad, text);
        std::fs::write(&path, bad).unwrap();
        assert!(matches!(
            verify_fuglede(&Modulus::new(14).unwrap(), &o),
            Err(Error::CorruptCache { .. })
        ));
    }

    #[test]
    fn interrupted_cache_resumes() {
        let dir = tempfile::tempdir().unwrap();
        let o = VerifyOptions {
            cache_dir: Some(dir.path().to_path_buf()),
            ..VerifyOptions::default()
        };
        let cold = run(13, &o);
        let path = dir.path().join("z13.jsonl");
        let text = std::fs::read_to_string(&path).unwrap();
        // drop the tail, leaving a torn line
        let cut = &text[..text.len() * 2 / 3];
        std::fs::write(&path, cut).unwrap();
        let resumed = run(13, &o);
        assert!(cold.same_results(&resumed));
        assert!(resumed.timing.cached_units > 0);
        assert!(resumed.timing.cached_units < resumed.parameters.work_units);
    }
}
