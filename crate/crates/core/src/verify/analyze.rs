//! Everything known about a single set.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{d_set_from_zeros, zero_divisors, ResidueSet};
use crate::spectral::{
    bounds_report, find_spectrum, is_spectrum, laba_spectrum, BoundsReport, SpectrumWitness,
};
use crate::structure::{structure_suite, PnqShape, StructureSummary};
use crate::tiling::{
    find_complement, is_tiling_pair, prime_power_complement, s_a, t1, t2, t2_with, T2Reading,
    TilingWitness,
};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub set: ResidueSet,
    pub size: usize,
    /// Divisors `d` with `A(w^d) = 0`.
    pub zero_divisors: Vec<u64>,
    pub s_a: Vec<u64>,
    pub d_set: Vec<u64>,
    pub t1: bool,
    pub t2: bool,
    /// `T2` with every product of members of `S_A`, not only coprime ones.
    pub t2_all_products: bool,
    pub tile: bool,
    pub complement: Option<TilingWitness>,
    pub spectral: bool,
    pub spectrum: Option<SpectrumWitness>,
    pub laba_spectrum: Option<SpectrumWitness>,
    /// The explicit complement, when `N` is a prime power and `A` is spectral.
    pub prime_power_complement: Option<TilingWitness>,
    pub bounds: BoundsReport,
    pub structure: Option<Vec<StructureSummary>>,
    pub notes: Vec<String>,
}

impl AnalysisReport {
    /// Rechecks every embedded witness.
    pub fn witnesses_hold(&self) -> Result<bool> {
        let a = &self.set;
        for w in self.complement.iter().chain(&self.prime_power_complement) {
            if &w.a != a || !is_tiling_pair(a, &w.b)? {
                return Ok(false);
            }
        }
        for w in self.spectrum.iter().chain(&self.laba_spectrum) {
            if &w.a != a || !is_spectrum(a, &w.b)? {
                return Ok(false);
            }
        }
        Ok(self.tile == self.complement.is_some() && self.spectral == self.spectrum.is_some())
    }
}

pub fn analyze(a: &ResidueSet) -> Result<AnalysisReport> {
    if a.is_empty() {
        return Err(Error::Precondition("cannot analyze the empty set".into()));
    }
    let zeros = zero_divisors(a);
    let complement = find_complement(a)?;
    let spectrum = find_spectrum(a)?;
    let (t1v, t2v) = (t1(a), t2(a));
    let mut notes = Vec::new();

    let laba = if t1v && t2v {
        match laba_spectrum(a) {
            Ok(w) => Some(w),
            Err(Error::ConstructionFailed(s)) => {
                notes.push(format!("explicit spectrum failed: {s}"));
                None
            }
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    let ppc = match (spectrum.is_some(), a.modulus().as_prime_power()) {
        (true, Some(_)) => match prime_power_complement(a) {
            Ok(w) => Some(w),
            Err(Error::ConstructionFailed(s)) => {
                notes.push(format!("explicit complement failed: {s}"));
                None
            }
            Err(e) => return Err(e),
        },
        _ => None,
    };
    let structure = if PnqShape::all_of(a.modulus()).is_empty() {
        None
    } else {
        Some(structure_suite(a, spectrum.as_ref().map(|w| &w.b))?)
    };
    if complement.is_some() != spectrum.is_some() {
        notes.push(format!(
            "tile = {}, spectral = {}: the two verdicts differ",
            complement.is_some(),
            spectrum.is_some()
        ));
    }
    let bounds = bounds_report(a);
    if spectrum.is_some() && !bounds.within_spectral_bound {
        notes.push("spectral but larger than min D".into());
    }
    if !bounds.divisibility_holds {
        notes.push("product of Phi_s(1) does not divide #A".into());
    }

    let report = AnalysisReport {
        set: a.clone(),
        size: a.len(),
        zero_divisors: zeros.divisors.clone(),
        s_a: s_a(a),
        d_set: d_set_from_zeros(&zeros),
        t1: t1v,
        t2: t2v,
        t2_all_products: t2_with(a, T2Reading::AllProducts),
        tile: complement.is_some(),
        complement,
        spectral: spectrum.is_some(),
        spectrum,
        laba_spectrum: laba,
        prime_power_complement: ppc,
        bounds,
        structure,
        notes,
    };
    if !report.witnesses_hold()? {
        return Err(Error::Discrepancy(format!(
            "a witness for {a} failed to re-verify"
        )));
    }
    Ok(report)
}
