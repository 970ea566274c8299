//! Structure checks on the spectral sets of `Z_45` and `Z_50`, which are too
//! large for a full subset walk. Spectral sets there are exactly the tiles,
//! so the tiles are enumerated through complement pairs and each one's
//! spectrum is searched for directly.

use std::collections::BTreeMap;

use fuglede_core::ring::{Modulus, ResidueSet};
use fuglede_core::spectral::find_spectrum;
use fuglede_core::structure::{structure_suite, ClauseStatus};
use fuglede_core::verify::enumerate::{tile_classes, ZeroTable};

fn sweep(n: u64) -> BTreeMap<String, u64> {
    let m = Modulus::new(n).unwrap();
    let classes = tile_classes(&ZeroTable::new(&m).unwrap());
    let mut passes: BTreeMap<String, u64> = BTreeMap::new();
    for mask in classes {
        let a = ResidueSet::from_mask(m.clone(), mask);
        let w = find_spectrum(&a)
            .unwrap()
            .unwrap_or_else(|| panic!("tile {a} has no spectrum"));
        for s in structure_suite(&a, Some(&w.b)).unwrap() {
            for r in &s.reports {
                for c in &r.clauses {
                    if let ClauseStatus::Fail { counterexample } = &c.status {
                        panic!(
                            "{a}, B = {}: {}.{} fails: {counterexample}",
                            w.b, r.check, c.clause
                        );
                    }
                    if c.status == ClauseStatus::Pass {
                        *passes.entry(r.check.clone()).or_default() += 1;
                    }
                }
            }
        }
    }
    passes
}

#[test]
fn z45() {
    let passes = sweep(45);
    for check in ["prop_main", "norm_claims", "partition", "many_roots"] {
        assert!(
            passes.get(check).copied().unwrap_or(0) > 0,
            "{check} never applied: {passes:?}"
        );
    }
}

#[test]
fn z50() {
    let passes = sweep(50);
    for check in ["prop_main", "norm_claims", "partition", "many_roots"] {
        assert!(
            passes.get(check).copied().unwrap_or(0) > 0,
            "{check} never applied: {passes:?}"
        );
    }
}
