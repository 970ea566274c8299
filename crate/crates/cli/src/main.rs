use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use fuglede_core::spectral::{find_spectrum, laba_spectrum};
use fuglede_core::tiling::{find_complement, prime_power_complement};
use fuglede_core::vanishing::{decompose, DecompositionOutcome};
use fuglede_core::verify::{
    analyze, parse_multiset, parse_set, verify_fuglede, AnalysisReport, VerificationReport,
    VerifyOptions,
};
use fuglede_core::{Error, Modulus};

#[derive(Parser)]
#[command(
    name = "fuglede",
    version,
    about = "Tiles and spectral sets in cyclic groups"
)]
struct Cli {
    /// Print JSON instead of tables.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report zeros, T1/T2, tile and spectral verdicts with witnesses.
    Analyze {
        /// `{"n":..,"elements":[..]}`, `N:a1,a2,...`, or a JSON file.
        set: String,
    },
    /// Classify every nonempty subset of Z_N up to translation.
    Verify {
        #[arg(long)]
        n: u64,
        /// Also reduce by unit dilations.
        #[arg(long)]
        affine: bool,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        cache_dir: Option<PathBuf>,
        /// Only subsets with at most this many elements.
        #[arg(long)]
        max_size: Option<usize>,
        /// Largest modulus to accept.
        #[arg(long, default_value_t = VerifyOptions::default().max_n)]
        max_n: u64,
        /// Skip the structure checks on spectral sets.
        #[arg(long)]
        no_structure: bool,
    },
    /// Find a spectrum.
    Spectrum { set: String },
    /// Find a tiling complement.
    Complement { set: String },
    /// Split a vanishing multiset into prime cycles.
    Decompose {
        /// `{"n":..,"counts":[..]}` or a JSON file.
        multiset: String,
        /// The multiset lives on `scale * Z_N`.
        #[arg(long, default_value_t = 1)]
        scale: u64,
    },
    /// The explicit spectrum of a set with T1 and T2.
    ConstructLaba { set: String },
    /// The explicit complement of a spectral set in Z_{p^n}.
    ConstructPn { set: String },
}

enum Outcome {
    Ok,
    Discrepancy,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Discrepancy) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::ResourceLimit(_) => 3,
                Error::Discrepancy(_) | Error::ConstructionFailed(_) => 2,
                _ => 1,
            })
        }
    }
}

fn print<T: Serialize>(json: bool, value: &T, human: impl FnOnce() -> String) {
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(value).expect("serializable")
        );
    } else {
        println!("{}", human());
    }
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let json = cli.json;
    match &cli.command {
        Command::Analyze { set } => {
            let r = analyze(&parse_set(set)?)?;
            print(json, &r, || analysis_table(&r));
            Ok(if r.tile != r.spectral {
                Outcome::Discrepancy
            } else {
                Outcome::Ok
            })
        }
        Command::Verify {
            n,
            affine,
            jobs,
            cache_dir,
            max_size,
            max_n,
            no_structure,
        } => {
            let options = VerifyOptions {
                affine: *affine,
                jobs: *jobs,
                cache_dir: cache_dir.clone(),
                max_size: *max_size,
                max_n: *max_n,
                structure: !no_structure,
            };
            let r = verify_fuglede(&Modulus::new(*n)?, &options)?;
            print(json, &r, || verification_table(&r));
            Ok(if r.discrepancy_found() {
                Outcome::Discrepancy
            } else {
                Outcome::Ok
            })
        }
        Command::Spectrum { set } => {
            match find_spectrum(&parse_set(set)?)? {
                Some(w) => print(json, &w, || format!("spectral: B = {}", w.b)),
                None => print(json, &json!({"spectral": false}), || "not spectral".into()),
            }
            Ok(Outcome::Ok)
        }
        Command::Complement { set } => {
            match find_complement(&parse_set(set)?)? {
                Some(w) => print(json, &w, || format!("tile: B = {}", w.b)),
                None => print(json, &json!({"tile": false}), || "not a tile".into()),
            }
            Ok(Outcome::Ok)
        }
        Command::Decompose { multiset, scale } => {
            let out = decompose(&parse_multiset(multiset)?, *scale)?;
            print(json, &out, || match &out {
                DecompositionOutcome::Decomposed(d) => {
                    let mut s = format!("{} cycles (order {}):", d.cycles.len(), d.order);
                    for c in &d.cycles {
                        s.push_str(&format!("\n  {}-cycle at {}", c.prime, c.offset));
                    }
                    s
                }
                DecompositionOutcome::Infeasible(c) => format!(
                    "no decomposition into cycles of primes {:?} (search exhausted: {})",
                    c.primes, c.exhausted
                ),
            });
            Ok(Outcome::Ok)
        }
        Command::ConstructLaba { set } => {
            let w = laba_spectrum(&parse_set(set)?)?;
            print(json, &w, || format!("spectrum: B = {}", w.b));
            Ok(Outcome::Ok)
        }
        Command::ConstructPn { set } => {
            let w = prime_power_complement(&parse_set(set)?)?;
            print(json, &w, || format!("complement: B = {}", w.b));
            Ok(Outcome::Ok)
        }
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn analysis_table(r: &AnalysisReport) -> String {
    let mut s = String::new();
    let mut row = |k: &str, v: String| s.push_str(&format!("{k:<16} {v}\n"));
    row("set", r.set.to_string());
    row("size", r.size.to_string());
    row("zeros at d", format!("{:?}", r.zero_divisors));
    row("S_A", format!("{:?}", r.s_a));
    row("D", format!("{:?}", r.d_set));
    row("T1", yes(r.t1).into());
    row(
        "T2",
        format!("{} (all products: {})", yes(r.t2), yes(r.t2_all_products)),
    );
    row(
        "tile",
        match &r.complement {
            Some(w) => format!("yes, B = {}", w.b),
            None => "no".into(),
        },
    );
    row(
        "spectral",
        match &r.spectrum {
            Some(w) => format!("yes, B = {}", w.b),
            None => "no".into(),
        },
    );
    if let Some(w) = &r.laba_spectrum {
        row("T1/T2 spectrum", w.b.to_string());
    }
    if let Some(w) = &r.prime_power_complement {
        row("p^n complement", w.b.to_string());
    }
    row(
        "bounds",
        format!(
            "min D = {}, prod Phi_s(1) = {}",
            r.bounds.min_d, r.bounds.lower_bound
        ),
    );
    if let Some(summaries) = &r.structure {
        for sm in summaries {
            let shape = sm.shape;
            let checks: Vec<String> = sm
                .reports
                .iter()
                .map(|rep| format!("{} {}", rep.check, if rep.passed() { "ok" } else { "FAIL" }))
                .collect();
            row(
                &format!("p={} n={} q={}", shape.p, shape.n, shape.q),
                format!(
                    "profile {:?}; {}",
                    sm.profile,
                    if checks.is_empty() {
                        "no checks apply".into()
                    } else {
                        checks.join(", ")
                    }
                ),
            );
        }
    }
    for n in &r.notes {
        row("note", n.clone());
    }
    s.trim_end().to_string()
}

fn verification_table(r: &VerificationReport) -> String {
    let c = &r.counts;
    let mut s = format!(
        "Z_{}: {} classes{}{}\n",
        r.modulus,
        c.classes,
        if r.parameters.affine { " (affine)" } else { "" },
        match r.parameters.max_size {
            Some(k) if r.parameters.size_capped => format!(", sizes <= {k} only"),
            _ => String::new(),
        }
    );
    s.push_str(&format!(
        "{:>5} {:>10} {:>10} {:>10}\n",
        "size", "classes", "tiles", "spectral"
    ));
    for (k, row) in &c.by_size {
        s.push_str(&format!(
            "{k:>5} {:>10} {:>10} {:>10}\n",
            row[0], row[1], row[2]
        ));
    }
    s.push_str(&format!(
        "tiles {}, spectral {}, both {}, neither {}\n",
        c.tiles, c.spectral, c.both, c.neither
    ));
    s.push_str(&format!("counterexamples: {}\n", r.counterexamples.len()));
    for ce in r.counterexamples.iter().take(20) {
        s.push_str(&format!(
            "  {:?} tile={} spectral={}\n",
            ce.set, ce.tile, ce.spectral
        ));
    }
    s.push_str(&format!(
        "bound checks: {} size, {} divisibility, {} violations\n",
        r.bound_checks.spectral_size_bound,
        r.bound_checks.divisibility,
        r.bound_violations.len()
    ));
    s.push_str(&format!(
        "implications: {} T1+T2 sets, {} tiles checked, {} violations\n",
        r.implication_checks.t1t2_to_tile,
        r.implication_checks.tile_to_t1t2,
        r.implication_violations.len()
    ));
    if let Some(t) = &r.structure {
        s.push_str(&format!(
            "structure: {} spectral sets, {} clause failures\n",
            t.sets_checked,
            t.failures()
        ));
        for (k, v) in &t.clauses {
            s.push_str(&format!(
                "  {k:<36} pass {:>7} skip {:>7} fail {:>3}\n",
                v.pass, v.skipped, v.fail
            ));
        }
    }
    s.push_str(&format!(
        "{} ms, {} jobs",
        r.timing.elapsed_ms, r.timing.jobs
    ));
    s
}
