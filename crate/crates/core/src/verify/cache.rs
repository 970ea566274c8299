//! Append-only JSONL cache of classified work units.
//!
//! The first line is a header naming the run parameters. Each notable class
//! (a tile, a spectral set, or one breaking a bound) is one `record` line,
//! and a `unit_done` line closes a unit with the per-size count of the
//! remaining classes. Units without a closing line are recomputed. Every
//! loaded record is checked again before it is used.

use std::collections::{BTreeMap, BTreeSet};
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::canonical::is_affine_least;
use super::enumerate::is_least_translate;
use super::report::{to_mask, SetRecord, Shared, UnitOutput, UNIT_DEPTH};
use crate::bits;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct Header {
    version: u32,
    n: u64,
    affine: bool,
    max_size: Option<usize>,
    structure: bool,
    unit_depth: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Line {
    Header {
        header: Header,
    },
    Record {
        unit: usize,
        record: SetRecord,
    },
    Done {
        unit_done: usize,
        records: usize,
        /// `[size, count]` pairs; integer map keys do not survive untagged
        /// decoding.
        plain: Vec<[u64; 2]>,
    },
}

pub(crate) struct Cache {
    path: PathBuf,
    units: BTreeMap<usize, UnitOutput>,
    out: BufWriter<File>,
}

impl Cache {
    pub fn open(dir: &Path, shared: &Shared) -> Result<Self> {
        fs::create_dir_all(dir)?;
        let o = &shared.options;
        let header = Header {
            version: 1,
            n: shared.modulus.n(),
            affine: o.affine,
            max_size: o.max_size,
            structure: o.structure,
            unit_depth: UNIT_DEPTH,
        };
        let mut name = format!("z{}", header.n);
        if o.affine {
            name.push_str("-affine");
        }
        if let Some(k) = o.max_size {
            name.push_str(&format!("-max{k}"));
        }
        if !o.structure {
            name.push_str("-nostructure");
        }
        let path = dir.join(format!("{name}.jsonl"));
        let units = if path.exists() {
            load(&path, &header, shared)?
        } else {
            BTreeMap::new()
        };

        // rewrite without partial units, then append
        let tmp = path.with_extension("jsonl.tmp");
        {
            let mut w = BufWriter::new(File::create(&tmp)?);
            write_line(&mut w, &Line::Header { header })?;
            for (&unit, output) in &units {
                write_unit(&mut w, unit, output)?;
            }
            w.flush()?;
        }
        fs::rename(&tmp, &path)?;
        let out = BufWriter::new(OpenOptions::new().append(true).open(&path)?);
        Ok(Cache { path, units, out })
    }

    pub fn has_unit(&self, i: usize) -> bool {
        self.units.contains_key(&i)
    }

    pub fn unit(&self, i: usize) -> Result<UnitOutput> {
        self.units
            .get(&i)
            .cloned()
            .ok_or_else(|| Error::CorruptCache {
                path: self.path.display().to_string(),
                reason: format!("unit {i} missing"),
            })
    }

    pub fn append_unit(&mut self, unit: usize, output: &UnitOutput) -> Result<()> {
        write_unit(&mut self.out, unit, output)?;
        self.out.flush()?;
        Ok(())
    }
}

fn write_unit<W: Write>(w: &mut W, unit: usize, output: &UnitOutput) -> Result<()> {
    for r in &output.records {
        write_line(
            w,
            &Line::Record {
                unit,
                record: r.clone(),
            },
        )?;
    }
    write_line(
        w,
        &Line::Done {
            unit_done: unit,
            records: output.records.len(),
            plain: output.plain.iter().map(|(&k, &v)| [k as u64, v]).collect(),
        },
    )
}

fn write_line<W: Write>(w: &mut W, line: &Line) -> Result<()> {
    serde_json::to_writer(&mut *w, line)?;
    w.write_all(b"\n")?;
    Ok(())
}

fn load(path: &Path, header: &Header, shared: &Shared) -> Result<BTreeMap<usize, UnitOutput>> {
    let corrupt = |reason: String| Error::CorruptCache {
        path: path.display().to_string(),
        reason,
    };
    let lines: Vec<String> = BufReader::new(File::open(path)?)
        .lines()
        .collect::<std::io::Result<_>>()?;
    let mut pending: BTreeMap<usize, Vec<SetRecord>> = BTreeMap::new();
    let mut done = BTreeMap::new();
    let mut seen_header = false;
    for (no, text) in lines.iter().enumerate() {
        if text.trim().is_empty() {
            continue;
        }
        let line: Line = match serde_json::from_str(text) {
            Ok(l) => l,
            // a torn final write
            Err(_) if no + 1 == lines.len() => break,
            Err(e) => return Err(corrupt(format!("line {}: {e}", no + 1))),
        };
        match line {
            Line::Header { header: h } => {
                if no != 0 || &h != header {
                    return Err(corrupt(format!("header {h:?} does not match {header:?}")));
                }
                seen_header = true;
            }
            Line::Record { unit, record } => {
                check_record(&record, shared)
                    .map_err(|r| corrupt(format!("line {}: {r}", no + 1)))?;
                pending.entry(unit).or_default().push(record);
            }
            Line::Done {
                unit_done,
                records,
                plain,
            } => {
                let mut rs = pending.remove(&unit_done).unwrap_or_default();
                let mut sets = BTreeSet::new();
                rs.retain(|r| sets.insert(r.set.clone()));
                if rs.len() != records {
                    return Err(corrupt(format!(
                        "unit {unit_done}: {} records, expected {records}",
                        rs.len()
                    )));
                }
                let plain = plain.into_iter().map(|[k, v]| (k as usize, v)).collect();
                done.insert(unit_done, UnitOutput { records: rs, plain });
            }
        }
    }
    if !seen_header && !done.is_empty() {
        return Err(corrupt("missing header".into()));
    }
    Ok(done)
}

/// Rechecks a stored record against the set it names.
fn check_record(r: &SetRecord, shared: &Shared) -> std::result::Result<(), String> {
    let n = shared.n;
    if r.set.is_empty() || r.set.iter().any(|&x| x as usize >= n) {
        return Err(format!("bad set {:?}", r.set));
    }
    let mask = r.mask();
    let k = r.set.len();
    if mask.count_ones() as usize != k || !is_least_translate(mask, n) {
        return Err(format!("{:?} is not a least translate", r.set));
    }
    if shared.options.affine && !is_affine_least(mask, n, &shared.units) {
        return Err(format!("{:?} is not an affine representative", r.set));
    }
    if shared.options.max_size.is_some_and(|c| k > c) {
        return Err(format!("{:?} exceeds the size cap", r.set));
    }
    let zmask = shared.table.mask_zeros(mask);
    let info = shared.zero_info(zmask);
    if (r.t1, r.t2, r.min_d, r.lower_bound)
        != (
            k as u64 == info.lower_bound,
            info.t2,
            info.min_d,
            info.lower_bound,
        )
    {
        return Err(format!("{:?}: stored flags disagree", r.set));
    }
    if let Some(b) = &r.complement {
        let mut cover = 0u128;
        for &t in b {
            if t as usize >= n {
                return Err(format!("{:?}: bad complement", r.set));
            }
            let shifted = bits::rotate(mask, t as usize, n);
            if cover & shifted != 0 {
                return Err(format!("{:?}: complement overlaps", r.set));
            }
            cover |= shifted;
        }
        if cover != bits::full(n) {
            return Err(format!("{:?}: complement does not cover", r.set));
        }
    }
    if let Some(b) = &r.spectrum {
        let zeros = shared.divisor_classes(zmask);
        let bm = to_mask(b);
        if b.len() != k || bm.count_ones() as usize != k || b.iter().any(|&x| x as usize >= n) {
            return Err(format!("{:?}: bad spectrum size", r.set));
        }
        for (i, &x) in b.iter().enumerate() {
            for &y in &b[i + 1..] {
                if !zeros.contains_residue((y + n as u64 - x) % n as u64) {
                    return Err(format!(
                        "{:?}: spectrum difference {} is not a zero",
                        r.set,
                        y.abs_diff(x)
                    ));
                }
            }
        }
    }
    Ok(())
}
