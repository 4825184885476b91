//! Batch slice-obstruction sieve over a census of Gauss codes.
//!
//! `Δ⁰ ≠ 0` rules sliceness out; `Δ⁰ = 0` decides nothing. Externally
//! computed flags (graded genus, Rasmussen invariant) can be merged in to form
//! the combined sieve.

use std::collections::{BTreeMap, HashSet};
use std::io;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::gauss::{GaussCode, GaussDiagram};
use crate::laurent::UnitClass;
use crate::sawollek::{delta0, writhe_from_delta, SawollekError};

#[derive(Debug, Error)]
pub enum SieveError {
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: duplicate name {name:?}")]
    DuplicateName { line: usize, name: String },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ExternalFlags {
    pub graded_genus_zero: Option<bool>,
    pub rasmussen: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusRecord {
    pub name: String,
    pub code: GaussCode,
    pub external_flags: Option<ExternalFlags>,
}

/// Records read from a census plus the errors skipped along the way.
#[derive(Debug, Default)]
pub struct Census {
    pub records: Vec<CensusRecord>,
    pub skipped: Vec<SieveError>,
}

/// Parses census text: one `name gausscode` per line; `#` starts a comment.
/// A name with nothing after it is the crossingless unknot. With `skip_bad`
/// bad lines are collected in `skipped` instead of aborting.
pub fn parse_census(text: &str, skip_bad: bool) -> Result<Census, SieveError> {
    let mut census = Census::default();
    let mut names = HashSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (name, code_text) = content
            .split_once(char::is_whitespace)
            .unwrap_or((content, ""));
        let parsed = code_text
            .trim()
            .parse::<GaussCode>()
            .map_err(|e| SieveError::Parse {
                line,
                msg: e.to_string(),
            })
            .and_then(|code| {
                if names.contains(name) {
                    Err(SieveError::DuplicateName {
                        line,
                        name: name.to_string(),
                    })
                } else {
                    Ok(code)
                }
            });
        match parsed {
            Ok(code) => {
                names.insert(name.to_string());
                census.records.push(CensusRecord {
                    name: name.to_string(),
                    code,
                    external_flags: None,
                });
            }
            Err(e) if skip_bad => {
                log::warn!("skipping census {e}");
                census.skipped.push(e);
            }
            Err(e) => return Err(e),
        }
    }
    Ok(census)
}

pub fn load_census(path: &Path, skip_bad: bool) -> Result<Census, SieveError> {
    parse_census(&read(path)?, skip_bad)
}

fn read(path: &Path) -> Result<String, SieveError> {
    std::fs::read_to_string(path).map_err(|source| SieveError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Flags keyed by census name.
pub type FlagTable = BTreeMap<String, ExternalFlags>;

/// Parses `name key=value ...` lines. Known keys: `graded_genus_zero`
/// (`true`/`false`) and `rasmussen` (integer).
pub fn parse_flags(text: &str) -> Result<FlagTable, SieveError> {
    let mut table = FlagTable::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        let mut words = content.split_whitespace();
        let Some(name) = words.next() else { continue };
        let flags = table.entry(name.to_string()).or_default();
        for pair in words {
            let bad = |msg: String| SieveError::Parse { line, msg };
            let (key, value) = pair
                .split_once('=')
                .ok_or_else(|| bad(format!("expected key=value, found {pair:?}")))?;
            match key {
                "graded_genus_zero" => {
                    let v = value.parse().map_err(|_| bad(format!("bad boolean {value:?}")))?;
                    flags.graded_genus_zero = Some(v);
                }
                "rasmussen" => {
                    let v = value.parse().map_err(|_| bad(format!("bad integer {value:?}")))?;
                    flags.rasmussen = Some(v);
                }
                _ => return Err(bad(format!("unknown key {key:?}"))),
            }
        }
    }
    Ok(table)
}

pub fn load_flags(path: &Path) -> Result<FlagTable, SieveError> {
    parse_flags(&read(path)?)
}

/// One report row. Fields are `None` on rows whose computation failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SieveRow {
    pub name: String,
    pub crossings: usize,
    pub delta0_canonical: Option<String>,
    pub delta0_zero: Option<bool>,
    pub writhe_poly: Option<String>,
    pub obstructed: Option<bool>,
    pub graded_genus_zero: Option<bool>,
    pub rasmussen: Option<i64>,
    /// Combined sieve: survives when `ϑ = 0` and `Δ⁰ = 0`.
    pub survives: Option<bool>,
    pub error: Option<String>,
    /// The failure was a broken internal invariant, not bad input.
    #[serde(skip)]
    pub invariant_violation: bool,
}

impl SieveRow {
    fn apply_flags(&mut self, flags: &ExternalFlags) {
        self.graded_genus_zero = flags.graded_genus_zero;
        self.rasmussen = flags.rasmussen;
        self.survives = match (flags.graded_genus_zero, self.delta0_zero) {
            (Some(g), Some(z)) => Some(g && z),
            _ => None,
        };
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SieveSummary {
    pub total: usize,
    pub delta0_zero_count: usize,
    pub obstructed_count: usize,
    pub error_count: usize,
    pub survivor_count: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SieveReport {
    pub rows: Vec<SieveRow>,
    pub summary: SieveSummary,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SieveOptions {
    pub unit_class: UnitClass,
    pub serial: bool,
}

impl Default for SieveOptions {
    fn default() -> Self {
        Self {
            unit_class: UnitClass::UpToMonomialSign,
            serial: false,
        }
    }
}

fn evaluate(rec: &CensusRecord, unit_class: UnitClass) -> SieveRow {
    let d = GaussDiagram::from_code(&rec.code);
    let mut row = SieveRow {
        name: rec.name.clone(),
        crossings: d.crossing_count(),
        delta0_canonical: None,
        delta0_zero: None,
        writhe_poly: None,
        obstructed: None,
        graded_genus_zero: None,
        rasmussen: None,
        survives: None,
        error: None,
        invariant_violation: false,
    };
    let computed = delta0(&d).and_then(|g| Ok((writhe_from_delta(&g, &d)?, g)));
    match computed {
        Ok((w, g)) => {
            row.delta0_canonical = Some(g.raw.canonicalize(unit_class).to_string());
            row.delta0_zero = Some(g.is_zero);
            row.writhe_poly = Some(w.to_string());
            row.obstructed = Some(!g.is_zero);
        }
        Err(e) => {
            row.invariant_violation = matches!(e, SawollekError::NotDivisible);
            row.error = Some(e.to_string());
        }
    }
    if let Some(flags) = &rec.external_flags {
        row.apply_flags(flags);
    }
    row
}

fn summarize(rows: &[SieveRow]) -> SieveSummary {
    let count = |f: fn(&SieveRow) -> bool| rows.iter().filter(|r| f(r)).count();
    let flagged = rows.iter().any(|r| r.survives.is_some());
    SieveSummary {
        total: rows.len(),
        delta0_zero_count: count(|r| r.delta0_zero == Some(true)),
        obstructed_count: count(|r| r.obstructed == Some(true)),
        error_count: count(|r| r.error.is_some()),
        survivor_count: flagged.then(|| count(|r| r.survives == Some(true))),
    }
}

/// Evaluates every record; rows come back in input order whether or not the
/// work runs in parallel.
pub fn run_sieve(records: &[CensusRecord], opts: &SieveOptions) -> SieveReport {
    let rows: Vec<SieveRow> = if opts.serial {
        records.iter().map(|r| evaluate(r, opts.unit_class)).collect()
    } else {
        records
            .par_iter()
            .map(|r| evaluate(r, opts.unit_class))
            .collect()
    };
    let summary = summarize(&rows);
    SieveReport { rows, summary }
}

/// Attaches flags to matching rows. Names absent from the report are returned
/// as warnings and otherwise ignored.
pub fn merge_external_flags(report: &SieveReport, flags: &FlagTable) -> (SieveReport, Vec<String>) {
    let mut rows = report.rows.clone();
    let mut warnings = Vec::new();
    for (name, f) in flags {
        match rows.iter_mut().find(|r| &r.name == name) {
            Some(row) => row.apply_flags(f),
            None => {
                let msg = format!("unknown name {name:?} in flags");
                log::warn!("{msg}");
                warnings.push(msg);
            }
        }
    }
    let summary = summarize(&rows);
    (SieveReport { rows, summary }, warnings)
}

impl SieveReport {
    /// CSV with header `name,crossings,delta0,delta0_zero,writhe,obstructed`;
    /// failed rows leave the computed fields empty.
    pub fn write_csv<W: io::Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["name", "crossings", "delta0", "delta0_zero", "writhe", "obstructed"])?;
        let opt = |b: Option<bool>| b.map(|b| b.to_string()).unwrap_or_default();
        for r in &self.rows {
            w.write_record([
                r.name.clone(),
                r.crossings.to_string(),
                r.delta0_canonical.clone().unwrap_or_default(),
                opt(r.delta0_zero),
                r.writhe_poly.clone().unwrap_or_default(),
                opt(r.obstructed),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn has_invariant_violation(&self) -> bool {
        self.rows.iter().any(|r| r.invariant_violation)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn census_parsing() {
        let text = "# comment\n\n4.12 O1-O2-U1-O3+U2-O4+U3+U4+\nunknot\n0.1   # trailing\n";
        let c = parse_census(text, false).unwrap();
        let names: Vec<_> = c.records.iter().map(|r| r.name.as_str()).collect();
        assert_eq!(names, ["4.12", "unknot", "0.1"]);
        assert_eq!(c.records[0].code.crossing_count(), 4);
        assert_eq!(c.records[1].code.crossing_count(), 0);
        assert!(parse_census("", false).unwrap().records.is_empty());
    }

    #[test]
    fn census_errors() {
        match parse_census("a O1+U1+\nx O1+\n", false) {
            Err(SieveError::Parse { line: 2, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse_census("a O1+U1+\na O1-U1-\n", false) {
            Err(SieveError::DuplicateName { line: 2, .. }) => {}
            other => panic!("{other:?}"),
        }
        let c = parse_census("x O1+\ny O1+U1+\n", true).unwrap();
        assert_eq!(c.records.len(), 1);
        assert_eq!(c.skipped.len(), 1);
    }

    #[test]
    fn flags_parsing() {
        let t = parse_flags("4.12 graded_genus_zero=false rasmussen=2\n\n5.114 graded_genus_zero=true\n").unwrap();
        assert_eq!(t["4.12"].rasmussen, Some(2));
        assert_eq!(t["5.114"].graded_genus_zero, Some(true));
        assert!(parse_flags("a theta=0").is_err());
        assert!(parse_flags("a rasmussen=x").is_err());
    }

    #[test]
    fn unknot_and_empty() {
        let c = parse_census("u\n", false).unwrap();
        let r = run_sieve(&c.records, &SieveOptions::default());
        assert_eq!(r.rows[0].delta0_zero, Some(true));
        assert_eq!(r.rows[0].obstructed, Some(false));
        let e = run_sieve(&[], &SieveOptions::default());
        assert_eq!(e.summary, SieveSummary::default());
    }

    #[test]
    fn links_become_error_rows() {
        let c = parse_census("hopf O1+U2+,U1+O2+\nk O1+U1+\n", false).unwrap();
        let r = run_sieve(&c.records, &SieveOptions::default());
        assert!(r.rows[0].error.is_some());
        assert!(!r.has_invariant_violation());
        assert_eq!(r.summary.error_count, 1);
        assert_eq!(r.rows[1].delta0_zero, Some(true));
    }

    #[test]
    fn merge_warns_on_unknown() {
        let c = parse_census("k O1+U1+\n", false).unwrap();
        let r = run_sieve(&c.records, &SieveOptions::default());
        let (same, w) = merge_external_flags(&r, &FlagTable::new());
        assert_eq!(same, r);
        assert!(w.is_empty());
        let (m, w) = merge_external_flags(&r, &parse_flags("k graded_genus_zero=true\nzz rasmussen=0\n").unwrap());
        assert_eq!(w.len(), 1);
        assert_eq!(m.rows[0].survives, Some(true));
        assert_eq!(m.summary.survivor_count, Some(1));
    }
}
