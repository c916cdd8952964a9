//! Report building and the command implementations behind the binary.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::groebner::{is_groebner, toric_kernel};
use crate::patil::{
    betti_lookup, case_id, closed_form_resolution, extract_parameters, graded_shifts, patil_generators,
    shift_discrepancies, BettiTriple, CaseId, CaseParameters, BETTI_TRIPLES,
};
use crate::poly::MonomialOrder;
use crate::resolution::{betti_table, build_resolution, hilbert_numerator, minimalize, FreeResolution};
use crate::semigroup::{gamma_series_truncation, validate_sequence, SequenceSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_FAILED: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VerifyLevel {
    /// Skip the closed-form matrices.
    Fast,
    #[default]
    Full,
}

/// `None` means the check did not apply to this tuple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Flags {
    pub gb_ok: Option<bool>,
    pub compose_ok: Option<bool>,
    pub minimal_ok: Option<bool>,
    pub hilbert_ok: Option<bool>,
    pub closed_form_agrees: Option<bool>,
}

impl Flags {
    pub fn failed(&self) -> bool {
        [self.gb_ok, self.compose_ok, self.minimal_ok, self.hilbert_ok, self.closed_form_agrees]
            .contains(&Some(false))
    }
}

/// One entry of the discrepancy list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ReportItem {
    /// A shift-table row that disagrees with the computed twists. The
    /// computed side is certified when the Hilbert identity holds.
    ShiftTable {
        case: CaseId,
        module: usize,
        table: Vec<i64>,
        computed: Vec<i64>,
        table_only: Vec<i64>,
        computed_only: Vec<i64>,
        certified: bool,
    },
    /// No template assignment generates the ideal.
    TemplateMismatch { message: String },
    /// Parameters were found but no case row applies to them.
    CaseUnmatched { message: String },
    /// The table cell disagrees with the computed Betti numbers.
    BettiLookup { lookup: BettiTriple, computed: BettiTriple },
    /// The closed-form complex could not be built or disagrees.
    ClosedForm { message: String },
}

impl ReportItem {
    pub fn is_shift_table(&self) -> bool {
        matches!(self, ReportItem::ShiftTable { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub seq: [u64; 4],
    pub valid: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub params: Option<CaseParameters>,
    pub case: Option<CaseId>,
    pub betti_lookup: Option<BettiTriple>,
    pub betti_computed: Option<BettiTriple>,
    pub graded_betti: Vec<(usize, u64, usize)>,
    pub hilbert_numerator: Vec<(u64, i64)>,
    pub flags: Flags,
    pub discrepancies: Vec<ReportItem>,
    pub ms_elapsed: Option<u64>,
}

impl AnalysisReport {
    pub fn exit_code(&self) -> i32 {
        if !self.valid {
            EXIT_INVALID
        } else if self.flags.failed() {
            EXIT_FAILED
        } else {
            EXIT_OK
        }
    }
}

/// Coefficient check of `K(z)/Π(1 − z^w)` against the indicator series of
/// the semigroup up to `z^n`.
pub fn hilbert_identity(res: &FreeResolution, spec: &SequenceSpec, n: usize) -> bool {
    hilbert_numerator(res).series(&spec.as_array(), n) == gamma_series_truncation(spec, n)
}

/// A truncation degree large enough to see every term of the numerator.
pub fn default_truncation(res: &FreeResolution) -> usize {
    let top = res
        .maps
        .iter()
        .flat_map(|m| m.source().twists.iter().copied())
        .max()
        .unwrap_or(0);
    (2 * top as usize).max(200)
}

fn twists(res: &FreeResolution) -> Vec<Vec<u64>> {
    res.maps.iter().map(|m| m.source().twists.clone()).collect()
}

/// The generic pipeline for one tuple: toric ideal, Schreyer resolution,
/// minimalization, Betti numbers and the Hilbert identity.
pub fn generic_minimal(spec: &SequenceSpec) -> FreeResolution {
    minimalize(&build_resolution(&toric_kernel(spec).reduced_gb.polynomials()))
}

pub fn analyze(seq: [u64; 4], level: VerifyLevel, truncate: Option<usize>) -> AnalysisReport {
    let start = Instant::now();
    let mut report = AnalysisReport {
        seq,
        valid: false,
        error: None,
        params: None,
        case: None,
        betti_lookup: None,
        betti_computed: None,
        graded_betti: Vec::new(),
        hilbert_numerator: Vec::new(),
        flags: Flags::default(),
        discrepancies: Vec::new(),
        ms_elapsed: None,
    };
    let spec = match validate_sequence(seq[0], seq[1], seq[2], seq[3]) {
        Ok(s) => s,
        Err(e) => {
            report.error = Some(e.to_string());
            return report;
        }
    };
    report.valid = true;

    let ideal = toric_kernel(&spec);
    let min = minimalize(&build_resolution(&ideal.reduced_gb.polynomials()));
    let computed = twists(&min);
    report.flags.compose_ok = Some(min.compositions_vanish());
    let table = betti_table(&min).ok();
    let triple = min.ranks().len() == 3 && min.ranks()[2] > 0;
    report.flags.minimal_ok = Some(min.is_minimal() && min.length() <= 3 && table.is_some() && triple);
    if let Some(t) = &table {
        report.graded_betti = t.graded();
        report.betti_computed = BettiTriple::from_ranks(&[&[1][..], &t.totals].concat());
    }
    let numerator = hilbert_numerator(&min);
    report.hilbert_numerator = numerator.terms();
    let n = truncate.unwrap_or_else(|| default_truncation(&min));
    let hilbert_ok = hilbert_identity(&min, &spec, n);
    report.flags.hilbert_ok = Some(hilbert_ok);

    match extract_parameters(&ideal) {
        Err(e) => report.discrepancies.push(ReportItem::TemplateMismatch { message: e.to_string() }),
        Ok(p) => {
            report.params = Some(p);
            let lookup = betti_lookup(&p);
            report.betti_lookup = Some(lookup);
            if let Some(c) = report.betti_computed.filter(|&c| c != lookup) {
                report.discrepancies.push(ReportItem::BettiLookup { lookup, computed: c });
            }
            report.flags.gb_ok = Some(match patil_generators(&p, &spec) {
                Ok(g) => {
                    let order = MonomialOrder::grevlex_y_first(spec.grading());
                    is_groebner(&g.iter().map(|x| x.with_order(order)).collect::<Vec<_>>())
                }
                Err(_) => false,
            });
            match case_id(&p) {
                Ok(case) => {
                    report.case = Some(case);
                    if let Ok(shifts) = graded_shifts(case, &p, &spec) {
                        for d in shift_discrepancies(case, &shifts, &computed) {
                            report.discrepancies.push(ReportItem::ShiftTable {
                                case: d.case,
                                module: d.module,
                                table: d.table,
                                computed: d.computed,
                                table_only: d.table_only,
                                computed_only: d.computed_only,
                                certified: hilbert_ok,
                            });
                        }
                    }
                }
                Err(e) => report.discrepancies.push(ReportItem::CaseUnmatched { message: e.to_string() }),
            }
            if level == VerifyLevel::Full {
                let agrees = match closed_form_resolution(&p, &spec) {
                    Ok(cf) => {
                        let ok = cf.ranks() == min.ranks() && hilbert_numerator(&cf) == numerator;
                        if !ok {
                            report.discrepancies.push(ReportItem::ClosedForm {
                                message: format!("closed form ranks {:?}", cf.ranks()),
                            });
                        }
                        ok
                    }
                    Err(e) => {
                        report.discrepancies.push(ReportItem::ClosedForm { message: e.to_string() });
                        false
                    }
                };
                report.flags.closed_form_agrees = Some(agrees);
            }
        }
    }
    report.ms_elapsed = Some(start.elapsed().as_millis() as u64);
    report
}

/// Every valid tuple with `m2 ≤ max_m2` and `n ≤ max_n`, in ascending
/// `(m0, d, n)` order.
pub fn enumerate_specs(max_m2: u64, max_n: u64) -> Vec<SequenceSpec> {
    let mut out = Vec::new();
    for m0 in 1..=max_m2 {
        for d in 1.. {
            if m0 + 2 * d > max_m2 {
                break;
            }
            for n in 1..=max_n {
                if let Ok(s) = validate_sequence(m0, m0 + d, m0 + 2 * d, n) {
                    out.push(s);
                }
            }
        }
    }
    out
}

/// Analyze every tuple within the bounds. Timings are dropped so that the
/// output depends only on the bounds.
pub fn sweep(max_m2: u64, max_n: u64, threads: usize, level: VerifyLevel) -> Vec<AnalysisReport> {
    let specs = enumerate_specs(max_m2, max_n);
    let run = || -> Vec<AnalysisReport> {
        specs
            .par_iter()
            .map(|s| {
                let mut r = analyze(s.as_array(), level, None);
                r.ms_elapsed = None;
                r
            })
            .collect()
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .expect("thread pool");
    pool.install(run)
}

pub fn write_jsonl(path: &Path, reports: &[AnalysisReport]) -> io::Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    for r in reports {
        serde_json::to_writer(&mut w, r)?;
        w.write_all(b"\n")?;
    }
    w.flush()
}

pub fn read_jsonl(path: &Path) -> io::Result<Vec<AnalysisReport>> {
    let f = File::open(path)?;
    let mut out = Vec::new();
    for (k, line) in BufReader::new(f).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let r = serde_json::from_str(&line)
            .map_err(|e| io::Error::new(io::ErrorKind::InvalidData, format!("line {}: {e}", k + 1)))?;
        out.push(r);
    }
    Ok(out)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CensusSummary {
    pub records: usize,
    pub triples: BTreeMap<BettiTriple, usize>,
    pub cases: BTreeMap<String, usize>,
    pub mismatches: usize,
    pub verification_failures: usize,
    /// Shift-table discrepancies keyed by case and module.
    pub shift_digest: BTreeMap<(String, usize), usize>,
    pub uncertified: usize,
    pub outside: Vec<BettiTriple>,
}

impl CensusSummary {
    pub fn exit_code(&self) -> i32 {
        if self.outside.is_empty() {
            EXIT_OK
        } else {
            EXIT_FAILED
        }
    }
}

pub fn census(reports: &[AnalysisReport]) -> CensusSummary {
    let mut s = CensusSummary {
        records: reports.len(),
        ..Default::default()
    };
    for r in reports {
        if let Some(t) = r.betti_computed {
            *s.triples.entry(t).or_default() += 1;
        }
        let case = r.case.map_or_else(|| "unmatched".to_string(), |c| c.label().to_string());
        *s.cases.entry(case).or_default() += 1;
        if r.flags.failed() {
            s.verification_failures += 1;
        }
        for d in &r.discrepancies {
            match d {
                ReportItem::TemplateMismatch { .. } => s.mismatches += 1,
                ReportItem::ShiftTable { case, module, certified, .. } => {
                    *s.shift_digest.entry((case.label().to_string(), *module)).or_default() += 1;
                    if !certified {
                        s.uncertified += 1;
                    }
                }
                _ => {}
            }
        }
    }
    s.outside = s.triples.keys().filter(|t| !BETTI_TRIPLES.contains(t)).copied().collect();
    s
}

pub fn render_census(s: &CensusSummary) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "records: {}", s.records);
    let _ = writeln!(out, "distinct Betti triples: {}", s.triples.len());
    for (t, c) in &s.triples {
        let mark = if BETTI_TRIPLES.contains(t) { "" } else { "  OUTSIDE" };
        let _ = writeln!(out, "  {t}  {c}{mark}");
    }
    let _ = writeln!(out, "cases:");
    for (k, c) in &s.cases {
        let _ = writeln!(out, "  {k:>9}  {c}");
    }
    let _ = writeln!(out, "template mismatches: {}", s.mismatches);
    let _ = writeln!(out, "verification failures: {}", s.verification_failures);
    let _ = writeln!(out, "shift-table discrepancies (case, module):");
    for ((case, m), c) in &s.shift_digest {
        let _ = writeln!(out, "  ({case}) F{m}  {c}");
    }
    let _ = writeln!(out, "uncertified discrepancies: {}", s.uncertified);
    if s.outside.is_empty() {
        let _ = writeln!(out, "all triples lie in the eight-element set");
    } else {
        let _ = writeln!(out, "triples outside the eight-element set: {:?}", s.outside);
    }
    out
}

/// Print every map of a resolution.
pub fn render_resolution(res: &FreeResolution) -> String {
    let mut out = String::new();
    for (k, m) in res.maps.iter().enumerate() {
        let name = ["A", "B", "C", "D"].get(k).copied().unwrap_or("?");
        let _ = writeln!(out, "{name}: {} x {}  source twists {:?}", m.rows(), m.cols(), m.source().twists);
        let _ = write!(out, "{m}");
    }
    out
}

/// Rank and twist agreement of two resolutions of the same ideal.
pub fn structural_diff(generic: &FreeResolution, closed: &FreeResolution) -> (bool, bool, String) {
    let ranks = generic.ranks() == closed.ranks();
    let sorted = |r: &FreeResolution| {
        twists(r)
            .into_iter()
            .map(|mut t| {
                t.sort_unstable();
                t
            })
            .collect::<Vec<_>>()
    };
    let degrees = sorted(generic) == sorted(closed);
    let mut out = String::new();
    let _ = writeln!(out, "ranks: generic {:?}, closed form {:?}: {}", generic.ranks(), closed.ranks(), agree(ranks));
    for (k, (a, b)) in sorted(generic).iter().zip(sorted(closed).iter()).enumerate() {
        let _ = writeln!(out, "F{k} twists: generic {a:?}, closed form {b:?}: {}", agree(a == b));
    }
    (ranks, degrees, out)
}

fn agree(b: bool) -> &'static str {
    if b {
        "agree"
    } else {
        "DIFFER"
    }
}

pub fn parse_seq(s: &str) -> Result<[u64; 4], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(format!("expected four comma-separated integers, got {s:?}"));
    }
    let mut out = [0u64; 4];
    for (o, p) in out.iter_mut().zip(parts) {
        *o = p.parse().map_err(|_| format!("not a non-negative integer: {p:?}"))?;
    }
    Ok(out)
}

pub fn render_report(r: &AnalysisReport) -> String {
    let mut out = String::new();
    let s = r.seq;
    let _ = writeln!(out, "sequence ({}, {}, {}, {})", s[0], s[1], s[2], s[3]);
    if !r.valid {
        let _ = writeln!(out, "invalid: {}", r.error.as_deref().unwrap_or("?"));
        return out;
    }
    match &r.params {
        Some(p) => {
            let _ = writeln!(out, "parameters: {p}");
        }
        None => {
            let _ = writeln!(out, "parameters: none (outside the template classification)");
        }
    }
    if let Some(c) = r.case {
        let _ = writeln!(out, "case: ({})", c.label());
    }
    let show = |t: Option<BettiTriple>| t.map_or("-".to_string(), |t| t.to_string());
    let _ = writeln!(out, "Betti numbers: computed {}, table {}", show(r.betti_computed), show(r.betti_lookup));
    let _ = writeln!(out, "graded Betti numbers (i, degree, count):");
    for (i, d, c) in &r.graded_betti {
        let _ = writeln!(out, "  {i}  {d:>5}  {c}");
    }
    let k: Vec<String> = r.hilbert_numerator.iter().map(|(d, c)| format!("{c:+}z^{d}")).collect();
    let _ = writeln!(out, "K(z) = {}", k.join(" "));
    let f = r.flags;
    let flag = |x: Option<bool>| x.map_or("n/a", |b| if b { "ok" } else { "FAIL" });
    let _ = writeln!(
        out,
        "gb {}  compose {}  minimal {}  hilbert {}  closed form {}",
        flag(f.gb_ok),
        flag(f.compose_ok),
        flag(f.minimal_ok),
        flag(f.hilbert_ok),
        flag(f.closed_form_agrees)
    );
    for d in &r.discrepancies {
        let _ = writeln!(out, "discrepancy: {}", serde_json::to_string(d).unwrap_or_default());
    }
    if let Some(ms) = r.ms_elapsed {
        let _ = writeln!(out, "{ms} ms");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_seq_forms() {
        assert_eq!(parse_seq("5,7,9,11"), Ok([5, 7, 9, 11]));
        assert_eq!(parse_seq(" 5, 7 ,9,11 "), Ok([5, 7, 9, 11]));
        assert!(parse_seq("5,7,9").is_err());
        assert!(parse_seq("5,7,x,11").is_err());
    }

    #[test]
    fn invalid_sequence_report() {
        let r = analyze([4, 6, 8, 5], VerifyLevel::Full, None);
        assert!(!r.valid);
        assert_eq!(r.exit_code(), EXIT_INVALID);
        assert!(r.error.unwrap().contains("NotMinimal(m2)"));
    }

    #[test]
    fn running_example_report() {
        let r = analyze([5, 7, 9, 11], VerifyLevel::Full, None);
        assert_eq!(r.exit_code(), EXIT_OK);
        assert_eq!(r.betti_computed, Some(BettiTriple([5, 5, 1])));
        assert_eq!(r.betti_lookup, r.betti_computed);
        assert_eq!(r.case.map(|c| c.label()), Some("iv"));
        assert!(r.discrepancies.iter().all(ReportItem::is_shift_table));
        let json = serde_json::to_string(&r).unwrap();
        let back: AnalysisReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn fast_level_skips_closed_form() {
        let r = analyze([5, 7, 9, 11], VerifyLevel::Fast, None);
        assert_eq!(r.flags.closed_form_agrees, None);
        assert_eq!(r.exit_code(), EXIT_OK);
    }

    #[test]
    fn enumeration_order() {
        let specs = enumerate_specs(12, 12);
        assert!(specs.contains(&validate_sequence(5, 7, 9, 11).unwrap()));
        let keys: Vec<_> = specs.iter().map(|s| (s.m0, s.d(), s.n)).collect();
        let mut sorted = keys.clone();
        sorted.sort_unstable();
        assert_eq!(keys, sorted);
        assert!(enumerate_specs(2, 2).is_empty());
    }

    #[test]
    fn census_flags_foreign_triples() {
        let mut r = analyze([5, 7, 9, 11], VerifyLevel::Fast, None);
        assert_eq!(census(std::slice::from_ref(&r)).exit_code(), EXIT_OK);
        r.betti_computed = Some(BettiTriple([9, 9, 9]));
        let s = census(&[r]);
        assert_eq!(s.exit_code(), EXIT_FAILED);
        assert_eq!(s.outside, vec![BettiTriple([9, 9, 9])]);
        assert_eq!(census(&[]).exit_code(), EXIT_OK);
    }
}
