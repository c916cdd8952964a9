//! Acceptance run: one PASS/FAIL line per criterion.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use monores::cli::{analyze, enumerate_specs, generic_minimal, hilbert_identity, AnalysisReport, ReportItem, VerifyLevel};
use monores::groebner::{curve_kernel, is_groebner, toric_kernel};
use monores::patil::{
    apply_displayed_transforms, base_complex, compare_first_syzygies, extract_parameters, patil_generators,
    CaseId, Shape, BETTI_TRIPLES,
};
use monores::resolution::minimalize;
use monores::semigroup::{validate_sequence, SequenceSpec, SubSemigroup};

struct Row {
    report: AnalysisReport,
    /// Whether the template generators are a Gröbner basis under the
    /// grevlex order ranking `X0 > X1 > X2 > Y`.
    gb_x0_first: Option<bool>,
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn spec(a: [u64; 4]) -> SequenceSpec {
    validate_sequence(a[0], a[1], a[2], a[3]).expect("valid fixture")
}

fn archive_dir() -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("acceptance");
    std::fs::create_dir_all(&dir).expect("archive directory");
    dir
}

fn sweep_rows(specs: &[SequenceSpec]) -> Vec<Row> {
    specs
        .par_iter()
        .map(|s| {
            let report = analyze(s.as_array(), VerifyLevel::Full, None);
            let gb_x0_first = report
                .params
                .map(|p| patil_generators(&p, s).is_ok_and(|g| is_groebner(&g)));
            Row { report, gb_x0_first }
        })
        .collect()
}

fn census(rows: &[Row], elapsed: Duration) -> Outcome {
    let mut triples: BTreeMap<String, usize> = BTreeMap::new();
    let mut outside = Vec::new();
    for r in rows {
        match r.report.betti_computed {
            Some(t) if BETTI_TRIPLES.contains(&t) => *triples.entry(t.to_string()).or_default() += 1,
            other => outside.push((r.report.seq, other)),
        }
    }
    outcome(
        outside.is_empty() && !rows.is_empty(),
        format!(
            "{} tuples, {} distinct triples, {} outside the set, {:.1} s",
            rows.len(),
            triples.len(),
            outside.len(),
            elapsed.as_secs_f64()
        ),
    )
}

fn lookup(rows: &[Row]) -> Outcome {
    let matched: Vec<&Row> = rows.iter().filter(|r| r.report.params.is_some()).collect();
    let disagree = matched
        .iter()
        .filter(|r| r.report.betti_lookup != r.report.betti_computed)
        .count();
    let mismatches: Vec<&AnalysisReport> = rows
        .iter()
        .filter(|r| r.report.params.is_none())
        .map(|r| &r.report)
        .collect();
    let coprime = mismatches
        .iter()
        .filter(|r| num_integer::gcd(r.seq[0], r.seq[1] - r.seq[0]) == 1)
        .count();
    let path = archive_dir().join("template_mismatches.jsonl");
    let mut f = std::fs::File::create(&path).expect("archive file");
    for r in &mismatches {
        serde_json::to_writer(&mut f, r).expect("write");
        f.write_all(b"\n").expect("write");
    }
    outcome(
        disagree == 0,
        format!(
            "{} matched, {} disagree; {} template mismatches ({:.1}%, {} with gcd(m0, d) = 1) archived to {}",
            matched.len(),
            disagree,
            mismatches.len(),
            100.0 * mismatches.len() as f64 / rows.len() as f64,
            coprime,
            path.display()
        ),
    )
}

fn groebner_claim(rows: &[Row]) -> Outcome {
    let matched: Vec<&Row> = rows.iter().filter(|r| r.report.params.is_some()).collect();
    let fails = matched.iter().filter(|r| r.report.flags.gb_ok != Some(true)).count();
    let x0_first = matched.iter().filter(|r| r.gb_x0_first != Some(true)).count();
    outcome(
        fails == 0 && !matched.is_empty(),
        format!(
            "{} of {} matched generator sets fail under grevlex with Y > X2 > X1 > X0 \
             (with X0 > X1 > X2 > Y: {} fail)",
            fails,
            matched.len(),
            x0_first
        ),
    )
}

fn schreyer_fixture() -> Outcome {
    let fixtures = [
        ("W≠∅, r=1, r′=2", [11, 12, 13, 18]),
        ("W≠∅, r=r′=1", [10, 11, 12, 17]),
        ("W≠∅, r=2, r′=1", [7, 8, 9, 11]),
        ("W≠∅, r=r′=2", [12, 13, 14, 20]),
        ("W=∅, r=2", [8, 9, 10, 12]),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, seq) in fixtures {
        let s = spec(seq);
        let ok = extract_parameters(&toric_kernel(&s))
            .ok()
            .and_then(|p| compare_first_syzygies(&p, &s).ok().flatten())
            .map(|c| (c.matches(), c.listed));
        match ok {
            Some((true, n)) => parts.push(format!("{name} {seq:?}: {n}/{n}")),
            Some((false, n)) => {
                pass = false;
                parts.push(format!("{name} {seq:?}: differs from {n} listed"));
            }
            None => {
                pass = false;
                parts.push(format!("{name} {seq:?}: no comparison"));
            }
        }
    }
    outcome(pass, parts.join("; "))
}

fn minimalization_fixture() -> Outcome {
    let cases = [
        ("W≠∅, r=1, r′=2, μ=0", [7, 9, 11, 10], Shape::R1Rp2, vec![5, 7, 3], vec![4, 6, 3]),
        ("W≠∅, r=r′=2, μ=0", [10, 11, 12, 8], Shape::R2Rp2, vec![4, 5, 2], vec![3, 3, 1]),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, seq, shape, before, after) in cases {
        let s = spec(seq);
        let p = extract_parameters(&toric_kernel(&s)).expect("matched fixture");
        let base = base_complex(&p, &s).expect("base complex");
        let transformed = apply_displayed_transforms(&p, &s).expect("transforms").expect("displayed");
        let min = minimalize(&transformed);
        let ok = Shape::of(&p) == shape
            && p.mu == 0
            && p.q - p.qp != 1
            && base.ranks() == before
            && min.ranks() == after
            && min.is_minimal()
            && min.compositions_vanish();
        pass &= ok;
        parts.push(format!("{name} {seq:?}: {:?} -> {:?}", base.ranks(), min.ranks()));
    }
    outcome(pass, parts.join("; "))
}

fn hilbert_sample(specs: &[SequenceSpec]) -> Outcome {
    let k = 25;
    let mut worst = Duration::ZERO;
    let mut fails = Vec::new();
    for i in 0..k {
        let s = specs[i * specs.len() / k];
        let start = Instant::now();
        let ok = hilbert_identity(&generic_minimal(&s), &s, 500);
        let t = start.elapsed();
        worst = worst.max(t);
        if !ok || t > Duration::from_secs(1) {
            fails.push(s);
        }
    }
    outcome(
        fails.is_empty(),
        format!("{k} tuples to degree 500, {} failures, slowest {:.0} ms", fails.len(), worst.as_secs_f64() * 1e3),
    )
}

fn closed_forms(rows: &[Row]) -> Outcome {
    let matched: Vec<&Row> = rows.iter().filter(|r| r.report.params.is_some()).collect();
    let fails = matched
        .iter()
        .filter(|r| r.report.flags.closed_form_agrees != Some(true))
        .count();
    outcome(
        fails == 0 && !matched.is_empty(),
        format!("{} matched tuples, {} closed forms fail", matched.len(), fails),
    )
}

fn shift_tables(rows: &[Row]) -> Outcome {
    let mut first: BTreeMap<u8, &AnalysisReport> = BTreeMap::new();
    for r in rows {
        if let Some(c) = r.report.case {
            first.entry(c.number()).or_insert(&r.report);
        }
    }
    let unreached: Vec<&str> = CaseId::all()
        .filter(|c| !first.contains_key(&c.number()))
        .map(|c| c.label())
        .collect();
    let mut agree = 0;
    let mut certified = 0;
    let mut uncertified = 0;
    let mut suspect = BTreeSet::new();
    for (_, r) in &first {
        let items: Vec<&ReportItem> = r.discrepancies.iter().filter(|d| d.is_shift_table()).collect();
        if items.is_empty() {
            agree += 1;
        }
        for d in items {
            if let ReportItem::ShiftTable { case, module, certified: c, .. } = d {
                suspect.insert(format!("({}) F{}", case.label(), module));
                if *c {
                    certified += 1;
                } else {
                    uncertified += 1;
                }
            }
        }
    }
    let path = archive_dir().join("shift_discrepancies.jsonl");
    let mut f = std::fs::File::create(&path).expect("archive file");
    for r in first.values() {
        serde_json::to_writer(&mut f, r).expect("write");
        f.write_all(b"\n").expect("write");
    }
    outcome(
        uncertified == 0 && !first.is_empty(),
        format!(
            "{} cases reached ({} agree), unreached {:?}; {} certified and {} uncertified discrepancies in {}; records in {}",
            first.len(),
            agree,
            unreached,
            certified,
            uncertified,
            suspect.into_iter().collect::<Vec<_>>().join(", "),
            path.display()
        ),
    )
}

fn unit_oracle() -> Outcome {
    let norm = |v: Vec<String>| {
        let mut v = v;
        v.sort();
        v
    };
    let kernel = norm(curve_kernel(&[3, 4, 5]).iter().map(|p| p.positive_lead().to_string()).collect());
    let expected = norm(
        ["X1^2 - X0*X2", "X0^3 - X1*X2", "X0^2*X1 - X2^2"]
            .iter()
            .map(|s| s.to_string())
            .collect(),
    );
    let f345 = SubSemigroup::new(&[3, 4, 5]).frobenius();
    let f57911 = SubSemigroup::new(&[5, 7, 9, 11]).frobenius();
    outcome(
        kernel == expected && f345 == Ok(2) && f57911 == Ok(13),
        format!("kernel {kernel:?}, frobenius <3,4,5> = {f345:?}, <5,7,9,11> = {f57911:?}"),
    )
}

fn euler(rows: &[Row]) -> Outcome {
    let bad: Vec<[u64; 4]> = rows
        .iter()
        .filter(|r| {
            r.report.flags.minimal_ok != Some(true) || !r.report.betti_computed.is_some_and(|t| t.euler_ok())
        })
        .map(|r| r.report.seq)
        .collect();
    outcome(
        bad.is_empty(),
        format!("{} resolutions, {} violate the rank identity or length bound", rows.len(), bad.len()),
    )
}

fn main() {
    let specs = enumerate_specs(60, 60);
    let start = Instant::now();
    let rows = sweep_rows(&specs);
    let elapsed = start.elapsed();

    let results = [
        ("1 Betti census", census(&rows, elapsed)),
        ("2 lookup agreement", lookup(&rows)),
        ("3 Gröbner claim", groebner_claim(&rows)),
        ("4 Schreyer fixture", schreyer_fixture()),
        ("5 minimalization fixture", minimalization_fixture()),
        ("6 Hilbert identity", hilbert_sample(&specs)),
        ("7 closed-form matrices", closed_forms(&rows)),
        ("8 shift tables", shift_tables(&rows)),
        ("9 unit oracle", unit_oracle()),
        ("10 Euler property", euler(&rows)),
    ];
    let mut failed = 0;
    for (name, o) in &results {
        println!("criterion {name}: {} ({})", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        if !o.pass {
            failed += 1;
        }
    }
    println!("{} of {} criteria pass", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
