mod common;

use std::process::Command;
use std::time::{Duration, Instant};

use stanley::harness::{
    evaluate, run_sweep, worked_examples, Record, Section, Source, VerifyConfig,
};
use stanley::sdepth::char_poset;
use stanley::sv::{check_sv_witness, sv_number};
use stanley::{depth_quotient, sdepth, Field, ModuleKind, SqfIdeal, SvWitness, VarSet};

struct Outcome {
    results: Vec<(u32, bool, String)>,
}

impl Outcome {
    fn record(&mut self, criterion: u32, pass: bool, what: String) {
        println!(
            "{} criterion {criterion}: {what}",
            if pass { "PASS" } else { "FAIL" }
        );
        self.results.push((criterion, pass, what));
    }
}

fn check_named<'a>(records: impl IntoIterator<Item = &'a Record>, prefix: &str) -> (usize, usize) {
    let mut total = 0;
    let mut failed = 0;
    for r in records {
        for c in r.checks.iter().filter(|c| c.name.starts_with(prefix)) {
            total += 1;
            failed += (!c.pass) as usize;
        }
    }
    (total, failed)
}

fn example(
    out: &mut Outcome,
    criterion: u32,
    id: &str,
    sv: usize,
    limit: Duration,
    extra: Option<(bool, &str)>,
) {
    let start = Instant::now();
    let inst = worked_examples().into_iter().find(|i| i.id == id).unwrap();
    let r = sv_number(&inst.ideal).unwrap().restricted;
    let rec = evaluate(Section::Examples, &inst, &VerifyConfig::default());
    let elapsed = start.elapsed();
    let sq = rec.sdepth_quotient.unwrap_or(0);
    let si = rec.sdepth_ideal.unwrap_or(0);
    let reference_ok = rec
        .checks
        .iter()
        .any(|c| c.name == "reference_witness_valid" && c.pass);
    let (extra_ok, extra_note) = extra.unwrap_or((true, ""));
    let pass = r == sv
        && sq >= 2
        && si >= 3
        && reference_ok
        && extra_ok
        && rec.passed()
        && elapsed < limit;
    out.record(
        criterion,
        pass,
        format!(
            "{id}: sv = {r} (expected {sv}), reference witness valid = {reference_ok}{extra_note}, sdepth(S/I) = {sq} >= 2, sdepth(I) = {si} >= 3, {} checks, {:.3}s",
            rec.checks.len(),
            elapsed.as_secs_f64()
        ),
    );
}

#[test]
fn acceptance() {
    let mut out = Outcome {
        results: Vec::new(),
    };

    example(&mut out, 1, "example-1", 2, Duration::from_secs(1), None);

    // the reference witness for all 3-subsets of five variables, checked directly
    let veronese = SqfIdeal::squarefree_veronese(5, 3).unwrap();
    let reference = SvWitness::from_indices(
        5,
        &[
            vec![vec![1, 2, 3]],
            vec![vec![1, 2, 4], vec![1, 3, 4], vec![2, 3, 4]],
            vec![
                vec![1, 2, 5],
                vec![1, 3, 5],
                vec![1, 4, 5],
                vec![2, 3, 5],
                vec![2, 4, 5],
                vec![3, 4, 5],
            ],
        ],
    )
    .unwrap();
    let direct = check_sv_witness(&veronese, &reference).unwrap().is_none();
    let note = format!(" (checked directly: {direct})");
    example(
        &mut out,
        2,
        "example-2",
        3,
        Duration::from_secs(10),
        Some((direct, &note)),
    );

    let cfg = VerifyConfig::default();
    let start = Instant::now();
    let (report, instances) = run_sweep(&cfg).unwrap();
    let sweep_time = start.elapsed().as_secs_f64();

    let generated: Vec<&Record> = report
        .main
        .iter()
        .filter(|r| r.source == Source::Generated && r.n <= 6 && !r.skipped)
        .collect();
    let cells: Vec<(usize, usize)> = (1..=6).flat_map(|n| (1..=n).map(move |d| (n, d))).collect();
    let all_cells = cells
        .iter()
        .all(|&(n, d)| generated.iter().any(|r| r.n == n && r.d == Some(d)));
    let (stanley_total, stanley_failed) = check_named(&report.main, "stanley_quotient");
    let (chordal_total, chordal_failed) = check_named(&report.main, "clutter_chordal");
    out.record(
        3,
        generated.len() >= 200 && all_cells && stanley_total >= 200 && stanley_failed == 0 && chordal_failed == 0,
        format!(
            "{} generated chordal clutters (n <= 6, every d present: {all_cells}), {} quadratic, sdepth(S/I) >= depth(S/I) failed {stanley_failed}/{stanley_total}, chordality failed {chordal_failed}/{chordal_total}, sweep {sweep_time:.2}s",
            generated.len(),
            report.main.iter().filter(|r| r.source == Source::Quadratic).count()
        ),
    );

    let nonzero = report
        .main
        .iter()
        .filter(|r| !r.ideal.generators.is_empty())
        .count();
    let (lq_total, lq_failed) = check_named(&report.main, "lq_order_valid");
    let (eq_total, eq_failed) = check_named(&report.main, "lq_depth_equals_oracle");
    out.record(
        4,
        lq_total == nonzero && eq_total == nonzero && lq_failed + eq_failed == 0,
        format!(
            "{nonzero} nonzero instances: chordal order valid failed {lq_failed}/{lq_total}, lq depth == oracle depth failed {eq_failed}/{eq_total}"
        ),
    );

    let mut expected_del = 0;
    for (section, inst) in &instances {
        if *section != Section::Main {
            continue;
        }
        let support = inst.ideal.support();
        if let Some(c) = &inst.clutter {
            expected_del += c
                .simplicial_vertices()
                .iter()
                .filter(|&&v| support.contains(v))
                .count();
        }
    }
    let (del_total, del_failed) = check_named(&report.main, "elimination_depth");
    out.record(
        5,
        del_total == expected_del && del_total > 0 && del_failed == 0,
        format!("depth(S'/I') >= depth(S/I) at simplicial vertices in the support: failed {del_failed}/{del_total} (expected {expected_del} cases)"),
    );

    let smain_ok = report.smain.len() >= 200
        && report
            .smain
            .iter()
            .all(|r| r.n <= 6 && r.ideal.generators.len() <= 8 && !r.skipped);
    let (bi_total, bi_failed) = check_named(&report.smain, "sv_bound_ideal");
    let (bq_total, bq_failed) = check_named(&report.smain, "sv_bound_quotient");
    out.record(
        6,
        smain_ok && bi_total >= 200 && bq_total >= 200 && bi_failed + bq_failed == 0,
        format!(
            "{} random ideals (n <= 6, at most 8 generators: {smain_ok}): sdepth(I) >= m - sv + 1 failed {bi_failed}/{bi_total}, sdepth(S/I) >= m - sv failed {bq_failed}/{bq_total}",
            report.smain.len()
        ),
    );

    let corpus: Vec<&Record> = report.smain.iter().chain(&report.examples).collect();
    let mut parts = Vec::new();
    let mut transports_ok = true;
    for prefix in [
        "localization_transport_valid",
        "localization_transport_levels",
        "colon_transport_valid",
        "colon_transport_levels",
        "elimination_transport_valid",
        "elimination_transport_levels",
    ] {
        let (t, f) = check_named(corpus.iter().copied(), prefix);
        transports_ok &= t == corpus.len() && f == 0;
        parts.push(format!("{prefix} {f}/{t}"));
    }
    out.record(
        7,
        transports_ok,
        format!("witness transports, failed/total: {}", parts.join(", ")),
    );

    let mut oracle_ok = true;
    let mut notes = Vec::new();
    for n in 2..=6 {
        let p = SqfIdeal::from_indices(n, &[(1..=n).collect::<Vec<_>>()]).unwrap();
        let dq = depth_quotient(&p, VarSet::full(n), Field::Rational).unwrap();
        let sq = sdepth(&p, ModuleKind::Quotient, VarSet::full(n))
            .unwrap()
            .value;
        oracle_ok &= dq == n - 1 && sq == n - 1;
    }
    notes.push(format!(
        "principal depth and sdepth = n - 1 for n = 2..6: {oracle_ok}"
    ));
    for n in 2..=4 {
        let m = SqfIdeal::maximal(n).unwrap();
        let poset = char_poset(&m, ModuleKind::Ideal, VarSet::full(n)).unwrap();
        let brute = common::brute_force_sdepth(&poset);
        let solver = sdepth(&m, ModuleKind::Ideal, VarSet::full(n))
            .unwrap()
            .value;
        oracle_ok &= brute == solver;
        notes.push(format!(
            "sdepth(m) n={n}: solver {solver}, enumeration {brute}"
        ));
    }
    out.record(8, oracle_ok, notes.join("; "));

    let dir = tempfile::tempdir().unwrap();
    let mut bytes = Vec::new();
    for run in 0..2 {
        let path = dir.path().join(format!("report-{run}.json"));
        let status = Command::new(env!("CARGO_BIN_EXE_stanley"))
            .args([
                "verify",
                "--seed",
                "42",
                "--json-out",
                path.to_str().unwrap(),
            ])
            .status()
            .unwrap();
        assert!(status.success());
        bytes.push(std::fs::read(&path).unwrap());
    }
    let same = bytes[0] == bytes[1] && !bytes[0].is_empty();
    out.record(
        9,
        same,
        format!(
            "two runs of `stanley verify --seed 42` byte-identical: {same} ({} bytes)",
            bytes[0].len()
        ),
    );

    let failed: Vec<u32> = out.results.iter().filter(|r| !r.1).map(|r| r.0).collect();
    println!(
        "acceptance: {} lines, {} failed",
        out.results.len(),
        failed.len()
    );
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
    assert!(
        report.passed(),
        "sweep failures: {:?}",
        report.summary.failing_instances
    );
}
