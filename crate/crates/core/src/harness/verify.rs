use rayon::prelude::*;

use super::gen::{generate_chordal_clutters, generate_quadratic, random_ideals, GenStats};
use super::{Check, Instance, Record, Relation, Section, Source, VerificationReport, VerifyConfig};
use crate::clutter::Clutter;
use crate::depth::{depth_quotient, depth_report};
use crate::error::{Error, Result};
use crate::ideal::{MonomialPrime, SqfIdeal};
use crate::io::{ClutterJson, IdealJson};
use crate::lq::{check_lq_order, chordal_lq_order, find_lq_order, LqVerdict};
use crate::sdepth::{char_poset, sdepth, ModuleKind, SdepthResult};
use crate::sv::{check_sv_witness, sv_number, transport_eliminate, transport_localize, SvWitness};
use crate::varset::VarSet;

fn active_for(ideal: &SqfIdeal, trim: bool) -> VarSet {
    let support = ideal.support();
    if trim && !support.is_empty() {
        support
    } else {
        VarSet::full(ideal.ambient())
    }
}

fn to_i(v: usize) -> i64 {
    v as i64
}

fn blank_record(inst: &Instance) -> Record {
    Record {
        id: inst.id.clone(),
        source: inst.source,
        n: inst.ideal.ambient(),
        m: inst.ideal.ambient(),
        d: inst.d,
        clutter: inst.clutter.as_ref().map(ClutterJson::from_clutter),
        ideal: IdealJson::from_ideal(&inst.ideal),
        chordal: None,
        pd: None,
        depth_quotient: None,
        depth_ideal: None,
        depth_lq: None,
        sdepth_quotient: None,
        sdepth_ideal: None,
        sv_restricted: None,
        checks: Vec::new(),
        notices: Vec::new(),
        skipped: false,
        certificates: Default::default(),
    }
}

/// Runs every check that applies to `inst` in the given section.
///
/// An exceeded solver cap marks the record skipped; any other error becomes
/// a failing `evaluation_error` check.
pub fn evaluate(section: Section, inst: &Instance, cfg: &VerifyConfig) -> Record {
    let mut rec = blank_record(inst);
    let outcome = match section {
        Section::Main => eval_main(inst, cfg, &mut rec).map(|_| 0),
        Section::Smain => eval_smain(inst, cfg, &mut rec),
        Section::Examples => {
            eval_smain(inst, cfg, &mut rec).and_then(|r| eval_example(inst, r, &mut rec).map(|_| r))
        }
    };
    match outcome {
        Ok(_) => {}
        Err(e @ Error::CapExceeded { .. }) => {
            rec.skipped = true;
            rec.notices.push(format!("skipped: {e}"));
        }
        Err(e) => rec
            .checks
            .push(Check::holds("evaluation_error", false).with_detail(e.to_string())),
    }
    rec
}

/// Both Stanley depths with independently re-validated certificates.
fn stanley_checks(
    ideal: &SqfIdeal,
    active: VarSet,
    depth_q: usize,
    rec: &mut Record,
) -> Result<(usize, Option<usize>)> {
    let certify = |kind: ModuleKind, res: &SdepthResult| -> Result<bool> {
        let poset = char_poset(ideal, kind, active)?;
        Ok(res.certificate.validate(&poset).is_ok()
            && res.certificate.min_top().unwrap_or(active.len()) == res.value)
    };
    let q = sdepth(ideal, ModuleKind::Quotient, active)?;
    rec.sdepth_quotient = Some(q.value);
    rec.checks.push(Check::holds(
        "sdepth_quotient_certificate",
        certify(ModuleKind::Quotient, &q)?,
    ));
    rec.checks.push(Check::new(
        "stanley_quotient",
        to_i(q.value),
        Relation::Ge,
        to_i(depth_q),
    ));
    rec.certificates.sdepth_quotient = Some(q.certificate.to_index_lists());
    if ideal.is_zero() {
        return Ok((q.value, None));
    }
    let i = sdepth(ideal, ModuleKind::Ideal, active)?;
    rec.sdepth_ideal = Some(i.value);
    rec.checks.push(Check::holds(
        "sdepth_ideal_certificate",
        certify(ModuleKind::Ideal, &i)?,
    ));
    rec.checks.push(Check::new(
        "stanley_ideal",
        to_i(i.value),
        Relation::Ge,
        to_i(depth_q + 1),
    ));
    rec.certificates.sdepth_ideal = Some(i.certificate.to_index_lists());
    Ok((q.value, Some(i.value)))
}

fn smain_bounds(m: usize, r: usize, sq: usize, si: usize, rec: &mut Record) {
    let m = to_i(m);
    let r = to_i(r);
    rec.checks.push(Check::new(
        "sv_bound_ideal",
        to_i(si),
        Relation::Ge,
        m - r + 1,
    ));
    rec.checks.push(Check::new(
        "sv_bound_quotient",
        to_i(sq),
        Relation::Ge,
        m - r,
    ));
}

/// Free-variable shifts: adding a variable the ideal does not use raises
/// depth and both Stanley depths by exactly one.
fn shift_checks(ideal: &SqfIdeal, cfg: &VerifyConfig, rec: &mut Record) -> Result<()> {
    let full = VarSet::full(ideal.ambient());
    let free = to_i(ideal.ambient() - rec.m);
    if free == 0 {
        return Ok(());
    }
    let dq = depth_quotient(ideal, full, cfg.field)?;
    rec.checks.push(Check::new(
        "depth_free_variable_shift",
        to_i(dq),
        Relation::Eq,
        to_i(rec.depth_quotient.unwrap_or(0)) + free,
    ));
    let sq = sdepth(ideal, ModuleKind::Quotient, full)?.value;
    rec.checks.push(Check::new(
        "sdepth_quotient_free_variable_shift",
        to_i(sq),
        Relation::Eq,
        to_i(rec.sdepth_quotient.unwrap_or(0)) + free,
    ));
    if let Some(si_trim) = rec.sdepth_ideal {
        let si = sdepth(ideal, ModuleKind::Ideal, full)?.value;
        rec.checks.push(Check::new(
            "sdepth_ideal_free_variable_shift",
            to_i(si),
            Relation::Eq,
            to_i(si_trim) + free,
        ));
    }
    Ok(())
}

fn eval_main(inst: &Instance, cfg: &VerifyConfig, rec: &mut Record) -> Result<()> {
    let ideal = &inst.ideal;
    let active = active_for(ideal, cfg.trim);
    rec.m = active.len();

    let presentation = inst.clutter.as_ref().zip(inst.d);
    if let Some((c, _)) = presentation {
        let cert = c.is_chordal()?;
        rec.chordal = Some(cert.is_chordal());
        rec.checks
            .push(Check::holds("clutter_chordal", cert.is_chordal()));
        rec.checks.push(Check::holds(
            "chordality_certificate_verifies",
            cert.verify(c),
        ));
        rec.certificates.chordality = Some(cert);
    }

    let report = depth_report(ideal, active, cfg.field)?;
    let dq = report.depth_quotient;
    rec.pd = Some(report.pd);
    rec.depth_quotient = Some(dq);
    rec.depth_ideal = report.depth_ideal;

    if let Some((c, d)) = presentation.filter(|_| !ideal.is_zero()) {
        match chordal_lq_order(c, d) {
            Ok(lq) => {
                let verdict = check_lq_order(ideal, lq.order())?;
                let agrees = matches!(&verdict, LqVerdict::Valid(o) if o.colon_counts() == lq.colon_counts());
                rec.checks.push(Check::holds("lq_order_valid", agrees));
                let dl = lq.depth(rec.m)?;
                rec.depth_lq = Some(dl);
                rec.checks.push(Check::new(
                    "lq_depth_equals_oracle",
                    to_i(dl),
                    Relation::Eq,
                    to_i(dq),
                ));
                rec.certificates.lq_order = Some(lq.order().iter().map(|s| s.to_vec()).collect());
            }
            Err(e @ Error::EdgeTooSmall { .. }) => rec
                .notices
                .push(format!("linear quotients not applicable: {e}")),
            Err(e) => rec
                .checks
                .push(Check::holds("lq_order_found", false).with_detail(e.to_string())),
        }
    }

    let (sq, si) = stanley_checks(ideal, active, dq, rec)?;

    if let Some((c, d)) = presentation {
        let support = ideal.support();
        for v in c
            .simplicial_vertices()
            .into_iter()
            .filter(|&v| support.contains(v))
        {
            let eliminated = ideal.eliminate_variable(v)?;
            let de = depth_quotient(&eliminated, active.without(v), cfg.field)?;
            rec.checks.push(Check::new(
                format!("elimination_depth[x{v}]"),
                to_i(de),
                Relation::Ge,
                to_i(dq),
            ));
            let colon = ideal.colon_by_variable(v)?;
            if d >= 2 {
                let expected = c.contraction(v)?.d_complement(d - 1)?.edge_ideal()?;
                rec.checks.push(Check::holds(
                    format!("colon_is_complement_of_contraction[x{v}]"),
                    colon == expected,
                ));
            }
            // S/(1) is the zero module, so the bound is vacuous when x_v is a generator
            if !colon.is_unit() {
                let dc = depth_quotient(&colon, active, cfg.field)?;
                rec.checks.push(Check::new(
                    format!("colon_depth[x{v}]"),
                    to_i(dc),
                    Relation::Ge,
                    to_i(dq),
                ));
            }
        }
    }

    if let Some(si) = si {
        match sv_number(ideal) {
            Ok(res) => {
                rec.sv_restricted = Some(res.restricted);
                smain_bounds(rec.m, res.restricted, sq, si, rec);
                rec.certificates.sv_witness = Some(res.witness.to_index_lists());
            }
            Err(e @ Error::CapExceeded { .. }) => {
                rec.notices.push(format!("sv bounds not checked: {e}"))
            }
            Err(e) => return Err(e),
        }
    }

    if inst.quadratic.is_some() {
        let graph = Clutter::new(ideal.ambient(), ideal.generators().iter().copied())?;
        rec.checks.push(Check::holds(
            "froberg_complement_chordal",
            graph.complement_graph()?.graph_is_chordal()?,
        ));
        rec.checks.push(Check::holds(
            "polarized_linear_quotients",
            find_lq_order(ideal)?.is_some(),
        ));
    }

    if cfg.trim {
        shift_checks(ideal, cfg, rec)?;
    }
    Ok(())
}

fn witness_ok(ideal: &SqfIdeal, w: &SvWitness) -> bool {
    if ideal.is_zero() {
        return w.is_empty();
    }
    matches!(check_sv_witness(ideal, w), Ok(None))
}

/// Returns the restricted Schmitt-Vogel number for later checks.
fn eval_smain(inst: &Instance, cfg: &VerifyConfig, rec: &mut Record) -> Result<usize> {
    let ideal = &inst.ideal;
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    let n = ideal.ambient();
    let active = active_for(ideal, cfg.trim);
    rec.m = active.len();

    let report = depth_report(ideal, active, cfg.field)?;
    rec.pd = Some(report.pd);
    rec.depth_quotient = Some(report.depth_quotient);
    rec.depth_ideal = report.depth_ideal;

    let res = sv_number(ideal)?;
    let (r, w) = (res.restricted, res.witness);
    rec.sv_restricted = Some(r);
    rec.certificates.sv_witness = Some(w.to_index_lists());
    rec.checks
        .push(Check::holds("sv_witness_valid", witness_ok(ideal, &w)));

    let (sq, si) = stanley_checks(ideal, active, report.depth_quotient, rec)?;
    smain_bounds(rec.m, r, sq, si.unwrap_or(0), rec);

    // (I : x_i) is the localization at the prime (x_i)
    let mut colon_mismatch = Vec::new();
    let mut colon_invalid = Vec::new();
    let mut colon_levels = 0;
    for i in 1..=n {
        let prime = MonomialPrime::principal(n, i)?;
        let local = ideal.localize(&prime)?;
        if local != ideal.colon_by_variable(i)? {
            colon_mismatch.push(i);
        }
        let moved = transport_localize(ideal, &w, &prime)?;
        if !witness_ok(&local, &moved) {
            colon_invalid.push(i);
        }
        colon_levels = colon_levels.max(moved.len());
    }
    let listed = |v: &[usize]| format!("{v:?}");
    let mut push_count = |name: &str, bad: &[usize]| {
        let c = Check::new(name, to_i(bad.len()), Relation::Eq, 0);
        rec.checks.push(if bad.is_empty() {
            c
        } else {
            c.with_detail(listed(bad))
        });
    };
    push_count("localization_equals_colon", &colon_mismatch);
    push_count("colon_transport_valid", &colon_invalid);
    rec.checks.push(Check::new(
        "colon_transport_levels",
        to_i(colon_levels),
        Relation::Le,
        to_i(r),
    ));

    let mut prime_invalid = Vec::new();
    let mut prime_levels = 0;
    for vars in VarSet::full(n).subsets().filter(|s| !s.is_empty()) {
        let prime = MonomialPrime::new(n, vars)?;
        let moved = transport_localize(ideal, &w, &prime)?;
        if !witness_ok(&ideal.localize(&prime)?, &moved) {
            prime_invalid.push(vars.mask() as usize);
        }
        prime_levels = prime_levels.max(moved.len());
    }
    let c = Check::new(
        "localization_transport_valid",
        to_i(prime_invalid.len()),
        Relation::Eq,
        0,
    );
    rec.checks.push(if prime_invalid.is_empty() {
        c
    } else {
        c.with_detail(format!("prime variable masks {prime_invalid:?}"))
    });
    rec.checks.push(Check::new(
        "localization_transport_levels",
        to_i(prime_levels),
        Relation::Le,
        to_i(r),
    ));

    let (i, moved) = transport_eliminate(ideal, &w)?;
    let eliminated = ideal.eliminate_variable(i)?;
    rec.checks.push(
        Check::holds(
            "elimination_transport_valid",
            witness_ok(&eliminated, &moved),
        )
        .with_detail(format!("x{i}")),
    );
    rec.checks.push(Check::new(
        "elimination_transport_levels",
        to_i(moved.len()),
        Relation::Le,
        to_i(r) - 1,
    ));

    if cfg.trim {
        shift_checks(ideal, cfg, rec)?;
    }
    Ok(r)
}

/// Reference data of the two worked examples.
struct Reference {
    id: &'static str,
    n: usize,
    generators: Vec<Vec<usize>>,
    witness: Vec<Vec<Vec<usize>>>,
    sv: usize,
    quotient_bound: usize,
    ideal_bound: usize,
}

fn reference_examples() -> Vec<Reference> {
    let triples: Vec<Vec<usize>> = VarSet::full(5)
        .subsets_of_size(3)
        .map(|s| s.to_vec())
        .collect();
    vec![
        Reference {
            id: "example-1",
            n: 4,
            generators: vec![vec![1, 2], vec![1, 3], vec![2, 3, 4]],
            witness: vec![vec![vec![1, 2]], vec![vec![1, 3], vec![2, 3, 4]]],
            sv: 2,
            quotient_bound: 2,
            ideal_bound: 3,
        },
        Reference {
            id: "example-2",
            n: 5,
            generators: triples.clone(),
            witness: vec![
                vec![vec![1, 2, 3]],
                vec![vec![1, 2, 4], vec![1, 3, 4], vec![2, 3, 4]],
                triples.into_iter().filter(|t| t.contains(&5)).collect(),
            ],
            sv: 3,
            quotient_bound: 2,
            ideal_bound: 3,
        },
    ]
}

pub fn worked_examples() -> Vec<Instance> {
    reference_examples()
        .into_iter()
        .map(|p| {
            let ideal = SqfIdeal::from_indices(p.n, &p.generators).expect("reference ideal");
            Instance::from_ideal(p.id, Source::Example, ideal)
        })
        .collect()
}

fn eval_example(inst: &Instance, r: usize, rec: &mut Record) -> Result<()> {
    let reference = reference_examples()
        .into_iter()
        .find(|p| p.id == inst.id)
        .ok_or_else(|| Error::Internal(format!("no reference data for {}", inst.id)))?;
    let w = SvWitness::from_indices(reference.n, &reference.witness)?;
    rec.checks.push(Check::holds(
        "reference_witness_valid",
        witness_ok(&inst.ideal, &w),
    ));
    rec.checks.push(Check::new(
        "reference_witness_levels",
        to_i(w.len()),
        Relation::Eq,
        to_i(reference.sv),
    ));
    rec.checks.push(Check::new(
        "sv_equals_reference",
        to_i(r),
        Relation::Eq,
        to_i(reference.sv),
    ));
    let m = rec.m;
    rec.checks.push(Check::new(
        "quotient_bound_equals_reference",
        to_i(m) - to_i(r),
        Relation::Eq,
        to_i(reference.quotient_bound),
    ));
    rec.checks.push(Check::new(
        "ideal_bound_equals_reference",
        to_i(m) - to_i(r) + 1,
        Relation::Eq,
        to_i(reference.ideal_bound),
    ));
    rec.checks.push(Check::new(
        "sdepth_quotient_at_least_reference",
        to_i(rec.sdepth_quotient.unwrap_or(0)),
        Relation::Ge,
        to_i(reference.quotient_bound),
    ));
    rec.checks.push(Check::new(
        "sdepth_ideal_at_least_reference",
        to_i(rec.sdepth_ideal.unwrap_or(0)),
        Relation::Ge,
        to_i(reference.ideal_bound),
    ));
    Ok(())
}

fn run_all(section: Section, instances: &[Instance], cfg: &VerifyConfig) -> Vec<Record> {
    instances
        .par_iter()
        .map(|i| evaluate(section, i, cfg))
        .collect()
}

pub fn run_worked_examples(cfg: &VerifyConfig) -> Vec<Record> {
    run_all(Section::Examples, &worked_examples(), cfg)
}

pub fn verify_main(instances: &[Instance], cfg: &VerifyConfig) -> Vec<Record> {
    run_all(Section::Main, instances, cfg)
}

pub fn verify_smain(instances: &[Instance], cfg: &VerifyConfig) -> Vec<Record> {
    run_all(Section::Smain, instances, cfg)
}

/// Chordal clutters for every `n <= max_n` and `1 <= d <= n`, followed by
/// quadratic ideals with chordal complement in 2 and 3 variables.
pub fn main_instances(cfg: &VerifyConfig) -> Result<(Vec<Instance>, Vec<GenStats>)> {
    let mut instances = Vec::new();
    let mut stats = Vec::new();
    for n in 1..=cfg.max_n {
        for d in 1..=n {
            let (clutters, st) = generate_chordal_clutters(n, d, cfg.clutters_per_cell, cfg.seed)?;
            for (k, (c, _)) in clutters.into_iter().enumerate() {
                instances.push(Instance::from_clutter(
                    format!("main-n{n}-d{d}-{k:02}"),
                    Source::Generated,
                    c,
                    d,
                )?);
            }
            stats.push(st);
        }
    }
    for n in 2..=3 {
        for (k, q) in generate_quadratic(n, cfg.quadratic_per_n, cfg.seed)?
            .into_iter()
            .filter(|q| q.polarized.ambient() <= cfg.max_n)
            .enumerate()
        {
            let mut inst = Instance::from_clutter(
                format!("quad-n{n}-{k:02}"),
                Source::Quadratic,
                q.complement,
                2,
            )?;
            debug_assert_eq!(inst.ideal, q.polarized);
            inst.quadratic = Some(IdealJson::from_general(n, &q.generators));
            instances.push(inst);
        }
    }
    instances.sort_by(|a, b| a.id.cmp(&b.id));
    Ok((instances, stats))
}

pub fn smain_instances(cfg: &VerifyConfig) -> Result<Vec<Instance>> {
    Ok(random_ideals(
        cfg.smain_count,
        cfg.max_n,
        cfg.smain_max_generators,
        cfg.seed,
    )?
    .into_iter()
    .enumerate()
    .map(|(k, i)| Instance::from_ideal(format!("smain-{k:03}"), Source::Generated, i))
    .collect())
}

/// The full seeded sweep: worked examples, chordal clutters, random ideals.
pub fn run_sweep(cfg: &VerifyConfig) -> Result<(VerificationReport, Vec<(Section, Instance)>)> {
    let (main, stats) = main_instances(cfg)?;
    let smain = smain_instances(cfg)?;
    let examples = worked_examples();
    let report = VerificationReport::new(
        cfg.clone(),
        stats,
        run_all(Section::Examples, &examples, cfg),
        verify_main(&main, cfg),
        verify_smain(&smain, cfg),
    );
    let tagged = examples
        .into_iter()
        .map(|i| (Section::Examples, i))
        .chain(main.into_iter().map(|i| (Section::Main, i)))
        .chain(smain.into_iter().map(|i| (Section::Smain, i)))
        .collect();
    Ok((report, tagged))
}
