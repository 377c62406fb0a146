//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! fails if any criterion fails.

use std::io::Write;
use std::time::{Duration, Instant};

use meadow_core::oracle::{exhaustive_fp_check, random_point_check, PointSampling};
use meadow_core::smf::worked_example;
use meadow_core::verifier::catalog::{md_axioms, negative_controls};
use meadow_core::verifier::{label_salt, run_full_suite, term, TermGen, Verifier};
use meadow_core::{parse_term, print_term, Equation, MeadowTerm, Normalizer, RatNF};

const N: usize = 3;
const SEED: u64 = 42;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn axiom_suite() -> Outcome {
    let start = Instant::now();
    let reports = run_full_suite(N, SEED).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let failed: Vec<_> = reports
        .iter()
        .filter(|r| !r.passed())
        .map(|r| r.name.clone())
        .collect();
    ensure(failed.is_empty(), format!("failing entries: {failed:?}"))?;
    let count = |prefix: &str| {
        reports
            .iter()
            .filter(|r| r.name.starts_with(prefix))
            .count()
    };
    for (prefix, expected) in [
        ("D1", 3),
        ("D2", 3),
        ("D3", 3),
        ("D4", 3),
        ("D5", 6),
        ("Prop", 3),
        ("Cor1", 3),
    ] {
        ensure(
            count(prefix) == expected,
            format!("{prefix}: {} reports", count(prefix)),
        )?;
    }
    ensure(
        reports.len() >= 10 + 6 + 24,
        format!("only {} reports", reports.len()),
    )?;
    ensure(
        elapsed < Duration::from_secs(60),
        format!("took {elapsed:?}"),
    )?;
    let trials: usize = reports.iter().map(|r| r.trials).sum();
    let skipped: usize = reports.iter().map(|r| r.skipped).sum();
    Ok(format!(
        "{} reports, {trials} trials ({skipped} skipped), 0 failures, {:.1}s",
        reports.len(),
        elapsed.as_secs_f64()
    ))
}

fn negative_control() -> Outcome {
    let v = Verifier::new(N, SEED);
    let mut notes = Vec::new();
    for eq in negative_controls() {
        let report = v.check_equation(&eq).map_err(|e| e.to_string())?;
        let first = report
            .failures
            .first()
            .ok_or_else(|| format!("{} did not fail", eq.name))?;
        if eq.name == "IL-as-equation" {
            ensure(
                report
                    .failures
                    .iter()
                    .any(|f| f.subst.get("x").map(String::as_str) == Some("0")),
                "no x -> 0 counterexample",
            )?;
        }
        notes.push(format!("{} fails at {:?}", eq.name, first.subst));
    }
    Ok(notes.join("; "))
}

fn propagation() -> Outcome {
    let v = Verifier::new(N, SEED);
    ensure(
        v.trials == 200 && v.gen.max_depth == 5,
        "unexpected defaults",
    )?;
    for report in [v.check_propagation_units(), v.check_propagation_zeros()] {
        let report = report.map_err(|e| e.to_string())?;
        ensure(report.passed(), format!("{report}"))?;
        ensure(report.trials == 200, "wrong trial count")?;
    }
    Ok("200 + 200 triples, 0 failures".into())
}

fn smf_collapse() -> Outcome {
    let n = Normalizer::new(N);
    let poly = |s: &str| n.polynomial(&term(s, N)).unwrap();
    match worked_example().collapse() {
        RatNF::Quot { num, den }
            if num == poly("1 + X2 - 2*X1*X3") && den == poly("8 - X1*X3^2") => {}
        other => return Err(format!("worked example collapsed to {other}")),
    }
    let g = TermGen::new(N, SEED);
    let salt = label_salt("smf");
    for trial in 0..100 {
        let s = g.smf(&mut g.rng(salt, trial), 4);
        let ok = n
            .decide_eq(&s.to_term(), &s.collapse().to_term())
            .map_err(|e| e.to_string())?;
        ensure(ok, format!("tree {trial} does not collapse to its value"))?;
    }
    Ok("golden tree exact, 100 random trees agree".into())
}

fn concordance() -> Outcome {
    let n = Normalizer::new(N);
    let g = TermGen::new(N, SEED).with_max_depth(6);
    let salt = label_salt("concordance");
    let (mut equal, mut hard, mut inconclusive, mut samples, mut skipped) = (0, 0, 0, 0, 0);
    for trial in 0..500 {
        let mut rng = g.rng(salt, trial);
        let t = g.term(&mut rng, 6);
        let r = if trial % 2 == 0 {
            match n.normalize(&t) {
                Ok(nf) => nf.nf.to_term(),
                Err(_) => {
                    skipped += 1;
                    continue;
                }
            }
        } else {
            g.term(&mut rng, 6)
        };
        let cfg = PointSampling {
            seed: SEED ^ trial as u64,
            ..PointSampling::default()
        };
        let c = match random_point_check(&n, &t, &r, &cfg) {
            Ok(c) => c,
            Err(_) => {
                skipped += 1;
                continue;
            }
        };
        equal += usize::from(c.decided_equal);
        hard += usize::from(c.hard_failure());
        inconclusive += c.inconclusive;
        samples += cfg.trials;
    }
    ensure(hard == 0, format!("{hard} hard disagreements"))?;
    ensure(skipped <= 5, format!("{skipped} pairs over budget"))?;
    let rate = inconclusive as f64 / samples as f64;
    ensure(rate < 0.01, format!("inconclusive rate {rate}"))?;
    Ok(format!(
        "{} pairs ({equal} equal), 0 hard disagreements, {inconclusive}/{samples} inconclusive",
        500 - skipped
    ))
}

fn cancellation() -> Outcome {
    let v = Verifier::new(N, SEED);
    let salt = label_salt("acceptance-cancellation");
    let mut found = 0;
    for trial in 0.. {
        if found == 200 {
            break;
        }
        ensure(trial < 2000, "too few nonzero terms")?;
        let Some(t) = v.nonzero_term(&mut v.gen.rng(salt, trial), 5) else {
            continue;
        };
        found += 1;
        let unit = MeadowTerm::mul(t.clone(), MeadowTerm::inv(t.clone()));
        let ok = v
            .normalizer
            .decide_eq(&unit, &MeadowTerm::One)
            .map_err(|e| e.to_string())?;
        ensure(ok, format!("t * t^-1 != 1 for t = {t}"))?;
    }
    Ok("200 nonzero terms satisfy t * t^-1 = 1".into())
}

fn finite_fields() -> Outcome {
    let il = Equation::new("IL", parse_term("x * x^-1", None).unwrap(), MeadowTerm::One);
    for p in [2, 3, 5, 7] {
        for eq in md_axioms() {
            let report = exhaustive_fp_check(&eq, p, N).map_err(|e| e.to_string())?;
            ensure(report.passed(), format!("{report}"))?;
        }
        let report = exhaustive_fp_check(&il, p, N).map_err(|e| e.to_string())?;
        let at: Vec<_> = report
            .failures
            .iter()
            .map(|f| f.subst["x"].clone())
            .collect();
        ensure(at == ["0"], format!("IL over F{p} fails at {at:?}"))?;
    }
    Ok("Md exhaustive over F2, F3, F5, F7; IL fails only at x = 0".into())
}

fn inverse_derivative() -> Outcome {
    let n = Normalizer::new(N);
    let g = TermGen::new(N, SEED);
    for (k, t) in g
        .terms(label_salt("inverse-derivative"), 100)
        .into_iter()
        .enumerate()
    {
        let inv = MeadowTerm::inv(t.clone());
        let lhs = MeadowTerm::diff(1, inv.clone());
        let rhs = MeadowTerm::mul(
            MeadowTerm::neg(MeadowTerm::mul(inv.clone(), inv)),
            MeadowTerm::diff(1, t.clone()),
        );
        let ok = n.decide_eq(&lhs, &rhs).map_err(|e| e.to_string())?;
        ensure(ok, format!("term {k}: {t}"))?;
    }
    Ok("100 terms, 0 failures".into())
}

fn round_trip() -> Outcome {
    let g = TermGen::new(N, SEED);
    for t in g.terms(label_salt("round-trip"), 1000) {
        let printed = print_term(&t);
        let back = parse_term(&printed, Some(N)).map_err(|e| e.render(&printed))?;
        ensure(back == t, format!("{printed} re-parses differently"))?;
    }
    Ok("1000 terms".into())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 9] = [
        ("axiom suite", axiom_suite),
        ("negative control", negative_control),
        ("propagation", propagation),
        ("SMF collapse", smf_collapse),
        ("oracle concordance", concordance),
        ("cancellation meadow", cancellation),
        ("finite fields", finite_fields),
        ("inverse derivative", inverse_derivative),
        ("parser round trip", round_trip),
    ];
    let mut out = std::io::stdout().lock();
    let mut failed = Vec::new();
    for (k, (name, run)) in criteria.iter().enumerate() {
        let line = match run() {
            Ok(detail) => format!("PASS {}. {name}: {detail}", k + 1),
            Err(why) => {
                failed.push(k + 1);
                format!("FAIL {}. {name}: {why}", k + 1)
            }
        };
        writeln!(out, "{line}").unwrap();
    }
    assert!(failed.is_empty(), "criteria failed: {failed:?}");
}
