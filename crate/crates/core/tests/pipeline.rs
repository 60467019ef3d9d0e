use num_bigint::BigInt;
use num_traits::Signed;
use recterm::bounds::certified_base;
use recterm::catalog::{self, run_catalog};
use recterm::eval::{eval_rep_fast, verify_with};
use recterm::render::{parse_rep_json, render, to_json, Format};
use recterm::synth::{
    pell_fundamental, pell_fundamental_brute, pell_recurrences, synth, synth_signed, BaseStrategy,
    HalfMode, RepKind,
};
use recterm::{Execution, Recurrence};

#[test]
fn catalog_formulas_and_known_failures() {
    let run = run_catalog("all", Execution::Parallel).unwrap();
    assert_eq!(run.outcomes.len(), catalog::entries().len());
    for o in &run.outcomes {
        assert!(o.formula_matches(), "{}: {}", o.entry.label, o.formula);
        assert!(o.unexpected.is_empty(), "{}: {:?}", o.entry.label, o.unexpected);
        assert!(o.resolved.is_empty(), "{}: {:?}", o.entry.label, o.resolved);
    }
    assert!(run.all_ok());
    assert_eq!(run.exit_code(), 0);
}

#[test]
fn catalog_json_round_trip_and_render_determinism() {
    for e in catalog::entries() {
        let rep = e.build().unwrap();
        let back = parse_rep_json(&to_json(&rep)).unwrap();
        assert_eq!(back, rep, "{}", e.label);
        for format in [Format::Text, Format::Latex] {
            assert_eq!(render(&back, format), render(&rep, format));
        }
    }
}

#[test]
fn verify_sequential_equals_parallel() {
    for e in catalog::entries() {
        let rep = e.build().unwrap();
        let (from, to) = e.range();
        let rec = e.recurrence();
        assert_eq!(
            verify_with(&rep, &rec, from, to, Execution::Sequential),
            verify_with(&rep, &rec, from, to, Execution::Parallel),
        );
    }
}

#[test]
fn catalog_run_is_order_stable() {
    let a = run_catalog("all", Execution::Sequential).unwrap().report_text();
    let b = run_catalog("all", Execution::Parallel).unwrap().report_text();
    assert_eq!(a, b);
}

#[test]
fn certified_representations_hold_on_their_window() {
    let recs = [
        Recurrence::from_i64s(&[-1, -1], &[0, 1]).unwrap(),
        Recurrence::from_i64s(&[-1, -1], &[2, 1]).unwrap(),
        Recurrence::from_i64s(&[-3, 2], &[0, 1]).unwrap(),
        Recurrence::from_i64s(&[-1, -1, -1], &[0, 0, 1]).unwrap(),
        Recurrence::from_i64s(&[-2, 1], &[0, 1]).unwrap(),
    ];
    for rec in &recs {
        for kind in [RepKind::RemQuot, RepKind::RemRem] {
            let cert = certified_base(rec, kind).unwrap();
            let n0 = cert.n0;
            let rep = synth(rec, kind, HalfMode::Ceil, &BaseStrategy::Certified).unwrap();
            let report = verify_with(&rep, rec, n0, n0 + 40, Execution::Parallel);
            assert!(report.all_pass(), "{}: {:?}", rep.id(), report.failures());
        }
    }
}

#[test]
fn signed_sequence_alternates() {
    // A002249: s(n+2) = s(n+1) - 2 s(n).
    let rec = Recurrence::from_i64s(&[-1, 2], &[2, 1]).unwrap();
    let oracle = rec.oracle_terms(30);
    let rep = synth_signed(
        &rec,
        RepKind::RemQuot,
        HalfMode::Ceil,
        &BaseStrategy::Pinned { base: 8u32.into(), n0: 1 },
    )
    .unwrap();
    let mut changes = 0;
    for n in 1..=30u64 {
        let got = eval_rep_fast(&rep, n).unwrap();
        assert_eq!(got, oracle[n as usize], "n = {n}");
        if n > 1 && got.is_negative() != oracle[n as usize - 1].is_negative() {
            changes += 1;
        }
    }
    assert!(changes >= 5, "{changes} sign changes");
}

#[test]
fn pell_solutions() {
    for k in 2u64..150 {
        if (k as f64).sqrt().fract() == 0.0 {
            assert!(pell_fundamental(k).is_err());
            continue;
        }
        let (x1, y1) = pell_fundamental(k).unwrap();
        if let Some(brute) = pell_fundamental_brute(k, 2_000) {
            assert_eq!((x1.clone(), y1.clone()), brute, "k = {k}");
        }
        let pair = pell_recurrences(k).unwrap();
        let (x, y) = (pair.rec_x.oracle_terms(8), pair.rec_y.oracle_terms(8));
        for n in 0..=8 {
            assert_eq!(&x[n] * &x[n] - BigInt::from(k) * &y[n] * &y[n], BigInt::from(1));
        }
    }
}
