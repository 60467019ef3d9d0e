//! Seeded randomized checks that need no external data.

use std::fmt::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use recterm::bounds::BaseCertificate;
use recterm::eval::{eval_rep_fast, eval_term_direct, euclid_divmod};
use recterm::synth::{assemble, HalfMode, RepKind};
use recterm::Recurrence;

pub struct Summary {
    pub ok: bool,
    pub text: String,
}

fn random_recurrence(rng: &mut ChaCha8Rng, max_order: usize) -> Recurrence {
    let d = rng.gen_range(2..=max_order);
    let mut alphas: Vec<i64> = (0..d).map(|_| rng.gen_range(-9..=9)).collect();
    while alphas[d - 1] == 0 {
        alphas[d - 1] = rng.gen_range(-9..=9);
    }
    let initial: Vec<i64> = (0..d).map(|_| rng.gen_range(0..=9)).collect();
    Recurrence::from_i64s(&alphas, &initial).expect("a_d is nonzero")
}

pub fn run(seed: u64, cases: usize) -> Summary {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut text = String::new();
    let mut failures = 0usize;

    let mut decomposition = 0;
    for _ in 0..cases {
        let rec = random_recurrence(&mut rng, 5);
        let d = rec.order();
        let k = rng.gen_range(d - 1..=d + 20);
        if rec.decomposition_check(k) == Ok(true) {
            decomposition += 1;
        } else {
            failures += 1;
            let _ = writeln!(text, "decomposition failed: {rec:?}, k = {k}");
        }
    }
    let _ = writeln!(text, "decomposition identity: {decomposition}/{cases}");

    let mut agree = 0;
    for _ in 0..cases {
        let rec = random_recurrence(&mut rng, 4);
        let kind = if rng.gen_bool(0.5) {
            RepKind::RemQuot
        } else {
            RepKind::RemRem
        };
        let half = if rng.gen_bool(0.5) {
            HalfMode::Floor
        } else {
            HalfMode::Ceil
        };
        let b: u32 = rng.gen_range(2..=12);
        let n = rng.gen_range(1..=8);
        let rep = assemble(&rec, kind, half, BaseCertificate::pinned(b, 1)).expect("order >= 2");
        let fast = eval_rep_fast(&rep, n);
        let direct = eval_term_direct(&rep.to_term(), n);
        if fast == direct {
            agree += 1;
        } else {
            failures += 1;
            let _ = writeln!(text, "fast/direct disagree: {} at n = {n}", rep.id());
        }
    }
    let _ = writeln!(text, "fast path equals direct path: {agree}/{cases}");

    let mut euclid = 0;
    for _ in 0..cases {
        let x: i128 = rng.gen_range(-(1i128 << 100)..(1i128 << 100));
        let mut y: i128 = rng.gen_range(-(1i128 << 60)..(1i128 << 60));
        if y == 0 {
            y = 1;
        }
        let (q, r) = euclid_divmod(&x.into(), &y.into()).expect("nonzero divisor");
        if q * y + &r == x.into() && r >= 0.into() && r < y.abs().into() {
            euclid += 1;
        } else {
            failures += 1;
            let _ = writeln!(text, "euclidean division failed: {x} / {y}");
        }
    }
    let _ = writeln!(text, "euclidean division: {euclid}/{cases}");

    let _ = writeln!(text, "seed {seed}: {failures} failure(s)");
    Summary {
        ok: failures == 0,
        text,
    }
}
