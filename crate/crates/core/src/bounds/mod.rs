//! Constants that make the representations valid: the growth constant `c`
//! with `|s(n)| <= c^(n+1)`, a certified base `b`, and an empirically
//! minimal `(b, n0)` pair.

pub mod genpoly;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed};
#[cfg(test)]
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::eval::eval_rep_fast;
use crate::par::Execution;
use crate::recurrence::Recurrence;
use crate::poly::IntPoly;
use crate::synth::{assemble, needs_correction, HalfMode, RepKind};

pub use genpoly::{dominance_threshold, rem_quot_bounds, rem_rem_bounds, GenPoly};

/// How a constant was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Proven by an exact inequality argument.
    Certified,
    /// Checked on a finite window only.
    Empirical,
    /// Supplied by the caller; nothing is claimed.
    Pinned,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthCertificate {
    pub c: BigInt,
    pub mode: Mode,
    /// Whether the bound is `|s(n)| < c^(n+1)` rather than `<=`.
    pub strict: bool,
    pub evidence: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GrowthRule {
    /// `sum |a_i| c^(-i) <= 1` plus the initial-term bounds.
    #[default]
    Induction,
    /// `d (|a_1| + ... + |a_d|) < c` plus the initial-term bounds.
    Coarse,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseCertificate {
    pub b: BigUint,
    pub n0: u64,
    pub mode: Mode,
    /// `b1` of the coefficient-bound chain (certified only).
    pub coeff_base: Option<BigUint>,
    /// `y0, y1, y2` dominance thresholds (certified only).
    pub thresholds: Option<Vec<BigUint>>,
    /// Verified span `[n0, n0 + window]`.
    pub window: u64,
}

impl BaseCertificate {
    pub fn pinned(b: impl Into<BigUint>, n0: u64) -> Self {
        BaseCertificate {
            b: b.into(),
            n0,
            mode: Mode::Pinned,
            coeff_base: None,
            thresholds: None,
            window: 0,
        }
    }

    pub fn is_heuristic(&self) -> bool {
        self.mode != Mode::Certified
    }
}

/// Window used when checking certified bases before they are handed out.
pub const CERTIFIED_WINDOW: u64 = 40;

fn initial_terms_ok(rec: &Recurrence, c: &BigInt, strict: bool) -> bool {
    rec.initial().iter().enumerate().all(|(i, s)| {
        let bound = c.pow(i as u32 + 1);
        if strict {
            s.abs() < bound
        } else {
            s.abs() <= bound
        }
    })
}

/// `sum_i |a_i| c^(d-i) <= c^d`, the integer form of `sum |a_i| c^(-i) <= 1`.
fn induction_ok(rec: &Recurrence, c: &BigInt) -> bool {
    let d = rec.order() as u32;
    let lhs: BigInt = rec
        .alphas()
        .iter()
        .enumerate()
        .map(|(i, a)| a.abs() * c.pow(d - 1 - i as u32))
        .sum();
    lhs <= c.pow(d)
}

fn coarse_ok(rec: &Recurrence, c: &BigInt) -> bool {
    let sum: BigInt = rec.alphas().iter().map(|a| a.abs()).sum();
    BigInt::from(rec.order()) * sum < *c
}

/// Smallest `c >= 1` passing the chosen criterion.
///
/// Both criteria are monotone in `c`, so the search is a bisection between 1
/// and the coarse bound, which always passes.
pub fn growth_constant(rec: &Recurrence, strict: bool, rule: GrowthRule) -> GrowthCertificate {
    let passes = |c: &BigInt| {
        initial_terms_ok(rec, c, strict)
            && match rule {
                GrowthRule::Induction => induction_ok(rec, c),
                GrowthRule::Coarse => coarse_ok(rec, c),
            }
    };
    let alpha_sum: BigInt = rec.alphas().iter().map(|a| a.abs()).sum();
    let max_initial = rec.initial().iter().map(|s| s.abs()).max().unwrap_or_default();
    let coarse: BigInt = BigInt::from(rec.order()) * alpha_sum + 1;
    let mut hi = coarse.max(max_initial + 1);
    debug_assert!(passes(&hi));
    let mut lo = BigInt::one();
    if passes(&lo) {
        hi = lo.clone();
    }
    // Invariant: passes(hi), and either lo == hi or !passes(lo).
    while &hi - &lo > BigInt::one() {
        let mid: BigInt = (&lo + &hi) / 2;
        if passes(&mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let c = hi;
    let rel = if strict { "<" } else { "<=" };
    let rule_text = match rule {
        GrowthRule::Induction => format!("sum |a_i| / {c}^i <= 1"),
        GrowthRule::Coarse => format!("{} * sum |a_i| < {c}", rec.order()),
    };
    GrowthCertificate {
        evidence: format!("{rule_text}; |s(i)| {rel} {c}^(i+1) for i < {}", rec.order()),
        c,
        mode: Mode::Certified,
        strict,
    }
}

/// Smallest `c >= 1` with `|s(n)| <= c^(n+1)` for `n <= window`; not a proof.
pub fn growth_constant_empirical(rec: &Recurrence, window: usize) -> GrowthCertificate {
    let terms = rec.oracle_terms(window);
    let fits = |c: &BigInt| {
        let mut power = c.clone();
        terms.iter().all(|s| {
            let ok = s.abs() <= power;
            power *= c;
            ok
        })
    };
    let mut c = BigInt::one();
    while !fits(&c) {
        c += 1;
    }
    GrowthCertificate {
        evidence: format!("|s(n)| <= {c}^(n+1) checked for n <= {window}"),
        c,
        mode: Mode::Empirical,
        strict: false,
    }
}

/// A base for which the `CEIL` representation of `kind` provably holds from
/// `n0`.
///
/// With a correction summand `n0` is 2: at `n = 1` the exponent `ceil(n/2)`
/// equals `n`, so the correction lands on the digit being read
/// (remainder-quotient) or on `b^(dn)`, which reduces to
/// `-(a_1 b^(d-1) + ... + a_d)` and shifts the low digit by `-a_d`
/// (remainder-remainder). Without one, `n0` is the first index after any
/// small-index remainder with a negative digit.
///
/// `b1 = max(c^6, M^3) + 1` with `M = 1 + sum |a_i|` bounds every tail
/// coefficient `C_k`, `k >= d - 1`, by `b^(n/3)` once `b > b1^2`. The
/// dominance thresholds of the kind-specific comparison functions and the
/// explicit bound for the first few indices are added on top.
pub fn certified_base(rec: &Recurrence, kind: RepKind) -> Result<BaseCertificate> {
    let d = rec.order();
    if d < 2 {
        return Err(Error::OrderTooSmall { order: d });
    }
    let growth = growth_constant(rec, true, GrowthRule::Induction);
    let m: BigInt = BigInt::one() + rec.alphas().iter().map(|a| a.abs()).sum::<BigInt>();
    let b1: BigInt = growth.c.pow(6).max(m.pow(3)) + 1;
    let b1 = b1.to_biguint().expect("positive");

    let (f, g, h) = match kind {
        RepKind::RemQuot => rem_quot_bounds(d),
        RepKind::RemRem => rem_rem_bounds(d),
    };
    let char_poly = GenPoly::from_int_poly(&rec.char_poly())?;
    let thresholds = vec![
        dominance_threshold(&char_poly, &f)?,
        dominance_threshold(&g, &GenPoly::zero())?,
        dominance_threshold(&h, &GenPoly::zero())?,
    ];
    let remainders = small_index_remainders(rec, kind);
    let n0 = if needs_correction(&rec.char_poly()) {
        2
    } else {
        // Without a correction summand every digit must be nonnegative.
        remainders
            .iter()
            .filter(|(_, rem)| rem.coeffs().iter().any(|c| c.is_negative()))
            .map(|(n, _)| n + 1)
            .max()
            .unwrap_or(1)
    };
    let small = small_index_threshold(&remainders, n0);
    let b = thresholds
        .iter()
        .cloned()
        .chain([&b1 * &b1, small])
        .max()
        .expect("nonempty")
        + 1u32;
    Ok(BaseCertificate {
        b,
        n0,
        mode: Mode::Certified,
        coeff_base: Some(b1),
        thresholds: Some(thresholds),
        window: CERTIFIED_WINDOW,
    })
}

/// Exact remainders `X^(k+1) A(X) mod B(X)`, negated for remainder-remainder
/// when `a_d > 0`, at the indices `n >= 1` below the range where the
/// coefficient bound built from `b1` applies.
///
/// That bound and the sign argument of the no-correction forms cover `C_k`
/// only while every `s(k - i)` it mentions has a nonnegative index. The
/// remainder-quotient form reads `C_(n-1)` and the remainder-remainder form
/// reads `C_n`, so the first `d - 1` (resp. `d - 2`) indices are checked here
/// directly.
fn small_index_remainders(rec: &Recurrence, kind: RepKind) -> Vec<(u64, IntPoly)> {
    let d = rec.order() as u64;
    let char_poly = rec.char_poly();
    let numerator = rec.numerator_poly().expect("order >= 2");
    let (last_n, k_of_n): (u64, fn(u64) -> u64) = match kind {
        RepKind::RemQuot => (d - 1, |n| n - 1),
        RepKind::RemRem => (d - 2, |n| n),
    };
    let flip = kind == RepKind::RemRem && rec.last_alpha().is_positive();
    (1..=last_n)
        .map(|n| {
            let rem = numerator.shift(k_of_n(n) as usize + 1).rem_monic(&char_poly);
            (n, if flip { rem.neg() } else { rem })
        })
        .collect()
}

/// Smallest `b` with `|c_i| < b^(n/3)` for every small-index remainder
/// coefficient at `n >= n0`.
fn small_index_threshold(remainders: &[(u64, IntPoly)], n0: u64) -> BigUint {
    let mut b = BigUint::one();
    for (n, rem) in remainders.iter().filter(|(n, _)| *n >= n0) {
        let widest = rem.max_abs_coeff().magnitude().clone();
        // b^n > widest^3
        b = b.max(widest.pow(3).nth_root(*n as u32) + 1u32);
    }
    b
}

/// Parameters of the empirical base search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MinimalSearch {
    pub window: u64,
    pub b_cap: u64,
    pub n0_cap: u64,
    pub exec: Execution,
}

impl Default for MinimalSearch {
    fn default() -> Self {
        MinimalSearch {
            window: 64,
            b_cap: 4096,
            n0_cap: 1,
            exec: Execution::Parallel,
        }
    }
}

/// Smallest `b` (then smallest `n0`) whose formula matches the oracle on
/// `[n0, n0 + window]`. Heuristic: nothing is claimed beyond the window.
pub fn minimal_base(
    rec: &Recurrence,
    kind: RepKind,
    half: HalfMode,
    search: MinimalSearch,
) -> Result<BaseCertificate> {
    let d = rec.order();
    if d < 2 {
        return Err(Error::OrderTooSmall { order: d });
    }
    let last_n = search.n0_cap + search.window;
    let oracle = rec.oracle_terms(last_n as usize);
    let trial = |b: u64| -> Option<u64> {
        let rep = assemble(rec, kind, half, BaseCertificate::pinned(b, 1)).ok()?;
        // Candidate start: one past the latest failure seen so far.
        let mut start = 1u64;
        for n in 1..=last_n {
            let ok = eval_rep_fast(&rep, n).is_ok_and(|v| v == oracle[n as usize]);
            if !ok {
                start = n + 1;
                if start > search.n0_cap {
                    return None;
                }
            } else if n - start == search.window {
                return Some(start);
            }
        }
        None
    };
    let found = crate::par::find_first(2..=search.b_cap, search.exec, |b| trial(b).map(|n0| (b, n0)));
    let (b, n0) = found.ok_or(Error::NoBaseFound {
        b_cap: search.b_cap,
        n0_cap: search.n0_cap,
    })?;
    Ok(BaseCertificate {
        b: b.into(),
        n0,
        mode: Mode::Empirical,
        coeff_base: None,
        thresholds: None,
        window: search.window,
    })
}

/// Checks `|s(n)| <= c^(n+1)` (or `<`) on `[0, n_max]`.
pub fn growth_holds(rec: &Recurrence, growth: &GrowthCertificate, n_max: usize) -> bool {
    let mut power = growth.c.clone();
    rec.oracle_terms(n_max).iter().all(|s| {
        let ok = if growth.strict {
            s.abs() < power
        } else {
            s.abs() <= power
        };
        power *= &growth.c;
        ok
    })
}
