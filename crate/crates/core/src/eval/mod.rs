//! Exact evaluation of terms and representations.
//!
//! [`eval_term_direct`] is the reference semantics: it materializes every
//! power. [`eval_rep_fast`] reduces powers modulo `B(b^n)` first and is the
//! path used for verification.

mod fast;
pub mod term;
mod verify;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use fast::{eval_rep_fast, eval_rep_fast_instrumented, EvalStats};
pub use term::Term;
pub use crate::par::Execution;
pub use verify::{verify, verify_with, NStatus, VerificationReport, VerifyEntry};

/// Euclidean division: `x = q*y + r` with `0 <= r < |y|`.
pub fn euclid_divmod(x: &BigInt, y: &BigInt) -> Result<(BigInt, BigInt)> {
    if y.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let r = x.mod_floor(&y.abs());
    let q = (x - &r) / y;
    Ok((q, r))
}

/// Euclidean remainder only.
pub fn euclid_mod(x: &BigInt, y: &BigInt) -> Result<BigInt> {
    if y.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(x.mod_floor(&y.abs()))
}

pub(crate) fn exact_div(x: &BigInt, k: &BigInt) -> Result<BigInt> {
    let (q, r) = euclid_divmod(x, k)?;
    if !r.is_zero() {
        return Err(Error::NonExactDivision {
            value: x.to_string(),
            divisor: k.to_string(),
        });
    }
    Ok(q)
}

/// Evaluates a term at `n` with full big-integer arithmetic.
pub fn eval_term_direct(term: &Term, n: u64) -> Result<BigInt> {
    Ok(match term {
        Term::Const(c) => c.clone(),
        Term::Pow { base, exp } => {
            let e = exp.eval(n)?;
            BigInt::from(base.pow(small_exponent(&e)?))
        }
        Term::Sum(parts) => {
            let mut acc = BigInt::zero();
            for (k, t) in parts {
                acc += k * eval_term_direct(t, n)?;
            }
            acc
        }
        Term::EuclidMod(x, y) => euclid_mod(&eval_term_direct(x, n)?, &eval_term_direct(y, n)?)?,
        Term::FloorDiv(x, y) => {
            euclid_divmod(&eval_term_direct(x, n)?, &eval_term_direct(y, n)?)?.0
        }
        Term::ExactDivConst(x, k) => exact_div(&eval_term_direct(x, n)?, &BigInt::from(k.clone()))?,
        Term::OffsetSub { child, base } => {
            eval_term_direct(child, n)? - BigInt::from(base.pow(small_exponent(&(n + 1).into())?))
        }
    })
}

fn small_exponent(e: &BigUint) -> Result<u32> {
    e.to_u32().ok_or_else(|| Error::ExponentTooLarge(e.to_string()))
}
