//! Closed-form arithmetic terms for C-recursive integer sequences.
//!
//! Given `s(n + d) + a_1 s(n + d - 1) + ... + a_d s(n) = 0` and initial terms,
//! the crate builds terms such as
//!
//! ```text
//! F(n) = 3^(n^2+n) mod (3^(2n) - 3^n - 1) mod 3^n
//! ```
//!
//! that evaluate to `s(n)` using only powers, integer division and Euclidean
//! remainders, and it checks them against the recurrence.
//!
//! ```
//! use recterm::{synth, BaseStrategy, HalfMode, Recurrence, RepKind, eval_rep_fast};
//!
//! let fib = Recurrence::from_i64s(&[-1, -1], &[0, 1]).unwrap();
//! let rep = synth(&fib, RepKind::RemRem, HalfMode::Ceil, &BaseStrategy::default()).unwrap();
//! assert_eq!(rep.base(), &3u32.into());
//! assert_eq!(eval_rep_fast(&rep, 30).unwrap(), 832040.into());
//! ```

pub mod bounds;
pub mod catalog;
pub mod error;
pub mod eval;
pub mod par;
pub mod poly;
pub mod recurrence;
pub mod render;
pub mod spec;
pub mod synth;

pub use bounds::{BaseCertificate, GrowthCertificate, MinimalSearch, Mode};
pub use error::{Error, Result};
pub use eval::{eval_rep_fast, eval_term_direct, verify, Term, VerificationReport};
pub use par::Execution;
pub use poly::IntPoly;
pub use recurrence::Recurrence;
pub use render::{render, Format};
pub use spec::{parse_spec, RecurrenceSpec};
pub use synth::{
    synth, synth_rem_quot, synth_rem_rem, synth_signed, BaseStrategy, ExponentExpr, HalfMode,
    RepKind, Representation,
};
