//! Builders for the remainder-quotient and remainder-remainder terms.
//!
//! For `B(X)` the characteristic polynomial and `A(X)` the numerator
//! polynomial of a nonnegative sequence of order `d`:
//!
//! ```text
//! RQ: s(n) = floor((b^(n(d-2)+h(n)) + b^(n^2) A(b^n)) mod B(b^n) / b^((d-1)n))
//! RR: s(n) = ((b^(n(d-1)+h(n)) - sgn(a_d) b^(n^2+n) A(b^n)) mod B(b^n) mod b^n) / |a_d|
//! ```
//!
//! where `h(n)` is `ceil(n/2)` or `floor(n/2)`. Signed sequences go through
//! `u(n) = s(n) + c^(n+1)` and subtract the offset at the end.

pub mod exponent;
pub mod pell;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::bounds::{
    certified_base, growth_constant, minimal_base, BaseCertificate, GrowthRule, MinimalSearch,
    Mode,
};
use crate::error::{Error, Result};
use crate::eval::{eval_rep_fast, Term};
use crate::par::{self, Execution};
use crate::poly::IntPoly;
use crate::recurrence::Recurrence;

pub use exponent::{ExponentExpr, Half, HalfMode};
pub use pell::{pell_fundamental, pell_fundamental_brute, pell_recurrences, PellPair};

/// Terms scanned for negative values before the unsigned builders run.
pub const NEGATIVE_SCAN: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RepKind {
    #[serde(rename = "rem_quot")]
    RemQuot,
    #[serde(rename = "rem_rem")]
    RemRem,
}

impl RepKind {
    pub fn short(self) -> &'static str {
        match self {
            RepKind::RemQuot => "rq",
            RepKind::RemRem => "rr",
        }
    }
}

/// Every field of a [`Representation`], unchecked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepParts {
    pub name: Option<String>,
    pub kind: RepKind,
    pub base: BigUint,
    pub n0: u64,
    pub half: HalfMode,
    pub numerator: IntPoly,
    pub modulus: IntPoly,
    pub power_exp: ExponentExpr,
    pub corr_exp: Option<ExponentExpr>,
    /// Divisor exponent for RQ, final modulus exponent for RR.
    pub outer_exp: ExponentExpr,
    pub sign: i8,
    pub scale: BigUint,
    pub offset_c: Option<BigUint>,
    pub cert: BaseCertificate,
}

/// A fully materialized arithmetic term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    parts: RepParts,
}

impl Representation {
    /// Checks every structural invariant; used for deserialized input.
    pub fn from_parts(parts: RepParts) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidRepresentation(msg));
        let p = &parts;
        if p.base < BigUint::from(2u32) {
            return bad(format!("base {} is below 2", p.base));
        }
        if !p.modulus.is_monic() {
            return bad("modulus polynomial must be monic".into());
        }
        let d = p.modulus.degree();
        if d < 2 {
            return bad(format!("modulus degree {d} is below 2"));
        }
        let constant = p.modulus.coeff(0);
        if constant.is_zero() {
            return bad("modulus polynomial has zero constant term".into());
        }
        if p.numerator.degree() >= d {
            return bad("numerator degree must be below modulus degree".into());
        }
        let expected = expected_exponents(p.kind, d as usize, p.half);
        if p.power_exp != expected.power || p.outer_exp != expected.outer {
            return bad("exponents do not match the representation kind".into());
        }
        if let Some(corr) = p.corr_exp {
            if corr != expected.corr {
                return bad(format!("unexpected correction exponent {}", corr.to_text()));
            }
        }
        let (sign, scale) = match p.kind {
            RepKind::RemQuot => (1, BigUint::one()),
            RepKind::RemRem => (sign_of(&constant), constant.magnitude().clone()),
        };
        if p.sign != sign {
            return bad(format!("sign must be {sign}"));
        }
        if p.scale != scale {
            return bad(format!("scale must be {scale}"));
        }
        if p.offset_c.as_ref().is_some_and(Zero::is_zero) {
            return bad("offset base must be positive".into());
        }
        if p.cert.b != p.base || p.cert.n0 != p.n0 {
            return bad("certificate does not match base and start index".into());
        }
        Ok(Representation { parts })
    }

    pub fn into_parts(self) -> RepParts {
        self.parts
    }

    pub fn parts(&self) -> &RepParts {
        &self.parts
    }

    pub fn name(&self) -> Option<&str> {
        self.parts.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.parts.name = Some(name.into());
        self
    }

    /// Short identifier such as `fibonacci/rr/b=3`.
    pub fn id(&self) -> String {
        format!(
            "{}/{}/b={}",
            self.name().unwrap_or("anonymous"),
            self.parts.kind.short(),
            self.parts.base
        )
    }

    pub fn kind(&self) -> RepKind {
        self.parts.kind
    }

    pub fn base(&self) -> &BigUint {
        &self.parts.base
    }

    pub fn n0(&self) -> u64 {
        self.parts.n0
    }

    pub fn half(&self) -> HalfMode {
        self.parts.half
    }

    /// Degree of the modulus polynomial, i.e. the (possibly shifted) order.
    pub fn order(&self) -> usize {
        self.parts.modulus.degree() as usize
    }

    /// `A(X)`.
    pub fn numerator(&self) -> &IntPoly {
        &self.parts.numerator
    }

    /// `B(X)`.
    pub fn modulus(&self) -> &IntPoly {
        &self.parts.modulus
    }

    pub fn power_exp(&self) -> ExponentExpr {
        self.parts.power_exp
    }

    pub fn corr_exp(&self) -> Option<ExponentExpr> {
        self.parts.corr_exp
    }

    pub fn outer_exp(&self) -> ExponentExpr {
        self.parts.outer_exp
    }

    pub fn sign(&self) -> i8 {
        self.parts.sign
    }

    pub fn scale(&self) -> &BigUint {
        &self.parts.scale
    }

    pub fn offset_c(&self) -> Option<&BigUint> {
        self.parts.offset_c.as_ref()
    }

    pub fn cert(&self) -> &BaseCertificate {
        &self.parts.cert
    }

    /// Multiplier of `b^power A(b^n)` inside the first remainder.
    pub fn numerator_sign(&self) -> i8 {
        match self.parts.kind {
            RepKind::RemQuot => 1,
            RepKind::RemRem => -self.parts.sign,
        }
    }

    /// The dividend `b^corr + (+-) b^power A(b^n)` as `(coefficient, term)`
    /// summands: correction first, then by descending power.
    pub fn dividend_term(&self) -> Term {
        let b = &self.parts.base;
        let mut parts = Vec::new();
        if let Some(corr) = self.parts.corr_exp {
            parts.push((BigInt::one(), Term::pow(b, corr)));
        }
        let sign = BigInt::from(self.numerator_sign());
        let a = self.parts.numerator.coeffs();
        for i in (0..a.len()).rev() {
            if !a[i].is_zero() {
                let exp = self.parts.power_exp.plus_lin(i as i64);
                parts.push((&sign * &a[i], Term::pow(b, exp)));
            }
        }
        Term::Sum(parts)
    }

    /// `B(b^n)` as a sum of powers.
    pub fn modulus_term(&self) -> Term {
        let b = &self.parts.base;
        let coeffs = self.parts.modulus.coeffs();
        let parts = (0..coeffs.len())
            .rev()
            .filter(|&i| !coeffs[i].is_zero())
            .map(|i| (coeffs[i].clone(), Term::pow(b, ExponentExpr::linear(i as i64))))
            .collect();
        Term::Sum(parts)
    }

    /// The full term tree, in the fixed parse the formulas are written in.
    pub fn to_term(&self) -> Term {
        let b = &self.parts.base;
        let inner = self.dividend_term().euclid_mod(self.modulus_term());
        let outer = Term::pow(b, self.parts.outer_exp);
        let mut term = match self.parts.kind {
            RepKind::RemQuot => inner.floor_div(outer),
            RepKind::RemRem => {
                let reduced = inner.euclid_mod(outer);
                if self.parts.scale.is_one() {
                    reduced
                } else {
                    Term::ExactDivConst(Box::new(reduced), self.parts.scale.clone())
                }
            }
        };
        if let Some(c) = &self.parts.offset_c {
            term = Term::OffsetSub {
                child: Box::new(term),
                base: c.clone(),
            };
        }
        term
    }
}

struct Exponents {
    power: ExponentExpr,
    corr: ExponentExpr,
    outer: ExponentExpr,
}

fn expected_exponents(kind: RepKind, d: usize, half: HalfMode) -> Exponents {
    let d = d as i64;
    match kind {
        RepKind::RemQuot => Exponents {
            power: ExponentExpr::square_plus(0),
            corr: ExponentExpr::linear(d - 2).with_half(half.into()),
            outer: ExponentExpr::linear(d - 1),
        },
        RepKind::RemRem => Exponents {
            power: ExponentExpr::square_plus(1),
            corr: ExponentExpr::linear(d - 1).with_half(half.into()),
            outer: ExponentExpr::linear(1),
        },
    }
}

fn sign_of(x: &BigInt) -> i8 {
    match x.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// False when the correction summand can be dropped: `d = 2` with `a_2 < 0`,
/// or `d = 3` with `a_3 < 0` and `a_2 <= 0`.
pub fn needs_correction(char_poly: &IntPoly) -> bool {
    let a_d = char_poly.coeff(0);
    match char_poly.degree() {
        2 => !a_d.is_negative(),
        3 => !(a_d.is_negative() && !char_poly.coeff(1).is_positive()),
        _ => true,
    }
}

/// Builds the representation of `kind` for `rec` at the given base without
/// any checks beyond structural ones.
pub fn assemble(
    rec: &Recurrence,
    kind: RepKind,
    half: HalfMode,
    cert: BaseCertificate,
) -> Result<Representation> {
    let numerator = rec.numerator_poly()?;
    let modulus = rec.char_poly();
    let d = rec.order();
    let exps = expected_exponents(kind, d, half);
    let constant = modulus.coeff(0);
    let (sign, scale) = match kind {
        RepKind::RemQuot => (1, BigUint::one()),
        RepKind::RemRem => (sign_of(&constant), constant.magnitude().clone()),
    };
    let corr_exp = needs_correction(&modulus).then_some(exps.corr);
    Representation::from_parts(RepParts {
        name: rec.name().map(str::to_owned),
        kind,
        base: cert.b.clone(),
        n0: cert.n0,
        half,
        numerator,
        modulus,
        power_exp: exps.power,
        corr_exp,
        outer_exp: exps.outer,
        sign,
        scale,
        offset_c: None,
        cert,
    })
}

fn check_nonnegative(rec: &Recurrence) -> Result<()> {
    let terms = rec.oracle_terms(NEGATIVE_SCAN);
    match terms.iter().position(Signed::is_negative) {
        Some(n) => Err(Error::NegativeTermsPresent {
            n: n as u64,
            value: terms[n].to_string(),
        }),
        None => Ok(()),
    }
}

/// Refuses representations that disagree with the oracle on the window their
/// certificate covers. Pinned certificates claim nothing and are not checked.
fn window_gate(rep: &Representation, rec: &Recurrence) -> Result<()> {
    let cert = rep.cert();
    if cert.mode == Mode::Pinned {
        return Ok(());
    }
    let last = cert.n0 + cert.window;
    let oracle = rec.oracle_terms(last as usize);
    let ok = par::map_range(cert.n0..=last, Execution::Parallel, |n| {
        eval_rep_fast(rep, n).is_ok_and(|v| v == oracle[n as usize])
    });
    match ok.iter().position(|&pass| !pass) {
        Some(i) => Err(Error::WindowCheckFailed {
            n: cert.n0 + i as u64,
        }),
        None => Ok(()),
    }
}

fn synth_unsigned(
    rec: &Recurrence,
    kind: RepKind,
    cert: BaseCertificate,
    half: HalfMode,
) -> Result<Representation> {
    if rec.order() < 2 {
        return Err(Error::OrderTooSmall { order: rec.order() });
    }
    check_nonnegative(rec)?;
    let rep = assemble(rec, kind, half, cert)?;
    window_gate(&rep, rec)?;
    Ok(rep)
}

/// Remainder-quotient term of a nonnegative sequence.
pub fn synth_rem_quot(
    rec: &Recurrence,
    cert: BaseCertificate,
    half: HalfMode,
) -> Result<Representation> {
    synth_unsigned(rec, RepKind::RemQuot, cert, half)
}

/// Remainder-remainder term of a nonnegative sequence.
pub fn synth_rem_rem(
    rec: &Recurrence,
    cert: BaseCertificate,
    half: HalfMode,
) -> Result<Representation> {
    synth_unsigned(rec, RepKind::RemRem, cert, half)
}

/// How the base is chosen.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BaseStrategy {
    /// Caller-supplied base and start index; no window check.
    Pinned { base: BigUint, n0: u64 },
    Certified,
    Minimal(MinimalSearch),
}

impl Default for BaseStrategy {
    fn default() -> Self {
        BaseStrategy::Minimal(MinimalSearch::default())
    }
}

fn resolve_base(
    rec: &Recurrence,
    kind: RepKind,
    half: HalfMode,
    strategy: &BaseStrategy,
) -> Result<BaseCertificate> {
    match strategy {
        BaseStrategy::Pinned { base, n0 } => Ok(BaseCertificate::pinned(base.clone(), *n0)),
        BaseStrategy::Certified => certified_base(rec, kind),
        BaseStrategy::Minimal(search) => minimal_base(rec, kind, half, *search),
    }
}

/// Base selection plus the unsigned builder.
pub fn synth(
    rec: &Recurrence,
    kind: RepKind,
    half: HalfMode,
    strategy: &BaseStrategy,
) -> Result<Representation> {
    if rec.order() < 2 {
        return Err(Error::OrderTooSmall { order: rec.order() });
    }
    check_nonnegative(rec)?;
    let cert = resolve_base(rec, kind, half, strategy)?;
    synth_unsigned(rec, kind, cert, half)
}

/// Term for a sequence of arbitrary sign: the chosen kind is built for
/// `u(n) = s(n) + c^(n+1)` and `c^(n+1)` is subtracted.
pub fn synth_signed(
    rec: &Recurrence,
    kind: RepKind,
    half: HalfMode,
    strategy: &BaseStrategy,
) -> Result<Representation> {
    if rec.order() < 2 {
        return Err(Error::OrderTooSmall { order: rec.order() });
    }
    let growth = growth_constant(rec, false, GrowthRule::Induction);
    let shifted = rec.shift_nonnegative(&growth.c);
    let cert = resolve_base(&shifted, kind, half, strategy)?;
    let mut parts = assemble(&shifted, kind, half, cert)?.into_parts();
    parts.name = rec.name().map(str::to_owned);
    parts.offset_c = Some(growth.c.magnitude().clone());
    let rep = Representation::from_parts(parts)?;
    window_gate(&rep, rec)?;
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::eval_term_direct;

    fn rec(a: &[i64], s: &[i64]) -> Recurrence {
        Recurrence::from_i64s(a, s).unwrap()
    }

    fn pinned(b: u32) -> BaseCertificate {
        BaseCertificate::pinned(b, 1)
    }

    fn at(rep: &Representation, n: u64) -> BigInt {
        let direct = eval_term_direct(&rep.to_term(), n).unwrap();
        assert_eq!(eval_rep_fast(rep, n).unwrap(), direct);
        direct
    }

    #[test]
    fn rem_quot_examples() {
        let fib = synth_rem_quot(&rec(&[-1, -1], &[0, 1]), pinned(3), HalfMode::Ceil).unwrap();
        assert_eq!(fib.corr_exp(), None);
        assert_eq!(at(&fib, 5), 5.into());

        let trib =
            synth_rem_quot(&rec(&[-1, -1, -1], &[0, 0, 1]), pinned(2), HalfMode::Ceil).unwrap();
        assert_eq!(trib.corr_exp(), None);
        assert_eq!(trib.outer_exp(), ExponentExpr::linear(2));
        assert_eq!(at(&trib, 6), 7.into());

        let nat = synth_rem_quot(&rec(&[-2, 1], &[0, 1]), pinned(4), HalfMode::Floor).unwrap();
        assert_eq!(nat.corr_exp(), Some(ExponentExpr::linear(0).with_half(Half::Floor)));
        assert_eq!(at(&nat, 3), 3.into());
        assert_eq!(at(&nat, 2), 2.into());
    }

    #[test]
    fn rem_rem_examples() {
        let fib = synth_rem_rem(&rec(&[-1, -1], &[0, 1]), pinned(3), HalfMode::Ceil).unwrap();
        assert_eq!(fib.scale(), &BigUint::one());
        assert_eq!(at(&fib, 2), 1.into());
        assert_eq!(at(&fib, 4), 3.into());

        let lucas = synth_rem_rem(&rec(&[-1, -1], &[2, 1]), pinned(5), HalfMode::Ceil).unwrap();
        assert_eq!(at(&lucas, 3), 4.into());

        let mersenne = synth_rem_rem(&rec(&[-3, 2], &[0, 1]), pinned(4), HalfMode::Ceil).unwrap();
        assert_eq!(mersenne.scale(), &BigUint::from(2u32));
        assert_eq!(mersenne.sign(), 1);
        assert_eq!(at(&mersenne, 3), 7.into());
    }

    #[test]
    fn specialization_rule() {
        assert!(!needs_correction(&IntPoly::from_i64s(&[-1, -1, 1])));
        assert!(needs_correction(&IntPoly::from_i64s(&[1, -2, 1])));
        assert!(!needs_correction(&IntPoly::from_i64s(&[-1, 0, -1, 1])));
        assert!(!needs_correction(&IntPoly::from_i64s(&[-1, -1, 0, 1])));
        assert!(needs_correction(&IntPoly::from_i64s(&[-1, 1, 0, 1])));
        assert!(needs_correction(&IntPoly::from_i64s(&[-1, 0, 0, 0, 1])));
    }

    #[test]
    fn rejects_negative_and_small() {
        let a002249 = rec(&[-1, 2], &[2, 1]);
        assert!(matches!(
            synth_rem_quot(&a002249, pinned(8), HalfMode::Ceil),
            Err(Error::NegativeTermsPresent { n: 2, .. })
        ));
        assert_eq!(
            synth_rem_rem(&rec(&[-2], &[1]), pinned(3), HalfMode::Ceil),
            Err(Error::OrderTooSmall { order: 1 })
        );
    }

    #[test]
    fn signed_examples() {
        let a002249 = rec(&[-1, 2], &[2, 1]);
        let pinned8 = BaseStrategy::Pinned {
            base: 8u32.into(),
            n0: 1,
        };
        let rq = synth_signed(&a002249, RepKind::RemQuot, HalfMode::Ceil, &pinned8).unwrap();
        assert_eq!(rq.numerator(), &IntPoly::from_i64s(&[6, -7, 4]));
        assert_eq!(rq.offset_c(), Some(&BigUint::from(2u32)));
        assert_eq!(at(&rq, 4), 1.into());
        assert_eq!(at(&rq, 5), 11.into());

        let a088137 = rec(&[-2, 3], &[0, 1]);
        let pinned128 = BaseStrategy::Pinned {
            base: 128u32.into(),
            n0: 1,
        };
        let rr = synth_signed(&a088137, RepKind::RemRem, HalfMode::Floor, &pinned128).unwrap();
        assert_eq!(rr.modulus(), &IntPoly::from_i64s(&[-9, 9, -5, 1]));
        assert_eq!(rr.scale(), &BigUint::from(9u32));
        assert_eq!(rr.offset_c(), Some(&BigUint::from(3u32)));
        let oracle = a088137.oracle_terms(12);
        for n in 1..=12 {
            assert_eq!(at(&rr, n), oracle[n as usize]);
        }
    }

    #[test]
    fn window_gate_rejects_bad_certificate() {
        let mut cert = BaseCertificate::pinned(2u32, 1);
        cert.mode = Mode::Empirical;
        cert.window = 10;
        assert_eq!(
            synth_rem_rem(&rec(&[-1, -1], &[0, 1]), cert, HalfMode::Ceil),
            Err(Error::WindowCheckFailed { n: 1 })
        );
    }

    #[test]
    fn strategies() {
        let fib = rec(&[-1, -1], &[0, 1]);
        let rep = synth(&fib, RepKind::RemRem, HalfMode::Ceil, &BaseStrategy::default()).unwrap();
        assert_eq!(rep.base(), &BigUint::from(3u32));
        assert_eq!(rep.cert().mode, Mode::Empirical);
        let rep = synth(&fib, RepKind::RemQuot, HalfMode::Ceil, &BaseStrategy::Certified).unwrap();
        assert!(rep.base() >= &BigUint::from(4226u32));
        assert_eq!(rep.cert().mode, Mode::Certified);
    }

    #[test]
    fn from_parts_revalidates() {
        let fib = synth_rem_rem(&rec(&[-1, -1], &[0, 1]), pinned(3), HalfMode::Ceil).unwrap();
        let mut parts = fib.clone().into_parts();
        parts.scale = 2u32.into();
        assert!(Representation::from_parts(parts).is_err());
        let mut parts = fib.clone().into_parts();
        parts.numerator = IntPoly::from_i64s(&[0, 0, 1]);
        assert!(Representation::from_parts(parts).is_err());
        let mut parts = fib.clone().into_parts();
        parts.base = 1u32.into();
        assert!(Representation::from_parts(parts).is_err());
        assert_eq!(Representation::from_parts(fib.clone().into_parts()).unwrap(), fib);
    }
}
