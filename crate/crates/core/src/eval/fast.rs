//! Evaluation modulo `M = B(b^n)`.
//!
//! Only the powers `b^power` and `b^corr` are large; both are reduced by
//! square-and-multiply modulo `|M|`, so no operand grows past roughly twice
//! the width of `M`, about `2 d n log2(b)` bits.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::eval::exact_div;
use crate::synth::{RepKind, Representation};

/// Operand widths seen during one fast evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct EvalStats {
    pub max_operand_bits: u64,
    pub modulus_bits: u64,
}

impl EvalStats {
    fn see(&mut self, x: &BigUint) {
        self.max_operand_bits = self.max_operand_bits.max(x.bits());
    }

    fn see_signed(&mut self, x: &BigInt) {
        self.max_operand_bits = self.max_operand_bits.max(x.bits());
    }
}

/// `base^exp mod m`, recording the width of every intermediate product.
fn powmod(base: &BigUint, exp: &BigUint, m: &BigUint, stats: &mut EvalStats) -> BigUint {
    if m.is_one() {
        return BigUint::zero();
    }
    let mut result = BigUint::one();
    let mut square = base % m;
    for i in 0..exp.bits() {
        if exp.bit(i) {
            let product = &result * &square;
            stats.see(&product);
            result = product % m;
        }
        if i + 1 < exp.bits() {
            let product = &square * &square;
            stats.see(&product);
            square = product % m;
        }
    }
    result
}

/// `s(n)` from the representation without materializing `b^(n^2)`.
pub fn eval_rep_fast(rep: &Representation, n: u64) -> Result<BigInt> {
    eval_rep_fast_instrumented(rep, n).map(|(v, _)| v)
}

pub fn eval_rep_fast_instrumented(rep: &Representation, n: u64) -> Result<(BigInt, EvalStats)> {
    let mut stats = EvalStats::default();
    let b = rep.base();
    let x = BigInt::from(b.pow(u32::try_from(n).map_err(|_| Error::ExponentTooLarge(n.to_string()))?));
    let modulus = rep.modulus().eval(&x);
    if modulus.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let m = modulus.magnitude().clone();
    stats.modulus_bits = m.bits();
    let m_signed = BigInt::from(m.clone());

    let a_at_x = rep.numerator().eval(&x).mod_floor(&m_signed);
    stats.see_signed(&a_at_x);
    let power = BigInt::from(powmod(b, &rep.power_exp().eval(n)?, &m, &mut stats));
    let a_part = power * a_at_x;
    stats.see_signed(&a_part);
    let mut acc = a_part * rep.numerator_sign();
    if let Some(corr) = rep.corr_exp() {
        acc += BigInt::from(powmod(b, &corr.eval(n)?, &m, &mut stats));
    }
    let r = acc.mod_floor(&m_signed);

    let outer = BigInt::from(b.pow(
        u32::try_from(rep.outer_exp().eval(n)?)
            .map_err(|_| Error::ExponentTooLarge(rep.outer_exp().to_text()))?,
    ));
    let mut value = match rep.kind() {
        RepKind::RemQuot => r.div_floor(&outer),
        RepKind::RemRem => exact_div(&r.mod_floor(&outer), &BigInt::from(rep.scale().clone()))?,
    };
    if let Some(c) = rep.offset_c() {
        let e = u32::try_from(n + 1).map_err(|_| Error::ExponentTooLarge((n + 1).to_string()))?;
        value -= BigInt::from(c.pow(e));
    }
    Ok((value, stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::BaseCertificate;
    use crate::recurrence::Recurrence;
    use crate::synth::{assemble, HalfMode};

    #[test]
    fn powmod_matches_builtin() {
        let mut stats = EvalStats::default();
        for (b, e, m) in [(3u32, 20u32, 6479u32), (2, 0, 7), (5, 1, 1), (10, 1000, 97)] {
            let (b, e, m) = (BigUint::from(b), BigUint::from(e), BigUint::from(m));
            assert_eq!(powmod(&b, &e, &m, &mut stats), b.modpow(&e, &m));
        }
    }

    fn fib_rr() -> Representation {
        let fib = Recurrence::from_i64s(&[-1, -1], &[0, 1]).unwrap();
        assemble(&fib, RepKind::RemRem, HalfMode::Ceil, BaseCertificate::pinned(3u32, 1)).unwrap()
    }

    #[test]
    fn fibonacci_large_n() {
        let v = eval_rep_fast(&fib_rr(), 50).unwrap();
        assert_eq!(v, BigInt::from(12_586_269_025u64));
    }

    #[test]
    fn lucas_rr() {
        let lucas = Recurrence::from_i64s(&[-1, -1], &[2, 1]).unwrap();
        let rep = assemble(&lucas, RepKind::RemRem, HalfMode::Ceil, BaseCertificate::pinned(5u32, 1))
            .unwrap();
        assert_eq!(eval_rep_fast(&rep, 10).unwrap(), 123.into());
    }

    #[test]
    fn operands_stay_small() {
        let n = 300;
        let (_, stats) = eval_rep_fast_instrumented(&fib_rr(), n).unwrap();
        // log2(3) < 1.6; the modulus has about 2n log2(3) bits.
        assert!(stats.modulus_bits <= 2 * n * 16 / 10 + 2);
        assert!(stats.max_operand_bits <= 2 * stats.modulus_bits + 8);
    }

    #[test]
    fn zero_modulus_is_an_error() {
        let naturals = Recurrence::from_i64s(&[-2, 1], &[0, 1]).unwrap();
        let rep = assemble(
            &naturals,
            RepKind::RemQuot,
            HalfMode::Floor,
            BaseCertificate::pinned(4u32, 1),
        )
        .unwrap();
        assert_eq!(eval_rep_fast(&rep, 0), Err(Error::DivisionByZero));
    }
}
