//! Pell's equation `x^2 - k y^2 = 1` and the recurrences of its solutions.

use num_bigint::{BigInt, BigUint};
use num_integer::Roots;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::IntPoly;
use crate::recurrence::Recurrence;

/// Brute-force cross-checks run for `k` below this.
const BRUTE_CHECK_BELOW: u64 = 100;
const BRUTE_Y_MAX: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PellPair {
    pub k: u64,
    pub x1: BigUint,
    pub y1: BigUint,
    /// `x(n)`: `x(0) = 1`, `x(1) = x1`.
    pub rec_x: Recurrence,
    /// `y(n)`: `y(0) = 0`, `y(1) = y1`.
    pub rec_y: Recurrence,
}

fn check_k(k: u64) -> Result<u64> {
    let root = k.sqrt();
    if k < 2 || root * root == k {
        return Err(Error::SquareOrSmall { k });
    }
    Ok(root)
}

/// Minimal positive solution from the convergents of the continued fraction
/// of `sqrt(k)`.
pub fn pell_fundamental(k: u64) -> Result<(BigUint, BigUint)> {
    let a0 = check_k(k)?;
    let kk = BigUint::from(k);
    // Periodic expansion: m_{i+1} = d_i a_i - m_i, d_{i+1} = (k - m_{i+1}^2) / d_i.
    let (mut m, mut d, mut a) = (0u64, 1u64, a0);
    let (mut h_prev, mut h) = (BigUint::one(), BigUint::from(a0));
    let (mut q_prev, mut q) = (BigUint::zero(), BigUint::one());
    while &h * &h != &kk * &q * &q + 1u32 {
        m = d * a - m;
        d = (k - m * m) / d;
        a = (a0 + m) / d;
        let h_next = &h * a + &h_prev;
        let q_next = &q * a + &q_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        q_prev = std::mem::replace(&mut q, q_next);
    }
    if k < BRUTE_CHECK_BELOW {
        if let Some(brute) = pell_fundamental_brute(k, BRUTE_Y_MAX) {
            assert_eq!(brute, (h.clone(), q.clone()), "Pell cross-check failed for k = {k}");
        }
    }
    Ok((h, q))
}

/// Smallest solution with `1 <= y <= y_max` by direct search.
pub fn pell_fundamental_brute(k: u64, y_max: u64) -> Option<(BigUint, BigUint)> {
    check_k(k).ok()?;
    (1..=y_max).find_map(|y| {
        let rhs = BigUint::from(k) * y * y + 1u32;
        let x = rhs.sqrt();
        (&x * &x == rhs).then(|| (x, BigUint::from(y)))
    })
}

/// Both solution sequences, sharing `s(n+2) = 2 x1 s(n+1) - s(n)`.
pub fn pell_recurrences(k: u64) -> Result<PellPair> {
    let (x1, y1) = pell_fundamental(k)?;
    let alphas = vec![-BigInt::from(2u32 * &x1), BigInt::one()];
    let rec_x = Recurrence::new(alphas.clone(), vec![BigInt::one(), x1.clone().into()])?
        .with_name(format!("pell{k}-x"));
    let rec_y = Recurrence::new(alphas, vec![BigInt::zero(), y1.clone().into()])?
        .with_name(format!("pell{k}-y"));
    debug_assert_eq!(
        rec_x.numerator_poly()?,
        IntPoly::new(vec![-BigInt::from(x1.clone()), BigInt::one()])
    );
    debug_assert_eq!(rec_y.numerator_poly()?, IntPoly::constant(y1.clone().into()));
    Ok(PellPair {
        k,
        x1,
        y1,
        rec_x,
        rec_y,
    })
}
