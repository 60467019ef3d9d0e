//! C-recursive sequences and the polynomials attached to them.
//!
//! The sign convention is the homogeneous one:
//!
//! ```text
//! s(n + d) + a_1 s(n + d - 1) + ... + a_d s(n) = 0
//! ```
//!
//! so Fibonacci has `alphas = [-1, -1]`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::IntPoly;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recurrence {
    alphas: Vec<BigInt>,
    initial: Vec<BigInt>,
    name: Option<String>,
}

impl Recurrence {
    pub fn new(alphas: Vec<BigInt>, initial: Vec<BigInt>) -> Result<Self> {
        if alphas.is_empty() {
            return Err(Error::InvalidRecurrence("order must be positive".into()));
        }
        if alphas.len() != initial.len() {
            return Err(Error::InvalidRecurrence(format!(
                "{} coefficients but {} initial terms",
                alphas.len(),
                initial.len()
            )));
        }
        if alphas.last().is_some_and(Zero::is_zero) {
            return Err(Error::InvalidRecurrence(
                "last coefficient a_d must be nonzero".into(),
            ));
        }
        Ok(Recurrence {
            alphas,
            initial,
            name: None,
        })
    }

    pub fn from_i64s(alphas: &[i64], initial: &[i64]) -> Result<Self> {
        Self::new(
            alphas.iter().map(|&a| a.into()).collect(),
            initial.iter().map(|&s| s.into()).collect(),
        )
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn order(&self) -> usize {
        self.alphas.len()
    }

    pub fn alphas(&self) -> &[BigInt] {
        &self.alphas
    }

    pub fn initial(&self) -> &[BigInt] {
        &self.initial
    }

    /// `a_d`, never zero.
    pub fn last_alpha(&self) -> &BigInt {
        &self.alphas[self.alphas.len() - 1]
    }

    /// `s(0) ..= s(n_max)` by direct application of the recurrence.
    pub fn oracle_terms(&self, n_max: usize) -> Vec<BigInt> {
        let d = self.order();
        let mut s: Vec<BigInt> = self.initial.iter().take(n_max + 1).cloned().collect();
        while s.len() <= n_max {
            let n = s.len();
            let next: BigInt = self
                .alphas
                .iter()
                .enumerate()
                .map(|(i, a)| a * &s[n - 1 - i])
                .sum();
            s.push(-next);
        }
        debug_assert!(s.len() == n_max + 1 || n_max + 1 < d);
        s
    }

    /// `B(X) = a_d + a_{d-1} X + ... + a_1 X^{d-1} + X^d`.
    pub fn char_poly(&self) -> IntPoly {
        let mut coeffs: Vec<BigInt> = self.alphas.iter().rev().cloned().collect();
        coeffs.push(BigInt::one());
        IntPoly::new(coeffs)
    }

    /// `S_k(X) = s(k) + s(k-1) X + ... + s(0) X^k`.
    pub fn history_poly(&self, k: usize) -> IntPoly {
        let mut s = self.oracle_terms(k);
        s.reverse();
        IntPoly::new(s)
    }

    /// High part of `B(X) S_{d-1}(X)` above `X^d`.
    pub fn numerator_poly(&self) -> Result<IntPoly> {
        let d = self.order();
        if d < 2 {
            return Err(Error::OrderTooSmall { order: d });
        }
        let product = self.char_poly().mul(&self.history_poly(d - 1));
        Ok(product.split_at(d).1)
    }

    /// `C_k(X) = B(X) S_k(X) mod X^d`, defined for `k >= d - 1`.
    pub fn tail_poly(&self, k: usize) -> Result<IntPoly> {
        let d = self.order();
        if k + 1 < d {
            return Err(Error::IndexTooSmall { k, min: d - 1 });
        }
        Ok(self.char_poly().mul(&self.history_poly(k)).truncate(d))
    }

    /// Checks `B S_k = C_k + X^{k+1} A` together with the degree bounds on
    /// `C_k` and `A`.
    pub fn decomposition_check(&self, k: usize) -> Result<bool> {
        let tail = self.tail_poly(k)?;
        let numerator = self.numerator_poly()?;
        Ok(decomposition_holds(
            &self.char_poly(),
            &self.history_poly(k),
            &tail,
            &numerator,
            k,
        ))
    }

    /// Recurrence of `u(n) = s(n) + t(n)`: characteristic polynomial
    /// `B_s * B_t`, initial terms from both oracles.
    pub fn sum_recurrence(&self, other: &Recurrence) -> Recurrence {
        let product = self.char_poly().mul(&other.char_poly());
        let order = self.order() + other.order();
        debug_assert_eq!(product.degree(), order as isize);
        let alphas = (1..=order).map(|i| product.coeff(order - i)).collect();
        let s = self.oracle_terms(order - 1);
        let t = other.oracle_terms(order - 1);
        let initial = s.iter().zip(&t).map(|(a, b)| a + b).collect();
        Recurrence::new(alphas, initial).expect("product of nonzero constant terms is nonzero")
    }

    /// Recurrence of `u(n) = s(n) + c^{n+1}`.
    pub fn shift_nonnegative(&self, c: &BigInt) -> Recurrence {
        let geometric = geometric(c);
        let mut u = self.sum_recurrence(&geometric);
        if let Some(name) = &self.name {
            u.name = Some(format!("{name}+{c}^(n+1)"));
        }
        u
    }
}

/// Order-one recurrence of `t(n) = c^{n+1}` (characteristic polynomial `X - c`).
pub fn geometric(c: &BigInt) -> Recurrence {
    Recurrence::new(vec![-c.clone()], vec![c.clone()]).expect("c is nonzero")
}

/// Identity check shared by [`Recurrence::decomposition_check`] and tests that
/// perturb one of the pieces.
pub fn decomposition_holds(
    char_poly: &IntPoly,
    history: &IntPoly,
    tail: &IntPoly,
    numerator: &IntPoly,
    k: usize,
) -> bool {
    let d = char_poly.degree();
    tail.degree() < d
        && numerator.degree() < d
        && char_poly.mul(history) == tail.add(&numerator.shift(k + 1))
}
