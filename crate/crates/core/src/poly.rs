//! Dense univariate polynomials with arbitrary-precision integer coefficients.
//!
//! Coefficients are stored little-endian: `coeffs[i]` multiplies `X^i`. Every
//! constructor and operation returns a canonical value whose highest stored
//! coefficient is nonzero; the zero polynomial stores no coefficients.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `X^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        IntPoly { coeffs }
    }

    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `X^i`, zero beyond the stored range.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// Degree, with `-1` for the zero polynomial.
    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn is_canonical(&self) -> bool {
        self.coeffs.last().is_none_or(|c| !c.is_zero())
    }

    /// Schoolbook convolution.
    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        IntPoly::new((0..len).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Multiplies by `X^k`.
    pub fn shift(&self, k: usize) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    /// `self mod X^k`: keeps the coefficients of `X^0 .. X^{k-1}`.
    pub fn truncate(&self, k: usize) -> IntPoly {
        IntPoly::new(self.coeffs.iter().take(k).cloned().collect())
    }

    /// Unique split `self = low + X^k * high` with `deg(low) < k`.
    pub fn split_at(&self, k: usize) -> (IntPoly, IntPoly) {
        let low = self.truncate(k);
        let high = IntPoly::new(self.coeffs.iter().skip(k).cloned().collect());
        (low, high)
    }

    /// Remainder of division by a monic polynomial.
    pub fn rem_monic(&self, m: &IntPoly) -> IntPoly {
        assert!(m.is_monic(), "divisor must be monic");
        let dm = m.degree() as usize;
        let mut r = self.coeffs.clone();
        while r.len() > dm {
            let lead = r.pop().expect("nonempty");
            let shift = r.len() - dm;
            for (i, c) in m.coeffs[..dm].iter().enumerate() {
                r[shift + i] -= &lead * c;
            }
        }
        IntPoly::new(r)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Sum of absolute values of the coefficients.
    pub fn abs_sum(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }

    /// Maximum absolute coefficient, zero for the zero polynomial.
    pub fn max_abs_coeff(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_default()
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl fmt::Display for IntPoly {
    /// Descending-degree rendering, e.g. `X^3 - 2X - 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            match (first, c.is_negative()) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let show_mag = i == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => f.write_str("X")?,
                _ => write!(f, "X^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    /// Independent convolution oracle on machine integers.
    fn convolve(a: &[i64], b: &[i64]) -> Vec<i64> {
        let mut out = vec![0; a.len() + b.len() - 1];
        for i in 0..a.len() {
            for j in 0..b.len() {
                out[i + j] += a[i] * b[j];
            }
        }
        out
    }

    #[test]
    fn mul_examples() {
        let fib = p(&[-1, -1, 1]);
        assert_eq!(fib.mul(&p(&[1, 1])), p(&convolve(&[-1, -1, 1], &[1, 1])));
        assert_eq!(fib.mul(&p(&[1, 1])), p(&[-1, -2, 0, 1]));
        assert_eq!(fib.mul(&IntPoly::one()), fib);
        assert_eq!(p(&[2, -1, 1]).mul(&p(&[-2, 1])), p(&[-4, 4, -3, 1]));
        assert!(fib.mul(&IntPoly::zero()).is_zero());
    }

    #[test]
    fn truncate_examples() {
        let q = p(&[-1, -2, 0, 1]);
        assert_eq!(q.truncate(2), p(&[-1, -2]));
        assert_eq!(q.truncate(4), q);
        assert!(IntPoly::monomial(3).truncate(3).is_zero());
    }

    #[test]
    fn rem_monic_examples() {
        let fib = p(&[-1, -1, 1]);
        // X^4 = 3X + 2 modulo X^2 - X - 1.
        assert_eq!(IntPoly::monomial(4).rem_monic(&fib), p(&[2, 3]));
        assert_eq!(p(&[5, 7]).rem_monic(&fib), p(&[5, 7]));
        let q = p(&[3, -2, 0, 4, 1]);
        let r = q.rem_monic(&fib);
        let x = BigInt::from(10);
        assert!((q.eval(&x) - r.eval(&x)) % fib.eval(&x) == BigInt::from(0));
    }

    #[test]
    fn split_examples() {
        let (low, high) = p(&[-1, -2, 0, 1]).split_at(3);
        assert_eq!((low, high), (p(&[-1, -2]), IntPoly::one()));
        let (low, high) = p(&[-1, -1, 1]).split_at(2);
        assert_eq!((low, high), (p(&[-1, -1]), IntPoly::one()));
        let q = p(&[3, 0, 5]);
        assert_eq!(q.split_at(0), (IntPoly::zero(), q.clone()));
    }

    #[test]
    fn eval_examples() {
        assert_eq!(p(&[-1, -1, 1]).eval(&3.into()), 5.into());
        assert_eq!(IntPoly::zero().eval(&17.into()), BigInt::zero());
        assert_eq!(p(&[-4, 4, -3, 1]).eval(&2.into()), BigInt::zero());
    }

    #[test]
    fn canonical_form() {
        let q = p(&[1, 2, 0, 0]);
        assert_eq!(q.degree(), 1);
        assert!(q.is_canonical());
        assert_eq!(IntPoly::zero().degree(), -1);
        assert_eq!(p(&[0, 0]).degree(), -1);
    }

    #[test]
    fn display() {
        assert_eq!(p(&[-1, -2, 0, 1]).to_string(), "X^3 - 2X - 1");
        assert_eq!(p(&[6, -7, 4]).to_string(), "4X^2 - 7X + 6");
        assert_eq!(p(&[-1]).to_string(), "-1");
    }
}
