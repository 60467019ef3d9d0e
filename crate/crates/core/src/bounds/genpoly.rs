//! Generalized monic polynomials `Y^r_s + c_{s-1} Y^r_{s-1} + ... + c_0` whose
//! exponents are multiples of 1/6.
//!
//! Substituting `Y = Z^6` turns each one into an ordinary integer polynomial
//! in `Z`, so dominance thresholds follow from the Cauchy root bound.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::IntPoly;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenPoly {
    /// `(exponent in sixths, coefficient)`, exponents strictly decreasing.
    terms: Vec<(u32, BigInt)>,
}

impl GenPoly {
    /// The empty sum; the only non-monic value allowed.
    pub fn zero() -> Self {
        GenPoly { terms: Vec::new() }
    }

    pub fn new(terms: Vec<(u32, BigInt)>) -> Result<Self> {
        let terms: Vec<_> = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if terms.windows(2).any(|w| w[0].0 <= w[1].0) {
            return Err(Error::InvalidGenPoly(
                "exponents must be strictly decreasing".into(),
            ));
        }
        if let Some((_, lead)) = terms.first() {
            if !lead.is_one() {
                return Err(Error::InvalidGenPoly("leading coefficient must be +1".into()));
            }
        }
        Ok(GenPoly { terms })
    }

    /// Builds from `(exponent_sixths, coefficient)` pairs with small coefficients.
    pub fn from_sixths(terms: &[(u32, i64)]) -> Result<Self> {
        Self::new(terms.iter().map(|&(e, c)| (e, BigInt::from(c))).collect())
    }

    /// A monic integer polynomial in `Y`.
    pub fn from_int_poly(p: &IntPoly) -> Result<Self> {
        let terms = p
            .coeffs()
            .iter()
            .enumerate()
            .rev()
            .map(|(i, c)| (6 * i as u32, c.clone()))
            .collect();
        Self::new(terms)
    }

    pub fn terms(&self) -> &[(u32, BigInt)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degree in sixths; `None` for the zero polynomial.
    pub fn degree_sixths(&self) -> Option<u32> {
        self.terms.first().map(|(e, _)| *e)
    }

    /// Integer polynomial `p(Z)` with `p(Z) = self(Z^6)`.
    pub fn to_z_poly(&self) -> IntPoly {
        let len = self.degree_sixths().map_or(0, |d| d as usize + 1);
        let mut coeffs = vec![BigInt::zero(); len];
        for (e, c) in &self.terms {
            coeffs[*e as usize] += c;
        }
        IntPoly::new(coeffs)
    }
}

/// An integer `y*` with `lhs(y) > rhs(y)` for every real `y >= y*`.
///
/// The difference `lhs(Z^6) - rhs(Z^6)` is monic; every real root lies
/// strictly inside `1 + max |coefficient|`, so it is positive from
/// `z* = max(2, 1 + max |coefficient|)` on and `y* = z*^6`.
pub fn dominance_threshold(lhs: &GenPoly, rhs: &GenPoly) -> Result<BigUint> {
    let lhs_deg = lhs
        .degree_sixths()
        .ok_or_else(|| Error::InvalidGenPoly("left side must be nonzero".into()))?;
    if let Some(rhs_deg) = rhs.degree_sixths() {
        if rhs_deg >= lhs_deg {
            return Err(Error::DegreeNotDominant {
                lhs: lhs_deg as i64,
                rhs: rhs_deg as i64,
            });
        }
    }
    let diff = lhs.to_z_poly().add(&rhs.to_z_poly().neg());
    debug_assert!(diff.is_monic());
    let lower = diff.truncate(diff.degree() as usize).max_abs_coeff();
    let z_star = (BigInt::one() + lower).max(BigInt::from(2));
    let value = diff.eval(&z_star);
    assert!(
        value.is_positive(),
        "Cauchy bound violated at z = {z_star}: {diff} = {value}"
    );
    Ok(z_star.magnitude().pow(6))
}

/// The three comparison functions used for the remainder-quotient form of
/// order `d`: `(f, g, h)` with `B > f`, `g > 0` and `h > 0` required.
pub fn rem_quot_bounds(d: usize) -> (GenPoly, GenPoly, GenPoly) {
    let d = d as u32;
    let thirds_below = |top: u32| (0..=top).rev().map(|j| (6 * j + 2, -1i64));
    let f: Vec<_> = [(6 * (d - 1) + 2, 1), (6 * (d - 2) + 4, 1)]
        .into_iter()
        .chain(thirds_below(d - 2).map(|(e, _)| (e, 1)))
        .collect();
    let g: Vec<_> = [(6 * (d - 1), 1), (6 * (d - 2) + 4, -1)]
        .into_iter()
        .chain(thirds_below(d - 2))
        .collect();
    let h: Vec<_> = [(6 * (d - 2) + 3, 1)]
        .into_iter()
        .chain(thirds_below(d - 2))
        .collect();
    (
        GenPoly::from_sixths(&f).expect("well-formed"),
        GenPoly::from_sixths(&g).expect("well-formed"),
        GenPoly::from_sixths(&h).expect("well-formed"),
    )
}

/// Same for the remainder-remainder form.
pub fn rem_rem_bounds(d: usize) -> (GenPoly, GenPoly, GenPoly) {
    let d = d as u32;
    let thirds = |top: u32, bottom: u32| (bottom..=top).rev().map(|j| (6 * j + 2, -1i64));
    let f: Vec<_> = [(6 * (d - 1) + 4, 1), (6 * (d - 1) + 2, 1)]
        .into_iter()
        .chain(thirds(d - 2, 0).map(|(e, _)| (e, 1)))
        .collect();
    let g: Vec<_> = [(6 * (d - 1) + 3, 1), (6 * (d - 1) + 2, -1)]
        .into_iter()
        .chain(thirds(d - 2, 0))
        .collect();
    let h: Vec<_> = [(6 * (d - 1) + 3, 1)]
        .into_iter()
        .chain(thirds(d - 1, 1))
        .collect();
    (
        GenPoly::from_sixths(&f).expect("well-formed"),
        GenPoly::from_sixths(&g).expect("well-formed"),
        GenPoly::from_sixths(&h).expect("well-formed"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Evaluates `p` at `y = z^6` via the `Z` form.
    fn at(p: &GenPoly, y: &BigUint) -> BigInt {
        let z = y.nth_root(6);
        assert_eq!(z.pow(6), *y);
        p.to_z_poly().eval(&BigInt::from(z))
    }

    #[test]
    fn linear_beats_constant() {
        let lhs = GenPoly::from_sixths(&[(6, 1)]).unwrap();
        let rhs = GenPoly::from_sixths(&[(0, 1)]).unwrap();
        let y = dominance_threshold(&lhs, &rhs).unwrap();
        assert!(y >= BigUint::from(2u32));
        assert!(at(&lhs, &y) > at(&rhs, &y));
    }

    #[test]
    fn root_exponents() {
        let lhs = GenPoly::from_sixths(&[(3, 1)]).unwrap();
        let rhs = GenPoly::from_sixths(&[(2, 1)]).unwrap();
        let y = dominance_threshold(&lhs, &rhs).unwrap();
        assert!(y >= BigUint::from(2u32));
        // y = 2 is admissible: 2^(1/2) > 2^(1/3) iff 2^3 > 2^2.
        assert!(BigUint::from(2u32).pow(3) > BigUint::from(2u32).pow(2));
        // Sampled confirmation beyond the threshold, at z*, 2z*, 4z*.
        let z_star = BigInt::from(y.nth_root(6));
        for k in [1, 2, 4] {
            let z = &z_star * k;
            assert!(lhs.to_z_poly().eval(&z) > rhs.to_z_poly().eval(&z));
        }
    }

    #[test]
    fn fibonacci_char_poly_beats_f() {
        let b = GenPoly::from_int_poly(&IntPoly::from_i64s(&[-1, -1, 1])).unwrap();
        let (f, _, _) = rem_quot_bounds(2);
        assert_eq!(
            f,
            GenPoly::from_sixths(&[(8, 1), (4, 1), (2, 1)]).unwrap()
        );
        let y = dominance_threshold(&b, &f).unwrap();
        assert!(at(&b, &y) > at(&f, &y));
    }

    #[test]
    fn bound_shapes() {
        let (f, g, h) = rem_quot_bounds(3);
        assert_eq!(
            f,
            GenPoly::from_sixths(&[(14, 1), (10, 1), (8, 1), (2, 1)]).unwrap()
        );
        assert_eq!(
            g,
            GenPoly::from_sixths(&[(12, 1), (10, -1), (8, -1), (2, -1)]).unwrap()
        );
        assert_eq!(h, GenPoly::from_sixths(&[(9, 1), (8, -1), (2, -1)]).unwrap());
        let (f, g, h) = rem_rem_bounds(2);
        assert_eq!(f, GenPoly::from_sixths(&[(10, 1), (8, 1), (2, 1)]).unwrap());
        assert_eq!(g, GenPoly::from_sixths(&[(9, 1), (8, -1), (2, -1)]).unwrap());
        assert_eq!(h, GenPoly::from_sixths(&[(9, 1), (8, -1)]).unwrap());
    }

    #[test]
    fn rejects_non_dominant() {
        let a = GenPoly::from_sixths(&[(4, 1)]).unwrap();
        let b = GenPoly::from_sixths(&[(6, 1)]).unwrap();
        assert!(matches!(
            dominance_threshold(&a, &b),
            Err(Error::DegreeNotDominant { .. })
        ));
        assert!(GenPoly::from_sixths(&[(2, 1), (4, 1)]).is_err());
        assert!(GenPoly::from_sixths(&[(4, 2)]).is_err());
    }
}
