//! The term tree that a representation denotes.
//!
//! Nodes follow the fixed parse `A mod B mod C = (A mod B) mod C`, and every
//! remainder is Euclidean (`0 <= r < |divisor|`).

use num_bigint::{BigInt, BigUint};

use crate::synth::exponent::ExponentExpr;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    Const(BigInt),
    /// `base^exp(n)`.
    Pow { base: BigUint, exp: ExponentExpr },
    /// Integer linear combination of subterms.
    Sum(Vec<(BigInt, Term)>),
    EuclidMod(Box<Term>, Box<Term>),
    FloorDiv(Box<Term>, Box<Term>),
    /// Division by a constant that must divide exactly.
    ExactDivConst(Box<Term>, BigUint),
    /// `child - base^(n+1)`.
    OffsetSub { child: Box<Term>, base: BigUint },
}

impl Term {
    pub fn pow(base: &BigUint, exp: ExponentExpr) -> Term {
        Term::Pow {
            base: base.clone(),
            exp,
        }
    }

    pub fn euclid_mod(self, divisor: Term) -> Term {
        Term::EuclidMod(Box::new(self), Box::new(divisor))
    }

    pub fn floor_div(self, divisor: Term) -> Term {
        Term::FloorDiv(Box::new(self), Box::new(divisor))
    }

    /// Number of summands when this node is a sum, otherwise 1.
    pub fn summands(&self) -> usize {
        match self {
            Term::Sum(parts) => parts.len(),
            _ => 1,
        }
    }
}
