//! Exponents of the form `q n^2 + l n + c (+ floor(n/2) | ceil(n/2))`.

use std::fmt::Write;

use num_bigint::{BigInt, BigUint};
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which half of `n` the correction term uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HalfMode {
    Floor,
    #[default]
    Ceil,
}

/// Optional half-index summand of an exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Half {
    #[default]
    None,
    Floor,
    Ceil,
}

impl From<HalfMode> for Half {
    fn from(mode: HalfMode) -> Self {
        match mode {
            HalfMode::Floor => Half::Floor,
            HalfMode::Ceil => Half::Ceil,
        }
    }
}

impl Half {
    fn at(self, n: u64) -> u64 {
        match self {
            Half::None => 0,
            Half::Floor => n / 2,
            Half::Ceil => n.div_ceil(2),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExponentExpr {
    pub quad: i64,
    pub lin: i64,
    #[serde(rename = "const")]
    pub constant: i64,
    #[serde(default)]
    pub half: Half,
}

impl ExponentExpr {
    /// Validated constructor; see [`ExponentExpr::validate`].
    pub fn new(quad: i64, lin: i64, constant: i64, half: Half) -> Result<Self> {
        let e = ExponentExpr {
            quad,
            lin,
            constant,
            half,
        };
        e.validate()?;
        Ok(e)
    }

    pub const fn zero() -> Self {
        ExponentExpr {
            quad: 0,
            lin: 0,
            constant: 0,
            half: Half::None,
        }
    }

    /// `lin * n`.
    pub const fn linear(lin: i64) -> Self {
        ExponentExpr {
            quad: 0,
            lin,
            constant: 0,
            half: Half::None,
        }
    }

    /// `n^2 + lin * n`.
    pub const fn square_plus(lin: i64) -> Self {
        ExponentExpr {
            quad: 1,
            lin,
            constant: 0,
            half: Half::None,
        }
    }

    /// `n + 1`, the exponent of the signed offset `c^(n+1)`.
    pub const fn succ() -> Self {
        ExponentExpr {
            quad: 0,
            lin: 1,
            constant: 1,
            half: Half::None,
        }
    }

    pub const fn with_half(mut self, half: Half) -> Self {
        self.half = half;
        self
    }

    /// Adds `k * n`.
    pub const fn plus_lin(mut self, k: i64) -> Self {
        self.lin += k;
        self
    }

    pub fn is_zero(&self) -> bool {
        *self == Self::zero()
    }

    /// Nonnegative for every `n >= 1`: `quad >= 0` and `3 quad + lin >= 0`
    /// make the expression nondecreasing from `n = 1` on, so checking `n = 1`
    /// suffices.
    pub fn validate(&self) -> Result<()> {
        let at_one = self.quad as i128
            + self.lin as i128
            + self.constant as i128
            + self.half.at(1) as i128;
        if self.quad < 0 || 3 * self.quad as i128 + (self.lin as i128) < 0 || at_one < 0 {
            return Err(Error::InvalidExponent(self.to_text()));
        }
        Ok(())
    }

    pub fn eval_signed(&self, n: u64) -> BigInt {
        let n_big = BigInt::from(n);
        BigInt::from(self.quad) * &n_big * &n_big
            + BigInt::from(self.lin) * &n_big
            + BigInt::from(self.constant)
            + BigInt::from(self.half.at(n))
    }

    /// Value at `n`, rejecting negative results (possible only at `n = 0`).
    pub fn eval(&self, n: u64) -> Result<BigUint> {
        let v = self.eval_signed(n);
        v.to_biguint().ok_or_else(|| Error::NegativeExponent {
            exponent: self.to_text(),
            n,
        })
    }

    /// ASCII form, e.g. `n^2+n`, `n+ceil(n/2)`, `2n`.
    pub fn to_text(&self) -> String {
        let half = match self.half {
            Half::None => None,
            Half::Floor => Some("floor(n/2)"),
            Half::Ceil => Some("ceil(n/2)"),
        };
        join_terms(self.quad, self.lin, self.constant, half, "n^2", "+", "-")
    }

    pub fn to_latex(&self) -> String {
        let half = match self.half {
            Half::None => None,
            Half::Floor => Some("\\lfloor n/2 \\rfloor"),
            Half::Ceil => Some("\\lceil n/2 \\rceil"),
        };
        join_terms(self.quad, self.lin, self.constant, half, "n^2", " + ", " - ")
    }

    /// True when the text form needs no parentheses after `^`.
    pub fn is_atomic(&self) -> bool {
        *self == Self::linear(1)
    }
}

fn join_terms(
    quad: i64,
    lin: i64,
    constant: i64,
    half: Option<&str>,
    square: &str,
    plus: &str,
    minus: &str,
) -> String {
    let mut parts: Vec<(bool, String)> = Vec::new();
    let scaled = |k: i64, var: &str| match k.abs() {
        1 => var.to_string(),
        m => format!("{m}{var}"),
    };
    if quad != 0 {
        parts.push((quad < 0, scaled(quad, square)));
    }
    if lin != 0 {
        parts.push((lin < 0, scaled(lin, "n")));
    }
    if constant != 0 {
        parts.push((constant < 0, BigInt::from(constant).abs().to_string()));
    }
    if let Some(h) = half {
        parts.push((false, h.to_string()));
    }
    if parts.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (neg, body)) in parts.iter().enumerate() {
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(minus),
            (_, false) => out.push_str(plus),
        }
        let _ = write!(out, "{body}");
    }
    out
}
