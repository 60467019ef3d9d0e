//! Text, LaTeX and JSON forms of a representation.
//!
//! The text form is plain ASCII, e.g.
//! `floor((2*4^(n^2+n) - 4^(n^2)) mod (4^(2n) - 4^n - 1) / 4^n)`, and reads
//! `x mod y mod z` as `(x mod y) mod z`.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::bounds::{BaseCertificate, Mode};
use crate::error::{Error, Result};
use crate::eval::Term;
use crate::poly::IntPoly;
use crate::spec::JsonInt;
use crate::synth::{ExponentExpr, HalfMode, RepKind, RepParts, Representation};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Latex,
    Json,
}

pub fn render(rep: &Representation, format: Format) -> String {
    match format {
        Format::Text => text(&rep.to_term()),
        Format::Latex => latex(&rep.to_term()),
        Format::Json => to_json(rep),
    }
}

fn is_unit(t: &Term) -> bool {
    match t {
        Term::Const(c) => c.is_one(),
        Term::Pow { exp, .. } => exp.is_zero(),
        _ => false,
    }
}

/// Sums need brackets as operands unless they are a single bare summand.
fn is_compound(t: &Term) -> bool {
    match t {
        Term::Sum(parts) => parts.len() != 1 || !parts[0].0.is_one(),
        Term::Const(c) => c.is_negative(),
        _ => false,
    }
}

fn join_sum(parts: &[(BigInt, Term)], times: &str, leaf: impl Fn(&Term) -> String) -> String {
    let mut out = String::new();
    for (i, (k, t)) in parts.iter().enumerate() {
        match (i, k.is_negative()) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let m = k.magnitude();
        if is_unit(t) {
            out.push_str(&m.to_string());
        } else if m.is_one() {
            out.push_str(&leaf(t));
        } else {
            out.push_str(&format!("{m}{times}{}", leaf(t)));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn text(t: &Term) -> String {
    let operand = |t: &Term| {
        if is_compound(t) {
            format!("({})", text(t))
        } else {
            text(t)
        }
    };
    match t {
        Term::Const(c) => c.to_string(),
        Term::Pow { base, exp } => {
            if exp.is_zero() {
                "1".into()
            } else if exp.is_atomic() {
                format!("{base}^n")
            } else {
                format!("{base}^({})", exp.to_text())
            }
        }
        Term::Sum(parts) => join_sum(parts, "*", text),
        Term::EuclidMod(x, y) => format!("{} mod {}", operand(x), operand(y)),
        Term::FloorDiv(x, y) => format!("floor({} / {})", operand(x), operand(y)),
        Term::ExactDivConst(x, k) => format!("({}) / {k}", text(x)),
        Term::OffsetSub { child, base } => {
            let child = match **child {
                Term::EuclidMod(..) => format!("({})", text(child)),
                _ => operand(child),
            };
            format!("{child} - {base}^({})", ExponentExpr::succ().to_text())
        }
    }
}

pub fn latex(t: &Term) -> String {
    let operand = |t: &Term| {
        if is_compound(t) {
            format!("({})", latex(t))
        } else {
            latex(t)
        }
    };
    match t {
        Term::Const(c) => c.to_string(),
        Term::Pow { base, exp } => {
            if exp.is_zero() {
                "1".into()
            } else if exp.is_atomic() {
                format!("{base}^n")
            } else {
                format!("{base}^{{{}}}", exp.to_latex())
            }
        }
        Term::Sum(parts) => join_sum(parts, " \\cdot ", latex),
        Term::EuclidMod(x, y) => format!("{} \\bmod {}", operand(x), operand(y)),
        Term::FloorDiv(x, y) => format!(
            "\\left\\lfloor \\frac{{{}}}{{{}}} \\right\\rfloor",
            latex(x),
            latex(y)
        ),
        Term::ExactDivConst(x, k) => {
            format!("\\frac{{1}}{{{k}}} \\cdot \\left( {} \\right)", latex(x))
        }
        Term::OffsetSub { child, base } => {
            let child = match **child {
                Term::EuclidMod(..) => format!("\\left( {} \\right)", latex(child)),
                _ => operand(child),
            };
            format!("{child} - {base}^{{{}}}", ExponentExpr::succ().to_latex())
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CertWire {
    b: JsonInt,
    n0: u64,
    mode: Mode,
    coeff_base: Option<JsonInt>,
    thresholds: Option<Vec<JsonInt>>,
    window: u64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RepWire {
    name: Option<String>,
    kind: RepKind,
    base: JsonInt,
    n0: u64,
    half: HalfMode,
    numerator: Vec<JsonInt>,
    modulus: Vec<JsonInt>,
    power_exp: ExponentExpr,
    corr_exp: Option<ExponentExpr>,
    outer_exp: ExponentExpr,
    sign: i8,
    scale: JsonInt,
    offset_c: Option<JsonInt>,
    certificate: CertWire,
}

fn unsigned(x: &BigUint) -> JsonInt {
    JsonInt(x.clone().into())
}

fn poly_wire(p: &IntPoly) -> Vec<JsonInt> {
    p.coeffs().iter().cloned().map(JsonInt).collect()
}

fn to_unsigned(field: &str, x: JsonInt) -> Result<BigUint> {
    x.0.to_biguint().ok_or_else(|| Error::Validation {
        field: field.into(),
        message: format!("{} must be nonnegative", x.0),
    })
}

fn to_wire(rep: &Representation) -> RepWire {
    let p = rep.parts();
    RepWire {
        name: p.name.clone(),
        kind: p.kind,
        base: unsigned(&p.base),
        n0: p.n0,
        half: p.half,
        numerator: poly_wire(&p.numerator),
        modulus: poly_wire(&p.modulus),
        power_exp: p.power_exp,
        corr_exp: p.corr_exp,
        outer_exp: p.outer_exp,
        sign: p.sign,
        scale: unsigned(&p.scale),
        offset_c: p.offset_c.as_ref().map(unsigned),
        certificate: CertWire {
            b: unsigned(&p.cert.b),
            n0: p.cert.n0,
            mode: p.cert.mode,
            coeff_base: p.cert.coeff_base.as_ref().map(unsigned),
            thresholds: p
                .cert
                .thresholds
                .as_ref()
                .map(|t| t.iter().map(unsigned).collect()),
            window: p.cert.window,
        },
    }
}

fn from_wire(w: RepWire) -> Result<Representation> {
    for (field, e) in [("power_exp", Some(w.power_exp)), ("corr_exp", w.corr_exp), ("outer_exp", Some(w.outer_exp))] {
        if let Some(e) = e {
            e.validate().map_err(|err| Error::Validation {
                field: field.into(),
                message: err.to_string(),
            })?;
        }
    }
    let c = w.certificate;
    let cert = BaseCertificate {
        b: to_unsigned("certificate.b", c.b)?,
        n0: c.n0,
        mode: c.mode,
        coeff_base: c.coeff_base.map(|x| to_unsigned("certificate.coeff_base", x)).transpose()?,
        thresholds: c
            .thresholds
            .map(|t| {
                t.into_iter()
                    .map(|x| to_unsigned("certificate.thresholds", x))
                    .collect::<Result<Vec<_>>>()
            })
            .transpose()?,
        window: c.window,
    };
    Representation::from_parts(RepParts {
        name: w.name,
        kind: w.kind,
        base: to_unsigned("base", w.base)?,
        n0: w.n0,
        half: w.half,
        numerator: IntPoly::new(w.numerator.into_iter().map(|x| x.0).collect()),
        modulus: IntPoly::new(w.modulus.into_iter().map(|x| x.0).collect()),
        power_exp: w.power_exp,
        corr_exp: w.corr_exp,
        outer_exp: w.outer_exp,
        sign: w.sign,
        scale: to_unsigned("scale", w.scale)?,
        offset_c: w.offset_c.map(|x| to_unsigned("offset_c", x)).transpose()?,
        cert,
    })
}

/// Loss-free JSON value of a representation.
pub fn to_json_value(rep: &Representation) -> serde_json::Value {
    serde_json::to_value(to_wire(rep)).expect("wire types always serialize")
}

pub fn to_json(rep: &Representation) -> String {
    serde_json::to_string_pretty(&to_wire(rep)).expect("wire types always serialize")
}

/// Parses JSON produced by [`to_json`], re-checking every invariant.
pub fn parse_rep_json(input: &str) -> Result<Representation> {
    let wire: RepWire = serde_json::from_str(input).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    from_wire(wire)
}

pub fn rep_from_json_value(value: serde_json::Value) -> Result<Representation> {
    let wire: RepWire = serde_json::from_value(value).map_err(|e| Error::Parse {
        line: 0,
        column: 0,
        message: e.to_string(),
    })?;
    from_wire(wire)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recurrence::Recurrence;
    use crate::synth::assemble;

    fn rep(a: &[i64], s: &[i64], kind: RepKind, half: HalfMode, b: u32) -> Representation {
        let rec = Recurrence::from_i64s(a, s).unwrap();
        assemble(&rec, kind, half, BaseCertificate::pinned(b, 1)).unwrap()
    }

    #[test]
    fn text_examples() {
        let fib = rep(&[-1, -1], &[0, 1], RepKind::RemRem, HalfMode::Ceil, 3);
        assert_eq!(render(&fib, Format::Text), "3^(n^2+n) mod (3^(2n) - 3^n - 1) mod 3^n");
        let lucas = rep(&[-1, -1], &[2, 1], RepKind::RemQuot, HalfMode::Ceil, 4);
        assert_eq!(
            render(&lucas, Format::Text),
            "floor((2*4^(n^2+n) - 4^(n^2)) mod (4^(2n) - 4^n - 1) / 4^n)"
        );
        let mersenne = rep(&[-3, 2], &[0, 1], RepKind::RemRem, HalfMode::Ceil, 4);
        assert_eq!(
            render(&mersenne, Format::Text),
            "((4^(n+ceil(n/2)) - 4^(n^2+n)) mod (4^(2n) - 3*4^n + 2) mod 4^n) / 2"
        );
        let naturals = rep(&[-2, 1], &[0, 1], RepKind::RemQuot, HalfMode::Floor, 4);
        assert_eq!(
            render(&naturals, Format::Text),
            "floor((4^(floor(n/2)) + 4^(n^2)) mod (4^(2n) - 2*4^n + 1) / 4^n)"
        );
    }

    #[test]
    fn latex_examples() {
        let lucas = rep(&[-1, -1], &[2, 1], RepKind::RemQuot, HalfMode::Ceil, 4);
        assert_eq!(
            render(&lucas, Format::Latex),
            "\\left\\lfloor \\frac{(2 \\cdot 4^{n^2 + n} - 4^{n^2}) \\bmod (4^{2n} - 4^n - 1)}{4^n} \\right\\rfloor"
        );
        let fib = rep(&[-1, -1], &[0, 1], RepKind::RemRem, HalfMode::Ceil, 3);
        assert_eq!(
            render(&fib, Format::Latex),
            "3^{n^2 + n} \\bmod (3^{2n} - 3^n - 1) \\bmod 3^n"
        );
    }

    #[test]
    fn json_round_trip() {
        let mersenne = rep(&[-3, 2], &[0, 1], RepKind::RemRem, HalfMode::Ceil, 4);
        let json = render(&mersenne, Format::Json);
        let back = parse_rep_json(&json).unwrap();
        assert_eq!(back, mersenne);
        assert_eq!(render(&back, Format::Json), json);
    }

    #[test]
    fn json_rejects_tampering() {
        let fib = rep(&[-1, -1], &[0, 1], RepKind::RemRem, HalfMode::Ceil, 3);
        let mut value = to_json_value(&fib);
        value["scale"] = serde_json::json!(5);
        assert!(matches!(
            rep_from_json_value(value),
            Err(Error::InvalidRepresentation(_))
        ));
        let mut value = to_json_value(&fib);
        value["base"] = serde_json::json!(-3);
        assert!(matches!(rep_from_json_value(value), Err(Error::Validation { .. })));
        assert!(matches!(parse_rep_json("{"), Err(Error::Parse { .. })));
    }
}
