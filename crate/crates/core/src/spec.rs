//! JSON recurrence specifications.
//!
//! ```json
//! {"name": "fibonacci", "alphas": [-1, -1], "initial": [0, 1]}
//! ```
//!
//! Integers beyond 64 bits are written as decimal strings.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::recurrence::Recurrence;

const CONVENTION: &str =
    "recurrences read s(n+d) + a_1 s(n+d-1) + ... + a_d s(n) = 0, so Fibonacci is alphas [-1, -1]";

/// Arbitrary-precision integer that serializes as a JSON number when it fits
/// in 64 bits and as a string otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JsonInt(pub BigInt);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if let Ok(v) = i64::try_from(&self.0) {
            s.serialize_i64(v)
        } else if let Ok(v) = u64::try_from(&self.0) {
            s.serialize_u64(v)
        } else {
            s.serialize_str(&self.0.to_string())
        }
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct IntVisitor;

        impl Visitor<'_> for IntVisitor {
            type Value = JsonInt;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a decimal string")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<JsonInt, E> {
                Ok(JsonInt(v.into()))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<JsonInt, E> {
                Ok(JsonInt(v.into()))
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<JsonInt, E> {
                Err(E::custom(format!(
                    "{v} is not an exact integer; write integers beyond 64 bits as strings"
                )))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<JsonInt, E> {
                v.trim()
                    .parse::<BigInt>()
                    .map(JsonInt)
                    .map_err(|_| E::custom(format!("`{v}` is not a decimal integer")))
            }
        }

        d.deserialize_any(IntVisitor)
    }
}

/// A recurrence as supplied by a user.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RecurrenceSpec {
    #[serde(default)]
    pub name: Option<String>,
    pub alphas: Vec<JsonInt>,
    pub initial: Vec<JsonInt>,
    #[serde(default, rename = "signed", skip_serializing_if = "Option::is_none")]
    pub signed_hint: Option<bool>,
}

impl RecurrenceSpec {
    pub fn from_recurrence(rec: &Recurrence) -> Self {
        RecurrenceSpec {
            name: rec.name().map(str::to_owned),
            alphas: rec.alphas().iter().cloned().map(JsonInt).collect(),
            initial: rec.initial().iter().cloned().map(JsonInt).collect(),
            signed_hint: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let invalid = |field: &str, message: String| {
            Err(Error::Validation {
                field: field.into(),
                message: format!("{message} ({CONVENTION})"),
            })
        };
        if self.alphas.is_empty() {
            return invalid("alphas", "at least one coefficient is required".into());
        }
        if self.alphas.len() != self.initial.len() {
            return invalid(
                "initial",
                format!(
                    "{} coefficients need {} initial terms, got {}",
                    self.alphas.len(),
                    self.alphas.len(),
                    self.initial.len()
                ),
            );
        }
        if self.alphas.last().is_some_and(|a| a.0.is_zero()) {
            return invalid("alphas", "the last coefficient a_d must be nonzero".into());
        }
        Ok(())
    }

    pub fn to_recurrence(&self) -> Result<Recurrence> {
        self.validate()?;
        let rec = Recurrence::new(
            self.alphas.iter().map(|a| a.0.clone()).collect(),
            self.initial.iter().map(|s| s.0.clone()).collect(),
        )?;
        Ok(match &self.name {
            Some(name) => rec.with_name(name),
            None => rec,
        })
    }
}

/// Parses and validates a JSON specification.
pub fn parse_spec(input: &str) -> Result<RecurrenceSpec> {
    let spec: RecurrenceSpec = serde_json::from_str(input).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    spec.validate()?;
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valid_specs() {
        let fib = parse_spec(r#"{"name":"fibonacci","alphas":[-1,-1],"initial":[0,1]}"#).unwrap();
        assert_eq!(fib.name.as_deref(), Some("fibonacci"));
        let rec = fib.to_recurrence().unwrap();
        assert_eq!(rec.oracle_terms(6)[6], 8.into());

        let nara = parse_spec(r#"{"name":"narayana","alphas":[-1,0,-1],"initial":[1,1,1]}"#);
        assert_eq!(nara.unwrap().to_recurrence().unwrap().order(), 3);
    }

    #[test]
    fn zero_last_coefficient() {
        let err = parse_spec(r#"{"alphas":[-1,0],"initial":[1,1]}"#).unwrap_err();
        let Error::Validation { field, message } = err else {
            panic!("expected a validation error");
        };
        assert_eq!(field, "alphas");
        assert!(message.contains("Fibonacci is alphas [-1, -1]"));
    }

    #[test]
    fn length_mismatch() {
        assert!(matches!(
            parse_spec(r#"{"alphas":[-1,-1],"initial":[1]}"#),
            Err(Error::Validation { .. })
        ));
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = parse_spec("{\n  \"alphas\": [-1, -1,\n}").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err:?}");
        assert!(matches!(
            parse_spec(r#"{"alphas":[1.5],"initial":[1]}"#),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_spec(r#"{"alphas":[-1],"initial":[1],"extra":1}"#),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn big_integers_as_strings() {
        let spec =
            parse_spec(r#"{"alphas":["-123456789012345678901234567890"],"initial":["7"]}"#)
                .unwrap();
        let big: BigInt = "-123456789012345678901234567890".parse().unwrap();
        assert_eq!(spec.alphas[0].0, big);
        let json = serde_json::to_string(&spec).unwrap();
        assert_eq!(
            json,
            r#"{"name":null,"alphas":["-123456789012345678901234567890"],"initial":[7]}"#
        );
        assert_eq!(parse_spec(&json).unwrap(), spec);
    }
}
