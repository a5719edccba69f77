//! JSON helpers for numbers that may be infinite.
//!
//! JSON has no representation for infinities, so unbounded bounds are written
//! as the strings `"+inf"` / `"-inf"`. Finite numbers use serde_json's
//! shortest round-trip formatting and re-parse to the same bits.

use serde::{de, Deserialize, Deserializer, Serializer};

pub fn serialize<S: Serializer>(value: &f64, ser: S) -> Result<S::Ok, S::Error> {
    if value.is_finite() {
        ser.serialize_f64(*value)
    } else if value.is_nan() {
        ser.serialize_str("nan")
    } else if *value > 0.0 {
        ser.serialize_str("+inf")
    } else {
        ser.serialize_str("-inf")
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Raw {
    Num(f64),
    Text(String),
}

pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<f64, D::Error> {
    match Raw::deserialize(de)? {
        Raw::Num(v) => Ok(v),
        Raw::Text(s) => match s.as_str() {
            "+inf" | "inf" => Ok(f64::INFINITY),
            "-inf" => Ok(f64::NEG_INFINITY),
            "nan" => Ok(f64::NAN),
            other => Err(de::Error::custom(format!(
                "expected a number, got {other:?}"
            ))),
        },
    }
}
