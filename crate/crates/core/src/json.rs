//! Wire representation of arbitrary-precision integers.
//!
//! Integers with magnitude below 2^53 are written as JSON numbers, larger ones
//! as decimal strings. Both forms are accepted on input.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

const SAFE_BITS: u64 = 53;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JsonInt(pub BigInt);

impl From<BigInt> for JsonInt {
    fn from(value: BigInt) -> Self {
        JsonInt(value)
    }
}

impl From<&BigInt> for JsonInt {
    fn from(value: &BigInt) -> Self {
        JsonInt(value.clone())
    }
}

impl From<JsonInt> for BigInt {
    fn from(value: JsonInt) -> Self {
        value.0
    }
}

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if self.0.abs().bits() <= SAFE_BITS {
            serializer.serialize_i64(self.0.to_i64().expect("fits in i64"))
        } else {
            serializer.serialize_str(&self.0.to_string())
        }
    }
}

struct JsonIntVisitor;

impl<'de> Visitor<'de> for JsonIntVisitor {
    type Value = JsonInt;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer or a decimal integer string")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<JsonInt, E> {
        Ok(JsonInt(BigInt::from(v)))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<JsonInt, E> {
        Ok(JsonInt(BigInt::from(v)))
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> Result<JsonInt, E> {
        Err(E::custom(format!("expected an integer, found {v}")))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<JsonInt, E> {
        BigInt::from_str(v.trim())
            .map(JsonInt)
            .map_err(|_| E::custom(format!("invalid integer string {v:?}")))
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        deserializer.deserialize_any(JsonIntVisitor)
    }
}

pub type JsonVector = Vec<JsonInt>;
pub type JsonMatrix = Vec<Vec<JsonInt>>;

pub fn vector_to_json(v: &[BigInt]) -> JsonVector {
    v.iter().map(JsonInt::from).collect()
}

pub fn vector_from_json(v: &[JsonInt]) -> Vec<BigInt> {
    v.iter().map(|x| x.0.clone()).collect()
}

pub fn matrix_to_json(m: &IntMatrix) -> JsonMatrix {
    (0..m.rows()).map(|i| vector_to_json(m.row(i))).collect()
}

pub fn matrix_from_json(rows: &[Vec<JsonInt>]) -> Result<IntMatrix> {
    if rows.is_empty() {
        return Err(Error::Invalid("empty matrix".into()));
    }
    IntMatrix::from_rows(rows.iter().map(|r| vector_from_json(r)).collect())
}

/// Parses a vector literal such as `"[1, -2, 3]"`.
pub fn parse_vector(text: &str) -> Result<Vec<BigInt>> {
    let v: JsonVector =
        serde_json::from_str(text).map_err(|e| Error::Invalid(format!("vector {text:?}: {e}")))?;
    Ok(vector_from_json(&v))
}

/// Parses a matrix literal such as `"[[1,0],[0,1]]"`.
pub fn parse_matrix(text: &str) -> Result<IntMatrix> {
    let m: JsonMatrix =
        serde_json::from_str(text).map_err(|e| Error::Invalid(format!("matrix {text:?}: {e}")))?;
    matrix_from_json(&m)
}
