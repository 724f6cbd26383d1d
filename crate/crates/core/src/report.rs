//! JSON-lines records for the verification sweeps.
//!
//! Every integer field is serialized as an exact decimal string, so reports
//! carry no numeric-width ambiguity, and records are emitted in canonical
//! order (ascending prime / pair) so identical runs are byte-identical.

use std::io::{self, Write};

use num_bigint::BigInt;
use serde::Serialize;

/// serde adapter: integers (including `BigInt`) as exact decimal strings.
pub mod string_int {
    use std::fmt::Display;
    use std::str::FromStr;

    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<T: ToString, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, T, D>(d: D) -> Result<T, D::Error>
    where
        T: FromStr,
        T::Err: Display,
        D: Deserializer<'de>,
    {
        String::deserialize(d)?.parse().map_err(de::Error::custom)
    }
}

/// Serialize a slice of records as JSON lines.
pub fn write_jsonl<T: Serialize, W: Write>(records: &[T], out: &mut W) -> io::Result<()> {
    for record in records {
        serde_json::to_writer(&mut *out, record)?;
        writeln!(out)?;
    }
    Ok(())
}

/// One multiplicativity check τ(mn) = τ(m)τ(n) for a coprime pair m <= n.
#[derive(Debug, Clone, Serialize)]
pub struct CoprimePairRecord {
    pub law: &'static str,
    #[serde(with = "string_int")]
    pub m: u64,
    #[serde(with = "string_int")]
    pub n: u64,
    #[serde(with = "string_int")]
    pub lhs: BigInt,
    #[serde(with = "string_int")]
    pub rhs: BigInt,
    pub pass: bool,
}

/// One Hecke recursion check τ(p^{α+2}) = τ(p)τ(p^{α+1}) − p¹¹τ(p^α).
#[derive(Debug, Clone, Serialize)]
pub struct PrimePowerRecord {
    pub law: &'static str,
    #[serde(with = "string_int")]
    pub p: u64,
    #[serde(with = "string_int")]
    pub alpha: u32,
    #[serde(with = "string_int")]
    pub lhs: BigInt,
    #[serde(with = "string_int")]
    pub rhs: BigInt,
    pub pass: bool,
}

/// One record of the sweep over both laws of the multiplicativity
/// conjecture; serializes transparently as whichever record it wraps.
#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum ConjectureOneRecord {
    Multiplicativity(CoprimePairRecord),
    HeckeRecursion(PrimePowerRecord),
}

impl ConjectureOneRecord {
    pub fn pass(&self) -> bool {
        match self {
            ConjectureOneRecord::Multiplicativity(r) => r.pass,
            ConjectureOneRecord::HeckeRecursion(r) => r.pass,
        }
    }
}

/// One bound check τ(p)² < 4p¹¹, stored in squared integer form.
#[derive(Debug, Clone, Serialize)]
pub struct DeligneRecord {
    pub law: &'static str,
    #[serde(with = "string_int")]
    pub p: u64,
    /// τ(p)², the left side of the squared bound.
    #[serde(with = "string_int")]
    pub lhs: BigInt,
    /// 4p¹¹, the right side of the squared bound.
    #[serde(with = "string_int")]
    pub rhs: BigInt,
    pub pass: bool,
}

/// One eigenform identity check a(pn) + p¹¹a(n/p) = τ(p)·a(n).
#[derive(Debug, Clone, Serialize)]
pub struct EigenformRecord {
    pub law: &'static str,
    #[serde(with = "string_int")]
    pub p: u64,
    #[serde(with = "string_int")]
    pub n: u64,
    #[serde(with = "string_int")]
    pub lhs: BigInt,
    #[serde(with = "string_int")]
    pub rhs: BigInt,
    pub pass: bool,
}
