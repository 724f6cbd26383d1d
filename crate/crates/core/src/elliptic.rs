//! Reduction of short-Weierstrass curves modulo p: good/bad classification
//! by the discriminant, and affine point counts over F_p producing a_p.
//!
//! The count convention is the affine one: `affine_count` is the number of
//! pairs (x, y) in F_p × F_p with y² = x³ + ax + b, and a_p is defined by
//! affine_count = p − a_p at good primes.  The projective convention
//! p + 1 − a_p differs from this by the single point at infinity and yields
//! the same a_p.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::padic::legendre_symbol;
use crate::primes::{is_prime, primes_up_to};
use crate::report::string_int;
use crate::{Error, Result};

/// y² = x³ + ax + b with integer a, b and nonzero discriminant
/// −16(4a³ + 27b²).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveSpec {
    a: BigInt,
    b: BigInt,
    discriminant: BigInt,
}

impl CurveSpec {
    pub fn new(a: BigInt, b: BigInt) -> Result<Self> {
        let discriminant = BigInt::from(-16)
            * (BigInt::from(4) * a.pow(3) + BigInt::from(27) * b.pow(2));
        if discriminant.is_zero() {
            return Err(Error::SingularCurve);
        }
        Ok(Self { a, b, discriminant })
    }

    pub fn from_i64(a: i64, b: i64) -> Result<Self> {
        Self::new(BigInt::from(a), BigInt::from(b))
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn discriminant(&self) -> &BigInt {
        &self.discriminant
    }

    /// Coefficients reduced to canonical residues mod p.
    fn reduced(&self, p: u64) -> (u64, u64) {
        let m = BigInt::from(p);
        (
            self.a.mod_floor(&m).to_u64().expect("residue fits u64"),
            self.b.mod_floor(&m).to_u64().expect("residue fits u64"),
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ReductionKind {
    Good,
    Bad,
}

/// Reduction of a curve at one prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionData {
    #[serde(with = "string_int")]
    pub p: u64,
    pub kind: ReductionKind,
    #[serde(with = "string_int")]
    pub affine_count: u64,
    /// p − affine_count; present only at good primes.
    #[serde(skip_serializing_if = "Option::is_none", with = "opt_string_int")]
    pub a_p: Option<i64>,
}

mod opt_string_int {
    use serde::Serializer;

    pub fn serialize<S: Serializer>(v: &Option<i64>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => s.serialize_str(&v.to_string()),
            None => s.serialize_none(),
        }
    }
}

/// Classify good/bad by p ∤ discriminant and count affine solutions by
/// exhaustive enumeration over F_p × F_p; at good primes a_p = p − count.
pub fn reduce_curve(curve: &CurveSpec, p: u64) -> Result<ReductionData> {
    if !is_prime(p) {
        return Err(Error::NotPrime { n: p });
    }
    if p >= (1 << 32) {
        return Err(Error::PrimeTooLarge { p });
    }
    let good = !curve.discriminant().mod_floor(&BigInt::from(p)).is_zero();
    let affine_count = affine_count_enumeration(curve, p)?;
    Ok(ReductionData {
        p,
        kind: if good { ReductionKind::Good } else { ReductionKind::Bad },
        affine_count,
        a_p: good.then(|| p as i64 - affine_count as i64),
    })
}

/// Naive count: test every pair (x, y) in F_p × F_p against the congruence
/// y² ≡ x³ + ax + b.  This is the definitional route and the oracle for
/// [`affine_count_character`].
pub fn affine_count_enumeration(curve: &CurveSpec, p: u64) -> Result<u64> {
    if p >= (1 << 32) {
        return Err(Error::PrimeTooLarge { p });
    }
    let (a, b) = curve.reduced(p);
    let mut count = 0u64;
    for x in 0..p {
        let rhs = ((x * x) % p * x % p + a * x % p + b) % p;
        for y in 0..p {
            if (y * y) % p == rhs {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Character count: for odd p the fiber over x has 1 + χ(x³ + ax + b)
/// points, χ the quadratic character with χ(0) = 0.  Falls back to the
/// enumeration at p = 2, where the character argument does not apply.
pub fn affine_count_character(curve: &CurveSpec, p: u64) -> Result<u64> {
    if p >= (1 << 32) {
        return Err(Error::PrimeTooLarge { p });
    }
    if p == 2 {
        return affine_count_enumeration(curve, p);
    }
    let (a, b) = curve.reduced(p);
    let mut count = 0i64;
    for x in 0..p {
        let rhs = ((x * x) % p * x % p + a * x % p + b) % p;
        count += 1 + legendre_symbol(rhs, p) as i64;
    }
    Ok(count as u64)
}

/// [`reduce_curve`] at every prime p <= p_max, ascending.  Good records are
/// checked against the Hasse-style bound a_p² <= 4p on the way out.
pub fn ap_sweep(curve: &CurveSpec, p_max: u64) -> Result<Vec<ReductionData>> {
    let mut records = Vec::new();
    for p in primes_up_to(p_max) {
        let record = reduce_curve(curve, p)?;
        if let Some(a_p) = record.a_p {
            assert!(
                a_p * a_p <= 4 * p as i64,
                "a_p bound violated at p = {p}: a_p = {a_p}"
            );
        }
        records.push(record);
    }
    Ok(records)
}
