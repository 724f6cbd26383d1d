//! The classical congruences for τ(p) and their verification sweeps.
//!
//! Exactly three laws carry an explicit right-hand side here:
//!
//! ```text
//! τ(p) ≡ 1 + p¹¹ (mod 691)   p ≠ 691
//! τ(p) ≡ 1 + p¹¹ (mod 2⁵)    p ≠ 2
//! τ(p) ≡ 1 + p   (mod 3)     p ≠ 3
//! ```
//!
//! Other classical moduli (2¹¹, 3⁷, 5³, 7, 23) have no formula encoded
//! here; they are reachable only through [`find_counterexample_scan`],
//! which demonstrates that a candidate shape fails rather than asserting a
//! guessed one.  Residues are reported in the canonical range [0, modulus).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::primes::primes_up_to;
use crate::report::string_int;
use crate::tau::TauTable;
use crate::Result;

/// Right-hand side shape of a congruence law.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RhsForm {
    /// 1 + p¹¹
    OnePlusP11,
    /// 1 + p
    OnePlusP,
}

impl RhsForm {
    pub fn eval(&self, p: u64) -> BigInt {
        match self {
            RhsForm::OnePlusP11 => BigInt::from(1) + BigInt::from(p).pow(11),
            RhsForm::OnePlusP => BigInt::from(1 + p),
        }
    }
}

/// One congruence law: τ(p) ≡ rhs_form(p) mod modulus for every prime p
/// outside the excluded set.
///
/// Only the three constructors below exist — candidate shapes at other
/// moduli go through [`find_counterexample_scan`] and are never asserted
/// as laws.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceLaw {
    name: &'static str,
    modulus: u64,
    rhs_form: RhsForm,
    excluded_primes: &'static [u64],
}

impl CongruenceLaw {
    pub fn name(&self) -> &'static str {
        self.name
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn rhs_form(&self) -> RhsForm {
        self.rhs_form
    }

    pub fn excluded_primes(&self) -> &'static [u64] {
        self.excluded_primes
    }

    /// τ(p) ≡ 1 + p¹¹ (mod 691), p ≠ 691.
    pub fn mod_691() -> Self {
        CongruenceLaw {
            name: "congruence-691",
            modulus: 691,
            rhs_form: RhsForm::OnePlusP11,
            excluded_primes: &[691],
        }
    }

    /// τ(p) ≡ 1 + p¹¹ (mod 2⁵), p ≠ 2.
    pub fn mod_32() -> Self {
        CongruenceLaw {
            name: "congruence-32",
            modulus: 32,
            rhs_form: RhsForm::OnePlusP11,
            excluded_primes: &[2],
        }
    }

    /// τ(p) ≡ 1 + p (mod 3), p ≠ 3.
    pub fn mod_3() -> Self {
        CongruenceLaw {
            name: "congruence-3",
            modulus: 3,
            rhs_form: RhsForm::OnePlusP,
            excluded_primes: &[3],
        }
    }

    /// The three laws with explicit formulas, in a fixed order.
    pub fn classical() -> [Self; 3] {
        [Self::mod_691(), Self::mod_32(), Self::mod_3()]
    }
}

/// One checked instance of a law at a prime, with both sides reduced to
/// the canonical residue in [0, modulus).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub law: String,
    #[serde(with = "string_int")]
    pub p: u64,
    #[serde(with = "string_int")]
    pub lhs_residue: u64,
    #[serde(with = "string_int")]
    pub rhs_residue: u64,
    #[serde(with = "string_int")]
    pub modulus: u64,
    pub pass: bool,
}

impl VerificationReport {
    /// Recompute the pass flag from the stored residues.
    pub fn consistent(&self) -> bool {
        self.lhs_residue < self.modulus
            && self.rhs_residue < self.modulus
            && self.pass == (self.lhs_residue == self.rhs_residue)
    }
}

fn canonical_residue(x: &BigInt, modulus: u64) -> u64 {
    x.mod_floor(&BigInt::from(modulus))
        .to_u64()
        .expect("canonical residue fits u64")
}

/// Sweep a law over every prime p <= max_n outside its excluded set, in
/// ascending order.  Failures become failing records, not errors.
pub fn verify_congruence(law: &CongruenceLaw, table: &TauTable) -> Result<Vec<VerificationReport>> {
    let mut records = Vec::new();
    for p in primes_up_to(table.max_n() as u64) {
        if law.excluded_primes.contains(&p) {
            continue;
        }
        let lhs_residue = canonical_residue(table.get(p as usize)?, law.modulus);
        let rhs_residue = canonical_residue(&law.rhs_form.eval(p), law.modulus);
        records.push(VerificationReport {
            law: law.name.to_string(),
            p,
            lhs_residue,
            rhs_residue,
            modulus: law.modulus,
            pass: lhs_residue == rhs_residue,
        });
    }
    Ok(records)
}

/// Smallest prime p <= max_n violating τ(p) ≡ rhs_form(p) mod m, or None
/// when the sweep passes.  Primes dividing m are skipped — they are the
/// natural bad primes of a candidate law, and the three genuine laws must
/// come back clean here.
pub fn find_counterexample_scan(
    modulus: u64,
    rhs_form: RhsForm,
    table: &TauTable,
) -> Result<Option<u64>> {
    for p in primes_up_to(table.max_n() as u64) {
        if modulus.is_multiple_of(p) {
            continue;
        }
        let lhs = canonical_residue(table.get(p as usize)?, modulus);
        let rhs = canonical_residue(&rhs_form.eval(p), modulus);
        if lhs != rhs {
            return Ok(Some(p));
        }
    }
    Ok(None)
}
