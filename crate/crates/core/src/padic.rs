//! The local toolkit: p-adic valuations, finite-precision p-adic numbers,
//! Hensel lifting, and (in)solubility certificates over Z_p and Q_p.
//!
//! The workhorse oracle is [`roots_mod_pk`], an exhaustive enumeration of
//! the roots of an integer polynomial modulo p^k; everything else is either
//! checked against it or produces a certificate a caller can re-verify by
//! direct modular evaluation.  Certificates never overclaim: a singular
//! residue that survives precision escalation is reported inconclusive,
//! not guessed.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::primes::is_prime;
use crate::report::string_int;
use crate::{Error, Result};

/// Residue-enumeration ceiling for the brute-force oracle.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 10_000_000;

/// The p-adic valuation v_p on Q^×, with |x|_p = p^{−v_p(x)}.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Valuation {
    p: u64,
}

impl Valuation {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime { n: p });
        }
        Ok(Self { p })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    /// Exponent of p in a nonzero integer.
    pub fn of_int(&self, x: &BigInt) -> Result<i64> {
        if x.is_zero() {
            return Err(Error::ValuationOfZero);
        }
        let p = BigInt::from(self.p);
        let mut v = 0i64;
        let mut rest = x.clone();
        loop {
            let (q, r) = rest.div_rem(&p);
            if !r.is_zero() {
                return Ok(v);
            }
            rest = q;
            v += 1;
        }
    }

    /// v_p(x) on a nonzero rational: numerator exponent minus denominator
    /// exponent.  Zero has valuation +inf and is rejected.
    pub fn of_rational(&self, x: &BigRational) -> Result<i64> {
        if x.is_zero() {
            return Err(Error::ValuationOfZero);
        }
        Ok(self.of_int(x.numer())? - self.of_int(x.denom())?)
    }

    /// |x|_p = p^{−v_p(x)} as an exact rational; |0|_p = 0.
    pub fn abs(&self, x: &BigRational) -> BigRational {
        if x.is_zero() {
            return BigRational::zero();
        }
        let v = self.of_rational(x).expect("x is nonzero");
        let pow = BigInt::from(self.p).pow(v.unsigned_abs() as u32);
        if v >= 0 {
            BigRational::new(BigInt::one(), pow)
        } else {
            BigRational::from_integer(pow)
        }
    }
}

/// A p-adic number at finite precision: the value p^v·u with the unit u
/// known modulo p^k, i.e. the value is pinned modulo p^{v+k}.
///
/// Cancellation in addition produces the honest state 0 + O(p^A) rather
/// than claiming an exact zero; no operation silently increases claimed
/// precision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicApprox {
    p: u64,
    repr: PadicRepr,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum PadicRepr {
    /// Exactly zero.
    Zero,
    /// Indistinguishable from zero at absolute precision `abs`: 0 + O(p^abs).
    ZeroToPrecision { abs: i64 },
    /// p^valuation · unit + O(p^{valuation + precision}), with unit in
    /// [1, p^precision) coprime to p.
    Unit { valuation: i64, unit: BigUint, precision: u32 },
}

impl PadicApprox {
    pub fn zero(p: u64) -> Result<Self> {
        Valuation::new(p)?;
        Ok(Self { p, repr: PadicRepr::Zero })
    }

    /// The integer x known to relative precision k (x = p^v·u with u known
    /// mod p^k).
    pub fn from_integer(p: u64, x: &BigInt, precision: u32) -> Result<Self> {
        Self::from_rational(p, &BigRational::from_integer(x.clone()), precision)
    }

    /// A rational known to relative precision k.
    pub fn from_rational(p: u64, x: &BigRational, precision: u32) -> Result<Self> {
        let val = Valuation::new(p)?;
        if precision == 0 {
            return Err(Error::ZeroPrecision);
        }
        if x.is_zero() {
            return Ok(Self { p, repr: PadicRepr::Zero });
        }
        let v = val.of_rational(x)?;
        let modulus = BigUint::from(p).pow(precision);
        let unit = unit_residue(x, v, p, &modulus)?;
        Ok(Self {
            p,
            repr: PadicRepr::Unit { valuation: v, unit, precision },
        })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    /// v_p of the value; None for exact zero and for values
    /// indistinguishable from zero.
    pub fn valuation(&self) -> Option<i64> {
        match &self.repr {
            PadicRepr::Unit { valuation, .. } => Some(*valuation),
            _ => None,
        }
    }

    /// Relative precision of the unit part, when there is one.
    pub fn precision(&self) -> Option<u32> {
        match &self.repr {
            PadicRepr::Unit { precision, .. } => Some(*precision),
            _ => None,
        }
    }

    /// The unit residue, when there is one.
    pub fn unit(&self) -> Option<&BigUint> {
        match &self.repr {
            PadicRepr::Unit { unit, .. } => Some(unit),
            _ => None,
        }
    }

    pub fn is_exact_zero(&self) -> bool {
        matches!(self.repr, PadicRepr::Zero)
    }

    /// Product; valuations add exactly, the unit is known to the smaller
    /// of the two relative precisions.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_prime(other)?;
        let repr = match (&self.repr, &other.repr) {
            (PadicRepr::Zero, _) | (_, PadicRepr::Zero) => PadicRepr::Zero,
            (PadicRepr::ZeroToPrecision { abs }, PadicRepr::ZeroToPrecision { abs: abs2 }) => {
                PadicRepr::ZeroToPrecision { abs: abs + abs2 }
            }
            (PadicRepr::ZeroToPrecision { abs }, PadicRepr::Unit { valuation, .. })
            | (PadicRepr::Unit { valuation, .. }, PadicRepr::ZeroToPrecision { abs }) => {
                PadicRepr::ZeroToPrecision { abs: abs + valuation }
            }
            (
                PadicRepr::Unit { valuation: v1, unit: u1, precision: k1 },
                PadicRepr::Unit { valuation: v2, unit: u2, precision: k2 },
            ) => {
                let k = (*k1).min(*k2);
                let modulus = BigUint::from(self.p).pow(k);
                PadicRepr::Unit {
                    valuation: v1 + v2,
                    unit: (u1 * u2) % modulus,
                    precision: k,
                }
            }
        };
        Ok(Self { p: self.p, repr })
    }

    /// Sum; the result is pinned modulo p^min(v₁+k₁, v₂+k₂), and a full
    /// cancellation is reported as 0 + O(p^A), never as an exact zero.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_prime(other)?;
        let repr = match (&self.repr, &other.repr) {
            (PadicRepr::Zero, r) | (r, PadicRepr::Zero) => r.clone(),
            (PadicRepr::ZeroToPrecision { abs }, PadicRepr::ZeroToPrecision { abs: abs2 }) => {
                PadicRepr::ZeroToPrecision { abs: *abs.min(abs2) }
            }
            (PadicRepr::ZeroToPrecision { abs }, u @ PadicRepr::Unit { .. })
            | (u @ PadicRepr::Unit { .. }, PadicRepr::ZeroToPrecision { abs }) => {
                let PadicRepr::Unit { valuation, unit, precision } = u else {
                    unreachable!()
                };
                let abs_known = (*abs).min(valuation + *precision as i64);
                if *valuation >= abs_known {
                    PadicRepr::ZeroToPrecision { abs: abs_known }
                } else {
                    let k = (abs_known - valuation) as u32;
                    let modulus = BigUint::from(self.p).pow(k);
                    PadicRepr::Unit {
                        valuation: *valuation,
                        unit: unit % modulus,
                        precision: k,
                    }
                }
            }
            (
                PadicRepr::Unit { valuation: v1, unit: u1, precision: k1 },
                PadicRepr::Unit { valuation: v2, unit: u2, precision: k2 },
            ) => {
                let abs_known = (v1 + *k1 as i64).min(v2 + *k2 as i64);
                let vmin = (*v1).min(*v2);
                // both terms as residues of value/p^vmin, mod p^(abs−vmin)
                let k = (abs_known - vmin) as u32;
                let modulus = BigUint::from(self.p).pow(k);
                let shift = |v: i64, u: &BigUint| {
                    (u * BigUint::from(self.p).pow((v - vmin) as u32)) % &modulus
                };
                let sum = (shift(*v1, u1) + shift(*v2, u2)) % &modulus;
                if sum.is_zero() {
                    PadicRepr::ZeroToPrecision { abs: abs_known }
                } else {
                    let extra = trailing_p_power(&sum, self.p);
                    let valuation = vmin + extra as i64;
                    let rem = (abs_known - valuation) as u32;
                    let unit = (&sum / BigUint::from(self.p).pow(extra))
                        % BigUint::from(self.p).pow(rem);
                    PadicRepr::Unit { valuation, unit, precision: rem }
                }
            }
        };
        Ok(Self { p: self.p, repr })
    }

    pub fn neg(&self) -> Self {
        let repr = match &self.repr {
            PadicRepr::Unit { valuation, unit, precision } => {
                let modulus = BigUint::from(self.p).pow(*precision);
                PadicRepr::Unit {
                    valuation: *valuation,
                    unit: (&modulus - unit % &modulus) % &modulus,
                    precision: *precision,
                }
            }
            other => other.clone(),
        };
        Self { p: self.p, repr }
    }

    fn check_prime(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return Err(Error::PrimeMismatch { left: self.p, right: other.p });
        }
        Ok(())
    }
}

impl fmt::Display for PadicApprox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            PadicRepr::Zero => write!(f, "0"),
            PadicRepr::ZeroToPrecision { abs } => write!(f, "O({}^{})", self.p, abs),
            PadicRepr::Unit { valuation, unit, precision } => write!(
                f,
                "{}*{}^{} + O({}^{})",
                unit,
                self.p,
                valuation,
                self.p,
                valuation + *precision as i64
            ),
        }
    }
}

/// Number of factors of p in a nonzero BigUint.
fn trailing_p_power(x: &BigUint, p: u64) -> u32 {
    let p = BigUint::from(p);
    let mut v = 0u32;
    let mut rest = x.clone();
    loop {
        let (q, r) = rest.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        rest = q;
        v += 1;
    }
}

/// Unit part of x/p^v as a residue mod `modulus` (a power of p); the
/// denominator is inverted modulo p^k.
fn unit_residue(x: &BigRational, v: i64, p: u64, modulus: &BigUint) -> Result<BigUint> {
    let p_big = BigInt::from(p);
    let val = Valuation::new(p)?;
    let mut num = x.numer().clone();
    let mut den = x.denom().clone();
    let vn = val.of_int(&num)?;
    let vd = val.of_int(&den)?;
    debug_assert_eq!(v, vn - vd);
    num /= p_big.pow(vn as u32);
    den /= p_big.pow(vd as u32);
    let m_int = BigInt::from(modulus.clone());
    let num_res = num.mod_floor(&m_int);
    let den_res = den.mod_floor(&m_int);
    let den_inv = mod_inverse(&den_res, &m_int).expect("denominator unit is invertible");
    Ok((num_res * den_inv)
        .mod_floor(&m_int)
        .to_biguint()
        .expect("canonical residue is non-negative"))
}

/// Inverse of a modulo m when gcd(a, m) = 1.
fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// Integer polynomial c₀ + c₁x + … + c_d x^d with nonzero leading
/// coefficient; coefficients are stored constant-first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    /// Constant-first coefficients; trailing zeros are trimmed and the zero
    /// polynomial is rejected.
    pub fn new(mut coeffs: Vec<BigInt>) -> Result<Self> {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(Self { coeffs })
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Parse the comma-separated CLI syntax, constant term first:
    /// "-2,0,1" is x² − 2.
    pub fn parse(s: &str) -> Result<Self> {
        let coeffs = s
            .split(',')
            .map(|t| {
                t.trim().parse::<BigInt>().map_err(|_| Error::MalformedPolynomial {
                    reason: format!("bad coefficient {t:?}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(coeffs)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    /// Exact evaluation by Horner.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// f(r) mod m by Horner over canonical residues.
    pub fn eval_mod(&self, r: &BigUint, m: &BigUint) -> BigUint {
        let m_int = BigInt::from(m.clone());
        let r_int = BigInt::from(r.clone());
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = (acc * &r_int + c).mod_floor(&m_int);
        }
        acc.to_biguint().expect("mod_floor is non-negative")
    }

    /// Formal derivative; None for constants.
    pub fn derivative(&self) -> Option<IntPolynomial> {
        if self.degree() == 0 {
            return None;
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i as u64))
            .collect();
        IntPolynomial::new(coeffs).ok()
    }

    /// Horner over u64 residues; valid when (m−1)² + (m−1) fits in u64,
    /// i.e. for any m below 2^32.
    fn eval_mod_u64(&self, r: u64, m: u64, reduced: &[u64]) -> u64 {
        debug_assert!(m < (1 << 32));
        debug_assert_eq!(reduced.len(), self.coeffs.len());
        let mut acc = 0u64;
        for c in reduced.iter().rev() {
            acc = (acc * r + c) % m;
        }
        acc
    }

    fn coeffs_mod_u64(&self, m: u64) -> Vec<u64> {
        let m_int = BigInt::from(m);
        self.coeffs
            .iter()
            .map(|c| c.mod_floor(&m_int).to_u64().expect("residue fits u64"))
            .collect()
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("{c}*x"),
                _ => format!("{c}*x^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// p^k as both a check against the budget and a usable modulus.
fn modulus_within_budget(p: u64, k: u32, budget: u64) -> Result<BigUint> {
    let mut m: u128 = 1;
    for _ in 0..k {
        m = m.saturating_mul(p as u128);
        if m > budget as u128 {
            return Err(Error::EnumerationBudget { needed: m, budget });
        }
    }
    Ok(BigUint::from(m as u64))
}

/// All residues r in [0, p^k) with f(r) ≡ 0 mod p^k, by exhaustive
/// enumeration with the default budget.  This is the brute-force oracle
/// everything else in the module is checked against.
pub fn roots_mod_pk(f: &IntPolynomial, p: u64, k: u32) -> Result<Vec<u64>> {
    roots_mod_pk_with_budget(f, p, k, DEFAULT_ENUMERATION_BUDGET)
}

/// [`roots_mod_pk`] with an explicit enumeration budget.
pub fn roots_mod_pk_with_budget(
    f: &IntPolynomial,
    p: u64,
    k: u32,
    budget: u64,
) -> Result<Vec<u64>> {
    if !is_prime(p) {
        return Err(Error::NotPrime { n: p });
    }
    if k == 0 {
        return Err(Error::ZeroPrecision);
    }
    let modulus = modulus_within_budget(p, k, budget)?;
    let m = modulus.to_u64().expect("budget keeps p^k within u64");
    let mut roots = Vec::new();
    if m < (1 << 32) {
        let reduced = f.coeffs_mod_u64(m);
        for r in 0..m {
            if f.eval_mod_u64(r, m, &reduced) == 0 {
                roots.push(r);
            }
        }
    } else {
        for r in 0..m {
            if f.eval_mod(&BigUint::from(r), &modulus).is_zero() {
                roots.push(r);
            }
        }
    }
    Ok(roots)
}

/// Lift a simple root of f mod p (f(r) ≡ 0 and f'(r) ≢ 0 mod p) to the
/// unique root mod p^k congruent to r, by Newton steps that double the
/// precision each round.
pub fn hensel_lift(f: &IntPolynomial, p: u64, r: u64, k: u32) -> Result<BigUint> {
    if !is_prime(p) {
        return Err(Error::NotPrime { n: p });
    }
    if k == 0 {
        return Err(Error::ZeroPrecision);
    }
    let r = r % p;
    let p_int = BigInt::from(p);
    if !f.eval(&BigInt::from(r)).mod_floor(&p_int).is_zero() {
        return Err(Error::NotARootModP { r, p });
    }
    let Some(df) = f.derivative() else {
        return Err(Error::SingularRoot { r, p });
    };
    if df.eval(&BigInt::from(r)).mod_floor(&p_int).is_zero() {
        return Err(Error::SingularRoot { r, p });
    }

    let mut x = BigInt::from(r);
    let mut e = 1u32;
    while e < k {
        let e2 = (2 * e).min(k);
        let modulus = p_int.pow(e2);
        let fx = f.eval(&x).mod_floor(&modulus);
        let dfx = df.eval(&x).mod_floor(&modulus);
        let inv = mod_inverse(&dfx, &modulus).expect("f'(x) is a unit mod p^e");
        x = (x - fx * inv).mod_floor(&modulus);
        e = e2;
    }
    Ok(x
        .mod_floor(&p_int.pow(k))
        .to_biguint()
        .expect("canonical residue is non-negative"))
}

/// Verdict of a Z_p root search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RootVerdict {
    /// No roots mod p^k for some k within the effort bound, hence no roots
    /// in Z_p.
    CertifiedNo,
    /// A witness root, with the precision it was verified to.
    CertifiedYes,
    /// Every residue root stayed singular up to the effort bound.
    Inconclusive,
}

/// One exhaustive enumeration level of the search.
#[derive(Clone, Debug, Serialize)]
pub struct LevelScan {
    pub precision: u32,
    /// Residues mod p^precision, ascending, as decimal strings.
    pub roots: Vec<String>,
}

/// Outcome of [`has_root_in_zp`], with enough data to re-verify it.
#[derive(Clone, Debug, Serialize)]
pub struct RootSearchCertificate {
    #[serde(with = "string_int")]
    pub p: u64,
    /// Constant-first decimal coefficients of f.
    pub poly: Vec<String>,
    pub effort: u32,
    pub verdict: RootVerdict,
    /// For certified-no: the precision whose enumeration came back empty.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub empty_at_precision: Option<u32>,
    /// For certified-yes: the root witness, as a decimal residue.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_precision: Option<u32>,
    /// The enumerations performed, ascending precision.
    pub levels: Vec<LevelScan>,
}

impl RootSearchCertificate {
    pub fn witness_residue(&self) -> Option<BigUint> {
        self.witness.as_ref().map(|w| w.parse().expect("witness is decimal"))
    }
}

/// Decide whether f has a root in Z_p, escalating precision up to `effort`.
///
/// * certified-no as soon as some enumeration comes back empty (no root
///   mod p^k means no root in Z_p);
/// * certified-yes for an exact integer root found among the enumerated
///   residues, or for a residue satisfying the simple-root condition,
///   which is then Hensel-lifted to the full effort precision;
/// * inconclusive when every residue root remains singular through the
///   effort bound.
pub fn has_root_in_zp(f: &IntPolynomial, p: u64, effort: u32) -> Result<RootSearchCertificate> {
    if effort == 0 {
        return Err(Error::ZeroPrecision);
    }
    let poly: Vec<String> = f.coeffs().iter().map(|c| c.to_string()).collect();
    let mut levels = Vec::new();
    let df = f.derivative();
    let p_int = BigInt::from(p);

    let done = |verdict, empty_at, witness: Option<BigUint>, wk, levels: Vec<LevelScan>| {
        Ok(RootSearchCertificate {
            p,
            poly: poly.clone(),
            effort,
            verdict,
            empty_at_precision: empty_at,
            witness: witness.map(|w| w.to_string()),
            witness_precision: wk,
            levels,
        })
    };

    for k in 1..=effort {
        let roots = roots_mod_pk(f, p, k)?;
        levels.push(LevelScan {
            precision: k,
            roots: roots.iter().map(|r| r.to_string()).collect(),
        });
        if roots.is_empty() {
            return done(RootVerdict::CertifiedNo, Some(k), None, None, levels);
        }
        let pk = BigInt::from(p).pow(k);
        // exact integer roots first: they certify at every precision,
        // including the singular ones Hensel cannot touch
        for &r in &roots {
            let r_int = BigInt::from(r);
            if f.eval(&r_int).is_zero() || f.eval(&(&r_int - &pk)).is_zero() {
                return done(
                    RootVerdict::CertifiedYes,
                    None,
                    Some(BigUint::from(r)),
                    Some(k),
                    levels,
                );
            }
        }
        if k == 1 {
            // simplicity only depends on the residue mod p, so one pass
            // over the base level settles every Hensel-liftable case
            if let Some(df) = &df {
                for &r in &roots {
                    if !df.eval(&BigInt::from(r)).mod_floor(&p_int).is_zero() {
                        let witness = hensel_lift(f, p, r, effort)?;
                        return done(
                            RootVerdict::CertifiedYes,
                            None,
                            Some(witness),
                            Some(effort),
                            levels,
                        );
                    }
                }
            }
        }
    }
    done(RootVerdict::Inconclusive, None, None, None, levels)
}

/// Valuation comparison row of a [`MonicReductionCertificate`]: for the
/// term c_i x^i, `degree_gap = d − i` and the valuation of c_i.
#[derive(Clone, Debug, Serialize)]
pub struct TermComparison {
    pub index: usize,
    pub coeff_valuation: i64,
    pub degree_gap: usize,
}

/// Machine-checkable record that a monic integer polynomial has all its
/// Q_p-roots in Z_p: when v = v_p(x) <= −1, the leading term has valuation
/// d·v while term i has valuation ≥ i·v + v_p(c_i) > d·v, so f(x) ≠ 0.
#[derive(Clone, Debug, Serialize)]
pub struct MonicReductionCertificate {
    #[serde(with = "string_int")]
    pub p: u64,
    pub degree: usize,
    /// One row per nonzero non-leading term.
    pub rows: Vec<TermComparison>,
}

impl MonicReductionCertificate {
    /// Re-derive every inequality from the stored data alone: term i beats
    /// the leading term for all v <= −1 exactly when its coefficient is a
    /// p-adic integer and i < d.
    pub fn holds(&self) -> bool {
        self.rows
            .iter()
            .all(|row| {
                row.coeff_valuation >= 0
                    && row.degree_gap >= 1
                    && row.index + row.degree_gap == self.degree
            })
    }
}

/// Certificate that root search for a monic f over Q_p reduces to Z_p.
pub fn monic_root_in_qp_reduces_to_zp(
    f: &IntPolynomial,
    p: u64,
) -> Result<MonicReductionCertificate> {
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let val = Valuation::new(p)?;
    let d = f.degree();
    let rows = f
        .coeffs()
        .iter()
        .enumerate()
        .take(d)
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| {
            Ok(TermComparison {
                index: i,
                coeff_valuation: val.of_int(c)?,
                degree_gap: d - i,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MonicReductionCertificate { p, degree: d, rows })
}

/// Why a value is not a square in Q_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NonSquareReason {
    /// v_p(a) is odd.
    OddValuation,
    /// Odd p: the unit part is a quadratic non-residue mod p.
    NonResidueModP,
    /// p = 2: the unit part is not ≡ 1 mod 8.
    UnitNotOneMod8,
}

/// Outcome of [`is_square_in_qp`]: either a square-root witness for the
/// unit part, or the failing criterion.
#[derive(Clone, Debug, Serialize)]
pub struct SquareCertificate {
    #[serde(with = "string_int")]
    pub p: u64,
    /// The value whose square class was tested, as "numer/denom" or an
    /// integer.
    pub value: String,
    #[serde(with = "string_int")]
    pub valuation: i64,
    pub square: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<NonSquareReason>,
    /// Square root of the unit part a/p^v, modulo p^precision.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_precision: Option<u32>,
}

impl SquareCertificate {
    pub fn witness_residue(&self) -> Option<BigUint> {
        self.witness.as_ref().map(|w| w.parse().expect("witness is decimal"))
    }
}

/// Decide whether a nonzero rational is a square in Q_p: the valuation
/// must be even and the unit part a square in Z_p^× — a quadratic residue
/// mod p for odd p (then Hensel-lifted to `precision`), and ≡ 1 mod 8 for
/// p = 2 (then lifted by successive refinement from mod 8).
pub fn is_square_in_qp(a: &BigRational, p: u64, precision: u32) -> Result<SquareCertificate> {
    let val = Valuation::new(p)?;
    if precision == 0 {
        return Err(Error::ZeroPrecision);
    }
    if a.is_zero() {
        return Err(Error::ZeroSquareClass);
    }
    let v = val.of_rational(a)?;
    let value = a.to_string();
    let reject = |reason| SquareCertificate {
        p,
        value: value.clone(),
        valuation: v,
        square: false,
        reason: Some(reason),
        witness: None,
        witness_precision: None,
    };

    if v % 2 != 0 {
        return Ok(reject(NonSquareReason::OddValuation));
    }
    let modulus = BigUint::from(p).pow(precision);
    let unit = unit_residue(a, v, p, &modulus)?;

    let witness = if p == 2 {
        let u_mod_8 = unit_residue(a, v, p, &BigUint::from(8u32))?;
        if !u_mod_8.is_one() {
            return Ok(reject(NonSquareReason::UnitNotOneMod8));
        }
        sqrt_unit_mod_2k(&unit, precision)
    } else {
        let u_mod_p = (&unit % BigUint::from(p)).to_u64().expect("residue < p or p huge");
        if legendre_symbol(u_mod_p, p) != 1 {
            return Ok(reject(NonSquareReason::NonResidueModP));
        }
        let t = (1..p)
            .find(|t| mulmod(*t, *t, p) == u_mod_p)
            .expect("residues have explicit square roots");
        let f = IntPolynomial::new(vec![-BigInt::from(unit.clone()), BigInt::zero(), BigInt::one()])?;
        hensel_lift(&f, p, t, precision)?
    };
    debug_assert!((&witness * &witness) % &modulus == unit % &modulus);
    Ok(SquareCertificate {
        p,
        value,
        valuation: v,
        square: true,
        reason: None,
        witness: Some(witness.to_string()),
        witness_precision: Some(precision),
    })
}

/// Square root of u ≡ 1 mod 8 modulo 2^k, by one-bit refinement: if
/// x² ≢ u mod 2^{e+1}, replace x by x + 2^{e−1}.
fn sqrt_unit_mod_2k(unit: &BigUint, k: u32) -> BigUint {
    let mut x = BigUint::one();
    let mut e = 3u32.min(k);
    while e < k {
        let next = BigUint::from(2u32).pow(e + 1);
        if (&x * &x) % &next != unit % &next {
            x += BigUint::from(2u32).pow(e - 1);
        }
        e += 1;
    }
    x % BigUint::from(2u32).pow(k)
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, m);
        }
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Legendre symbol (a|p) for odd prime p: 0, 1 or −1 via Euler's criterion.
pub fn legendre_symbol(a: u64, p: u64) -> i32 {
    debug_assert!(p % 2 == 1);
    let r = powmod(a % p, (p - 1) / 2, p);
    if r == 0 {
        0
    } else if r == 1 {
        1
    } else {
        -1
    }
}
