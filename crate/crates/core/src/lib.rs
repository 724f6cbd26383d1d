//! Exact arithmetic for Ramanujan's τ-function and the classical laws around
//! it, together with a p-adic local toolkit and elliptic-curve reduction.
//!
//! The center of the crate is the expansion of the discriminant cusp form
//!
//! ```text
//! Δ(q) = q ∏_{n≥1} (1 − q^n)^24 = Σ_{n≥1} τ(n) q^n
//! ```
//!
//! over exact big integers ([`series`], [`tau`]).  On top of the table the
//! crate verifies, by sweep: multiplicativity and the Hecke recursion at
//! prime powers, the bound τ(p)² < 4p¹¹, the explicit congruences mod 691,
//! 2⁵ and 3, the Hecke eigenform identity, and (numerically) the weight-12
//! transformation law of Δ on the upper half-plane.
//!
//! The [`padic`] module provides valuations, finite-precision p-adic
//! numbers, Hensel lifting and local (in)solubility certificates; the
//! [`elliptic`] module reduces short-Weierstrass curves modulo p and counts
//! affine points.  Everything outside the analytic evaluation of Δ is exact
//! integer arithmetic.

pub mod congruence;
pub mod elliptic;
pub mod padic;
pub mod primes;
pub mod report;
pub mod series;
pub mod tau;

/// Errors shared across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("truncation order must be at least 1")]
    OrderZero,
    #[error("n must be a positive integer")]
    NotPositive,
    #[error("table has max_n = {max_n}, which does not cover n = {n}")]
    TableCoverage { n: u64, max_n: u64 },
    #[error("prime factor {p} of {n} exceeds table coverage max_n = {max_n}")]
    PrimeOutOfTable { p: u64, n: u64, max_n: u64 },
    #[error("{n} is not prime")]
    NotPrime { n: u64 },
    #[error("only level 1 is supported, got level {level}")]
    UnsupportedLevel { level: u32 },
    #[error("weight must be a positive even integer, got {weight}")]
    InvalidWeight { weight: u32 },
    #[error("matrix determinant must be 1, got {det}")]
    NotUnimodular { det: i64 },
    #[error("point must lie in the open upper half-plane")]
    NotUpperHalfPlane,
    #[error("Im(z) = {im} is below the convergence floor {floor}")]
    BelowConvergenceFloor { im: f64, floor: f64 },
    #[error("table order {max_n} leaves a tail |q|^max_n = {tail:e} >= 1e-18")]
    InsufficientTruncation { max_n: u64, tail: f64 },
    #[error("p-adic valuation of zero is undefined (v_p(0) = +inf)")]
    ValuationOfZero,
    #[error("square classes are defined for nonzero values only")]
    ZeroSquareClass,
    #[error("operands live over different primes: {left} and {right}")]
    PrimeMismatch { left: u64, right: u64 },
    #[error("precision must be at least 1")]
    ZeroPrecision,
    #[error("enumerating {needed} residues exceeds the budget of {budget}")]
    EnumerationBudget { needed: u128, budget: u64 },
    #[error("residue {r} is not a root of f modulo {p}")]
    NotARootModP { r: u64, p: u64 },
    #[error("residue {r} is a singular root modulo {p}: f'(r) = 0 mod p")]
    SingularRoot { r: u64, p: u64 },
    #[error("polynomial must be monic")]
    NotMonic,
    #[error("the zero polynomial is not accepted here")]
    ZeroPolynomial,
    #[error("cannot parse polynomial: {reason}")]
    MalformedPolynomial { reason: String },
    #[error("curve is singular: discriminant −16(4a³ + 27b²) is zero")]
    SingularCurve,
    #[error("p = {p} is too large for affine enumeration over F_p × F_p")]
    PrimeTooLarge { p: u64 },
    #[error("table file is malformed at line {line}: {reason}")]
    MalformedTable { line: usize, reason: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
