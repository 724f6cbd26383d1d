//! Ramanujan's τ-function: direct expansion of Δ, the multiplicative laws,
//! the Hecke action on q-expansions, and numerical weight-12 modularity.
//!
//! τ(n) is the coefficient of qⁿ in Δ(q) = q ∏_{n≥1} (1 − qⁿ)²⁴.  The table
//! here always comes from the direct product expansion; the sweeps then
//! check the laws against it rather than assuming them:
//!
//! * τ(mn) = τ(m)τ(n) for gcd(m, n) = 1, and
//!   τ(p^{α+2}) = τ(p)τ(p^{α+1}) − p¹¹τ(p^α) — [`verify_conjecture_one`];
//! * τ(p)² < 4p¹¹, equivalently the polynomial 1 − τ(p)T + p¹¹T² has
//!   complex-conjugate roots — [`verify_deligne_bound`];
//! * T_p Δ = τ(p)·Δ coefficientwise — [`verify_eigenform`];
//! * Δ(γ.z) = (cz+d)¹²Δ(z) numerically on the upper half-plane —
//!   [`evaluate_delta`] with [`MobiusMatrix`].

use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use crate::primes::{factorize, is_prime, primes_up_to};
use crate::report::{
    ConjectureOneRecord, CoprimePairRecord, DeligneRecord, EigenformRecord, PrimePowerRecord,
};
use crate::series::eta_power_product;
use crate::{Error, Result};

/// Exact table of q-expansion coefficients a(n) for 1 <= n <= max_n.
///
/// Tables produced by [`compute_tau_table`] hold τ itself and start with
/// τ(1) = 1; [`hecke_apply`] produces tables of T_p-image coefficients in
/// the same container.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauTable {
    values: Vec<BigInt>,
}

/// τ(n) for 1 <= n <= max_n by direct expansion of q ∏ (1 − qⁿ)²⁴.
pub fn compute_tau_table(max_n: usize) -> Result<TauTable> {
    if max_n == 0 {
        return Err(Error::OrderZero);
    }
    // The leading factor q shifts everything by one: τ(n) is the eta-power
    // product's coefficient at q^{n−1}.
    let values = if max_n == 1 {
        vec![BigInt::one()]
    } else {
        eta_power_product(24, max_n - 1)?.into_coeffs()
    };
    debug_assert!(values[0].is_one(), "Δ = q + higher order");
    Ok(TauTable { values })
}

impl TauTable {
    /// Wrap raw values a(1), a(2), …; mainly for tests and deserialization.
    pub fn from_values(values: Vec<BigInt>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::OrderZero);
        }
        Ok(Self { values })
    }

    pub fn max_n(&self) -> usize {
        self.values.len()
    }

    /// a(n); errors when n = 0 or n exceeds the table.
    pub fn get(&self, n: usize) -> Result<&BigInt> {
        if n == 0 {
            return Err(Error::NotPositive);
        }
        self.values.get(n - 1).ok_or(Error::TableCoverage {
            n: n as u64,
            max_n: self.max_n() as u64,
        })
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    /// Write the plain text format: a header line `# tau-table max_n=<N>`
    /// followed by one `n<TAB>a(n)` line per entry, in decimal.
    pub fn write_to<W: Write>(&self, out: &mut W) -> Result<()> {
        writeln!(out, "# tau-table max_n={}", self.max_n())?;
        for (i, v) in self.values.iter().enumerate() {
            writeln!(out, "{}\t{}", i + 1, v)?;
        }
        Ok(())
    }

    /// Parse the text format back; the round-trip is bit-exact.
    pub fn read_from<R: BufRead>(input: R) -> Result<Self> {
        let mut lines = input.lines();
        let header = lines.next().ok_or_else(|| Error::MalformedTable {
            line: 1,
            reason: "empty file".into(),
        })??;
        let max_n: usize = header
            .strip_prefix("# tau-table max_n=")
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::MalformedTable {
                line: 1,
                reason: format!("bad header {header:?}"),
            })?;
        let mut values = Vec::with_capacity(max_n);
        for (idx, line) in lines.enumerate() {
            let line = line?;
            let lineno = idx + 2;
            let (n_str, v_str) = line.split_once('\t').ok_or_else(|| Error::MalformedTable {
                line: lineno,
                reason: "expected n<TAB>value".into(),
            })?;
            let n: usize = n_str.parse().map_err(|_| Error::MalformedTable {
                line: lineno,
                reason: format!("bad index {n_str:?}"),
            })?;
            if n != values.len() + 1 {
                return Err(Error::MalformedTable {
                    line: lineno,
                    reason: format!("expected index {}, got {n}", values.len() + 1),
                });
            }
            let v: BigInt = v_str.parse().map_err(|_| Error::MalformedTable {
                line: lineno,
                reason: format!("bad integer {v_str:?}"),
            })?;
            values.push(v);
        }
        if values.len() != max_n {
            return Err(Error::MalformedTable {
                line: values.len() + 1,
                reason: format!("header promised {max_n} entries, found {}", values.len()),
            });
        }
        Self::from_values(values)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let mut out = BufWriter::new(File::create(path)?);
        self.write_to(&mut out)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::read_from(BufReader::new(File::open(path)?))
    }
}

/// τ(n) rebuilt from the prime factorization of n: prime-power values come
/// from the Hecke recursion seeded with τ(1) = 1 and the table's τ(p), and
/// coprime parts multiply.
///
/// Every prime factor of n must be covered by the table; n itself may lie
/// far beyond it.
pub fn tau_extended(n: u64, table: &TauTable) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::NotPositive);
    }
    let mut result = BigInt::one();
    for (p, e) in factorize(n) {
        if p > table.max_n() as u64 {
            return Err(Error::PrimeOutOfTable {
                p,
                n,
                max_n: table.max_n() as u64,
            });
        }
        let tau_p = table.get(p as usize)?;
        result *= tau_prime_power(tau_p, p, e);
    }
    Ok(result)
}

/// τ(pᵉ) via τ(p^{α+2}) = τ(p)τ(p^{α+1}) − p¹¹τ(p^α).
fn tau_prime_power(tau_p: &BigInt, p: u64, e: u32) -> BigInt {
    if e == 0 {
        return BigInt::one();
    }
    let p11 = BigInt::from(p).pow(11);
    let mut prev = BigInt::one(); // τ(p⁰)
    let mut cur = tau_p.clone(); // τ(p¹)
    for _ in 1..e {
        let next = tau_p * &cur - &p11 * &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Sweep both multiplicative laws over the table: one record per coprime
/// pair (m, n) with m <= n and mn <= max_n, then one per prime power
/// p^{α+2} <= max_n.  The table must come from direct expansion, so the
/// checks are not circular.
pub fn verify_conjecture_one(table: &TauTable) -> Result<Vec<ConjectureOneRecord>> {
    let max_n = table.max_n();
    let mut records = Vec::new();
    for m in 1..=max_n {
        if m * m > max_n {
            break;
        }
        for n in m..=max_n / m {
            if (m as u64).gcd(&(n as u64)) != 1 {
                continue;
            }
            let lhs = table.get(m * n)?.clone();
            let rhs = table.get(m)? * table.get(n)?;
            let pass = lhs == rhs;
            records.push(ConjectureOneRecord::Multiplicativity(CoprimePairRecord {
                law: "multiplicativity",
                m: m as u64,
                n: n as u64,
                lhs,
                rhs,
                pass,
            }));
        }
    }
    for p in primes_up_to((max_n as f64).sqrt() as u64 + 1) {
        let p11 = BigInt::from(p).pow(11);
        let mut alpha = 0u32;
        loop {
            let pu = p as usize;
            let Some(target) = pu
                .checked_pow(alpha + 2)
                .filter(|&t| t <= max_n)
            else {
                break;
            };
            let lhs = table.get(target)?.clone();
            let rhs = table.get(pu)? * table.get(pu.pow(alpha + 1))?
                - &p11 * table.get(pu.pow(alpha))?;
            let pass = lhs == rhs;
            records.push(ConjectureOneRecord::HeckeRecursion(PrimePowerRecord {
                law: "hecke-recursion",
                p,
                alpha,
                lhs,
                rhs,
                pass,
            }));
            alpha += 1;
        }
    }
    Ok(records)
}

/// The polynomial 1 − τ(p)T + p¹¹T² attached to a prime p, stored exactly
/// through its trace and norm.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckePolynomial {
    p: u64,
    trace: BigInt,
    norm: BigInt,
}

impl HeckePolynomial {
    /// Build from the table's τ(p); p must be prime and covered.
    pub fn for_prime(table: &TauTable, p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime { n: p });
        }
        Ok(Self {
            p,
            trace: table.get(p as usize)?.clone(),
            norm: BigInt::from(p).pow(11),
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn trace(&self) -> &BigInt {
        &self.trace
    }

    pub fn norm(&self) -> &BigInt {
        &self.norm
    }

    /// τ(p)² − 4p¹¹; negative exactly when the roots are complex
    /// conjugates of absolute value p^{11/2}.
    pub fn discriminant(&self) -> BigInt {
        &self.trace * &self.trace - BigInt::from(4) * &self.norm
    }

    pub fn has_conjugate_roots(&self) -> bool {
        self.discriminant().is_negative()
    }
}

/// For each prime p <= max_n, check τ(p)² < 4p¹¹ in exact integers (the
/// squared form of |τ(p)| <= 2p^{11/2}; equality is impossible since
/// 2p^{11/2} is irrational) and, through [`HeckePolynomial`], the
/// equivalent statement that the discriminant is negative.
pub fn verify_deligne_bound(table: &TauTable) -> Result<Vec<DeligneRecord>> {
    let mut records = Vec::new();
    for p in primes_up_to(table.max_n() as u64) {
        let tau_p = table.get(p as usize)?;
        let lhs = tau_p * tau_p;
        let rhs = BigInt::from(4) * BigInt::from(p).pow(11);
        // Route twice: the direct inequality and the root statement must
        // agree on every prime.
        let strict = lhs < rhs;
        let conjugate = HeckePolynomial::for_prime(table, p)?.has_conjugate_roots();
        records.push(DeligneRecord {
            law: "deligne",
            p,
            lhs,
            rhs,
            pass: strict && conjugate,
        });
    }
    Ok(records)
}

/// Weight/level bookkeeping for the Hecke action.  Only level 1 is
/// supported; the default weight 12 is Δ's, where the acting exponent is
/// k − 1 = 11.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeightLevel {
    weight: u32,
    level: u32,
}

impl WeightLevel {
    pub fn new(weight: u32, level: u32) -> Result<Self> {
        if level != 1 {
            return Err(Error::UnsupportedLevel { level });
        }
        if weight == 0 || !weight.is_multiple_of(2) {
            return Err(Error::InvalidWeight { weight });
        }
        Ok(Self { weight, level })
    }

    /// Weight 12, level 1.
    pub fn delta() -> Self {
        Self { weight: 12, level: 1 }
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// The exponent k − 1 in the Hecke action (11 for Δ).
    pub fn hecke_exponent(&self) -> u32 {
        self.weight - 1
    }
}

impl Default for WeightLevel {
    fn default() -> Self {
        Self::delta()
    }
}

/// q-expansion of T_p f from the expansion of f: the coefficient at n is
/// a(pn) + p^{k−1}·a(n/p), the second term present only when p | n.  The
/// result covers n <= max_n / p.
pub fn hecke_apply(table: &TauTable, p: u64, wl: &WeightLevel) -> Result<TauTable> {
    if !is_prime(p) {
        return Err(Error::NotPrime { n: p });
    }
    let max_n = table.max_n();
    let p_us = usize::try_from(p).ok().filter(|&p| p <= max_n).ok_or(
        Error::TableCoverage {
            n: p,
            max_n: max_n as u64,
        },
    )?;
    let exp_term = BigInt::from(p).pow(wl.hecke_exponent());
    let new_max = max_n / p_us;
    let mut values = Vec::with_capacity(new_max);
    for n in 1..=new_max {
        let mut c = table.get(n * p_us)?.clone();
        if n % p_us == 0 {
            c += &exp_term * table.get(n / p_us)?;
        }
        values.push(c);
    }
    TauTable::from_values(values)
}

/// For each prime p <= p_max and each n with pn <= max_n, check that the
/// T_p image of the table equals τ(p) times the table — the eigenform
/// identity a(pn) + p¹¹·a(n/p) = τ(p)·a(n).
pub fn verify_eigenform(table: &TauTable, p_max: u64) -> Result<Vec<EigenformRecord>> {
    let wl = WeightLevel::delta();
    let mut records = Vec::new();
    for p in primes_up_to(p_max.min(table.max_n() as u64)) {
        let image = hecke_apply(table, p, &wl)?;
        let tau_p = table.get(p as usize)?.clone();
        for n in 1..=image.max_n() {
            let lhs = image.get(n)?.clone();
            let rhs = &tau_p * table.get(n)?;
            let pass = lhs == rhs;
            records.push(EigenformRecord {
                law: "eigenform",
                p,
                n: n as u64,
                lhs,
                rhs,
                pass,
            });
        }
    }
    Ok(records)
}

/// Matrix (a b; c d) with ad − bc = 1, acting on the upper half-plane by
/// γ.z = (az + b)/(cz + d).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MobiusMatrix {
    a: i64,
    b: i64,
    c: i64,
    d: i64,
}

impl MobiusMatrix {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        let det = a * d - b * c;
        if det != 1 {
            return Err(Error::NotUnimodular { det });
        }
        Ok(Self { a, b, c, d })
    }

    pub fn identity() -> Self {
        Self { a: 1, b: 0, c: 0, d: 1 }
    }

    pub fn entries(&self) -> (i64, i64, i64, i64) {
        (self.a, self.b, self.c, self.d)
    }

    /// γ.z = (az + b)/(cz + d); the image stays in the upper half-plane.
    pub fn act(&self, z: Complex64) -> Result<Complex64> {
        if z.im <= 0.0 {
            return Err(Error::NotUpperHalfPlane);
        }
        let num = Complex64::new(self.a as f64, 0.0) * z + self.b as f64;
        Ok(num / self.cocycle(z))
    }

    /// The automorphy factor cz + d.
    pub fn cocycle(&self, z: Complex64) -> Complex64 {
        Complex64::new(self.c as f64, 0.0) * z + self.d as f64
    }
}

impl fmt::Display for MobiusMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {}; {} {})", self.a, self.b, self.c, self.d)
    }
}

/// Convergence floor for the analytic evaluation of Δ: at Im(z) = 0.3 the
/// nome satisfies |q| = e^{−2π·0.3} ≈ 0.152, so the geometric tail decays
/// fast enough for the 1e−9 relative tolerance used in the modularity
/// checks.
pub const CONVERGENCE_FLOOR: f64 = 0.3;

/// The dropped tail |q|^max_n must sit below this bound.
pub const TAIL_BOUND: f64 = 1e-18;

/// Δ(z) = Σ_{n <= max_n} τ(n) e^{2πinz}, summed by Horner in f64 complex
/// arithmetic.  Requires Im(z) >= [`CONVERGENCE_FLOOR`] and a table large
/// enough that |q|^max_n < [`TAIL_BOUND`].
pub fn evaluate_delta(z: Complex64, table: &TauTable) -> Result<Complex64> {
    if z.im < CONVERGENCE_FLOOR {
        return Err(Error::BelowConvergenceFloor {
            im: z.im,
            floor: CONVERGENCE_FLOOR,
        });
    }
    let q_abs = (-2.0 * std::f64::consts::PI * z.im).exp();
    let tail = q_abs.powf(table.max_n() as f64);
    if tail >= TAIL_BOUND {
        return Err(Error::InsufficientTruncation {
            max_n: table.max_n() as u64,
            tail,
        });
    }
    let q = (Complex64::new(0.0, 2.0 * std::f64::consts::PI) * z).exp();
    let mut sum = Complex64::new(0.0, 0.0);
    for n in (1..=table.max_n()).rev() {
        let coeff = table
            .get(n)
            .expect("n is within the table")
            .to_f64()
            .expect("BigInt-to-f64 conversion is total");
        sum = sum * q + coeff;
    }
    Ok(sum * q)
}

#[cfg(test)]
mod tests {
    use super::*;

    // Frozen from the direct expansion and re-derived by the Jacobi-cube
    // route below; also the classical values.
    const TAU_1_TO_12: [i64; 12] = [
        1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920, 534612, -370944,
    ];

    fn table(n: usize) -> TauTable {
        compute_tau_table(n).unwrap()
    }

    #[test]
    fn rejects_order_zero() {
        assert!(matches!(compute_tau_table(0), Err(Error::OrderZero)));
    }

    #[test]
    fn first_values_match_direct_expansion() {
        let t = table(12);
        for (i, expected) in TAU_1_TO_12.iter().enumerate() {
            assert_eq!(t.get(i + 1).unwrap(), &BigInt::from(*expected), "τ({})", i + 1);
        }
    }

    #[test]
    fn tiny_tables() {
        let t = table(1);
        assert_eq!(t.get(1).unwrap(), &BigInt::one());
        let t = table(3);
        assert_eq!(t.values(), &[BigInt::from(1), BigInt::from(-24), BigInt::from(252)]);
        assert!(matches!(t.get(0), Err(Error::NotPositive)));
        assert!(matches!(t.get(4), Err(Error::TableCoverage { n: 4, max_n: 3 })));
    }

    #[test]
    fn tables_are_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<TauTable>();
    }

    #[test]
    fn jacobi_cube_oracle_agrees() {
        // Independent route: ∏(1−qⁿ)²⁴ = (∏(1−qⁿ)³)⁸, with the cube built
        // from its own sparse binomial factors.
        let n = 2000;
        let via_cube = eta_power_product(3, n - 1).unwrap().pow(8);
        let t = table(n);
        for i in 1..=n {
            assert_eq!(t.get(i).unwrap(), via_cube.coeff(i - 1), "τ({i})");
        }
    }

    #[test]
    fn extended_matches_table_everywhere() {
        let t = table(600);
        for n in 1..=600u64 {
            assert_eq!(
                tau_extended(n, &t).unwrap(),
                *t.get(n as usize).unwrap(),
                "n = {n}"
            );
        }
    }

    #[test]
    fn extended_handles_specific_cases() {
        let t = table(7);
        // τ(4) = τ(2)² − 2¹¹·τ(1)
        assert_eq!(tau_extended(4, &t).unwrap(), BigInt::from(-1472));
        assert_eq!(tau_extended(1, &t).unwrap(), BigInt::one());
        // τ(6) = τ(2)·τ(3)
        assert_eq!(tau_extended(6, &t).unwrap(), BigInt::from(-6048));
        // coverage goes far beyond the table for smooth n
        assert_eq!(
            tau_extended(12, &t).unwrap(),
            BigInt::from(TAU_1_TO_12[11])
        );
    }

    #[test]
    fn extended_rejects_uncovered_prime() {
        let t = table(7);
        assert!(matches!(
            tau_extended(11, &t),
            Err(Error::PrimeOutOfTable { p: 11, .. })
        ));
        assert!(matches!(tau_extended(0, &t), Err(Error::NotPositive)));
    }

    #[test]
    fn conjecture_one_sweep_all_pass() {
        let t = table(500);
        let records = verify_conjecture_one(&t).unwrap();
        assert!(records.iter().all(|r| r.pass()));
        // spot-check the (2,3) pair
        let pair = records.iter().find_map(|r| match r {
            ConjectureOneRecord::Multiplicativity(m) if m.m == 2 && m.n == 3 => Some(m),
            _ => None,
        });
        let pair = pair.expect("(2,3) is in range");
        assert_eq!(pair.lhs, BigInt::from(-6048));
        assert_eq!(pair.rhs, BigInt::from(-6048));
        // and the p=2, α=0 recursion
        let rec = records.iter().find_map(|r| match r {
            ConjectureOneRecord::HeckeRecursion(h) if h.p == 2 && h.alpha == 0 => Some(h),
            _ => None,
        });
        assert_eq!(rec.expect("p=2 α=0 in range").lhs, BigInt::from(-1472));
    }

    #[test]
    fn deligne_bound_small_primes() {
        let t = table(100);
        let records = verify_deligne_bound(&t).unwrap();
        assert!(records.iter().all(|r| r.pass));
        let p2 = &records[0];
        assert_eq!(p2.p, 2);
        assert_eq!(p2.lhs, BigInt::from(576));
        assert_eq!(p2.rhs, BigInt::from(8192));
        let p3 = &records[1];
        assert_eq!(p3.lhs, BigInt::from(63504));
        assert_eq!(p3.rhs, BigInt::from(708588));
    }

    #[test]
    fn hecke_polynomial_discriminant() {
        let t = table(5);
        let h = HeckePolynomial::for_prime(&t, 2).unwrap();
        assert_eq!(h.trace(), &BigInt::from(-24));
        assert_eq!(h.norm(), &BigInt::from(2048));
        assert_eq!(h.discriminant(), BigInt::from(576 - 8192));
        assert!(h.has_conjugate_roots());
        assert!(matches!(
            HeckePolynomial::for_prime(&t, 4),
            Err(Error::NotPrime { n: 4 })
        ));
    }

    #[test]
    fn hecke_apply_matches_hand_values() {
        let t = table(8);
        let wl = WeightLevel::delta();
        let t2 = hecke_apply(&t, 2, &wl).unwrap();
        // n=1: a(2), no second term
        assert_eq!(t2.get(1).unwrap(), &BigInt::from(-24));
        // n=2: a(4) + 2^11 a(1) = −1472 + 2048 = 576
        assert_eq!(t2.get(2).unwrap(), &BigInt::from(576));
        let t3 = hecke_apply(&t, 3, &wl).unwrap();
        assert_eq!(t3.get(1).unwrap(), &BigInt::from(252));
        assert!(matches!(hecke_apply(&t, 6, &wl), Err(Error::NotPrime { n: 6 })));
    }

    #[test]
    fn hecke_operators_commute() {
        let t = table(450);
        let wl = WeightLevel::delta();
        for &(p, q) in &[(2u64, 3u64), (2, 5), (2, 7), (3, 5), (3, 7), (5, 7)] {
            let pq = hecke_apply(&hecke_apply(&t, p, &wl).unwrap(), q, &wl).unwrap();
            let qp = hecke_apply(&hecke_apply(&t, q, &wl).unwrap(), p, &wl).unwrap();
            assert_eq!(pq, qp, "T_{p} T_{q} = T_{q} T_{p}");
        }
    }

    #[test]
    fn eigenform_sweep_all_pass() {
        let t = table(400);
        let records = verify_eigenform(&t, 10).unwrap();
        assert!(!records.is_empty());
        assert!(records.iter().all(|r| r.pass));
        let r = records.iter().find(|r| r.p == 2 && r.n == 2).unwrap();
        assert_eq!(r.lhs, BigInt::from(576));
        assert_eq!(r.rhs, BigInt::from(576));
    }

    #[test]
    fn weight_level_contract() {
        assert!(WeightLevel::new(12, 1).is_ok());
        assert!(matches!(
            WeightLevel::new(12, 2),
            Err(Error::UnsupportedLevel { level: 2 })
        ));
        assert!(matches!(
            WeightLevel::new(11, 1),
            Err(Error::InvalidWeight { weight: 11 })
        ));
        assert_eq!(WeightLevel::delta().hecke_exponent(), 11);
    }

    #[test]
    fn mobius_action_basics() {
        let i = Complex64::new(0.0, 1.0);
        let id = MobiusMatrix::identity();
        assert_eq!(id.act(i).unwrap(), i);

        // inversion fixes i
        let s = MobiusMatrix::new(0, -1, 1, 0).unwrap();
        let img = s.act(i).unwrap();
        assert!((img - i).norm() < 1e-15);

        // translation
        let t = MobiusMatrix::new(1, 1, 0, 1).unwrap();
        let img = t.act(i).unwrap();
        assert!((img - Complex64::new(1.0, 1.0)).norm() < 1e-15);

        assert!(matches!(
            MobiusMatrix::new(1, 1, 1, 1),
            Err(Error::NotUnimodular { det: 0 })
        ));
        assert!(matches!(
            s.act(Complex64::new(1.0, -2.0)),
            Err(Error::NotUpperHalfPlane)
        ));
    }

    #[test]
    fn mobius_action_preserves_upper_half_plane() {
        let g = MobiusMatrix::new(2, 1, 1, 1).unwrap();
        for &z in &[
            Complex64::new(0.0, 1.0),
            Complex64::new(0.5, 1.0),
            Complex64::new(-1.5, 0.4),
        ] {
            assert!(g.act(z).unwrap().im > 0.0);
        }
    }

    #[test]
    fn delta_at_i_is_real_positive() {
        let t = table(64);
        let v = evaluate_delta(Complex64::new(0.0, 1.0), &t).unwrap();
        assert!(v.re > 0.0);
        assert!(v.im.abs() < 1e-15 * v.re);
    }

    #[test]
    fn delta_is_periodic() {
        let t = table(64);
        let z = Complex64::new(0.25, 0.8);
        let a = evaluate_delta(z, &t).unwrap();
        let b = evaluate_delta(z + 1.0, &t).unwrap();
        assert!((a - b).norm() <= 1e-12 * a.norm());
    }

    #[test]
    fn delta_weight_twelve_at_inversion() {
        // Δ(−1/(2i)) = (2i)¹² Δ(2i)
        let t = table(64);
        let z = Complex64::new(0.0, 2.0);
        let s = MobiusMatrix::new(0, -1, 1, 0).unwrap();
        let lhs = evaluate_delta(s.act(z).unwrap(), &t).unwrap();
        let rhs = s.cocycle(z).powi(12) * evaluate_delta(z, &t).unwrap();
        assert!((lhs - rhs).norm() < 1e-9 * rhs.norm());
    }

    #[test]
    fn delta_rejects_low_imaginary_part_and_short_tables() {
        let t = table(64);
        assert!(matches!(
            evaluate_delta(Complex64::new(0.0, 0.2), &t),
            Err(Error::BelowConvergenceFloor { .. })
        ));
        let tiny = table(10);
        assert!(matches!(
            evaluate_delta(Complex64::new(0.0, 0.3), &tiny),
            Err(Error::InsufficientTruncation { .. })
        ));
    }

    #[test]
    fn table_round_trip_is_bit_exact() {
        let t = table(40);
        let mut buf = Vec::new();
        t.write_to(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("# tau-table max_n=40\n1\t1\n2\t-24\n"));
        let back = TauTable::read_from(&buf[..]).unwrap();
        assert_eq!(back, t);
        let mut buf2 = Vec::new();
        back.write_to(&mut buf2).unwrap();
        assert_eq!(buf, buf2);
    }

    #[test]
    fn table_parser_rejects_damage() {
        let good = "# tau-table max_n=2\n1\t1\n2\t-24\n";
        assert!(TauTable::read_from(good.as_bytes()).is_ok());
        for bad in [
            "",
            "# wrong header\n1\t1\n",
            "# tau-table max_n=2\n1\t1\n",
            "# tau-table max_n=1\n2\t-24\n",
            "# tau-table max_n=1\n1 1\n",
            "# tau-table max_n=1\n1\tx\n",
        ] {
            assert!(
                matches!(TauTable::read_from(bad.as_bytes()), Err(Error::MalformedTable { .. })),
                "{bad:?}"
            );
        }
    }
}
