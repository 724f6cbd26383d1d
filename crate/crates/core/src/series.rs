//! Truncated formal power series over arbitrary-precision integers.
//!
//! A series holds exact coefficients a₀..a_N of q⁰..q^N with the truncation
//! order N inclusive; arithmetic on orders N₁, N₂ yields order min(N₁, N₂).
//! Coefficients are never modular and never floating — every downstream
//! check in this crate is an exact identity.
//!
//! The generator of interest is the eta-power product
//! ∏_{n≥1} (1 − qⁿ)^e, whose e = 24 case carries the τ coefficients via
//! Δ(q) = q · ∏ (1 − qⁿ)²⁴.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// Below this many coefficients a product stays schoolbook.
const KARATSUBA_THRESHOLD: usize = 32;

/// Dense truncated power series: `coeffs[i]` is the coefficient of qⁱ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    /// Series with the given coefficients; the truncation order is
    /// `coeffs.len() - 1`.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "a series carries at least the q^0 coefficient");
        Self { coeffs }
    }

    /// The zero series at the given truncation order.
    pub fn zero(order: usize) -> Self {
        Self { coeffs: vec![BigInt::zero(); order + 1] }
    }

    /// The constant series 1 at the given truncation order.
    pub fn one(order: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); order + 1];
        coeffs[0] = BigInt::one();
        Self { coeffs }
    }

    /// Truncation order N (inclusive); the series has N+1 coefficients.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of qⁱ; i must not exceed the order.
    pub fn coeff(&self, i: usize) -> &BigInt {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Copy truncated to order `m` (or to the current order if smaller).
    pub fn truncated(&self, m: usize) -> Self {
        let m = m.min(self.order());
        Self { coeffs: self.coeffs[..=m].to_vec() }
    }

    /// Coefficientwise sum, truncated to the smaller order.
    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let coeffs = (0..=n).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect();
        Self { coeffs }
    }

    /// Coefficientwise difference, truncated to the smaller order.
    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let coeffs = (0..=n).map(|i| &self.coeffs[i] - &other.coeffs[i]).collect();
        Self { coeffs }
    }

    /// Cauchy product truncated to the smaller order.
    ///
    /// Dispatches to Karatsuba above a size threshold; [`mul_schoolbook`]
    /// is the reference route and stays available for cross-validation.
    ///
    /// [`mul_schoolbook`]: TruncatedSeries::mul_schoolbook
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        if n + 1 < KARATSUBA_THRESHOLD {
            return self.mul_schoolbook(other);
        }
        let full = conv_karatsuba(&self.coeffs[..=n], &other.coeffs[..=n]);
        let mut coeffs = full;
        coeffs.truncate(n + 1);
        Self { coeffs }
    }

    /// Reference quadratic convolution, exact at every size.
    pub fn mul_schoolbook(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut out = vec![BigInt::zero(); n + 1];
        for (i, ai) in self.coeffs.iter().enumerate().take(n + 1) {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                if bj.is_zero() {
                    continue;
                }
                out[i + j] += ai * bj;
            }
        }
        Self { coeffs: out }
    }

    /// aᵉ by binary exponentiation; `pow(a, 0)` is the constant series 1.
    pub fn pow(&self, e: u64) -> Self {
        let mut result = Self::one(self.order());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }
}

/// ∏_{n=1..order} (1 − qⁿ)^exponent truncated at q^order.
///
/// Factors with n > order are omitted — they contribute nothing below
/// q^{order+1}.  Each factor (1 − qⁿ)^e is expanded directly from binomial
/// coefficients (it has at most e+1 terms inside the truncation) and folded
/// into the accumulator in place, high coefficient first.
pub fn eta_power_product(exponent: u32, order: usize) -> Result<TruncatedSeries> {
    if order == 0 {
        return Err(Error::OrderZero);
    }
    // Signed binomials (-1)^j C(e, j), built by the exact stepwise quotient.
    let e = exponent as usize;
    let mut binomials: Vec<BigInt> = Vec::with_capacity(e + 1);
    binomials.push(BigInt::one());
    for j in 1..=e {
        let next = (&binomials[j - 1] * BigInt::from(exponent as u64 - j as u64 + 1))
            / BigInt::from(j as u64);
        binomials.push(next);
    }
    for (j, b) in binomials.iter_mut().enumerate() {
        if j % 2 == 1 {
            *b = -std::mem::take(b);
        }
    }

    let mut acc = vec![BigInt::zero(); order + 1];
    acc[0] = BigInt::one();
    for n in 1..=order {
        // In-place multiply by sum_j binomials[j] q^{n j}.  Writing index i
        // only reads indices below i, so a single top-down pass is exact.
        for i in (n..=order).rev() {
            let jmax = (i / n).min(e);
            let mut delta = BigInt::zero();
            for (j, b) in binomials.iter().enumerate().take(jmax + 1).skip(1) {
                delta += b * &acc[i - n * j];
            }
            acc[i] += delta;
        }
    }
    Ok(TruncatedSeries::from_coeffs(acc))
}

/// Full convolution of two coefficient slices (length la + lb − 1).
fn conv_schoolbook(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            out[i + j] += ai * bj;
        }
    }
    out
}

fn slice_sum(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let (short, long) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, s) in out.iter_mut().zip(short.iter()) {
        *o += s;
    }
    out
}

/// Karatsuba convolution: splits at mid and reuses (a₀+a₁)(b₀+b₁).
fn conv_karatsuba(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let min_len = a.len().min(b.len());
    if min_len < KARATSUBA_THRESHOLD {
        return conv_schoolbook(a, b);
    }
    let mid = min_len / 2;
    let (a0, a1) = a.split_at(mid);
    let (b0, b1) = b.split_at(mid);

    let low = conv_karatsuba(a0, b0);
    let high = conv_karatsuba(a1, b1);
    let mixed = conv_karatsuba(&slice_sum(a0, a1), &slice_sum(b0, b1));

    // out = low + (mixed − low − high)·X^mid + high·X^{2·mid}
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, v) in low.iter().enumerate() {
        out[i] += v;
    }
    for (i, v) in mixed.iter().enumerate() {
        out[i + mid] += v;
    }
    for (i, v) in low.iter().enumerate() {
        out[i + mid] -= v;
    }
    for (i, v) in high.iter().enumerate() {
        out[i + mid] -= v;
    }
    for (i, v) in high.iter().enumerate() {
        out[i + 2 * mid] += v;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn series(coeffs: &[i64]) -> TruncatedSeries {
        TruncatedSeries::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn add_cancellation_and_identity() {
        assert_eq!(series(&[1, 1]).add(&series(&[1, -1])), series(&[2, 0]));
        let s = series(&[3, -5, 7]);
        assert_eq!(TruncatedSeries::zero(2).add(&s), s);
        assert_eq!(series(&[1, -24]).add(&series(&[0, 24])), series(&[1, 0]));
    }

    #[test]
    fn add_truncates_to_min_order() {
        let a = series(&[1, 2, 3, 4]);
        let b = series(&[1, 1]);
        assert_eq!(a.add(&b).order(), 1);
        assert_eq!(a.add(&b), series(&[2, 3]));
    }

    #[test]
    fn mul_difference_of_squares() {
        let a = series(&[1, -1, 0]);
        let b = series(&[1, 1, 0]);
        assert_eq!(a.mul(&b), series(&[1, 0, -1]));
    }

    #[test]
    fn mul_identity() {
        let s = series(&[4, -1, 9, 0, 2]);
        assert_eq!(s.mul(&TruncatedSeries::one(4)), s);
    }

    #[test]
    fn mul_two_eta_factors_to_order_two() {
        // (1−q)^24 (1−q²)^24 = 1 − 24q + 252q² + O(q³)
        let f1 = series(&[1, -1, 0]).pow(24);
        let f2 = series(&[1, 0, -1]).pow(24);
        assert_eq!(f1.mul(&f2), series(&[1, -24, 252]));
    }

    #[test]
    fn pow_small_cases() {
        assert_eq!(series(&[1, -1, 0]).pow(2), series(&[1, -2, 1]));
        let s = series(&[7, 1, -3, 2]);
        assert_eq!(s.pow(0), TruncatedSeries::one(3));
        // coefficient of q in (1−q)^24 is −24
        let p = series(&[1, -1, 0]).pow(24);
        assert_eq!(p.coeff(1), &BigInt::from(-24));
    }

    #[test]
    fn eta_product_rejects_order_zero() {
        assert!(matches!(eta_power_product(24, 0), Err(Error::OrderZero)));
    }

    #[test]
    fn series_values_are_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<TruncatedSeries>();
    }

    #[test]
    fn eta_product_small_orders() {
        assert_eq!(eta_power_product(24, 2).unwrap(), series(&[1, -24, 252]));
        // Euler: (1−q)(1−q²)(1−q³) = 1 − q − q² + 0·q³ + O(q⁴)
        assert_eq!(eta_power_product(1, 3).unwrap(), series(&[1, -1, -1, 0]));
        assert_eq!(eta_power_product(0, 5).unwrap(), TruncatedSeries::one(5));
    }

    /// Euler's pentagonal number theorem gives ∏(1−qⁿ) in closed form:
    /// Σ_{k∈Z} (−1)^k q^{k(3k−1)/2}.
    fn pentagonal_series(order: usize) -> TruncatedSeries {
        let mut coeffs = vec![BigInt::zero(); order + 1];
        let mut k: i64 = 0;
        loop {
            let mut in_range = false;
            for kk in if k == 0 { vec![0] } else { vec![k, -k] } {
                let exp = kk * (3 * kk - 1) / 2;
                if (0..=order as i64).contains(&exp) {
                    coeffs[exp as usize] =
                        if kk % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                    in_range = true;
                }
            }
            if !in_range && k > 0 {
                break;
            }
            k += 1;
        }
        TruncatedSeries::from_coeffs(coeffs)
    }

    /// Jacobi: ∏(1−qⁿ)³ = Σ_{m≥0} (−1)^m (2m+1) q^{m(m+1)/2}.
    fn jacobi_cube_series(order: usize) -> TruncatedSeries {
        let mut coeffs = vec![BigInt::zero(); order + 1];
        let mut m: usize = 0;
        while m * (m + 1) / 2 <= order {
            let c = BigInt::from(2 * m as i64 + 1);
            coeffs[m * (m + 1) / 2] = if m.is_multiple_of(2) { c } else { -c };
            m += 1;
        }
        TruncatedSeries::from_coeffs(coeffs)
    }

    #[test]
    fn eta_product_matches_pentagonal_closed_form() {
        assert_eq!(eta_power_product(1, 200).unwrap(), pentagonal_series(200));
    }

    #[test]
    fn eta_cube_matches_jacobi_closed_form() {
        assert_eq!(eta_power_product(3, 200).unwrap(), jacobi_cube_series(200));
    }

    #[test]
    fn eta_24_equals_eighth_power_of_eta_cube() {
        let direct = eta_power_product(24, 300).unwrap();
        let via_cube = eta_power_product(3, 300).unwrap().pow(8);
        assert_eq!(direct, via_cube);
    }

    #[test]
    fn eta_24_equals_24th_power_of_eta_one() {
        // a second structural route, exercising the binomial factor
        // expansion against plain pow
        let direct = eta_power_product(24, 150).unwrap();
        let via_pow = eta_power_product(1, 150).unwrap().pow(24);
        assert_eq!(direct, via_pow);
    }

    #[test]
    fn truncation_coherence_of_eta_product() {
        let long = eta_power_product(24, 120).unwrap();
        let short = eta_power_product(24, 40).unwrap();
        assert_eq!(long.truncated(40), short);
    }

    #[test]
    fn karatsuba_matches_schoolbook_up_to_order_512() {
        // Deterministic pseudo-random coefficients, exercised at sizes that
        // recurse several levels deep.
        for &order in &[31usize, 32, 33, 100, 256, 512] {
            let mut state = 0x9e3779b97f4a7c15u64;
            let mut next = || {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                ((state >> 33) as i64) - (1 << 30)
            };
            let a = TruncatedSeries::from_coeffs((0..=order).map(|_| BigInt::from(next())).collect());
            let b = TruncatedSeries::from_coeffs((0..=order).map(|_| BigInt::from(next())).collect());
            assert_eq!(a.mul(&b), a.mul_schoolbook(&b), "order {order}");
        }
    }

    fn small_series(max_order: usize) -> impl Strategy<Value = TruncatedSeries> {
        proptest::collection::vec(-50i64..50, 1..=max_order + 1)
            .prop_map(|v| TruncatedSeries::from_coeffs(v.into_iter().map(BigInt::from).collect()))
    }

    proptest! {
        #[test]
        fn mul_commutes(a in small_series(32), b in small_series(32)) {
            prop_assert_eq!(a.mul(&b), b.mul(&a));
        }

        #[test]
        fn mul_associates(a in small_series(16), b in small_series(16), c in small_series(16)) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        }

        #[test]
        fn pow_is_repeated_mul(a in small_series(32), e in 0u64..=8) {
            let mut by_mul = TruncatedSeries::one(a.order());
            for _ in 0..e {
                by_mul = by_mul.mul(&a);
            }
            prop_assert_eq!(a.pow(e), by_mul);
        }

        #[test]
        fn mul_truncation_coherent(a in small_series(24), b in small_series(24), m in 0usize..8) {
            let n = a.order().min(b.order());
            let m = m.min(n);
            prop_assert_eq!(a.mul(&b).truncated(m), a.truncated(m).mul(&b.truncated(m)));
        }
    }
}
