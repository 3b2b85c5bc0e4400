//! Closed-form and asymptotic analysis of the expected spectrum.
//!
//! The expected number of k-dimensional maximal intervals of a random
//! function is
//!
//! ```text
//! r_k(n,p) = C(n,k) * 2^(n-k) * p^(2^k) * (1 - p^(2^k))^(n-k)
//! ```
//!
//! whose factors span hundreds of orders of magnitude, so everything here is
//! evaluated in base-2 logs and exponentiated only at the boundary. Linear
//! values are 0 or infinity when the log value is out of f64 range; log
//! values saturate at `f64::MIN` instead of overflowing to -inf.

use std::f64::consts::{E, LN_2, LOG2_E, PI};
use std::fmt;

use crate::error::{RdnfError, Result};

fn check_probability(p: f64) -> Result<()> {
    if !(p > 0.0 && p < 1.0) {
        return Err(RdnfError::InvalidProbability(p));
    }
    Ok(())
}

/// log2 of the binomial coefficient; exact integers below 61, log-gamma above.
pub fn log2_binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    if n <= 60 {
        let c = crate::cube::binomial(n, k).expect("fits in u128 for n <= 60");
        return (c as f64).log2();
    }
    let lg = |x: f64| libm::lgamma(x);
    (lg(n as f64 + 1.0) - lg(k as f64 + 1.0) - lg((n - k) as f64 + 1.0)) * LOG2_E
}

/// log2 of `p^(2^k)` for real `k`, saturating at `f64::MIN` once `2^k`
/// leaves f64 range.
fn log2_pow_p(k: f64, p: f64) -> f64 {
    let l = k.exp2() * p.log2();
    if l.is_finite() {
        l
    } else {
        f64::MIN
    }
}

/// `ln(1 - e^l)` for `l <= 0`, accurate at both ends.
fn ln_one_minus_exp(l: f64) -> f64 {
    if l >= 0.0 {
        return f64::NEG_INFINITY;
    }
    if l < -LN_2 {
        (-l.exp()).ln_1p()
    } else {
        (-l.exp_m1()).ln()
    }
}

/// `log2(1 - 2^x)` for `x <= 0`.
fn log2_one_minus_exp2(x: f64) -> f64 {
    ln_one_minus_exp(x * LN_2) * LOG2_E
}

/// log2 of the expected count of k-dimensional maximal intervals.
pub fn expected_count_log2(n: u64, k: u64, p: f64) -> Result<f64> {
    check_probability(p)?;
    if k > n {
        return Err(RdnfError::KOutOfRange {
            k: k as usize,
            n: n as usize,
        });
    }
    let qlog = log2_pow_p(k as f64, p);
    let survive = (n - k) as f64 * log2_one_minus_exp2(qlog);
    let total = log2_binomial(n, k) + (n - k) as f64 + qlog + survive;
    Ok(total.max(f64::MIN))
}

/// Expected count in linear scale; 0 on deep underflow.
pub fn expected_count(n: u64, k: u64, p: f64) -> Result<f64> {
    Ok(expected_count_log2(n, k, p)?.exp2())
}

/// The full expected spectrum of one `(n, p)` pair.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpectationCurve {
    pub n: u64,
    pub p: f64,
    pub log2: Vec<f64>,
    pub values: Vec<f64>,
}

impl ExpectationCurve {
    pub fn compute(n: u64, p: f64) -> Result<Self> {
        check_probability(p)?;
        let mut log2 = Vec::with_capacity(n as usize + 1);
        let mut values = Vec::with_capacity(n as usize + 1);
        for k in 0..=n {
            let l = expected_count_log2(n, k, p)?;
            log2.push(l);
            values.push(l.exp2());
        }
        Ok(ExpectationCurve { n, p, log2, values })
    }
}

/// The step ratio `r_{k+1}/r_k` and its two leading factors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioDecomposition {
    /// The ratio itself.
    pub r: f64,
    /// `(n - k) * p^(2^k)`.
    pub a: f64,
    /// `(1 + p^(2^k))^(n - k)`.
    pub b: f64,
    pub log2_r: f64,
}

/// Closed-form step ratio; accepts real `k` in `[0, n)`.
pub fn ratio(n: u64, k: f64, p: f64) -> Result<RatioDecomposition> {
    check_probability(p)?;
    if !(k >= 0.0 && k < n as f64) {
        return Err(RdnfError::Domain(format!(
            "ratio needs 0 <= k < n, got k={k} n={n}"
        )));
    }
    let qlog = log2_pow_p(k, p);
    let q = qlog.exp2();
    let a = (n as f64 - k) * q;
    let log2_b = (n as f64 - k) * q.ln_1p() * LOG2_E;
    let b = log2_b.exp2();
    let q2log = log2_pow_p(k + 1.0, p);
    let log2_r =
        (n as f64 - k).log2() + qlog + log2_b - 1.0 - (k + 1.0).log2() - log2_one_minus_exp2(q2log);
    Ok(RatioDecomposition {
        r: log2_r.exp2(),
        a,
        b,
        log2_r,
    })
}

/// log2 of the step of the `b` factor, `b(k+1)/b(k)`. The true value is
/// strictly negative on the whole domain, which drives the single-peak shape
/// of the curve; when its magnitude underflows f64 the result saturates to
/// the smallest negative value instead of rounding to zero.
pub fn ratio_b_step_log2(n: u64, k: f64, p: f64) -> Result<f64> {
    check_probability(p)?;
    if !(k >= 0.0 && k < n as f64 - 1.0) {
        return Err(RdnfError::Domain(format!(
            "b-step needs 0 <= k < n-1, got k={k} n={n}"
        )));
    }
    let q = log2_pow_p(k, p).exp2();
    let log2_step =
        (n as f64 - k - 1.0) * (q * q).ln_1p() * LOG2_E - (n as f64 - k) * q.ln_1p() * LOG2_E;
    if log2_step < 0.0 {
        Ok(log2_step)
    } else {
        Ok(-f64::from_bits(1))
    }
}

/// The step of the `b` factor in linear scale. Rounds to 1.0 once the gap
/// to 1 drops below f64 resolution; [`ratio_b_step_log2`] keeps the strict
/// ordering visible there.
pub fn ratio_b_step(n: u64, k: f64, p: f64) -> Result<f64> {
    Ok(ratio_b_step_log2(n, k, p)?.exp2())
}

/// Probability that a fixed k-dimensional interval is all-ones: `p^(2^k)`,
/// for real `k`.
pub fn allones_probability(k: f64, p: f64) -> Result<f64> {
    check_probability(p)?;
    Ok(log2_pow_p(k, p).exp2())
}

/// The three log2-scale thresholds of the all-ones probability: it equals
/// 1/2 at `k1`, `1/n` at `k0` (where the expected spectrum peaks) and `2^-n`
/// at `k2` (past which maximal intervals die out).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CharacteristicPoints {
    pub k1: f64,
    pub k0: f64,
    pub k2: f64,
}

pub fn characteristic_points(n: u64, p: f64) -> Result<CharacteristicPoints> {
    check_probability(p)?;
    if n < 2 {
        return Err(RdnfError::Domain(format!(
            "characteristic points need n >= 2, got {n}"
        )));
    }
    let neg_log2_p = -p.log2();
    let nf = n as f64;
    Ok(CharacteristicPoints {
        k1: (1.0 / neg_log2_p).log2(),
        k0: (nf.log2() / neg_log2_p).log2(),
        k2: (nf / neg_log2_p).log2(),
    })
}

/// log2 of the large-n estimate `n^k e^k 2^(n-k) p^(2^k) / (k^k sqrt(2 pi k))`
/// for real `k >= 1`.
pub fn asymptotic_log2(n: u64, k: f64, p: f64) -> Result<f64> {
    check_probability(p)?;
    if !(k >= 1.0 && k <= n as f64) {
        return Err(RdnfError::Domain(format!(
            "asymptotic needs 1 <= k <= n, got k={k} n={n}"
        )));
    }
    let nf = n as f64;
    let total = k * nf.log2() + k * LOG2_E + (nf - k) + log2_pow_p(k, p)
        - k * k.log2()
        - 0.5 * (2.0 * PI * k).log2();
    Ok(total.max(f64::MIN))
}

pub fn asymptotic_estimate(n: u64, k: f64, p: f64) -> Result<f64> {
    Ok(asymptotic_log2(n, k, p)?.exp2())
}

/// One row of the boundary-value table.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryRow {
    pub k: u64,
    pub value: f64,
    pub log2_value: f64,
    /// For the `k = n-1` row: the value obtained with the factor
    /// `n * 2^(n-1)` that circulates in print instead of the `2n` that the
    /// closed form yields. The two agree only at n = 2; the exhaustive n = 3
    /// expectation settles the disagreement in favor of `2n`.
    pub printed_factor_value: Option<f64>,
}

/// Boundary-value table of the expected spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryTable {
    pub n: u64,
    pub p: f64,
    pub rows: Vec<BoundaryRow>,
}

/// Rows for `k` in `{0, 1, n-1, n}` computed from the closed form.
pub fn boundary_values(n: u64, p: f64) -> Result<BoundaryTable> {
    check_probability(p)?;
    if n < 2 {
        return Err(RdnfError::Domain(format!(
            "boundary table needs n >= 2, got {n}"
        )));
    }
    let mut ks: Vec<u64> = vec![0, 1, n - 1, n];
    ks.dedup();
    let mut rows = Vec::with_capacity(ks.len());
    for k in ks {
        let log2_value = expected_count_log2(n, k, p)?;
        let printed_factor_value = (k == n - 1).then(|| {
            let qlog = log2_pow_p(k as f64, p);
            ((n as f64).log2() + (n - 1) as f64 + qlog + log2_one_minus_exp2(qlog)).exp2()
        });
        rows.push(BoundaryRow {
            k,
            value: log2_value.exp2(),
            log2_value,
            printed_factor_value,
        });
    }
    Ok(BoundaryTable { n, p, rows })
}

/// The k that maximizes the expected count, ties resolved to the smaller k.
pub fn argmax_k(n: u64, p: f64) -> Result<u64> {
    check_probability(p)?;
    if n < 2 {
        return Err(RdnfError::Domain(format!("argmax needs n >= 2, got {n}")));
    }
    let mut best = (0u64, expected_count_log2(n, 0, p)?);
    for k in 1..=n {
        let l = expected_count_log2(n, k, p)?;
        if l > best.1 {
            best = (k, l);
        }
    }
    Ok(best.0)
}

/// Checks the single-peak shape of the expected spectrum: strictly rising up
/// to the argmax, strictly falling after it. Returns the argmax when the
/// shape holds.
pub fn single_peak(n: u64, p: f64) -> Result<Option<u64>> {
    let peak = argmax_k(n, p)?;
    for k in 0..n {
        let lo = expected_count_log2(n, k, p)?;
        let hi = expected_count_log2(n, k + 1, p)?;
        let rising = hi > lo;
        if (k < peak) != rising {
            return Ok(None);
        }
    }
    Ok(Some(peak))
}

/// Markov bound at threshold 1 on the probability of seeing any maximal
/// k-interval: counts are nonnegative integers, so
/// `P(r_k(f) >= 1) <= min(1, r_k(n,p))`.
pub fn tail_bound(n: u64, k: u64, p: f64) -> Result<f64> {
    Ok(expected_count(n, k, p)?.min(1.0))
}

/// The central band `[lo, hi]` of dimensions: `lo = ceil(k1)`, `hi =
/// floor(k2) + 1`, clamped to `[0, n]`. Maximal intervals outside the band
/// are vanishingly rare for large n.
pub fn central_band(n: u64, p: f64) -> Result<(u64, u64)> {
    let pts = characteristic_points(n, p)?;
    let lo = pts.k1.ceil().max(0.0) as u64;
    let hi = ((pts.k2.floor() + 1.0).max(0.0) as u64).min(n);
    Ok((lo.min(n), hi))
}

/// A tail mass with its log2 companion (the linear value underflows long
/// before the log does).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailMass {
    pub value: f64,
    pub log2_value: f64,
}

fn log2_sum_exp2(vals: &[f64]) -> f64 {
    let m = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    m + vals.iter().map(|v| (v - m).exp2()).sum::<f64>().log2()
}

/// Union-style Markov bound on the probability that a random function has
/// any maximal interval outside the central band.
pub fn out_of_band_tail(n: u64, p: f64) -> Result<TailMass> {
    let (lo, hi) = central_band(n, p)?;
    let mut logs = Vec::new();
    for k in (0..lo).chain(hi + 1..=n) {
        logs.push(expected_count_log2(n, k, p)?.min(0.0));
    }
    let log2_value = log2_sum_exp2(&logs);
    Ok(TailMass {
        value: log2_value.exp2().min(1.0),
        log2_value,
    })
}

/// One `lower <= middle <= upper` chain with the evaluated members.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InequalityChain {
    pub lower: Option<f64>,
    pub middle: f64,
    pub upper: f64,
}

impl InequalityChain {
    /// Both orderings, with a relative slack that covers f64 rounding of the
    /// three independent evaluations.
    pub fn holds(&self) -> bool {
        let tol = |a: f64, b: f64| 1e-12 * a.abs().max(b.abs()).max(1.0);
        let low_ok = match self.lower {
            Some(l) => l <= self.middle + tol(l, self.middle),
            None => true,
        };
        low_ok && self.middle <= self.upper + tol(self.middle, self.upper)
    }
}

/// Evaluations of the three exponential-bound chains at `(x, y)`; a chain is
/// absent when `(x, y)` is outside its domain.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BoundReport {
    /// `exp(x(1-x/2)y) <= (1+x)^y <= exp(xy)` for `0 <= x <= 1, 0 <= y`.
    pub one_plus: Option<InequalityChain>,
    /// `exp(-x(1+x)y) <= (1-x)^y <= exp(-xy)` for `0 <= x <= 1, 0 <= y`;
    /// the lower bound needs `x <= 1/2`.
    pub one_minus: Option<InequalityChain>,
    /// `(1-x/y)^((x-1)/2) <= prod_{i=1}^{x-1}(1-i/y) <= (1-x/(2y))^(x-1)`
    /// for natural `x <= y`.
    pub falling_product: Option<InequalityChain>,
}

/// Text-table rendering: one row per applicable chain.
impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:<16} {:>24} {:>24} {:>24} {:>6}",
            "chain", "lower", "middle", "upper", "holds"
        )?;
        let mut row = |name: &str, c: &InequalityChain| {
            let lower = c
                .lower
                .map(|l| format!("{l:.16e}"))
                .unwrap_or_else(|| "-".into());
            writeln!(
                f,
                "{name:<16} {lower:>24} {:>24.16e} {:>24.16e} {:>6}",
                c.middle,
                c.upper,
                c.holds()
            )
        };
        if let Some(c) = &self.one_plus {
            row("one_plus", c)?;
        }
        if let Some(c) = &self.one_minus {
            row("one_minus", c)?;
        }
        if let Some(c) = &self.falling_product {
            row("falling_product", c)?;
        }
        Ok(())
    }
}

pub fn bound_checks(x: f64, y: f64) -> BoundReport {
    let mut report = BoundReport::default();
    if (0.0..=1.0).contains(&x) && y >= 0.0 {
        report.one_plus = Some(InequalityChain {
            lower: Some((x * (1.0 - x / 2.0) * y).exp()),
            middle: (1.0 + x).powf(y),
            upper: (x * y).exp(),
        });
        report.one_minus = Some(InequalityChain {
            lower: (x <= 0.5).then(|| (-x * (1.0 + x) * y).exp()),
            middle: (1.0 - x).powf(y),
            upper: (-x * y).exp(),
        });
    }
    let is_natural = |v: f64| v >= 1.0 && v.fract() == 0.0 && v <= 2f64.powi(53);
    if is_natural(x) && is_natural(y) && x <= y {
        let mut product = 1.0;
        let mut i = 1.0;
        while i < x {
            product *= 1.0 - i / y;
            i += 1.0;
        }
        report.falling_product = Some(InequalityChain {
            lower: Some((1.0 - x / y).powf((x - 1.0) / 2.0)),
            middle: product,
            upper: (1.0 - x / (2.0 * y)).powf(x - 1.0),
        });
    }
    report
}

/// Convergence anchor used by the self-checks: at `k0` the `a` factor of the
/// ratio approaches 1 and the `b` factor approaches e.
pub fn ratio_limits_at_peak(n: u64, p: f64) -> Result<(f64, f64)> {
    let pts = characteristic_points(n, p)?;
    let d = ratio(n, pts.k0.round(), p)?;
    Ok(((d.a - 1.0).abs(), (d.b - E).abs()))
}

/// Second differences of the log2 curve. The single-peak shape does not make
/// these all nonpositive (the curve is unimodal, not discretely concave), so
/// they are reported rather than asserted.
pub fn log2_second_differences(n: u64, p: f64) -> Result<Vec<f64>> {
    let curve = ExpectationCurve::compute(n, p)?;
    Ok(curve
        .log2
        .windows(3)
        .map(|w| w[2] - 2.0 * w[1] + w[0])
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    const REL: f64 = 1e-9;

    fn rel_eq(a: f64, b: f64) -> bool {
        (a - b).abs() <= REL * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
    }

    #[test]
    fn expected_count_boundary_rows() {
        // n=4, k=1, p=1/2 -> (n/4)(3/2)^(n-1)
        assert!(rel_eq(expected_count(4, 1, 0.5).unwrap(), 3.375));
        // k=0 at p=1/2 is always 1/2
        for n in [2u64, 5, 17, 40, 1000] {
            assert!(rel_eq(expected_count(n, 0, 0.5).unwrap(), 0.5), "n={n}");
        }
        // n=2, k=1 matches the exhaustive value
        assert!(rel_eq(expected_count(2, 1, 0.5).unwrap(), 0.75));
        // k=n leaves only p^(2^n)
        assert!(rel_eq(expected_count(2, 2, 0.5).unwrap(), 0.0625));
        assert!(rel_eq(expected_count(3, 3, 0.3).unwrap(), 0.3f64.powi(8)));
    }

    #[test]
    fn expected_count_rejects_bad_domain() {
        assert!(expected_count(4, 5, 0.5).is_err());
        assert!(expected_count(4, 1, 0.0).is_err());
        assert!(expected_count(4, 1, 1.0).is_err());
    }

    #[test]
    fn log_values_stay_finite_at_extreme_scale() {
        let n = 1_000_000u64;
        for k in [0u64, 1, 5, 100, 1024, 1075, 500_000, 999_999, 1_000_000] {
            let l = expected_count_log2(n, k, 0.5).unwrap();
            assert!(l.is_finite(), "k={k} log2={l}");
        }
    }

    #[test]
    fn ratio_a_factor_example() {
        let d = ratio(16, 2.0, 0.5).unwrap();
        assert!(rel_eq(d.a, 14.0 / 16.0));
    }

    #[test]
    fn ratio_matches_count_quotient() {
        for n in 2..=30u64 {
            for pi in 1..=9 {
                let p = pi as f64 / 10.0;
                for k in 0..n {
                    let d = ratio(n, k as f64, p).unwrap();
                    let quotient = (expected_count_log2(n, k + 1, p).unwrap()
                        - expected_count_log2(n, k, p).unwrap())
                    .exp2();
                    assert!(
                        rel_eq(d.r, quotient),
                        "n={n} k={k} p={p}: {} vs {quotient}",
                        d.r
                    );
                }
            }
        }
    }

    #[test]
    fn ratio_limits_tighten_with_n() {
        // n of the form 2^(2^m) keeps the rounded peak position exact
        let mut last = (f64::INFINITY, f64::INFINITY);
        for n in [1u64 << 4, 1 << 8, 1 << 16] {
            let (da, db) = ratio_limits_at_peak(n, 0.5).unwrap();
            assert!(da < last.0 && db < last.1, "n={n} {da} {db} vs {last:?}");
            last = (da, db);
        }
        assert!(last.0 < 1e-3 && last.1 < 1e-2);
    }

    #[test]
    fn b_step_below_one() {
        assert!(ratio_b_step(10, 1.0, 0.5).unwrap() < 1.0);
        // at k=8 the gap to 1 is ~2^-254 * 2: only the log resolves it
        assert!(ratio_b_step_log2(10, 8.0, 0.5).unwrap() < 0.0);
        for n in 2..=30u64 {
            for pi in 1..=9 {
                let p = pi as f64 / 10.0;
                let mut k = 0.0;
                while k < n as f64 - 1.0 {
                    let log2_step = ratio_b_step_log2(n, k, p).unwrap();
                    assert!(log2_step < 0.0, "n={n} k={k} p={p} log2={log2_step}");
                    let step = ratio_b_step(n, k, p).unwrap();
                    assert!(step <= 1.0, "n={n} k={k} p={p} step={step}");
                    // consistency with the b factors of two ratio calls,
                    // where the quotient is resolvable
                    let b0 = ratio(n, k, p).unwrap().b;
                    let b1 = ratio(n, k + 1.0, p).unwrap().b;
                    if step < 1.0 {
                        assert!(rel_eq(step, b1 / b0), "n={n} k={k} p={p}");
                    }
                    k += 0.5;
                }
            }
        }
    }

    #[test]
    fn characteristic_points_at_half() {
        let pts = characteristic_points(16, 0.5).unwrap();
        assert!(pts.k1.abs() < 1e-12);
        assert!(rel_eq(pts.k0, 2.0));
        assert!(rel_eq(pts.k2, 4.0));
        // threshold identities
        assert!(rel_eq(allones_probability(pts.k1, 0.5).unwrap(), 0.5));
        assert!(rel_eq(
            allones_probability(pts.k0, 0.5).unwrap(),
            1.0 / 16.0
        ));
        assert!(rel_eq(
            allones_probability(pts.k2, 0.5).unwrap(),
            2f64.powi(-16)
        ));
    }

    #[test]
    fn characteristic_identities_over_grid() {
        for n in [2u64, 3, 10, 100, 4096] {
            for p in [0.1, 0.25, 0.5, 0.75, 0.9] {
                let pts = characteristic_points(n, p).unwrap();
                assert!(pts.k1 <= pts.k0 + 1e-12 && pts.k0 <= pts.k2 + 1e-12);
                assert!(rel_eq(allones_probability(pts.k1, p).unwrap(), 0.5));
                assert!(rel_eq(
                    allones_probability(pts.k0, p).unwrap(),
                    1.0 / n as f64
                ));
                let e2 = allones_probability(pts.k2, p).unwrap();
                let want = (-(n as f64)).exp2();
                assert!(rel_eq(e2, want), "n={n} p={p}: {e2} vs {want}");
            }
        }
    }

    #[test]
    fn asymptotic_is_finite_and_positive_at_k1() {
        let v = asymptotic_estimate(10, 1.0, 0.5).unwrap();
        assert!(v.is_finite() && v > 0.0);
        assert!(asymptotic_log2(10, 0.5, 0.5).is_err());
    }

    #[test]
    fn boundary_table_rows() {
        let t = boundary_values(4, 0.5).unwrap();
        assert_eq!(
            t.rows.iter().map(|r| r.k).collect::<Vec<_>>(),
            vec![0, 1, 3, 4]
        );
        assert!(rel_eq(t.rows[0].value, 0.5));
        assert!(rel_eq(t.rows[1].value, 3.375));
        assert!(rel_eq(t.rows[3].value, 2f64.powi(-16)));

        // at n=3 the closed form gives 2n * p^4 * (1 - p^4) = 0.3515625,
        // while the printed n*2^(n-1) factor would double it
        let t3 = boundary_values(3, 0.5).unwrap();
        let row = t3.rows.iter().find(|r| r.k == 2).unwrap();
        assert!(rel_eq(row.value, 0.3515625));
        let printed = row.printed_factor_value.unwrap();
        assert!(rel_eq(printed, 0.703125));
        assert!(!rel_eq(row.value, printed));
    }

    #[test]
    fn argmax_examples() {
        assert_eq!(argmax_k(256, 0.5).unwrap(), 3);
        let a16 = argmax_k(16, 0.5).unwrap();
        assert!(a16 == 2 || a16 == 3, "argmax={a16}");
    }

    #[test]
    fn single_peak_examples() {
        assert_eq!(single_peak(256, 0.5).unwrap(), Some(3));
        // boundary peak: tiny p pushes the peak to k=0
        assert_eq!(single_peak(8, 0.1).unwrap(), Some(0));
    }

    #[test]
    fn tail_bound_examples() {
        assert!(rel_eq(tail_bound(4, 4, 0.5).unwrap(), 2f64.powi(-16)));
        // expected count around 96 saturates the probability bound at 1
        assert_eq!(tail_bound(10, 1, 0.5).unwrap(), 1.0);
    }

    #[test]
    fn out_of_band_examples() {
        let (lo, hi) = central_band(14, 0.5).unwrap();
        assert_eq!((lo, hi), (0, 4));
        let tail = out_of_band_tail(14, 0.5).unwrap();
        assert!(tail.value > 2.3e-4 && tail.value < 2.5e-4, "{}", tail.value);

        // empty tail: p = 1/2, n = 2 has band [0, 2]
        let t2 = out_of_band_tail(2, 0.5).unwrap();
        assert_eq!(t2.value, 0.0);
        assert_eq!(t2.log2_value, f64::NEG_INFINITY);
    }

    #[test]
    fn bound_checks_identity_case() {
        let r = bound_checks(0.0, 3.0);
        let c = r.one_plus.unwrap();
        assert_eq!((c.lower.unwrap(), c.middle, c.upper), (1.0, 1.0, 1.0));
        assert!(c.holds());
    }

    #[test]
    fn bound_checks_one_plus_at_x1_y1() {
        let c = bound_checks(1.0, 1.0).one_plus.unwrap();
        assert!(rel_eq(c.lower.unwrap(), 0.5f64.exp()));
        assert!(rel_eq(c.middle, 2.0));
        assert!(rel_eq(c.upper, 1.0f64.exp()));
        assert!(c.holds());
    }

    #[test]
    fn bound_checks_product_example() {
        let c = bound_checks(3.0, 6.0).falling_product.unwrap();
        assert!(rel_eq(c.lower.unwrap(), 0.5));
        assert!(rel_eq(c.middle, 5.0 / 9.0));
        assert!(rel_eq(c.upper, 0.5625));
        assert!(c.holds());
    }

    #[test]
    fn bound_report_renders_as_table() {
        let text = bound_checks(3.0, 6.0).to_string();
        assert!(text.lines().count() == 2);
        assert!(text.contains("falling_product") && text.contains("true"));
        let text = bound_checks(0.25, 2.0).to_string();
        assert!(text.contains("one_plus") && text.contains("one_minus"));
    }

    #[test]
    fn second_differences_report() {
        let d2 = log2_second_differences(16, 0.5).unwrap();
        assert_eq!(d2.len(), 15);
        assert!(d2.iter().all(|d| d.is_finite()));
    }

    #[test]
    fn bound_checks_domains() {
        let r = bound_checks(2.0, 3.0);
        assert!(r.one_plus.is_none() && r.one_minus.is_none());
        // x=2, y=3 are natural with x <= y
        assert!(r.falling_product.is_some());
        let r = bound_checks(0.7, 2.0);
        assert!(r.one_minus.unwrap().lower.is_none());
        assert!(r.falling_product.is_none());
    }
}
