//! The random-function model: every vertex takes value 1 independently with
//! probability `p`. Provides sampling, exact function probabilities, the
//! exhaustive definition-level expectation of the spectrum, and Monte Carlo
//! estimation with standard errors.

use rayon::prelude::*;

use crate::cube::N_MAX_ENUM;
use crate::error::{RdnfError, Result};
use crate::maximal::{enumerate_bruteforce, FastEnumerator};
use crate::truth_table::TruthTable;

/// Exhaustive expectation iterates all `2^(2^n)` functions; 4 variables is
/// the last desk-scale case (65536 tables).
pub const N_MAX_EXHAUSTIVE: usize = 4;

/// Parameters of a sampling run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub n: usize,
    pub p: f64,
    pub seed: u64,
    pub samples: u64,
}

impl ModelParams {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.n > N_MAX_ENUM {
            return Err(RdnfError::DimensionCap {
                n: self.n,
                max: N_MAX_ENUM,
            });
        }
        check_probability(self.p)?;
        if self.samples == 0 {
            return Err(RdnfError::NoSamples);
        }
        Ok(())
    }
}

fn check_probability(p: f64) -> Result<()> {
    if !(p > 0.0 && p < 1.0) {
        return Err(RdnfError::InvalidProbability(p));
    }
    Ok(())
}

/// SplitMix64 stream. Streams for different `(seed, index)` pairs are
/// decorrelated by mixing the index through the same finalizer, so samples
/// can be generated independently and in parallel.
#[derive(Debug, Clone)]
pub(crate) struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;

    fn mix(mut z: u64) -> u64 {
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    pub(crate) fn for_stream(seed: u64, index: u64) -> Self {
        let state = Self::mix(seed ^ Self::mix(index.wrapping_add(1).wrapping_mul(Self::GOLDEN)));
        SplitMix64 { state }
    }

    #[inline]
    pub(crate) fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(Self::GOLDEN);
        Self::mix(self.state)
    }
}

/// Draws the truth table of stream `(seed, index)`: each of the `2^n` bits is
/// set independently with probability `p`. Fully determined by the inputs.
pub fn sample_function(params: &ModelParams, index: u64) -> Result<TruthTable> {
    params.validate()?;
    if index >= params.samples {
        return Err(RdnfError::IndexOutOfRange {
            index,
            limit: params.samples,
        });
    }
    let mut rng = SplitMix64::for_stream(params.seed, index);
    let mut t = TruthTable::zeros(params.n)?;
    // threshold comparison keeps the draw exact given the f64 rounding of p
    let threshold = (params.p * (u64::MAX as f64 + 1.0)) as u64;
    for i in 0..1u32 << params.n {
        if rng.next_u64() < threshold {
            t.set(i, true);
        }
    }
    Ok(t)
}

/// Probability of one fully defined function under the model:
/// `p^(#ones) * (1-p)^(#zeros)`, evaluated in the log domain.
pub fn function_probability(f: &TruthTable, p: f64) -> Result<f64> {
    check_probability(p)?;
    let ones = f.ones_count() as f64;
    let zeros = (f.len() as u64 - f.ones_count()) as f64;
    Ok((ones * p.ln() + zeros * (1.0 - p).ln()).exp())
}

/// Definition-level expected spectrum: the probability-weighted sum of
/// `r_k(f)` over every one of the `2^(2^n)` functions, with `r_k` taken from
/// the brute-force enumerator. Capped at `n <= 4`.
pub fn exact_expectation(n: usize, p: f64) -> Result<Vec<f64>> {
    if n == 0 || n > N_MAX_EXHAUSTIVE {
        return Err(RdnfError::DimensionCap {
            n,
            max: N_MAX_EXHAUSTIVE,
        });
    }
    check_probability(p)?;
    let bits = 1usize << n;
    let mut acc = vec![0.0f64; n + 1];
    for g in 0..1u64 << bits {
        let f = TruthTable::from_bits_u64(n, g)?;
        let weight = function_probability(&f, p)?;
        let spec = enumerate_bruteforce(&f)?.spectrum();
        for k in 0..=n {
            acc[k] += weight * spec.counts()[k] as f64;
        }
    }
    Ok(acc)
}

/// Monte Carlo estimate of the expected spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct McEstimate {
    pub n: usize,
    pub means: Vec<f64>,
    /// Standard error of each mean (unbiased sample variance); 0 when only
    /// one sample was drawn.
    pub ses: Vec<f64>,
    pub samples: u64,
}

/// Per-sample spectra reduced with exact integer sums, so the result is
/// bit-identical regardless of worker count or merge order.
pub fn monte_carlo(params: &ModelParams) -> Result<McEstimate> {
    params.validate()?;
    let n = params.n;
    let (sum, sumsq) = (0..params.samples)
        .into_par_iter()
        .map_init(
            || (FastEnumerator::new(n), vec![0u64; n + 1]),
            |(dp, counts), i| {
                counts.iter_mut().for_each(|c| *c = 0);
                let f = sample_function(params, i).expect("validated params");
                dp.accumulate_spectrum(&f, counts);
                let sum: Vec<u128> = counts.iter().map(|&c| u128::from(c)).collect();
                let sumsq: Vec<u128> = counts
                    .iter()
                    .map(|&c| u128::from(c) * u128::from(c))
                    .collect();
                (sum, sumsq)
            },
        )
        .reduce(
            || (vec![0u128; n + 1], vec![0u128; n + 1]),
            |(mut a, mut a2), (b, b2)| {
                for k in 0..=n {
                    a[k] += b[k];
                    a2[k] += b2[k];
                }
                (a, a2)
            },
        );

    let s = params.samples;
    let mut means = Vec::with_capacity(n + 1);
    let mut ses = Vec::with_capacity(n + 1);
    for k in 0..=n {
        means.push(sum[k] as f64 / s as f64);
        if s < 2 {
            ses.push(0.0);
        } else {
            // S*sumsq - sum^2 is exact in u128, which avoids cancellation
            let num = u128::from(s) * sumsq[k] - sum[k] * sum[k];
            let var = num as f64 / (s as f64 * (s - 1) as f64);
            ses.push((var / s as f64).sqrt());
        }
    }
    Ok(McEstimate {
        n,
        means,
        ses,
        samples: s,
    })
}

/// Fraction of sampled functions that have at least one maximal interval of
/// dimension below `k_low` or above `k_high`.
pub fn tail_frequency(params: &ModelParams, k_low: usize, k_high: usize) -> Result<f64> {
    params.validate()?;
    let n = params.n;
    if k_low > k_high || k_high > n {
        return Err(RdnfError::KOutOfRange {
            k: k_high.max(k_low),
            n,
        });
    }
    let hits: u64 = (0..params.samples)
        .into_par_iter()
        .map_init(
            || (FastEnumerator::new(n), vec![0u64; n + 1]),
            |(dp, counts), i| {
                counts.iter_mut().for_each(|c| *c = 0);
                let f = sample_function(params, i).expect("validated params");
                dp.accumulate_spectrum(&f, counts);
                let outside = counts[..k_low].iter().any(|&c| c > 0)
                    || counts[k_high + 1..].iter().any(|&c| c > 0);
                u64::from(outside)
            },
        )
        .sum();
    Ok(hits as f64 / params.samples as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(n: usize, p: f64, seed: u64, samples: u64) -> ModelParams {
        ModelParams {
            n,
            p,
            seed,
            samples,
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        let pr = params(6, 0.4, 17, 10);
        let a = sample_function(&pr, 3).unwrap();
        let b = sample_function(&pr, 3).unwrap();
        assert_eq!(a, b);
        let c = sample_function(&pr, 4).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn sampling_rejects_bad_params() {
        assert!(sample_function(&params(6, 0.0, 1, 1), 0).is_err());
        assert!(sample_function(&params(6, 1.0, 1, 1), 0).is_err());
        assert!(sample_function(&params(6, 0.5, 1, 1), 1).is_err());
        assert!(sample_function(&params(0, 0.5, 1, 1), 0).is_err());
        assert!(sample_function(&params(6, 0.5, 1, 0), 0).is_err());
    }

    #[test]
    fn sample_density_matches_p() {
        // binomial se over 10^4 samples of 2^10 bits each
        let pr = params(10, 0.3, 2024, 10_000);
        let total_bits = (pr.samples * (1u64 << pr.n)) as f64;
        let ones: u64 = (0..pr.samples)
            .map(|i| sample_function(&pr, i).unwrap().ones_count())
            .sum();
        let density = ones as f64 / total_bits;
        let se = (0.3f64 * 0.7 / total_bits).sqrt();
        assert!(
            (density - 0.3).abs() <= 5.0 * se,
            "density {density} vs 0.3 +- {}",
            5.0 * se
        );
    }

    #[test]
    fn function_probability_examples() {
        let z2 = TruthTable::zeros(2).unwrap();
        assert!((function_probability(&z2, 0.5).unwrap() - 0.0625).abs() < 1e-15);

        let o2 = TruthTable::ones(2).unwrap();
        assert!((function_probability(&o2, 0.25).unwrap() - 0.00390625).abs() < 1e-15);

        // normalization over all 16 functions of n=2
        for p in [0.25, 0.5, 0.9] {
            let total: f64 = (0..16u64)
                .map(|g| {
                    function_probability(&TruthTable::from_bits_u64(2, g).unwrap(), p).unwrap()
                })
                .sum();
            assert!((total - 1.0).abs() < 1e-12, "p={p} total={total}");
        }

        assert!(function_probability(&z2, 1.0).is_err());
    }

    #[test]
    fn exact_expectation_n2() {
        let e = exact_expectation(2, 0.5).unwrap();
        let expected = [0.5, 0.75, 0.0625];
        for (a, b) in e.iter().zip(expected) {
            assert!((a - b).abs() < 1e-12, "{e:?}");
        }
        // k=0 entry is 2^n * p * (1-p)^n for any p
        for p in [0.1, 0.37, 0.8] {
            let e = exact_expectation(2, p).unwrap();
            assert!((e[0] - 4.0 * p * (1.0 - p) * (1.0 - p)).abs() < 1e-12);
        }
    }

    #[test]
    fn exact_expectation_n3_k1() {
        let e = exact_expectation(3, 0.5).unwrap();
        assert!((e[1] - 1.6875).abs() < 1e-12, "{e:?}");
    }

    #[test]
    fn exact_expectation_cap() {
        assert!(exact_expectation(5, 0.5).is_err());
        assert!(exact_expectation(0, 0.5).is_err());
    }

    #[test]
    fn monte_carlo_matches_exact_at_n2() {
        let pr = params(2, 0.5, 7, 20_000);
        let est = monte_carlo(&pr).unwrap();
        let exact = exact_expectation(2, 0.5).unwrap();
        for k in 0..=2 {
            let se = est.ses[k].max((exact[k] / pr.samples as f64).sqrt());
            assert!(
                (est.means[k] - exact[k]).abs() <= 5.0 * se,
                "k={k} mean={} exact={} se={se}",
                est.means[k],
                exact[k]
            );
        }
    }

    #[test]
    fn monte_carlo_single_sample_reports_zero_se() {
        let est = monte_carlo(&params(3, 0.5, 1, 1)).unwrap();
        assert!(est.ses.iter().all(|&s| s == 0.0));
        assert_eq!(est.samples, 1);
    }

    #[test]
    fn monte_carlo_is_reproducible() {
        let pr = params(5, 0.35, 99, 400);
        let a = monte_carlo(&pr).unwrap();
        let b = monte_carlo(&pr).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn tail_frequency_full_band_is_zero() {
        let pr = params(5, 0.5, 3, 200);
        assert_eq!(tail_frequency(&pr, 0, 5).unwrap(), 0.0);
        assert!(tail_frequency(&pr, 3, 2).is_err());
        assert!(tail_frequency(&pr, 0, 6).is_err());
    }

    #[test]
    fn tail_frequency_near_one_at_high_p() {
        // p close to 1 makes the constant-1 function (full-cube interval) common
        let pr = params(4, 0.99, 5, 2000);
        let freq = tail_frequency(&pr, 0, 3).unwrap();
        assert!(freq > 0.5, "freq={freq}");
    }
}
