//! The `verify` subcommand: runs the cross-checking property suites at
//! configurable grid sizes and reports one line per property.

use std::path::PathBuf;
use std::process::ExitCode;

use rayon::prelude::*;

use rdnf_core::analytics::{
    allones_probability, bound_checks, characteristic_points, expected_count, expected_count_log2,
    out_of_band_tail, ratio, ratio_b_step_log2, single_peak,
};
use rdnf_core::{
    blake_consensus, count_intervals, enumerate_bruteforce, enumerate_fast, exact_expectation,
    function_probability, monte_carlo, sample_function, ModelParams, TruthTable,
};

#[derive(clap::Args)]
pub struct VerifyArgs {
    /// Largest dimension exercised by the random-function agreement suite
    #[arg(long, default_value_t = 6)]
    n: usize,
    /// Random functions per (n, p) cell of the agreement suite
    #[arg(long, default_value_t = 200)]
    samples: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Randomized points per inequality chain
    #[arg(long, default_value_t = 10_000)]
    points: u64,
}

const REL: f64 = 1e-9;

fn rel_ok(a: f64, b: f64) -> bool {
    (a - b).abs() <= REL * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

pub fn cmd_verify(out: Option<&PathBuf>, args: &VerifyArgs) -> anyhow::Result<ExitCode> {
    let mut report = String::new();
    let mut first_failure: Option<&'static str> = None;

    let checks: Vec<(&'static str, Box<dyn Fn(&VerifyArgs) -> bool>)> = vec![
        (
            "interval counts sum to 3^n",
            Box::new(|_| interval_count_totals()),
        ),
        (
            "probability normalization",
            Box::new(|_| probability_normalization()),
        ),
        (
            "exhaustive expectation matches closed form",
            Box::new(exhaustive_matches_closed),
        ),
        (
            "enumerators agree on random functions",
            Box::new(enumerators_agree),
        ),
        (
            "step ratio matches count quotient",
            Box::new(|_| ratio_matches_quotient()),
        ),
        ("b-step stays below one", Box::new(|_| b_step_below_one())),
        (
            "characteristic point identities",
            Box::new(|_| characteristic_identities()),
        ),
        (
            "spectrum single-peaked near k0",
            Box::new(|_| spectrum_single_peaked()),
        ),
        ("exponential bound chains", Box::new(bound_chains)),
        (
            "monte carlo matches exhaustive expectation",
            Box::new(mc_matches_exhaustive),
        ),
        (
            "out-of-band tail decreasing in n",
            Box::new(|_| tail_decreasing()),
        ),
    ];

    for (name, check) in &checks {
        let ok = check(args);
        report.push_str(if ok { "ok   " } else { "FAIL " });
        report.push_str(name);
        report.push('\n');
        if !ok && first_failure.is_none() {
            first_failure = Some(name);
        }
    }

    match out {
        Some(path) => std::fs::write(path, &report)?,
        None => print!("{report}"),
    }
    if let Some(name) = first_failure {
        eprintln!("verification failed: {name}");
        return Ok(ExitCode::from(4));
    }
    Ok(ExitCode::SUCCESS)
}

fn interval_count_totals() -> bool {
    (1..=12usize).all(|n| {
        let total: u128 = (0..=n).map(|k| count_intervals(n, k).unwrap()).sum();
        total == 3u128.pow(n as u32)
    })
}

fn probability_normalization() -> bool {
    (1..=3usize).all(|n| {
        [0.25, 0.5, 0.75].iter().all(|&p| {
            let total: f64 = (0..1u64 << (1 << n))
                .map(|g| {
                    function_probability(&TruthTable::from_bits_u64(n, g).unwrap(), p).unwrap()
                })
                .sum();
            (total - 1.0).abs() < 1e-12
        })
    })
}

fn exhaustive_matches_closed(args: &VerifyArgs) -> bool {
    (2..=args.n.min(4)).all(|n| {
        [0.25, 0.5, 0.75].iter().all(|&p| {
            let exhaustive = exact_expectation(n, p).unwrap();
            (0..=n).all(|k| {
                rel_ok(
                    exhaustive[k],
                    expected_count(n as u64, k as u64, p).unwrap(),
                )
            })
        })
    })
}

fn enumerators_agree(args: &VerifyArgs) -> bool {
    (2..=args.n).all(|n| {
        [0.3, 0.5, 0.7].iter().enumerate().all(|(pi, &p)| {
            let params = ModelParams {
                n,
                p,
                seed: args.seed.wrapping_add((n * 10 + pi) as u64),
                samples: args.samples,
            };
            (0..params.samples).into_par_iter().all(|i| {
                let f = sample_function(&params, i).unwrap();
                let fast = enumerate_fast(&f).unwrap();
                let blake = blake_consensus(&f).unwrap();
                let brute_ok = if n <= rdnf_core::N_MAX_BRUTE {
                    enumerate_bruteforce(&f).unwrap() == fast
                } else {
                    true
                };
                brute_ok && blake == fast
            })
        })
    })
}

fn ratio_matches_quotient() -> bool {
    (2..=30u64).all(|n| {
        (1..=9).all(|pi| {
            let p = pi as f64 / 10.0;
            (0..n).all(|k| {
                let r = ratio(n, k as f64, p).unwrap().r;
                let quotient = (expected_count_log2(n, k + 1, p).unwrap()
                    - expected_count_log2(n, k, p).unwrap())
                .exp2();
                rel_ok(r, quotient)
            })
        })
    })
}

fn b_step_below_one() -> bool {
    (2..=30u64).all(|n| {
        (1..=9).all(|pi| {
            let p = pi as f64 / 10.0;
            (0..n.saturating_sub(1)).all(|k| ratio_b_step_log2(n, k as f64, p).unwrap() < 0.0)
        })
    })
}

fn characteristic_identities() -> bool {
    [2u64, 3, 10, 100, 4096].iter().all(|&n| {
        [0.1, 0.25, 0.5, 0.75, 0.9].iter().all(|&p| {
            let pts = characteristic_points(n, p).unwrap();
            pts.k1 <= pts.k0 + 1e-12
                && pts.k0 <= pts.k2 + 1e-12
                && rel_ok(allones_probability(pts.k1, p).unwrap(), 0.5)
                && rel_ok(allones_probability(pts.k0, p).unwrap(), 1.0 / n as f64)
                && rel_ok(
                    allones_probability(pts.k2, p).unwrap(),
                    (-(n as f64)).exp2(),
                )
        })
    })
}

fn spectrum_single_peaked() -> bool {
    let mut n = 8u64;
    while n <= 1024 {
        for pi in 1..=9u32 {
            if single_peak(n, pi as f64 / 10.0).unwrap().is_none() {
                return false;
            }
        }
        n *= 2;
    }
    [256u64, 1024].iter().all(|&n| {
        let peak = single_peak(n, 0.5).unwrap().unwrap();
        let k0 = characteristic_points(n, 0.5).unwrap().k0;
        peak == k0.floor() as u64 || peak == k0.ceil() as u64
    })
}

struct SplitMix(u64);

impl SplitMix {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    fn unit(&mut self) -> f64 {
        (self.next() >> 11) as f64 / (1u64 << 53) as f64
    }
}

fn bound_chains(args: &VerifyArgs) -> bool {
    let mut rng = SplitMix(args.seed);
    for _ in 0..args.points {
        let x = rng.unit();
        let y = rng.unit() * 100.0;
        let r = bound_checks(x, y);
        if !r.one_plus.is_some_and(|c| c.holds()) || !r.one_minus.is_some_and(|c| c.holds()) {
            return false;
        }
        let xn = 1 + rng.next() % 200;
        let yn = xn + rng.next() % 1000;
        if !bound_checks(xn as f64, yn as f64)
            .falling_product
            .is_some_and(|c| c.holds())
        {
            return false;
        }
    }
    true
}

fn mc_matches_exhaustive(args: &VerifyArgs) -> bool {
    let samples = (args.samples * 50).max(2000);
    let params = ModelParams {
        n: 2,
        p: 0.5,
        seed: args.seed,
        samples,
    };
    let est = monte_carlo(&params).unwrap();
    let exact = exact_expectation(2, 0.5).unwrap();
    (0..=2).all(|k| {
        let se = est.ses[k].max((exact[k] / samples as f64).sqrt());
        (est.means[k] - exact[k]).abs() <= 5.0 * se
    })
}

fn tail_decreasing() -> bool {
    let mut last = f64::INFINITY;
    for n in [1u64 << 10, 1 << 12, 1 << 14] {
        let t = out_of_band_tail(n, 0.5).unwrap();
        if t.log2_value >= last {
            return false;
        }
        last = t.log2_value;
    }
    true
}
