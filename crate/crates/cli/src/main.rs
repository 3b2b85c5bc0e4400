//! `rdnf` — enumeration, spectra, sampling and analytics of maximal
//! intervals of Boolean functions, with deterministic CSV/JSON output.
//!
//! Exit codes: 0 success, 2 usage or parse problem, 3 resource cap exceeded,
//! 4 verification failure.

mod verify;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use rdnf_core::analytics::{argmax_k, boundary_values, characteristic_points, ExpectationCurve};
use rdnf_core::{
    enumerate_fast, exact_expectation, monte_carlo, sample_function, ModelParams, RdnfError,
    TruthTable,
};

#[derive(Parser)]
#[command(name = "rdnf", version, about, propagate_version = true)]
struct Cli {
    /// Worker threads for sampling and verification (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write output to this file instead of stdout
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// List the maximal intervals and the spectrum of one function
    Enumerate(EnumerateArgs),
    /// Expected spectrum of the random model, closed form, any n
    Expect(ExpectArgs),
    /// Exhaustive definition-level expected spectrum (n <= 4)
    Exact(NpArgs),
    /// Monte Carlo estimate of the expected spectrum
    Mc(McArgs),
    /// Characteristic points of the expected spectrum and its peak
    Points(NpArgs),
    /// Boundary rows (k = 0, 1, n-1, n) of the expected spectrum
    Table(NpArgs),
    /// Run the cross-checking property suites
    Verify(verify::VerifyArgs),
}

#[derive(clap::Args)]
struct EnumerateArgs {
    /// Truth-table file: a line "n=<int>", then one hex line
    #[arg(long = "in", value_name = "FILE", conflicts_with_all = ["n", "p", "seed"])]
    input: Option<PathBuf>,
    /// Dimension of a freshly sampled random function
    #[arg(long, requires = "p")]
    n: Option<usize>,
    /// Probability of a 1 value per vertex
    #[arg(long, requires = "n")]
    p: Option<f64>,
    /// Seed for the sampled function
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(clap::Args)]
struct NpArgs {
    #[arg(long)]
    n: u64,
    #[arg(long)]
    p: f64,
}

#[derive(clap::Args)]
struct ExpectArgs {
    #[arg(long)]
    n: u64,
    #[arg(long)]
    p: f64,
    /// Restrict rows to one k ("3") or an inclusive range ("2..5")
    #[arg(long)]
    k: Option<String>,
}

#[derive(clap::Args)]
struct McArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: f64,
    #[arg(long, default_value_t = 1000)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// 17 significant digits, '.' decimal, locale-free.
fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn emit(out: &Option<PathBuf>, content: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => fs::write(path, content)
            .with_context(|| format!("writing output to {}", path.display()))?,
        None => print!("{content}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(2);
        }
        // a failure here means the pool already exists, which is fine
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    match run(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(classify(&err))
        }
    }
}

/// Maps errors onto the documented exit codes: caps and overflows are
/// resource limits (3), everything else is a usage/parse problem (2).
fn classify(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<RdnfError>() {
        Some(RdnfError::DimensionCap { .. }) | Some(RdnfError::Overflow(_)) => 3,
        _ => 2,
    }
}

fn run(cli: &Cli) -> anyhow::Result<ExitCode> {
    match &cli.command {
        Command::Enumerate(args) => cmd_enumerate(cli, args)?,
        Command::Expect(args) => cmd_expect(cli, args)?,
        Command::Exact(args) => cmd_exact(cli, args)?,
        Command::Mc(args) => cmd_mc(cli, args)?,
        Command::Points(args) => cmd_points(cli, args)?,
        Command::Table(args) => cmd_table(cli, args)?,
        Command::Verify(args) => return verify::cmd_verify(cli.out.as_ref(), args),
    }
    Ok(ExitCode::SUCCESS)
}

fn load_or_sample(args: &EnumerateArgs) -> anyhow::Result<TruthTable> {
    if let Some(path) = &args.input {
        let text = fs::read_to_string(path)
            .with_context(|| format!("reading truth table from {}", path.display()))?;
        return Ok(TruthTable::parse_text(&text)?);
    }
    match (args.n, args.p) {
        (Some(n), Some(p)) => {
            let params = ModelParams {
                n,
                p,
                seed: args.seed,
                samples: 1,
            };
            Ok(sample_function(&params, 0)?)
        }
        _ => anyhow::bail!("either --in FILE or both --n and --p are required"),
    }
}

fn cmd_enumerate(cli: &Cli, args: &EnumerateArgs) -> anyhow::Result<()> {
    let table = load_or_sample(args)?;
    let dnf = enumerate_fast(&table)?;
    let spectrum = dnf.spectrum();
    let content = match cli.format {
        Format::Csv => {
            let mut s = String::new();
            for line in dnf.ternary_lines() {
                s.push_str(&line);
                s.push('\n');
            }
            s.push_str("k,count\n");
            for (k, count) in spectrum.counts().iter().enumerate() {
                s.push_str(&format!("{k},{count}\n"));
            }
            s
        }
        Format::Json => {
            let v = json!({
                "n": table.dimension(),
                "table_hex": table.hex_string(),
                "intervals": dnf.ternary_lines(),
                "spectrum": spectrum.counts(),
                "complexity": spectrum.complexity(),
            });
            format!("{v}\n")
        }
    };
    emit(&cli.out, &content)
}

fn parse_k_spec(spec: &str, n: u64) -> anyhow::Result<(u64, u64)> {
    let parse = |s: &str| -> anyhow::Result<u64> {
        s.trim()
            .parse::<u64>()
            .with_context(|| format!("invalid k value {s:?}"))
    };
    let (lo, hi) = match spec.split_once("..") {
        Some((a, b)) => (parse(a)?, parse(b)?),
        None => {
            let k = parse(spec)?;
            (k, k)
        }
    };
    anyhow::ensure!(lo <= hi && hi <= n, "k range {lo}..{hi} outside 0..={n}");
    Ok((lo, hi))
}

fn cmd_expect(cli: &Cli, args: &ExpectArgs) -> anyhow::Result<()> {
    let curve = ExpectationCurve::compute(args.n, args.p)?;
    let (lo, hi) = match &args.k {
        Some(spec) => parse_k_spec(spec, args.n)?,
        None => (0, args.n),
    };
    let content = match cli.format {
        Format::Csv => {
            let mut s = String::from("k,log2_value,value\n");
            for k in lo..=hi {
                let i = k as usize;
                s.push_str(&format!(
                    "{k},{},{}\n",
                    fmt_f64(curve.log2[i]),
                    fmt_f64(curve.values[i])
                ));
            }
            s
        }
        Format::Json => {
            let rows: Vec<_> = (lo..=hi)
                .map(|k| {
                    let i = k as usize;
                    json!({"k": k, "log2_value": curve.log2[i], "value": curve.values[i]})
                })
                .collect();
            format!("{}\n", json!({"n": args.n, "p": args.p, "rows": rows}))
        }
    };
    emit(&cli.out, &content)
}

fn cmd_exact(cli: &Cli, args: &NpArgs) -> anyhow::Result<()> {
    let values = exact_expectation(args.n as usize, args.p)?;
    let content = match cli.format {
        Format::Csv => {
            let mut s = String::from("k,value\n");
            for (k, v) in values.iter().enumerate() {
                s.push_str(&format!("{k},{}\n", fmt_f64(*v)));
            }
            s
        }
        Format::Json => {
            let rows: Vec<_> = values
                .iter()
                .enumerate()
                .map(|(k, v)| json!({"k": k, "value": v}))
                .collect();
            format!("{}\n", json!({"n": args.n, "p": args.p, "rows": rows}))
        }
    };
    emit(&cli.out, &content)
}

fn cmd_mc(cli: &Cli, args: &McArgs) -> anyhow::Result<()> {
    let params = ModelParams {
        n: args.n,
        p: args.p,
        seed: args.seed,
        samples: args.samples,
    };
    let est = monte_carlo(&params)?;
    let content = match cli.format {
        Format::Csv => {
            let mut s = String::from("k,mean,se,samples\n");
            for k in 0..=args.n {
                s.push_str(&format!(
                    "{k},{},{},{}\n",
                    fmt_f64(est.means[k]),
                    fmt_f64(est.ses[k]),
                    est.samples
                ));
            }
            s
        }
        Format::Json => {
            let rows: Vec<_> = (0..=args.n)
                .map(|k| json!({"k": k, "mean": est.means[k], "se": est.ses[k]}))
                .collect();
            let v = json!({
                "n": args.n,
                "p": args.p,
                "seed": args.seed,
                "samples": est.samples,
                "rows": rows,
            });
            format!("{v}\n")
        }
    };
    emit(&cli.out, &content)
}

fn cmd_points(cli: &Cli, args: &NpArgs) -> anyhow::Result<()> {
    let pts = characteristic_points(args.n, args.p)?;
    let argmax = argmax_k(args.n, args.p)?;
    let content = match cli.format {
        Format::Csv => format!(
            "k1,k0,k2,argmax\n{},{},{},{argmax}\n",
            fmt_f64(pts.k1),
            fmt_f64(pts.k0),
            fmt_f64(pts.k2)
        ),
        Format::Json => format!(
            "{}\n",
            json!({"k1": pts.k1, "k0": pts.k0, "k2": pts.k2, "argmax": argmax})
        ),
    };
    emit(&cli.out, &content)
}

fn cmd_table(cli: &Cli, args: &NpArgs) -> anyhow::Result<()> {
    let table = boundary_values(args.n, args.p)?;
    let content = match cli.format {
        Format::Csv => {
            let mut s = String::from("k,value,log2_value,printed_factor_value\n");
            for row in &table.rows {
                let printed = row.printed_factor_value.map(fmt_f64).unwrap_or_default();
                s.push_str(&format!(
                    "{},{},{},{printed}\n",
                    row.k,
                    fmt_f64(row.value),
                    fmt_f64(row.log2_value)
                ));
            }
            s
        }
        Format::Json => {
            let rows: Vec<_> = table
                .rows
                .iter()
                .map(|row| {
                    json!({
                        "k": row.k,
                        "value": row.value,
                        "log2_value": row.log2_value,
                        "printed_factor_value": row.printed_factor_value,
                    })
                })
                .collect();
            format!("{}\n", json!({"n": args.n, "p": args.p, "rows": rows}))
        }
    };
    emit(&cli.out, &content)
}
