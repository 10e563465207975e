use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use serde_json::json;

use normlog::harness::{
    make_pair, read_pair, run_suite, write_json, CheckName, Family, InstanceSpec, PairFile, ResultRow, SuiteConfig,
    Summary,
};
use normlog::Tolerances;

#[derive(Parser)]
#[command(name = "normlog", about = "Numerical checks for logarithms of normal matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a seeded instance pair to a JSON file.
    Generate {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        /// Plant a hypothesis violation (only some families).
        #[arg(long)]
        negative: bool,
        /// Branch window for ShiftedBranchPair.
        #[arg(long, requires = "k_hi", allow_hyphen_values = true)]
        k_lo: Option<i64>,
        #[arg(long, requires = "k_lo", allow_hyphen_values = true)]
        k_hi: Option<i64>,
    },
    /// Run one check on a pair file.
    Check {
        #[arg(long)]
        name: CheckName,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        k_lo: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        k_hi: Option<i64>,
        /// Override the conclusion tolerance.
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        report: PathBuf,
    },
    /// Generate instances and run every family's target checks.
    Suite {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Print the version.
    Version,
}

fn summary_line(s: &Summary) -> String {
    format!(
        "total {} passed {} skipped_hypothesis {} failed {}",
        s.total, s.passed, s.skipped_hypothesis, s.failed
    )
}

fn generate(spec: InstanceSpec, out: PathBuf) -> Result<u8> {
    let inst = make_pair(&spec)?;
    write_json(&out, &PairFile::from(&inst)).with_context(|| format!("writing {}", out.display()))?;
    println!(
        "wrote {} n={} seed={} to {}",
        spec.family,
        spec.n,
        spec.seed,
        out.display()
    );
    Ok(0)
}

fn check(
    name: CheckName,
    input: PathBuf,
    window: (Option<i64>, Option<i64>),
    tol: Option<f64>,
    report: PathBuf,
) -> Result<u8> {
    let pair = read_pair(&input).with_context(|| format!("reading {}", input.display()))?;
    let mut tolerances = Tolerances::default();
    if let Some(t) = tol {
        anyhow::ensure!(t.is_finite() && t > 0.0, "--tol must be positive");
        tolerances.check = t;
    }
    let k_lo = window.0.unwrap_or(pair.k_lo);
    let k_hi = window.1.unwrap_or(pair.k_hi);
    let family = pair.family.map_or("file", Family::name);
    let row = match name.run(&pair.x, &pair.y, k_lo, k_hi, &tolerances) {
        Ok(r) => ResultRow::from_report(r, family, pair.n, pair.seed),
        Err(e) => ResultRow {
            check: name.name().into(),
            family: family.into(),
            n: pair.n,
            seed: pair.seed,
            hypothesis_met: true,
            passed: false,
            residuals: Default::default(),
            tolerances: Default::default(),
            notes: format!("error: {e}"),
        },
    };
    let summary = Summary::of(std::slice::from_ref(&row));
    let out = json!({
        "suite": "check",
        "config": {
            "check": name.name(),
            "input": input.display().to_string(),
            "k_lo": k_lo,
            "k_hi": k_hi,
            "tolerances": tolerances,
        },
        "results": [row],
        "summary": summary,
    });
    write_json(&report, &out).with_context(|| format!("writing {}", report.display()))?;
    let verdict = if row.passed {
        "PASS"
    } else if !row.hypothesis_met {
        "SKIP (hypothesis not met)"
    } else {
        "FAIL"
    };
    println!("{name}: {verdict}");
    Ok(u8::from(summary.failed > 0))
}

fn suite(config: Option<PathBuf>, report: Option<PathBuf>, jobs: Option<usize>) -> Result<u8> {
    let mut cfg = match &config {
        Some(path) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            serde_json::from_str::<SuiteConfig>(&text).with_context(|| format!("parsing {}", path.display()))?
        }
        None => SuiteConfig::default(),
    };
    if jobs.is_some() {
        cfg.jobs = jobs;
    }
    let result = run_suite(&cfg)?;
    if let Some(path) = &report {
        write_json(path, &result).with_context(|| format!("writing {}", path.display()))?;
    }
    for row in result.results.iter().filter(|r| r.hypothesis_met && !r.passed) {
        eprintln!(
            "FAIL {} {} n={} seed={}: {}",
            row.check, row.family, row.n, row.seed, row.notes
        );
    }
    println!("{}: {}", result.suite, summary_line(&result.summary));
    Ok(result.exit_code() as u8)
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Generate {
            family,
            n,
            seed,
            out,
            negative,
            k_lo,
            k_hi,
        } => {
            let mut spec = InstanceSpec::new(family, n, seed);
            spec.params.negative = negative;
            if let (Some(lo), Some(hi)) = (k_lo, k_hi) {
                spec = spec.window(lo, hi);
            }
            generate(spec, out)
        }
        Command::Check {
            name,
            input,
            k_lo,
            k_hi,
            tol,
            report,
        } => check(name, input, (k_lo, k_hi), tol, report),
        Command::Suite { config, report, jobs } => suite(config, report, jobs),
        Command::Version => {
            println!("normlog {}", env!("CARGO_PKG_VERSION"));
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
