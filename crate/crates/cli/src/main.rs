use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use resolvend_core::suite::{
    self, Suite, SuiteConfig, DEFAULT_MAX_ORDER, DEFAULT_PMAX, DEFAULT_PRECISION, DEFAULT_SEED,
};

/// Batch verification of resolvend, Stickelberger and Gauss-sum identities.
#[derive(Parser, Debug)]
#[command(name = "resolvend-lab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a verification suite; exits nonzero if any record fails.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
        #[command(flatten)]
        opts: VerifyOpts,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SuiteArg {
    Gauss,
    Stickelberger,
    Wild,
    Ramify,
    Groupring,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Gauss => Suite::Gauss,
            SuiteArg::Stickelberger => Suite::Stickelberger,
            SuiteArg::Wild => Suite::Wild,
            SuiteArg::Ramify => Suite::Ramify,
            SuiteArg::Groupring => Suite::Groupring,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Debug)]
struct VerifyOpts {
    /// Largest prime for the Gauss suite.
    #[arg(long, default_value_t = DEFAULT_PMAX)]
    pmax: u64,
    /// p-adic precision M (work modulo p^M).
    #[arg(long, default_value_t = DEFAULT_PRECISION)]
    precision: u32,
    /// Group as comma-separated invariant factors, e.g. "3,9"; repeatable.
    #[arg(long = "group")]
    groups: Vec<String>,
    /// Random cases per group (default: 500 for stickelberger, 50 for groupring).
    #[arg(long)]
    trials: Option<usize>,
    /// Seed for every randomized check.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Prime for the wild suite (default: 3 through 19).
    #[arg(long)]
    p: Option<u64>,
    /// Divisors n of p-1 for the wild suite, comma-separated (default: all).
    #[arg(long, value_delimiter = ',')]
    n: Vec<u64>,
    /// Number of factors in a composite wild check.
    #[arg(long, default_value_t = 1)]
    product: usize,
    /// Largest g_0 for the ramification suite.
    #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
    max_order: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads (0: one per core).
    #[arg(long, env = "RESOLVEND_LAB_JOBS", default_value_t = 0)]
    jobs: usize,
}

fn config(suite: Suite, o: &VerifyOpts) -> SuiteConfig {
    SuiteConfig {
        pmax: o.pmax,
        precision: o.precision,
        groups: (!o.groups.is_empty()).then(|| o.groups.clone()),
        trials: o.trials,
        seed: o.seed,
        p: o.p,
        n: (!o.n.is_empty()).then(|| o.n.clone()),
        product: o.product.max(1),
        max_order: o.max_order,
        jobs: o.jobs,
        ..SuiteConfig::new(suite)
    }
}

fn main() -> Result<ExitCode> {
    let cli = Cli::parse();
    let Command::Verify { suite, opts } = cli.command;
    let report = suite::run(&config(suite.into(), &opts)).context("verification could not start")?;
    match opts.format {
        Format::Json => println!("{}", report.to_json()),
        Format::Text => print!("{}", report.to_text()),
    }
    Ok(if report.all_passed() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}
