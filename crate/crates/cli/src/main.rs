mod commands;
mod output;

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "monodyn", version, about = "Preperiodic points, heights and S-integrality for monomial semigroups over Q")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// JSON config: {"generators":[{"a":"2","d":2}, ...], ...}
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Maximal word length or tree depth.
    #[arg(long, global = true)]
    pub depth: Option<usize>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true)]
    pub tol: Option<f64>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Orbit tree of a point and its preperiodicity status.
    Orbit {
        /// `c` for a rational, or `c,M,t` for c^(1/M) e(t).
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Enumerate preperiodic points up to the given word length.
    Preper,
    /// Canonical height of a rational along an eventually periodic sequence.
    Height {
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        /// One-based letters, comma separated.
        #[arg(long, default_value = "")]
        preperiod: String,
        #[arg(long)]
        period: String,
        /// Quadrature nodes for the Jensen check.
        #[arg(long, default_value_t = 1 << 16)]
        nodes: usize,
    },
    /// Linear forms in logarithms: random harness, or one instance.
    Bounds {
        #[arg(long, default_value_t = 1000)]
        count: u64,
        /// Comma separated rationals, for a single instance.
        #[arg(long, allow_hyphen_values = true, requires = "bs")]
        alphas: Option<String>,
        #[arg(long, allow_hyphen_values = true, requires = "alphas")]
        bs: Option<String>,
        #[arg(long, default_value = "inf")]
        place: String,
    },
    /// Discrepancy of conjugate angles of enumerated points, or of the
    /// roots of X^M - c.
    Equid {
        /// `M,c`
        #[arg(long, allow_hyphen_values = true)]
        binomial: Option<String>,
    },
    /// S-integrality scan relative to beta.
    Scan,
    /// Factor a rational, or a polynomial given as a JSON array of
    /// coefficients from low to high degree.
    Factor {
        #[arg(allow_hyphen_values = true)]
        value: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("monodyn: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
