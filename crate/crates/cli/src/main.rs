use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use progcover::Error;

mod commands;
mod report;

/// Seed used by `--random` suites when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Parser, Debug)]
#[command(name = "progcover", version, about = "Exact covers of finite sets by arithmetic and geometric progressions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// JSON input file; `-` or absent reads standard input.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for `--random` suites.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Include per-row wall-clock times (output is then no longer reproducible).
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Least number of arithmetic progressions covering a set.
    CoverAp {
        /// Cross-check the count against exhaustive search (at most 15 elements).
        #[arg(long)]
        brute: bool,
    },
    /// Least number of geometric progressions covering a set.
    CoverGp {
        #[arg(long)]
        brute: bool,
    },
    /// Common terms of an AP and the first N terms of a GP.
    Intersect {
        #[arg(long = "N", visible_alias = "n", default_value_t = 50)]
        n: usize,
    },
    /// Structure of A ∩ G^(N) for a root ratio.
    Lemma1 {
        #[arg(long = "N", visible_alias = "n", default_value_t = 50)]
        n: usize,
    },
    /// Explicit cover of G^(n) by m arithmetic progressions.
    Thm2Cover {
        #[arg(long = "N", visible_alias = "n", default_value_t = 20)]
        n: usize,
    },
    /// |A ∩ G^(N)| <= 6 for a ratio with no rational power.
    DjCheck {
        #[arg(long = "N", visible_alias = "n", default_value_t = 200)]
        n: usize,
        /// Check this many seeded random rational APs instead of the file's AP.
        #[arg(long)]
        random: Option<usize>,
    },
    /// g(A^(n)) >= n/π² for n = 2..=n-max.
    AuditG {
        #[arg(long = "n-max", default_value_t = 20)]
        n_max: usize,
    },
    /// a(G^(n)) against m (root ratio) or n/6 (otherwise) for n = 1..=n-max.
    AuditA {
        #[arg(long = "n-max", default_value_t = 30)]
        n_max: usize,
    },
    /// Squarefree density of a + b k for 0 <= k <= x.
    Density {
        #[arg(long, default_value_t = 1)]
        a: u64,
        #[arg(long, default_value_t = 1)]
        b: u64,
        #[arg(long, default_value_t = 1_000_000)]
        x: u64,
    },
    /// Terms v + d h of A^(N) with a + b h squarefree, where v/d = a/b.
    Filter {
        #[arg(long = "N", visible_alias = "n", default_value_t = 20)]
        n: usize,
    },
    /// Exponents j <= j-max with b s r^j a squarefree integer.
    ScanSquarefree {
        #[arg(long, allow_hyphen_values = true)]
        s: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        r: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<String>,
        #[arg(long = "j-max", default_value_t = 30)]
        j_max: u32,
        /// Scan this many seeded random triples instead.
        #[arg(long)]
        random: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match commands::run(&cli) {
        Ok(report) => {
            let rendered = report.render(cli.common.format);
            let mut out = std::io::stdout().lock();
            if out.write_all(rendered.as_bytes()).and_then(|_| out.flush()).is_err() {
                return ExitCode::from(1);
            }
            match report.violation {
                Some(msg) => {
                    eprintln!("violation: {msg}");
                    ExitCode::from(2)
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Invariant(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
