use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use hypersob::render::{render_complex, render_matrix, render_polynomial, render_reports, Format, RunInfo};
use hypersob::{gram_tables, parse_complex, run_verify};
use hypersob_core::family::y;
use hypersob_core::sobolev::gram;
use hypersob_core::verify::{Summary, Suite};
use hypersob_core::{ComplexPoint, Scaling};

const USAGE_ERROR: u8 = 2;
const CHECK_FAILURE: u8 = 1;

#[derive(Debug, Parser)]
#[command(name = "hypersob", version, about = "Exact generation and verification of hypergeometric Sobolev orthogonal polynomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ScalingArg {
    Hypergeometric,
    Ode,
}

impl From<ScalingArg> for Scaling {
    fn from(s: ScalingArg) -> Self {
        match s {
            ScalingArg::Hypergeometric => Scaling::Hypergeometric,
            ScalingArg::Ode => Scaling::Ode,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SuiteArg {
    All,
    Ode,
    Recurrence,
    Gram,
    Gamma,
    Fidelity,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::All => Suite::All,
            SuiteArg::Ode => Suite::Ode,
            SuiteArg::Recurrence => Suite::Recurrence,
            SuiteArg::Gram => Suite::Gram,
            SuiteArg::Gamma => Suite::Gamma,
            SuiteArg::Fidelity => Suite::Fidelity,
        }
    }
}

#[derive(Debug, Args)]
struct Member {
    /// Degree n.
    #[arg(long)]
    n: usize,
    /// Parameter rho.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    rho: u32,
    #[arg(long, value_enum, default_value_t = ScalingArg::Hypergeometric)]
    scaling: ScalingArg,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the exact coefficients of y_n(rho; x), lowest degree first.
    Gen {
        #[command(flatten)]
        member: Member,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run the verification suite over 0 <= n <= n-max, 1 <= rho <= rho-max.
    Verify {
        #[arg(long, default_value_t = 20)]
        n_max: usize,
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u32).range(1..))]
        rho_max: u32,
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Spread the grid over all cores.
        #[arg(long)]
        parallel: bool,
    },
    /// Print the exact Sobolev Gram matrix of y_0..y_{n-max}.
    Gram {
        #[arg(long)]
        n_max: usize,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        rho: u32,
        #[arg(long, value_enum, default_value_t = ScalingArg::Hypergeometric)]
        scaling: ScalingArg,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Evaluate y_n(rho; z) and print "re,im".
    Eval {
        #[command(flatten)]
        member: Member,
        /// Point as RE,IM (or RE).
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        at: ComplexPoint,
    },
}

enum Failure {
    Usage(String),
    /// Mandatory checks failed; the report is still printed.
    Checks(String),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(format!("{e:#}"))
    }
}

fn run(cli: Cli) -> Result<String, Failure> {
    match cli.command {
        Command::Gen { member, format } => {
            let scaling = member.scaling.into();
            let p = y(member.n, member.rho, scaling);
            Ok(render_polynomial(member.n, member.rho, scaling, &p, format)?)
        }
        Command::Gram { n_max, rho, scaling, format } => Ok(render_matrix(&gram(n_max, rho, scaling.into()), format)?),
        Command::Eval { member, at } => {
            let p = y(member.n, member.rho, member.scaling.into());
            let value = p.eval_complex(at).map_err(|e| Failure::Usage(e.to_string()))?;
            Ok(render_complex(value))
        }
        Command::Verify { n_max, rho_max, suite, format, parallel } => {
            let suite = suite.into();
            let reports = run_verify(n_max, rho_max, suite, parallel);
            let info = RunInfo { n_max, rho_max, suite, gram_tables: gram_tables(n_max, rho_max, suite) };
            let out = render_reports(&reports, &info, format)?;
            let summary = Summary::of(&reports);
            if summary.all_mandatory_passed() {
                Ok(out)
            } else {
                eprintln!("hypersob: {} mandatory check(s) failed", summary.failed);
                Err(Failure::Checks(out))
            }
        }
    }
}

fn emit(out: &str) -> bool {
    let mut stdout = std::io::stdout().lock();
    stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_ok()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) if emit(&out) => ExitCode::SUCCESS,
        Ok(_) => ExitCode::FAILURE,
        Err(Failure::Checks(out)) => {
            emit(&out);
            ExitCode::from(CHECK_FAILURE)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("hypersob: {msg}");
            ExitCode::from(USAGE_ERROR)
        }
    }
}
