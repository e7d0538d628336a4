//! The `tau` command line.
//!
//! Exit codes: 0 on success, 2 for usage and input errors, 3 when the facts are
//! inconsistent, 4 when the propagation budget runs out, and 1 on internal
//! failures such as a certificate failing its own replay.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::braid::parse_braid;
use crate::catalog::{bundled, load_catalog};
use crate::deduce::{DeduceError, FactBase, PropagateOptions, DEFAULT_STEP_BUDGET};
use crate::families::{whitehead_double_tau, Clasp, DoubleSpec, PretzelParams, TorusParams};
use crate::grid::parse_grid;
use crate::presentation::KnotPresentation;
use crate::report::{number, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_REPLAY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INCONSISTENT: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

/// Environment variable overriding the propagation budget.
pub const BUDGET_VAR: &str = "TAU_STEP_BUDGET";

#[derive(Parser, Debug)]
#[command(
    name = "tau",
    version,
    about = "Bounds and exact values of the knot concordance invariant tau"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Bounds from a braid word such as `3: 1 -2 1 -2`
    Braid {
        #[arg(allow_hyphen_values = true)]
        word: String,
        /// Require a positive braid and report its exact values
        #[arg(long)]
        positive: bool,
    },
    /// Crossings, corners and tb of a grid diagram file
    Grid { file: PathBuf },
    /// tau of the torus knot T(p,q)
    Torus {
        #[arg(allow_negative_numbers = true)]
        p: i64,
        #[arg(allow_negative_numbers = true)]
        q: i64,
    },
    /// tau of the pretzel knot P(t1, ..., tk) when the fiber criterion applies
    Pretzel {
        #[arg(required = true, num_args = 1.., allow_negative_numbers = true)]
        twists: Vec<i64>,
    },
    /// tau of an iterated untwisted positive Whitehead double
    Double {
        #[arg(long)]
        companion: String,
        /// Certified lower bound on the companion's maximal Thurston-Bennequin number
        #[arg(long, allow_negative_numbers = true)]
        tb_lower: i64,
        #[arg(long)]
        iterations: u32,
        #[arg(long, default_value = "positive")]
        clasp: String,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        twist: i64,
    },
    /// Propagate a fact file to its fixpoint
    Deduce {
        file: PathBuf,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// Propagate the bundled catalog
    Catalog {
        #[command(flatten)]
        report: ReportArgs,
    },
}

#[derive(Args, Debug)]
struct ReportArgs {
    /// Print the certificate and check it by replay
    #[arg(long)]
    certify: bool,
    /// Report a single knot
    #[arg(long, allow_hyphen_values = true)]
    query: Option<String>,
    /// Emit JSON instead of text
    #[arg(long)]
    json: bool,
}

struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl ToString) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.to_string(),
    }
}

/// Runs the CLI with the budget taken from the environment.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let budget = std::env::var(BUDGET_VAR).ok();
    run_with_budget(args, budget.as_deref(), out, err)
}

/// Runs the CLI; `budget` is the raw value of the budget variable, if set.
pub fn run_with_budget<I, T>(
    args: I,
    budget: Option<&str>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                EXIT_USAGE
            } else {
                let _ = write!(out, "{}", e.render());
                EXIT_OK
            };
            return code;
        }
    };
    match dispatch(cli.command, budget, out) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(command: Command, budget: Option<&str>, out: &mut dyn Write) -> Result<(), Failure> {
    let text = match command {
        Command::Braid { word, positive } => braid(&word, positive, budget)?,
        Command::Grid { file } => grid(&file)?,
        Command::Torus { p, q } => {
            let t = TorusParams::new(p, q).map_err(usage)?;
            format!("{}\n", t.tau())
        }
        Command::Pretzel { twists } => pretzel(twists)?,
        Command::Double {
            companion,
            tb_lower,
            iterations,
            clasp,
            twist,
        } => {
            let clasp: Clasp = clasp.parse().map_err(usage)?;
            let spec =
                DoubleSpec::with_options(companion, iterations, clasp, twist).map_err(usage)?;
            match whitehead_double_tau(&spec, tb_lower) {
                Some(v) => format!("{v}\n"),
                None => format!(
                    "inapplicable: TB lower bound {tb_lower} for {} is negative\n",
                    spec.companion()
                ),
            }
        }
        Command::Deduce { file, report } => {
            let base = load_catalog(&file).map_err(usage)?;
            deduce(&base, &report, budget)?
        }
        Command::Catalog { report } => deduce(&bundled(), &report, budget)?,
    };
    out.write_all(text.as_bytes()).map_err(|e| Failure {
        code: EXIT_REPLAY,
        message: e.to_string(),
    })
}

fn step_budget(raw: Option<&str>) -> Result<u64, Failure> {
    match raw {
        None => Ok(DEFAULT_STEP_BUDGET),
        Some(s) => s.trim().parse().map_err(|_| {
            usage(format!(
                "{BUDGET_VAR} must be a nonnegative integer, got {s:?}"
            ))
        }),
    }
}

fn braid(text: &str, positive: bool, budget: Option<&str>) -> Result<String, Failure> {
    let word = parse_braid(text).map_err(usage)?;
    let mut out = format!(
        "strands: {}\nletters: {} ({} positive, {} negative)\ncomponents: {}\n",
        word.strands(),
        word.len(),
        word.positive_count(),
        word.negative_count(),
        word.closure_components()
    );
    if positive {
        word.tau_positive_braid().map_err(usage)?;
    }
    let genus = word.bennequin_genus().map_err(usage)?;
    let lower = word.slice_bennequin_lower().map_err(usage)?;
    out.push_str(&format!(
        "bennequin_genus: {genus}\nslice_bennequin_lower: {lower}\n"
    ));

    let mut base = FactBase::new();
    let k = base
        .add_knot(word.to_string(), vec![KnotPresentation::Braid(word)])
        .map_err(usage)?;
    let p = propagate(&base, budget)?;
    let record = p.record(k);
    out.push_str(&format!(
        "tau: {}\ng4: {}\ng3: {}\n",
        number(record.tau),
        number(record.g4),
        number(record.g3)
    ));
    Ok(out)
}

fn grid(file: &PathBuf) -> Result<String, Failure> {
    let text = fs::read_to_string(file)
        .map_err(|e| usage(format!("cannot read {}: {e}", file.display())))?;
    let g = parse_grid(&text).map_err(usage)?;
    let census = g.corner_census();
    let tb = match g.tb() {
        Ok(v) => v.to_string(),
        Err(_) => "undefined (not a knot)".into(),
    };
    Ok(format!(
        "size: {}\ncomponents: {}\ncrossings: {}\nwrithe: {}\ncorners: NE {} NW {} SE {} SW {}\ntb: {tb}\n",
        g.size(),
        g.components(),
        g.crossings().len(),
        g.writhe(),
        census.ne,
        census.nw,
        census.se,
        census.sw,
    ))
}

fn pretzel(twists: Vec<i64>) -> Result<String, Failure> {
    let params = PretzelParams::new(twists).map_err(usage)?;
    let presentation = KnotPresentation::Pretzel(params.clone());
    if let Some(c) = presentation.components().filter(|&c| c != 1) {
        return Err(usage(format!(
            "P({params}) has {c} components, expected a knot"
        )));
    }
    Ok(match params.tau() {
        Some(v) => format!("{v}\n"),
        None => {
            "inapplicable: needs an odd number of odd twists with every pairwise sum negative\n"
                .to_string()
        }
    })
}

fn propagate(base: &FactBase, budget: Option<&str>) -> Result<crate::deduce::Propagated, Failure> {
    let options = PropagateOptions {
        budget: step_budget(budget)?,
        order: None,
    };
    base.propagate_with(&options).map_err(|e| Failure {
        code: error_code(&e),
        message: e.to_string(),
    })
}

fn error_code(e: &DeduceError) -> i32 {
    match e {
        DeduceError::Inconsistent { .. } => EXIT_INCONSISTENT,
        DeduceError::BudgetExhausted { .. } => EXIT_BUDGET,
        _ => EXIT_USAGE,
    }
}

fn render(report: &Report, args: &ReportArgs) -> String {
    if args.json {
        let mut s = report.to_json();
        s.push('\n');
        s
    } else {
        report.to_text(args.certify)
    }
}

fn deduce(base: &FactBase, args: &ReportArgs, budget: Option<&str>) -> Result<String, Failure> {
    let options = PropagateOptions {
        budget: step_budget(budget)?,
        order: None,
    };
    let p = match base.propagate_with(&options) {
        Ok(p) => p,
        Err(e) => {
            let mut report = Report::failed(base, &e);
            if args.certify {
                report.check();
            }
            return Err(Failure {
                code: error_code(&e),
                message: format!("{e}\n{}", render(&report, args).trim_end()),
            });
        }
    };
    let only = match &args.query {
        Some(name) => Some(base.resolve(name).map_err(usage)?),
        None => None,
    };
    let mut report = Report::new(&p, only);
    if args.certify && !report.check() {
        return Err(Failure {
            code: EXIT_REPLAY,
            message: format!(
                "certificate failed replay\n{}",
                render(&report, args).trim_end()
            ),
        });
    }
    Ok(render(&report, args))
}
