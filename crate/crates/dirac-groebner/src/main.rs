//! Command-line front end: `analyze`, `groebner`, and `bracket`.
//!
//! Exit codes: 0 for a consistent or regular system, 2 when the analysis
//! proves the system inconsistent, 1 for usage, parse, or analysis errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use dirac_groebner::dirac::{analyze, AnalysisOptions, AnalysisStatus};
use dirac_groebner::order::{BaseOrder, MonomialOrder};
use dirac_groebner::phasespace::{canonical_hamiltonian, poisson_bracket};
use dirac_groebner::problem::ProblemFile;
use dirac_groebner::rational::parse_rational;
use dirac_groebner::report::{render_machine, render_text};
use dirac_groebner::Rational;

#[derive(Parser)]
#[command(
    name = "dirac-groebner",
    version,
    about = "Exact constraint analysis of polynomial Lagrangian systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Degrevlex,
    Lex,
}

impl From<OrderArg> for BaseOrder {
    fn from(o: OrderArg) -> BaseOrder {
        match o {
            OrderArg::Degrevlex => BaseOrder::DegRevLex,
            OrderArg::Lex => BaseOrder::Lex,
        }
    }
}

#[derive(Args)]
struct CommonArgs {
    /// Problem file (see the README for the format)
    file: PathBuf,
    /// Monomial order inside the elimination blocks (overrides the file)
    #[arg(long, value_enum)]
    order: Option<OrderArg>,
    /// Parameter value NAME=RATIONAL; repeatable, overrides the file
    #[arg(long = "param", value_name = "NAME=RAT")]
    params: Vec<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full constraint analysis and print the report
    Analyze {
        #[command(flatten)]
        common: CommonArgs,
        /// Test consistency modulo the radical of the constraint ideal
        #[arg(long)]
        radical_check: bool,
        /// Emit the line-delimited machine report instead of text
        #[arg(long)]
        json: bool,
        /// Include the equations of motion in the text report
        #[arg(long)]
        eom: bool,
        /// Cap on completion passes (overrides the file)
        #[arg(long, value_name = "N")]
        max_iter: Option<usize>,
    },
    /// Print the reduced basis of the primary constraint ideal
    Groebner {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Print the Poisson bracket of two phase-space expressions
    Bracket {
        #[command(flatten)]
        common: CommonArgs,
        expr1: String,
        expr2: String,
    },
}

fn parse_param(spec: &str) -> Result<(String, Rational), String> {
    let (name, value) = spec
        .split_once('=')
        .ok_or_else(|| format!("--param `{spec}`: expected NAME=RATIONAL"))?;
    let value = parse_rational(value).map_err(|e| format!("--param `{spec}`: {e}"))?;
    Ok((name.trim().to_owned(), value))
}

struct Loaded {
    file: ProblemFile,
    system: dirac_groebner::LagrangianSystem,
    base_order: BaseOrder,
}

fn load(common: &CommonArgs) -> Result<Loaded, String> {
    let text = std::fs::read_to_string(&common.file)
        .map_err(|e| format!("{}: {e}", common.file.display()))?;
    let file = ProblemFile::parse(&text).map_err(|e| format!("{}: {e}", common.file.display()))?;
    let overrides: Vec<(String, Rational)> = common
        .params
        .iter()
        .map(|s| parse_param(s))
        .collect::<Result<_, _>>()?;
    let system = file
        .build_system(&overrides)
        .map_err(|e| format!("{}: {e}", common.file.display()))?;
    let base_order = common
        .order
        .map(BaseOrder::from)
        .or(file.options.order)
        .unwrap_or(BaseOrder::DegRevLex);
    Ok(Loaded {
        file,
        system,
        base_order,
    })
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Analyze {
            common,
            radical_check,
            json,
            eom,
            max_iter,
        } => {
            let loaded = load(&common)?;
            let opts = AnalysisOptions {
                base_order: loaded.base_order,
                radical_check: radical_check
                    || loaded.file.options.radical_check.unwrap_or(false),
                max_passes: max_iter.or(loaded.file.options.max_passes),
            };
            let report = analyze(&loaded.system, &opts).map_err(|e| e.to_string())?;
            if json {
                print!("{}", render_machine(&report));
            } else {
                print!("{}", render_text(&report, eom));
            }
            Ok(if report.status == AnalysisStatus::Inconsistent {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            })
        }
        Command::Groebner { common } => {
            let loaded = load(&common)?;
            let ord = MonomialOrder::velocity_elimination(loaded.base_order);
            let ham = canonical_hamiltonian(&loaded.system, &ord).map_err(|e| e.to_string())?;
            for p in ham.primary_basis().elements() {
                println!("{p}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Bracket {
            common,
            expr1,
            expr2,
        } => {
            let loaded = load(&common)?;
            let table = loaded.system.table();
            let f = dirac_groebner::problem::parse_expression(&expr1, table)
                .map_err(|e| format!("expr1: {e}"))?;
            let g = dirac_groebner::problem::parse_expression(&expr2, table)
                .map_err(|e| format!("expr2: {e}"))?;
            println!("{}", poisson_bracket(&f, &g));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help/--version exit 0; anything else is a usage error (1)
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}
