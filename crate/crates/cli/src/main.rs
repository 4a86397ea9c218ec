use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use wjf_core::decompose::{DecomposeError, Decomposer};
use wjf_core::{build_d4, build_f4, format, registry, verify, Error, FJSeries, GeneratorSet, GroupElement, Suite};

const ORDER_ENV: &str = "WJF_DEFAULT_ORDER";
const FALLBACK_ORDER: usize = 4;

#[derive(Parser)]
#[command(name = "wjf", version, about = "Exact weak Jacobi forms for D4 and F4")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a named form and write it as a wjf-1 file.
    Expand {
        /// Form name, e.g. phi_m4_1 or f4_phi_m6_2.
        name: String,
        /// Truncation order N; defaults to WJF_DEFAULT_ORDER, then 4.
        #[arg(long)]
        order: Option<usize>,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite and print one OK/FAIL line per check.
    Verify {
        /// One of orbit, d4, f4, quasi, independence, all.
        #[arg(long)]
        suite: Suite,
        /// Truncation order N; defaults to WJF_DEFAULT_ORDER, then 4.
        #[arg(long)]
        order: Option<usize>,
    },
    /// Express a form as a polynomial in a generator set.
    Decompose {
        #[command(flatten)]
        source: Source,
        /// d4 or f4.
        #[arg(long)]
        generators: GeneratorSet,
        /// Truncation used with --form.
        #[arg(long)]
        order: Option<usize>,
    },
    /// Apply an element of O(D4) to a form file.
    Act {
        /// A wjf-1 file.
        #[arg(long)]
        input: PathBuf,
        /// id, f, g, h, perm:ijkl, flip:S, or a product such as f*g.
        #[arg(long)]
        element: String,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Restrict a D4 form file to z4 = 0.
    Restrict {
        /// A wjf-1 file on D4.
        #[arg(long)]
        input: PathBuf,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// A wjf-1 file.
    #[arg(long)]
    input: Option<PathBuf>,
    /// A built-in form name.
    #[arg(long)]
    form: Option<String>,
}

fn default_order() -> Result<usize, Error> {
    match std::env::var(ORDER_ENV) {
        Err(_) => Ok(FALLBACK_ORDER),
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| Error::Usage(format!("{ORDER_ENV} must be a positive integer, found `{v}`"))),
    }
}

fn resolve_order(order: Option<usize>) -> Result<usize, Error> {
    order.map_or_else(default_order, Ok)
}

fn read_form(path: &Path) -> Result<FJSeries, Error> {
    let text = fs::read_to_string(path).map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(format::parse(&text)?)
}

fn write_form(phi: &FJSeries, out: Option<&Path>) -> Result<(), Error> {
    let text = format::to_string(phi);
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Error::Usage(format!("cannot write {}: {e}", path.display()))),
        None => io::stdout().write_all(text.as_bytes()).map_err(|e| Error::Usage(e.to_string())),
    }
}

fn decompose(phi: &FJSeries, set: GeneratorSet) -> Result<ExitCode, Error> {
    let d4 = build_d4(phi.truncation())?;
    let dec = match set {
        GeneratorSet::D4 => Decomposer::from_d4(&d4),
        GeneratorSet::F4 => Decomposer::from_f4(&build_f4(&d4)?),
    };
    match dec.decompose(phi) {
        Ok(result) => {
            for line in result.lines() {
                println!("{line}");
            }
            let c = result.certificate;
            eprintln!("certificate: {} rows, {} columns, rank {}", c.rows, c.columns, c.rank);
            Ok(ExitCode::SUCCESS)
        }
        Err(DecomposeError::RankDeficient { result, nullity }) => {
            for line in result.lines() {
                println!("{line}");
            }
            eprintln!("error: decomposition not unique at this truncation (nullity {nullity})");
            Ok(ExitCode::from(4))
        }
        Err(e) => Err(e.into()),
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Expand { name, order, out } => {
            if !registry::is_known(&name) {
                return Err(Error::UnknownForm(name));
            }
            let phi = registry::build(&name, resolve_order(order)?)?;
            write_form(&phi, out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { suite, order } => {
            let report = verify::run(suite, resolve_order(order)?)?;
            let mut stdout = io::stdout().lock();
            for line in report.lines() {
                let _ = writeln!(stdout, "{line}");
            }
            Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Decompose { source, generators, order } => {
            let phi = match (source.input, source.form) {
                (Some(path), _) => read_form(&path)?,
                (None, Some(name)) => registry::build(&name, resolve_order(order)?)?,
                (None, None) => return Err(Error::Usage("one of --input or --form is required".into())),
            };
            decompose(&phi, generators)
        }
        Command::Act { input, element, out } => {
            let g: GroupElement = element.parse()?;
            let phi = read_form(&input)?;
            write_form(&phi.act(&g)?, out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Restrict { input, out } => {
            let phi = read_form(&input)?;
            write_form(&phi.restrict_z4()?, out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.kind().exit_code() as u8)
        }
    }
}
