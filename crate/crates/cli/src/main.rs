use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cone_zeta::algebra::serial;
use cone_zeta::PiecewiseWeight;

mod commands;
mod document;
mod error;

use commands::Outcome;
use document::{GammaTable, Problem};
use error::CliError;

/// Lattice-point generating functions on cone complexes and Weyl-weighted
/// zeta functions, in exact arithmetic. Results are JSON on stdout.
#[derive(Parser)]
#[command(name = "conezeta", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Problem document (JSON); `-` reads standard input.
    document: PathBuf,
    /// Override the document's weight: `zero`, or a JSON file mapping sign
    /// strings to vectors.
    #[arg(long)]
    gamma: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Generating function of a region C_I.
    Genfun {
        #[command(flatten)]
        input: Input,
        /// Comma-separated 1-based bounding indices (empty for the whole cone).
        #[arg(long)]
        region: Option<String>,
    },
    /// Check the reciprocity law for one region, or all of them.
    Reciprocity {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        region: Option<String>,
    },
    /// The Weyl-weighted zeta function.
    Zeta {
        #[command(flatten)]
        input: Input,
    },
    /// Detect a functional equation of the zeta function.
    Fneq {
        #[command(flatten)]
        input: Input,
    },
    /// Run every applicable check against the document.
    Verify {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        order: Option<i64>,
    },
    /// Expand in t and compare with a direct lattice-point count.
    Expand {
        #[command(flatten)]
        input: Input,
        /// Expand E_{C_I} instead of the zeta function.
        #[arg(long)]
        region: Option<String>,
        #[arg(long)]
        order: Option<i64>,
        /// Expand this rational function (canonical JSON) instead of the
        /// computed one.
        #[arg(long)]
        genfun: Option<PathBuf>,
    },
    /// Print the document in canonical form.
    Canonical {
        /// Problem document (JSON); `-` reads standard input.
        document: PathBuf,
    },
    /// Print a torus-family document.
    Torus {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: i64,
        /// Spell the problem out as a weight datum.
        #[arg(long)]
        weights: bool,
    },
}

fn read_text(path: &PathBuf, what: &str) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::schema(what, format!("cannot read stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| CliError::schema(what, format!("cannot read {}: {e}", path.display())))
    }
}

fn load(input: &Input) -> Result<Problem, CliError> {
    let text = read_text(&input.document, "document")?;
    let doc = document::parse_document(&text)?;
    let mut problem = doc.into_problem()?;
    match input.gamma.as_deref() {
        None => {}
        Some("zero") => problem.zeta.spec.gamma = PiecewiseWeight::Zero,
        Some(path) => {
            let text = read_text(&PathBuf::from(path), "--gamma")?;
            let table: GammaTable = serde_json::from_str(&text)
                .map_err(|e| CliError::schema("--gamma", e.to_string()))?;
            let gamma = document::gamma_from_table(&table, &problem.zeta.complex, "--gamma")?;
            problem.zeta = problem.zeta.with_gamma(gamma)?;
        }
    }
    Ok(problem)
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Genfun { input, region } => {
            let p = load(&input)?;
            let r = commands::resolve_region(region.as_deref(), &p)?;
            commands::genfun(&p, r)
        }
        Command::Reciprocity { input, region } => {
            let p = load(&input)?;
            let r = commands::resolve_region(region.as_deref(), &p)?;
            commands::reciprocity(&p, r)
        }
        Command::Zeta { input } => commands::zeta(&load(&input)?),
        Command::Fneq { input } => commands::fneq(&load(&input)?),
        Command::Verify { input, order } => {
            let p = load(&input)?;
            let n = commands::resolve_order(order, &p)?;
            commands::verify(&p, n)
        }
        Command::Expand {
            input,
            region,
            order,
            genfun,
        } => {
            let p = load(&input)?;
            let r = commands::resolve_region(region.as_deref(), &p)?;
            let n = commands::resolve_order(order, &p)?;
            let supplied = match genfun {
                Some(path) => {
                    let text = read_text(&path, "--genfun")?;
                    let v: serde_json::Value = serde_json::from_str(&text)
                        .map_err(|e| CliError::schema("--genfun", e.to_string()))?;
                    Some(
                        serial::from_json(&v)
                            .map_err(|e| CliError::schema("--genfun", e.to_string()))?,
                    )
                }
                None => None,
            };
            commands::expand(&p, r, n, supplied)
        }
        Command::Canonical { document } => {
            let doc = document::parse_document(&read_text(&document, "document")?)?;
            Ok(Outcome {
                value: document::document_value(&doc),
                ok: true,
            })
        }
        Command::Torus { d, k, weights } => {
            let doc = document::torus_document(d, k, weights)?;
            Ok(Outcome {
                value: document::document_value(&doc),
                ok: true,
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{}", document::render(&out.value));
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(4)
            }
        }
        Err(e) => {
            eprintln!("conezeta: {e}");
            print!("{}", document::render(&e.to_json()));
            ExitCode::from(e.exit_code())
        }
    }
}
