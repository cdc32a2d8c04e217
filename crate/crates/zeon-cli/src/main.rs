use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde_json::Value;
use zeon_cli::commands::{self, NumberQuery};
use zeon_cli::report::{analyze, render_text};
use zeon_cli::CliError;

/// η-function analysis: Wronskians, invariants, entanglement monotones,
/// spectra and counting numbers.
#[derive(Parser)]
#[command(name = "zeon", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full report for one η-expression.
    Analyze {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// Number of variables (1..=9); inferred from the expression if absent.
        #[arg(long)]
        n: Option<usize>,
        /// Scale the state to unit norm first.
        #[arg(long)]
        normalize: bool,
        #[arg(long)]
        json: bool,
    },
    /// Separability test across one split, e.g. `(12)(3)` or `1,2|3`.
    Factorize {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        split: String,
        /// Only require the Wronskians of F itself to vanish.
        #[arg(long)]
        weak: bool,
        #[arg(long)]
        json: bool,
    },
    /// Two-qubit Hamiltonian eigensystem or a SUSY toy system.
    Spectrum(SpectrumArgs),
    /// Counting numbers from η-integrals, or a matrix permanent.
    Numbers(NumbersArgs),
    /// Library states.
    States {
        #[command(subcommand)]
        action: StatesAction,
    },
}

#[derive(Args)]
struct SpectrumArgs {
    #[arg(long, allow_hyphen_values = true, conflicts_with = "susy")]
    c1: Option<f64>,
    #[arg(long, allow_hyphen_values = true, conflicts_with = "susy")]
    c2: Option<f64>,
    #[arg(long, allow_hyphen_values = true, conflicts_with = "susy")]
    c3: Option<f64>,
    /// qf (qubit-fermion), qq (qubit-qubit) or qb (qubit-boson).
    #[arg(long)]
    susy: Option<String>,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    omega: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    kappa: f64,
    /// Boson levels kept for qb.
    #[arg(long, default_value_t = 4)]
    cutoff: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
#[group(required = true, multiple = false, id = "query")]
struct NumberChoice {
    #[arg(long, value_name = "N")]
    bell: Option<usize>,
    #[arg(long, value_name = "N")]
    ordered_bell: Option<usize>,
    #[arg(long, num_args = 2, value_names = ["N", "K"])]
    stirling: Option<Vec<usize>>,
    /// Matrix file: first line n, then n rows of `re,im` pairs.
    #[arg(long, value_name = "FILE")]
    permanent: Option<std::path::PathBuf>,
}

#[derive(Args)]
struct NumbersArgs {
    #[command(flatten)]
    choice: NumberChoice,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum StatesAction {
    List {
        #[arg(long)]
        json: bool,
    },
}

fn emit(v: &Value, json: bool, text: impl FnOnce(&Value) -> String) {
    let out = if json { serde_json::to_string_pretty(v).expect("serializable") + "\n" } else { text(v) };
    // a closed pipe (`zeon ... | head`) is not an error worth a panic
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
}

fn lines(v: &Value) -> String {
    match v {
        Value::Object(m) => m.iter().map(|(k, x)| format!("{k}: {x}\n")).collect(),
        other => format!("{other}\n"),
    }
}

// [{subset, re, im}, ...] as `a·F_S + b·F_T`
fn terms_text(v: &Value) -> String {
    let parts: Vec<String> = v
        .as_array()
        .into_iter()
        .flatten()
        .map(|t| {
            let im = t["im"].as_f64().unwrap_or(0.0);
            let c = if im == 0.0 { t["re"].to_string() } else { format!("({}{:+}i)", t["re"], im) };
            format!("{c}·{}", t["subset"].as_str().unwrap_or("?"))
        })
        .collect();
    if parts.is_empty() { "0".into() } else { parts.join(" + ").replace("+ -", "- ") }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Analyze { expr, n, normalize, json } => emit(&analyze(&expr, n, normalize)?, json, render_text),
        Command::Factorize { expr, n, split, weak, json } => {
            emit(&commands::factorize(&expr, n, &split, weak)?, json, lines)
        }
        Command::Spectrum(a) => {
            let v = match &a.susy {
                Some(kind) => commands::spectrum_susy(kind, a.omega, a.kappa, a.cutoff)?,
                None => match (a.c1, a.c2, a.c3) {
                    (None, None, None) => return Err(CliError::Usage("give --c1/--c2/--c3 or --susy".into())),
                    (c1, c2, c3) => commands::spectrum_couplings(c1.unwrap_or(0.0), c2.unwrap_or(0.0), c3.unwrap_or(0.0))?,
                },
            };
            emit(&v, a.json, |v| match v.get("eigenpairs").and_then(Value::as_array) {
                Some(pairs) => pairs
                    .iter()
                    .map(|p| format!("λ = {:<22} {}\n", p["eigenvalue"].to_string(), terms_text(&p["eigenvector"])))
                    .collect(),
                None => lines(v),
            });
        }
        Command::Numbers(a) => {
            let c = a.choice;
            let q = if let Some(n) = c.bell {
                NumberQuery::Bell(n)
            } else if let Some(n) = c.ordered_bell {
                NumberQuery::OrderedBell(n)
            } else if let Some(nk) = c.stirling {
                NumberQuery::Stirling(nk[0], nk[1])
            } else if let Some(path) = c.permanent {
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
                NumberQuery::Permanent(text)
            } else {
                unreachable!("clap requires one query")
            };
            emit(&commands::numbers(&q)?, a.json, |v| match v.get("value") {
                Some(x) => format!("{x}\n"),
                None => lines(v),
            });
        }
        Command::States { action: StatesAction::List { json } } => {
            emit(&commands::states_list(), json, |v| {
                v.as_array().into_iter().flatten().filter_map(Value::as_str).map(|s| format!("{s}\n")).collect()
            });
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
