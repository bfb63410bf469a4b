//! `ptrace`: command-line front end for the pseudo-trace library.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 bad input, 3 the
//! base field is too small (a semisimple quotient or ω does not split).

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use ptrace_core::linalg::NumberField;
use ptrace_core::Error;

#[derive(Parser, Debug)]
#[command(name = "ptrace", version, about = "Pseudo-trace maps on symmetric algebras and their q-series")]
struct Cli {
    /// Minimal polynomial of the session number field, e.g. "x^2 + 1".
    #[arg(long, global = true)]
    field: Option<String>,
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for every randomized check.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Structure report: radical, socle, Loewy length, idempotents, blocks, ω-spectrum.
    Analyze { file: PathBuf },
    /// Dual basis Ω of the basic algebra, with its pairing conditions.
    OmegaBasis { file: PathBuf },
    /// Check that a module is interlocked and list its decomposition basis.
    Interlocked { file: PathBuf },
    /// Pseudo-trace of an endomorphism, plus a seeded symmetry check.
    PseudoTrace(PseudoTraceArgs),
    /// Split a symmetric functional into pseudo-trace terms.
    Decompose { file: PathBuf },
    /// Pseudo-trace function of a graded module.
    Character(CharacterArgs),
    /// q-expansion of the normalized Eisenstein series E_{2k}.
    Eisenstein {
        k: usize,
        /// Highest power of q to print.
        #[arg(default_value_t = 10)]
        order: usize,
    },
    /// Shift identities for (ω − r)^i, on a module or on every grade of a graded module.
    ShiftIdentity(ShiftArgs),
    /// Regrouping of the generalized character into shifted quotients.
    Lemma56 { file: PathBuf },
}

#[derive(Args, Debug)]
struct PseudoTraceArgs {
    file: PathBuf,
    /// Use the action of this basis element as the endomorphism (default: identity).
    #[arg(long)]
    element: Option<String>,
    /// Number of random pairs in the symmetry check.
    #[arg(long, default_value_t = 50)]
    samples: usize,
}

#[derive(Args, Debug)]
struct CharacterArgs {
    file: PathBuf,
    /// Trace the identity zero mode (the default).
    #[arg(long, conflicts_with = "mode")]
    vacuum: bool,
    /// Trace the zero mode with this label.
    #[arg(long)]
    mode: Option<String>,
    /// Truncate the printed series after this power of q.
    #[arg(long)]
    order: Option<usize>,
    /// Also list the decomposition into shifted-quotient characters.
    #[arg(long)]
    decompose: bool,
    /// Slash by the SL₂(ℤ) matrix a,b,c,d and fit the result numerically.
    #[arg(long, value_parser = parse_gamma, allow_hyphen_values = true)]
    slash: Option<[i64; 4]>,
    /// Weight used by --slash.
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    weight: i32,
    /// Sample point re,im used by --slash.
    #[arg(long, value_parser = parse_tau, default_value = "0,2", allow_hyphen_values = true)]
    tau: Complex64,
}

#[derive(Args, Debug)]
struct ShiftArgs {
    file: PathBuf,
    /// Eigenvalue r of ω (default: every eigenvalue).
    #[arg(long, allow_hyphen_values = true)]
    r: Option<String>,
    /// Only this power i (default: 0 up to the nilpotency bound).
    #[arg(long)]
    power: Option<u32>,
    /// Random endomorphisms tried per identity.
    #[arg(long, default_value_t = 3)]
    samples: usize,
}

fn parse_gamma(s: &str) -> Result<[i64; 4], String> {
    let v: Vec<i64> =
        s.split(',').map(|t| t.trim().parse::<i64>().map_err(|e| format!("'{t}': {e}"))).collect::<Result<_, _>>()?;
    v.try_into().map_err(|_| "expected four integers a,b,c,d".to_string())
}

fn parse_tau(s: &str) -> Result<Complex64, String> {
    let v: Vec<f64> =
        s.split(',').map(|t| t.trim().parse::<f64>().map_err(|e| format!("'{t}': {e}"))).collect::<Result<_, _>>()?;
    match v[..] {
        [re, im] if im > 0.0 => Ok(Complex64::new(re, im)),
        [_, _] => Err("τ must lie in the upper half plane".into()),
        _ => Err("expected re,im".into()),
    }
}

fn exit_code(e: &Error) -> u8 {
    if e.is_non_split() {
        3
    } else if matches!(e, Error::Verification(_) | Error::NotInterlocked { .. }) {
        1
    } else {
        2
    }
}

fn run(cli: Cli) -> Result<commands::Report, Error> {
    let field: Option<Arc<NumberField>> = cli.field.as_deref().map(NumberField::parse).transpose()?;
    let ctx = commands::Context { field, seed: cli.seed };
    match cli.command {
        Command::Analyze { file } => commands::analyze(&ctx, &file),
        Command::OmegaBasis { file } => commands::omega_basis(&ctx, &file),
        Command::Interlocked { file } => commands::interlocked(&ctx, &file),
        Command::PseudoTrace(a) => commands::pseudo_trace(&ctx, &a.file, a.element.as_deref(), a.samples),
        Command::Decompose { file } => commands::decompose(&ctx, &file),
        Command::Character(a) => {
            let label = if a.vacuum { None } else { a.mode.as_deref() };
            let slash = a.slash.map(|gamma| commands::SlashOptions { gamma, weight: a.weight, tau: a.tau });
            commands::character(&ctx, &a.file, label, a.order, a.decompose, slash)
        }
        Command::Eisenstein { k, order } => commands::eisenstein(k, order),
        Command::ShiftIdentity(a) => commands::shift_identity(&ctx, &a.file, a.r.as_deref(), a.power, a.samples),
        Command::Lemma56 { file } => commands::lemma56(&ctx, &file),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli) {
        Ok(report) => {
            if json {
                println!("{}", serde_json::to_string_pretty(&report.json).expect("values serialize"));
            } else {
                print!("{}", report.text);
            }
            if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            let code = exit_code(&e);
            if json {
                let v = serde_json::json!({ "error": e.to_string(), "exit_code": code });
                println!("{}", serde_json::to_string_pretty(&v).expect("values serialize"));
            }
            eprintln!("error: {e}");
            ExitCode::from(code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_and_tau_parsing() {
        assert_eq!(parse_gamma("1,1,0,1"), Ok([1, 1, 0, 1]));
        assert_eq!(parse_gamma(" 0, -1, 1, 0"), Ok([0, -1, 1, 0]));
        assert!(parse_gamma("1,2,3").is_err());
        assert!(parse_gamma("a,b,c,d").is_err());
        assert_eq!(parse_tau("0.5,2"), Ok(Complex64::new(0.5, 2.0)));
        assert!(parse_tau("0,-1").is_err());
        assert!(parse_tau("1").is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::NonSplitOmega("x^2 + 1".into())), 3);
        assert_eq!(exit_code(&Error::Verification("sum".into())), 1);
        assert_eq!(exit_code(&Error::NotInterlocked { idempotent: 1, witness: String::new() }), 1);
        assert_eq!(exit_code(&Error::Parse("x".into())), 2);
    }

    #[test]
    fn command_line_shape() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
        assert!(Cli::try_parse_from(["ptrace", "character", "f.json", "--vacuum", "--mode", "x"]).is_err());
    }
}
