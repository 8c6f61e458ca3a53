//! `hodgekit`: Jacobian rings, twisted Hodge numbers, mixed Hodge structures
//! and Gauss–Manin certificates for smooth projective hypersurfaces.

mod commands;
mod input;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use commands::{Outcome, Status};
use hodgekit::{Error, Polynomial};

#[derive(Parser, Debug)]
#[command(name = "hodgekit", version, about = "Exact Hodge-theoretic computations for projective hypersurfaces")]
struct Cli {
    /// Print one JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug)]
struct FormArgs {
    /// Polynomial text (`x0^3 + x1^3 - 3*x0*x1*x2`) or a built-in name.
    #[arg(long)]
    poly: String,
    /// Number of variables; defaults to the largest index used plus one (at least 3).
    #[arg(long)]
    vars: Option<usize>,
}

#[derive(clap::Args, Debug)]
struct PairArgs {
    /// Form `F` defining Z (built-in name or polynomial); Y is cut out by the last variable.
    #[arg(long, default_value = "fermat-cubic-7")]
    pair: String,
    #[arg(long)]
    vars: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Jacobian ring dimensions and smoothness.
    Jring {
        #[command(flatten)]
        form: FormArgs,
        /// Also list a quotient basis in this degree.
        #[arg(long)]
        degree: Option<u32>,
    },
    /// Primitive Hodge numbers of the middle cohomology.
    Hodge {
        #[command(flatten)]
        form: FormArgs,
    },
    /// Twisted Hodge numbers h^q(Omega^p(k)); without --p/--k a full table.
    Twisted {
        #[command(flatten)]
        form: FormArgs,
        #[arg(long)]
        p: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        k: Option<i64>,
    },
    /// Mixed Hodge structure on the complement of a hyperplane section.
    Mhs {
        #[command(flatten)]
        pair: PairArgs,
        /// JSON file of claimed values to audit against.
        #[arg(long)]
        paper_table: Option<PathBuf>,
    },
    /// Deformations of the pair: tangent space, obstruction, contraction ranks.
    Deform {
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Gauss–Manin connection certificates along first-order directions.
    Gm {
        #[command(flatten)]
        pair: PairArgs,
        /// File with one direction polynomial per line.
        #[arg(long)]
        directions: Option<PathBuf>,
    },
    /// Every certificate for a pair.
    Certify {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        directions: Option<PathBuf>,
    },
    /// Scoreboard against the published values for a cubic 5-fold pair.
    PaperCheck {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        paper_table: Option<PathBuf>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Jring { .. } => "jring",
            Command::Hodge { .. } => "hodge",
            Command::Twisted { .. } => "twisted",
            Command::Mhs { .. } => "mhs",
            Command::Deform { .. } => "deform",
            Command::Gm { .. } => "gm",
            Command::Certify { .. } => "certify",
            Command::PaperCheck { .. } => "paper-check",
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Lib(Error),
    Usage(String),
    Io(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Lib(Error::Singular { .. } | Error::SocleUndefined) => "singular",
            CliError::Lib(Error::Parse { .. }) => "parse",
            CliError::Lib(Error::InvalidHypersurface(_) | Error::DegreeMismatch(_)) => "invalid_input",
            CliError::Lib(Error::BudgetExceeded { .. }) => "budget",
            CliError::Lib(Error::Precondition(_) | Error::NotYFixing(_)) => "precondition",
            CliError::Usage(_) => "usage",
            CliError::Io(_) => "io",
        }
    }

    fn exit_code(&self) -> u8 {
        match self.kind() {
            "singular" => 2,
            "parse" | "invalid_input" | "usage" => 3,
            _ => 1,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Lib(e) => e.to_string(),
            CliError::Usage(s) | CliError::Io(s) => s.clone(),
        }
    }
}

fn status_code(s: Status) -> u8 {
    match s {
        Status::Ok => 0,
        Status::Singular => 2,
        Status::CertificateFailure => 4,
    }
}

fn run(command: &Command) -> Result<(Polynomial, Outcome), CliError> {
    let pair_form = |p: &PairArgs| input::form(&p.pair, p.vars);
    let dirs = |path: &Option<PathBuf>, f: &Polynomial| path.as_ref().map(|p| input::directions(p, f.n_vars())).transpose();
    let claimed = |path: &Option<PathBuf>| path.as_ref().map(|p| input::claimed(p)).transpose();
    match command {
        Command::Jring { form, degree } => {
            let f = input::form(&form.poly, form.vars)?;
            Ok((f.clone(), commands::jring(f, *degree)?))
        }
        Command::Hodge { form } => {
            let f = input::form(&form.poly, form.vars)?;
            Ok((f.clone(), commands::hodge(f)?))
        }
        Command::Twisted { form, p, k } => {
            let f = input::form(&form.poly, form.vars)?;
            Ok((f.clone(), commands::twisted(f, *p, *k)?))
        }
        Command::Mhs { pair, paper_table } => {
            let f = pair_form(pair)?;
            Ok((f.clone(), commands::mhs(f, claimed(paper_table)?)?))
        }
        Command::Deform { pair } => {
            let f = pair_form(pair)?;
            Ok((f.clone(), commands::deform(f)?))
        }
        Command::Gm { pair, directions } => {
            let f = pair_form(pair)?;
            let d = dirs(directions, &f)?;
            Ok((f.clone(), commands::gm(f, d)?))
        }
        Command::Certify { pair, directions } => {
            let f = pair_form(pair)?;
            let d = dirs(directions, &f)?;
            Ok((f.clone(), commands::certify(f, d)?))
        }
        Command::PaperCheck { pair, paper_table } => {
            let f = pair_form(pair)?;
            Ok((f.clone(), commands::paper_check(f, claimed(paper_table)?)?))
        }
    }
}

fn emit(json_mode: bool, doc: &Value, text: &[String]) {
    let mut out = std::io::stdout().lock();
    if json_mode {
        let _ = writeln!(out, "{}", serde_json::to_string_pretty(doc).expect("json"));
    } else {
        for line in text {
            let _ = writeln!(out, "{line}");
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    let name = cli.command.name();
    match run(&cli.command) {
        Ok((f, outcome)) => {
            let doc = json!({
                "command": name,
                "input": { "polynomial": f.to_string(), "n_vars": f.n_vars() },
                "status": outcome.status,
                "result": outcome.result,
            });
            let mut text = vec![format!("{name}: {f} ({} variables)", f.n_vars())];
            text.extend(outcome.text);
            emit(cli.json, &doc, &text);
            ExitCode::from(status_code(outcome.status))
        }
        Err(e) => {
            if cli.json {
                let doc = json!({ "command": name, "error": { "kind": e.kind(), "message": e.message() } });
                emit(true, &doc, &[]);
            } else {
                eprintln!("error: {}", e.message());
            }
            ExitCode::from(e.exit_code())
        }
    }
}
