//! `weakyd`: verification and construction commands over instance files.
//!
//! Exit codes: 0 every identity holds, 1 some identity fails, 2 input error.

mod commands;
mod format;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::Outcome;
use format::{load, parse_field, read_instance, InputError, InstanceFile};

#[derive(Parser)]
#[command(name = "weakyd", version, about = "Exact checks for weak multiplier bialgebras and Yetter-Drinfeld modules")]
struct Cli {
    /// Scalar field, overriding the file: "Q" or "F<p>".
    #[arg(long, global = true)]
    field: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the structure suite: identities, fullness, base algebra, antipode.
    Check {
        file: PathBuf,
        /// Machine-readable report.
        #[arg(long)]
        json: bool,
    },
    /// Print the base algebra R with δ, ε, σ, σ̄, τ, τ̄, ϑ and F.
    BaseAlgebra { file: PathBuf },
    /// Run the Yetter-Drinfeld battery on the objects of the file.
    CheckYd {
        file: PathBuf,
        /// Only this object.
        #[arg(long)]
        object: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Append X⊗_R Y to the file and print it.
    Tensor {
        file: PathBuf,
        x: String,
        y: String,
        /// Name of the new object.
        #[arg(long)]
        name: Option<String>,
    },
    /// Append the dual X* to the file and print it.
    Dual {
        file: PathBuf,
        x: String,
        #[arg(long)]
        name: Option<String>,
    },
    /// List the built-in corpus, or print one instance.
    Examples {
        name: Option<String>,
        /// Emit the groupoid description instead of structure constants.
        #[arg(long)]
        groupoid: bool,
    },
    /// Print the file in normalized form.
    Normalize { file: PathBuf },
}

fn read(path: &PathBuf) -> Result<InstanceFile, InputError> {
    let text = std::fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    read_instance(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<Outcome, InputError> {
    let field = cli.field.as_deref().map(parse_field).transpose()?;
    match cli.command {
        Command::Check { file, json } => Ok(commands::check(&load(&read(&file)?, field)?, json)),
        Command::BaseAlgebra { file } => Ok(commands::base_algebra(&load(&read(&file)?, field)?)),
        Command::CheckYd { file, object, json } => {
            commands::check_yd_cmd(&load(&read(&file)?, field)?, object.as_deref(), json)
        }
        Command::Tensor { file, x, y, name } => {
            let f = read(&file)?;
            commands::tensor_cmd(&f, &load(&f, field)?, &x, &y, name.as_deref())
        }
        Command::Dual { file, x, name } => {
            let f = read(&file)?;
            commands::dual_cmd(&f, &load(&f, field)?, &x, name.as_deref())
        }
        Command::Examples { name, groupoid } => commands::examples_cmd(name.as_deref(), groupoid),
        Command::Normalize { file } => {
            let f = read(&file)?;
            load(&f, field)?;
            Ok(Outcome { stdout: format::to_text(&format::normalize(&f)?), stderr: String::new(), passed: true })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(o) => {
            print!("{}", o.stdout);
            eprint!("{}", o.stderr);
            ExitCode::from(if o.passed { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
