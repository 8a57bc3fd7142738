use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use pilly_cli::commands::on_worker;
use pilly_cli::{
    cmd_admissible, cmd_check, cmd_encode, cmd_equal, cmd_normalize, cmd_schema, CliError, Config, EncodeKind,
    Options, RunReport, SchemaKind, EXIT_INTERNAL,
};

#[derive(Parser, Debug)]
#[command(name = "pilly", version, about = "Check, normalize and relate PILL_Y programs")]
struct Cli {
    /// Maximum rewrite steps per normalization.
    #[arg(long, global = true, value_name = "N")]
    fuel: Option<usize>,
    /// Maximum `Y` unrollings per side in equality queries.
    #[arg(long = "y-unroll", global = true, value_name = "N")]
    y_unroll: Option<usize>,
    /// Print one JSON object per line instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Fail on equalities that could not be decided.
    #[arg(long, global = true)]
    strict: bool,
    /// Settings file; defaults to `pilly.toml` in the working directory.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Type check declarations and run every directive. Without files, the
    /// configured catalog is checked.
    Check { files: Vec<PathBuf> },
    /// Normalize a term declaration, or run the file's `#normalize` lines.
    Normalize { file: PathBuf, name: Option<String> },
    /// Decide an external equality between two closed terms.
    Equal {
        lhs: String,
        rhs: String,
        /// Make this file's declarations available.
        #[arg(long, value_name = "PATH")]
        file: Option<PathBuf>,
    },
    /// Build and verify an encoding, e.g. `encode mu "1 + a"`.
    Encode {
        kind: EncodeKind,
        types: Vec<String>,
        /// The bound variable for exists, mu, nu and rec.
        #[arg(long, default_value = "a")]
        var: String,
        /// Write the bundle as a source file.
        #[arg(long = "emit-bundle", value_name = "PATH")]
        emit_bundle: Option<PathBuf>,
    },
    /// Derive admissibility of a relation declaration, or run the file's
    /// `#admissible` lines.
    Admissible { file: PathBuf, rel: Option<String> },
    /// Instantiate a schema at a type, or at a term for `lrl`.
    Schema {
        kind: SchemaKind,
        target: String,
        /// The term quantified in the parametricity schema.
        #[arg(long, value_name = "TERM")]
        subject: Option<String>,
        #[arg(long, value_name = "PATH")]
        file: Option<PathBuf>,
    },
}

fn execute(cli: &Cli) -> Result<(RunReport, bool), CliError> {
    let cfg = Config::discover(cli.config.as_deref())?;
    let strict = cli.strict || cfg.strict.unwrap_or(false);
    let opts = Options {
        rewrite: cfg.rewrite(cli.fuel, cli.y_unroll),
        strict,
    };
    let report = match &cli.command {
        Command::Check { files } if files.is_empty() => {
            let files = cfg.catalog_files()?;
            if files.is_empty() {
                return Err(CliError::Usage("no files given and no catalog configured".into()));
            }
            cmd_check(&files, &opts)?
        }
        Command::Check { files } => cmd_check(files, &opts)?,
        Command::Normalize { file, name } => cmd_normalize(file, name.as_deref(), &opts)?,
        Command::Equal { lhs, rhs, file } => cmd_equal(file.as_deref(), lhs, rhs, &opts)?,
        Command::Encode {
            kind,
            types,
            var,
            emit_bundle,
        } => cmd_encode(*kind, types, var, emit_bundle.as_deref(), &opts)?,
        Command::Admissible { file, rel } => cmd_admissible(file, rel.as_deref(), &opts)?,
        Command::Schema {
            kind,
            target,
            subject,
            file,
        } => cmd_schema(*kind, target, subject.as_deref(), file.as_deref())?,
    };
    Ok((report, strict))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = on_worker(|| execute(&cli)).and_then(|r| r);
    let code = match outcome {
        Ok((report, strict)) => {
            let text = if cli.json {
                report.to_json_lines(strict)
            } else {
                report.to_text(strict)
            };
            let mut out = std::io::stdout().lock();
            if out.write_all(text.as_bytes()).and_then(|()| out.flush()).is_err() {
                EXIT_INTERNAL
            } else {
                report.exit_code(strict)
            }
        }
        Err(e) => {
            eprintln!("pilly: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
