use std::io::Write;
use std::panic;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use lbialg_cli::{parse_spec, run, CliError, Model, Options, Subcommand};

#[derive(Parser)]
#[command(
    name = "lbialg",
    version,
    about = "Exact checks for Lie algebroids, bialgebroids and their L-infinity versions"
)]
struct Args {
    #[command(subcommand)]
    command: Command,
    /// Emit the machine-readable report.
    #[arg(long, global = true)]
    json: bool,
    /// Print full residual polynomials.
    #[arg(long, global = true)]
    residuals: bool,
    /// Word and hbar cap; overrides the file's `trunc`.
    #[arg(long, global = true)]
    trunc: Option<u32>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Attach elapsed times to every record.
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum MorphismMode {
    Semistrict,
    Full,
}

#[derive(clap::Subcommand)]
enum Command {
    /// {mu,mu} = 0 against the algebroid axioms.
    CheckAlgebroid {
        file: PathBuf,
    },
    /// The dual algebroid of every bialgebroid and its Legendre pullback.
    CheckCoalgebroid {
        file: PathBuf,
    },
    /// {chi,chi} = 0 against both halves and their compatibility.
    CheckBialgebroid {
        file: PathBuf,
    },
    /// L-infinity bialgebroid conditions for Hamiltonians.
    CheckLinfty {
        file: PathBuf,
    },
    CheckMorphism {
        mode: MorphismMode,
        file: PathBuf,
    },
    /// Canonical bracket {f,g}.
    Bracket {
        file: PathBuf,
    },
    /// Chevalley-Eilenberg differential.
    CeDiff {
        file: PathBuf,
    },
    Schouten {
        file: PathBuf,
    },
    /// BV operator of the adjoint connection on the top power.
    Bv {
        file: PathBuf,
    },
    /// Hamiltonian lifts of vector fields.
    Lift {
        file: PathBuf,
    },
    Legendre {
        file: PathBuf,
    },
    /// Run construct entries of a kind (or a single entry by name).
    Construct {
        name: String,
        file: PathBuf,
    },
}

fn split(cmd: Command) -> (Subcommand, PathBuf) {
    match cmd {
        Command::CheckAlgebroid { file } => (Subcommand::CheckAlgebroid, file),
        Command::CheckCoalgebroid { file } => (Subcommand::CheckCoalgebroid, file),
        Command::CheckBialgebroid { file } => (Subcommand::CheckBialgebroid, file),
        Command::CheckLinfty { file } => (Subcommand::CheckLinfty, file),
        Command::CheckMorphism { mode, file } => (
            Subcommand::CheckMorphism {
                full: matches!(mode, MorphismMode::Full),
            },
            file,
        ),
        Command::Bracket { file } => (Subcommand::Bracket, file),
        Command::CeDiff { file } => (Subcommand::CeDiff, file),
        Command::Schouten { file } => (Subcommand::Schouten, file),
        Command::Bv { file } => (Subcommand::Bv, file),
        Command::Lift { file } => (Subcommand::Lift, file),
        Command::Legendre { file } => (Subcommand::Legendre, file),
        Command::Construct { name, file } => (Subcommand::Construct(name), file),
    }
}

fn execute(args: Args) -> Result<i32, CliError> {
    let (sub, file) = split(args.command);
    let text = std::fs::read_to_string(&file).map_err(|e| CliError::Io(format!("cannot read: {e}")))?;
    let spec = parse_spec(&text)?;
    let model = Model::load(&text, &spec)?;
    let opts = Options {
        trunc: args.trunc,
        seed: args.seed,
        timings: args.timings,
    };
    let report = run(&sub, &model, &opts)?;
    let out = if args.json {
        report.to_json()
    } else {
        report.to_human(args.residuals)
    };
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(out.as_bytes());
    Ok(report.exit_code)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let file = match &args.command {
        Command::Construct { file, .. } | Command::CheckMorphism { file, .. } => file.clone(),
        Command::CheckAlgebroid { file }
        | Command::CheckCoalgebroid { file }
        | Command::CheckBialgebroid { file }
        | Command::CheckLinfty { file }
        | Command::Bracket { file }
        | Command::CeDiff { file }
        | Command::Schouten { file }
        | Command::Bv { file }
        | Command::Lift { file }
        | Command::Legendre { file } => file.clone(),
    };
    let code = match panic::catch_unwind(|| execute(args)) {
        Ok(Ok(code)) => code,
        Ok(Err(e)) => {
            eprintln!("{}: {e}", file.display());
            e.exit_code()
        }
        Err(_) => {
            eprintln!("{}: internal error", file.display());
            3
        }
    };
    ExitCode::from(code as u8)
}
