use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use sincphoton::config::{self, ExperimentConfig, Kind};
use sincphoton::run::{self, SweepResult};
use sincphoton::{Error, ErrorClass};

const EXIT_VALIDATION: u8 = 1;
const EXIT_RUNTIME: u8 = 2;
const EXIT_CHECK_FAILED: u8 = 3;

#[derive(Parser)]
#[command(
    name = "sincphoton",
    version,
    about = "Sinc-basis single-photon interference experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Mach-Zehnder output probabilities.
    Mzi(RunArgs),
    /// Hong-Ou-Mandel coincidence probability.
    Hom(RunArgs),
    /// Bit-commitment cheat-detection probability.
    Qbc(QbcArgs),
    /// Closed forms against the Fock-space oracle.
    OracleCheck(OracleArgs),
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    config: PathBuf,
    /// Write the result table as CSV.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct QbcArgs {
    #[command(flatten)]
    run: RunArgs,
    /// Write the per-trial Monte-Carlo records as CSV (configs without a sweep).
    #[arg(long)]
    records: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    max_bins: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    Model(Error),
    Io(PathBuf, io::Error),
    Checks(Vec<String>),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Model(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Model(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e.class() {
                ErrorClass::Validation => EXIT_VALIDATION,
                ErrorClass::Runtime => EXIT_RUNTIME,
            })
        }
        Err(Failure::Io(path, e)) => {
            eprintln!("error: {}: {e}", path.display());
            ExitCode::from(EXIT_RUNTIME)
        }
        Err(Failure::Checks(names)) => {
            eprintln!(
                "{} equivalence check(s) failed: {}",
                names.len(),
                names.join(", ")
            );
            ExitCode::from(EXIT_CHECK_FAILED)
        }
    }
}

fn execute(command: Command) -> Result<(), Failure> {
    match command {
        Command::Mzi(args) => experiment(Kind::Mzi, &args, None),
        Command::Hom(args) => experiment(Kind::Hom, &args, None),
        Command::Qbc(args) => experiment(Kind::Qbc, &args.run, args.records.as_deref()),
        Command::OracleCheck(args) => oracle_check(&args),
    }
}

fn experiment(kind: Kind, args: &RunArgs, records: Option<&Path>) -> Result<(), Failure> {
    let mut cfg = config::load_config(&args.config)?;
    if cfg.kind() != kind {
        return Err(Error::Config {
            key: "kind".into(),
            message: format!(
                "config describes `{}` but the `{}` subcommand was used",
                cfg.kind().name(),
                kind.name()
            ),
        }
        .into());
    }
    if let Some(seed) = args.seed {
        cfg = cfg.with_seed(seed)?;
    }
    for w in &cfg.warnings {
        eprintln!("warning: {w}");
    }
    let result = run::run(&cfg)?;
    print_summary(&cfg, &result);
    if let Some(path) = &args.out {
        write_file(path, |w| result.write_csv(w))?;
    }
    if let Some(path) = records {
        let trials = run::qbc_records(&cfg)?;
        write_file(path, |w| run::write_records_csv(&trials, w))?;
    }
    Ok(())
}

fn oracle_check(args: &OracleArgs) -> Result<(), Failure> {
    let mut cfg = match &args.config {
        Some(path) => config::load_config(path)?,
        None => config::parse_config("kind = \"oracle-check\"")?,
    };
    if cfg.kind() != Kind::OracleCheck {
        return Err(Error::Config {
            key: "kind".into(),
            message: format!(
                "config describes `{}` but the `oracle-check` subcommand was used",
                cfg.kind().name()
            ),
        }
        .into());
    }
    cfg = cfg.with_oracle_limits(args.trials, args.max_bins)?;
    if let Some(seed) = args.seed {
        cfg = cfg.with_seed(seed)?;
    }
    let result = run::run(&cfg)?;
    print_summary(&cfg, &result);
    if let Some(path) = &args.out {
        write_file(path, |w| result.write_csv(w))?;
    }
    let failed = result.failed_checks();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Checks(failed))
    }
}

fn print_summary(cfg: &ExperimentConfig, result: &SweepResult) {
    println!("{}: {} row(s)", cfg.kind().name(), result.rows.len());
    if let Some(sweep) = &cfg.sweep {
        println!(
            "sweep {} from {} to {} in {} steps",
            sweep.parameter, sweep.start, sweep.stop, sweep.steps
        );
    }
    let widths: Vec<usize> = result
        .columns
        .iter()
        .enumerate()
        .map(|(i, c)| {
            result
                .rows
                .iter()
                .map(|r| display(&r[i]).len())
                .chain([c.len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |cells: Vec<String>| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect::<Vec<_>>()
            .join("  ")
    };
    println!(
        "{}",
        line(result.columns.iter().map(|c| c.to_string()).collect())
    );
    for row in &result.rows {
        println!("{}", line(row.iter().map(display).collect()));
    }
}

fn display(cell: &run::Cell) -> String {
    match cell {
        run::Cell::Empty => "-".into(),
        other => other.render(),
    }
}

fn write_file(
    path: &Path,
    write: impl FnOnce(&mut BufWriter<File>) -> io::Result<()>,
) -> Result<(), Failure> {
    let io_err = |e| Failure::Io(path.to_path_buf(), e);
    let mut w = BufWriter::new(File::create(path).map_err(io_err)?);
    write(&mut w).map_err(io_err)?;
    w.flush().map_err(io_err)
}
