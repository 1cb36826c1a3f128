use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use eqnielsen::error::{CliError, Result};
use eqnielsen::problem::{Problem, ProblemFile};
use eqnielsen::{report, run, verify};

/// Equivariant Lefschetz and Nielsen invariants of G-simplicial self-maps.
#[derive(Parser)]
#[command(name = "nf", version)]
struct Cli {
    /// Cap on cosets enumerated per fundamental group (default 50000).
    #[arg(long, global = true)]
    coset_cap: Option<usize>,
    /// Cap on candidate classes in the N^G cover search (default 4096).
    #[arg(long, global = true)]
    cover_search_cap: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// List the objects of the fundamental category.
    Objects { file: PathBuf },
    /// Compute all invariants and verdicts.
    Invariants {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Cross-check the invariants against the independent oracles.
    Verify {
        file: PathBuf,
        /// Cap on |pi1| times cells for the brute-force trace.
        #[arg(long, default_value_t = eqnielsen_core::oracle::DEFAULT_BRUTE_FORCE_CAP)]
        brute_force_cap: usize,
    },
    /// Write the JSON report to a file.
    Report {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
}

fn load(cli: &Cli, path: &Path) -> Result<Problem> {
    let mut p = ProblemFile::read(path)?.build()?;
    if let Some(c) = cli.coset_cap {
        p.options.coset_cap = c;
    }
    if let Some(c) = cli.cover_search_cap {
        p.options.cover_search_cap = c;
    }
    Ok(p)
}

fn execute(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Objects { file } => {
            let p = load(cli, file)?;
            let objs = eqnielsen::objects(&p)?;
            print!("{}", report::objects_table(&report::object_rows(&objs)));
        }
        Command::Invariants { file, format } => {
            let p = load(cli, file)?;
            let r = report::build(&run(&p)?);
            match format {
                Format::Json => print!("{}", r.to_json()),
                Format::Text => print!("{}", r.to_text()),
            }
        }
        Command::Verify { file, brute_force_cap } => {
            let p = load(cli, file)?;
            let a = run(&p)?;
            let checks = verify::checks(
                &p,
                &a,
                &verify::VerifyOptions {
                    brute_force_cap: *brute_force_cap,
                },
            )?;
            print!("{}", verify::render(&checks));
            verify::outcome(&checks)?;
        }
        Command::Report { file, output } => {
            let p = load(cli, file)?;
            let r = report::build(&run(&p)?);
            std::fs::write(output, r.to_json()).map_err(|source| CliError::Write {
                path: output.clone(),
                source,
            })?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("nf: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
