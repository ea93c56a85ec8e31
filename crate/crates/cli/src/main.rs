use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use augsurf::oracles::{brute_force_distance, DistanceBound};
use augsurf::sim::{self, FixedCodeChoice, OutputFormat, SweepConfig};
use augsurf::{AugmentedCode, Cellulation, DecoderKind};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "augsurf", version, about = "Augmented surface code simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Monte Carlo logical error rates under i.i.d. Z noise.
    Sweep {
        /// Torus sides, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        m: Vec<usize>,
        /// `422`, `trivial`, `steane`, or a path to a code file.
        #[arg(long, default_value = "422")]
        fixed_code: String,
        #[arg(long, default_value = "v1")]
        decoder: DecoderKind,
        /// Physical error rates, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        p_list: Vec<f64>,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "csv")]
        format: OutputFormat,
        /// Fill wall_ms with measured time (makes output non-reproducible).
        #[arg(long)]
        record_time: bool,
    },
    /// Minimum distance by exhaustive enumeration.
    Distance {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value = "422")]
        fixed_code: String,
        /// Largest weight to enumerate.
        #[arg(long)]
        w_max: usize,
    },
    /// Qubits per logical qubit for the toric and augmented families.
    Overhead {
        /// Distances, comma separated.
        #[arg(long, value_delimiter = ',', default_values_t = (1..=20).map(|i| 2 * i).collect::<Vec<usize>>())]
        d: Vec<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Structural self-checks for a fixed code.
    Verify {
        #[arg(long, default_value = "422")]
        fixed_code: String,
    },
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => sim::write_output(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Sweep {
            m,
            fixed_code,
            decoder,
            p_list,
            trials,
            seed,
            out,
            format,
            record_time,
        } => {
            let config = SweepConfig {
                m,
                fixed_code: fixed_code.parse().expect("infallible"),
                decoder,
                p: p_list,
                trials,
                seed,
                out,
                format,
                record_time,
            };
            let points = sim::run_sweep(&config)?;
            emit(config.out.as_ref(), &sim::render(&config, &points))?;
            Ok(true)
        }
        Command::Distance { m, fixed_code, w_max } => {
            let choice: FixedCodeChoice = fixed_code.parse().expect("infallible");
            let cell = Cellulation::torus(m)?;
            let code = AugmentedCode::new(cell, choice.load()?);
            match brute_force_distance(&code, w_max)? {
                DistanceBound::Exact { distance, witness } => {
                    println!("d = {distance}");
                    println!("witness qubits: {witness:?}");
                }
                DistanceBound::GreaterThan(w) => println!("d > {w}"),
            }
            Ok(true)
        }
        Command::Overhead { d, out } => {
            if d.is_empty() {
                bail!("no distances given");
            }
            emit(out.as_ref(), &sim::overhead_csv(&sim::overhead_table(&d)))?;
            Ok(true)
        }
        Command::Verify { fixed_code } => {
            let choice: FixedCodeChoice = fixed_code.parse().expect("infallible");
            let checks = augsurf::verify::run_all(&choice.load()?);
            let mut ok = true;
            for c in &checks {
                println!("[{}] {} ({})", if c.passed { "pass" } else { "FAIL" }, c.name, c.detail);
                ok &= c.passed;
            }
            Ok(ok)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
