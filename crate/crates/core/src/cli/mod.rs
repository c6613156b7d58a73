//! Command-line front end: one JSON config, six subcommands, CSV + SVG +
//! manifest outputs.
//!
//! Exit codes: 0 success, 2 configuration error, 3 numerical failure.

mod commands;
pub mod config;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use commands::{
    cmd_beam, cmd_efficiency, cmd_noise, cmd_phasematch, cmd_saturation, cmd_sweep, quartet_table,
    Outputs, QUARTET_HEADER,
};
pub use config::{Prepared, RunConfig, SCHEMA_VERSION};

use crate::sweeps::Execution;
use crate::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "ffwm",
    version,
    about = "Free-space four-wave-mixing frequency conversion models"
)]
pub struct Args {
    /// JSON run configuration.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory; overrides `output_dir` in the config.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads; 1 runs serially.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Recorded in manifests; no current command draws random numbers.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, Subcommand)]
pub enum Command {
    /// Enumerate phase-matched pump splits for the configured signal.
    Phasematch,
    /// Evaluate one operating point.
    Efficiency,
    /// Grid sweep over Q, r_ZPL and pump budget.
    Sweep,
    /// Saturating pump budget for every (Q, r_ZPL).
    Saturation,
    /// Focus, convert and mode-match the idler far-field.
    Beam,
    /// Competing four-wave-mixing processes of the configured quartet.
    Noise,
}

/// Exit code for a failed run.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::DegenerateSystem { .. }
        | Error::DivergentIntegral { .. }
        | Error::ZeroPower
        | Error::IllConditionedIntegral { .. }
        | Error::Numerical(_) => EXIT_NUMERICAL,
        _ => EXIT_CONFIG,
    }
}

pub fn run(args: &Args) -> crate::Result<Outputs> {
    let path = args
        .config
        .as_ref()
        .ok_or_else(|| Error::invalid("--config <path> is required"))?;
    let prepared = RunConfig::load(path)?;
    let out = prepared.output_dir(args.out.as_deref());
    let exec = if args.threads == Some(1) {
        Execution::Serial
    } else {
        Execution::Parallel
    };
    let seed = args.seed;
    match args.command {
        Command::Phasematch => cmd_phasematch(&prepared, &out, seed),
        Command::Efficiency => cmd_efficiency(&prepared, &out, seed),
        Command::Sweep => cmd_sweep(&prepared, &out, seed, exec),
        Command::Saturation => cmd_saturation(&prepared, &out, seed, exec),
        Command::Beam => cmd_beam(&prepared, &out, seed),
        Command::Noise => cmd_noise(&prepared, &out, seed),
    }
}

/// Parses `argv`, runs the command and returns the process exit code.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    if let Some(n) = args.threads {
        if n == 0 {
            eprintln!("error: --threads must be at least 1");
            return EXIT_CONFIG;
        }
        // Fails only if a pool already exists, in which case that one is used.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    match run(&args) {
        Ok(o) => {
            for f in &o.files {
                println!("wrote {}", o.dir.join(f).display());
            }
            EXIT_OK
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
