use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gasket_cli::commands::{self, write_output, StructureArgs};
use gasket_cli::sweep::{run_sweep, to_csv};
use gasket_cli::{CliError, CliResult, RunConfig};
use gasket_core::{Mode, Tolerances};

/// Harmonic structures and their nondegeneracy on Sierpinski gasket
/// level-1 networks.
#[derive(Debug, Parser)]
#[command(name = "gasket", version)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// Arithmetic: exact rationals or f64.
    #[arg(long, global = true, default_value = "exact")]
    mode: Mode,

    #[arg(long, global = true, default_value_t = Tolerances::default().entry)]
    tol_entry: f64,

    #[arg(long, global = true, default_value_t = Tolerances::default().residual)]
    tol_residual: f64,

    /// Smallest singular value accepted as nonzero in float mode.
    #[arg(long, global = true, default_value_t = Tolerances::default().singular_floor)]
    sv_floor: f64,

    /// Equality tolerance for level sets in float mode.
    #[arg(long, global = true, default_value_t = Tolerances::default().level)]
    tol_level: f64,

    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Output file (stdout if omitted).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

impl GlobalArgs {
    fn tolerances(&self) -> CliResult<Tolerances> {
        let t = Tolerances {
            entry: self.tol_entry,
            residual: self.tol_residual,
            singular_floor: self.sv_floor,
            level: self.tol_level,
        };
        t.validate().map_err(|e| CliError::Config(e.to_string()))?;
        Ok(t)
    }
}

#[derive(Debug, Args)]
struct StructureOpts {
    /// sgN, star-toy, or a structure JSON file.
    #[arg(long, default_value = "sg2")]
    structure: String,

    /// Boundary Laplacian as a matrix JSON file (unit complete graph if omitted).
    #[arg(long)]
    d: Option<PathBuf>,

    /// Cell weights as a JSON list (homogeneous solution if omitted).
    #[arg(long)]
    r: Option<PathBuf>,
}

impl From<&StructureOpts> for StructureArgs {
    fn from(o: &StructureOpts) -> Self {
        StructureArgs {
            structure: o.structure.clone(),
            d: o.d.clone(),
            r: o.r.clone(),
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve and certify the homogeneous structure on SG_n for a range of n; CSV output.
    Sweep {
        #[arg(long)]
        n_min: Option<usize>,
        /// Defaults to 16 in exact mode and 64 in float mode.
        #[arg(long)]
        n_max: Option<usize>,
        /// Extra orbit-weighted structures certified per n.
        #[arg(long, default_value_t = 0)]
        orbit_samples: usize,
        /// Write 0 in the millis column.
        #[arg(long)]
        no_timing: bool,
    },
    /// Check harmonicity, nondegeneracy and the level-set properties; JSON output.
    Verify {
        #[command(flatten)]
        structure: StructureOpts,
        /// Random boundary functions tried, on top of the basis vectors.
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// Harmonic extension of boundary values; JSON output.
    Extend {
        #[command(flatten)]
        structure: StructureOpts,
        /// Boundary values, e.g. "1,0,0".
        #[arg(long)]
        boundary: String,
        /// Cell address, e.g. "0 0"; prints the values on that cell's corners.
        #[arg(long)]
        address: Option<String>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Cell orbits under the symmetries of the structure; JSON output.
    Orbits {
        #[arg(long, default_value = "sg2")]
        structure: String,
    },
    /// Draw the structure as SVG, coloured by a harmonic extension if boundary values are given.
    Render {
        #[command(flatten)]
        structure: StructureOpts,
        #[arg(long)]
        boundary: Option<String>,
        #[arg(long)]
        svg: PathBuf,
    },
}

fn json<T: serde::Serialize>(value: &T) -> CliResult<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

/// `Ok(false)` means a verification failed.
fn run(cli: Cli) -> CliResult<bool> {
    let g = &cli.global;
    let tol = g.tolerances()?;
    let out = g.out.as_deref();
    match &cli.command {
        Command::Sweep {
            n_min,
            n_max,
            orbit_samples,
            no_timing,
        } => {
            let cfg = RunConfig::new(
                g.mode,
                tol,
                *n_min,
                *n_max,
                *orbit_samples,
                g.seed,
                !no_timing,
            )?;
            let rows = run_sweep(&cfg)?;
            write_output(out, &to_csv(&rows))?;
            Ok(rows.iter().all(|r| r.passed()))
        }
        Command::Verify { structure, samples } => {
            if g.mode == Mode::Float {
                eprintln!("warning: float mode compares level sets within --tol-level; exact mode is authoritative");
            }
            let doc = commands::verify(&structure.into(), g.mode, &tol, *samples, g.seed)?;
            write_output(out, &json(&doc)?)?;
            for c in doc.checks.iter().filter(|c| !c.passed) {
                eprintln!("FAIL {}: {}", c.name, c.detail);
            }
            Ok(doc.passed)
        }
        Command::Extend {
            structure,
            boundary,
            address,
            svg,
        } => {
            let doc = commands::extend(
                &structure.into(),
                g.mode,
                &tol,
                boundary,
                address.as_deref(),
                svg.as_deref(),
            )?;
            write_output(out, &json(&doc)?)?;
            Ok(true)
        }
        Command::Orbits { structure } => {
            write_output(out, &json(&commands::orbits(structure)?)?)?;
            Ok(true)
        }
        Command::Render {
            structure,
            boundary,
            svg,
        } => {
            commands::render(&structure.into(), g.mode, &tol, boundary.as_deref(), svg)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
