use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use polarispec_cli::config::{GridOverride, Scenario, Sweep};
use polarispec_cli::error::{CliError, CliResult};
use polarispec_cli::{presets, run};

#[derive(Parser)]
#[command(
    name = "polarispec",
    version,
    about = "Transmission, reflection and absorption of molecular microcavities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GridArgs {
    /// Override the number of grid points
    #[arg(long)]
    points: Option<usize>,
    /// Override the lower grid bound
    #[arg(long, allow_hyphen_values = true)]
    omega_min: Option<f64>,
    /// Override the upper grid bound
    #[arg(long, allow_hyphen_values = true)]
    omega_max: Option<f64>,
}

impl GridArgs {
    fn overrides(&self) -> GridOverride {
        GridOverride {
            points: self.points,
            omega_min: self.omega_min,
            omega_max: self.omega_max,
        }
    }
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Scenario config file (JSON)
    #[arg(long)]
    config: Option<PathBuf>,
    /// Embedded preset name
    #[arg(long)]
    preset: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Compute T/R/A for one scenario
    Spectrum {
        #[command(flatten)]
        source: Source,
        /// Write the T/R/A table here instead of the configured outputs
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write an SVG plot
        #[arg(long)]
        svg: Option<PathBuf>,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Run a parameter sweep and write a `value,peak_splitting` summary
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Write chi, J_eff, beta_eff and T/R/A tables into a directory
    Bundle {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        outdir: PathBuf,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// List embedded presets
    Presets,
}

fn load(source: &Source, grid: &GridArgs) -> CliResult<(Scenario, PathBuf)> {
    let (mut s, base) = match (&source.config, &source.preset) {
        (Some(path), _) => (Scenario::load(path)?, config_dir(path)),
        (None, Some(name)) => (presets::preset(name)?, PathBuf::from(".")),
        (None, None) => unreachable!("clap enforces one source"),
    };
    grid.overrides().apply(&mut s)?;
    Ok((s, base))
}

fn config_dir(path: &Path) -> PathBuf {
    match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    }
}

fn execute(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Spectrum {
            source,
            out,
            svg,
            grid,
        } => {
            let (mut s, base) = load(&source, &grid)?;
            let title = s.description.clone().unwrap_or_else(|| "spectra".into());
            if let Some(out) = out {
                let ev = run::evaluate(&s, &base)?;
                run::write_spectra(&ev.spectra, &out, svg.as_deref(), &title)?;
            } else if s.outputs.is_empty() {
                let ev = run::evaluate(&s, &base)?;
                let mut stdout = std::io::stdout().lock();
                let written = polarispec_core::io::write_tra(&mut stdout, &ev.spectra)
                    .map_err(CliError::from)
                    .and_then(|_| Ok(stdout.flush()?));
                // A closed pipe (e.g. `| head`) is not a failure.
                if let Err(e) = written {
                    if !e.to_string().contains("Broken pipe") {
                        return Err(e);
                    }
                }
                if let Some(p) = svg {
                    run::write_spectra(&ev.spectra, &p.with_extension("csv"), Some(&p), &title)?;
                }
            } else {
                if let Some(p) = svg {
                    s.outputs[0].svg_path = Some(p.to_string_lossy().into_owned());
                }
                run::run_scenario(&s, &base)?;
            }
        }
        Command::Sweep { config, grid } => {
            let mut sw = Sweep::load(&config)?;
            let base = config_dir(&config);
            let mut scenario = sw.base_scenario()?;
            grid.overrides().apply(&mut scenario)?;
            sw.base = Some(scenario);
            sw.preset = None;
            run::run_sweep(&sw, &base)?;
        }
        Command::Bundle {
            source,
            outdir,
            grid,
        } => {
            let (s, base) = load(&source, &grid)?;
            for p in run::export_bundle(&s, &base, &outdir)? {
                eprintln!("wrote {}", p.display());
            }
        }
        Command::Presets => {
            for name in presets::preset_names() {
                let s = presets::preset(name)?;
                println!("{name}\t{}", s.description.unwrap_or_default());
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("polarispec: {e}");
            ExitCode::from(exit_status(&e))
        }
    }
}

fn exit_status(e: &CliError) -> u8 {
    e.exit_code() as u8
}
