//! Scenario runner behind the `polarispec` command: JSON configs, embedded
//! presets, parameter sweeps, CSV bundles and SVG plots.

pub mod config;
pub mod error;
pub mod presets;
pub mod run;
pub mod svg;

pub use config::{GridOverride, Scenario, Sweep};
pub use error::{CliError, CliResult};
pub use run::{evaluate, export_bundle, run_scenario, run_sweep, Evaluation, SweepRow};
