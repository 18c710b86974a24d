//! Scenario runner, reports and the acceptance suite behind the `bgl` binary.
#![allow(clippy::needless_range_loop)]

pub mod config;
pub mod oracle;
pub mod psi_spec;
pub mod report;
pub mod scenario;
pub mod suite;

pub use config::{load_scenario, parse_scenario, ConfigError, Kind, LoadedScenario, Scenario};
pub use report::{emit_report, Format, Record, Report};
pub use scenario::{run_scenario, RunOptions};
