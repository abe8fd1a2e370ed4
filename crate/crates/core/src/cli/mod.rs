//! Scenario files, reports and the property runner behind the `maslov-witt` binary.

pub mod json;
pub mod props;
mod run;
mod scenario;

pub use run::{exit_code, run, run_props, Report, EXIT_FAILURE, EXIT_INPUT, EXIT_PASS};
pub use scenario::{parse_scenario, Command, Object, Scenario, Task};

/// Environment variable consulted when no `--seed` is given.
pub const SEED_ENV: &str = "MASLOV_WITT_SEED";
