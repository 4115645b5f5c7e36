//! Scenario parsing, execution and report rendering behind the `relhom` binary.

pub mod config;
pub mod run;

pub use config::{parse_config, ConfigError, RawScenario, ScenarioConfig};
pub use run::{run, Outcome, Record};
