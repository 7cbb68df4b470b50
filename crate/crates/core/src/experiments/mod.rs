//! Scenario files, parameter sweeps, sizing tables and CSV emitters.

pub mod config;
pub mod output;
pub mod sweep;
pub mod tables;

pub use config::{
    load_scenario, load_sweep, parse_scenario, parse_sweep, ScenarioConfig, SweepConfig,
};
pub use output::{fmt_sig, write_sweep_csv, write_table_csv};
pub use sweep::{
    run_sweep, Normalization, SweepRow, SweepSpec, SweepStrategy, DEFAULT_MAX_PER_SIDE,
};
pub use tables::{make_tables, TableCase, TableRow, TABLE_FOCAL_LENGTHS_M, TABLE_FREQUENCIES_HZ};
