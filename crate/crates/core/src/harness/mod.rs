//! Scenario catalog, file formats, reports and the table driver behind the
//! command-line tool.

mod catalog;
mod config;
mod io;
mod report;

pub use catalog::{scenario, scenario_names, EGO_ID, OTHER_ID};
pub use config::BenchConfig;
pub use io::{load_recording, parse_recording, write_recording, write_recording_file};
pub use report::{evaluate, export_series, run_table, simulate, EgoSummary, MetricReport, PairReport, TableRow};
