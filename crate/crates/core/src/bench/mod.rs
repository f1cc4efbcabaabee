//! Benchmark harness: run configuration, time loop, error norms,
//! convergence tables and file output.

pub mod config;
pub mod driver;
pub mod norms;
pub mod output;

pub use config::{parse_key_values, parse_mesh_list, parse_usize_list, OutputFormat, RunConfig};
pub use driver::{run, run_case, run_convergence, run_with, ConservationMonitor, ConvergenceRow, ConvergenceTable, RunOutcome};
pub use norms::{error_norms, observed_order, pairwise_sum, ErrorReport};
pub use output::{csv_string, parse_csv, read_csv, vtk_string, write_csv, write_vtk, CsvTable};
