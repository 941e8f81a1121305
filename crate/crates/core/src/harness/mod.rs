//! Experiment plumbing: generators, specs, the runner, sweeps and CSV.

pub mod generate;
pub mod run;
pub mod spec;
pub mod sweep;

pub use generate::{generate, GenKind};
pub use run::{append_csv, det_upper, execute, lb_floor, load_graph, rand_upper, run, RunRecord, CSV_COLUMNS};
pub use spec::{Algorithm, DataSource, EmitTarget, ExperimentSpec, Settings};
pub use sweep::{points, sweep, Axis};
