//! Towers, experiment sweeps, reports and the `l2` command line.

pub mod checks;
pub mod cli;
pub mod experiments;
pub mod report;
pub mod tower;

pub use checks::{addendum_checks, identity_checks, Check};
pub use cli::{cli_main, cli_main_with};
pub use experiments::{
    is_lehmer, rho2_pushed, run_betti_approx, run_det_approx, run_mapping_torus,
    run_torsion_growth, run_trace_approx, RunOptions, LEHMER_MAHLER,
};
pub use report::{format_real, Cell, ExperimentReport, LimitReference, ReportRow};
pub use tower::{TowerSpec, DEFAULT_MAX_SIZE};
