//! Statistics, finite-difference checks and the named experiments.

mod experiments;
mod pde;
mod report;
mod stats;

pub use experiments::{interior_points, is_statistical, run_experiment, validate_params, ExperimentOutcome, ExperimentParams, EXPERIMENTS};
pub use pde::{pde_residual, pde_residual_in_chamber, Generator};
pub use report::{write_density_csv, write_samples_csv, Check, ExperimentReport, SampleRecord};
pub use stats::{
    alcove_fit, chi_square_2d, correlation, ks_critical_1pct, ks_statistic, median, ChiSquareOutcome, FitOutcome,
    KsOutcome, Region2d, TabulatedCdf,
};
