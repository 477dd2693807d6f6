//! Short-time and large-level checks where the laws depend visibly on the
//! drift.
//!
//! At the default times the SU(2) laws are within e^{-30} of the drift-free
//! stationary law, so the acceptance runs cannot tell drifts apart. These
//! tests move to regimes where they can, and check that a wrong drift is
//! rejected.

use alcove::harness::{alcove_fit, run_experiment, ExperimentParams};
use alcove::kernels::Kernels;
use alcove::lie::{orbit_coordinate, CartanVector, GroupModel};
use alcove::sampler::{sample_sheet, simulate_endpoint, SheetMode};

fn params(t: f64) -> ExperimentParams {
    ExperimentParams {
        t: Some(t),
        n: Some(10_000),
        ds: Some(1e-3),
        seeds: Some(1),
        ..Default::default()
    }
}

#[test]
fn experiments_pass_where_the_drift_matters() {
    let m = GroupModel::su2();
    for (name, t) in [("statement1", 0.03), ("time-inversion", 0.03), ("increments", 0.03), ("main-theorem", 30.0)] {
        let report = run_experiment(name, &m, &params(t), 99).unwrap().report;
        assert!(report.passed, "{name} at t={t}: {:#?}", report.checks);
    }
}

#[test]
fn wrong_drift_is_rejected() {
    let m = GroupModel::su2();
    let k = Kernels::with_defaults(m.clone());
    let t = 0.03;
    let ds = 1e-3;
    let gamma = m.from_root_values(&[0.4]).unwrap();
    let samples: Vec<CartanVector> = (0..10_000u64)
        .map(|i| {
            let grid = sample_sheet(&m, ds, t, t, 5, i).unwrap();
            orbit_coordinate(&m, &simulate_endpoint(&m, &grid, &gamma, SheetMode::X, t).unwrap()).unwrap()
        })
        .collect();
    let fit = |alpha: f64| {
        let g = m.from_root_values(&[alpha]).unwrap();
        alcove_fit(&m, 1.0, &samples, |y| k.q_doob(t, &g, y).unwrap(), 2.0 * ds, 10).unwrap()
    };
    assert!(fit(0.4).passed());
    let wrong = fit(0.3);
    assert!(!wrong.passed() && wrong.statistic > 3.0 * wrong.threshold, "{wrong:?}");
}
