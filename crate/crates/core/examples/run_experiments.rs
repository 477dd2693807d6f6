//! Running named experiments from code.
//!
//! Uses a reduced sample size so the statistical experiments finish in a
//! few seconds; the reports are the same objects the CLI writes as JSON.

use alcove::harness::{is_statistical, run_experiment, ExperimentParams, EXPERIMENTS};
use alcove::lie::GroupModel;

fn main() -> alcove::Result<()> {
    let model = GroupModel::su2();
    let quick = ExperimentParams {
        n: Some(2_000),
        ds: Some(2e-3),
        seeds: Some(1),
        ..Default::default()
    };
    for name in EXPERIMENTS {
        let params = if is_statistical(name) && name != "gauge-invariance" { quick.clone() } else { ExperimentParams::default() };
        let report = run_experiment(name, &model, &params, 1)?.report;
        println!(
            "{name:<18} {:<5} statistic {:.3e} / threshold {:.3e}",
            if report.passed { "PASS" } else { "FAIL" },
            report.statistic,
            report.threshold
        );
        for c in &report.checks {
            println!("    {}: {:.3e} vs {:.3e}", c.label, c.statistic, c.threshold);
        }
    }
    Ok(())
}
