//! Experiment reports and their serializations.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::Result;

/// One named comparison inside an experiment.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub label: String,
    pub statistic: f64,
    pub threshold: f64,
    pub passed: bool,
    /// Statistic per seed, for checks repeated over several seeds.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub per_seed: Vec<f64>,
}

impl Check {
    /// A check passing when `statistic ≤ threshold`.
    pub fn at_most(label: impl Into<String>, statistic: f64, threshold: f64) -> Self {
        Self {
            label: label.into(),
            statistic,
            threshold,
            passed: statistic <= threshold,
            per_seed: Vec::new(),
        }
    }

    /// `statistic / threshold`, the quantity aggregated across checks.
    pub fn ratio(&self) -> f64 {
        if self.threshold > 0.0 {
            self.statistic / self.threshold
        } else if self.statistic <= 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    }
}

/// Result of one experiment. Apart from `wall_time` every field is a
/// deterministic function of the experiment name, parameters and seed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub name: String,
    pub model: String,
    /// For a single check its statistic; otherwise the largest
    /// `statistic / threshold` over the checks.
    pub statistic: f64,
    /// For a single check its threshold; otherwise 1.
    pub threshold: f64,
    pub passed: bool,
    pub samples_n: usize,
    pub seed: u64,
    pub config: serde_json::Value,
    pub checks: Vec<Check>,
    /// Seconds.
    pub wall_time: f64,
}

impl ExperimentReport {
    pub(crate) fn from_checks(
        name: &str,
        model: String,
        samples_n: usize,
        seed: u64,
        config: serde_json::Value,
        checks: Vec<Check>,
        wall_time: f64,
    ) -> Self {
        let (statistic, threshold) = match checks.as_slice() {
            [only] => (only.statistic, only.threshold),
            _ => (checks.iter().map(Check::ratio).fold(0.0, f64::max), 1.0),
        };
        let passed = !checks.is_empty() && checks.iter().all(|c| c.passed);
        Self {
            name: name.to_string(),
            model,
            statistic,
            threshold,
            passed,
            samples_n,
            seed,
            config,
            checks,
            wall_time,
        }
    }

    /// A failed report for an experiment that stopped with an error.
    pub(crate) fn aborted(name: &str, model: String, seed: u64, message: String) -> Self {
        let check = Check {
            label: format!("aborted: {message}"),
            statistic: f64::INFINITY,
            threshold: 0.0,
            passed: false,
            per_seed: Vec::new(),
        };
        Self::from_checks(name, model, 0, seed, serde_json::Value::Null, vec![check], 0.0)
    }

    /// Pretty JSON.
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// A simulated point: replica index, `s`, level `t` and coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleRecord {
    pub replica: usize,
    pub s: f64,
    pub t: f64,
    pub coords: Vec<f64>,
}

/// Writes records as CSV with header `replica,s,t,coord_0,...`.
pub fn write_samples_csv<W: Write>(out: &mut W, records: &[SampleRecord]) -> Result<()> {
    let dim = records.first().map_or(0, |r| r.coords.len());
    write!(out, "replica,s,t")?;
    for k in 0..dim {
        write!(out, ",coord_{k}")?;
    }
    writeln!(out)?;
    for r in records {
        write!(out, "{},{},{}", r.replica, r.s, r.t)?;
        for c in &r.coords {
            write!(out, ",{c}")?;
        }
        writeln!(out)?;
    }
    Ok(())
}

/// Writes `(value, density)` pairs as two-column CSV.
pub fn write_density_csv<W: Write>(out: &mut W, pairs: &[(f64, f64)]) -> Result<()> {
    writeln!(out, "value,density")?;
    for (v, d) in pairs {
        writeln!(out, "{v},{d}")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aggregation() {
        let one = ExperimentReport::from_checks("x", "su2".into(), 0, 1, serde_json::Value::Null, vec![Check::at_most("a", 0.5, 1e-8)], 0.0);
        assert!(!one.passed);
        assert_eq!((one.statistic, one.threshold), (0.5, 1e-8));
        let two = ExperimentReport::from_checks(
            "x",
            "su2".into(),
            0,
            1,
            serde_json::Value::Null,
            vec![Check::at_most("a", 1.0, 4.0), Check::at_most("b", 1.0, 2.0)],
            0.0,
        );
        assert!(two.passed);
        assert_eq!((two.statistic, two.threshold), (0.5, 1.0));
        let json = two.to_json().unwrap();
        for key in ["\"name\"", "\"statistic\"", "\"threshold\"", "\"passed\"", "\"samples_n\"", "\"seed\"", "\"config\"", "\"wall_time\""] {
            assert!(json.contains(key));
        }
        let back: ExperimentReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, two);
    }

    #[test]
    fn csv_writers() {
        let mut buf = Vec::new();
        write_samples_csv(&mut buf, &[SampleRecord { replica: 2, s: 1.0, t: 0.5, coords: vec![0.25, 0.5] }]).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "replica,s,t,coord_0,coord_1\n2,1,0.5,0.25,0.5\n");
        let mut buf = Vec::new();
        write_density_csv(&mut buf, &[(0.0, 1.5)]).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "value,density\n0,1.5\n");
    }
}
