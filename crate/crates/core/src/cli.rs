//! Command-line front end.
//!
//! `alcove run` reads an optional TOML [`RunConfig`], applies flag
//! overrides, validates every requested experiment, then runs them in
//! order and writes `report_<name>.json` (plus optional sample and density
//! dumps) to the output directory.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::harness::{
    run_experiment, validate_params, write_density_csv, write_samples_csv, ExperimentParams, ExperimentReport,
    EXPERIMENTS,
};
use crate::lie::GroupModel;

/// Exit code when every experiment passed.
pub const EXIT_PASS: i32 = 0;
/// Exit code when at least one experiment failed or aborted.
pub const EXIT_FAIL: i32 = 1;
/// Exit code for bad flags, unreadable configuration or unusable output
/// directories.
pub const EXIT_CONFIG: i32 = 2;

/// A complete run description, as read from TOML.
///
/// ```toml
/// model = "su2"
/// experiments = ["lemma1", "statement1"]
/// seed = 7
/// out = "results"
///
/// [params]
/// gamma = [0.4]
/// n = 30000
/// ```
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// `su2` or `su3`.
    pub model: String,
    /// Experiment names; empty means all of them.
    pub experiments: Vec<String>,
    pub seed: u64,
    /// Worker threads; `None` leaves the choice to rayon.
    pub threads: Option<usize>,
    pub out: PathBuf,
    /// Also write `samples_<name>.csv` and `density_<name>.csv`.
    pub dump_samples: bool,
    pub params: ExperimentParams,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            model: "su2".into(),
            experiments: Vec::new(),
            seed: 1,
            threads: None,
            out: PathBuf::from("alcove-out"),
            dump_samples: false,
            params: ExperimentParams::default(),
        }
    }
}

impl RunConfig {
    /// Reads a TOML file.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    /// Parses the model name.
    pub fn group_model(&self) -> Result<GroupModel> {
        match self.model.to_ascii_lowercase().as_str() {
            "su2" => Ok(GroupModel::su2()),
            "su3" => Ok(GroupModel::su3()),
            other => Err(Error::Config(format!("unknown model {other:?}, expected su2 or su3"))),
        }
    }

    /// The experiments to run, in order.
    pub fn experiment_names(&self) -> Vec<String> {
        if self.experiments.is_empty() {
            EXPERIMENTS.iter().map(|s| s.to_string()).collect()
        } else {
            self.experiments.clone()
        }
    }

    /// Checks every experiment's preconditions.
    pub fn validate(&self) -> Result<()> {
        let model = self.group_model()?;
        if self.threads == Some(0) {
            return Err(Error::Config("threads must be positive".into()));
        }
        for name in self.experiment_names() {
            validate_params(&name, &model, &self.params)?;
        }
        Ok(())
    }
}

#[derive(Parser, Debug)]
#[command(name = "alcove", version, about = "Brownian sheets on compact Lie groups and their radial parts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run experiments and write JSON reports.
    Run(RunArgs),
    /// List experiment names.
    List,
}

#[derive(Args, Debug, Default)]
struct RunArgs {
    /// TOML run configuration; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// su2 or su3.
    #[arg(long)]
    model: Option<String>,
    /// Experiment name; repeat for several. Defaults to all.
    #[arg(long = "experiment")]
    experiments: Vec<String>,
    /// Drift as comma-separated simple-root values, e.g. 0.3,0.3.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    gamma: Option<Vec<f64>>,
    /// Samples per seed.
    #[arg(long)]
    n: Option<usize>,
    /// Step of the s-grid.
    #[arg(long)]
    ds: Option<f64>,
    /// Main time or level.
    #[arg(long)]
    t: Option<f64>,
    /// Seeds per statistical check.
    #[arg(long)]
    seeds: Option<usize>,
    /// Threshold or allowance override.
    #[arg(long)]
    tolerance: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads (also ALCOVE_THREADS).
    #[arg(long, env = "ALCOVE_THREADS")]
    threads: Option<usize>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write samples_<name>.csv and density_<name>.csv.
    #[arg(long)]
    dump_samples: bool,
}

impl RunArgs {
    fn resolve(self) -> Result<RunConfig> {
        let mut cfg = match &self.config {
            Some(path) => RunConfig::from_file(path)?,
            None => RunConfig::default(),
        };
        if let Some(m) = self.model {
            cfg.model = m;
        }
        if !self.experiments.is_empty() {
            cfg.experiments = self.experiments;
        }
        let p = &mut cfg.params;
        p.gamma = self.gamma.or(p.gamma.take());
        p.n = self.n.or(p.n);
        p.ds = self.ds.or(p.ds);
        p.t = self.t.or(p.t);
        p.seeds = self.seeds.or(p.seeds);
        p.tolerance = self.tolerance.or(p.tolerance);
        cfg.seed = self.seed.unwrap_or(cfg.seed);
        cfg.threads = self.threads.or(cfg.threads);
        cfg.out = self.out.unwrap_or(cfg.out);
        cfg.dump_samples |= self.dump_samples;
        Ok(cfg)
    }
}

/// Parses `argv` (including the program name), runs, and returns the
/// process exit code. Diagnostics go to stderr, the summary to stdout.
pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_PASS };
        }
    };
    match cli.command {
        Command::List => {
            for name in EXPERIMENTS {
                println!("{name}");
            }
            EXIT_PASS
        }
        Command::Run(args) => {
            let cfg = match args.resolve().and_then(|cfg| cfg.validate().map(|_| cfg)) {
                Ok(cfg) => cfg,
                Err(e) => {
                    eprintln!("alcove: {e}");
                    return EXIT_CONFIG;
                }
            };
            let mut stdout = std::io::stdout().lock();
            match execute(&cfg, &mut stdout) {
                Ok(reports) if reports.iter().all(|r| r.passed) => EXIT_PASS,
                Ok(_) => EXIT_FAIL,
                Err(e @ (Error::Config(_) | Error::Io(_))) => {
                    eprintln!("alcove: {e}");
                    EXIT_CONFIG
                }
                Err(e) => {
                    eprintln!("alcove: {e}");
                    EXIT_FAIL
                }
            }
        }
    }
}

/// Runs a validated configuration, writing reports to `cfg.out` and a
/// summary table to `summary`.
pub fn execute<W: Write>(cfg: &RunConfig, summary: &mut W) -> Result<Vec<ExperimentReport>> {
    let model = cfg.group_model()?;
    fs::create_dir_all(&cfg.out)
        .map_err(|e| Error::Config(format!("cannot create output directory {}: {e}", cfg.out.display())))?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(k) = cfg.threads {
        builder = builder.num_threads(k);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;

    writeln!(summary, "{:<18} {:>6} {:>12} {:>12} {:>8} {:>9}", "experiment", "model", "statistic", "threshold", "result", "seconds")?;
    let mut reports = Vec::new();
    for name in cfg.experiment_names() {
        let outcome = match pool.install(|| run_experiment(&name, &model, &cfg.params, cfg.seed)) {
            Ok(o) => o,
            Err(e) => {
                writeln!(summary, "{name:<18} {:>6} {:>12} {:>12} {:>8} {:>9}", model.name(), "-", "-", "ERROR", "-")?;
                eprintln!("alcove: {name}: {e}");
                reports.push(ExperimentReport::aborted(&name, model.name(), cfg.seed, e.to_string()));
                continue;
            }
        };
        let r = &outcome.report;
        writeln!(
            summary,
            "{:<18} {:>6} {:>12.4e} {:>12.4e} {:>8} {:>9.2}",
            r.name,
            r.model,
            r.statistic,
            r.threshold,
            if r.passed { "PASS" } else { "FAIL" },
            r.wall_time
        )?;
        write_file(&cfg.out.join(format!("report_{name}.json")), |w| {
            w.write_all(r.to_json()?.as_bytes())?;
            Ok(writeln!(w)?)
        })?;
        if cfg.dump_samples && !outcome.samples.is_empty() {
            write_file(&cfg.out.join(format!("samples_{name}.csv")), |w| write_samples_csv(w, &outcome.samples))?;
        }
        if cfg.dump_samples && !outcome.density.is_empty() {
            write_file(&cfg.out.join(format!("density_{name}.csv")), |w| write_density_csv(w, &outcome.density))?;
        }
        reports.push(outcome.report);
    }
    let passed = reports.iter().filter(|r| r.passed).count();
    writeln!(summary, "{passed}/{} experiments passed", reports.len())?;
    Ok(reports)
}

fn write_file(path: &Path, body: impl FnOnce(&mut BufWriter<File>) -> Result<()>) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::Config(format!("cannot write {}: {e}", path.display())))?;
    let mut w = BufWriter::new(file);
    body(&mut w)?;
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file_values() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.toml");
        fs::write(&path, "model = \"su3\"\nseed = 3\n[params]\nn = 500\ngamma = [0.2, 0.2]\n").unwrap();
        let args = RunArgs {
            config: Some(path),
            seed: Some(9),
            gamma: Some(vec![0.1, 0.1]),
            ..Default::default()
        };
        let cfg = args.resolve().unwrap();
        assert_eq!(cfg.model, "su3");
        assert_eq!(cfg.seed, 9);
        assert_eq!(cfg.params.n, Some(500));
        assert_eq!(cfg.params.gamma, Some(vec![0.1, 0.1]));
        cfg.validate().unwrap();
    }

    #[test]
    fn validation_catches_bad_input() {
        let mut cfg = RunConfig {
            experiments: vec!["lemma1".into()],
            ..Default::default()
        };
        cfg.validate().unwrap();
        cfg.model = "so5".into();
        assert!(matches!(cfg.validate(), Err(Error::Config(_))));
        cfg.model = "su2".into();
        cfg.params.gamma = Some(vec![0.2, 0.2]);
        assert!(cfg.validate().is_err());
        cfg.params.gamma = None;
        cfg.experiments.push("nosuch".into());
        assert!(matches!(cfg.validate(), Err(Error::UnknownExperiment(_))));
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(toml::from_str::<RunConfig>("modle = \"su2\"").is_err());
        let cfg: RunConfig = toml::from_str("[params.kernel]\nlattice_radius = 7.0").unwrap();
        assert_eq!(cfg.params.kernel.lattice_radius, 7.0);
    }
}
