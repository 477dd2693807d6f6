//! Driving a run from a TOML configuration, as `alcove run --config` does.

use alcove::cli::{execute, RunConfig};

const CONFIG: &str = r#"
model = "su3"
experiments = ["poisson-identity", "qdoob-stochastic", "psi2-ratio"]
seed = 7
dump_samples = false

[params]
gamma = [0.3, 0.3]
"#;

fn main() -> alcove::Result<()> {
    let mut cfg: RunConfig = toml::from_str(CONFIG).map_err(|e| alcove::Error::Config(e.to_string()))?;
    cfg.out = std::env::temp_dir().join("alcove-example");
    cfg.validate()?;
    let reports = execute(&cfg, &mut std::io::stdout())?;
    println!("reports in {}", cfg.out.display());
    assert!(reports.iter().all(|r| r.passed));
    Ok(())
}
