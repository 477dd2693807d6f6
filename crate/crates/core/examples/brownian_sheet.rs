//! Brownian sheets on the Lie algebra.
//!
//! Samples many coarse sheets and compares the empirical covariance of
//! two grid values with `min(s, s') min(t, t')`.

use alcove::lie::GroupModel;
use alcove::sampler::sample_sheet;

fn main() -> alcove::Result<()> {
    let model = GroupModel::su3();
    let n = 20_000;
    let (p, q) = ((2, 4), (3, 1));
    let (mut pp, mut pq) = (0.0, 0.0);
    for replica in 0..n {
        let grid = sample_sheet(&model, 0.25, 0.25, 1.0, 42, replica)?;
        let a = grid.value(p.0, p.1)[0];
        let b = grid.value(q.0, q.1)[0];
        pp += a * a;
        pq += a * b;
    }
    let cov = |x: (usize, usize), y: (usize, usize)| 0.25 * x.0.min(y.0) as f64 * 0.25 * x.1.min(y.1) as f64;
    println!("Var W(0.5, 1)            = {:.4} (expected {:.4})", pp / n as f64, cov(p, p));
    println!("Cov W(0.5, 1), W(0.75, 0.25) = {:.4} (expected {:.4})", pq / n as f64, cov(p, q));

    let grid = sample_sheet(&model, 0.25, 0.25, 0.5, 42, 0)?;
    let mut csv = Vec::new();
    grid.write_csv(&mut csv, 0, true)?;
    print!("{}", String::from_utf8_lossy(&csv).lines().take(3).collect::<Vec<_>>().join("\n"));
    println!();
    Ok(())
}
