//! Brownian sheets on the Lie algebra, stored as cell increments.

use std::io::Write;

use rand_distr::{Distribution, StandardNormal};

use super::rng::stream_rng;
use crate::error::{invalid, Result};
use crate::lie::GroupModel;

/// A Brownian sheet `{x_{s,t}}` on `[0,1] × [0, t_max]` sampled on a
/// rectangular grid. Cell `(i, j)` holds `x` integrated over
/// `[j ds, (j+1) ds] × [i dt, (i+1) dt]`, one Gaussian per orthonormal
/// algebra coordinate with variance `ds·dt`.
#[derive(Clone, Debug, PartialEq)]
pub struct SheetGrid {
    pub ds: f64,
    pub dt: f64,
    pub s_steps: usize,
    pub t_steps: usize,
    pub algebra_dim: usize,
    /// Row-major `[t][s][coordinate]`.
    pub increments: Vec<f64>,
    pub seed: u64,
    pub stream_id: u64,
}

/// Number of grid steps covering `length`, rejecting lengths that are not
/// a whole number of steps.
pub(crate) fn steps(length: f64, step: f64, what: &str) -> Result<usize> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(invalid(format!("{what} step must be positive, got {step}")));
    }
    let n = (length / step).round();
    if n < 1.0 || ((n * step - length).abs() > 1e-9 * length.max(1.0)) {
        return Err(invalid(format!("{what} range {length} is not a multiple of the step {step}")));
    }
    Ok(n as usize)
}

/// Samples a sheet with `1/ds` columns and `t_max/dt` rows. Row `i` is drawn
/// from block `i` of stream `stream_id`, so a sheet with more rows extends
/// one with fewer.
pub fn sample_sheet(model: &GroupModel, ds: f64, dt: f64, t_max: f64, seed: u64, stream_id: u64) -> Result<SheetGrid> {
    let s_steps = steps(1.0, ds, "s")?;
    let t_steps = steps(t_max, dt, "t")?;
    let dim = model.algebra_dim();
    let sd = (ds * dt).sqrt();
    let mut increments = Vec::with_capacity(t_steps * s_steps * dim);
    for row in 0..t_steps {
        let mut rng = stream_rng(seed, stream_id, row as u64);
        for _ in 0..s_steps * dim {
            let z: f64 = StandardNormal.sample(&mut rng);
            increments.push(sd * z);
        }
    }
    Ok(SheetGrid {
        ds,
        dt,
        s_steps,
        t_steps,
        algebra_dim: dim,
        increments,
        seed,
        stream_id,
    })
}

impl SheetGrid {
    fn row_len(&self) -> usize {
        self.s_steps * self.algebra_dim
    }

    /// Grid index of level `t`, if `t` is a grid level within range.
    pub fn level_index(&self, t: f64) -> Result<usize> {
        let k = (t / self.dt).round();
        if k < 0.0 || k as usize > self.t_steps || (k * self.dt - t).abs() > 1e-9 * t.max(1.0) {
            return Err(invalid(format!(
                "level {t} is not on the grid (dt = {}, {} rows)",
                self.dt, self.t_steps
            )));
        }
        Ok(k as usize)
    }

    /// Increments in `s` of the path `x_{·,t}` at grid level `t`, flattened
    /// as `[s][coordinate]`.
    pub fn path_increments(&self, t: f64) -> Result<Vec<f64>> {
        let rows = self.level_index(t)?;
        let len = self.row_len();
        let mut out = vec![0.0; len];
        for row in self.increments.chunks_exact(len).take(rows) {
            for (o, v) in out.iter_mut().zip(row) {
                *o += v;
            }
        }
        Ok(out)
    }

    /// `x_{s,t}` at grid indices `(j, i)`, i.e. `s = j ds`, `t = i dt`.
    pub fn value(&self, s_index: usize, t_index: usize) -> Vec<f64> {
        let dim = self.algebra_dim;
        let len = self.row_len();
        let mut out = vec![0.0; dim];
        for row in self.increments.chunks_exact(len).take(t_index) {
            for cell in row.chunks_exact(dim).take(s_index) {
                for (o, v) in out.iter_mut().zip(cell) {
                    *o += v;
                }
            }
        }
        out
    }

    /// Writes `x_{s,t}` at every grid node with `s > 0`, `t > 0` as CSV
    /// rows `replica,s,t,coord_0,...`. With `header` the column names are
    /// written first.
    pub fn write_csv<W: Write>(&self, out: &mut W, replica: usize, header: bool) -> Result<()> {
        let dim = self.algebra_dim;
        if header {
            write!(out, "replica,s,t")?;
            for k in 0..dim {
                write!(out, ",coord_{k}")?;
            }
            writeln!(out)?;
        }
        let len = self.row_len();
        let mut column = vec![0.0; len];
        for (i, row) in self.increments.chunks_exact(len).enumerate() {
            for (c, v) in column.iter_mut().zip(row) {
                *c += v;
            }
            let mut acc = vec![0.0; dim];
            for (j, cell) in column.chunks_exact(dim).enumerate() {
                for (a, v) in acc.iter_mut().zip(cell) {
                    *a += v;
                }
                write!(out, "{replica},{},{}", (j + 1) as f64 * self.ds, (i + 1) as f64 * self.dt)?;
                for a in &acc {
                    write!(out, ",{a}")?;
                }
                writeln!(out)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_and_boundary_values() {
        let m = GroupModel::su2();
        let g = sample_sheet(&m, 0.1, 0.25, 1.0, 3, 0).unwrap();
        assert_eq!((g.s_steps, g.t_steps, g.algebra_dim), (10, 4, 3));
        assert_eq!(g.increments.len(), 120);
        assert_eq!(g.value(0, 4), vec![0.0; 3]);
        assert_eq!(g.value(7, 0), vec![0.0; 3]);
        let path = g.path_increments(1.0).unwrap();
        let total: Vec<f64> = (0..3).map(|k| path.iter().skip(k).step_by(3).sum()).collect();
        let direct = g.value(10, 4);
        for k in 0..3 {
            assert!((total[k] - direct[k]).abs() < 1e-12);
        }
        assert!(g.path_increments(0.3).is_err());
        assert!(sample_sheet(&m, 0.3, 0.1, 1.0, 0, 0).is_err());
    }

    #[test]
    fn rows_are_prefix_stable_and_deterministic() {
        let m = GroupModel::su3();
        let short = sample_sheet(&m, 0.05, 0.5, 1.0, 11, 4).unwrap();
        let long = sample_sheet(&m, 0.05, 0.5, 2.0, 11, 4).unwrap();
        assert_eq!(short.increments[..], long.increments[..short.increments.len()]);
        assert_eq!(short, sample_sheet(&m, 0.05, 0.5, 1.0, 11, 4).unwrap());
        assert_ne!(short.increments, sample_sheet(&m, 0.05, 0.5, 1.0, 11, 5).unwrap().increments);
    }

    #[test]
    fn csv_dump_layout() {
        let m = GroupModel::su2();
        let g = sample_sheet(&m, 0.5, 1.0, 1.0, 1, 0).unwrap();
        let mut buf = Vec::new();
        g.write_csv(&mut buf, 7, true).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "replica,s,t,coord_0,coord_1,coord_2");
        assert_eq!(lines.len(), 3);
        assert!(lines[2].starts_with("7,1,1,"));
        let last: f64 = lines[2].split(',').nth(3).unwrap().parse().unwrap();
        assert!((last - g.value(2, 1)[0]).abs() < 1e-15);
    }
}
