//! Goodness-of-fit statistics.

use gauss_quad::GaussLegendre;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::{invalid, Error, Result};
use crate::lie::{CartanVector, GroupModel};

/// Asymptotic 1% critical value of the one-sample Kolmogorov–Smirnov
/// statistic.
pub fn ks_critical_1pct(n: usize) -> f64 {
    1.63 / (n as f64).sqrt()
}

/// Kolmogorov–Smirnov statistic with its 1% critical value.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KsOutcome {
    pub d: f64,
    pub critical_at_1pct: f64,
}

/// `sup |F_n − F|` for sorted `samples` against the CDF `cdf`.
pub fn ks_statistic<F: Fn(f64) -> f64>(samples: &[f64], cdf: F) -> Result<KsOutcome> {
    if samples.is_empty() {
        return Err(Error::InsufficientSamples("KS statistic of an empty sample".into()));
    }
    if samples.windows(2).any(|w| !(w[0] <= w[1])) {
        return Err(invalid("KS samples must be sorted and free of NaN"));
    }
    let n = samples.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in samples.iter().enumerate() {
        let f = cdf(x);
        d = d.max(f - i as f64 / n).max((i + 1) as f64 / n - f);
    }
    Ok(KsOutcome {
        d,
        critical_at_1pct: ks_critical_1pct(samples.len()),
    })
}

/// CDF of a density on an interval, tabulated by Gauss–Legendre panels and
/// interpolated with cubic Hermite segments (the density supplies the
/// slopes). The table is normalized to total mass one.
#[derive(Clone, Debug)]
pub struct TabulatedCdf {
    lo: f64,
    width: f64,
    knots: Vec<f64>,
    slopes: Vec<f64>,
    mass: f64,
}

impl TabulatedCdf {
    pub fn new<F: Fn(f64) -> f64>(lo: f64, hi: f64, panels: usize, density: F) -> Result<Self> {
        if !(hi > lo) || panels == 0 {
            return Err(invalid(format!("CDF table needs lo < hi and panels > 0, got [{lo}, {hi}], {panels}")));
        }
        let rule = GaussLegendre::new(10).map_err(|e| invalid(format!("quadrature: {e}")))?;
        let nodes = rule.into_node_weight_pairs();
        let width = (hi - lo) / panels as f64;
        let mut knots = Vec::with_capacity(panels + 1);
        let mut slopes = Vec::with_capacity(panels + 1);
        let mut acc = 0.0;
        knots.push(0.0);
        slopes.push(density(lo));
        for p in 0..panels {
            let a = lo + p as f64 * width;
            let mid = a + 0.5 * width;
            acc += nodes.iter().map(|&(x, w)| w * density(mid + 0.5 * width * x)).sum::<f64>() * 0.5 * width;
            knots.push(acc);
            slopes.push(density(a + width));
        }
        if !(acc > 0.0) || !acc.is_finite() {
            return Err(invalid(format!("density has total mass {acc}")));
        }
        for v in knots.iter_mut() {
            *v /= acc;
        }
        for v in slopes.iter_mut() {
            *v /= acc;
        }
        Ok(Self {
            lo,
            width,
            knots,
            slopes,
            mass: acc,
        })
    }

    /// Mass of the density before normalization.
    pub fn raw_mass(&self) -> f64 {
        self.mass
    }

    pub fn cdf(&self, x: f64) -> f64 {
        let panels = self.knots.len() - 1;
        let u = (x - self.lo) / self.width;
        if u <= 0.0 {
            return 0.0;
        }
        if u >= panels as f64 {
            return 1.0;
        }
        let i = (u.floor() as usize).min(panels - 1);
        let s = u - i as f64;
        let (y0, y1) = (self.knots[i], self.knots[i + 1]);
        let (m0, m1) = (self.slopes[i] * self.width, self.slopes[i + 1] * self.width);
        let s2 = s * s;
        let s3 = s2 * s;
        (2.0 * s3 - 3.0 * s2 + 1.0) * y0 + (s3 - 2.0 * s2 + s) * m0 + (-2.0 * s3 + 3.0 * s2) * y1 + (s3 - s2) * m1
    }
}

/// A planar region binned on a `bins × bins` grid of unit-square
/// coordinates `(u, v)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Region2d {
    /// `[x0, x1] × [y0, y1]` with `u, v` the affine coordinates.
    Box { x: (f64, f64), y: (f64, f64) },
    /// Triangle with a vertex at the origin and edges `v1`, `v2`, in the
    /// collapsed coordinates `P = u((1 − v) v1 + v v2)`.
    Triangle { v1: [f64; 2], v2: [f64; 2] },
}

impl Region2d {
    /// The alcove `A_level` of a rank-2 model.
    pub fn alcove(model: &GroupModel, level: f64) -> Result<Self> {
        if model.rank() != 2 {
            return Err(invalid("a planar alcove needs a rank-2 model"));
        }
        let v = model.alcove_vertices();
        Ok(Region2d::Triangle {
            v1: [v[1][0] * level, v[1][1] * level],
            v2: [v[2][0] * level, v[2][1] * level],
        })
    }

    fn to_point(&self, u: f64, v: f64) -> ([f64; 2], f64) {
        match *self {
            Region2d::Box { x, y } => (
                [x.0 + u * (x.1 - x.0), y.0 + v * (y.1 - y.0)],
                (x.1 - x.0) * (y.1 - y.0),
            ),
            Region2d::Triangle { v1, v2 } => {
                let det = (v1[0] * v2[1] - v1[1] * v2[0]).abs();
                let p = [
                    u * ((1.0 - v) * v1[0] + v * v2[0]),
                    u * ((1.0 - v) * v1[1] + v * v2[1]),
                ];
                (p, u * det)
            }
        }
    }

    /// Unit-square coordinates of `p`, or `None` outside the region.
    fn to_unit(&self, p: [f64; 2]) -> Option<(f64, f64)> {
        let (u, v) = match *self {
            Region2d::Box { x, y } => ((p[0] - x.0) / (x.1 - x.0), (p[1] - y.0) / (y.1 - y.0)),
            Region2d::Triangle { v1, v2 } => {
                // p = a v1 + b v2 with u = a + b, v = b / u.
                let det = v1[0] * v2[1] - v1[1] * v2[0];
                let a = (p[0] * v2[1] - p[1] * v2[0]) / det;
                let b = (v1[0] * p[1] - v1[1] * p[0]) / det;
                let u = a + b;
                (u, if u > 0.0 { b / u } else { 0.0 })
            }
        };
        let eps = 1e-12;
        if (-eps..=1.0 + eps).contains(&u) && (-eps..=1.0 + eps).contains(&v) {
            Some((u.clamp(0.0, 1.0), v.clamp(0.0, 1.0)))
        } else {
            None
        }
    }
}

/// Pearson χ² outcome.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChiSquareOutcome {
    pub statistic: f64,
    pub dof: usize,
    pub critical_at_1pct: f64,
    pub pass_at_1pct: bool,
}

/// Minimum expected count per merged cell.
const MIN_EXPECTED: f64 = 5.0;

/// Pearson χ² test of planar samples against `density` on `region`.
///
/// Bin probabilities are integrated with an 8-point rule per direction and
/// renormalized to sum to one. Cells are visited in serpentine order and
/// merged with their successors until each group expects at least 5
/// samples; a short final group joins the previous one.
pub fn chi_square_2d<F: Fn(&[f64; 2]) -> f64>(
    samples: &[[f64; 2]],
    density: F,
    region: &Region2d,
    bins: usize,
) -> Result<ChiSquareOutcome> {
    if bins == 0 {
        return Err(invalid("χ² needs at least one bin"));
    }
    let n = samples.len();
    let rule = GaussLegendre::new(8).map_err(|e| invalid(format!("quadrature: {e}")))?;
    let nodes: Vec<(f64, f64)> = rule
        .into_node_weight_pairs()
        .into_iter()
        .map(|(x, w)| (0.5 * (x + 1.0), 0.5 * w))
        .collect();
    let h = 1.0 / bins as f64;
    let mut prob = vec![0.0; bins * bins];
    for i in 0..bins {
        for j in 0..bins {
            let mut acc = 0.0;
            for &(a, wa) in &nodes {
                for &(b, wb) in &nodes {
                    let (p, jac) = region.to_point((i as f64 + a) * h, (j as f64 + b) * h);
                    acc += wa * wb * jac * density(&p);
                }
            }
            prob[i * bins + j] = acc * h * h;
        }
    }
    let total: f64 = prob.iter().sum();
    if !(total > 0.0) {
        return Err(invalid("density has no mass on the region"));
    }
    let mut observed = vec![0usize; bins * bins];
    for p in samples {
        let (u, v) = region
            .to_unit(*p)
            .ok_or_else(|| invalid(format!("sample {p:?} lies outside the region")))?;
        let i = ((u * bins as f64) as usize).min(bins - 1);
        let j = ((v * bins as f64) as usize).min(bins - 1);
        observed[i * bins + j] += 1;
    }
    let order = (0..bins).flat_map(|i| {
        let row: Vec<usize> = if i % 2 == 0 { (0..bins).collect() } else { (0..bins).rev().collect() };
        row.into_iter().map(move |j| i * bins + j)
    });
    let mut groups: Vec<(f64, usize)> = Vec::new();
    let mut cur = (0.0, 0usize);
    for c in order {
        cur.0 += n as f64 * prob[c] / total;
        cur.1 += observed[c];
        if cur.0 >= MIN_EXPECTED {
            groups.push(cur);
            cur = (0.0, 0);
        }
    }
    if cur.0 > 0.0 || cur.1 > 0 {
        match groups.last_mut() {
            Some(last) => {
                last.0 += cur.0;
                last.1 += cur.1;
            }
            None => groups.push(cur),
        }
    }
    if groups.len() < 2 {
        return Err(Error::InsufficientSamples(format!(
            "{n} samples give {} cell(s) with expected count ≥ {MIN_EXPECTED}",
            groups.len()
        )));
    }
    let statistic = groups.iter().map(|&(e, o)| (o as f64 - e).powi(2) / e).sum();
    let dof = groups.len() - 1;
    let critical = ChiSquared::new(dof as f64)
        .map_err(|e| invalid(format!("χ² distribution: {e}")))?
        .inverse_cdf(0.99);
    Ok(ChiSquareOutcome {
        statistic,
        dof,
        critical_at_1pct: critical,
        pass_at_1pct: statistic <= critical,
    })
}

/// Outcome of one goodness-of-fit test on alcove samples.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitOutcome {
    pub statistic: f64,
    pub threshold: f64,
}

impl FitOutcome {
    pub fn passed(&self) -> bool {
        self.statistic <= self.threshold
    }
}

/// Tests samples in `A_level` against `density`: Kolmogorov–Smirnov in
/// rank 1, with `allowance` added to the critical value, and χ² on a
/// `bins × bins` grid in rank 2.
pub fn alcove_fit<F: Fn(&CartanVector) -> f64>(
    model: &GroupModel,
    level: f64,
    samples: &[CartanVector],
    density: F,
    allowance: f64,
    bins: usize,
) -> Result<FitOutcome> {
    match model.rank() {
        1 => {
            let hi = model.alcove_vertices()[1][0] * level;
            let table = TabulatedCdf::new(0.0, hi, 400, |x| density(&CartanVector::new(&[x])))?;
            let mut xs: Vec<f64> = samples.iter().map(|p| p[0]).collect();
            xs.sort_by(f64::total_cmp);
            let ks = ks_statistic(&xs, |x| table.cdf(x))?;
            Ok(FitOutcome {
                statistic: ks.d,
                threshold: ks.critical_at_1pct + allowance,
            })
        }
        _ => {
            let pts: Vec<[f64; 2]> = samples.iter().map(|p| [p[0], p[1]]).collect();
            let region = Region2d::alcove(model, level)?;
            let chi = chi_square_2d(&pts, |p| density(&CartanVector::new(p)), &region, bins)?;
            Ok(FitOutcome {
                statistic: chi.statistic,
                threshold: chi.critical_at_1pct,
            })
        }
    }
}

/// Sample Pearson correlation.
pub fn correlation(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len().min(b.len()) as f64;
    let ma = a.iter().sum::<f64>() / n;
    let mb = b.iter().sum::<f64>() / n;
    let (mut sab, mut saa, mut sbb) = (0.0, 0.0, 0.0);
    for (x, y) in a.iter().zip(b) {
        sab += (x - ma) * (y - mb);
        saa += (x - ma).powi(2);
        sbb += (y - mb).powi(2);
    }
    sab / (saa * sbb).sqrt()
}

/// Median of a non-empty list.
pub fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let k = v.len();
    if k % 2 == 1 {
        v[k / 2]
    } else {
        0.5 * (v[k / 2 - 1] + v[k / 2])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use crate::sampler::stream_rng;

    #[test]
    fn ks_single_point() {
        let r = ks_statistic(&[0.5], |x| x).unwrap();
        assert!((r.d - 0.5).abs() < 1e-15);
        assert!(ks_statistic(&[0.3, 0.1], |x| x).is_err());
        assert!(ks_statistic(&[], |x| x).is_err());
    }

    #[test]
    fn ks_uniform_and_shifted() {
        let mut rng = stream_rng(5, 0, 0);
        let mut xs: Vec<f64> = (0..10_000).map(|_| rng.gen()).collect();
        xs.sort_by(f64::total_cmp);
        let r = ks_statistic(&xs, |x| x.clamp(0.0, 1.0)).unwrap();
        assert!(r.d < r.critical_at_1pct);
        let shifted = ks_statistic(&xs[..1000], |x| (x - 0.1).clamp(0.0, 1.0)).unwrap();
        assert!(shifted.d >= 0.09);
    }

    #[test]
    fn tabulated_cdf_is_accurate() {
        let t = TabulatedCdf::new(0.0, std::f64::consts::PI, 200, |x| x.sin()).unwrap();
        assert!((t.raw_mass() - 2.0).abs() < 1e-13);
        for x in [0.0, 0.3, 1.0, 2.2, 3.0, std::f64::consts::PI] {
            assert!((t.cdf(x) - (1.0 - x.cos()) / 2.0).abs() < 1e-10);
        }
        assert_eq!(t.cdf(-1.0), 0.0);
        assert_eq!(t.cdf(5.0), 1.0);
    }

    #[test]
    fn chi_square_self_test_and_power() {
        let region = Region2d::Box { x: (0.0, 1.0), y: (0.0, 2.0) };
        let mut rng = stream_rng(9, 0, 0);
        let peaked = |p: &[f64; 2]| (-20.0 * ((p[0] - 0.5).powi(2) + (p[1] - 1.0).powi(2))).exp();
        // Rejection samples from the peaked density pass.
        let mut own = Vec::new();
        while own.len() < 20_000 {
            let p = [rng.gen::<f64>(), 2.0 * rng.gen::<f64>()];
            if rng.gen::<f64>() < peaked(&p) {
                own.push(p);
            }
        }
        assert!(chi_square_2d(&own, peaked, &region, 10).unwrap().pass_at_1pct);
        // Uniform samples fail against it.
        let uniform: Vec<[f64; 2]> = (0..20_000).map(|_| [rng.gen::<f64>(), 2.0 * rng.gen::<f64>()]).collect();
        assert!(!chi_square_2d(&uniform, peaked, &region, 10).unwrap().pass_at_1pct);
        // Against the constant density the statistic is near its dof.
        let mut stats = Vec::new();
        for s in 0..40 {
            let mut r = stream_rng(s, 1, 0);
            let u: Vec<[f64; 2]> = (0..5_000).map(|_| [r.gen::<f64>(), 2.0 * r.gen::<f64>()]).collect();
            let out = chi_square_2d(&u, |_| 1.0, &region, 8).unwrap();
            assert_eq!(out.dof, 63);
            stats.push(out.statistic);
        }
        let mean = stats.iter().sum::<f64>() / stats.len() as f64;
        assert!((mean - 63.0).abs() < 4.0 * (2.0f64 * 63.0 / 40.0).sqrt(), "{mean}");
    }

    #[test]
    fn chi_square_merges_sparse_cells_and_rejects_outliers() {
        let region = Region2d::Box { x: (0.0, 1.0), y: (0.0, 1.0) };
        let pts = vec![[0.5, 0.5]; 30];
        let out = chi_square_2d(&pts, |_| 1.0, &region, 10).unwrap();
        assert_eq!(out.dof, 4);
        assert!(chi_square_2d(&pts[..4], |_| 1.0, &region, 10).is_err());
        assert!(chi_square_2d(&[[2.0, 0.5]; 30], |_| 1.0, &region, 4).is_err());
    }

    #[test]
    fn triangle_coordinates_round_trip() {
        let m = GroupModel::su3();
        let region = Region2d::alcove(&m, 1.5).unwrap();
        for (u, v) in [(0.2, 0.3), (0.9, 0.1), (1.0, 1.0), (0.5, 0.0)] {
            let (p, _) = region.to_point(u, v);
            let (a, b) = region.to_unit(p).unwrap();
            assert!((a - u).abs() < 1e-12 && (b - v).abs() < 1e-12);
            assert!(m.in_alcove(&CartanVector::new(&p), 1.5, 1e-12));
        }
    }

    #[test]
    fn correlation_and_median() {
        let a = [1.0, 2.0, 3.0, 4.0];
        assert!((correlation(&a, &[2.0, 4.0, 6.0, 8.0]) - 1.0).abs() < 1e-15);
        assert!((correlation(&a, &[4.0, 3.0, 2.0, 1.0]) + 1.0).abs() < 1e-15);
        assert_eq!(median(&[3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&[4.0, 1.0, 2.0, 3.0]), 2.5);
    }
}
