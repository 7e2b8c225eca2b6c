use std::sync::Arc;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::heisenberg::{RadialFunction, RadialMesh};
use crate::scalar::Real;

use super::grid::GelfandGrid;
use super::transform::forward_transform;

/// Outcome of fitting Plancherel weights against a probe family.
#[derive(Debug, Clone)]
pub struct Calibration<T> {
    /// Least-squares weights for `m = 0..fitted.len()`.
    pub fitted: Vec<T>,
    /// The grid's weights for the same indices.
    pub reference: Vec<T>,
    pub max_rel_deviation: T,
}

/// Probe family `r^{2k} e^{−β r²} e^{−t²/8} cos(3t)` used for calibration.
pub fn calibration_probes<T: Real>(mesh: &Arc<RadialMesh<T>>) -> Vec<RadialFunction<T>> {
    let mut probes = Vec::new();
    for k in 0..4 {
        for beta in [0.3, 0.5, 0.8] {
            probes.push(RadialFunction::from_fn(mesh, move |r, t| {
                let v = r.powi(2 * k) * (-T::lit(beta) * r * r).exp() * (-t * t / T::lit(8.0)).exp()
                    * (T::lit(3.0) * t).cos();
                Complex::new(v, T::zero())
            }));
        }
    }
    probes
}

/// Least-squares fit of `w_0..=w_{fit_m}` so that Plancherel holds on the probe family.
///
/// Indices above `fit_m` keep the grid's weights. Fails if any fitted weight deviates from the
/// grid's weight by more than `tolerance` (relative).
pub fn calibrate_plancherel_weights<T: Real>(
    grid: &Arc<GelfandGrid<T>>,
    mesh: &Arc<RadialMesh<T>>,
    fit_m: usize,
    tolerance: T,
) -> Result<Calibration<T>> {
    let fit_m = fit_m.min(grid.m_max);
    let k = fit_m + 1;
    let probes = calibration_probes(mesh);
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut rhs: Vec<f64> = Vec::new();
    for f in &probes {
        let spec = forward_transform(f, grid)?;
        let mut per_m = vec![0.0f64; grid.n_m()];
        for l in 0..grid.n_lambda() {
            let base = grid.normalization * grid.lambda_nodes[l].abs().powi(grid.n as i32) * grid.lambda_weights[l];
            for (m, acc) in per_m.iter_mut().enumerate() {
                *acc += (base * spec.at(l, m).norm_sqr()).as_f64();
            }
        }
        let tail: f64 =
            per_m.iter().enumerate().skip(k).map(|(m, a)| a * grid.plancherel_weights[m].as_f64()).sum();
        let target = f.norm_sq().as_f64();
        // Normalize each probe so every equation carries equal weight.
        rows.push(per_m[..k].iter().map(|a| a / target).collect());
        rhs.push((target - tail) / target);
    }
    let fitted = least_squares(&rows, &rhs)?;
    let reference: Vec<T> = grid.plancherel_weights[..k].to_vec();
    let max_rel_deviation = fitted
        .iter()
        .zip(&reference)
        .map(|(f, r)| ((T::lit(*f) - *r) / *r).abs())
        .fold(T::zero(), T::max);
    let out = Calibration { fitted: fitted.into_iter().map(T::lit).collect(), reference, max_rel_deviation };
    if !(out.max_rel_deviation <= tolerance) {
        return Err(Error::Calibration(format!(
            "max relative deviation {:.3e} exceeds {:.3e}",
            out.max_rel_deviation.as_f64(),
            tolerance.as_f64()
        )));
    }
    Ok(out)
}

/// Solves the normal equations of an overdetermined system by Gaussian elimination with pivoting.
fn least_squares(a: &[Vec<f64>], b: &[f64]) -> Result<Vec<f64>> {
    let k = a[0].len();
    let mut m = vec![vec![0.0; k + 1]; k];
    for (row, &rhs) in a.iter().zip(b) {
        for i in 0..k {
            for j in 0..k {
                m[i][j] += row[i] * row[j];
            }
            m[i][k] += row[i] * rhs;
        }
    }
    for col in 0..k {
        let piv = (col..k).max_by(|&x, &y| m[x][col].abs().total_cmp(&m[y][col].abs())).unwrap();
        m.swap(col, piv);
        if m[col][col].abs() < 1e-300 {
            return Err(Error::Calibration("singular probe system".into()));
        }
        for r in 0..k {
            if r != col {
                let f = m[r][col] / m[col][col];
                for c in col..=k {
                    m[r][c] -= f * m[col][c];
                }
            }
        }
    }
    Ok((0..k).map(|i| m[i][k] / m[i][i]).collect())
}
