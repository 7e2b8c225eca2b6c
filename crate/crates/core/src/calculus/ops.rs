use std::sync::Arc;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::gelfand::{panel_nodes, radial_amplitude, synthesize, FineNode, GelfandGrid, SpectralFunction};
use crate::heisenberg::{resample, RadialFunction, RadialMesh};
use crate::scalar::Real;
use crate::special::binomial;

use super::multiplier::Multiplier;

/// Largest Laguerre index summed during kernel synthesis.
const KERNEL_M_LIMIT: usize = 20_000;
/// Relative level below which a multiplier counts as decayed.
const DECAY_LEVEL: f64 = 1e-17;

/// Smoothness order of the graph norm `‖f‖ + ‖Δ^{r/2} f‖`.
#[derive(Debug, Clone, Copy)]
pub struct SobolevParams<T> {
    pub r: T,
}

impl<T: Real> SobolevParams<T> {
    pub fn new(r: T) -> Result<Self> {
        if !(r > T::zero()) {
            return Err(Error::InvalidParameter(format!("Sobolev order must be positive, got {r}")));
        }
        Ok(Self { r })
    }
}

/// `β∘α` sampled on the grid.
pub fn sample_multiplier<T: Real>(beta: &Multiplier<T>, grid: &Arc<GelfandGrid<T>>) -> Result<SpectralFunction<T>> {
    let f = SpectralFunction::from_xi_fn(grid, |xi| beta.eval(xi));
    let nm = grid.n_m();
    if let Some(p) = f.values.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
        return Err(Error::UnboundedMultiplier {
            name: beta.name().to_string(),
            xi: grid.xi(p / nm, p % nm).as_f64(),
            value: f.values[p].norm().as_f64(),
        });
    }
    Ok(f)
}

/// `F(β(Δ)f)(λ, m) = β(|λ|(2m+n)) F(f)(λ, m)`.
pub fn apply_multiplier<T: Real>(beta: &Multiplier<T>, f: &SpectralFunction<T>) -> Result<SpectralFunction<T>> {
    let b = sample_multiplier(beta, &f.grid)?;
    let mut out = f.clone();
    out.values.iter_mut().zip(&b.values).for_each(|(v, w)| *v = *v * w);
    Ok(out)
}

/// Upper edge of the region where `|β|` is not negligible, scanned up to `limit`.
fn decay_edge<T: Real>(beta: &Multiplier<T>, lo: T, limit: T) -> T {
    let samples: Vec<(T, T)> = (0..=2000)
        .map(|k| {
            let start = lo.max(T::lit(1e-8));
            let xi = start * (limit / start).powf(T::from_usize_(k) / T::lit(2000.0));
            (xi, beta.eval(xi).norm())
        })
        .collect();
    let peak = samples.iter().fold(T::zero(), |m, s| m.max(s.1));
    samples
        .iter()
        .rev()
        .find(|s| s.1 > peak * T::lit(DECAY_LEVEL))
        .map(|s| s.0 * T::lit(1.01))
        .unwrap_or(T::zero())
        .min(limit)
}

/// Convolution kernel `B` of `β(Δ)`, synthesized on `mesh`.
///
/// The inversion integral is evaluated from the multiplier itself rather than from its grid
/// samples: every Laguerre index with `ξ` inside the effective support is summed (not only
/// `m ≤ m_max`), and `|λ|` runs from where that sum would exceed the index limit up to the grid's
/// largest magnitude. The result therefore carries the small-`|λ|`, large-`m` content that a
/// grid-only inverse misses.
pub fn kernel_of_multiplier<T: Real>(
    beta: &Multiplier<T>,
    grid: &Arc<GelfandGrid<T>>,
    mesh: &Arc<RadialMesh<T>>,
) -> Result<RadialFunction<T>> {
    if mesh.n != grid.n {
        return Err(Error::GridMismatch(format!("mesh has n = {}, grid has n = {}", mesh.n, grid.n)));
    }
    let sampled = sample_multiplier(beta, grid)?;
    if !sampled.norm().is_finite() {
        return Err(Error::NonIntegrableMultiplier(beta.name().to_string()));
    }
    let n = grid.n;
    let nf = T::from_usize_(n);
    let (lo, hi) = beta.support;
    let xi_top = hi.min(grid.xi_max()).min(decay_edge(beta, lo, grid.xi_max()));
    if !(xi_top > lo) {
        return Ok(RadialFunction::zeros(mesh));
    }
    let lam_top = grid.lambda_max().min(xi_top / nf);
    let lam_floor = xi_top / T::from_usize_(2 * KERNEL_M_LIMIT + n);
    if !(lam_top > lam_floor) {
        return Ok(RadialFunction::zeros(mesh));
    }
    let ratio = T::lit(2.0).powf(T::one() / T::from_usize_(grid.kappa));
    let mut edges = vec![lam_floor];
    while *edges.last().unwrap() * ratio < lam_top {
        let next = *edges.last().unwrap() * ratio;
        edges.push(next);
    }
    edges.push(lam_top);
    let mut nodes = Vec::new();
    for w in edges.windows(2) {
        let mut panel = Vec::new();
        panel_nodes(w[0], w[1], mesh.t_max, &mut panel);
        for (lam, wt) in panel {
            nodes.push(FineNode { lambda: -lam, weight: wt });
            nodes.push(FineNode { lambda: lam, weight: wt });
        }
    }
    let caps: Vec<usize> = nodes
        .iter()
        .map(|nd| {
            let c = ((xi_top / nd.lambda.abs() - nf) / T::lit(2.0)).floor();
            if c < T::zero() { 0 } else { c.to_usize().unwrap_or(KERNEL_M_LIMIT).min(KERNEL_M_LIMIT) }
        })
        .collect();
    let m_max = grid.m_max;
    let factor = |m: usize| {
        if m <= m_max {
            grid.plancherel_weights[m] / binomial::<T>(m + n - 1, n - 1)
        } else {
            T::one()
        }
    };
    let mut values = synthesize(mesh, &nodes, &|q| caps[q], &factor, |q, m| {
        beta.eval(nodes[q].lambda.abs() * T::from_usize_(2 * m + n))
    });
    // |λ| < λ_floor: the λ-integrand has settled to its λ → 0 limit, so integrate e^{iλt} exactly
    let c: Vec<Complex<T>> =
        (0..=KERNEL_M_LIMIT).map(|m| beta.eval(lam_floor * T::from_usize_(2 * m + n)) * factor(m)).collect();
    let g = radial_amplitude(mesh, lam_floor, &c);
    let norm = (T::lit(2.0) * T::PI()).powi(-(n as i32 + 1));
    let nt = mesh.n_t();
    for (i, gi) in g.iter().enumerate() {
        for (k, &t) in mesh.t_nodes.iter().enumerate() {
            let sinc = if t == T::zero() { lam_floor } else { (lam_floor * t).sin() / t };
            values[i * nt + k] = values[i * nt + k] + gi * (T::lit(2.0) * sinc * norm);
        }
    }
    Ok(RadialFunction { mesh: mesh.clone(), values, off_grid: false })
}

/// `a^{−(n+1)} B(a^{−1/2} z, a^{−1} t)`, the kernel of `β(aΔ)` when `B` is the kernel of `β(Δ)`.
pub fn dilated_kernel<T: Real>(b: &RadialFunction<T>, a: T) -> Result<RadialFunction<T>> {
    if !(a > T::zero()) {
        return Err(Error::NonPositiveDilation(a.as_f64()));
    }
    if a == T::one() {
        return Ok(b.clone());
    }
    let mesh = &b.mesh;
    let s = a.sqrt();
    let r_t: Vec<T> = mesh.r_nodes.iter().map(|&r| r / s).collect();
    let t_t: Vec<T> = mesh.t_nodes.iter().map(|&t| t / a).collect();
    let values = resample(b, &r_t, &t_t, a.powi(-(mesh.n as i32 + 1)));
    Ok(RadialFunction { mesh: mesh.clone(), values, off_grid: b.off_grid })
}

/// `A_a F(λ, m) = a^{−(n+1)/2} F(λ/a, m)`.
///
/// Node-aligned `a` is an exact index shift (entries shifted in from outside the grid are zero);
/// otherwise values are interpolated linearly in `ln|λ|` and the result is flagged `resampled`.
pub fn spectral_dilate<T: Real>(f: &SpectralFunction<T>, a: T) -> Result<SpectralFunction<T>> {
    if !(a > T::zero()) {
        return Err(Error::NonPositiveDilation(a.as_f64()));
    }
    let grid = &f.grid;
    let scale = a.powf(-T::from_usize_(grid.n + 1) / T::lit(2.0));
    let p = grid.per_sign() as i64;
    let zero = Complex::new(T::zero(), T::zero());
    let mut out = SpectralFunction::zeros(grid);
    out.boundary_warning = f.boundary_warning;
    match grid.node_shift(a) {
        Some(shift) => {
            out.resampled = f.resampled;
            for l in 0..grid.n_lambda() {
                let (pos, j) = grid.magnitude_index(l);
                let src = j as i64 - shift;
                if src < 0 || src >= p {
                    continue;
                }
                let ls = grid.node_index(pos, src as usize);
                for m in 0..grid.n_m() {
                    out.values[grid.flat(l, m)] = f.at(ls, m) * scale;
                }
            }
        }
        None => {
            out.resampled = true;
            let s = a.log2() * T::from_usize_(grid.kappa);
            for l in 0..grid.n_lambda() {
                let (pos, j) = grid.magnitude_index(l);
                let x = T::from_usize_(j) - s;
                let base = x.floor();
                let frac = x - base;
                let b = base.to_i64().unwrap_or(i64::MIN / 2);
                let fetch = |k: i64, m: usize| {
                    if k < 0 || k >= p { zero } else { f.at(grid.node_index(pos, k as usize), m) }
                };
                for m in 0..grid.n_m() {
                    let v = fetch(b, m) * (T::one() - frac) + fetch(b + 1, m) * frac;
                    out.values[grid.flat(l, m)] = v * scale;
                }
            }
        }
    }
    Ok(out)
}

/// `A_a[β∘α](λ, m) = a^{−(n+1)/2} β(α(λ/a, m))`, evaluated from the multiplier (no truncation).
pub fn dilated_profile<T: Real>(beta: &Multiplier<T>, grid: &Arc<GelfandGrid<T>>, a: T) -> Result<SpectralFunction<T>> {
    if !(a > T::zero()) {
        return Err(Error::NonPositiveDilation(a.as_f64()));
    }
    let scale = a.powf(-T::from_usize_(grid.n + 1) / T::lit(2.0));
    let sampled = sample_multiplier(&beta.dilated(T::one() / a), grid)?;
    Ok(sampled.scale(scale))
}

/// `‖F‖ + ‖ξ^{r/2} F‖`.
pub fn sobolev_norm<T: Real>(f: &SpectralFunction<T>, p: SobolevParams<T>) -> T {
    let half = p.r / T::lit(2.0);
    f.norm() + f.map_xi(|xi, v| v * xi.powf(half)).norm()
}
