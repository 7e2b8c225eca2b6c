use std::sync::Arc;

use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::heisenberg::{RadialFunction, RadialMesh};
use crate::interp::SplineBasis;
use crate::quadrature::gauss_legendre_unit;
use crate::scalar::Real;
use crate::special::{binomial, damped_laguerre_into};

use super::grid::GelfandGrid;
use super::spectral::SpectralFunction;
use super::spherical::radial_profiles;

/// Gauss–Legendre points per unit of `λ·T` inside each inverse-transform panel.
const PANEL_DENSITY: f64 = 1.0;
/// Extra Gauss–Legendre points per panel on top of the oscillation count.
const PANEL_EXTRA: usize = 6;
/// Relative edge magnitude above which the forward transform flags a truncated input.
const DECAY_THRESHOLD: f64 = 1e-8;

/// `F(f)(λ, m) = ∬ f(r, t) φ_{λ,m}(r, t) c_n r^{2n−1} dr dt`.
///
/// The `t` samples are read as their band-limited interpolant: the trapezoid sum is used below
/// the `t`-Nyquist frequency `π/h_t`, and nodes with `|λ| ≥ π/h_t` receive zero.
pub fn forward_transform<T: Real>(f: &RadialFunction<T>, grid: &Arc<GelfandGrid<T>>) -> Result<SpectralFunction<T>> {
    let mesh = &f.mesh;
    if mesh.n != grid.n {
        return Err(Error::GridMismatch(format!("function has n = {}, grid has n = {}", mesh.n, grid.n)));
    }
    let (nr, nt, nm) = (mesh.n_r(), mesh.n_t(), grid.n_m());
    let nyquist = mesh.t_nyquist();
    let values: Vec<Complex<T>> = (0..grid.n_lambda())
        .into_par_iter()
        .flat_map_iter(|l| {
            let lam = grid.lambda_nodes[l];
            let mut out = vec![Complex::new(T::zero(), T::zero()); nm];
            if lam.abs() >= nyquist {
                return out;
            }
            let rot = Complex::from_polar(T::one(), lam * mesh.t_step);
            let start = Complex::from_polar(T::one(), lam * mesh.t_nodes[0]);
            for i in 0..nr {
                let mut phase = start;
                let mut s = Complex::new(T::zero(), T::zero());
                let row = &f.values[i * nt..(i + 1) * nt];
                for (v, w) in row.iter().zip(&mesh.t_weights) {
                    s = s + v * phase * *w;
                    phase = phase * rot;
                }
                if s == Complex::new(T::zero(), T::zero()) {
                    continue;
                }
                let r = mesh.r_nodes[i];
                let prof = radial_profiles(grid.m_max, grid.n, lam.abs() * r * r);
                let sw = s * mesh.r_weights[i];
                for (o, p) in out.iter_mut().zip(&prof) {
                    *o = *o + sw * *p;
                }
            }
            out
        })
        .collect();
    let mut spec = SpectralFunction::from_values(grid, values);
    let peak = f.max_abs();
    spec.boundary_warning = peak > T::zero() && f.boundary_max() > T::lit(DECAY_THRESHOLD) * peak;
    Ok(spec)
}

/// One node of a fine `λ` quadrature used for synthesis.
#[derive(Debug, Clone, Copy)]
pub(crate) struct FineNode<T> {
    pub lambda: T,
    pub weight: T,
}

/// Evaluates `(2π)^{−(n+1)} Σ_q w_q |λ_q|^n Σ_m factor(m) c(q, m) e^{−y/2} L_m^{(n−1)}(y) e^{iλ_q t}`
/// with `y = |λ_q| r² / 2` on every mesh node.
pub(crate) fn synthesize<T, C, F>(
    mesh: &RadialMesh<T>,
    nodes: &[FineNode<T>],
    m_cap: &(dyn Fn(usize) -> usize + Sync),
    factor: F,
    coeff: C,
) -> Vec<Complex<T>>
where
    T: Real,
    C: Fn(usize, usize) -> Complex<T> + Sync,
    F: Fn(usize) -> T + Sync,
{
    let (nr, nt) = (mesh.n_r(), mesh.n_t());
    let zero = Complex::new(T::zero(), T::zero());
    let radial: Vec<Option<Vec<Complex<T>>>> = nodes
        .par_iter()
        .enumerate()
        .map(|(q, node)| {
            let c: Vec<Complex<T>> = (0..=m_cap(q)).map(|m| coeff(q, m) * factor(m)).collect();
            if c.iter().all(|v| *v == zero) {
                return None;
            }
            Some(radial_amplitude(mesh, node.lambda.abs(), &c).into_iter().map(|v| v * node.weight).collect())
        })
        .collect();
    let active: Vec<(usize, &Vec<Complex<T>>)> =
        radial.iter().enumerate().filter_map(|(q, a)| a.as_ref().map(|v| (q, v))).collect();
    let norm = (T::lit(2.0) * T::PI()).powi(-(mesh.n as i32 + 1));
    let rows: Vec<Vec<Complex<T>>> = (0..nr)
        .into_par_iter()
        .map(|i| {
            let mut acc = vec![zero; nt];
            for &(q, a) in &active {
                let amp = a[i];
                if amp == zero {
                    continue;
                }
                let lam = nodes[q].lambda;
                let rot = Complex::from_polar(T::one(), lam * mesh.t_step);
                let mut phase = Complex::from_polar(T::one(), lam * mesh.t_nodes[0]) * amp;
                for v in acc.iter_mut() {
                    *v = *v + phase;
                    phase = phase * rot;
                }
            }
            acc.iter().map(|v| v * norm).collect()
        })
        .collect();
    rows.concat()
}

/// `|λ|^n Σ_m c_m e^{−y/2} L_m^{(n−1)}(y)` with `y = |λ| r² / 2`, for every mesh radius.
pub(crate) fn radial_amplitude<T: Real>(mesh: &RadialMesh<T>, mag: T, c: &[Complex<T>]) -> Vec<Complex<T>> {
    let n = mesh.n;
    let zero = Complex::new(T::zero(), T::zero());
    let mut row = Vec::with_capacity(c.len());
    let amp = mag.powi(n as i32);
    mesh.r_nodes
        .iter()
        .map(|&r| {
            damped_laguerre_into(c.len() - 1, n - 1, mag * r * r / T::lit(2.0), &mut row);
            c.iter().zip(&row).fold(zero, |acc, (a, b)| acc + a * *b) * amp
        })
        .collect()
}

/// Gauss–Legendre nodes on `[a, b]` with the panel-size rule of the inverse transform.
pub(crate) fn panel_nodes<T: Real>(a: T, b: T, t_max: T, out: &mut Vec<(T, T)>) {
    let p = ((b - a) * t_max * T::lit(PANEL_DENSITY)).ceil().to_usize().unwrap_or(0) + PANEL_EXTRA;
    let (x, w) = gauss_legendre_unit(p);
    let half = (b - a) / T::lit(2.0);
    let mid = (b + a) / T::lit(2.0);
    for (xi, wi) in x.iter().zip(&w) {
        out.push((mid + half * T::lit(*xi), half * T::lit(*wi)));
    }
}

/// `f(r, t) = (2π)^{−(n+1)} Σ_m w_m ∫ F(λ, m) φ_{λ,m}(r, t) |λ|^n dλ` on `mesh`.
///
/// Each `m`-slice is interpolated in `ln|λ|` by a natural cubic spline and integrated with
/// Gauss–Legendre panels between consecutive grid magnitudes, sized to resolve `e^{iλt}` on `[−T, T]`.
pub fn inverse_transform<T: Real>(f: &SpectralFunction<T>, mesh: &Arc<RadialMesh<T>>) -> Result<RadialFunction<T>> {
    let grid = &f.grid;
    if mesh.n != grid.n {
        return Err(Error::GridMismatch(format!("mesh has n = {}, grid has n = {}", mesh.n, grid.n)));
    }
    let nm = grid.n_m();
    let mags = grid.magnitudes();
    let basis = SplineBasis::new(mags.iter().map(|m| m.ln()).collect());
    // splines[sign][m]
    let splines: Vec<Vec<_>> = [false, true]
        .iter()
        .map(|&positive| {
            (0..nm)
                .map(|m| {
                    let col: Vec<Complex<T>> =
                        (0..mags.len()).map(|j| f.at(grid.node_index(positive, j), m)).collect();
                    basis.fit(&col)
                })
                .collect()
        })
        .collect();
    let mut nodes = Vec::new();
    let mut tags = Vec::new();
    for (s, sign) in [(0usize, -T::one()), (1, T::one())] {
        for j in 0..mags.len() - 1 {
            let mut panel = Vec::new();
            panel_nodes(mags[j], mags[j + 1], mesh.t_max, &mut panel);
            for (lam, w) in panel {
                nodes.push(FineNode { lambda: sign * lam, weight: w });
                tags.push((s, j, lam.ln()));
            }
        }
    }
    let factor: Vec<T> =
        (0..nm).map(|m| grid.plancherel_weights[m] / binomial::<T>(m + grid.n - 1, grid.n - 1)).collect();
    let m_max = grid.m_max;
    let values = synthesize(mesh, &nodes, &|_| m_max, |m| factor[m], |q, m| {
        let (s, j, u) = tags[q];
        basis.eval_in(&splines[s][m], j, u)
    });
    Ok(RadialFunction { mesh: mesh.clone(), values, off_grid: false })
}
