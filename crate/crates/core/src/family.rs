//! Fixed test families shared by the self-test, the acceptance suite and the CLI.

use std::sync::Arc;

use num_complex::Complex;

use crate::error::Result;
use crate::calculus::spectral_dilate;
use crate::gelfand::{bump_profile, forward_transform, synthesize_spectral_bump_slices, GelfandGrid, SpectralFunction};
use crate::heisenberg::{RadialFunction, RadialMesh};
use crate::scalar::Real;

/// `(β, σ, ω₀, p)` for `r^{2p} e^{−βr²} e^{−t²/(2σ²)} cos(ω₀ t)`.
pub const SMOOTH_FAMILY: [(f64, f64, f64, i32); 6] = [
    (0.5, 2.0, 3.0, 0),
    (0.5, 1.5, 2.0, 1),
    (1.0, 2.0, 4.0, 0),
    (0.3, 2.5, 2.5, 0),
    (0.7, 1.2, 5.0, 2),
    (0.5, 3.0, 1.5, 0),
];

pub fn smooth_member<T: Real>(mesh: &Arc<RadialMesh<T>>, params: (f64, f64, f64, i32)) -> RadialFunction<T> {
    let (beta, sigma, omega, p) = params;
    RadialFunction::from_fn(mesh, move |r, t| {
        let v = r.powi(2 * p)
            * (-T::lit(beta) * r * r).exp()
            * (-t * t / T::lit(2.0 * sigma * sigma)).exp()
            * (T::lit(omega) * t).cos();
        Complex::new(v, T::zero())
    })
}

/// Six smooth, real, `t`-even functions that decay inside the default mesh.
pub fn smooth_family<T: Real>(mesh: &Arc<RadialMesh<T>>) -> Vec<RadialFunction<T>> {
    SMOOTH_FAMILY.iter().map(|&p| smooth_member(mesh, p)).collect()
}

/// `(ξ₀, width, max_m)` of the spectral bumps used for spectral round trips.
pub const BUMP_FAMILY: [(f64, f64, usize); 3] = [(6.0, 4.0, 0), (6.0, 4.0, 1), (8.0, 6.0, 2)];

pub fn bump_family<T: Real>(grid: &Arc<GelfandGrid<T>>) -> Result<Vec<SpectralFunction<T>>> {
    BUMP_FAMILY
        .iter()
        .map(|&(c, w, m)| synthesize_spectral_bump_slices(grid, T::lit(c), T::lit(w), m))
        .collect()
}

/// Gelfand transforms of [`smooth_family`], labelled `smooth0`..`smooth5`.
pub fn spectral_smooth_family<T: Real>(
    mesh: &Arc<RadialMesh<T>>,
    grid: &Arc<GelfandGrid<T>>,
) -> Result<Vec<(String, SpectralFunction<T>)>> {
    smooth_family(mesh)
        .iter()
        .enumerate()
        .map(|(i, f)| Ok((format!("smooth{i}"), forward_transform(f, grid)?)))
        .collect()
}

/// Seed of the dilate family: a smooth bump in `log₂|λ|` over `[1/16, 1/4]`, decaying in `m`.
pub fn dilate_seed<T: Real>(grid: &Arc<GelfandGrid<T>>) -> SpectralFunction<T> {
    SpectralFunction::from_fn(grid, |lam, m| {
        let x = lam.abs().log2() + T::lit(3.0);
        Complex::new(bump_profile(x) * (-T::from_usize_(m) / T::lit(4.0)).exp(), T::zero())
    })
}

/// `A_{4^j}` applied to [`dilate_seed`] for each `j`, labelled `dilate{j}`.
///
/// On the default grid these are exact node shifts, so every member stays on the grid.
pub fn dilate_family<T: Real>(grid: &Arc<GelfandGrid<T>>, js: &[u32]) -> Result<Vec<(String, SpectralFunction<T>)>> {
    let seed = dilate_seed(grid);
    js.iter()
        .map(|&j| Ok((format!("dilate{j}"), spectral_dilate(&seed, T::lit(4f64.powi(j as i32)))?)))
        .collect()
}
