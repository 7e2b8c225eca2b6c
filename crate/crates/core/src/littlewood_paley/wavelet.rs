use std::sync::Arc;

use crate::calculus::{kernel_of_multiplier, Multiplier};
use crate::error::{Error, Result};
use crate::gelfand::{GelfandGrid, SpectralFunction};
use crate::heisenberg::{RadialFunction, RadialMesh};
use crate::quadrature::gauss_legendre_unit;
use crate::scalar::Real;

use super::partition::SmoothPartition;

/// Panels per decade and nodes per panel in the `dt/t` quadrature.
const PANELS_PER_DECADE: usize = 16;
const PANEL_ORDER: usize = 8;
/// Decades tried on an unbounded side before declaring divergence.
const TAIL_DECADES: usize = 40;
/// A tail decade contributing less than this fraction of the running total ends the extension.
const TAIL_TOLERANCE: f64 = 1e-13;
/// Nodes per decade of the `a`-integral in the isometry check, and its range `[2^−6, 2^6]`.
const ISOMETRY_NODES_PER_DECADE: f64 = 64.0;
const ISOMETRY_LOG2_RANGE: f64 = 6.0;

/// Kernel of `ψ̂_j(Δ)`, or of `φ̂(Δ)` for `j = −1`.
pub fn wavelet_kernel<T: Real>(
    part: &SmoothPartition<T>,
    j: i64,
    grid: &Arc<GelfandGrid<T>>,
    mesh: &Arc<RadialMesh<T>>,
) -> Result<RadialFunction<T>> {
    let max = part.levels as i64;
    if j < -1 || j > max {
        return Err(Error::BandOutOfRange { j, max });
    }
    let (lo, hi) = part.band_support(j);
    if hi <= grid.xi_min() || lo >= grid.xi_max() {
        return Err(Error::BandOutsideGrid {
            lo: lo.as_f64(),
            hi: hi.as_f64(),
            grid_lo: grid.xi_min().as_f64(),
            grid_hi: grid.xi_max().as_f64(),
        });
    }
    kernel_of_multiplier(&part.band_multiplier(j), grid, mesh)
}

/// `∫₀^∞ |ν(t)|² dt/t` and the implied isometry constant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdmissibilityResult {
    pub integral: f64,
    pub is_admissible: bool,
    /// Half the integral.
    pub constant: f64,
}

/// `∫ |ν(e^u)|² du` over `[u0, u1]` with Gauss–Legendre panels.
fn log_integral<T: Real>(nu: &Multiplier<T>, u0: f64, u1: f64, rule: &[(f64, f64)]) -> f64 {
    let decades = (u1 - u0) / std::f64::consts::LN_10;
    let panels = ((decades * PANELS_PER_DECADE as f64).ceil() as usize).max(1);
    let h = (u1 - u0) / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let a = u0 + h * p as f64;
        for &(x, w) in rule {
            let u = a + 0.5 * h * (x + 1.0);
            total += 0.5 * h * w * nu.eval(T::lit(u.exp())).norm_sqr().as_f64();
        }
    }
    total
}

pub fn admissibility_integral<T: Real>(nu: &Multiplier<T>) -> AdmissibilityResult {
    let diverged = AdmissibilityResult { integral: f64::INFINITY, is_admissible: false, constant: f64::INFINITY };
    if !nu.is_bounded() {
        return diverged;
    }
    let (lo, hi) = (nu.support.0.as_f64(), nu.support.1.as_f64());
    if !(hi > lo) {
        return AdmissibilityResult { integral: 0.0, is_admissible: true, constant: 0.0 };
    }
    let (x, w) = gauss_legendre_unit(PANEL_ORDER);
    let rule: Vec<(f64, f64)> = x.into_iter().zip(w).collect();
    let core_lo = if lo > 0.0 { lo } else { hi.min(1.0) * 1e-3 };
    let core_hi = if hi.is_finite() { hi } else { lo.max(1.0) * 1e3 };
    let ln10 = std::f64::consts::LN_10;
    let mut total = log_integral(nu, core_lo.ln(), core_hi.ln(), &rule);
    let mut extend = |start: f64, step: f64| -> bool {
        let mut u = start;
        for _ in 0..TAIL_DECADES {
            let (a, b) = if step < 0.0 { (u + step, u) } else { (u, u + step) };
            let d = log_integral(nu, a, b, &rule);
            total += d;
            if !total.is_finite() {
                return false;
            }
            if d <= TAIL_TOLERANCE * total {
                return true;
            }
            u += step;
        }
        false
    };
    if lo <= 0.0 && !extend(core_lo.ln(), -ln10) {
        return diverged;
    }
    if !hi.is_finite() && !extend(core_hi.ln(), ln10) {
        return diverged;
    }
    AdmissibilityResult { integral: total, is_admissible: true, constant: 0.5 * total }
}

/// Ratio `I/‖F‖²` of the continuous-wavelet energy to the Plancherel energy, and its predicted value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsometryCheck {
    pub ratio: f64,
    pub predicted: f64,
}

/// `I = ∫ Σ_p μ_p |F_p|² |ν(a² ξ_p)|² da/a` over `a ∈ [2^−6, 2^6]`, trapezoid in `ln a`.
pub fn wavelet_isometry_check<T: Real>(nu: &Multiplier<T>, f: &SpectralFunction<T>) -> Result<IsometryCheck> {
    let adm = admissibility_integral(nu);
    if !adm.is_admissible {
        return Err(Error::NotAdmissible(nu.name().to_string()));
    }
    let grid = &f.grid;
    let energy: Vec<(f64, f64)> = (0..grid.n_lambda())
        .flat_map(|l| (0..grid.n_m()).map(move |m| (l, m)))
        .filter_map(|(l, m)| {
            let e = (f.at(l, m).norm_sqr() * grid.mu_weight(l, m)).as_f64();
            (e > 0.0).then(|| (grid.xi(l, m).as_f64(), e))
        })
        .collect();
    let total: f64 = energy.iter().map(|e| e.1).sum();
    if total == 0.0 {
        return Err(Error::InvalidParameter("isometry check needs F != 0".into()));
    }
    let span = 2.0 * ISOMETRY_LOG2_RANGE * std::f64::consts::LN_2;
    let nodes = (span / std::f64::consts::LN_10 * ISOMETRY_NODES_PER_DECADE).ceil() as usize + 1;
    let h = span / (nodes - 1) as f64;
    let mut integral = 0.0;
    for k in 0..nodes {
        let a2 = (2.0 * (-0.5 * span + h * k as f64)).exp();
        let w = if k == 0 || k == nodes - 1 { 0.5 * h } else { h };
        let s: f64 = energy.iter().map(|&(xi, e)| e * nu.eval(T::lit(a2 * xi)).norm_sqr().as_f64()).sum();
        integral += w * s;
    }
    Ok(IsometryCheck { ratio: integral / total, predicted: adm.constant })
}

/// Which sufficient condition certified a wavelet.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WaveletClause {
    /// `ν(0) = 0` and `ν` admissible.
    VanishesAtZero,
    /// Support bounded away from zero.
    SupportAwayFromZero,
    /// Declared factorisation `ν(ξ) = ξ^k ν₀(ξ)`.
    PowerFactor(u32),
}

#[derive(Debug, Clone, PartialEq)]
pub struct WaveletCriterion {
    pub is_wavelet: bool,
    pub clause: Option<WaveletClause>,
    pub reason: String,
}

pub fn wavelet_criteria<T: Real>(nu: &Multiplier<T>) -> WaveletCriterion {
    let yes = |clause, reason: String| WaveletCriterion { is_wavelet: true, clause: Some(clause), reason };
    if nu.support.0 > T::zero() && nu.support.1 > nu.support.0 {
        return yes(WaveletClause::SupportAwayFromZero, format!("support starts at {}", nu.support.0));
    }
    if let Some(k) = nu.power_factor.filter(|&k| k >= 1) {
        return yes(WaveletClause::PowerFactor(k), format!("declared factor xi^{k}"));
    }
    let at_zero = nu.eval(T::zero()).norm();
    if at_zero == T::zero() {
        let adm = admissibility_integral(nu);
        if adm.is_admissible {
            return yes(WaveletClause::VanishesAtZero, format!("nu(0) = 0, integral {:.6}", adm.integral));
        }
        return WaveletCriterion { is_wavelet: false, clause: None, reason: "nu(0) = 0 but not admissible".into() };
    }
    WaveletCriterion {
        is_wavelet: false,
        clause: None,
        reason: format!("nu(0) = {at_zero}, support reaches zero, no power factor"),
    }
}
