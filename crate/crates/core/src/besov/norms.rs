use std::sync::Arc;

use crate::calculus::{apply_multiplier, dilated_profile, wave_difference};
use crate::error::Result;
use crate::gelfand::{GelfandGrid, SpectralFunction};
use crate::littlewood_paley::{calderon_decompose, check_coverage, AtomMode, SmoothPartition};
use crate::scalar::Real;

use super::params::{BesovParams, WeightMode};

/// Log-grid density for the `τ`, `s` and `t` integrals.
const NODES_PER_DECADE: usize = 64;
/// Smallest `τ` of the modulus grid.
const TAU_MIN: f64 = 1e-4;
/// Below `t_lo` every `c_p(t)` is at most this, and `K₂(t)` is linear in `t` to that accuracy.
const K_LINEAR_LEVEL: f64 = 1e-6;

/// Log-spaced nodes from `lo` to `hi` inclusive, `NODES_PER_DECADE` per decade.
fn log_nodes(lo: f64, hi: f64) -> Vec<f64> {
    let steps = ((hi / lo).log10() * NODES_PER_DECADE as f64).ceil().max(1.0) as usize;
    let h = (hi / lo).ln() / steps as f64;
    (0..=steps).map(|k| if k == steps { hi } else { lo * (h * k as f64).exp() }).collect()
}

/// Trapezoid rule in `ln x` for samples `g(x_k)` on a log grid.
fn trapezoid_log<T: Real>(x: &[f64], g: &[T]) -> T {
    x.windows(2)
        .zip(g.windows(2))
        .map(|(xs, gs)| T::lit((xs[1] / xs[0]).ln() / 2.0) * (gs[0] + gs[1]))
        .sum()
}

fn band_scale<T: Real>(j: usize) -> T {
    T::lit(4f64.powi(j as i32))
}

fn two_pow<T: Real>(x: T) -> T {
    T::lit(2.0).powf(x)
}

/// Wavelet-route band weight `W_j`.
pub fn wavelet_weight<T: Real>(j: usize, n: usize, p: &BesovParams<T>, mode: WeightMode) -> T {
    let jf = T::from_usize_(j);
    let q1 = T::from_usize_(n + 1);
    match mode {
        WeightMode::Derived => two_pow(jf * (p.alpha + q1)),
        WeightMode::PaperLiteral => {
            let a_over_q = if p.q_is_infinite() { T::zero() } else { p.alpha / p.q };
            two_pow(-jf * (q1 - a_over_q))
        }
    }
}

/// `‖F‖ + (Σ_j (W_j ‖F · A_{4^j}[ψ̂∘α]‖)^q)^{1/q}`.
pub fn besov_norm_wavelet<T: Real>(
    f: &SpectralFunction<T>,
    part: &SmoothPartition<T>,
    p: &BesovParams<T>,
    mode: WeightMode,
) -> Result<T> {
    Ok(f.norm() + p.combine(wavelet_band_norms(f, part)?.into_iter().enumerate().map(|(j, v)| {
        wavelet_weight(j, f.grid.n, p, mode) * v
    })))
}

/// `‖F · A_{4^j}[ψ̂∘α]‖` for `j = 0..=J`.
fn wavelet_band_norms<T: Real>(f: &SpectralFunction<T>, part: &SmoothPartition<T>) -> Result<Vec<T>> {
    check_coverage(f, part)?;
    let psi = part.psi_multiplier();
    (0..=part.levels)
        .map(|j| {
            let prof = dilated_profile(&psi, &f.grid, band_scale(j))?;
            Ok(weighted_norm(f, |i| prof.values[i].norm()))
        })
        .collect()
}

/// `‖F · w‖_{dμ}` for a pointwise weight given by flat index.
fn weighted_norm<T: Real>(f: &SpectralFunction<T>, w: impl Fn(usize) -> T) -> T {
    f.values
        .iter()
        .zip(f.grid.mu_weights())
        .enumerate()
        .map(|(i, (v, mu))| v.norm_sqr() * *mu * w(i).powi(2))
        .sum::<T>()
        .sqrt()
}

/// `‖F‖ + (Σ_j (2^{jα} ‖ψ̂_j F‖)^q)^{1/q}` from the Calderón atoms.
pub fn besov_norm_atoms<T: Real>(f: &SpectralFunction<T>, part: &SmoothPartition<T>, p: &BesovParams<T>) -> Result<T> {
    let parts = calderon_decompose(f, part, AtomMode::Single)?;
    Ok(f.norm()
        + p.combine(parts.atoms.iter().enumerate().map(|(j, a)| two_pow(T::from_usize_(j) * p.alpha) * a.norm())))
}

/// `τ` grid of the modulus route.
pub fn modulus_grid() -> Vec<f64> {
    log_nodes(TAU_MIN, 1.0)
}

/// `Ω_r(s) = sup_{τ ≤ s} ‖(1 − e^{iτ√ξ})^r F‖` on the `τ` grid.
pub fn modulus_of_continuity<T: Real>(f: &SpectralFunction<T>, r: u32, taus: &[f64]) -> Result<Vec<T>> {
    let mut running = T::zero();
    taus.iter()
        .map(|&tau| {
            running = running.max(apply_multiplier(&wave_difference(T::lit(tau), r), f)?.norm());
            Ok(running)
        })
        .collect()
}

/// `‖F‖ + (∫ (s^{−α} Ω_r(s))^q ds/s)^{1/q}` over `s ∈ [τ_min, 1]` (sup for `q = ∞`).
pub fn besov_norm_modulus<T: Real>(f: &SpectralFunction<T>, p: &BesovParams<T>) -> Result<T> {
    let s = modulus_grid();
    let omega = modulus_of_continuity(f, p.r, &s)?;
    Ok(modulus_from_omega(f.norm(), &s, &omega, p))
}

pub(crate) fn modulus_from_omega<T: Real>(norm: T, s: &[f64], omega: &[T], p: &BesovParams<T>) -> T {
    let g: Vec<T> = s.iter().zip(omega).map(|(&s, &o)| T::lit(s).powf(-p.alpha) * o).collect();
    let tail = if p.q_is_infinite() {
        g.iter().copied().fold(T::zero(), T::max)
    } else {
        let gq: Vec<T> = g.iter().map(|v| v.powf(p.q)).collect();
        trapezoid_log(s, &gq).powf(p.q.recip())
    };
    norm + tail
}

/// Closed-form surrogate `K₂(t)` with `K₂² = Σ_p μ_p |F_p|² c_p/(1 + c_p)`, `c_p = t²(1 + ξ_p^r)`.
pub fn k2_functional<T: Real>(f: &SpectralFunction<T>, t: T, r: u32) -> T {
    let grid = &f.grid;
    let mut sum = T::zero();
    for l in 0..grid.n_lambda() {
        for m in 0..grid.n_m() {
            let i = grid.flat(l, m);
            let c = t * t * (T::one() + grid.xi(l, m).powi(r as i32));
            sum = sum + f.values[i].norm_sqr() * grid.mu_weights()[i] * (c / (T::one() + c));
        }
    }
    sum.sqrt()
}

/// `‖F‖ + Φ^ε_{θ,q}(K₂)` with `Φ^ε_{θ,q}(K) = (∫₀^ε (t^{−θ} K(t))^q dt/t)^{1/q}` and `θ = α/r`.
///
/// The integral runs on a log grid from `t_lo`, where `K₂(t) = t·√S` to relative accuracy
/// `K_LINEAR_LEVEL`, and the part below `t_lo` is added in closed form.
pub fn besov_norm_kfunctional<T: Real>(f: &SpectralFunction<T>, p: &BesovParams<T>) -> T {
    let grid: &Arc<GelfandGrid<T>> = &f.grid;
    let mut xi_top = 0.0f64;
    let mut slope = T::zero();
    for l in 0..grid.n_lambda() {
        for m in 0..grid.n_m() {
            let i = grid.flat(l, m);
            if f.values[i].norm_sqr() > T::zero() {
                let xi = grid.xi(l, m);
                xi_top = xi_top.max(xi.as_f64());
                slope = slope + f.values[i].norm_sqr() * grid.mu_weights()[i] * (T::one() + xi.powi(p.r as i32));
            }
        }
    }
    let norm = f.norm();
    if slope == T::zero() {
        return norm;
    }
    let eps = p.epsilon.as_f64();
    let t_lo = (K_LINEAR_LEVEL / (1.0 + xi_top.powi(p.r as i32))).sqrt().min(eps / 10.0);
    let ts = log_nodes(t_lo, eps);
    let theta = p.theta();
    let g: Vec<T> = ts.iter().map(|&t| T::lit(t).powf(-theta) * k2_functional(f, T::lit(t), p.r)).collect();
    let root = slope.sqrt();
    let tail = if p.q_is_infinite() {
        g.iter().copied().fold(T::zero(), T::max)
    } else {
        let q = p.q;
        let gq: Vec<T> = g.iter().map(|v| v.powf(q)).collect();
        let one_minus = T::one() - theta;
        // ∫₀^{t_lo} (t^{1−θ} √S)^q dt/t
        let below = root.powf(q) * T::lit(t_lo).powf(one_minus * q) / (one_minus * q);
        (trapezoid_log(&ts, &gq) + below).powf(q.recip())
    };
    norm + tail
}

/// The four Besov functionals of one function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormReport<T> {
    pub wavelet_norm: T,
    pub modulus_norm: T,
    pub kfunctional_norm: T,
    pub atom_norm: T,
    pub levels: usize,
    pub weight_mode: WeightMode,
}

impl<T: Real> NormReport<T> {
    pub const NAMES: [&'static str; 4] = ["wavelet", "modulus", "kfunctional", "atom"];

    pub fn values(&self) -> [T; 4] {
        [self.wavelet_norm, self.modulus_norm, self.kfunctional_norm, self.atom_norm]
    }
}

pub fn besov_norms<T: Real>(
    f: &SpectralFunction<T>,
    part: &SmoothPartition<T>,
    p: &BesovParams<T>,
    mode: WeightMode,
) -> Result<NormReport<T>> {
    Ok(NormReport {
        wavelet_norm: besov_norm_wavelet(f, part, p, mode)?,
        modulus_norm: besov_norm_modulus(f, p)?,
        kfunctional_norm: besov_norm_kfunctional(f, p),
        atom_norm: besov_norm_atoms(f, part, p)?,
        levels: part.levels,
        weight_mode: mode,
    })
}

/// Parameter-independent pieces of the four routes, reused across a parameter sweep.
pub(crate) struct NormCache<T> {
    norm: T,
    wavelet_bands: Vec<T>,
    atom_bands: Vec<T>,
    moduli: Vec<(u32, Vec<T>)>,
    n: usize,
}

impl<T: Real> NormCache<T> {
    pub(crate) fn new(f: &SpectralFunction<T>, part: &SmoothPartition<T>, orders: &[u32]) -> Result<Self> {
        let parts = calderon_decompose(f, part, AtomMode::Single)?;
        let s = modulus_grid();
        let mut moduli = Vec::new();
        for &r in orders {
            if !moduli.iter().any(|(q, _)| *q == r) {
                moduli.push((r, modulus_of_continuity(f, r, &s)?));
            }
        }
        Ok(Self {
            norm: f.norm(),
            wavelet_bands: wavelet_band_norms(f, part)?,
            atom_bands: parts.atoms.iter().map(|a| a.norm()).collect(),
            moduli,
            n: f.grid.n,
        })
    }

    pub(crate) fn report(
        &self,
        f: &SpectralFunction<T>,
        p: &BesovParams<T>,
        mode: WeightMode,
    ) -> NormReport<T> {
        let wavelet = self.norm
            + p.combine(self.wavelet_bands.iter().enumerate().map(|(j, &v)| wavelet_weight(j, self.n, p, mode) * v));
        let atom = self.norm
            + p.combine(self.atom_bands.iter().enumerate().map(|(j, &v)| two_pow(T::from_usize_(j) * p.alpha) * v));
        let omega = &self.moduli.iter().find(|(r, _)| *r == p.r).expect("modulus order cached").1;
        NormReport {
            wavelet_norm: wavelet,
            modulus_norm: modulus_from_omega(self.norm, &modulus_grid(), omega, p),
            kfunctional_norm: besov_norm_kfunctional(f, p),
            atom_norm: atom,
            levels: self.atom_bands.len() - 1,
            weight_mode: mode,
        }
    }
}
