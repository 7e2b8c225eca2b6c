use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::gelfand::SpectralFunction;
use crate::littlewood_paley::SmoothPartition;
use crate::scalar::Real;

use super::norms::{NormCache, NormReport};
use super::params::{BesovParams, WeightMode};

/// Default bound on the family-wide spread `max/min` of a norm ratio.
pub const DEFAULT_RATIO_BOUND: f64 = 100.0;

/// The four norms of one family member under one parameter set.
#[derive(Debug, Clone)]
pub struct ReportRow {
    pub function_id: String,
    pub params: BesovParams<f64>,
    pub norms: NormReport<f64>,
}

/// Spread of `N_a/N_b` across the family for one parameter set.
#[derive(Debug, Clone, Serialize)]
pub struct PairSpread {
    pub pair: String,
    pub alpha: f64,
    /// `None` stands for `q = ∞`.
    pub q: Option<f64>,
    pub r: u32,
    pub min_ratio: f64,
    pub max_ratio: f64,
    pub max_min_ratio: f64,
    pub violated: bool,
}

#[derive(Debug, Clone)]
pub struct EquivalenceReport {
    pub rows: Vec<ReportRow>,
    pub spreads: Vec<PairSpread>,
    pub notes: Vec<String>,
    pub bound: f64,
    pub weight_mode: WeightMode,
}

pub const NORM_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

pub fn pair_name(a: usize, b: usize) -> String {
    let names = NormReport::<f64>::NAMES;
    format!("{}/{}", names[a], names[b])
}

/// All four norms for every `(member, params)` cell and the family-wide ratio spreads.
///
/// Members that vanish identically are skipped with a note.
pub fn equivalence_report(
    family: &[(String, SpectralFunction<f64>)],
    params: &[BesovParams<f64>],
    part: &SmoothPartition<f64>,
    mode: WeightMode,
    bound: f64,
) -> Result<EquivalenceReport> {
    let mut notes = Vec::new();
    let live: Vec<&(String, SpectralFunction<f64>)> = family
        .iter()
        .filter(|(id, f)| {
            let zero = f.is_zero();
            if zero {
                notes.push(format!("{id}: zero function skipped"));
            }
            !zero
        })
        .collect();
    let orders: Vec<u32> = params.iter().map(|p| p.r).collect();
    let caches = live
        .par_iter()
        .map(|(_, f)| NormCache::new(f, part, &orders))
        .collect::<Result<Vec<_>>>()?;
    let cells: Vec<(usize, usize)> = (0..params.len()).flat_map(|p| (0..live.len()).map(move |i| (p, i))).collect();
    let rows: Vec<ReportRow> = cells
        .par_iter()
        .map(|&(pi, fi)| ReportRow {
            function_id: live[fi].0.clone(),
            params: params[pi],
            norms: caches[fi].report(&live[fi].1, &params[pi], mode),
        })
        .collect();
    let mut spreads = Vec::new();
    for (pi, p) in params.iter().enumerate() {
        let block = &rows[pi * live.len()..(pi + 1) * live.len()];
        if block.is_empty() {
            continue;
        }
        for &(a, b) in &NORM_PAIRS {
            let ratios: Vec<f64> = block.iter().map(|r| r.norms.values()[a] / r.norms.values()[b]).collect();
            let min = ratios.iter().copied().fold(f64::INFINITY, f64::min);
            let max = ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let spread = max / min;
            let ok = ratios.iter().all(|r| r.is_finite() && *r > 0.0) && spread.is_finite() && spread <= bound;
            spreads.push(PairSpread {
                pair: pair_name(a, b),
                alpha: p.alpha,
                q: (!p.q_is_infinite()).then_some(p.q),
                r: p.r,
                min_ratio: min,
                max_ratio: max,
                max_min_ratio: spread,
                violated: !ok,
            });
        }
    }
    Ok(EquivalenceReport { rows, spreads, notes, bound, weight_mode: mode })
}

impl EquivalenceReport {
    pub fn passed(&self) -> bool {
        !self.spreads.iter().any(|s| s.violated)
    }

    /// Worst `max/min` over all parameter sets, per norm pair.
    pub fn worst_by_pair(&self) -> Vec<(String, f64)> {
        NORM_PAIRS
            .iter()
            .map(|&(a, b)| {
                let name = pair_name(a, b);
                let worst = self
                    .spreads
                    .iter()
                    .filter(|s| s.pair == name)
                    .map(|s| if s.max_min_ratio.is_nan() { f64::INFINITY } else { s.max_min_ratio })
                    .fold(1.0, f64::max);
                (name, worst)
            })
            .collect()
    }
}

/// The standard parameter sweep: `α ∈ {0.5, 1, 1.5}`, `q ∈ {1, 2, ∞}`, `r = 4`.
pub fn standard_params<T: Real>() -> Vec<BesovParams<T>> {
    let mut out = Vec::new();
    for alpha in [0.5, 1.0, 1.5] {
        for q in [1.0, 2.0, f64::INFINITY] {
            out.push(BesovParams::new(T::lit(alpha), T::lit(q), 4).expect("valid standard parameters"));
        }
    }
    out
}
