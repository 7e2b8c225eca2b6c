use crate::calculus::sample_multiplier;
use crate::error::{Error, Result};
use crate::gelfand::SpectralFunction;
use crate::scalar::Real;

use super::partition::SmoothPartition;

/// Whether atoms carry one filter application (`ψ̂_j F`) or two (`ψ̂_j² F`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AtomMode {
    #[default]
    Single,
    Squared,
}

/// Low-pass part `φ̂² F` and band atoms of a Calderón decomposition.
#[derive(Debug, Clone)]
pub struct CalderonParts<T> {
    pub low: SpectralFunction<T>,
    pub atoms: Vec<SpectralFunction<T>>,
    pub mode: AtomMode,
}

pub(crate) fn check_coverage<T: Real>(f: &SpectralFunction<T>, part: &SmoothPartition<T>) -> Result<()> {
    if f.grid.xi_max() > part.covered_xi() {
        return Err(Error::CoverageExceeded {
            grid_max: f.grid.xi_max().as_f64(),
            covered: part.covered_xi().as_f64(),
        });
    }
    Ok(())
}

pub fn calderon_decompose<T: Real>(
    f: &SpectralFunction<T>,
    part: &SmoothPartition<T>,
    mode: AtomMode,
) -> Result<CalderonParts<T>> {
    check_coverage(f, part)?;
    let low = f.map_xi(|xi, v| v * part.phi_sq(xi));
    let atoms = (0..=part.levels)
        .map(|j| {
            let filt = sample_multiplier(&part.band_multiplier(j as i64), &f.grid)?;
            let mut a = f.clone();
            for (v, w) in a.values.iter_mut().zip(&filt.values) {
                *v = match mode {
                    AtomMode::Single => *v * w.re,
                    AtomMode::Squared => *v * (w.re * w.re),
                };
            }
            Ok(a)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CalderonParts { low, atoms, mode })
}

impl<T: Real> CalderonParts<T> {
    /// `φ̂² F + Σ_j ψ̂_j · atoms_j` (single) or `φ̂² F + Σ_j atoms_j` (squared).
    pub fn reconstruct(&self, part: &SmoothPartition<T>) -> SpectralFunction<T> {
        let mut out = self.low.clone();
        for (j, atom) in self.atoms.iter().enumerate() {
            let a = match self.mode {
                AtomMode::Single => atom.map_xi(|xi, v| v * part.psi_hat_j(j, xi)),
                AtomMode::Squared => atom.clone(),
            };
            out = out.add(&a);
        }
        out
    }
}
