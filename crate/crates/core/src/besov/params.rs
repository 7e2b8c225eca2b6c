use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Smoothness `α`, integrability `q ∈ [1, ∞]` (`∞` as `T::infinity()`), difference order `r > α`
/// and the upper limit `ε` of the `K`-functional integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesovParams<T> {
    pub alpha: T,
    pub q: T,
    pub r: u32,
    pub epsilon: T,
}

impl<T: Real> BesovParams<T> {
    pub fn new(alpha: T, q: T, r: u32) -> Result<Self> {
        Self::with_epsilon(alpha, q, r, T::one())
    }

    pub fn with_epsilon(alpha: T, q: T, r: u32, epsilon: T) -> Result<Self> {
        if !(alpha > T::zero()) || !alpha.is_finite() {
            return Err(Error::InvalidParameter(format!("alpha must be positive, got {alpha}")));
        }
        if !(q >= T::one()) {
            return Err(Error::InvalidParameter(format!("q must be at least 1, got {q}")));
        }
        if !(alpha < T::from_u32(r).unwrap()) {
            return Err(Error::InvalidParameter(format!("need alpha < r, got alpha = {alpha}, r = {r}")));
        }
        if !(epsilon > T::zero()) || !epsilon.is_finite() {
            return Err(Error::InvalidParameter(format!("epsilon must be positive, got {epsilon}")));
        }
        Ok(Self { alpha, q, r, epsilon })
    }

    pub fn q_is_infinite(&self) -> bool {
        self.q.is_infinite()
    }

    /// `θ = α/r`.
    pub fn theta(&self) -> T {
        self.alpha / T::from_u32(self.r).unwrap()
    }

    /// `ℓ^q` combination of non-negative terms (sup for `q = ∞`).
    pub(crate) fn combine(&self, terms: impl Iterator<Item = T>) -> T {
        if self.q_is_infinite() {
            terms.fold(T::zero(), T::max)
        } else {
            terms.map(|x| x.powf(self.q)).sum::<T>().powf(self.q.recip())
        }
    }
}

impl<T: Real> fmt::Display for BesovParams<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q_is_infinite() {
            write!(f, "alpha={} q=inf r={}", self.alpha, self.r)
        } else {
            write!(f, "alpha={} q={} r={}", self.alpha, self.q, self.r)
        }
    }
}

/// Band weights of the wavelet route.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WeightMode {
    /// `W_j = 2^{j(α+n+1)}`: the atom route's `2^{jα}` with the unitary dilation factor undone.
    #[default]
    Derived,
    /// `W_j = 2^{−j((n+1)−α/q)}`.
    PaperLiteral,
}

impl WeightMode {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Derived => "derived",
            Self::PaperLiteral => "paper-literal",
        }
    }
}
