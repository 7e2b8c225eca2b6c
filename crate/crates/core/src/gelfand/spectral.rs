use std::sync::Arc;

use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::Real;

use super::grid::GelfandGrid;

/// Complex values on the discretized Gelfand space, row-major in `(λ-node, m)`.
#[derive(Debug, Clone)]
pub struct SpectralFunction<T> {
    pub grid: Arc<GelfandGrid<T>>,
    pub values: Vec<Complex<T>>,
    /// Set when values were interpolated rather than copied (non-aligned dilation).
    pub resampled: bool,
    /// Set when the space-side input did not decay to `1e-8` of its peak at the mesh edge.
    pub boundary_warning: bool,
}

impl<T: Real> SpectralFunction<T> {
    pub fn zeros(grid: &Arc<GelfandGrid<T>>) -> Self {
        Self::from_values(grid, vec![Complex::new(T::zero(), T::zero()); grid.len()])
    }

    pub fn from_values(grid: &Arc<GelfandGrid<T>>, values: Vec<Complex<T>>) -> Self {
        assert_eq!(values.len(), grid.len(), "value count must match the grid");
        Self { grid: grid.clone(), values, resampled: false, boundary_warning: false }
    }

    /// Samples `f(λ, m)` at every grid point.
    pub fn from_fn<F>(grid: &Arc<GelfandGrid<T>>, f: F) -> Self
    where
        F: Fn(T, usize) -> Complex<T> + Sync,
    {
        let nm = grid.n_m();
        let values = (0..grid.len()).into_par_iter().map(|p| f(grid.lambda_nodes[p / nm], p % nm)).collect();
        Self::from_values(grid, values)
    }

    /// Samples a function of `ξ = |λ|(2m + n)` at every grid point.
    pub fn from_xi_fn<F>(grid: &Arc<GelfandGrid<T>>, f: F) -> Self
    where
        F: Fn(T) -> Complex<T> + Sync,
    {
        let n = T::from_usize_(grid.n);
        Self::from_fn(grid, |lam, m| f(lam.abs() * (T::lit(2.0) * T::from_usize_(m) + n)))
    }

    #[inline]
    pub fn at(&self, l: usize, m: usize) -> Complex<T> {
        self.values[self.grid.flat(l, m)]
    }

    /// `(∫ Σ_m |F|² dμ)^{1/2}`.
    pub fn norm(&self) -> T {
        self.values.iter().zip(self.grid.mu_weights()).map(|(v, w)| v.norm_sqr() * *w).sum::<T>().sqrt()
    }

    /// `⟨F, G⟩_{dμ} = ∫ Σ_m F conj(G) dμ`.
    pub fn inner(&self, other: &Self) -> Complex<T> {
        self.values
            .iter()
            .zip(&other.values)
            .zip(self.grid.mu_weights())
            .fold(Complex::new(T::zero(), T::zero()), |acc, ((a, b), w)| acc + a * b.conj() * *w)
    }

    pub fn map<F: Fn(Complex<T>) -> Complex<T>>(&self, f: F) -> Self {
        let mut out = self.clone();
        out.values.iter_mut().for_each(|v| *v = f(*v));
        out
    }

    /// Pointwise map with access to the spectral variable `ξ`.
    pub fn map_xi<F: Fn(T, Complex<T>) -> Complex<T>>(&self, f: F) -> Self {
        let nm = self.grid.n_m();
        let mut out = self.clone();
        for (p, v) in out.values.iter_mut().enumerate() {
            *v = f(self.grid.xi(p / nm, p % nm), *v);
        }
        out
    }

    pub fn scale(&self, c: T) -> Self {
        self.map(|v| v * c)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.values.iter_mut().zip(&other.values).for_each(|(a, b)| *a = *a + b);
        out.resampled |= other.resampled;
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.values.iter_mut().zip(&other.values).for_each(|(a, b)| *a = *a - b);
        out.resampled |= other.resampled;
        out
    }

    /// Relative `L²(dμ)` distance `‖self − reference‖ / ‖reference‖`.
    pub fn rel_err(&self, reference: &Self) -> T {
        self.sub(reference).norm() / reference.norm()
    }

    pub fn max_abs(&self) -> T {
        self.values.iter().fold(T::zero(), |m, v| m.max(v.norm()))
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.re == T::zero() && v.im == T::zero())
    }
}

pub fn plancherel_norm<T: Real>(f: &SpectralFunction<T>) -> T {
    f.norm()
}

/// Orthogonal projection onto `PW_ω`: zero every point with `ξ > ω`. `ω = +∞` keeps everything.
pub fn pw_project<T: Real>(f: &SpectralFunction<T>, omega: T) -> SpectralFunction<T> {
    f.map_xi(|xi, v| if xi > omega { Complex::new(T::zero(), T::zero()) } else { v })
}

/// Distance from `F` to `PW_ω`.
pub fn best_approximation<T: Real>(f: &SpectralFunction<T>, omega: T) -> T {
    f.sub(&pw_project(f, omega)).norm()
}

/// Sharpness of the bump profile `exp(−S x²/(1−x²))`.
const BUMP_SHARPNESS: f64 = 4.0;

/// `C^∞` bump supported in `(−1, 1)` with value 1 at the origin.
pub fn bump_profile<T: Real>(x: T) -> T {
    let x2 = x * x;
    if x2 >= T::one() {
        T::zero()
    } else {
        (-T::lit(BUMP_SHARPNESS) * x2 / (T::one() - x2)).exp()
    }
}

/// Smooth band `g((ξ − ξ₀)/width)` on every `m`-slice.
pub fn synthesize_spectral_bump<T: Real>(
    grid: &Arc<GelfandGrid<T>>,
    xi0: T,
    width: T,
) -> Result<SpectralFunction<T>> {
    synthesize_spectral_bump_slices(grid, xi0, width, grid.m_max)
}

/// Smooth band restricted to slices `m ≤ max_m`.
///
/// Limiting the slices keeps the `λ`-content of the band away from zero, which keeps the
/// space-side function inside a finite box.
pub fn synthesize_spectral_bump_slices<T: Real>(
    grid: &Arc<GelfandGrid<T>>,
    xi0: T,
    width: T,
    max_m: usize,
) -> Result<SpectralFunction<T>> {
    if !(xi0 > T::zero()) || !(width > T::zero()) {
        return Err(Error::InvalidParameter("bump center and width must be positive".into()));
    }
    let f = SpectralFunction::from_fn(grid, |lam, m| {
        if m > max_m {
            return Complex::new(T::zero(), T::zero());
        }
        let xi = lam.abs() * T::from_usize_(2 * m + grid.n);
        Complex::new(bump_profile((xi - xi0) / width), T::zero())
    });
    if f.is_zero() {
        return Err(Error::BandOutsideGrid {
            lo: (xi0 - width).as_f64(),
            hi: (xi0 + width).as_f64(),
            grid_lo: grid.xi_min().as_f64(),
            grid_hi: grid.xi_max().as_f64(),
        });
    }
    Ok(f)
}
