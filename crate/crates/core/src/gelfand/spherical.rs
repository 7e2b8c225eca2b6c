use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::special::{binomial, damped_laguerre_row, laguerre_eval};

use super::grid::SphericalPoint;

/// Bounded spherical function
/// `φ_{λ,m}(r, t) = e^{iλt} e^{−|λ|r²/4} L_m^{(n−1)}(|λ|r²/2) / C(m+n−1, n−1)`.
pub fn spherical_eval<T: Real>(p: SphericalPoint<T>, r: T, t: T, n: usize) -> Result<Complex<T>> {
    if p.lambda == T::zero() {
        return Err(Error::ZeroLambda);
    }
    let y = p.lambda.abs() * r * r / T::lit(2.0);
    let radial = (-y / T::lit(2.0)).exp() * laguerre_eval(p.m, n - 1, y) / binomial::<T>(p.m + n - 1, n - 1);
    Ok(Complex::from_polar(T::one(), p.lambda * t) * radial)
}

/// Radial parts `e^{−x/4} L_m^{(n−1)}(x/2) / C(m+n−1, n−1)` with `x = |λ| r²`, for `m = 0..=m_max`.
pub fn radial_profiles<T: Real>(m_max: usize, n: usize, x: T) -> Vec<T> {
    let mut row = damped_laguerre_row(m_max, n - 1, x / T::lit(2.0));
    if n > 1 {
        for (m, v) in row.iter_mut().enumerate() {
            *v = *v / binomial::<T>(m + n - 1, n - 1);
        }
    }
    row
}
