use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Point `(z, t)` of the Heisenberg group `H_n = C^n x R`.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupElement<T> {
    pub z: Vec<Complex<T>>,
    pub t: T,
}

impl<T: Real> GroupElement<T> {
    pub fn new(z: Vec<Complex<T>>, t: T) -> Self {
        Self { z, t }
    }

    pub fn identity(n: usize) -> Self {
        Self { z: vec![Complex::new(T::zero(), T::zero()); n], t: T::zero() }
    }

    pub fn dim(&self) -> usize {
        self.z.len()
    }
}

/// `Σ_j z_j · conj(w_j)`.
pub fn hermitian<T: Real>(z: &[Complex<T>], w: &[Complex<T>]) -> Complex<T> {
    z.iter().zip(w).fold(Complex::new(T::zero(), T::zero()), |acc, (a, b)| acc + a * b.conj())
}

/// `(z, t)(z', t') = (z + z', t + t' - ½ Im⟨z, z'⟩)`.
pub fn group_mul<T: Real>(a: &GroupElement<T>, b: &GroupElement<T>) -> Result<GroupElement<T>> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { left: a.dim(), right: b.dim() });
    }
    let z = a.z.iter().zip(&b.z).map(|(x, y)| x + y).collect();
    let t = a.t + b.t - hermitian(&a.z, &b.z).im / T::lit(2.0);
    Ok(GroupElement { z, t })
}

pub fn group_inv<T: Real>(a: &GroupElement<T>) -> GroupElement<T> {
    GroupElement { z: a.z.iter().map(|x| -x).collect(), t: -a.t }
}

/// Automorphic dilation `(z, t) -> (a z, a² t)`.
pub fn dilate_point<T: Real>(a: T, w: &GroupElement<T>) -> Result<GroupElement<T>> {
    if !(a > T::zero()) {
        return Err(Error::NonPositiveDilation(a.as_f64()));
    }
    Ok(GroupElement { z: w.z.iter().map(|x| x * a).collect(), t: w.t * a * a })
}
