use std::sync::Arc;

use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::interp::SplineBasis;
use crate::quadrature::{gauss_legendre, trapezoid_weights};
use crate::scalar::Real;
use crate::special::gamma_int;

/// Tensor `(r, t)` quadrature mesh for U(n)-invariant functions.
///
/// `r_weights` already include the sphere factor `c_n r^{2n-1}`, `c_n = 2π^n / Γ(n)`.
#[derive(Debug, Clone)]
pub struct RadialMesh<T> {
    pub n: usize,
    pub r_max: T,
    pub r_nodes: Vec<T>,
    pub r_weights: Vec<T>,
    pub t_max: T,
    pub t_step: T,
    pub t_nodes: Vec<T>,
    pub t_weights: Vec<T>,
}

impl<T: Real> RadialMesh<T> {
    pub fn new(n: usize, r_max: T, n_r: usize, t_max: T, n_t: usize) -> Result<Self> {
        if n == 0 || n_r == 0 || n_t < 2 || !(r_max > T::zero()) || !(t_max > T::zero()) {
            return Err(Error::InvalidGrid(format!(
                "radial mesh needs n >= 1, n_r >= 1, n_t >= 2 and positive extents (n={n}, n_r={n_r}, n_t={n_t})"
            )));
        }
        let (r_nodes, gl) = gauss_legendre(n_r, T::zero(), r_max);
        let c_n = T::lit(2.0) * T::PI().powi(n as i32) / gamma_int::<T>(n);
        let r_weights = r_nodes
            .iter()
            .zip(&gl)
            .map(|(&r, &w)| w * c_n * r.powi(2 * n as i32 - 1))
            .collect();
        let t_step = T::lit(2.0) * t_max / T::from_usize_(n_t - 1);
        let mid = T::from_usize_(n_t - 1) / T::lit(2.0);
        // symmetric by construction: t_{N-1-k} = -t_k exactly
        let t_nodes = (0..n_t).map(|k| t_step * (T::from_usize_(k) - mid)).collect();
        let t_weights = trapezoid_weights(n_t, t_step);
        Ok(Self { n, r_max, r_nodes, r_weights, t_max, t_step, t_nodes, t_weights })
    }

    pub fn n_r(&self) -> usize {
        self.r_nodes.len()
    }

    pub fn n_t(&self) -> usize {
        self.t_nodes.len()
    }

    pub fn len(&self) -> usize {
        self.n_r() * self.n_t()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Largest `|λ|` resolved by the `t` samples, `π / h_t`.
    pub fn t_nyquist(&self) -> T {
        T::PI() / self.t_step
    }

    pub fn same_as(&self, other: &Self) -> bool {
        self.n == other.n && self.r_nodes == other.r_nodes && self.t_nodes == other.t_nodes
    }
}

/// Samples of a U(n)-invariant function `f(|z|, t)`, row-major in `(r_i, t_k)`.
#[derive(Debug, Clone)]
pub struct RadialFunction<T> {
    pub mesh: Arc<RadialMesh<T>>,
    pub values: Vec<Complex<T>>,
    /// Set when a resampling pushed (almost) all mass off the mesh.
    pub off_grid: bool,
}

impl<T: Real> RadialFunction<T> {
    pub fn zeros(mesh: &Arc<RadialMesh<T>>) -> Self {
        Self { mesh: mesh.clone(), values: vec![Complex::new(T::zero(), T::zero()); mesh.len()], off_grid: false }
    }

    pub fn from_fn<F>(mesh: &Arc<RadialMesh<T>>, f: F) -> Self
    where
        F: Fn(T, T) -> Complex<T> + Sync,
    {
        let nt = mesh.n_t();
        let values = (0..mesh.len())
            .into_par_iter()
            .map(|idx| f(mesh.r_nodes[idx / nt], mesh.t_nodes[idx % nt]))
            .collect();
        Self { mesh: mesh.clone(), values, off_grid: false }
    }

    #[inline]
    pub fn at(&self, i: usize, k: usize) -> Complex<T> {
        self.values[i * self.mesh.n_t() + k]
    }

    pub fn n(&self) -> usize {
        self.mesh.n
    }

    pub fn norm_sq(&self) -> T {
        self.inner(self).re
    }

    /// L² norm on `H_n` by tensor quadrature.
    pub fn norm(&self) -> T {
        self.norm_sq().sqrt()
    }

    /// `∫ f conj(g)`.
    pub fn inner(&self, other: &Self) -> Complex<T> {
        let nt = self.mesh.n_t();
        let mut acc = Complex::new(T::zero(), T::zero());
        for (i, wr) in self.mesh.r_weights.iter().enumerate() {
            let mut row = Complex::new(T::zero(), T::zero());
            for k in 0..nt {
                row = row + self.values[i * nt + k] * other.values[i * nt + k].conj() * self.mesh.t_weights[k];
            }
            acc = acc + row * *wr;
        }
        acc
    }

    pub fn map<F: Fn(Complex<T>) -> Complex<T>>(&self, f: F) -> Self {
        Self { mesh: self.mesh.clone(), values: self.values.iter().map(|&v| f(v)).collect(), off_grid: self.off_grid }
    }

    pub fn scale(&self, c: T) -> Self {
        self.map(|v| v * c)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect();
        Self { mesh: self.mesh.clone(), values, off_grid: self.off_grid || other.off_grid }
    }

    /// Relative L² distance `‖self − other‖ / ‖other‖`.
    pub fn rel_err(&self, reference: &Self) -> T {
        self.sub(reference).norm() / reference.norm()
    }

    pub fn max_abs(&self) -> T {
        self.values.iter().fold(T::zero(), |m, v| m.max(v.norm()))
    }

    /// Largest magnitude on the outer edges of the mesh (`r = r_max` row and `t = ±T` columns).
    pub fn boundary_max(&self) -> T {
        let (nr, nt) = (self.mesh.n_r(), self.mesh.n_t());
        let mut m = T::zero();
        for k in 0..nt {
            m = m.max(self.at(nr - 1, k).norm());
        }
        for i in 0..nr {
            m = m.max(self.at(i, 0).norm()).max(self.at(i, nt - 1).norm());
        }
        m
    }

    /// Point evaluation by cubic splines in `t` then `r`, zero outside `[0, r_max] x [−T, T]`.
    pub fn interpolant(&self) -> RadialInterpolant<T> {
        let t_basis = SplineBasis::new(self.mesh.t_nodes.clone());
        let r_basis = SplineBasis::new(self.mesh.r_nodes.clone());
        let nt = self.mesh.n_t();
        let rows = (0..self.mesh.n_r()).map(|i| t_basis.fit(&self.values[i * nt..(i + 1) * nt])).collect();
        RadialInterpolant { t_basis, r_basis, rows, r_max: self.mesh.r_max, t_max: self.mesh.t_max }
    }
}

pub struct RadialInterpolant<T> {
    t_basis: SplineBasis<T>,
    r_basis: SplineBasis<T>,
    rows: Vec<crate::interp::ComplexSpline<T>>,
    r_max: T,
    t_max: T,
}

impl<T: Real> RadialInterpolant<T> {
    pub fn eval(&self, r: T, t: T) -> Complex<T> {
        let zero = Complex::new(T::zero(), T::zero());
        if r > self.r_max || t.abs() > self.t_max {
            return zero;
        }
        let seg = self.t_basis.segment(t);
        let col: Vec<Complex<T>> = self.rows.iter().map(|s| self.t_basis.eval_in(s, seg, t)).collect();
        let spline = self.r_basis.fit(&col);
        self.r_basis.eval(&spline, r)
    }
}

/// Unitary dilation `δ_a f(z, t) = a^{−(n+1)} f(z/a, t/a²)`, resampled onto the same mesh.
///
/// Resampling is separable natural-cubic-spline interpolation with zero extension off the mesh.
pub fn dilate_function<T: Real>(a: T, f: &RadialFunction<T>) -> Result<RadialFunction<T>> {
    if !(a > T::zero()) {
        return Err(Error::NonPositiveDilation(a.as_f64()));
    }
    if a == T::one() {
        return Ok(f.clone());
    }
    let mesh = &f.mesh;
    let scale = a.powi(-(mesh.n as i32 + 1));
    let t_targets: Vec<T> = mesh.t_nodes.iter().map(|&t| t / (a * a)).collect();
    let r_targets: Vec<T> = mesh.r_nodes.iter().map(|&r| r / a).collect();
    let out = resample(f, &r_targets, &t_targets, scale);
    let before = f.norm();
    let mut g = RadialFunction { mesh: mesh.clone(), values: out, off_grid: f.off_grid };
    if before > T::zero() && g.norm() < T::lit(1e-3) * before {
        g.off_grid = true;
    }
    Ok(g)
}

/// Samples `scale · f(r_targets[i], t_targets[k])` on the tensor of targets.
pub(crate) fn resample<T: Real>(
    f: &RadialFunction<T>,
    r_targets: &[T],
    t_targets: &[T],
    scale: T,
) -> Vec<Complex<T>> {
    let mesh = &f.mesh;
    let (nr, nt) = (mesh.n_r(), mesh.n_t());
    let zero = Complex::new(T::zero(), T::zero());
    let t_basis = SplineBasis::new(mesh.t_nodes.clone());
    let stage: Vec<Vec<Complex<T>>> = (0..nr)
        .into_par_iter()
        .map(|i| {
            let s = t_basis.fit(&f.values[i * nt..(i + 1) * nt]);
            t_targets
                .iter()
                .map(|&t| if t.abs() > mesh.t_max { zero } else { t_basis.eval(&s, t) })
                .collect()
        })
        .collect();
    let r_basis = SplineBasis::new(mesh.r_nodes.clone());
    let cols: Vec<Vec<Complex<T>>> = (0..t_targets.len())
        .into_par_iter()
        .map(|k| {
            let col: Vec<Complex<T>> = stage.iter().map(|row| row[k]).collect();
            let s = r_basis.fit(&col);
            r_targets
                .iter()
                .map(|&r| if r > mesh.r_max { zero } else { r_basis.eval(&s, r) * scale })
                .collect()
        })
        .collect();
    let mut out = vec![zero; r_targets.len() * t_targets.len()];
    for (k, col) in cols.iter().enumerate() {
        for (i, v) in col.iter().enumerate() {
            out[i * t_targets.len() + k] = *v;
        }
    }
    out
}

/// `f̃(z, t) = conj f(−z, −t)`; on radial samples this is `conj f(r, −t)`.
pub fn involution<T: Real>(f: &RadialFunction<T>) -> RadialFunction<T> {
    let nt = f.mesh.n_t();
    let mut values = f.values.clone();
    for (i, row) in values.chunks_mut(nt).enumerate() {
        for (k, v) in row.iter_mut().enumerate() {
            *v = f.values[i * nt + nt - 1 - k].conj();
        }
    }
    RadialFunction { mesh: f.mesh.clone(), values, off_grid: f.off_grid }
}
