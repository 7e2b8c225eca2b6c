use std::sync::Arc;

use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::interp::SplineBasis;
use crate::scalar::Real;

use super::radial::{RadialFunction, RadialMesh};

/// Default cap on `f ∗ g` pair evaluations: enough for a 16³ grid.
pub const DEFAULT_CONVOLUTION_BUDGET: u128 = 1 << 25;

/// Uniform `(x, y, t)` box grid symmetric about the origin (`n = 1`).
#[derive(Debug, Clone, PartialEq)]
pub struct BoxGrid<T> {
    pub counts: [usize; 3],
    pub half_widths: [T; 3],
}

impl<T: Real> BoxGrid<T> {
    pub fn cube(nodes: usize, half_width: T) -> Self {
        Self { counts: [nodes; 3], half_widths: [half_width; 3] }
    }

    pub fn spacing(&self, axis: usize) -> T {
        T::lit(2.0) * self.half_widths[axis] / T::from_usize_(self.counts[axis] - 1)
    }

    pub fn coord(&self, axis: usize, i: usize) -> T {
        let mid = T::from_usize_(self.counts[axis] - 1) / T::lit(2.0);
        self.spacing(axis) * (T::from_usize_(i) - mid)
    }

    pub fn len(&self) -> usize {
        self.counts.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn index(&self, ix: usize, iy: usize, it: usize) -> usize {
        (ix * self.counts[1] + iy) * self.counts[2] + it
    }

    pub fn cell_volume(&self) -> T {
        self.spacing(0) * self.spacing(1) * self.spacing(2)
    }
}

/// Complex samples on a [`BoxGrid`]; oracle substrate only.
#[derive(Debug, Clone)]
pub struct BoxFunction3D<T> {
    pub grid: BoxGrid<T>,
    pub values: Vec<Complex<T>>,
}

impl<T: Real> BoxFunction3D<T> {
    pub fn zeros(grid: &BoxGrid<T>) -> Self {
        Self { grid: grid.clone(), values: vec![Complex::new(T::zero(), T::zero()); grid.len()] }
    }

    pub fn from_fn<F>(grid: &BoxGrid<T>, f: F) -> Self
    where
        F: Fn(T, T, T) -> Complex<T> + Sync,
    {
        let [_, ny, nt] = grid.counts;
        let values = (0..grid.len())
            .into_par_iter()
            .map(|idx| {
                let (ix, iy, it) = (idx / (ny * nt), (idx / nt) % ny, idx % nt);
                f(grid.coord(0, ix), grid.coord(1, iy), grid.coord(2, it))
            })
            .collect();
        Self { grid: grid.clone(), values }
    }

    #[inline]
    pub fn at(&self, ix: usize, iy: usize, it: usize) -> Complex<T> {
        self.values[self.grid.index(ix, iy, it)]
    }

    /// Riemann-sum L² norm.
    pub fn norm(&self) -> T {
        (self.values.iter().map(|v| v.norm_sqr()).sum::<T>() * self.grid.cell_volume()).sqrt()
    }

    pub fn sub(&self, other: &Self) -> Self {
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect();
        Self { grid: self.grid.clone(), values }
    }

    /// Trilinear interpolation with zero extension outside the box.
    pub fn trilinear(&self, x: T, y: T, t: T) -> Complex<T> {
        let zero = Complex::new(T::zero(), T::zero());
        let mut base = [0usize; 3];
        let mut frac = [T::zero(); 3];
        for (axis, &p) in [x, y, t].iter().enumerate() {
            let u = (p + self.grid.half_widths[axis]) / self.grid.spacing(axis);
            let last = self.grid.counts[axis] - 1;
            if !(u >= T::zero()) || u > T::from_usize_(last) {
                return zero;
            }
            let i = u.floor().to_usize().unwrap_or(0).min(last.saturating_sub(1));
            base[axis] = i;
            frac[axis] = u - T::from_usize_(i);
        }
        let mut acc = zero;
        for corner in 0..8usize {
            let mut w = T::one();
            let mut idx = [0usize; 3];
            for axis in 0..3 {
                let hi = (corner >> axis) & 1 == 1;
                w = w * if hi { frac[axis] } else { T::one() - frac[axis] };
                idx[axis] = (base[axis] + usize::from(hi)).min(self.grid.counts[axis] - 1);
            }
            if w != T::zero() {
                acc = acc + self.at(idx[0], idx[1], idx[2]) * w;
            }
        }
        acc
    }

    /// Catmull–Rom (cubic convolution) interpolation, zero outside the box.
    pub fn tricubic(&self, x: T, y: T, t: T) -> Complex<T> {
        let zero = Complex::new(T::zero(), T::zero());
        let mut base = [0i64; 3];
        let mut w = [[T::zero(); 4]; 3];
        for (axis, &p) in [x, y, t].iter().enumerate() {
            let u = (p + self.grid.half_widths[axis]) / self.grid.spacing(axis);
            let last = self.grid.counts[axis] - 1;
            if !(u >= T::zero()) || u > T::from_usize_(last) {
                return zero;
            }
            let i = u.floor();
            let s = u - i;
            base[axis] = i.to_i64().unwrap_or(0) - 1;
            w[axis] = catmull_rom(s);
        }
        let get = |axis: usize, k: i64| -> Option<usize> {
            (k >= 0 && (k as usize) < self.grid.counts[axis]).then_some(k as usize)
        };
        let mut acc = zero;
        for a in 0..4 {
            let Some(ix) = get(0, base[0] + a as i64) else { continue };
            for b in 0..4 {
                let Some(iy) = get(1, base[1] + b as i64) else { continue };
                let wab = w[0][a] * w[1][b];
                for c in 0..4 {
                    let Some(it) = get(2, base[2] + c as i64) else { continue };
                    acc = acc + self.at(ix, iy, it) * (wab * w[2][c]);
                }
            }
        }
        acc
    }
}

/// Weights of the four neighbours at offsets −1, 0, 1, 2 for fractional position `s`.
fn catmull_rom<T: Real>(s: T) -> [T; 4] {
    let h = T::lit(0.5);
    let s2 = s * s;
    let s3 = s2 * s;
    [
        h * (-s3 + T::lit(2.0) * s2 - s),
        h * (T::lit(3.0) * s3 - T::lit(5.0) * s2 + T::lit(2.0)),
        h * (-T::lit(3.0) * s3 + T::lit(4.0) * s2 + s),
        h * (s3 - s2),
    ]
}

/// `conj f(−x, −y, −t)`.
pub fn involution_box<T: Real>(f: &BoxFunction3D<T>) -> BoxFunction3D<T> {
    let mut values = f.values.clone();
    values.reverse();
    for v in values.iter_mut() {
        *v = v.conj();
    }
    BoxFunction3D { grid: f.grid.clone(), values }
}

/// Group convolution `f ∗ g(ω) = ∫ f(ν) g(ν⁻¹ω) dν` by a Riemann sum at every node.
pub fn direct_convolution<T: Real>(
    f: &BoxFunction3D<T>,
    g: &BoxFunction3D<T>,
    budget: u128,
) -> Result<BoxFunction3D<T>> {
    if f.grid != g.grid {
        return Err(Error::GridMismatch("convolution operands live on different box grids".into()));
    }
    let len = f.grid.len();
    let required = (len as u128) * (len as u128);
    if required > budget {
        return Err(Error::BudgetExceeded { required, limit: budget });
    }
    let grid = &f.grid;
    let [_, ny, nt] = grid.counts;
    let coords = |idx: usize| {
        (grid.coord(0, idx / (ny * nt)), grid.coord(1, (idx / nt) % ny), grid.coord(2, idx % nt))
    };
    let support: Vec<(usize, T, T, T)> = (0..len)
        .filter(|&i| f.values[i] != Complex::new(T::zero(), T::zero()))
        .map(|i| {
            let (x, y, t) = coords(i);
            (i, x, y, t)
        })
        .collect();
    let values = (0..len)
        .into_par_iter()
        .map(|o| {
            let (xo, yo, to) = coords(o);
            convolve_at(f, g, &support, xo, yo, to)
        })
        .collect();
    Ok(BoxFunction3D { grid: grid.clone(), values })
}

fn convolve_at<T: Real>(
    f: &BoxFunction3D<T>,
    g: &BoxFunction3D<T>,
    support: &[(usize, T, T, T)],
    xo: T,
    yo: T,
    to: T,
) -> Complex<T> {
    let half = T::lit(0.5);
    let mut acc = Complex::new(T::zero(), T::zero());
    for &(i, xv, yv, tv) in support {
        // ν⁻¹ω = (z_ω − z_ν, t_ω − t_ν + ½(y_ν x_ω − x_ν y_ω))
        let t = to - tv + half * (yv * xo - xv * yo);
        acc = acc + f.values[i] * g.tricubic(xo - xv, yo - yv, t);
    }
    acc * f.grid.cell_volume()
}

/// The same Riemann sum as [`direct_convolution`], evaluated at one arbitrary point `ω`.
pub fn convolution_at<T: Real>(f: &BoxFunction3D<T>, g: &BoxFunction3D<T>, x: T, y: T, t: T) -> Result<Complex<T>> {
    if f.grid != g.grid {
        return Err(Error::GridMismatch("convolution operands live on different box grids".into()));
    }
    let grid = &f.grid;
    let [_, ny, nt] = grid.counts;
    let support: Vec<(usize, T, T, T)> = (0..grid.len())
        .filter(|&i| f.values[i] != Complex::new(T::zero(), T::zero()))
        .map(|i| (i, grid.coord(0, i / (ny * nt)), grid.coord(1, (i / nt) % ny), grid.coord(2, i % nt)))
        .collect();
    Ok(convolve_at(f, g, &support, x, y, t))
}

/// Second-order central-difference sub-Laplacian
/// `Δ = −[∂xx + ∂yy + ¼(x²+y²)∂tt + x∂y∂t − y∂x∂t]`.
///
/// Boundary nodes of the output are zero.
pub fn fd_sublaplacian<T: Real>(f: &BoxFunction3D<T>) -> Result<BoxFunction3D<T>> {
    let grid = &f.grid;
    if let Some(&c) = grid.counts.iter().find(|&&c| c < 5) {
        return Err(Error::GridTooCoarse(c));
    }
    let [nx, ny, nt] = grid.counts;
    let (hx, hy, ht) = (grid.spacing(0), grid.spacing(1), grid.spacing(2));
    let quarter = T::lit(0.25);
    let values = (0..grid.len())
        .into_par_iter()
        .map(|idx| {
            let (ix, iy, it) = (idx / (ny * nt), (idx / nt) % ny, idx % nt);
            if ix == 0 || iy == 0 || it == 0 || ix == nx - 1 || iy == ny - 1 || it == nt - 1 {
                return Complex::new(T::zero(), T::zero());
            }
            let (x, y) = (grid.coord(0, ix), grid.coord(1, iy));
            let c = f.at(ix, iy, it) * T::lit(2.0);
            let fxx = (f.at(ix + 1, iy, it) + f.at(ix - 1, iy, it) - c) / (hx * hx);
            let fyy = (f.at(ix, iy + 1, it) + f.at(ix, iy - 1, it) - c) / (hy * hy);
            let ftt = (f.at(ix, iy, it + 1) + f.at(ix, iy, it - 1) - c) / (ht * ht);
            let fyt = (f.at(ix, iy + 1, it + 1) - f.at(ix, iy + 1, it - 1) - f.at(ix, iy - 1, it + 1)
                + f.at(ix, iy - 1, it - 1))
                / (T::lit(4.0) * hy * ht);
            let fxt = (f.at(ix + 1, iy, it + 1) - f.at(ix + 1, iy, it - 1) - f.at(ix - 1, iy, it + 1)
                + f.at(ix - 1, iy, it - 1))
                / (T::lit(4.0) * hx * ht);
            -(fxx + fyy + ftt * (quarter * (x * x + y * y)) + fyt * x - fxt * y)
        })
        .collect();
    Ok(BoxFunction3D { grid: grid.clone(), values })
}

/// Angular average in `z` onto a radial mesh, by cubic interpolation at `angles` directions.
pub fn radialize<T: Real>(
    f: &BoxFunction3D<T>,
    mesh: &Arc<RadialMesh<T>>,
    angles: usize,
) -> Result<RadialFunction<T>> {
    if mesh.n != 1 {
        return Err(Error::InvalidParameter("radialize is defined for n = 1 only".into()));
    }
    let dirs: Vec<(T, T)> = (0..angles)
        .map(|j| {
            let th = T::lit(2.0) * T::PI() * T::from_usize_(j) / T::from_usize_(angles);
            (th.cos(), th.sin())
        })
        .collect();
    let inv = T::one() / T::from_usize_(angles);
    Ok(RadialFunction::from_fn(mesh, |r, t| {
        dirs.iter().fold(Complex::new(T::zero(), T::zero()), |acc, &(c, s)| acc + f.tricubic(r * c, r * s, t))
            * inv
    }))
}

/// Samples a radial function on a box grid by cubic-spline interpolation (zero off the mesh).
pub fn box_from_radial<T: Real>(f: &RadialFunction<T>, grid: &BoxGrid<T>) -> BoxFunction3D<T> {
    let mesh = &f.mesh;
    let nt_src = mesh.n_t();
    let t_basis = SplineBasis::new(mesh.t_nodes.clone());
    let r_basis = SplineBasis::new(mesh.r_nodes.clone());
    let rows: Vec<_> = (0..mesh.n_r()).map(|i| t_basis.fit(&f.values[i * nt_src..(i + 1) * nt_src])).collect();
    let [nx, ny, nt] = grid.counts;
    let zero = Complex::new(T::zero(), T::zero());
    let columns: Vec<Vec<Complex<T>>> = (0..nt)
        .into_par_iter()
        .map(|it| {
            let t = grid.coord(2, it);
            if t.abs() > mesh.t_max {
                return vec![zero; nx * ny];
            }
            let seg = t_basis.segment(t);
            let col: Vec<Complex<T>> = rows.iter().map(|s| t_basis.eval_in(s, seg, t)).collect();
            let spline = r_basis.fit(&col);
            (0..nx * ny)
                .map(|p| {
                    let r = grid.coord(0, p / ny).hypot(grid.coord(1, p % ny));
                    if r > mesh.r_max { zero } else { r_basis.eval(&spline, r) }
                })
                .collect()
        })
        .collect();
    let mut out = BoxFunction3D::zeros(grid);
    for (it, col) in columns.iter().enumerate() {
        for (p, v) in col.iter().enumerate() {
            out.values[grid.index(p / ny, p % ny, it)] = *v;
        }
    }
    out
}
