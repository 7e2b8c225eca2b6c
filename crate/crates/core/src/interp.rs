//! Natural cubic splines on fixed node sets, shared across many data rows.

use num_complex::Complex;

use crate::scalar::Real;

/// Precomputed tridiagonal factorization for natural cubic splines on a fixed node set.
#[derive(Debug, Clone)]
pub struct SplineBasis<T> {
    x: Vec<T>,
    h: Vec<T>,
    // Thomas-algorithm factors for the interior system.
    diag: Vec<T>,
    sub: Vec<T>,
}

/// Second derivatives of a complex data row, paired with its basis.
#[derive(Debug, Clone)]
pub struct ComplexSpline<T> {
    y: Vec<Complex<T>>,
    m: Vec<Complex<T>>,
}

impl<T: Real> SplineBasis<T> {
    pub fn new(x: Vec<T>) -> Self {
        assert!(x.len() >= 2, "spline needs at least two nodes");
        let n = x.len();
        let h: Vec<T> = x.windows(2).map(|w| w[1] - w[0]).collect();
        let k = n.saturating_sub(2);
        let mut diag = vec![T::zero(); k];
        let mut sub = vec![T::zero(); k];
        for i in 0..k {
            let d = T::lit(2.0) * (h[i] + h[i + 1]);
            if i == 0 {
                diag[i] = d;
            } else {
                let l = h[i] / diag[i - 1];
                sub[i] = l;
                diag[i] = d - l * h[i];
            }
        }
        Self { x, h, diag, sub }
    }

    pub fn nodes(&self) -> &[T] {
        &self.x
    }

    pub fn fit(&self, y: &[Complex<T>]) -> ComplexSpline<T> {
        let n = self.x.len();
        assert_eq!(y.len(), n);
        let k = n - 2;
        let six = T::lit(6.0);
        let mut rhs: Vec<Complex<T>> = (0..k)
            .map(|i| {
                ((y[i + 2] - y[i + 1]) / self.h[i + 1] - (y[i + 1] - y[i]) / self.h[i]) * six
            })
            .collect();
        for i in 1..k {
            let prev = rhs[i - 1];
            rhs[i] = rhs[i] - prev * self.sub[i];
        }
        let mut m = vec![Complex::new(T::zero(), T::zero()); n];
        for i in (0..k).rev() {
            let mut v = rhs[i];
            if i + 1 < k {
                v = v - m[i + 2] * self.h[i + 1];
            }
            m[i + 1] = v / self.diag[i];
        }
        ComplexSpline { y: y.to_vec(), m }
    }

    /// Index of the segment containing `x`, clamped to the first/last segment.
    #[inline]
    pub fn segment(&self, x: T) -> usize {
        let n = self.x.len();
        match self.x.binary_search_by(|p| p.partial_cmp(&x).unwrap_or(std::cmp::Ordering::Less)) {
            Ok(i) => i.min(n - 2),
            Err(0) => 0,
            Err(i) => (i - 1).min(n - 2),
        }
    }

    /// Evaluates the spline at `x`; outside the node range the end segments extend polynomially.
    #[inline]
    pub fn eval(&self, s: &ComplexSpline<T>, x: T) -> Complex<T> {
        self.eval_in(s, self.segment(x), x)
    }

    #[inline]
    pub fn eval_in(&self, s: &ComplexSpline<T>, i: usize, x: T) -> Complex<T> {
        let h = self.h[i];
        let a = (self.x[i + 1] - x) / h;
        let b = (x - self.x[i]) / h;
        let six = T::lit(6.0);
        s.y[i] * a
            + s.y[i + 1] * b
            + (s.m[i] * (a * a * a - a) + s.m[i + 1] * (b * b * b - b)) * (h * h / six)
    }
}
