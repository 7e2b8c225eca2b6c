use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::special::binomial;

/// Point `(λ, m)` of the Gelfand space `R* x N`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphericalPoint<T> {
    pub lambda: T,
    pub m: usize,
}

impl<T: Real> SphericalPoint<T> {
    pub fn new(lambda: T, m: usize) -> Result<Self> {
        if lambda == T::zero() {
            return Err(Error::ZeroLambda);
        }
        Ok(Self { lambda, m })
    }
}

/// Sub-Laplacian eigenvalue `|λ|(2m + n)` of `φ_{λ,m}`.
pub fn symbol_alpha<T: Real>(p: SphericalPoint<T>, n: usize) -> Result<T> {
    if p.lambda == T::zero() {
        return Err(Error::ZeroLambda);
    }
    Ok(p.lambda.abs() * T::from_usize_(2 * p.m + n))
}

/// Parameters of the log-spaced λ grid.
#[derive(Debug, Clone, Copy)]
pub struct GridSpec<T> {
    pub n: usize,
    pub kappa: usize,
    pub lambda_min: T,
    pub lambda_max: T,
    pub m_max: usize,
}

impl<T: Real> Default for GridSpec<T> {
    fn default() -> Self {
        Self { n: 1, kappa: 8, lambda_min: T::lit(1.0 / 16.0), lambda_max: T::lit(64.0), m_max: 32 }
    }
}

/// Discretized Gelfand space.
///
/// Magnitudes are `2^{k/κ}` for `k_min ≤ k ≤ k_max`; nodes are stored negative-ascending then
/// positive-ascending. `lambda_weights` is the trapezoid rule in `ln|λ|` written as a `dλ` weight.
#[derive(Debug, Clone)]
pub struct GelfandGrid<T> {
    pub n: usize,
    pub kappa: usize,
    pub k_min: i64,
    pub k_max: i64,
    pub m_max: usize,
    pub lambda_nodes: Vec<T>,
    pub lambda_weights: Vec<T>,
    pub plancherel_weights: Vec<T>,
    pub normalization: T,
    mu: Vec<T>,
}

#[derive(Debug, Serialize, Deserialize)]
struct GridJson {
    lambda_nodes: Vec<f64>,
    lambda_weights: Vec<f64>,
    m_max: usize,
    n: usize,
    kappa: usize,
}

fn exponent_of<T: Real>(lambda: T, kappa: usize) -> i64 {
    (lambda.log2() * T::from_usize_(kappa)).round().to_i64().unwrap_or(0)
}

impl<T: Real> GelfandGrid<T> {
    /// Builds the grid; `lambda_min`/`lambda_max` snap to the nearest power of `2^{1/κ}`.
    pub fn new(spec: GridSpec<T>) -> Result<Self> {
        if spec.n == 0 || spec.kappa == 0 {
            return Err(Error::InvalidGrid("n and kappa must be positive".into()));
        }
        if !(spec.lambda_min > T::zero()) || !(spec.lambda_min < spec.lambda_max) {
            return Err(Error::InvalidGrid("need 0 < lambda_min < lambda_max".into()));
        }
        let k_min = exponent_of(spec.lambda_min, spec.kappa);
        let k_max = exponent_of(spec.lambda_max, spec.kappa);
        if k_max <= k_min {
            return Err(Error::InvalidGrid("lambda range shorter than one grid step".into()));
        }
        let weights = (0..=spec.m_max).map(|m| binomial::<T>(m + spec.n - 1, spec.n - 1)).collect();
        Ok(Self::assemble(spec.n, spec.kappa, k_min, k_max, spec.m_max, weights))
    }

    fn assemble(n: usize, kappa: usize, k_min: i64, k_max: i64, m_max: usize, plancherel_weights: Vec<T>) -> Self {
        let kf = T::from_usize_(kappa);
        let du = T::LN_2() / kf;
        let mags: Vec<T> = (k_min..=k_max).map(|k| T::lit(2.0).powf(T::from_i64(k).unwrap() / kf)).collect();
        let p = mags.len();
        let mag_w: Vec<T> = mags
            .iter()
            .enumerate()
            .map(|(j, &m)| if j == 0 || j == p - 1 { m * du / T::lit(2.0) } else { m * du })
            .collect();
        let mut lambda_nodes = Vec::with_capacity(2 * p);
        let mut lambda_weights = Vec::with_capacity(2 * p);
        for j in (0..p).rev() {
            lambda_nodes.push(-mags[j]);
            lambda_weights.push(mag_w[j]);
        }
        for j in 0..p {
            lambda_nodes.push(mags[j]);
            lambda_weights.push(mag_w[j]);
        }
        let normalization = (T::lit(2.0) * T::PI()).powi(-(n as i32 + 1));
        let mut grid = Self {
            n,
            kappa,
            k_min,
            k_max,
            m_max,
            lambda_nodes,
            lambda_weights,
            plancherel_weights,
            normalization,
            mu: Vec::new(),
        };
        grid.refresh_measure();
        grid
    }

    fn refresh_measure(&mut self) {
        let mut mu = Vec::with_capacity(self.len());
        for (l, &lam) in self.lambda_nodes.iter().enumerate() {
            let base = self.normalization * lam.abs().powi(self.n as i32) * self.lambda_weights[l];
            for w in &self.plancherel_weights {
                mu.push(base * *w);
            }
        }
        self.mu = mu;
    }

    /// Same grid with overridden Plancherel weights (calibration and sensitivity checks).
    pub fn with_plancherel_weights(&self, weights: Vec<T>) -> Result<Self> {
        if weights.len() != self.m_max + 1 || weights.iter().any(|w| !(*w > T::zero())) {
            return Err(Error::InvalidGrid("plancherel weights must be m_max + 1 positive values".into()));
        }
        let mut g = self.clone();
        g.plancherel_weights = weights;
        g.refresh_measure();
        Ok(g)
    }

    /// Number of magnitudes per sign.
    pub fn per_sign(&self) -> usize {
        (self.k_max - self.k_min + 1) as usize
    }

    pub fn n_lambda(&self) -> usize {
        self.lambda_nodes.len()
    }

    pub fn n_m(&self) -> usize {
        self.m_max + 1
    }

    /// Total number of `(λ, m)` points.
    pub fn len(&self) -> usize {
        self.n_lambda() * self.n_m()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Magnitudes `2^{k/κ}`, ascending.
    pub fn magnitudes(&self) -> Vec<T> {
        self.lambda_nodes[self.per_sign()..].to_vec()
    }

    /// Node index for sign (`false` = negative) and ascending magnitude index.
    #[inline]
    pub fn node_index(&self, positive: bool, j: usize) -> usize {
        let p = self.per_sign();
        if positive { p + j } else { p - 1 - j }
    }

    /// Sign and ascending magnitude index of node `l`.
    #[inline]
    pub fn magnitude_index(&self, l: usize) -> (bool, usize) {
        let p = self.per_sign();
        if l >= p { (true, l - p) } else { (false, p - 1 - l) }
    }

    #[inline]
    pub fn flat(&self, l: usize, m: usize) -> usize {
        l * self.n_m() + m
    }

    /// `ξ = |λ_l|(2m + n)`.
    #[inline]
    pub fn xi(&self, l: usize, m: usize) -> T {
        self.lambda_nodes[l].abs() * T::from_usize_(2 * m + self.n)
    }

    /// Plancherel mass `dμ` attached to point `(l, m)`.
    #[inline]
    pub fn mu_weight(&self, l: usize, m: usize) -> T {
        self.mu[self.flat(l, m)]
    }

    pub fn mu_weights(&self) -> &[T] {
        &self.mu
    }

    pub fn lambda_min(&self) -> T {
        self.lambda_nodes[self.per_sign()]
    }

    pub fn lambda_max(&self) -> T {
        *self.lambda_nodes.last().unwrap()
    }

    pub fn xi_min(&self) -> T {
        self.lambda_min() * T::from_usize_(self.n)
    }

    pub fn xi_max(&self) -> T {
        self.lambda_max() * T::from_usize_(2 * self.m_max + self.n)
    }

    /// Node shift `κ log2 a` when `a` maps nodes onto nodes.
    pub fn node_shift(&self, a: T) -> Option<i64> {
        let s = a.log2() * T::from_usize_(self.kappa);
        let k = s.round();
        if (s - k).abs() < T::lit(1e-9).max(T::epsilon() * T::lit(64.0)) { k.to_i64() } else { None }
    }

    pub fn same_as(&self, other: &Self) -> bool {
        self.n == other.n
            && self.kappa == other.kappa
            && self.k_min == other.k_min
            && self.k_max == other.k_max
            && self.m_max == other.m_max
            && self.plancherel_weights == other.plancherel_weights
    }

    pub fn to_json(&self) -> String {
        let g = GridJson {
            lambda_nodes: self.lambda_nodes.iter().map(|v| v.as_f64()).collect(),
            lambda_weights: self.lambda_weights.iter().map(|v| v.as_f64()).collect(),
            m_max: self.m_max,
            n: self.n,
            kappa: self.kappa,
        };
        serde_json::to_string_pretty(&g).expect("grid serializes")
    }

    /// Rebuilds a grid from its JSON form, checking the geometric-progression contract.
    pub fn from_json(text: &str) -> Result<Self> {
        let g: GridJson = serde_json::from_str(text)?;
        if g.lambda_nodes.len() != g.lambda_weights.len() || g.lambda_nodes.len() < 4 || g.lambda_nodes.len() % 2 != 0 {
            return Err(Error::InvalidGrid("lambda_nodes/lambda_weights lengths inconsistent".into()));
        }
        if g.n == 0 || g.kappa == 0 {
            return Err(Error::InvalidGrid("n and kappa must be positive".into()));
        }
        let half = g.lambda_nodes.len() / 2;
        let lo = g.lambda_nodes[half];
        let hi = *g.lambda_nodes.last().unwrap();
        let spec = GridSpec { n: g.n, kappa: g.kappa, lambda_min: T::lit(lo), lambda_max: T::lit(hi), m_max: g.m_max };
        let grid = Self::new(spec)?;
        let tol = (T::epsilon().as_f64() * 64.0).max(1e-12);
        let consistent = grid.lambda_nodes.len() == g.lambda_nodes.len()
            && grid
                .lambda_nodes
                .iter()
                .zip(&g.lambda_nodes)
                .chain(grid.lambda_weights.iter().zip(&g.lambda_weights))
                .all(|(a, &b)| (a.as_f64() - b).abs() <= tol * b.abs());
        if !consistent {
            return Err(Error::InvalidGrid("nodes or weights do not follow the log-spaced trapezoid layout".into()));
        }
        Ok(grid)
    }
}
