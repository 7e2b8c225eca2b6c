use std::fmt;
use std::sync::Arc;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

type Eval<T> = Arc<dyn Fn(T) -> Complex<T> + Send + Sync>;

/// Scalar function `β(ξ)` of the sub-Laplacian spectral variable `ξ ≥ 0`.
///
/// Carries its declared support `[lo, hi]` (`hi` may be `+∞`), a sup bound (`+∞` when
/// unbounded) and, optionally, a declared factorization `ξ^k ν₀(ξ)`.
#[derive(Clone)]
pub struct Multiplier<T> {
    name: String,
    eval: Eval<T>,
    pub support: (T, T),
    pub sup_bound: T,
    pub is_real: bool,
    pub power_factor: Option<u32>,
}

impl<T: Real> fmt::Debug for Multiplier<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Multiplier")
            .field("name", &self.name)
            .field("support", &self.support)
            .field("sup_bound", &self.sup_bound)
            .field("is_real", &self.is_real)
            .field("power_factor", &self.power_factor)
            .finish()
    }
}

impl<T: Real> Multiplier<T> {
    pub fn new<F>(name: impl Into<String>, support: (T, T), sup_bound: T, is_real: bool, f: F) -> Self
    where
        F: Fn(T) -> Complex<T> + Send + Sync + 'static,
    {
        Self { name: name.into(), eval: Arc::new(f), support, sup_bound, is_real, power_factor: None }
    }

    /// Real-valued multiplier from a real function.
    pub fn real<F>(name: impl Into<String>, support: (T, T), sup_bound: T, f: F) -> Self
    where
        F: Fn(T) -> T + Send + Sync + 'static,
    {
        Self::new(name, support, sup_bound, true, move |x| Complex::new(f(x), T::zero()))
    }

    pub fn constant(c: T) -> Self {
        Self::real(format!("const({c})"), (T::zero(), T::infinity()), c.abs(), move |_| c)
    }

    pub fn zero() -> Self {
        Self::real("zero", (T::zero(), T::zero()), T::zero(), |_| T::zero())
    }

    pub fn indicator(lo: T, hi: T) -> Self {
        Self::real(format!("1[{lo},{hi}]"), (lo, hi), T::one(), move |x| {
            if x >= lo && x <= hi { T::one() } else { T::zero() }
        })
    }

    /// Heat multiplier `e^{−sξ}`.
    pub fn heat(s: T) -> Self {
        Self::real(format!("heat({s})"), (T::zero(), T::infinity()), T::one(), move |x| (-s * x).exp())
    }

    /// `ξ^p`; unbounded.
    pub fn power(p: T) -> Self {
        Self::real(format!("xi^{p}"), (T::zero(), T::infinity()), T::infinity(), move |x| x.powf(p))
    }

    /// `ξ^k e^{−ξ}`, declared in the form `ξ^k ν₀(ξ)`.
    pub fn power_exp(k: u32) -> Self {
        let kf = T::from_u32(k).unwrap();
        let bound = if k == 0 { T::one() } else { (kf / T::E()).powf(kf) };
        let mut m = Self::real(format!("xi^{k}*exp(-xi)"), (T::zero(), T::infinity()), bound, move |x| {
            x.powi(k as i32) * (-x).exp()
        });
        m.power_factor = Some(k);
        m
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    #[inline]
    pub fn eval(&self, xi: T) -> Complex<T> {
        (self.eval)(xi)
    }

    pub fn is_bounded(&self) -> bool {
        self.sup_bound.is_finite()
    }

    /// Declares the `ξ^k ν₀(ξ)` form.
    pub fn with_power_factor(mut self, k: u32) -> Self {
        self.power_factor = Some(k);
        self
    }

    /// `ξ ↦ β(ξ)γ(ξ)`.
    pub fn product(&self, other: &Self) -> Self {
        let (a, b) = (self.eval.clone(), other.eval.clone());
        let lo = self.support.0.max(other.support.0);
        let hi = self.support.1.min(other.support.1);
        Self {
            name: format!("({})*({})", self.name, other.name),
            eval: Arc::new(move |x| a(x) * b(x)),
            support: (lo, hi.max(lo)),
            sup_bound: self.sup_bound * other.sup_bound,
            is_real: self.is_real && other.is_real,
            power_factor: None,
        }
    }

    /// `β^a(ξ) = β(aξ)`.
    pub fn dilated(&self, a: T) -> Self {
        let f = self.eval.clone();
        Self {
            name: format!("({})[{a}*xi]", self.name),
            eval: Arc::new(move |x| f(a * x)),
            support: (self.support.0 / a, self.support.1 / a),
            sup_bound: self.sup_bound,
            is_real: self.is_real,
            power_factor: self.power_factor,
        }
    }

    /// Spot-checks the declared bound and support on log-spaced samples over `[1e-6, 1e6]`.
    pub fn validate(&self) -> Result<()> {
        let slack = T::one() + T::lit(1e-12);
        for k in 0..=480 {
            let xi = T::lit(10f64.powf(-6.0 + k as f64 / 40.0));
            let v = self.eval(xi);
            let outside = xi < self.support.0 || xi > self.support.1;
            if outside && v.norm() > T::zero() {
                return Err(Error::InvalidParameter(format!(
                    "{} is nonzero at xi = {} outside its declared support",
                    self.name,
                    xi.as_f64()
                )));
            }
            if v.norm() > self.sup_bound * slack {
                return Err(Error::InvalidParameter(format!(
                    "{} exceeds its declared bound at xi = {}",
                    self.name,
                    xi.as_f64()
                )));
            }
            if self.is_real && v.im != T::zero() {
                return Err(Error::InvalidParameter(format!("{} declared real but complex", self.name)));
            }
        }
        Ok(())
    }
}

/// Multiplier of `(I − e^{iτ√Δ})^r`.
pub fn wave_difference<T: Real>(tau: T, r: u32) -> Multiplier<T> {
    let support = if tau == T::zero() { (T::zero(), T::zero()) } else { (T::zero(), T::infinity()) };
    Multiplier::new(format!("wave({tau},{r})"), support, T::lit(2.0).powi(r as i32), false, move |x| {
        let e = Complex::from_polar(T::one(), tau * x.sqrt());
        (Complex::new(T::one(), T::zero()) - e).powi(r as i32)
    })
}
