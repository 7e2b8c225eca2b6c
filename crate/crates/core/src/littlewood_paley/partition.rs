use crate::calculus::Multiplier;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// `g(x) = e^{−1/x}` for `x > 0`, else 0.
fn g<T: Real>(x: T) -> T {
    if x > T::zero() { (-x.recip()).exp() } else { T::zero() }
}

/// Smooth cutoff: 1 on `(−∞, ½]`, 0 on `[1, ∞)`, `C^∞` and non-increasing.
pub fn cutoff<T: Real>(xi: T) -> T {
    let a = g(T::lit(2.0) - T::lit(2.0) * xi);
    let b = g(T::lit(2.0) * xi - T::one());
    if b == T::zero() {
        T::one()
    } else if a == T::zero() {
        T::zero()
    } else {
        a / (a + b)
    }
}

/// Littlewood–Paley pair `(φ̂, ψ̂)` with `J + 1` dyadic bands of ratio 4 in `ξ`.
///
/// `φ̂² = h`, `ψ̂² = h(·/4) − h`, `ψ̂_j(ξ) = ψ̂(4^{−j} ξ)`, so `φ̂² + Σ_{j ≤ J} ψ̂_j²` telescopes to
/// `h(4^{−(J+1)} ξ)`, which is 1 for `ξ ≤ 4^{J+1}/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SmoothPartition<T> {
    pub levels: usize,
    _scalar: std::marker::PhantomData<T>,
}

pub fn build_partition<T: Real>(levels: usize) -> Result<SmoothPartition<T>> {
    if levels == 0 {
        return Err(Error::InvalidParameter("partition needs J >= 1".into()));
    }
    Ok(SmoothPartition { levels, _scalar: std::marker::PhantomData })
}

impl<T: Real> SmoothPartition<T> {
    /// Smallest partition whose exact region covers `xi_max`.
    pub fn covering(xi_max: T) -> Self {
        let mut levels = 1;
        while T::lit(4f64.powi(levels as i32 + 1) / 2.0) < xi_max {
            levels += 1;
        }
        Self { levels, _scalar: std::marker::PhantomData }
    }

    /// Upper end `4^{J+1}/2` of the region where the partition sums to one.
    pub fn covered_xi(&self) -> T {
        T::lit(4f64.powi(self.levels as i32 + 1) / 2.0)
    }

    pub fn phi_sq(&self, xi: T) -> T {
        cutoff(xi)
    }

    pub fn phi_hat(&self, xi: T) -> T {
        cutoff(xi).sqrt()
    }

    pub fn psi_sq(&self, xi: T) -> T {
        (cutoff(xi / T::lit(4.0)) - cutoff(xi)).max(T::zero())
    }

    pub fn psi_hat(&self, xi: T) -> T {
        self.psi_sq(xi).sqrt()
    }

    /// `ψ̂_j(ξ) = ψ̂(4^{−j} ξ)`.
    pub fn psi_hat_j(&self, j: usize, xi: T) -> T {
        self.psi_hat(xi * T::lit(4f64.powi(-(j as i32))))
    }

    pub fn psi_sq_j(&self, j: usize, xi: T) -> T {
        self.psi_sq(xi * T::lit(4f64.powi(-(j as i32))))
    }

    /// `φ̂² + Σ_{j=0}^{J} ψ̂_j²`.
    pub fn partition_sum(&self, xi: T) -> T {
        (0..=self.levels).fold(self.phi_sq(xi), |acc, j| acc + self.psi_sq_j(j, xi))
    }

    /// Support `[½·4^j, 4^{j+1}]` of `ψ̂_j`; band `−1` is `[0, 1]`.
    pub fn band_support(&self, j: i64) -> (T, T) {
        if j < 0 {
            (T::zero(), T::one())
        } else {
            (T::lit(0.5 * 4f64.powi(j as i32)), T::lit(4f64.powi(j as i32 + 1)))
        }
    }

    pub fn phi_multiplier(&self) -> Multiplier<T> {
        let p = *self;
        Multiplier::real("phi_hat", (T::zero(), T::one()), T::one(), move |x| p.phi_hat(x))
    }

    pub fn psi_multiplier(&self) -> Multiplier<T> {
        let p = *self;
        Multiplier::real("psi_hat", (T::lit(0.5), T::lit(4.0)), T::one(), move |x| p.psi_hat(x))
    }

    /// Multiplier of band `j` (`−1` → `φ̂`).
    pub fn band_multiplier(&self, j: i64) -> Multiplier<T> {
        if j < 0 {
            return self.phi_multiplier();
        }
        let p = *self;
        let ju = j as usize;
        Multiplier::real(format!("psi_hat_{j}"), self.band_support(j), T::one(), move |x| p.psi_hat_j(ju, x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn plateaus_and_supports() {
        let p = build_partition::<f64>(6).unwrap();
        assert_eq!(p.phi_sq(0.3), 1.0);
        assert!((0..=6).all(|j| p.psi_hat_j(j, 0.3) == 0.0));
        assert_eq!(p.phi_hat(1.0), 0.0);
        for xi in [1e-3, 0.2, 0.5, 4.0, 5.0, 100.0] {
            assert_eq!(p.psi_hat(xi), 0.0, "xi={xi}");
        }
        assert!(p.psi_hat(1.0) > 0.99 && p.psi_hat(2.0) > 0.0);
        assert!(build_partition::<f64>(0).is_err());
        assert_eq!(SmoothPartition::<f64>::covering(4160.0).levels, 6);
        assert_eq!(p.covered_xi(), 8192.0);
    }

    #[test]
    fn cutoff_monotone() {
        let mut last = 1.0f64;
        for k in 0..=1000 {
            let v = cutoff(k as f64 / 1000.0 * 1.5);
            assert!(v <= last && (0.0..=1.0).contains(&v));
            last = v;
        }
    }

    proptest! {
        #[test]
        fn partition_of_unity(u in 0.0f64..1.0) {
            let p = build_partition::<f64>(6).unwrap();
            let xi = u * p.covered_xi();
            prop_assume!(xi > 0.0);
            prop_assert!((p.partition_sum(xi) - 1.0).abs() <= 1e-12);
        }

        #[test]
        fn values_in_unit_interval(xi in 0.0f64..100.0) {
            let p = build_partition::<f64>(3).unwrap();
            prop_assert!((0.0..=1.0).contains(&p.phi_hat(xi)));
            prop_assert!((0.0..=1.0).contains(&p.psi_hat(xi)));
        }
    }
}
