use crate::scalar::Real;

/// Gauss–Legendre nodes and weights on [-1, 1], computed in `f64` by Newton iteration.
pub fn gauss_legendre_unit(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = nf * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

/// Gauss–Legendre rule mapped to [a, b].
pub fn gauss_legendre<T: Real>(n: usize, a: T, b: T) -> (Vec<T>, Vec<T>) {
    let (x, w) = gauss_legendre_unit(n);
    let half = (b - a) / T::lit(2.0);
    let mid = (b + a) / T::lit(2.0);
    let nodes = x.iter().map(|&xi| mid + half * T::lit(xi)).collect();
    let weights = w.iter().map(|&wi| half * T::lit(wi)).collect();
    (nodes, weights)
}

/// Trapezoid weights for a uniform grid of `n` nodes with spacing `h`.
pub fn trapezoid_weights<T: Real>(n: usize, h: T) -> Vec<T> {
    let mut w = vec![h; n];
    if n > 1 {
        w[0] = h / T::lit(2.0);
        w[n - 1] = h / T::lit(2.0);
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_polynomials_exactly() {
        for n in [1usize, 2, 5, 16, 64] {
            let (x, w) = gauss_legendre::<f64>(n, 0.0, 2.0);
            for deg in 0..(2 * n) {
                let q: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi.powi(deg as i32)).sum();
                let exact = 2f64.powi(deg as i32 + 1) / (deg as f64 + 1.0);
                assert!((q - exact).abs() <= 1e-12 * exact.max(1.0), "n={n} deg={deg}");
            }
        }
    }

    #[test]
    fn nodes_sorted_and_weights_positive() {
        let (x, w) = gauss_legendre::<f32>(33, -1.0, 1.0);
        assert!(x.windows(2).all(|p| p[0] < p[1]));
        assert!(w.iter().all(|&v| v > 0.0));
        assert!((w.iter().sum::<f32>() - 2.0).abs() < 1e-5);
    }
}
