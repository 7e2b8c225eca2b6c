use crate::scalar::Real;

/// Generalized Laguerre polynomial `L_k^{(order)}(x)` by the forward three-term recurrence.
///
/// Overflow surfaces as an infinite return value.
pub fn laguerre_eval<T: Real>(k: usize, order: usize, x: T) -> T {
    let a = T::from_usize_(order);
    let mut prev = T::one();
    if k == 0 {
        return prev;
    }
    let mut cur = T::one() + a - x;
    for j in 1..k {
        let jf = T::from_usize_(j);
        let next = ((T::lit(2.0) * jf + T::one() + a - x) * cur - (jf + a) * prev) / (jf + T::one());
        if !next.is_finite() {
            return T::infinity();
        }
        prev = cur;
        cur = next;
    }
    cur
}

/// `e^{-y/2} L_m^{(order)}(y)` for `m = 0..=m_max`.
///
/// The damping factor is carried through the recurrence, so large `y` underflows to zero
/// instead of producing `inf * 0`.
pub fn damped_laguerre_row<T: Real>(m_max: usize, order: usize, y: T) -> Vec<T> {
    let mut out = Vec::with_capacity(m_max + 1);
    damped_laguerre_into(m_max, order, y, &mut out);
    out
}

pub(crate) fn damped_laguerre_into<T: Real>(m_max: usize, order: usize, y: T, out: &mut Vec<T>) {
    out.clear();
    let a = T::from_usize_(order);
    let mut prev = (-y / T::lit(2.0)).exp();
    out.push(prev);
    if m_max == 0 {
        return;
    }
    let mut cur = prev * (T::one() + a - y);
    out.push(cur);
    for j in 1..m_max {
        let jf = T::from_usize_(j);
        let next = ((T::lit(2.0) * jf + T::one() + a - y) * cur - (jf + a) * prev) / (jf + T::one());
        prev = cur;
        cur = next;
        out.push(cur);
    }
}

/// Binomial coefficient `C(n, k)` as a float.
pub fn binomial<T: Real>(n: usize, k: usize) -> T {
    if k > n {
        return T::zero();
    }
    let k = k.min(n - k);
    let mut acc = T::one();
    for i in 0..k {
        acc = acc * T::from_usize_(n - i) / T::from_usize_(i + 1);
    }
    acc
}

/// `Γ(n)` for a positive integer argument.
pub fn gamma_int<T: Real>(n: usize) -> T {
    (1..n).fold(T::one(), |acc, k| acc * T::from_usize_(k))
}
