//! Gauss-Legendre quadrature used by the natural Lorentz norm and the
//! half-space extension kernel.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::scalar::{cast, Scalar};

/// Nodes and weights of the `n`-point Gauss-Legendre rule on `[-1, 1]`,
/// computed once per `n` by Newton iteration on the Legendre recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    static CACHE: OnceLock<Mutex<HashMap<usize, (Vec<f64>, Vec<f64>)>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&n) {
        return hit.clone();
    }
    let computed = compute_gauss_legendre(n);
    cache.lock().unwrap().insert(n, computed.clone());
    computed
}

fn compute_gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Chebyshev-style initial guess for the i-th positive root.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_and_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
        let (_, d) = legendre_and_derivative(n, 0.0);
        weights[n / 2] = 2.0 / (d * d);
    }
    (nodes, weights)
}

fn legendre_and_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Integrates `f` over `[a, b]` with an `n`-point Gauss-Legendre rule.
pub fn integrate<T: Scalar>(a: T, b: T, n: usize, f: impl Fn(T) -> T) -> T {
    let (nodes, weights) = gauss_legendre(n);
    let half = (b - a) * cast(0.5);
    let mid = (b + a) * cast(0.5);
    let mut acc = T::zero();
    for (x, w) in nodes.iter().zip(weights.iter()) {
        acc = acc + cast::<T>(*w) * f(mid + half * cast(*x));
    }
    acc * half
}

/// Integrates `f` over `[a, b]` with `0 < a < b`, splitting the interval into
/// geometric panels of ratio at most 2 so that power-law integrands are
/// resolved to near machine precision by the per-panel rule.
pub fn integrate_geometric<T: Scalar>(a: T, b: T, n: usize, f: impl Fn(T) -> T) -> T {
    debug_assert!(a > T::zero() && b > a);
    let two = cast::<T>(2.0);
    let mut lo = a;
    let mut acc = T::zero();
    loop {
        let hi = if lo * two < b { lo * two } else { b };
        acc = acc + integrate(lo, hi, n, &f);
        if hi >= b {
            break;
        }
        lo = hi;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_two() {
        for n in [1, 2, 5, 32, 200] {
            let (_, w) = gauss_legendre(n);
            let s: f64 = w.iter().sum();
            assert!((s - 2.0).abs() < 1e-12, "n={n}: {s}");
        }
    }

    #[test]
    fn integrates_polynomials_exactly() {
        // 5-point rule is exact for degree <= 9.
        let val = integrate(0.0f64, 1.0, 5, |x| x.powi(9));
        assert!((val - 0.1).abs() < 1e-14);
    }

    #[test]
    fn geometric_panels_handle_power_laws() {
        // int_a^1 t^{-3/2} dt = 2(a^{-1/2} - 1)
        let a = 1e-6f64;
        let val = integrate_geometric(a, 1.0, 32, |t| t.powf(-1.5));
        let exact = 2.0 * (a.powf(-0.5) - 1.0);
        assert!((val - exact).abs() / exact < 1e-13);
    }
}
