//! Adaptive Gauss-Legendre quadrature on panels.

use std::num::NonZeroUsize;
use std::sync::OnceLock;

use gauss_quad::GaussLegendre;

const ORDER: usize = 20;
const MAX_DEPTH: u32 = 40;

fn rule() -> &'static GaussLegendre {
    static RULE: OnceLock<GaussLegendre> = OnceLock::new();
    RULE.get_or_init(|| GaussLegendre::new(NonZeroUsize::new(ORDER).unwrap()))
}

/// Integral of `f` over [breaks[0], breaks[last]] with a panel boundary at
/// every interior break point, to relative accuracy `rtol` of the total.
pub fn integrate(f: impl Fn(f64) -> f64, breaks: &[f64], rtol: f64) -> f64 {
    assert!(breaks.len() >= 2, "need at least one panel");
    let g = rule();
    let coarse: Vec<f64> = breaks.windows(2).map(|w| g.integrate(w[0], w[1], &f)).collect();
    let scale = coarse.iter().map(|v| v.abs()).sum::<f64>();
    let atol = rtol * scale;
    breaks
        .windows(2)
        .zip(coarse)
        .map(|(w, whole)| refine(&f, w[0], w[1], whole, atol.max(f64::MIN_POSITIVE), rtol, 0))
        .sum()
}

fn refine(f: &impl Fn(f64) -> f64, a: f64, b: f64, whole: f64, atol: f64, rtol: f64, depth: u32) -> f64 {
    let g = rule();
    let m = 0.5 * (a + b);
    let left = g.integrate(a, m, f);
    let right = g.integrate(m, b, f);
    let sum = left + right;
    let err = (sum - whole).abs();
    if err <= atol.max(rtol * sum.abs()) || depth >= MAX_DEPTH {
        return sum;
    }
    refine(f, a, m, left, 0.5 * atol, rtol, depth + 1) + refine(f, m, b, right, 0.5 * atol, rtol, depth + 1)
}

/// Composite Simpson rule with `n` (even) subintervals.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let n = n + n % 2;
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + h * i as f64);
    }
    s * h / 3.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_and_oscillatory() {
        let v = integrate(|x| x.powi(7), &[0.0, 1.0], 1e-14);
        assert!((v - 0.125).abs() < 1e-15);
        let v = integrate(|x| (50.0 * x).sin().powi(2), &[0.0, 0.3, 1.0], 1e-13);
        let exact = 0.5 - (100.0f64).sin() / 200.0;
        assert!((v - exact).abs() < 1e-13);
    }

    #[test]
    fn simpson_cubic_exact() {
        let v = simpson(|x| x * x * x, 0.0, 2.0, 10);
        assert!((v - 4.0).abs() < 1e-13);
    }
}
