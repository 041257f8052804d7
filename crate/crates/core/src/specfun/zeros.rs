//! Positive zeros of J_nu and J'_nu.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::bessel::{jv, BesselOrder};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ZeroKind {
    ZeroOfJ,
    ZeroOfJPrime,
}

/// First `count` zeros of J_nu or J'_nu.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroTable {
    pub nu: f64,
    pub kind: ZeroKind,
    pub zeros: Vec<f64>,
}

impl ZeroTable {
    pub fn new(nu: BesselOrder, kind: ZeroKind, count: usize) -> Result<Self> {
        let zeros = match kind {
            ZeroKind::ZeroOfJ => zeros_of_j(nu.value(), count),
            ZeroKind::ZeroOfJPrime => zeros_of_jprime(nu.value(), count),
        };
        Ok(Self { nu: nu.value(), kind, zeros })
    }
}

/// Magnitude bounds of the s-th negative zero of Ai,
/// |a_s| = [3pi/8 (4s-1)]^{2/3} (1 + U_s), U_s in [0, 0.13 / (3pi/8 (4s-1.051))].
pub fn airy_zero_bounds(s: u32) -> (f64, f64) {
    let s = s as f64;
    let t = 3.0 * PI / 8.0 * (4.0 * s - 1.0);
    let base = t.powf(2.0 / 3.0);
    let upsilon_max = 0.13 / (3.0 * PI / 8.0 * (4.0 * s - 1.051));
    (base, base * (1.0 + upsilon_max))
}

/// Two-sided bound on j_{nu,s}:
/// nu(1 + |a_s| (2 nu^2)^{-1/3}) < j_{nu,s} < nu(1 + |a_s| (2 nu^2)^{-1/3} + (3 a_s^2/20)(2/nu^4)^{1/3}).
/// The lower end uses the smallest admissible |a_s|, the upper end the largest.
pub fn jms_bounds(nu: f64, s: u32) -> (f64, f64) {
    let (a_lo, a_hi) = airy_zero_bounds(s);
    let c = (2.0 * nu * nu).powf(-1.0 / 3.0);
    let lo = nu * (1.0 + a_lo * c);
    let hi = nu * (1.0 + a_hi * c + 0.15 * a_hi * a_hi * (2.0 / nu.powi(4)).powf(1.0 / 3.0));
    (lo, hi)
}

fn mcmahon(nu: f64, s: u32) -> f64 {
    let beta = (s as f64 + 0.5 * nu - 0.25) * PI;
    let mu = 4.0 * nu * nu;
    let e = 8.0 * beta;
    beta - (mu - 1.0) / e - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * e * e * e)
}

fn initial_guess(nu: f64, s: u32) -> f64 {
    if s <= 3 && nu > 0.0 {
        let (lo, hi) = jms_bounds(nu, s);
        0.5 * (lo + hi)
    } else {
        mcmahon(nu, s)
    }
}

/// Safeguarded Newton on [a, b] where g(a), g(b) have opposite signs.
fn newton_bisect(g: impl Fn(f64) -> (f64, f64), mut a: f64, mut b: f64, x0: f64) -> f64 {
    let mut ga = g(a).0;
    let mut x = if x0 > a && x0 < b { x0 } else { 0.5 * (a + b) };
    for _ in 0..200 {
        let (gx, dgx) = g(x);
        if gx == 0.0 {
            return x;
        }
        if (gx < 0.0) == (ga < 0.0) {
            a = x;
            ga = gx;
        } else {
            b = x;
        }
        let step = gx / dgx;
        let mut xn = x - step;
        if !(xn > a && xn < b) || !step.is_finite() {
            xn = 0.5 * (a + b);
        }
        if (xn - x).abs() <= 4.0 * f64::EPSILON * x.abs() || (b - a) <= 4.0 * f64::EPSILON * b {
            return xn;
        }
        x = xn;
    }
    x
}

fn jfun(nu: f64) -> impl Fn(f64) -> (f64, f64) {
    move |x| jv(nu, x)
}

fn jpfun(nu: f64) -> impl Fn(f64) -> (f64, f64) {
    move |x| {
        let (j, jp) = jv(nu, x);
        (jp, -jp / x - (1.0 - nu * nu / (x * x)) * j)
    }
}

fn zeros_of_j(nu: f64, count: usize) -> Vec<f64> {
    // j_{nu,1} > nu and consecutive zeros are more than 2.4 apart, so a unit
    // grid from nu sees every sign change exactly once.
    let mut out = Vec::with_capacity(count);
    let mut a = nu.max(1e-3);
    let mut fa = jv(nu, a).0;
    while out.len() < count {
        let b = a + 1.0;
        let fb = jv(nu, b).0;
        if fb == 0.0 {
            out.push(b);
            a = b + 1e-9;
            fa = jv(nu, a).0;
            continue;
        }
        if (fa < 0.0) != (fb < 0.0) {
            let s = out.len() as u32 + 1;
            out.push(newton_bisect(jfun(nu), a, b, initial_guess(nu, s)));
        }
        a = b;
        fa = fb;
    }
    out
}

fn zeros_of_jprime(nu: f64, count: usize) -> Vec<f64> {
    if nu == 0.0 {
        // J'_0 = -J_1; the zero at the origin is not counted.
        return zeros_of_j(1.0, count);
    }
    let jz = zeros_of_j(nu, count);
    let mut out = Vec::with_capacity(count);
    let mut lo = nu;
    for &hi in &jz {
        // J'_nu > 0 at nu and alternates in sign at successive zeros of J_nu.
        out.push(newton_bisect(jpfun(nu), lo, hi, 0.5 * (lo + hi)));
        lo = hi;
    }
    out
}

/// The s-th positive zero of J_nu or J'_nu (s >= 1).
pub fn bessel_zero(nu: BesselOrder, kind: ZeroKind, s: u32) -> Result<f64> {
    if s == 0 {
        return Err(Error::Domain("zero index s must be >= 1".into()));
    }
    let zs = match kind {
        ZeroKind::ZeroOfJ => zeros_of_j(nu.value(), s as usize),
        ZeroKind::ZeroOfJPrime => zeros_of_jprime(nu.value(), s as usize),
    };
    Ok(zs[s as usize - 1])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_zeros_of_j0() {
        let t = ZeroTable::new(BesselOrder::integer(0), ZeroKind::ZeroOfJ, 3).unwrap();
        let expected = [2.404825557695773, 5.520078110286311, 8.653727912911013];
        for (z, e) in t.zeros.iter().zip(expected) {
            assert!((z - e).abs() < 1e-12);
        }
    }

    #[test]
    fn first_zeros_of_j1_prime() {
        let z = bessel_zero(BesselOrder::integer(1), ZeroKind::ZeroOfJPrime, 1).unwrap();
        assert!((z - 1.841183781340659).abs() < 1e-12);
    }

    #[test]
    fn airy_interval_contains_true_zero() {
        let ai = [2.338107410459767, 4.087_949_444_130_97, 5.520559828095551];
        for (s, a) in ai.iter().enumerate() {
            let (lo, hi) = airy_zero_bounds(s as u32 + 1);
            assert!(lo <= *a && *a <= hi, "s={}", s + 1);
        }
    }

    #[test]
    fn zero_index_must_be_positive() {
        assert!(bessel_zero(BesselOrder::integer(2), ZeroKind::ZeroOfJ, 0).is_err());
    }
}
