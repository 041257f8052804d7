//! Associated Legendre functions without the Condon-Shortley phase,
//! P_m^l(t) = (1 - t^2)^{l/2} d^l P_m / dt^l.

use crate::{Error, Result};

/// P_m^{|l|}(t) and dP_m^{|l|}(cos theta)/dtheta at t = cos theta.
pub fn assoc_legendre(m: u32, l: i32, t: f64) -> Result<(f64, f64)> {
    let el = l.unsigned_abs();
    if el > m {
        return Err(Error::Domain(format!("|l| = {el} exceeds m = {m}")));
    }
    if !(-1.0..=1.0).contains(&t) {
        return Err(Error::Domain(format!("Legendre argument must lie in [-1, 1], got {t}")));
    }
    Ok(legendre_with_theta_derivative(m, el, t))
}

/// P_m^l(t) for 0 <= l <= m by upward recurrence in the degree.
pub fn plm(m: u32, l: u32, t: f64) -> f64 {
    if l > m {
        return 0.0;
    }
    let s = (1.0 - t * t).max(0.0).sqrt();
    let mut pll = 1.0;
    for i in 1..=l {
        pll *= (2 * i - 1) as f64 * s;
    }
    if m == l {
        return pll;
    }
    let mut prev = pll;
    let mut cur = t * (2 * l + 1) as f64 * pll;
    for n in (l + 2)..=m {
        let next = ((2 * n - 1) as f64 * t * cur - (n + l - 1) as f64 * prev) / (n - l) as f64;
        prev = cur;
        cur = next;
    }
    cur
}

fn legendre_with_theta_derivative(m: u32, l: u32, t: f64) -> (f64, f64) {
    let p = plm(m, l, t);
    let s2 = 1.0 - t * t;
    let d = if s2 > 1e-20 {
        // (1 - t^2) dP_m^l/dt = (m + l) P_{m-1}^l - m t P_m^l, dtheta = -sin(theta) dt.
        let pm1 = if m == 0 { 0.0 } else { plm(m - 1, l, t) };
        -((m + l) as f64 * pm1 - m as f64 * t * p) / s2.sqrt()
    } else {
        pole_theta_derivative(m, l, t)
    };
    (p, d)
}

// At the poles only l = 1 has a nonzero theta derivative.
fn pole_theta_derivative(m: u32, l: u32, t: f64) -> f64 {
    if l != 1 {
        return 0.0;
    }
    // P_m^1 ~ sin(theta) P_m'(t), P_m'(+-1) = (+-1)^{m+1} m(m+1)/2; d sin(theta)/dtheta = cos(theta) = t.
    let sign = if t > 0.0 || m % 2 == 1 { 1.0 } else { -1.0 };
    t.signum() * sign * (m * (m + 1)) as f64 / 2.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_one_closed_form() {
        for &th in &[0.3_f64, 1.0, 2.5] {
            let (p, d) = assoc_legendre(1, 0, th.cos()).unwrap();
            assert!((p - th.cos()).abs() < 1e-15);
            assert!((d + th.sin()).abs() < 1e-15);
        }
    }

    #[test]
    fn known_values() {
        let t: f64 = 0.3;
        assert!((plm(2, 1, t) - 3.0 * t * (1.0 - t * t).sqrt()).abs() < 1e-14);
        assert!((plm(3, 3, t) - 15.0 * (1.0 - t * t).powf(1.5)).abs() < 1e-13);
    }

    #[test]
    fn domain_checks() {
        assert!(assoc_legendre(2, 3, 0.1).is_err());
        assert!(assoc_legendre(2, 1, 1.5).is_err());
    }
}
