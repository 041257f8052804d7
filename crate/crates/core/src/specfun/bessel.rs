//! Real-order Bessel functions of real argument.
//!
//! Steed's method: CF1 gives J'_nu/J_nu, downward recurrence carries the
//! unnormalized solution to an order mu in (-1/2, 1/2], where either Temme's
//! series (x < 2) or the complex continued fraction CF2 (x >= 2) supplies the
//! normalization through the Wronskian.

use std::f64::consts::PI;

use crate::{Error, Result};

const EPS: f64 = f64::EPSILON;
const FPMIN: f64 = f64::MIN_POSITIVE / f64::EPSILON;
const XMIN: f64 = 2.0;
const MAXIT: usize = 100_000;
const RESCALE: f64 = 1e200;

/// Non-negative Bessel order. Integer orders serve the 2D problem,
/// half-integer orders m + 1/2 the 3D one.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct BesselOrder(f64);

impl BesselOrder {
    pub fn new(nu: f64) -> Result<Self> {
        if nu.is_finite() && nu >= 0.0 {
            Ok(Self(nu))
        } else {
            Err(Error::Domain(format!("Bessel order must be finite and >= 0, got {nu}")))
        }
    }

    pub fn integer(m: u32) -> Self {
        Self(m as f64)
    }

    pub fn half_integer(m: u32) -> Self {
        Self(m as f64 + 0.5)
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_half_integer(self) -> bool {
        let f = self.0 - 0.5;
        f >= 0.0 && f.fract() == 0.0
    }
}

/// J_nu, J'_nu, Y_nu, Y'_nu at a single argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselJY {
    pub j: f64,
    pub jp: f64,
    pub y: f64,
    pub yp: f64,
}

/// J_nu(x) and dJ_nu/dx.
pub fn bessel_j(nu: BesselOrder, x: f64) -> Result<(f64, f64)> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("Bessel argument must be finite and >= 0, got {x}")));
    }
    Ok(jv(nu.0, x))
}

/// Unchecked J_nu(x), J'_nu(x) for nu >= 0, x >= 0.
pub fn jv(nu: f64, x: f64) -> (f64, f64) {
    if x == 0.0 {
        return at_origin(nu);
    }
    let r = steed(nu, x, false);
    (r.j, r.jp)
}

/// J_nu(x) only.
pub fn jv_value(nu: f64, x: f64) -> f64 {
    jv(nu, x).0
}

/// J, J', Y, Y' for nu >= 0, x > 0.
pub fn jyv(nu: f64, x: f64) -> BesselJY {
    debug_assert!(x > 0.0);
    steed(nu, x, true)
}

/// (J_0, J_1, Y_0, Y_1) at x > 0 from a single order-zero evaluation.
pub fn j01_y01(x: f64) -> (f64, f64, f64, f64) {
    let r = steed(0.0, x, true);
    (r.j, -r.jp, r.y, -r.yp)
}

fn at_origin(nu: f64) -> (f64, f64) {
    if nu == 0.0 {
        (1.0, 0.0)
    } else if nu == 1.0 {
        (0.0, 0.5)
    } else if nu < 1.0 {
        (0.0, f64::INFINITY)
    } else {
        (0.0, 0.0)
    }
}

fn chebev(c: &[f64], x: f64) -> f64 {
    let mut d = 0.0;
    let mut dd = 0.0;
    for &cj in c[1..].iter().rev() {
        let sv = d;
        d = 2.0 * x * d - dd + cj;
        dd = sv;
    }
    x * d - dd + 0.5 * c[0]
}

/// Gamma-function combinations for Temme's series, |mu| <= 1/2:
/// gam1 = (1/G(1-mu) - 1/G(1+mu)) / (2 mu), gam2 = (1/G(1-mu) + 1/G(1+mu)) / 2.
fn beschb(xmu: f64) -> (f64, f64, f64, f64) {
    const C1: [f64; 7] = [
        -1.142022680371168e0,
        6.5165112670737e-3,
        3.087090173086e-4,
        -3.4706269649e-6,
        6.9437664e-9,
        3.67795e-11,
        -1.356e-13,
    ];
    const C2: [f64; 8] = [
        1.843740587300905e0,
        -7.68528408447867e-2,
        1.2719271366546e-3,
        -4.9717367042e-6,
        -3.31261198e-8,
        2.423096e-10,
        -1.702e-13,
        -1.49e-15,
    ];
    let xx = 8.0 * xmu * xmu - 1.0;
    let gam1 = chebev(&C1, xx);
    let gam2 = chebev(&C2, xx);
    let gampl = gam2 - xmu * gam1;
    let gammi = gam2 + xmu * gam1;
    (gam1, gam2, gampl, gammi)
}

fn steed(nu: f64, x: f64, want_y: bool) -> BesselJY {
    let nl = (nu + 0.5) as usize;
    let xmu = nu - nl as f64;
    let xmu2 = xmu * xmu;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;
    let w = xi2 / PI;

    // CF1: J'_nu / J_nu, with the sign of the continuant tracked.
    let mut isign = 1.0;
    let mut h = (nu * xi).max(FPMIN);
    let mut d = 0.0;
    let mut c = h;
    for i in 1..MAXIT {
        let b = xi2 * (nu + i as f64);
        d = b - d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = b - 1.0 / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = c * d;
        h *= del;
        if d < 0.0 {
            isign = -isign;
        }
        if (del - 1.0).abs() <= EPS {
            break;
        }
    }

    // Downward recurrence from nu to mu on an unnormalized solution.
    let rjl1 = isign;
    let rjp1 = h * isign;
    let mut rjl = rjl1;
    let mut rjpl = rjp1;
    let mut nscale = 0u32;
    for l in (0..nl).rev() {
        let rjtemp = (xmu + (l + 1) as f64) * xi * rjl + rjpl;
        rjpl = (xmu + l as f64) * xi * rjtemp - rjl;
        rjl = rjtemp;
        if rjl.abs() > RESCALE {
            rjl /= RESCALE;
            rjpl /= RESCALE;
            nscale += 1;
        }
    }

    // norm maps the unnormalized (rjl, rjpl) at mu onto (J_mu, J'_mu).
    let (norm, rymu, ry1) = if x < XMIN {
        let x2 = 0.5 * x;
        let pimu = PI * xmu;
        let fct = if pimu.abs() < EPS { 1.0 } else { pimu / pimu.sin() };
        let d = -x2.ln();
        let e = xmu * d;
        let fct2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
        let (gam1, gam2, gampl, gammi) = beschb(xmu);
        let mut ff = 2.0 / PI * fct * (gam1 * e.cosh() + gam2 * fct2 * d);
        let ee = e.exp();
        let mut p = ee / (gampl * PI);
        let mut q = 1.0 / (ee * PI * gammi);
        let pimu2 = 0.5 * pimu;
        let fct3 = if pimu2.abs() < EPS { 1.0 } else { pimu2.sin() / pimu2 };
        let r = PI * pimu2 * fct3 * fct3;
        let mut c = 1.0;
        let dd = -x2 * x2;
        let mut sum = ff + r * q;
        let mut sum1 = p;
        for i in 1..MAXIT {
            let fi = i as f64;
            ff = (fi * ff + p + q) / (fi * fi - xmu2);
            c *= dd / fi;
            p /= fi - xmu;
            q /= fi + xmu;
            let del = c * (ff + r * q);
            sum += del;
            let del1 = c * p - fi * del;
            sum1 += del1;
            if del.abs() < (1.0 + sum.abs()) * EPS {
                break;
            }
        }
        let rymu = -sum;
        let ry1 = -sum1 * xi2;
        let rymup = xmu * xi * rymu - ry1;
        // J_mu = w / (Y'_mu - f Y_mu) with f = rjpl / rjl, written without dividing by rjl.
        let norm = w / (rymup * rjl - rjpl * rymu);
        (norm, rymu, ry1)
    } else {
        // CF2: p + iq = (J'_mu + iY'_mu) / (J_mu + iY_mu).
        let mut a = 0.25 - xmu2;
        let mut p = -0.5 * xi;
        let mut q = 1.0;
        let br = 2.0 * x;
        let mut bi = 2.0;
        let mut fct = a * xi / (p * p + q * q);
        let mut cr = br + q * fct;
        let mut ci = bi + p * fct;
        let mut den = br * br + bi * bi;
        let mut dr = br / den;
        let mut di = -bi / den;
        let mut dlr = cr * dr - ci * di;
        let mut dli = cr * di + ci * dr;
        let mut temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        for i in 1..MAXIT {
            a += (2 * i) as f64;
            bi += 2.0;
            dr = a * dr + br;
            di = a * di + bi;
            if dr.abs() + di.abs() < FPMIN {
                dr = FPMIN;
            }
            fct = a / (cr * cr + ci * ci);
            cr = br + cr * fct;
            ci = bi - ci * fct;
            if cr.abs() + ci.abs() < FPMIN {
                cr = FPMIN;
            }
            den = dr * dr + di * di;
            dr /= den;
            di /= -den;
            dlr = cr * dr - ci * di;
            dli = cr * di + ci * dr;
            temp = p * dlr - q * dli;
            q = p * dli + q * dlr;
            p = temp;
            if (dlr - 1.0).abs() + dli.abs() <= EPS {
                break;
            }
        }
        let pr = p * rjl - rjpl;
        let dd = pr.hypot(q * rjl);
        let norm = (w * q).sqrt() / dd;
        let rjmu = rjl * norm;
        let rymu = pr * norm / q;
        let rymup = p * rymu + q * rjmu;
        let ry1 = xmu * xi * rymu - rymup;
        (norm, rymu, ry1)
    };

    let mut j = rjl1 * norm;
    let mut jp = rjp1 * norm;
    for _ in 0..nscale {
        j /= RESCALE;
        jp /= RESCALE;
    }

    let (y, yp) = if want_y {
        let mut ymu = rymu;
        let mut y1 = ry1;
        for i in 1..=nl {
            let ytemp = (xmu + i as f64) * xi2 * y1 - ymu;
            ymu = y1;
            y1 = ytemp;
        }
        (ymu, nu * xi * ymu - y1)
    } else {
        (f64::NAN, f64::NAN)
    };

    BesselJY { j, jp, y, yp }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn origin_values() {
        assert_eq!(jv(0.0, 0.0), (1.0, 0.0));
        assert_eq!(jv(5.0, 0.0), (0.0, 0.0));
        assert_eq!(jv(1.0, 0.0), (0.0, 0.5));
    }

    #[test]
    fn half_order_closed_form() {
        for &x in &[0.3, 1.0, 1.9, 2.1, 7.5, 40.0] {
            let (j, jp) = jv(0.5, x);
            let s = (2.0 / (PI * x)).sqrt();
            assert!((j - s * x.sin()).abs() < 1e-14, "x={x}");
            let dexact = s * (x.cos() - x.sin() / (2.0 * x));
            assert!((jp - dexact).abs() < 1e-14, "x={x}");
        }
    }

    #[test]
    fn order_zero_values() {
        let (j0, j1, y0, y1) = j01_y01(1.0);
        assert!((j0 - 0.7651976865579666).abs() < 1e-15);
        assert!((j1 - 0.4400505857449335).abs() < 1e-15);
        assert!((y0 - 0.08825696421567696).abs() < 1e-15);
        assert!((y1 + 0.7812128213002887).abs() < 1e-15);
    }

    #[test]
    fn negative_argument_rejected() {
        assert!(bessel_j(BesselOrder::integer(1), -1.0).is_err());
        assert!(BesselOrder::new(-0.5).is_err());
    }

    #[test]
    fn large_order_small_argument_underflows_cleanly() {
        let (j, jp) = jv(300.0, 1.0);
        assert_eq!(j, 0.0);
        assert_eq!(jp, 0.0);
        let (j, _) = jv(300.0, 100.0);
        assert!(j > 0.0 && j < 1e-30 && j.is_finite());
    }
}
