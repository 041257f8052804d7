//! Fundamental solutions of the Helmholtz and Lame operators in the plane.
//!
//! The elastic kernel is written as Gamma = a(r) I + b(r) xh xh^T with
//! xh = (x - y)/r; a', b' are radial derivatives. Frequencies follow the
//! nondimensional medium (rho_e = 1): k_s = w / sqrt(mu), k_p = w / sqrt(lambda + 2 mu).

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::params::NondimParams;
use crate::specfun::j01_y01;
use crate::{Error, Result};

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };
const SERIES_CUTOFF: f64 = 4.0;

/// J_0, J_1, Y_0, Y_1 at one argument.
#[derive(Debug, Clone, Copy, Default)]
pub struct Bessel01 {
    pub j0: f64,
    pub j1: f64,
    pub y0: f64,
    pub y1: f64,
}

impl Bessel01 {
    pub fn at(z: f64) -> Self {
        if z == 0.0 {
            return Self { j0: 1.0, j1: 0.0, y0: f64::NEG_INFINITY, y1: f64::NEG_INFINITY };
        }
        let (j0, j1, y0, y1) = j01_y01(z);
        Self { j0, j1, y0, y1 }
    }

    pub fn h0(&self) -> Complex64 {
        Complex64::new(self.j0, self.y0)
    }

    pub fn h1(&self) -> Complex64 {
        Complex64::new(self.j1, self.y1)
    }
}

/// (H_1(z) + 2i/(pi z)) / z, finite at z = 0.
pub fn h1_regular(z: f64, b: &Bessel01) -> Complex64 {
    if z >= SERIES_CUTOFF {
        return (b.h1() + I * (2.0 / (PI * z))) / z;
    }
    let j1z = if z == 0.0 { 0.5 } else { b.j1 / z };
    // Y_1 = -2/(pi z) + (2/pi) log(z/2) J_1 - (z/2pi) sum (psi(k+1)+psi(k+2)) (-z^2/4)^k / (k!(k+1)!)
    let q = -0.25 * z * z;
    let mut term = 1.0;
    let mut psi1 = -EULER_GAMMA;
    let mut psi2 = 1.0 - EULER_GAMMA;
    let mut s = 0.0;
    for k in 0..60 {
        let add = (psi1 + psi2) * term;
        s += add;
        if add.abs() <= 1e-17 * s.abs() && k > 2 {
            break;
        }
        let kf = k as f64;
        term *= q / ((kf + 1.0) * (kf + 2.0));
        psi1 += 1.0 / (kf + 1.0);
        psi2 += 1.0 / (kf + 2.0);
    }
    let lg = if z == 0.0 { 0.0 } else { (0.5 * z).ln() };
    Complex64::new(j1z, 2.0 / PI * lg * j1z - s / (2.0 * PI))
}

/// Helmholtz fundamental solution: -(i/4) H_0(k|x-y|), or (1/2pi) log|x-y| at k = 0.
pub fn helmholtz_kernel(k: f64, x: [f64; 2], y: [f64; 2]) -> Result<Complex64> {
    if !(k >= 0.0) || !k.is_finite() {
        return Err(Error::Domain(format!("wavenumber must be >= 0, got {k}")));
    }
    let r = (x[0] - y[0]).hypot(x[1] - y[1]);
    if r == 0.0 {
        return Err(Error::CoincidentPoints);
    }
    if k == 0.0 {
        return Ok(Complex64::new(r.ln() / (2.0 * PI), 0.0));
    }
    Ok(-0.25 * I * Bessel01::at(k * r).h0())
}

/// Static Kelvin constants gamma_1, gamma_2.
pub fn kelvin_gammas(p: &NondimParams) -> (f64, f64) {
    let lp = p.lambda + 2.0 * p.mu;
    (0.5 * (1.0 / p.mu + 1.0 / lp), 0.5 * (1.0 / p.mu - 1.0 / lp))
}

/// Shear and compressional wavenumbers at elastic frequency w.
pub fn lame_wavenumbers(w: f64, p: &NondimParams) -> (f64, f64) {
    (w / p.mu.sqrt(), w / (p.lambda + 2.0 * p.mu).sqrt())
}

/// Radial profile (H_0, h1_regular) at one argument; the `log` variant keeps
/// only the coefficients of log r: (2i/pi) J_0 and (2i/pi) J_1(z)/z.
#[derive(Debug, Clone, Copy)]
pub struct Profile {
    pub h0: Complex64,
    pub reg: Complex64,
}

impl Profile {
    pub fn full(z: f64, b: &Bessel01) -> Self {
        Self { h0: b.h0(), reg: h1_regular(z, b) }
    }

    pub fn log(z: f64, b: &Bessel01) -> Self {
        let c = 2.0 / PI;
        let j1z = if z == 0.0 { 0.5 } else { b.j1 / z };
        Self { h0: I * (c * b.j0), reg: I * (c * j1z) }
    }
}

/// (a, a', b, b') of the time-harmonic Kelvin matrix at distance r.
/// `singular` is 1 for the full kernel and 0 for its log-coefficient part.
pub fn kelvin_ab(r: f64, ks: f64, kp: f64, w2: f64, s: Profile, p: Profile, singular: f64) -> [Complex64; 4] {
    let pre = I / (4.0 * w2);
    let (ks2, kp2) = (ks * ks, kp * kp);
    let qs = s.h0 - 2.0 * s.reg;
    let qp = p.h0 - 2.0 * p.reg;
    let d1 = ks2 * s.reg - kp2 * p.reg;
    let d1p = (ks2 * qs - kp2 * qp) / r;
    let sing = I * (singular * 2.0 / (PI * r));
    let a = pre * (-ks2 * s.h0 + d1);
    let ap = pre * (ks2 * ks2 * r * s.reg - ks2 * sing + d1p);
    let b = pre * (ks2 * s.h0 - kp2 * p.h0 - 2.0 * d1);
    let bp = pre * (-ks2 * ks2 * r * s.reg + kp2 * kp2 * r * p.reg + (ks2 - kp2) * sing - 2.0 * d1p);
    [a, ap, b, bp]
}

pub type Mat2 = [[Complex64; 2]; 2];

/// a I + b xh xh^T.
pub fn kelvin_matrix(a: Complex64, b: Complex64, xh: [f64; 2]) -> Mat2 {
    let mut m = [[Complex64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            m[i][j] = b * (xh[i] * xh[j]);
        }
        m[i][i] += a;
    }
    m
}

/// Traction lambda (div Gamma) nu + mu (grad Gamma + grad Gamma^T) nu of
/// a I + b xh xh^T, taken at the target with normal `nu`.
pub fn traction(ab: [Complex64; 4], r: f64, xh: [f64; 2], nu: [f64; 2], p: &NondimParams) -> Mat2 {
    let [_, ap, b, bp] = ab;
    let (lam, mu) = (p.lambda, p.mu);
    let cn = xh[0] * nu[0] + xh[1] * nu[1];
    let bor = b / r;
    let c_nx = lam * (ap + bp + bor) + mu * 2.0 * bor;
    let c_id = mu * (ap + bor) * cn;
    let c_xn = mu * (ap + bor);
    let c_xx = mu * (2.0 * bp - 4.0 * bor) * cn;
    let mut t = [[Complex64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            t[i][j] = c_nx * (nu[i] * xh[j]) + c_xn * (xh[i] * nu[j]) + c_xx * (xh[i] * xh[j]);
        }
        t[i][i] += c_id;
    }
    t
}

/// Kelvin matrix of the Lame operator mu Delta + (lambda + mu) grad div + w^2;
/// w = 0 gives the static kernel gamma_1/(2pi) log r I - gamma_2/(2pi) xh xh^T.
pub fn elastic_kernel(w: f64, x: [f64; 2], y: [f64; 2], p: &NondimParams) -> Result<Mat2> {
    if !(w >= 0.0) || !w.is_finite() {
        return Err(Error::Domain(format!("frequency must be >= 0, got {w}")));
    }
    let d = [x[0] - y[0], x[1] - y[1]];
    let r = d[0].hypot(d[1]);
    if r == 0.0 {
        return Err(Error::CoincidentPoints);
    }
    let xh = [d[0] / r, d[1] / r];
    if w == 0.0 {
        let (g1, g2) = kelvin_gammas(p);
        return Ok(kelvin_matrix(
            Complex64::new(g1 / (2.0 * PI) * r.ln(), 0.0),
            Complex64::new(-g2 / (2.0 * PI), 0.0),
            xh,
        ));
    }
    let (ks, kp) = lame_wavenumbers(w, p);
    let (bs, bp) = (Bessel01::at(ks * r), Bessel01::at(kp * r));
    let [a, _, b, _] = kelvin_ab(r, ks, kp, w * w, Profile::full(ks * r, &bs), Profile::full(kp * r, &bp), 1.0);
    Ok(kelvin_matrix(a, b, xh))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regular_part_is_continuous_across_the_cutoff() {
        let lo = h1_regular(SERIES_CUTOFF - 1e-9, &Bessel01::at(SERIES_CUTOFF - 1e-9));
        let hi = h1_regular(SERIES_CUTOFF, &Bessel01::at(SERIES_CUTOFF));
        assert!((lo - hi).norm() < 1e-9);
        let z = 0.7;
        let b = Bessel01::at(z);
        let direct = (b.h1() + I * (2.0 / (PI * z))) / z;
        assert!((h1_regular(z, &b) - direct).norm() < 1e-13);
    }

    #[test]
    fn static_limit_of_the_elastic_kernel() {
        let p = NondimParams::new(0.1, 0.5, 1.0 / 3.0).unwrap();
        let (x, y) = ([0.3, 0.1], [-0.2, 0.4]);
        let g0 = elastic_kernel(0.0, x, y, &p).unwrap();
        // Gamma^w - Gamma^0 tends to a constant multiple of I as w -> 0.
        let ga = elastic_kernel(1e-3, x, y, &p).unwrap();
        let gb = elastic_kernel(1e-3, [0.9, -0.3], [0.1, 0.2], &p).unwrap();
        let g0b = elastic_kernel(0.0, [0.9, -0.3], [0.1, 0.2], &p).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let d = (ga[i][j] - g0[i][j]) - (gb[i][j] - g0b[i][j]);
                assert!(d.norm() < 1e-4, "{i}{j}: {d}");
            }
        }
    }
}
