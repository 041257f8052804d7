//! Radial transmission eigenfunctions, their L2 norms on concentric balls,
//! and boundary-localization ratios.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::params::NondimParams;
use crate::quad;
use crate::radial::{EigRecord, ModeIndex};
use crate::specfun::{assoc_legendre, jv, phi, sph_j};
use crate::{Error, Result};

const QUAD_RTOL: f64 = 1e-12;
const ORIGIN_RADIUS: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialEigenpair {
    pub mode: ModeIndex,
    pub k: f64,
    pub k_p: f64,
    pub alpha: Complex64,
    pub beta: Complex64,
    /// Azimuthal index, |l| <= m; only used in 3D.
    pub l: i32,
    pub params: NondimParams,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Field {
    Acoustic,
    Elastic,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LocalizationReport {
    pub mode: ModeIndex,
    pub k: f64,
    pub eps: f64,
    pub field: Field,
    /// ||.||_{L2(Omega_eps)} / ||.||_{L2(Omega)}.
    pub ratio: f64,
    /// Right-hand side of the theoretical bound with C = 1.
    pub envelope: f64,
    /// True when `envelope` bounds ratio^2 rather than ratio.
    pub envelope_bounds_square: bool,
}

impl LocalizationReport {
    /// Measured quantity on the same footing as the envelope, divided by it.
    pub fn envelope_constant(&self) -> f64 {
        let measured = if self.envelope_bounds_square { self.ratio * self.ratio } else { self.ratio };
        measured / self.envelope
    }
}

/// beta = alpha k_p k J'_m(k_p) / J'_m(k) in 2D, alpha k j'_m(k_p) / j'_m(k) in 3D.
pub fn build_eigenpair(rec: &EigRecord, alpha: Complex64, l: i32) -> Result<RadialEigenpair> {
    if alpha == Complex64::new(0.0, 0.0) {
        return Err(Error::Domain("amplitude alpha must be nonzero".into()));
    }
    let m = rec.mode.m;
    if rec.mode.dim == 3 && l.unsigned_abs() > m {
        return Err(Error::Domain(format!("|l| = {} exceeds m = {m}", l.unsigned_abs())));
    }
    let k = rec.k;
    let kp = rec.params.tau * k;
    let (num, den) = if rec.mode.dim == 2 {
        (kp * k * jv(m as f64, kp).1, jv(m as f64, k).1)
    } else {
        (k * sph_j(m, kp).1, sph_j(m, k).1)
    };
    if den.abs() < 1e-13 {
        return Err(Error::DegenerateCoupling(den.abs()));
    }
    Ok(RadialEigenpair {
        mode: rec.mode,
        k,
        k_p: kp,
        alpha,
        beta: alpha * (num / den),
        l: if rec.mode.dim == 3 { l } else { 0 },
        params: rec.params,
    })
}

/// (u, v) at a Cartesian point with |x| <= 1; u has `dim` components.
pub fn eval_fields(pair: &RadialEigenpair, point: &[f64]) -> Result<(Vec<Complex64>, Complex64)> {
    let dim = pair.mode.dim as usize;
    if point.len() != dim {
        return Err(Error::Domain(format!("expected a {dim}-component point, got {}", point.len())));
    }
    let r = point.iter().map(|x| x * x).sum::<f64>().sqrt();
    if r > 1.0 + 1e-12 {
        return Err(Error::Domain(format!("point lies outside the unit ball (|x| = {r})")));
    }
    Ok(if dim == 2 { eval_2d(pair, point, r) } else { eval_3d(pair, point, r) })
}

fn eval_2d(pair: &RadialEigenpair, x: &[f64], r: f64) -> (Vec<Complex64>, Complex64) {
    let m = pair.mode.m;
    let mf = m as f64;
    let i = Complex64::i();
    if r < ORIGIN_RADIUS {
        let u = if m == 1 {
            let c = pair.alpha * (0.5 * pair.k_p);
            vec![c, c * i]
        } else {
            vec![Complex64::new(0.0, 0.0); 2]
        };
        return (u, Complex64::new(0.0, 0.0));
    }
    let th = x[1].atan2(x[0]);
    let e = Complex64::from_polar(1.0, mf * th);
    let (jp_val, jp_der) = jv(mf, pair.k_p * r);
    let ur = pair.alpha * e * (pair.k_p * jp_der);
    let ut = pair.alpha * e * i * (mf / r * jp_val);
    let (c, s) = (th.cos(), th.sin());
    let u = vec![ur * c - ut * s, ur * s + ut * c];
    let v = pair.beta * e * jv(mf, pair.k * r).0;
    (u, v)
}

fn eval_3d(pair: &RadialEigenpair, x: &[f64], r: f64) -> (Vec<Complex64>, Complex64) {
    let m = pair.mode.m;
    let l = pair.l;
    let el = l.unsigned_abs();
    let i = Complex64::i();
    if r < ORIGIN_RADIUS {
        let zero = Complex64::new(0.0, 0.0);
        let u = if m == 1 {
            let c = pair.alpha / 3.0;
            match l {
                0 => vec![zero, zero, c],
                1 => vec![c, c * i, zero],
                _ => vec![c, -c * i, zero],
            }
        } else {
            vec![zero; 3]
        };
        return (u, zero);
    }
    let ct = (x[2] / r).clamp(-1.0, 1.0);
    let st = (1.0 - ct * ct).max(0.0).sqrt();
    let ph = x[1].atan2(x[0]);
    let (cp, sp) = (ph.cos(), ph.sin());
    let e = Complex64::from_polar(1.0, l as f64 * ph);
    let (p, dp) = assoc_legendre(m, l, ct).expect("|l| <= m checked at construction");
    let p_over_sin = if st > 1e-12 {
        p / st
    } else if el == 1 {
        let sign = if ct > 0.0 || m % 2 == 1 { 1.0 } else { -1.0 };
        sign * (m * (m + 1)) as f64 / 2.0
    } else {
        0.0
    };
    let kp = pair.k_p;
    let (j, jd) = sph_j(m, kp * r);
    let ur = pair.alpha * e * (jd * p);
    let ut = pair.alpha * e * (j / (kp * r) * dp);
    let uf = pair.alpha * e * i * (l as f64 * j / (kp * r) * p_over_sin);
    let rh = [st * cp, st * sp, ct];
    let th = [ct * cp, ct * sp, -st];
    let fh = [-sp, cp, 0.0];
    let u = (0..3).map(|c| ur * rh[c] + ut * th[c] + uf * fh[c]).collect();
    let v = pair.beta * e * (sph_j(m, pair.k * r).0 * p);
    (u, v)
}

fn factorial_ratio(m: u32, l: u32) -> f64 {
    ((m - l + 1)..=(m + l)).map(|i| i as f64).product()
}

/// Angular factor 2 pi (m+|l|)! / ((m-|l|)! (m+1/2)) of the 3D norms.
pub fn angular_factor_3d(m: u32, l: i32) -> f64 {
    2.0 * std::f64::consts::PI * factorial_ratio(m, l.unsigned_abs()) / (m as f64 + 0.5)
}

fn breaks(eps: f64, turning: f64) -> Vec<f64> {
    let mut b = vec![0.0];
    for t in [0.5 * turning, turning] {
        if t > 0.0 && t < eps {
            b.push(t);
        }
    }
    b.push(eps);
    b
}

/// Radial integrals without amplitude or angular factors:
/// 2D (int_0^eps r J_m^2(kr), int_0^eps k_p^2 r J'_m^2(k_p r) + m^2/r J_m^2(k_p r));
/// 3D (int_0^eps r^2 j_m^2(kr), int_0^eps r^2 [j'_m^2(k_p r) + m(m+1) j_m^2(k_p r)/(k_p r)^2]).
pub fn radial_integrals(mode: &ModeIndex, k: f64, k_p: f64, eps: f64) -> (f64, f64) {
    let m = mode.m;
    let mf = m as f64;
    if mode.dim == 2 {
        let iv = quad::integrate(|r| r * jv(mf, k * r).0.powi(2), &breaks(eps, mf / k), QUAD_RTOL);
        let iu = quad::integrate(
            |r| {
                let (j, jd) = jv(mf, k_p * r);
                k_p * k_p * r * jd * jd + mf * mf / r * j * j
            },
            &breaks(eps, mf / k_p),
            QUAD_RTOL,
        );
        (iv, iu)
    } else {
        let nu = mf + 0.5;
        let iv = quad::integrate(|r| (r * sph_j(m, k * r).0).powi(2), &breaks(eps, nu / k), QUAD_RTOL);
        let c = mf * (mf + 1.0) / (k_p * k_p);
        let iu = quad::integrate(
            |r| {
                let (j, jd) = sph_j(m, k_p * r);
                r * r * jd * jd + c * j * j
            },
            &breaks(eps, nu / k_p),
            QUAD_RTOL,
        );
        (iv, iu)
    }
}

/// (||v||^2, ||u||^2) over the ball of radius eps.
pub fn l2_norms(pair: &RadialEigenpair, eps: f64) -> Result<(f64, f64)> {
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(Error::Domain(format!("eps must lie in (0, 1], got {eps}")));
    }
    let (iv, iu) = radial_integrals(&pair.mode, pair.k, pair.k_p, eps);
    let (a2, b2) = (pair.alpha.norm_sqr(), pair.beta.norm_sqr());
    let ang = if pair.mode.dim == 2 { 2.0 * std::f64::consts::PI } else { angular_factor_3d(pair.mode.m, pair.l) };
    Ok((ang * b2 * iv, ang * a2 * iu))
}

/// Ratio of norms on Omega_eps and Omega with the matching theoretical envelope.
pub fn localization_ratio(pair: &RadialEigenpair, eps: f64, field: Field) -> Result<LocalizationReport> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::Domain(format!("eps must lie in (0, 1), got {eps}")));
    }
    let (ve, ue) = radial_integrals(&pair.mode, pair.k, pair.k_p, eps);
    let (v1, u1) = radial_integrals(&pair.mode, pair.k, pair.k_p, 1.0);
    let ratio = match field {
        Field::Acoustic => (ve / v1).sqrt(),
        Field::Elastic => (ue / u1).sqrt(),
    };
    let (envelope, squared) = envelope(&pair.mode, pair.k, pair.params.tau, eps, field);
    Ok(LocalizationReport {
        mode: pair.mode,
        k: pair.k,
        eps,
        field,
        ratio,
        envelope,
        envelope_bounds_square: squared,
    })
}

/// Theoretical envelope with C = 1 and the worst-case mean-value points eta_1 = eps, eta_2 = 1.
pub fn envelope(mode: &ModeIndex, k: f64, tau: f64, eps: f64, field: Field) -> (f64, bool) {
    let nu = mode.nu();
    match field {
        Field::Acoustic => (nu.powf(1.0 / 3.0) / (1.0 - eps * eps).sqrt() * phi(eps).powf(2.0 * nu), true),
        Field::Elastic => {
            let shrink = phi(tau * k * eps / nu) / phi((tau * k / nu).min(1.0));
            if mode.dim == 2 {
                (eps * nu.powf(5.0 / 3.0) * shrink.powf(2.0 * nu - 1.0), false)
            } else {
                (nu.powf(2.0 / 3.0) * shrink.powf(2.0 * mode.m as f64), false)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorial_ratio_small() {
        assert_eq!(factorial_ratio(5, 2), 7.0 * 6.0 * 5.0 * 4.0);
        assert_eq!(factorial_ratio(5, 0), 1.0);
    }

    #[test]
    fn break_points_are_sorted() {
        assert_eq!(breaks(0.5, 0.8), vec![0.0, 0.4, 0.5]);
        assert_eq!(breaks(1.0, 0.8), vec![0.0, 0.4, 0.8, 1.0]);
    }
}
