//! Transmission eigenvalues on the unit disk and ball as roots of the
//! explicit Bessel characteristic functions.

use serde::{Deserialize, Serialize};

use crate::params::NondimParams;
use crate::specfun::{bessel_zero, jv, phi, sph_j, BesselOrder, ZeroKind};
use crate::{Error, Result};

/// Samples used to count sign changes inside a bracket.
const SCAN_POINTS: usize = 512;
/// Fewest records accepted by [`asymptotic_fit`].
pub const MIN_FIT_RECORDS: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModeIndex {
    pub dim: u32,
    pub m: u32,
    pub s: u32,
}

impl ModeIndex {
    pub fn new(dim: u32, m: u32, s: u32) -> Result<Self> {
        if dim != 2 && dim != 3 {
            return Err(Error::Domain(format!("dimension must be 2 or 3, got {dim}")));
        }
        if m == 0 {
            return Err(Error::Domain("mode order m must be >= 1".into()));
        }
        if s == 0 {
            return Err(Error::Domain("branch index s must be >= 1".into()));
        }
        Ok(Self { dim, m, s })
    }

    /// Bessel order of the bracketing zeros: m in 2D, m + 1/2 in 3D.
    pub fn nu(&self) -> f64 {
        if self.dim == 2 {
            self.m as f64
        } else {
            self.m as f64 + 0.5
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigRecord {
    pub mode: ModeIndex,
    pub k: f64,
    pub bracket: (f64, f64),
    pub f_residual: f64,
    pub rela1_residual: f64,
    /// Number of sign changes of f seen inside the bracket; the smallest root is returned.
    pub crossings: usize,
    pub params: NondimParams,
}

fn check_k(k: f64) -> Result<()> {
    if k > 0.0 && k.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("wavenumber must be positive, got {k}")))
    }
}

/// f(k) = [-k^2 tau^2 + 2mu(m^2-1)] J_{m-1}(k) J_m(tau k)
///      + [k tau^2 m - 2mu(m^2-1)m/k + delta tau^2 k] J_m(k) J_m(tau k).
pub fn char_fn_2d(m: u32, k: f64, p: &NondimParams) -> Result<f64> {
    check_k(k)?;
    if m == 0 {
        return Err(Error::Domain("mode order m must be >= 1".into()));
    }
    Ok(f2(m, k, p))
}

fn f2(m: u32, k: f64, p: &NondimParams) -> f64 {
    let mf = m as f64;
    let (t, mu, d) = (p.tau, p.mu, p.delta);
    let jm1 = jv(mf - 1.0, k).0;
    let jm = jv(mf, k).0;
    let jt = jv(mf, t * k).0;
    let c2 = mf * mf - 1.0;
    (-k * k * t * t + 2.0 * mu * c2) * jm1 * jt + (k * t * t * mf - 2.0 * mu * c2 * mf / k + d * t * t * k) * jm * jt
}

/// f_{m+1/2}(k) = [4mu/(k sqrt tau) + tau^{3/2} - 2mu m(m+1)/(sqrt tau k)] J_{m+3/2}(k) J_{m+1/2}(tau k)
///   + [-4mu m/(k^2 sqrt tau) - m tau^{3/2} - 2mu m^2(m+1)/(sqrt tau k^2) + delta tau^{3/2}] J_{m+1/2}(k) J_{m+1/2}(tau k).
pub fn char_fn_3d(m: u32, k: f64, p: &NondimParams) -> Result<f64> {
    check_k(k)?;
    if m == 0 {
        return Err(Error::Domain("mode order m must be >= 1".into()));
    }
    Ok(f3(m, k, p))
}

fn f3(m: u32, k: f64, p: &NondimParams) -> f64 {
    let mf = m as f64;
    let (t, mu, d) = (p.tau, p.mu, p.delta);
    let st = t.sqrt();
    let t32 = t * st;
    let nu = mf + 0.5;
    let jn1 = jv(nu + 1.0, k).0;
    let jn = jv(nu, k).0;
    let jt = jv(nu, t * k).0;
    let a = 4.0 * mu / (k * st) + t32 - 2.0 * mu * mf * (mf + 1.0) / (st * k);
    let b = -4.0 * mu * mf / (k * k * st) - mf * t32 - 2.0 * mu * mf * mf * (mf + 1.0) / (st * k * k) + d * t32;
    a * jn1 * jt + b * jn * jt
}

/// Characteristic function for the given dimension.
pub fn char_fn(dim: u32, m: u32, k: f64, p: &NondimParams) -> Result<f64> {
    match dim {
        2 => char_fn_2d(m, k, p),
        3 => char_fn_3d(m, k, p),
        _ => Err(Error::Domain(format!("dimension must be 2 or 3, got {dim}"))),
    }
}

fn eval(dim: u32, m: u32, k: f64, p: &NondimParams) -> f64 {
    if dim == 2 {
        f2(m, k, p)
    } else {
        f3(m, k, p)
    }
}

/// (j_{nu,1}, j_{nu,2}) for the mode's Bessel order.
pub fn bracket(mode: &ModeIndex) -> (f64, f64) {
    let nu = BesselOrder::new(mode.nu()).expect("order is non-negative");
    let lo = bessel_zero(nu, ZeroKind::ZeroOfJ, 1).expect("s = 1");
    let hi = bessel_zero(nu, ZeroKind::ZeroOfJ, 2).expect("s = 2");
    (lo, hi)
}

/// Bisection with secant steps; keeps a sign-changing bracket and stops at
/// |hi - lo| <= rtol * |x|.
pub fn bracketed_root(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, rtol: f64) -> f64 {
    let mut flo = f(lo);
    let mut fhi = f(hi);
    if flo == 0.0 {
        return lo;
    }
    if fhi == 0.0 {
        return hi;
    }
    let mut force_bisect = false;
    for _ in 0..400 {
        let w = hi - lo;
        if w <= rtol * hi.abs().max(lo.abs()) {
            break;
        }
        let mut x = lo - flo * (hi - lo) / (fhi - flo);
        if force_bisect || !(x > lo + 0.01 * w && x < hi - 0.01 * w) || !x.is_finite() {
            x = 0.5 * (lo + hi);
        }
        let fx = f(x);
        if fx == 0.0 {
            return x;
        }
        if (fx < 0.0) == (flo < 0.0) {
            lo = x;
            flo = fx;
        } else {
            hi = x;
            fhi = fx;
        }
        force_bisect = hi - lo > 0.5 * w;
    }
    if flo.abs() < fhi.abs() {
        lo
    } else {
        hi
    }
}

/// Root of the characteristic function inside (j_{nu,1}, j_{nu,2}).
pub fn find_eigenvalue(mode: ModeIndex, p: &NondimParams) -> Result<EigRecord> {
    let mode = ModeIndex::new(mode.dim, mode.m, mode.s)?;
    p.require_tau_below_one()?;
    let (lo, hi) = bracket(&mode);
    if !(p.tau < lo / hi) {
        return Err(Error::Precondition(format!(
            "tau = {} must be below j1/j2 = {} for m = {}",
            p.tau,
            lo / hi,
            mode.m
        )));
    }
    let f = |k: f64| eval(mode.dim, mode.m, k, p);
    let (f_lo, f_hi) = (f(lo), f(hi));
    if !(f_lo * f_hi < 0.0) {
        return Err(Error::BracketFailure { lo, hi, f_lo, f_hi });
    }

    let h = (hi - lo) / SCAN_POINTS as f64;
    let mut crossings = Vec::new();
    let mut a = lo;
    let mut fa = f_lo;
    for i in 1..=SCAN_POINTS {
        let b = if i == SCAN_POINTS { hi } else { lo + h * i as f64 };
        let fb = if i == SCAN_POINTS { f_hi } else { f(b) };
        if (fa < 0.0) != (fb < 0.0) {
            crossings.push((a, b));
        }
        a = b;
        fa = fb;
    }
    let (a, b) = crossings[0];
    let k = bracketed_root(f, a, b, 1e-13);
    let mut rec = EigRecord {
        mode,
        k,
        bracket: (lo, hi),
        f_residual: f(k).abs(),
        rela1_residual: 0.0,
        crossings: crossings.len(),
        params: *p,
    };
    rec.rela1_residual = rela1_residual(&rec).residual;
    Ok(rec)
}

/// Least-squares fit of log(k/nu - 1) against log(nu): returns (slope, exp(intercept)).
pub fn asymptotic_fit(records: &[EigRecord]) -> Result<(f64, f64)> {
    if records.len() < MIN_FIT_RECORDS {
        return Err(Error::InsufficientData { needed: MIN_FIT_RECORDS, got: records.len() });
    }
    let pts: Vec<(f64, f64)> = records
        .iter()
        .map(|r| {
            let nu = r.mode.nu();
            (nu.ln(), (r.k / nu - 1.0).ln())
        })
        .collect();
    if pts.iter().any(|(_, y)| !y.is_finite()) {
        return Err(Error::Numerical("k/nu - 1 must be positive for the log fit".into()));
    }
    Ok(linear_fit(&pts))
}

fn linear_fit(pts: &[(f64, f64)]) -> (f64, f64) {
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let slope = sxy / sxx;
    (slope, (my - slope * mx).exp())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rela1 {
    pub residual: f64,
    /// Geometric decay rate q = tau e^{sqrt(1-tau^2)} / (1 + sqrt(1-tau^2)).
    pub q: f64,
}

/// 2D: |J_m(k_p) - k_p J'_m(k_p)|; 3D: |j_m(k_p) - k_p j'_m(k_p)|, with k_p = tau k.
pub fn rela1_residual(rec: &EigRecord) -> Rela1 {
    let kp = rec.params.tau * rec.k;
    let residual = if rec.mode.dim == 2 {
        let (j, jp) = jv(rec.mode.m as f64, kp);
        (j - kp * jp).abs()
    } else {
        let (j, jp) = sph_j(rec.mode.m, kp);
        (j - kp * jp).abs()
    };
    Rela1 { residual, q: decay_rate(rec.params.tau) }
}

pub fn decay_rate(tau: f64) -> f64 {
    phi(tau)
}
