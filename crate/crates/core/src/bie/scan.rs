//! Smallest-singular-value scans of A(k, delta) over a wavenumber grid.

use faer::Mat;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::assembly::assemble_block;
use super::curve::BoundaryCurve;
use super::spectral::{largest_singular, smallest_singular};
use crate::params::NondimParams;
use crate::{Error, Result};

const INV_PHI: f64 = 0.618_033_988_749_895;
const MAX_GOLDEN: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanOptions {
    /// Odd window length for the local median.
    pub window: usize,
    /// A local minimum is a candidate when it is below `prominence` times the window median.
    pub prominence: f64,
    /// Golden-section stops at bracket width <= rel_tol * k.
    pub rel_tol: f64,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self { window: 21, prominence: 0.2, rel_tol: 1e-6 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanMinimum {
    pub k: f64,
    pub sigma_min: f64,
    pub sigma_max: f64,
    pub refined: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanResult {
    pub k_grid: Vec<f64>,
    pub sigma_min: Vec<f64>,
    pub minima: Vec<ScanMinimum>,
}

/// sigma_min(A(k, delta)) on `steps` equispaced points of [lo, hi], with
/// prominent local minima refined by golden-section search.
pub fn sigma_min_scan(curve: &BoundaryCurve, p: &NondimParams, k_range: (f64, f64), steps: usize) -> Result<ScanResult> {
    sigma_min_scan_with(curve, p, k_range, steps, ScanOptions::default())
}

pub fn sigma_min_scan_with(
    curve: &BoundaryCurve,
    p: &NondimParams,
    k_range: (f64, f64),
    steps: usize,
    opts: ScanOptions,
) -> Result<ScanResult> {
    p.validate()?;
    scan_operator(|k| Ok(assemble_block(curve, k, p)?.matrix), k_range, steps, opts)
}

/// Scan of an arbitrary k-dependent square operator.
pub fn scan_operator<F>(build: F, k_range: (f64, f64), steps: usize, opts: ScanOptions) -> Result<ScanResult>
where
    F: Fn(f64) -> Result<Mat<Complex64>> + Sync,
{
    let (lo, hi) = k_range;
    if !(lo > 0.0 && hi > lo && hi.is_finite()) {
        return Err(Error::Domain(format!("k range must satisfy 0 < lo < hi, got ({lo}, {hi})")));
    }
    if steps < 2 {
        return Err(Error::Domain(format!("need at least 2 scan steps, got {steps}")));
    }
    if opts.window == 0 || !(opts.prominence > 0.0) || !(opts.rel_tol > 0.0) {
        return Err(Error::Domain("scan options must be positive".into()));
    }
    let dk = (hi - lo) / (steps - 1) as f64;
    let k_grid: Vec<f64> = (0..steps).map(|i| lo + dk * i as f64).collect();
    let eval = |k: f64| -> Result<f64> { Ok(smallest_singular(&build(k)?)?.sigma) };
    let sigma_min = k_grid.par_iter().map(|&k| eval(k)).collect::<Result<Vec<f64>>>()?;

    let half = opts.window / 2;
    let mut minima = Vec::new();
    for i in 1..steps.saturating_sub(1) {
        let s = sigma_min[i];
        if !(s < sigma_min[i - 1] && s < sigma_min[i + 1]) {
            continue;
        }
        let w = &sigma_min[i.saturating_sub(half)..(i + half + 1).min(steps)];
        if s >= opts.prominence * median(w) {
            continue;
        }
        let (k, _, refined) = golden_section(eval, k_grid[i - 1], k_grid[i + 1], opts.rel_tol)?;
        let a = build(k)?;
        minima.push(ScanMinimum { k, sigma_min: smallest_singular(&a)?.sigma, sigma_max: largest_singular(&a), refined });
    }
    Ok(ScanResult { k_grid, sigma_min, minima })
}

fn median(v: &[f64]) -> f64 {
    let mut s = v.to_vec();
    s.sort_by(f64::total_cmp);
    let m = s.len() / 2;
    if s.len() % 2 == 1 {
        s[m]
    } else {
        0.5 * (s[m - 1] + s[m])
    }
}

/// Minimizer of a unimodal `f` on [a, b]: (x, f(x), converged).
pub fn golden_section(f: impl Fn(f64) -> Result<f64>, mut a: f64, mut b: f64, rel_tol: f64) -> Result<(f64, f64, bool)> {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    for _ in 0..MAX_GOLDEN {
        if b - a <= rel_tol * 0.5 * (a + b).abs() {
            let (x, fx) = if fc < fd { (c, fc) } else { (d, fd) };
            return Ok((x, fx, true));
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d)?;
        }
    }
    let (x, fx) = if fc < fd { (c, fc) } else { (d, fd) };
    Ok((x, fx, false))
}
