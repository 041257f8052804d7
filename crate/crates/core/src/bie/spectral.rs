//! Extreme singular values of dense complex matrices.

use faer::linalg::solvers::Solve;
use faer::Mat;
use num_complex::Complex64;

use crate::{Error, Result};

const BLOCK: usize = 6;
const MAX_SWEEPS: usize = 40;
const POWER_ITERS: usize = 200;

/// All singular values in decreasing order.
pub fn singular_values(a: &Mat<Complex64>) -> Result<Vec<f64>> {
    let mut s = a.singular_values().map_err(|e| Error::Numerical(format!("SVD failed: {e:?}")))?;
    s.sort_by(|x, y| y.total_cmp(x));
    Ok(s)
}

/// Number of singular values below `rel_tol * sigma_max`.
pub fn rank_deficiency(a: &Mat<Complex64>, rel_tol: f64) -> Result<usize> {
    let s = singular_values(a)?;
    let top = s.first().copied().unwrap_or(0.0);
    Ok(s.iter().filter(|&&v| v < rel_tol * top).count())
}

#[derive(Debug, Clone)]
pub struct SmallestSingular {
    pub sigma: f64,
    /// Unit right singular vector: |A v| = sigma.
    pub right: Vec<Complex64>,
}

fn start_block(n: usize, p: usize) -> Mat<Complex64> {
    // Deterministic, generic start vectors.
    Mat::from_fn(n, p, |i, j| {
        let t = (i as f64 + 1.0) * (0.7548776662466927 + j as f64 * 0.5698402909980532);
        Complex64::new((t * 12.9898).sin(), (t * 78.233).cos())
    })
}

fn orthonormalize(z: &Mat<Complex64>) -> Mat<Complex64> {
    z.qr().compute_thin_Q()
}

/// Smallest singular triplet by block inverse iteration on A^H A using one LU
/// factorization, with a Rayleigh-Ritz step on A V each sweep.
pub fn smallest_singular(a: &Mat<Complex64>) -> Result<SmallestSingular> {
    let n = a.nrows();
    if n == 0 || n != a.ncols() {
        return Err(Error::Numerical("smallest_singular needs a non-empty square matrix".into()));
    }
    let p = BLOCK.min(n);
    let lu = a.partial_piv_lu();
    let mut v = orthonormalize(&start_block(n, p));
    let mut prev = f64::INFINITY;
    let mut best = None;
    for _ in 0..MAX_SWEEPS {
        let y = lu.solve_adjoint(&v);
        let z = lu.solve(&y);
        if z.norm_l2().is_nan() || !z.norm_l2().is_finite() {
            // exactly singular at working precision
            break;
        }
        v = orthonormalize(&z);
        let av = a * &v;
        let svd = av.thin_svd().map_err(|e| Error::Numerical(format!("SVD failed: {e:?}")))?;
        let s = svd.S().column_vector();
        let (mut jmin, mut smin) = (0, f64::INFINITY);
        for j in 0..p {
            let val = s[j].re;
            if val < smin {
                smin = val;
                jmin = j;
            }
        }
        let w = svd.V().col(jmin);
        let right: Vec<Complex64> = (0..n).map(|i| (0..p).map(|c| v[(i, c)] * w[c]).sum()).collect();
        best = Some(SmallestSingular { sigma: smin, right });
        if (prev - smin).abs() <= 1e-12 * smin.max(f64::MIN_POSITIVE) {
            break;
        }
        prev = smin;
    }
    best.ok_or_else(|| Error::Numerical("matrix is singular to working precision".into()))
}

/// Largest singular value by power iteration on A^H A.
pub fn largest_singular(a: &Mat<Complex64>) -> f64 {
    let n = a.ncols();
    let mut x = start_block(n, 1);
    let nrm = x.norm_l2();
    x *= faer::Scale(Complex64::new(1.0 / nrm, 0.0));
    let mut sigma = 0.0;
    for _ in 0..POWER_ITERS {
        let y = a * &x;
        let s = y.norm_l2();
        let z = a.adjoint() * &y;
        let zn = z.norm_l2();
        if zn == 0.0 {
            return 0.0;
        }
        x = z * faer::Scale(Complex64::new(1.0 / zn, 0.0));
        if (s - sigma).abs() <= 1e-12 * s {
            return s;
        }
        sigma = s;
    }
    sigma
}
