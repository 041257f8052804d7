//! Interior fields from boundary densities and their localization on
//! centroid-scaled subdomains.

use std::f64::consts::PI;

use gauss_quad::GaussLegendre;
use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use super::assembly::assemble_block;
use super::curve::BoundaryCurve;
use super::kernels::{elastic_kernel, helmholtz_kernel};
use super::spectral::smallest_singular;
use crate::params::NondimParams;
use crate::{Error, Result};

const MAX_LEVEL: usize = 6;

/// Field values at interior points. Points near the curve are evaluated on
/// spectrally upsampled nodes; `near_boundary` marks points still closer than
/// two node spacings at the finest level, where the quadrature loses accuracy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldSamples {
    pub points: Vec<[f64; 2]>,
    pub v: Vec<Complex64>,
    pub u: Vec<[Complex64; 2]>,
    pub near_boundary: Vec<bool>,
}

impl FieldSamples {
    pub fn any_near_boundary(&self) -> bool {
        self.near_boundary.iter().any(|&b| b)
    }
}

/// v = S^k[phi_b], u = S^{k tau}[phi_e] by the trapezoidal rule on the nodes.
/// `density` is ordered (phi_b, phi_e,1, phi_e,2), each of length n.
pub fn reconstruct_fields(
    curve: &BoundaryCurve,
    k: f64,
    p: &NondimParams,
    density: &[Complex64],
    points: &[[f64; 2]],
) -> Result<FieldSamples> {
    let n = curve.n;
    if density.len() != 3 * n {
        return Err(Error::Domain(format!("density must have length 3n = {}, got {}", 3 * n, density.len())));
    }
    if !(k > 0.0) {
        return Err(Error::Domain(format!("wavenumber must be positive, got {k}")));
    }
    let w = k * p.tau;
    let need = points.iter().map(|&x| curve.distance_to_nodes(x)).fold(f64::INFINITY, f64::min);
    let mut levels = vec![(curve.clone(), density.to_vec())];
    while levels.len() <= MAX_LEVEL && need < 2.0 * levels.last().map_or(0.0, |l| l.0.node_spacing()) {
        let factor = 1 << levels.len();
        let fine = curve.refined(factor)?;
        let dens = (0..3).flat_map(|c| trig_upsample(&density[c * n..(c + 1) * n], n * factor)).collect();
        levels.push((fine, dens));
    }
    let finest = &levels[levels.len() - 1].0;
    if let Some(q) = points.iter().find(|&&q| !finest.contains(q)) {
        return Err(Error::Domain(format!("point {q:?} is not inside the curve")));
    }
    let vals = points
        .par_iter()
        .map(|&x| -> Result<(Complex64, [Complex64; 2], bool)> {
            let mut level = &levels[0];
            for l in &levels {
                level = l;
                if l.0.distance_to_nodes(x) >= 2.0 * l.0.node_spacing() {
                    break;
                }
            }
            let (c, dens) = level;
            let nf = c.n;
            let h = 2.0 * PI / nf as f64;
            let mut v = Complex64::new(0.0, 0.0);
            let mut u = [Complex64::new(0.0, 0.0); 2];
            for j in 0..nf {
                let wj = h * c.jac[j];
                let y = c.x[j];
                v += helmholtz_kernel(k, x, y)? * dens[j] * wj;
                let g = elastic_kernel(w, x, y, p)?;
                for a in 0..2 {
                    u[a] += (g[a][0] * dens[nf + j] + g[a][1] * dens[2 * nf + j]) * wj;
                }
            }
            Ok((v, u, c.distance_to_nodes(x) < 2.0 * c.node_spacing()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FieldSamples {
        points: points.to_vec(),
        v: vals.iter().map(|t| t.0).collect(),
        u: vals.iter().map(|t| t.1).collect(),
        near_boundary: vals.iter().map(|t| t.2).collect(),
    })
}

/// Trigonometric interpolant of equispaced periodic samples, resampled at
/// `m >= v.len()` points; `v.len()` must be even.
pub fn trig_upsample(v: &[Complex64], m: usize) -> Vec<Complex64> {
    let n = v.len();
    let mut buf = v.to_vec();
    let mut planner = FftPlanner::new();
    planner.plan_fft_forward(n).process(&mut buf);
    let mut out = vec![Complex64::new(0.0, 0.0); m];
    let scale = 1.0 / n as f64;
    for j in 0..n / 2 {
        out[j] = buf[j] * scale;
    }
    for j in n / 2 + 1..n {
        out[m - n + j] = buf[j] * scale;
    }
    if m == n {
        out[n / 2] = buf[n / 2] * scale;
    } else {
        out[n / 2] = buf[n / 2] * (0.5 * scale);
        out[m - n / 2] = buf[n / 2] * (0.5 * scale);
    }
    planner.plan_fft_inverse(m).process(&mut out);
    out
}

/// Quadrature grid x = c + rho (x(t) - c) over a star-shaped domain, with the
/// radial panels split at rho = eps so that eps * Omega is integrated exactly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolarGrid {
    pub center: [f64; 2],
    pub eps: f64,
    pub points: Vec<[f64; 2]>,
    pub weights: Vec<f64>,
    /// True for points of eps * Omega.
    pub inner: Vec<bool>,
}

impl PolarGrid {
    /// `n_rho` Gauss-Legendre nodes on each radial panel, one ray per curve node.
    pub fn new(curve: &BoundaryCurve, eps: f64, n_rho: usize) -> Result<Self> {
        if !(eps > 0.0 && eps < 1.0) {
            return Err(Error::Domain(format!("eps must lie in (0, 1), got {eps}")));
        }
        let n_rho = std::num::NonZeroUsize::new(n_rho)
            .ok_or_else(|| Error::Domain("need at least one radial node".into()))?;
        let c = curve.centroid();
        if !curve.is_star_shaped_about(c) {
            return Err(Error::Precondition("curve is not star-shaped about its centroid".into()));
        }
        let gl = GaussLegendre::new(n_rho);
        let mut radial = Vec::new();
        for (a, b, inner) in [(0.0, eps, true), (eps, 1.0, false)] {
            for (x, w) in gl.nodes().zip(gl.weights()) {
                let half = 0.5 * (b - a);
                radial.push((a + half * (x + 1.0), half * w, inner));
            }
        }
        let h = 2.0 * PI / curve.n as f64;
        let mut grid = PolarGrid { center: c, eps, points: Vec::new(), weights: Vec::new(), inner: Vec::new() };
        for j in 0..curve.n {
            let (x, d) = (curve.x[j], curve.d1[j]);
            let rel = [x[0] - c[0], x[1] - c[1]];
            let cross = rel[0] * d[1] - rel[1] * d[0];
            for &(rho, wr, inner) in &radial {
                grid.points.push([c[0] + rho * rel[0], c[1] + rho * rel[1]]);
                grid.weights.push(wr * h * rho * cross);
                grid.inner.push(inner);
            }
        }
        Ok(grid)
    }

    /// Quadrature of a density over Omega; used as an area check.
    pub fn integrate(&self, f: &[f64]) -> f64 {
        self.weights.iter().zip(f).map(|(w, v)| w * v).sum()
    }
}

/// ||f||_{L2(eps Omega)} / ||f||_{L2(Omega)} from pointwise |f|^2 on the grid.
pub fn localization_ratio_general(grid: &PolarGrid, intensity: &[f64]) -> Result<f64> {
    if intensity.len() != grid.points.len() {
        return Err(Error::Domain(format!(
            "expected {} field samples, got {}",
            grid.points.len(),
            intensity.len()
        )));
    }
    let mut inner = 0.0;
    let mut total = 0.0;
    for ((&w, &f), &is_inner) in grid.weights.iter().zip(intensity).zip(&grid.inner) {
        total += w * f;
        if is_inner {
            inner += w * f;
        }
    }
    if !(total > 0.0) {
        return Err(Error::Numerical("field has zero norm on the domain".into()));
    }
    Ok((inner / total).sqrt())
}

/// Localization of the near-null mode of A(k, delta) on a general curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModeLocalization {
    pub k: f64,
    pub eps: f64,
    pub sigma_min: f64,
    pub acoustic_ratio: f64,
    pub elastic_ratio: f64,
    pub near_boundary_points: usize,
}

/// Reconstructs (v, u) from the smallest right singular vector of A(k, delta)
/// on a polar grid and returns both localization ratios at `eps`.
pub fn mode_localization(curve: &BoundaryCurve, k: f64, p: &NondimParams, eps: f64, n_rho: usize) -> Result<ModeLocalization> {
    let a = assemble_block(curve, k, p)?;
    let triplet = smallest_singular(&a.matrix)?;
    let grid = PolarGrid::new(curve, eps, n_rho)?;
    let f = reconstruct_fields(curve, k, p, &triplet.right, &grid.points)?;
    let iv: Vec<f64> = f.v.iter().map(|z| z.norm_sqr()).collect();
    let iu: Vec<f64> = f.u.iter().map(|u| u[0].norm_sqr() + u[1].norm_sqr()).collect();
    Ok(ModeLocalization {
        k,
        eps,
        sigma_min: triplet.sigma,
        acoustic_ratio: localization_ratio_general(&grid, &iv)?,
        elastic_ratio: localization_ratio_general(&grid, &iu)?,
        near_boundary_points: f.near_boundary.iter().filter(|&&b| b).count(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bie::curve::CurveKind;

    #[test]
    fn upsampling_reproduces_trig_polynomials() {
        let f = |t: f64| Complex64::new((3.0 * t).cos() + 0.5 * (7.0 * t).sin(), (2.0 * t).sin());
        let n = 16;
        let v: Vec<_> = (0..n).map(|j| f(2.0 * PI * j as f64 / n as f64)).collect();
        let up = trig_upsample(&v, 64);
        for (j, z) in up.iter().enumerate() {
            assert!((z - f(2.0 * PI * j as f64 / 64.0)).norm() < 1e-13);
        }
    }

    #[test]
    fn grid_integrates_area() {
        let kite = BoundaryCurve::new(CurveKind::Kite, 128).unwrap();
        let g = PolarGrid::new(&kite, 0.5, 8).unwrap();
        let ones = vec![1.0; g.points.len()];
        let area = g.integrate(&ones);
        assert!((area - kite.signed_area()).abs() < 1e-3 * area);
        let inner: Vec<f64> = g.inner.iter().map(|&b| if b { 1.0 } else { 0.0 }).collect();
        assert!((g.integrate(&inner) - 0.25 * area).abs() < 1e-10 * area);
    }
}
