//! Nystrom discretization of the single-layer and Neumann-Poincare operators.
//!
//! Log-singular kernels are split as M1 log(4 sin^2((t - s)/2)) + M2 and
//! integrated with Kress' weights; the Cauchy part of the Lame traction,
//! c J / (2 tan((s - t)/2)) with J the quarter-turn, uses the periodic
//! principal-value rule on alternate nodes. Vector densities are stored
//! component-major: (phi_1 at all nodes, phi_2 at all nodes).

use std::f64::consts::PI;

use faer::Mat;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::curve::BoundaryCurve;
use super::kernels::{
    kelvin_ab, kelvin_gammas, kelvin_matrix, lame_wavenumbers, traction, Bessel01, Mat2, Profile, EULER_GAMMA,
};
use crate::params::NondimParams;
use crate::{Error, Result};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };
const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Pairwise geometry and periodic quadrature weights for one curve.
pub struct Nodes<'a> {
    pub curve: &'a BoundaryCurve,
    n: usize,
    h: f64,
    r: Vec<f64>,
    xh: Vec<[f64; 2]>,
    /// Kress weights R_{|i-j|}.
    kress: Vec<f64>,
    /// log(4 sin^2(pi d / n)), d = (i - j) mod n.
    log4: Vec<f64>,
    /// Principal-value weights (2pi/n) cot(pi d / n) for odd d = (j - i) mod n.
    pv: Vec<f64>,
    /// cot(pi d / n) / 2 for d = (j - i) mod n.
    half_cot: Vec<f64>,
    psi: Vec<f64>,
    xdx: Vec<f64>,
}

impl<'a> Nodes<'a> {
    pub fn new(curve: &'a BoundaryCurve) -> Self {
        let n = curve.n;
        let nh = n / 2;
        let h = 2.0 * PI / n as f64;
        let mut r = vec![0.0; n * n];
        let mut xh = vec![[0.0; 2]; n * n];
        for i in 0..n {
            for j in 0..n {
                let idx = i * n + j;
                if i == j {
                    let d = curve.d1[i];
                    xh[idx] = [d[0] / curve.jac[i], d[1] / curve.jac[i]];
                    continue;
                }
                let d = [curve.x[i][0] - curve.x[j][0], curve.x[i][1] - curve.x[j][1]];
                let rr = d[0].hypot(d[1]);
                r[idx] = rr;
                xh[idx] = [d[0] / rr, d[1] / rr];
            }
        }
        let kress = (0..n)
            .map(|d| {
                let t = h * d as f64;
                let s: f64 = (1..nh).map(|m| (m as f64 * t).cos() / m as f64).sum();
                -(2.0 * PI / nh as f64) * s - PI / (nh * nh) as f64 * (nh as f64 * t).cos()
            })
            .collect();
        let log4 = (0..n)
            .map(|d| if d == 0 { 0.0 } else { (4.0 * (PI * d as f64 / n as f64).sin().powi(2)).ln() })
            .collect();
        let cot = |d: usize| 1.0 / (PI * d as f64 / n as f64).tan();
        let pv = (0..n).map(|d| if d % 2 == 1 { h * cot(d) } else { 0.0 }).collect();
        let half_cot = (0..n).map(|d| if d == 0 { 0.0 } else { 0.5 * cot(d) }).collect();
        let psi = (0..n)
            .map(|i| {
                let (d2, nu, j) = (curve.d2[i], curve.normal[i], curve.jac[i]);
                -(d2[0] * nu[0] + d2[1] * nu[1]) / (2.0 * j * j)
            })
            .collect();
        let xdx = (0..n)
            .map(|i| {
                let (d1, d2, j) = (curve.d1[i], curve.d2[i], curve.jac[i]);
                (d1[0] * d2[0] + d1[1] * d2[1]) / (2.0 * j * j)
            })
            .collect();
        Nodes { curve, n, h, r, xh, kress, log4, pv, half_cot, psi, xdx }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn diff(&self, i: usize, j: usize) -> usize {
        (i + self.n - j) % self.n
    }

    /// Bessel values at kappa * r for every off-diagonal pair (symmetric).
    fn bessel_table(&self, kappa: f64) -> Vec<Bessel01> {
        let n = self.n;
        let rows: Vec<Vec<Bessel01>> = (0..n)
            .into_par_iter()
            .map(|i| ((i + 1)..n).map(|j| Bessel01::at(kappa * self.r[i * n + j])).collect())
            .collect();
        let mut t = vec![Bessel01::default(); n * n];
        for (i, row) in rows.into_iter().enumerate() {
            for (off, b) in row.into_iter().enumerate() {
                let j = i + 1 + off;
                t[i * n + j] = b;
                t[j * n + i] = b;
            }
        }
        t
    }
}

fn scalar_from_rows(rows: Vec<Vec<Complex64>>) -> Mat<Complex64> {
    let n = rows.len();
    Mat::from_fn(n, n, |i, j| rows[i][j])
}

fn block_from_rows(rows: Vec<Vec<Mat2>>) -> Mat<Complex64> {
    let n = rows.len();
    Mat::from_fn(2 * n, 2 * n, |a, b| rows[a % n][b % n][a / n][b / n])
}

fn check_wavenumber(k: f64) -> Result<()> {
    if k >= 0.0 && k.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("wavenumber must be finite and >= 0, got {k}")))
    }
}

/// S^k: -(i/4) H_0(k|x - y|) (k > 0) or (1/2pi) log|x - y| (k = 0).
pub fn helmholtz_single_layer(nodes: &Nodes, k: f64) -> Result<Mat<Complex64>> {
    check_wavenumber(k)?;
    let (n, h, c) = (nodes.n, nodes.h, nodes.curve);
    let table = if k > 0.0 { nodes.bessel_table(k) } else { Vec::new() };
    let rows = (0..n)
        .into_par_iter()
        .map(|i| {
            (0..n)
                .map(|j| {
                    let jj = c.jac[j];
                    let d = nodes.diff(i, j);
                    if i == j {
                        let m1 = jj / (4.0 * PI);
                        let m2 = if k > 0.0 {
                            (-0.25 * I + ((0.5 * k * jj).ln() + EULER_GAMMA) / (2.0 * PI)) * jj
                        } else {
                            Complex64::new(jj.ln() / (2.0 * PI) * jj, 0.0)
                        };
                        return nodes.kress[0] * m1 + h * m2;
                    }
                    let idx = i * n + j;
                    let r = nodes.r[idx];
                    let (m1, kern) = if k > 0.0 {
                        let b = &table[idx];
                        (Complex64::new(b.j0 / (4.0 * PI) * jj, 0.0), -0.25 * I * b.h0() * jj)
                    } else {
                        (Complex64::new(jj / (4.0 * PI), 0.0), Complex64::new(r.ln() / (2.0 * PI) * jj, 0.0))
                    };
                    nodes.kress[d] * m1 + h * (kern - m1 * nodes.log4[d])
                })
                .collect()
        })
        .collect();
    Ok(scalar_from_rows(rows))
}

/// K^{k,*}: normal derivative at the target of the Helmholtz kernel.
pub fn helmholtz_np(nodes: &Nodes, k: f64) -> Result<Mat<Complex64>> {
    check_wavenumber(k)?;
    let (n, h, c) = (nodes.n, nodes.h, nodes.curve);
    let table = if k > 0.0 { nodes.bessel_table(k) } else { Vec::new() };
    let rows = (0..n)
        .into_par_iter()
        .map(|i| {
            let nu = c.normal[i];
            (0..n)
                .map(|j| {
                    let jj = c.jac[j];
                    if i == j {
                        return Complex64::new(h * nodes.psi[i] * jj / (2.0 * PI), 0.0);
                    }
                    let idx = i * n + j;
                    let (r, xh) = (nodes.r[idx], nodes.xh[idx]);
                    let cn = xh[0] * nu[0] + xh[1] * nu[1];
                    if k == 0.0 {
                        return Complex64::new(h * cn / (2.0 * PI * r) * jj, 0.0);
                    }
                    let d = nodes.diff(i, j);
                    let b = &table[idx];
                    let m1 = Complex64::new(-k / (4.0 * PI) * b.j1 * cn * jj, 0.0);
                    let kern = 0.25 * I * k * b.h1() * cn * jj;
                    nodes.kress[d] * m1 + h * (kern - m1 * nodes.log4[d])
                })
                .collect()
        })
        .collect();
    Ok(scalar_from_rows(rows))
}

fn outer(xh: [f64; 2]) -> [[f64; 2]; 2] {
    [[xh[0] * xh[0], xh[0] * xh[1]], [xh[1] * xh[0], xh[1] * xh[1]]]
}

fn combine(terms: &[(Complex64, [[f64; 2]; 2])]) -> Mat2 {
    let mut m = [[ZERO; 2]; 2];
    for &(c, t) in terms {
        for a in 0..2 {
            for b in 0..2 {
                m[a][b] += c * t[a][b];
            }
        }
    }
    m
}

fn scale(m: Mat2, s: f64) -> Mat2 {
    m.map(|row| row.map(|v| v * s))
}

fn sub(a: Mat2, b: Mat2) -> Mat2 {
    let mut m = a;
    for i in 0..2 {
        for j in 0..2 {
            m[i][j] -= b[i][j];
        }
    }
    m
}

fn add_scaled(acc: &mut Mat2, m: Mat2, s: f64) {
    for i in 0..2 {
        for j in 0..2 {
            acc[i][j] += m[i][j] * s;
        }
    }
}

const ID: [[f64; 2]; 2] = [[1.0, 0.0], [0.0, 1.0]];
/// Quarter-turn [[0, 1], [-1, 0]].
const QT: [[f64; 2]; 2] = [[0.0, 1.0], [-1.0, 0.0]];

/// Elastic single layer with the Kelvin matrix at frequency w (w = 0 static).
pub fn elastic_single_layer(nodes: &Nodes, w: f64, p: &NondimParams) -> Result<Mat<Complex64>> {
    check_wavenumber(w)?;
    let (n, h, c) = (nodes.n, nodes.h, nodes.curve);
    let (g1, g2) = kelvin_gammas(p);
    let (ks, kp) = lame_wavenumbers(w, p);
    let w2 = w * w;
    let (ts, tp) = if w > 0.0 { (nodes.bessel_table(ks), nodes.bessel_table(kp)) } else { (Vec::new(), Vec::new()) };
    let ls = (0.5 * ks).ln();
    let lp = (0.5 * kp).ln();
    let (ks2, kp2) = (ks * ks, kp * kp);
    let rows = (0..n)
        .into_par_iter()
        .map(|i| {
            (0..n)
                .map(|j| {
                    let jj = c.jac[j];
                    let idx = i * n + j;
                    let xx = outer(nodes.xh[idx]);
                    if i == j {
                        let m1 = scale(combine(&[(Complex64::new(g1 / (4.0 * PI), 0.0), ID)]), jj);
                        let m2 = if w > 0.0 {
                            let c0 = ks2 / w2 * (-0.25 * I + (ls + EULER_GAMMA) / (2.0 * PI));
                            let cxx = (0.25 * I * (ks2 - kp2)
                                - (ks2 * (ls + EULER_GAMMA) - kp2 * (lp + EULER_GAMMA)) / (2.0 * PI))
                                / w2;
                            let ca = (0.125 * I * (ks2 - kp2) - (ks2 * ls - kp2 * lp) / (4.0 * PI)
                                + (ks2 - kp2) * (1.0 - 2.0 * EULER_GAMMA) / (8.0 * PI))
                                / w2;
                            let anti = [[1.0 - 2.0 * xx[0][0], -2.0 * xx[0][1]], [-2.0 * xx[1][0], 1.0 - 2.0 * xx[1][1]]];
                            combine(&[
                                (c0 + g1 / (2.0 * PI) * jj.ln(), ID),
                                (cxx, xx),
                                (ca, anti),
                            ])
                        } else {
                            combine(&[
                                (Complex64::new(g1 / (2.0 * PI) * jj.ln(), 0.0), ID),
                                (Complex64::new(-g2 / (2.0 * PI), 0.0), xx),
                            ])
                        };
                        let mut e = scale(m1, nodes.kress[0]);
                        add_scaled(&mut e, m2, h * jj);
                        return e;
                    }
                    let d = nodes.diff(i, j);
                    let r = nodes.r[idx];
                    let (kern, m1) = if w > 0.0 {
                        let (bs, bp) = (&ts[idx], &tp[idx]);
                        let [a, _, b, _] =
                            kelvin_ab(r, ks, kp, w2, Profile::full(ks * r, bs), Profile::full(kp * r, bp), 1.0);
                        let [al, _, bl, _] =
                            kelvin_ab(r, ks, kp, w2, Profile::log(ks * r, bs), Profile::log(kp * r, bp), 0.0);
                        (kelvin_matrix(a, b, nodes.xh[idx]), scale(kelvin_matrix(al, bl, nodes.xh[idx]), 0.5))
                    } else {
                        (
                            combine(&[
                                (Complex64::new(g1 / (2.0 * PI) * r.ln(), 0.0), ID),
                                (Complex64::new(-g2 / (2.0 * PI), 0.0), xx),
                            ]),
                            combine(&[(Complex64::new(g1 / (4.0 * PI), 0.0), ID)]),
                        )
                    };
                    let (kern, m1) = (scale(kern, jj), scale(m1, jj));
                    let m2 = sub(kern, scale(m1, nodes.log4[d]));
                    let mut e = scale(m1, nodes.kress[d]);
                    add_scaled(&mut e, m2, h);
                    e
                })
                .collect()
        })
        .collect();
    Ok(block_from_rows(rows))
}

/// Elastic Neumann-Poincare operator: traction at the target of the Kelvin matrix.
pub fn elastic_np(nodes: &Nodes, w: f64, p: &NondimParams) -> Result<Mat<Complex64>> {
    check_wavenumber(w)?;
    let (n, h, c) = (nodes.n, nodes.h, nodes.curve);
    let (_, g2) = kelvin_gammas(p);
    let (ks, kp) = lame_wavenumbers(w, p);
    let w2 = w * w;
    let cc = p.mu / ((p.lambda + 2.0 * p.mu) * 2.0 * PI);
    let cxx = 4.0 * p.mu * g2 / (2.0 * PI);
    let (ts, tp) = if w > 0.0 { (nodes.bessel_table(ks), nodes.bessel_table(kp)) } else { (Vec::new(), Vec::new()) };
    let rows = (0..n)
        .into_par_iter()
        .map(|i| {
            let nu = c.normal[i];
            (0..n)
                .map(|j| {
                    let jj = c.jac[j];
                    let idx = i * n + j;
                    let dp = (j + n - i) % n;
                    let cauchy = combine(&[(Complex64::new(cc * nodes.pv[dp], 0.0), QT)]);
                    if i == j {
                        let xx = outer(nodes.xh[idx]);
                        let m2 = combine(&[
                            (Complex64::new(cc * nodes.psi[i] * jj, 0.0), ID),
                            (Complex64::new(cxx * nodes.psi[i] * jj, 0.0), xx),
                            (Complex64::new(cc * nodes.xdx[i], 0.0), QT),
                        ]);
                        let mut e = cauchy;
                        add_scaled(&mut e, m2, h);
                        return e;
                    }
                    let d = nodes.diff(i, j);
                    let (r, xh) = (nodes.r[idx], nodes.xh[idx]);
                    let xx = outer(xh);
                    let cn = xh[0] * nu[0] + xh[1] * nu[1];
                    let t = if w > 0.0 {
                        let (bs, bp) = (&ts[idx], &tp[idx]);
                        let ab = kelvin_ab(r, ks, kp, w2, Profile::full(ks * r, bs), Profile::full(kp * r, bp), 1.0);
                        traction(ab, r, xh, nu, p)
                    } else {
                        let xn = [[xh[0] * nu[0], xh[0] * nu[1]], [xh[1] * nu[0], xh[1] * nu[1]]];
                        let nx = [[nu[0] * xh[0], nu[0] * xh[1]], [nu[1] * xh[0], nu[1] * xh[1]]];
                        let skew = [[xn[0][0] - nx[0][0], xn[0][1] - nx[0][1]], [xn[1][0] - nx[1][0], xn[1][1] - nx[1][1]]];
                        combine(&[
                            (Complex64::new(cc * cn / r, 0.0), ID),
                            (Complex64::new(cc / r, 0.0), skew),
                            (Complex64::new(cxx * cn / r, 0.0), xx),
                        ])
                    };
                    let mut m2 = sub(scale(t, jj), combine(&[(Complex64::new(cc * nodes.half_cot[dp], 0.0), QT)]));
                    let mut e = cauchy;
                    if w > 0.0 {
                        let (bs, bp) = (&ts[idx], &tp[idx]);
                        let abl = kelvin_ab(r, ks, kp, w2, Profile::log(ks * r, bs), Profile::log(kp * r, bp), 0.0);
                        let m1 = scale(traction(abl, r, xh, nu, p), 0.5 * jj);
                        m2 = sub(m2, scale(m1, nodes.log4[d]));
                        add_scaled(&mut e, m1, nodes.kress[d]);
                    }
                    add_scaled(&mut e, m2, h);
                    e
                })
                .collect()
        })
        .collect();
    Ok(block_from_rows(rows))
}

/// Discretized 2x2 block operator A(k, delta) acting on (phi_b, phi_e), size 3n.
#[derive(Debug, Clone)]
pub struct BlockOperator {
    pub k: f64,
    pub params: NondimParams,
    pub n: usize,
    pub matrix: Mat<Complex64>,
}

/// Serializable summary of a block operator (the matrix itself is not emitted).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BlockShape {
    pub k: f64,
    pub n: usize,
    pub size: usize,
}

impl BlockOperator {
    pub fn shape(&self) -> BlockShape {
        BlockShape { k: self.k, n: self.n, size: self.matrix.nrows() }
    }
}

/// [-I/2 + K^{k,*}, -k^2 nu . S^{k tau}; delta tau^2 nu S^k, -I/2 + K^{k tau,*}].
pub fn assemble_block(curve: &BoundaryCurve, k: f64, p: &NondimParams) -> Result<BlockOperator> {
    if !(k > 0.0) || !k.is_finite() {
        return Err(Error::Domain(format!("wavenumber must be positive, got {k}")));
    }
    p.validate()?;
    let nodes = Nodes::new(curve);
    let n = curve.n;
    let w = k * p.tau;
    let sk = helmholtz_single_layer(&nodes, k)?;
    let kk = helmholtz_np(&nodes, k)?;
    let se = elastic_single_layer(&nodes, w, p)?;
    let ke = elastic_np(&nodes, w, p)?;
    let nu = &curve.normal;
    let cpl = p.delta * p.tau * p.tau;
    let k2 = k * k;
    let matrix = Mat::from_fn(3 * n, 3 * n, |a, b| {
        let diag = if a == b { Complex64::new(-0.5, 0.0) } else { ZERO };
        match (a < n, b < n) {
            (true, true) => diag + kk[(a, b)],
            (true, false) => {
                let bb = b - n;
                -k2 * (nu[a][0] * se[(a, bb)] + nu[a][1] * se[(n + a, bb)])
            }
            (false, true) => {
                let (comp, i) = ((a - n) / n, (a - n) % n);
                cpl * nu[i][comp] * sk[(i, b)]
            }
            (false, false) => diag + ke[(a - n, b - n)],
        }
    });
    Ok(BlockOperator { k, params: *p, n, matrix })
}

/// -I/2 + K^{0,*} (acoustic) and -I/2 + K^{0,*}_Lame (elastic) of the static problem.
pub fn static_np_operators(curve: &BoundaryCurve, p: &NondimParams) -> Result<(Mat<Complex64>, Mat<Complex64>)> {
    let nodes = Nodes::new(curve);
    let mut a = helmholtz_np(&nodes, 0.0)?;
    let mut e = elastic_np(&nodes, 0.0, p)?;
    for i in 0..a.nrows() {
        a[(i, i)] -= 0.5;
    }
    for i in 0..e.nrows() {
        e[(i, i)] -= 0.5;
    }
    Ok((a, e))
}
