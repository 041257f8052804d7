//! Smooth closed parametrized curves sampled at equispaced parameter nodes.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum CurveKind {
    Circle { radius: f64 },
    Ellipse { a: f64, b: f64 },
    /// x(t) = (cos t + 0.65 cos 2t - 0.65, 1.5 sin t).
    Kite,
    /// Samples (x1, x2) at uniform parameter values t_j = t_0 + 2 pi j / M,
    /// interpolated by trigonometric polynomials.
    Custom { t0: f64, x1: Vec<f64>, x2: Vec<f64> },
}

impl CurveKind {
    /// Parses whitespace- or comma-separated rows `t x1 x2`; `#` starts a comment.
    pub fn from_table(text: &str) -> Result<Self> {
        let mut t = Vec::new();
        let mut x1 = Vec::new();
        let mut x2 = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let vals: Vec<f64> = line
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<f64>().map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1))))
                .collect::<Result<_>>()?;
            if vals.len() != 3 {
                return Err(Error::Parse(format!("line {}: expected 3 columns, got {}", lineno + 1, vals.len())));
            }
            t.push(vals[0]);
            x1.push(vals[1]);
            x2.push(vals[2]);
        }
        let m = t.len();
        if m < 8 {
            return Err(Error::Parse(format!("need at least 8 samples, got {m}")));
        }
        let h = 2.0 * PI / m as f64;
        for (j, &tj) in t.iter().enumerate() {
            if (tj - t[0] - h * j as f64).abs() > 1e-8 {
                return Err(Error::Parse(format!(
                    "parameter values must be uniform with spacing 2 pi / {m}; row {j} has t = {tj}"
                )));
            }
        }
        Ok(CurveKind::Custom { t0: t[0], x1, x2 })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundaryCurve {
    pub kind: CurveKind,
    pub n: usize,
    pub t: Vec<f64>,
    pub x: Vec<[f64; 2]>,
    /// x'(t)
    pub d1: Vec<[f64; 2]>,
    /// x''(t)
    pub d2: Vec<[f64; 2]>,
    /// |x'(t)|
    pub jac: Vec<f64>,
    /// Outward unit normal (x2', -x1') / |x'|.
    pub normal: Vec<[f64; 2]>,
}

impl BoundaryCurve {
    pub fn new(kind: CurveKind, n: usize) -> Result<Self> {
        if n < 8 || n % 2 != 0 {
            return Err(Error::Domain(format!("node count must be even and >= 8, got {n}")));
        }
        let t: Vec<f64> = (0..n).map(|j| 2.0 * PI * j as f64 / n as f64).collect();
        let (x, d1, d2) = match &kind {
            CurveKind::Circle { radius } => {
                positive(*radius, "radius")?;
                let r = *radius;
                map3(&t, |s| {
                    let (sn, cs) = s.sin_cos();
                    ([r * cs, r * sn], [-r * sn, r * cs], [-r * cs, -r * sn])
                })
            }
            CurveKind::Ellipse { a, b } => {
                positive(*a, "semi-axis a")?;
                positive(*b, "semi-axis b")?;
                let (a, b) = (*a, *b);
                map3(&t, |s| {
                    let (sn, cs) = s.sin_cos();
                    ([a * cs, b * sn], [-a * sn, b * cs], [-a * cs, -b * sn])
                })
            }
            CurveKind::Kite => map3(&t, |s| {
                let (sn, cs) = s.sin_cos();
                let (s2, c2) = (2.0 * s).sin_cos();
                (
                    [cs + 0.65 * c2 - 0.65, 1.5 * sn],
                    [-sn - 1.3 * s2, 1.5 * cs],
                    [-cs - 2.6 * c2, -1.5 * sn],
                )
            }),
            CurveKind::Custom { t0, x1, x2 } => custom(*t0, x1, x2, n)?,
        };
        let jac: Vec<f64> = d1.iter().map(|d| d[0].hypot(d[1])).collect();
        if jac.iter().any(|&j| !(j > 0.0) || !j.is_finite()) {
            return Err(Error::Assembly("parametrization has a vanishing or non-finite speed".into()));
        }
        let normal = d1.iter().zip(&jac).map(|(d, &j)| [d[1] / j, -d[0] / j]).collect();
        let curve = BoundaryCurve { kind, n, t, x, d1, d2, jac, normal };
        if curve.signed_area() <= 0.0 {
            return Err(Error::Validation("curve must be traversed counterclockwise (winding number +1)".into()));
        }
        curve.check_simple()?;
        Ok(curve)
    }

    /// The same curve sampled at `factor` times as many nodes.
    pub fn refined(&self, factor: usize) -> Result<Self> {
        if factor == 0 {
            return Err(Error::Domain("refinement factor must be positive".into()));
        }
        Self::new(self.kind.clone(), self.n * factor)
    }

    /// Shoelace area of the node polygon.
    pub fn signed_area(&self) -> f64 {
        let n = self.n;
        (0..n)
            .map(|i| {
                let (p, q) = (self.x[i], self.x[(i + 1) % n]);
                p[0] * q[1] - q[0] * p[1]
            })
            .sum::<f64>()
            * 0.5
    }

    /// Area centroid of the node polygon.
    pub fn centroid(&self) -> [f64; 2] {
        let n = self.n;
        let mut c = [0.0; 2];
        for i in 0..n {
            let (p, q) = (self.x[i], self.x[(i + 1) % n]);
            let w = p[0] * q[1] - q[0] * p[1];
            c[0] += (p[0] + q[0]) * w;
            c[1] += (p[1] + q[1]) * w;
        }
        let a6 = 6.0 * self.signed_area();
        [c[0] / a6, c[1] / a6]
    }

    /// Largest distance between consecutive nodes.
    pub fn node_spacing(&self) -> f64 {
        (0..self.n).map(|i| dist(self.x[i], self.x[(i + 1) % self.n])).fold(0.0, f64::max)
    }

    /// Winding-number test against the node polygon.
    pub fn contains(&self, p: [f64; 2]) -> bool {
        let n = self.n;
        let mut inside = false;
        for i in 0..n {
            let (a, b) = (self.x[i], self.x[(i + 1) % n]);
            if (a[1] > p[1]) != (b[1] > p[1]) {
                let xc = a[0] + (p[1] - a[1]) * (b[0] - a[0]) / (b[1] - a[1]);
                if p[0] < xc {
                    inside = !inside;
                }
            }
        }
        inside
    }

    /// Distance from `p` to the nearest node.
    pub fn distance_to_nodes(&self, p: [f64; 2]) -> f64 {
        self.x.iter().map(|&q| dist(p, q)).fold(f64::INFINITY, f64::min)
    }

    /// True when every ray from `c` meets the curve once, i.e. the polar
    /// angle about `c` increases strictly along the parametrization.
    pub fn is_star_shaped_about(&self, c: [f64; 2]) -> bool {
        (0..self.n).all(|i| {
            let (x, d) = (self.x[i], self.d1[i]);
            (x[0] - c[0]) * d[1] - (x[1] - c[1]) * d[0] > 0.0
        })
    }

    fn check_simple(&self) -> Result<()> {
        let n = self.n;
        for i in 0..n {
            let (a, b) = (self.x[i], self.x[(i + 1) % n]);
            for j in (i + 2)..n {
                if i == 0 && j == n - 1 {
                    continue;
                }
                let (c, d) = (self.x[j], self.x[(j + 1) % n]);
                if segments_cross(a, b, c, d) {
                    return Err(Error::Assembly(format!("curve self-intersects between nodes {i} and {j}")));
                }
            }
        }
        Ok(())
    }
}

fn positive(v: f64, what: &str) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{what} must be positive, got {v}")))
    }
}

type Samples = (Vec<[f64; 2]>, Vec<[f64; 2]>, Vec<[f64; 2]>);

fn map3(t: &[f64], f: impl Fn(f64) -> ([f64; 2], [f64; 2], [f64; 2])) -> Samples {
    let mut x = Vec::with_capacity(t.len());
    let mut d1 = Vec::with_capacity(t.len());
    let mut d2 = Vec::with_capacity(t.len());
    for &s in t {
        let (a, b, c) = f(s);
        x.push(a);
        d1.push(b);
        d2.push(c);
    }
    (x, d1, d2)
}

fn custom(t0: f64, x1: &[f64], x2: &[f64], n: usize) -> Result<Samples> {
    let m = x1.len();
    if m != x2.len() || m < 8 {
        return Err(Error::Domain("custom curve needs at least 8 (x1, x2) samples of equal length".into()));
    }
    let c1 = coefficients(x1);
    let c2 = coefficients(x2);
    let t: Vec<f64> = (0..n).map(|j| 2.0 * PI * j as f64 / n as f64).collect();
    Ok(map3(&t, |s| {
        let (a0, a1, a2) = trig_eval(&c1, s - t0);
        let (b0, b1, b2) = trig_eval(&c2, s - t0);
        ([a0, b0], [a1, b1], [a2, b2])
    }))
}

/// Fourier coefficients (q, c_q) of the trigonometric interpolant, with the
/// Nyquist mode split evenly between +-M/2.
fn coefficients(v: &[f64]) -> Vec<(f64, Complex64)> {
    let m = v.len();
    let mut buf: Vec<Complex64> = v.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    FftPlanner::new().plan_fft_forward(m).process(&mut buf);
    let scale = 1.0 / m as f64;
    let mut out = Vec::with_capacity(m + 1);
    for (j, c) in buf.into_iter().enumerate() {
        let c = c * scale;
        if m % 2 == 0 && j == m / 2 {
            out.push((j as f64, 0.5 * c));
            out.push((-(j as f64), 0.5 * c));
        } else if j <= m / 2 {
            out.push((j as f64, c));
        } else {
            out.push((j as f64 - m as f64, c));
        }
    }
    out
}

fn trig_eval(c: &[(f64, Complex64)], s: f64) -> (f64, f64, f64) {
    let mut v = Complex64::new(0.0, 0.0);
    let mut d = Complex64::new(0.0, 0.0);
    let mut dd = Complex64::new(0.0, 0.0);
    for &(q, cq) in c {
        let e = cq * Complex64::from_polar(1.0, q * s);
        v += e;
        d += e * Complex64::new(0.0, q);
        dd -= e * (q * q);
    }
    (v.re, d.re, dd.re)
}

fn dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

fn orient(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> f64 {
    (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
}

fn segments_cross(a: [f64; 2], b: [f64; 2], c: [f64; 2], d: [f64; 2]) -> bool {
    let (o1, o2) = (orient(a, b, c), orient(a, b, d));
    let (o3, o4) = (orient(c, d, a), orient(c, d, b));
    o1 * o2 < 0.0 && o3 * o4 < 0.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_geometry() {
        let c = BoundaryCurve::new(CurveKind::Circle { radius: 2.0 }, 64).unwrap();
        for i in 0..64 {
            let nrm = c.normal[i];
            assert!((nrm[0].hypot(nrm[1]) - 1.0).abs() < 1e-12);
            assert!((nrm[0] - c.x[i][0] / 2.0).abs() < 1e-12);
        }
        let ctr = c.centroid();
        assert!(ctr[0].abs() < 1e-12 && ctr[1].abs() < 1e-12);
        assert!(c.contains([0.3, -1.2]) && !c.contains([2.1, 0.0]));
    }

    #[test]
    fn custom_reproduces_kite() {
        let m = 64;
        let mut table = String::from("# kite samples\n");
        for j in 0..m {
            let t = 2.0 * PI * j as f64 / m as f64;
            table += &format!("{t} {} {}\n", t.cos() + 0.65 * (2.0 * t).cos() - 0.65, 1.5 * t.sin());
        }
        let kind = CurveKind::from_table(&table).unwrap();
        let a = BoundaryCurve::new(kind, 128).unwrap();
        let b = BoundaryCurve::new(CurveKind::Kite, 128).unwrap();
        for i in 0..128 {
            for c in 0..2 {
                assert!((a.x[i][c] - b.x[i][c]).abs() < 1e-12);
                assert!((a.d1[i][c] - b.d1[i][c]).abs() < 1e-11);
                assert!((a.d2[i][c] - b.d2[i][c]).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(BoundaryCurve::new(CurveKind::Kite, 7).is_err());
        assert!(BoundaryCurve::new(CurveKind::Circle { radius: -1.0 }, 16).is_err());
        assert!(CurveKind::from_table("0 1 0\n0.3 0 1\n").is_err());
        assert!(CurveKind::from_table("0 1\n").is_err());
        // figure-eight
        let m = 32;
        let x1: Vec<f64> = (0..m).map(|j| (2.0 * PI * j as f64 / m as f64).sin()).collect();
        let x2: Vec<f64> = (0..m).map(|j| (4.0 * PI * j as f64 / m as f64).sin()).collect();
        assert!(BoundaryCurve::new(CurveKind::Custom { t0: 0.0, x1, x2 }, 64).is_err());
    }

    #[test]
    fn kite_is_star_shaped_about_its_centroid() {
        let k = BoundaryCurve::new(CurveKind::Kite, 256).unwrap();
        assert!(k.is_star_shaped_about(k.centroid()));
    }
}
