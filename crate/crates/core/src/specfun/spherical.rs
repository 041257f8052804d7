//! Spherical Bessel functions j_m(x) = sqrt(pi/(2x)) J_{m+1/2}(x).

use std::f64::consts::PI;

use super::bessel::jv;
use crate::{Error, Result};

/// j_m(x) and j'_m(x) for x > 0.
pub fn spherical_j(m: u32, x: f64) -> Result<(f64, f64)> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("spherical Bessel argument must be > 0, got {x}")));
    }
    Ok(sph_j(m, x))
}

/// Unchecked j_m, j'_m for x > 0.
pub fn sph_j(m: u32, x: f64) -> (f64, f64) {
    let (j, jp) = jv(m as f64 + 0.5, x);
    let s = (0.5 * PI / x).sqrt();
    (s * j, s * (jp - 0.5 * j / x))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn j0_closed_form() {
        for &x in &[0.1, 1.0, 3.0, 10.0] {
            let (v, d) = sph_j(0, x);
            assert!((v - x.sin() / x).abs() < 1e-14);
            assert!((d - (x.cos() / x - x.sin() / (x * x))).abs() < 1e-14);
        }
        assert!(sph_j(0, PI).0.abs() < 1e-15);
    }

    #[test]
    fn rejects_nonpositive() {
        assert!(spherical_j(1, 0.0).is_err());
    }
}
