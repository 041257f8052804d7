//! Uniform large-order asymptotics of J_nu below the turning point.

use std::f64::consts::PI;

use crate::{Error, Result};

/// phi(x) = x e^{sqrt(1-x^2)} / (1 + sqrt(1-x^2)), increasing on (0, 1).
pub fn phi(x: f64) -> f64 {
    let s = (1.0 - x * x).max(0.0).sqrt();
    x * s.exp() / (1.0 + s)
}

/// Leading term of J_nu(nu z) for 0 < z < 1:
/// z^nu e^{nu sqrt(1-z^2)} / [(2 pi nu)^{1/2} (1-z^2)^{1/4} (1 + sqrt(1-z^2))^nu].
pub fn uniform_asym_j(nu: f64, z: f64) -> Result<f64> {
    if !(z > 0.0 && z < 1.0) {
        return Err(Error::Domain(format!("uniform asymptotic needs 0 < z < 1, got {z}")));
    }
    if !(nu > 0.0) {
        return Err(Error::Domain(format!("uniform asymptotic needs nu > 0, got {nu}")));
    }
    let s2 = 1.0 - z * z;
    Ok((nu * phi(z).ln()).exp() / ((2.0 * PI * nu).sqrt() * s2.powf(0.25)))
}

/// Upper bound of |J_m(m x)| for 0 < x <= 1: phi(x)^m.
pub fn j_bound(m: f64, x: f64) -> f64 {
    phi(x).powf(m)
}

/// Upper bound of |J'_m(m x)| for 0 < x <= 1: (1+x^2)^{1/4} / (x (2 pi m)^{1/2}) phi(x)^m.
pub fn jprime_bound(m: f64, x: f64) -> f64 {
    (1.0 + x * x).powf(0.25) / (x * (2.0 * PI * m).sqrt()) * phi(x).powf(m)
}
