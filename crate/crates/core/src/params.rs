//! Physical media, nondimensionalization and wavenumbers.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Raw material constants of the fluid (b) and solid (e).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalMedium {
    pub rho_b: f64,
    pub rho_e: f64,
    pub kappa: f64,
    pub lambda_t: f64,
    pub mu_t: f64,
    #[serde(default = "unit_length")]
    pub l_omega: f64,
}

fn unit_length() -> f64 {
    1.0
}

impl PhysicalMedium {
    /// Positivity and strong convexity (mu > 0, N lambda + 2 mu > 0) in dimension `dim`.
    pub fn validate(&self, dim: u32) -> Result<()> {
        for (name, v) in [
            ("rho_b", self.rho_b),
            ("rho_e", self.rho_e),
            ("kappa", self.kappa),
            ("l_omega", self.l_omega),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Validation(format!("{name} must be positive, got {v}")));
            }
        }
        if !(self.mu_t > 0.0 && self.mu_t.is_finite()) {
            return Err(Error::Validation(format!("shear modulus must be positive, got {}", self.mu_t)));
        }
        if !(dim as f64 * self.lambda_t + 2.0 * self.mu_t > 0.0) || !self.lambda_t.is_finite() {
            return Err(Error::Validation(format!(
                "strong convexity fails: {dim}*lambda + 2*mu = {}",
                dim as f64 * self.lambda_t + 2.0 * self.mu_t
            )));
        }
        Ok(())
    }
}

/// Dimensionless parameters (delta, tau, lambda, mu) with lambda + 2 mu = 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NondimParams {
    pub delta: f64,
    pub tau: f64,
    pub lambda: f64,
    pub mu: f64,
}

impl NondimParams {
    /// Builds from (delta, tau, mu); lambda is fixed by lambda + 2 mu = 1.
    pub fn new(delta: f64, tau: f64, mu: f64) -> Result<Self> {
        let p = Self { delta, tau, lambda: 1.0 - 2.0 * mu, mu };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.delta > 0.0 && self.delta.is_finite()) {
            return Err(Error::Validation(format!("delta must be positive, got {}", self.delta)));
        }
        if !(self.tau > 0.0 && self.tau.is_finite()) {
            return Err(Error::Validation(format!("tau must be positive, got {}", self.tau)));
        }
        if !(self.mu > 0.0 && self.mu.is_finite()) {
            return Err(Error::Validation(format!("mu must be positive, got {}", self.mu)));
        }
        if (self.lambda + 2.0 * self.mu - 1.0).abs() > 1e-12 {
            return Err(Error::Validation(format!(
                "lambda + 2 mu must equal 1, got {}",
                self.lambda + 2.0 * self.mu
            )));
        }
        Ok(())
    }

    /// Every localization result assumes tau in (0, 1).
    pub fn tau_in_unit_interval(&self) -> bool {
        self.tau > 0.0 && self.tau < 1.0
    }

    pub fn require_tau_below_one(&self) -> Result<()> {
        if self.tau_in_unit_interval() {
            Ok(())
        } else {
            Err(Error::Precondition(format!("tau must lie in (0, 1), got {}", self.tau)))
        }
    }
}

/// delta = rho_b/rho_e, tau = sqrt(kappa/rho_b) / sqrt((lambda+2mu)/rho_e),
/// lambda = lambda_t/(lambda_t+2mu_t), mu = mu_t/(lambda_t+2mu_t).
pub fn nondimensionalize(m: &PhysicalMedium, dim: u32) -> Result<NondimParams> {
    m.validate(dim)?;
    let p_mod = m.lambda_t + 2.0 * m.mu_t;
    if !(p_mod > 0.0) {
        return Err(Error::Validation(format!("lambda + 2 mu must be positive, got {p_mod}")));
    }
    let c_b = (m.kappa / m.rho_b).sqrt();
    let c_p = (p_mod / m.rho_e).sqrt();
    let lambda = m.lambda_t / p_mod;
    let mu = m.mu_t / p_mod;
    Ok(NondimParams { delta: m.rho_b / m.rho_e, tau: c_b / c_p, lambda, mu })
}

/// Acoustic, compressional and shear wavenumbers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Wavenumbers {
    pub k: f64,
    pub k_p: f64,
    pub k_s: f64,
}

pub fn wavenumbers(k: f64, p: &NondimParams) -> Result<Wavenumbers> {
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::Domain(format!("wavenumber must be positive, got {k}")));
    }
    let k_p = k * p.tau;
    Ok(Wavenumbers { k, k_p, k_s: k_p / p.mu.sqrt() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn medium(rho_b: f64, lambda_t: f64) -> PhysicalMedium {
        PhysicalMedium { rho_b, rho_e: 1.0, kappa: 1.0, lambda_t, mu_t: 1.0, l_omega: 1.0 }
    }

    #[test]
    fn unit_medium() {
        let p = nondimensionalize(&medium(1.0, 1.0), 2).unwrap();
        assert_eq!(p.delta, 1.0);
        assert!((p.lambda - 1.0 / 3.0).abs() < 1e-15);
        assert!((p.mu - 1.0 / 3.0).abs() < 1e-15);
        assert!((p.tau - 1.0 / 3f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn dense_fluid() {
        let p = nondimensionalize(&medium(20.0, 1.0), 2).unwrap();
        assert_eq!(p.delta, 20.0);
        assert!((p.tau - (1.0f64 / 20.0).sqrt() / 3f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn negative_lambda_convexity_boundary() {
        let p = nondimensionalize(&medium(1.0, -0.4), 3).unwrap();
        assert!((p.lambda + 0.25).abs() < 1e-15);
        assert!((p.mu - 0.625).abs() < 1e-15);
        assert!(nondimensionalize(&medium(1.0, -0.7), 3).is_err());
    }

    #[test]
    fn wavenumber_formulas() {
        let p = NondimParams::new(0.1, 0.5, 0.25).unwrap();
        let w = wavenumbers(1.0, &p).unwrap();
        assert_eq!((w.k_p, w.k_s), (0.5, 1.0));
        assert!(wavenumbers(0.0, &p).is_err());
    }
}
