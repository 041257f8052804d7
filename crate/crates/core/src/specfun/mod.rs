//! Real-argument special functions: Bessel J (and Y for the Hankel kernels),
//! spherical Bessel j, associated Legendre P, zeros of J and J', and the
//! uniform large-order asymptotics.

mod asym;
mod bessel;
mod legendre;
mod spherical;
mod zeros;

pub use asym::{j_bound, jprime_bound, phi, uniform_asym_j};
pub use bessel::{bessel_j, j01_y01, jv, jv_value, jyv, BesselJY, BesselOrder};
pub use legendre::{assoc_legendre, plm};
pub use spherical::{sph_j, spherical_j};
pub use zeros::{airy_zero_bounds, bessel_zero, jms_bounds, ZeroKind, ZeroTable};
