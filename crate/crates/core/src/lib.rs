//! Acoustic-elastic transmission eigenvalue toolkit.
//!
//! Radial eigenvalues on the unit disk and ball come from explicit Bessel
//! characteristic functions ([`radial`]); eigenfunctions and their
//! boundary-localization ratios live in [`eigfun`]; general smooth 2D domains
//! are handled by a Nyström discretization of the coupled boundary-integral
//! system ([`bie`]).

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bie;
pub mod eigfun;
mod error;
pub mod params;
pub mod quad;
pub mod radial;
pub mod specfun;

pub use error::{Error, Result};
pub use params::{NondimParams, PhysicalMedium, Wavenumbers};
