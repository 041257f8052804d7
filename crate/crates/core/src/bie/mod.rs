//! Boundary-integral formulation on smooth closed curves in the plane.

pub mod assembly;
pub mod curve;
pub mod field;
pub mod kernels;
pub mod scan;
pub mod spectral;

pub use assembly::{assemble_block, static_np_operators, BlockOperator, Nodes};
pub use curve::{BoundaryCurve, CurveKind};
pub use kernels::{elastic_kernel, helmholtz_kernel};
pub use spectral::{largest_singular, rank_deficiency, singular_values, smallest_singular, SmallestSingular};
pub use field::{
    localization_ratio_general, mode_localization, reconstruct_fields, trig_upsample, FieldSamples, ModeLocalization, PolarGrid,
};
pub use scan::{golden_section, scan_operator, sigma_min_scan, sigma_min_scan_with, ScanMinimum, ScanOptions, ScanResult};
