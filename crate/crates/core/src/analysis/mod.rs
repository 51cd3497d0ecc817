//! Scaling fits, saturation detection, majorization orderings, and the
//! generic entropy property checks.

pub mod fit;
pub mod majorization;
pub mod properties;
pub mod saturation;

pub use fit::{anisotropy_shift, central_charge, fit_log_scaling, CurveSource, EntropyCurve, ScalingFit, ShiftEstimate};
pub use majorization::{
    block_majorization_scan, majorizes, rg_majorization_check, MajorizationVerdict, ScanEntry,
    SpectrumDistribution,
};
pub use properties::{entropy_property_suite, ghz_curve, CheckOutcome, PropertyReport};
pub use saturation::{mass_entropy_difference, saturation, SaturationResult, SaturationStatus};
