//! The curve `2y^2 = x^4 - 17`: points everywhere locally, no rational points,
//! explained by the quaternion class `(17, y)`.

mod curve;
mod pairing;
mod points;
mod reports;

pub use curve::{Chart, LindReichardtCurve};
pub use pairing::{pairing, pairing_via_representative};
pub use points::{
    lift_point, local_point, local_point_with_precision, Coordinates, LocalPoint, PAdicValue, RealValue, DEFAULT_PRECISION,
};
pub use reports::{
    obstruction_conclusion, obstruction_conclusion_with, rational_y, search_rational_points,
    verify_pairing_constant_at_17, verify_pairing_zero_elsewhere, ConstantAt17Report, ObstructionReport,
    PrimeEntry, RationalPointSearch, ZeroElsewhereReport, ZeroReason, DEFAULT_SAMPLE_BOUND,
    DEFAULT_SPOT_CHECK_BOUND,
};
