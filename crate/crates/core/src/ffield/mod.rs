//! Finite fields, Gauss sums, hypergeometric traces, point counts and
//! Euler factors.

mod field;
mod gauss;
mod trace;

pub use field::{make_field, make_field_with_limit, FiniteFieldCtx, DEFAULT_FIELD_LIMIT};
pub use gauss::{gauss_direct, gauss_fft, gauss_sums, GaussSumTable, DIRECT_GAUSS_LIMIT};
pub use trace::{hgm_trace, HgmTracer, TraceMethod, TraceResult, ROUNDING_TOLERANCE};
mod count;
pub use count::{point_count_family, Family, PointCount, COUNT_BUDGET};
mod euler;
pub use euler::{euler_factor, euler_factor_with_limit, EulerFactor};
