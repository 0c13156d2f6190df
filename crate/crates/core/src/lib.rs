//! Exact computation in the group of interval exchange transformations of
//! `[0, 1)`.
//!
//! Every real quantity is a [`Scalar`]: an exact element of `Q` or of a real
//! quadratic field `Q(sqrt(d))`. Interval exchanges are stored in their unique
//! canonical coordinates (an unpartitioned permutation and a strictly positive
//! length vector), so structural equality is equality of maps.
//!
//! Layout:
//! - [`scalar`]: exact ordered field arithmetic, floor and fractional parts.
//! - [`perm`], [`exchange`]: permutations, length vectors, the group operations.
//! - [`intervals`]: finite unions of half-open intervals (fixed sets).
//! - [`metric`], [`step`]: the integral circle metric, the uniform
//!   displacement, and Koopman L² distances on step functions.
//! - [`flows`], [`standard`], [`verify`]: torus actions, rotation flows,
//!   recognition of standard torus elements, and a finite-sample checker
//!   for rotation families.
//! - [`golden`], [`growth`], [`plot`], [`format`]: reference sequences, the
//!   discontinuity-growth experiment, plot data, and the text file formats.

pub mod error;
pub mod exchange;
pub mod flows;
pub mod format;
pub mod golden;
pub mod growth;
pub mod intervals;
pub mod metric;
pub mod perm;
pub mod plot;
pub mod random;
pub mod scalar;
pub mod standard;
pub mod step;
pub mod verify;

pub use error::IetError;
pub use exchange::{canonicalize, omega, IntervalExchange, LengthVector};
pub use flows::{flow_at, flow_fixed_set, restricted_rotation, torus_element, FlowSpec, TorusPoint};
pub use golden::{golden_fn, golden_gn};
pub use growth::{growth, GrowthOptions, GrowthReport};
pub use intervals::IntervalUnion;
pub use metric::{circle_distance, distance, koopman_l2_sq, sup_displacement};
pub use perm::Permutation;
pub use plot::{plot_segments, Segment};
pub use scalar::{Scalar, ScalarError};
pub use standard::{decompose_standard, NotStandard, RotationBlock, RotationDecomposition};
pub use step::StepFunction;
pub use verify::{verify_rotation_family, Verdict};

pub type Result<T, E = IetError> = std::result::Result<T, E>;
