//! Almost Hermitian structures on top of the curvature engine.

use crate::curvature::MetricField;
use crate::error::GeometryError;
use crate::exterior::DIM;
use crate::scalar::Scalar;

/// A metric together with a compatible fundamental 2-form Ω = g(J·,·).
pub trait AlmostHermitianField: MetricField {
    /// Antisymmetric components Ω_ij.
    fn fundamental_form<S: Scalar>(&self, p: &[S; DIM]) -> Result<[[S; DIM]; DIM], GeometryError>;
}

pub mod algebra;
pub mod calculus;
pub mod catalogue;
pub mod evaluate;
pub mod gauge;
pub mod hermitian;
pub mod identities;

pub use catalogue::{CheckInfo, Group, Tier, CATALOGUE};
pub use evaluate::{evaluate_point, PointRecord};
pub use gauge::{GaugeFrame, Nullity, GAUGE_THRESHOLD};
pub use hermitian::{HermitianData, U2Curvature};
