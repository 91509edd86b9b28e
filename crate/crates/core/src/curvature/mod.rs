//! Metric → curvature pipeline: connection, Riemann/Ricci/Weyl, curvature
//! operator blocks, Cotton–York tensor and δW.

pub mod connection;
pub mod cotton;
pub mod operator;
pub mod riemann;

pub use connection::{christoffel, covariant_derivative};
pub use cotton::{codifferential_op, cotton_york, delta_weyl, sd_part};
pub use riemann::{trace, Curvature};

use crate::error::GeometryError;
use crate::exterior::{MetricContext, DIM};
use crate::jets::Jet;
use crate::scalar::Scalar;

/// A Riemannian metric given by component evaluators.
pub trait MetricField {
    /// Symmetric components g_ij at the point with coordinates `p`.
    fn metric<S: Scalar>(&self, p: &[S; DIM]) -> Result<[[S; DIM]; DIM], GeometryError>;
}

/// Metric context with order-4 jets at `p`.
pub fn metric_jets<M: MetricField>(m: &M, p: [f64; DIM]) -> Result<MetricContext<Jet>, GeometryError> {
    let vars = Jet::coordinates(p);
    MetricContext::new(m.metric(&vars)?)
}

pub fn curvature_at<M: MetricField>(m: &M, p: [f64; DIM]) -> Result<Curvature, GeometryError> {
    Curvature::from_metric(metric_jets(m, p)?)
}
