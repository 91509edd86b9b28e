//! Curvature engine and identity checks for four-dimensional almost Kähler
//! geometry, built on truncated Taylor jets.

pub mod almost_hermitian;
pub mod curvature;
pub mod error;
pub mod exterior;
pub mod family;
pub mod jets;
#[cfg(feature = "oracle")]
pub mod oracle;
pub mod scalar;

pub use error::{GeometryError, InstanceError, JetError};
pub use jets::{Jet, MultiIndex};
pub use scalar::Scalar;
