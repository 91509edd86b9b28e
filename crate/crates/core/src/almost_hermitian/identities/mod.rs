//! Pointwise residuals of the almost Kähler identities.
//!
//! Every residual is a non-negative number that vanishes when the identity
//! holds. Tensor residuals use the full-contraction norm of the difference
//! of both sides at the point.

pub mod bianchi;
pub mod chern;
pub mod compat;
pub mod gray;
pub mod section4;
pub mod u2;
pub mod weitzenbock;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::algebra::{one_form_times, per_slice, residual_norm, Field};
use super::gauge::{GaugeFrame, Nullity, GAUGE_THRESHOLD};
use super::hermitian::{HermitianData, U2Curvature};
use super::AlmostHermitianField;
use crate::curvature::cotton::sd_part;
use crate::error::GeometryError;
use crate::exterior::{wedge, Tensor, DIM};
use crate::family::FamilyInstance;
use crate::jets::Jet;
use crate::scalar::Scalar;

/// Result of one residual at one point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Outcome {
    Value { value: f64 },
    Skipped { reason: String },
    Error { message: String },
}

impl Outcome {
    pub fn value(&self) -> Option<f64> {
        match self {
            Outcome::Value { value } => Some(*value),
            _ => None,
        }
    }
}

pub type Residuals = BTreeMap<&'static str, Outcome>;

pub(crate) fn record(out: &mut Residuals, name: &'static str, f: impl FnOnce() -> Result<f64, GeometryError>) {
    let o = match f() {
        Ok(v) => Outcome::Value { value: v },
        Err(e) => Outcome::Error { message: e.to_string() },
    };
    out.insert(name, o);
}

pub(crate) fn skip(out: &mut Residuals, name: &'static str, reason: &str) {
    out.insert(
        name,
        Outcome::Skipped {
            reason: reason.to_string(),
        },
    );
}

/// Everything computed once per point and shared by the check groups.
#[derive(Clone, Debug)]
pub struct PointState<'a> {
    pub point: [f64; DIM],
    pub hd: HermitianData,
    pub u2: U2Curvature,
    pub gauge: GaugeFrame,
    /// Present where |∇Ω|² exceeds [`GAUGE_THRESHOLD`].
    pub nullity: Option<Nullity>,
    pub family: Option<&'a FamilyInstance>,
}

pub const KAHLER_POINT: &str = "|∇Ω|² below the gauge threshold";

impl<'a> PointState<'a> {
    pub fn new<F: AlmostHermitianField>(
        field: &F,
        point: [f64; DIM],
        family: Option<&'a FamilyInstance>,
    ) -> Result<Self, GeometryError> {
        Self::from_hermitian(HermitianData::at(field, point)?, point, family)
    }

    pub fn from_hermitian(
        hd: HermitianData,
        point: [f64; DIM],
        family: Option<&'a FamilyInstance>,
    ) -> Result<Self, GeometryError> {
        let u2 = U2Curvature::new(&hd);
        let gauge = GaugeFrame::new(&hd, &u2.w3)?;
        let nullity = if hd.norm2.value() > GAUGE_THRESHOLD {
            Some(Nullity::new(&hd, &gauge)?)
        } else {
            None
        };
        Ok(PointState {
            point,
            hd,
            u2,
            gauge,
            nullity,
            family,
        })
    }

    /// The same point with the gauge φ rotated by the angle function θ.
    pub fn with_rotated_gauge(&self, theta: &Jet) -> Result<Self, GeometryError> {
        let gauge = self.gauge.rotated(&self.hd, theta, &self.u2.w3)?;
        let nullity = match self.nullity {
            Some(_) => Some(Nullity::new(&self.hd, &gauge)?),
            None => None,
        };
        Ok(PointState {
            gauge,
            nullity,
            ..self.clone()
        })
    }

    pub fn norm(&self, t: &Field) -> f64 {
        residual_norm(t, self.hd.ctx())
    }

    pub fn zero(&self) -> Jet {
        self.hd.ctx().sqrt_det.zero_like()
    }

    /// Orthonormal-frame components of a value tensor.
    pub fn frame(&self) -> nalgebra::Matrix4<f64> {
        self.hd.ctx().values().orthonormal_frame()
    }

    /// Z ↦ α∧Z♭ as a Λ²-valued 1-form.
    pub fn wedge_flat(&self, alpha: &Field) -> Result<Field, GeometryError> {
        let ctx = self.hd.ctx();
        let mut slices = Vec::with_capacity(DIM);
        for z in 0..DIM {
            let zflat = Tensor::covariant(1, |i| ctx.g(z, i[0]).clone());
            slices.push(wedge(alpha, &zflat)?);
        }
        Ok(super::algebra::from_slices(&slices))
    }

    /// Self-dual (+1) or anti-self-dual (−1) part per slice, for the
    /// orientation induced by J.
    pub fn sd(&self, v: &Field, sign: f64) -> Field {
        sd_part(v, self.hd.ctx(), self.hd.orientation, sign)
    }

    /// J-anti-invariant part per slice.
    pub fn pp(&self, v: &Field) -> Field {
        per_slice(v, |s| self.hd.double_prime(s))
    }

    /// Per-slice J action on 2-forms.
    pub fn j_slices(&self, v: &Field) -> Field {
        per_slice(v, |s| self.hd.j_form(s))
    }

    /// α ⊗ Ω.
    pub fn times_omega(&self, alpha: &Field) -> Field {
        one_form_times(alpha, &self.hd.omega)
    }

    /// Fixed non-trivial test function used by the d^J identities.
    pub fn test_function(&self) -> Jet {
        let [x, y, z, t] = Jet::coordinates(self.point);
        x.mul(&y)
            .add(&z.mul(&z).mul(&t).scale(0.5))
            .add(&x.add(&t.scale(0.3)).sin())
            .add(&y.scale(0.2).exp())
    }

    /// ln |∇Ω|².
    pub fn log_norm2(&self) -> Result<Jet, GeometryError> {
        Ok(self.hd.norm2.ln()?)
    }

    /// Scalars reported with every point.
    pub fn scalars(&self) -> PointScalars {
        let c = &self.hd.curv;
        let ctx = self.hd.ctx();
        PointScalars {
            norm_nabla_omega2: self.hd.norm2.value(),
            s: self.u2.s.value(),
            kappa: self.u2.kappa.value(),
            s_star: self.u2.s_star.value(),
            norm_wplus: residual_norm(&self.u2.wplus, ctx),
            norm_wminus: residual_norm(&self.u2.wminus, ctx),
            norm_ric: residual_norm(&c.ricci, ctx),
            norm_ric0: residual_norm(&c.ric0, ctx),
        }
    }
}

/// Curvature scalars at a point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointScalars {
    pub norm_nabla_omega2: f64,
    pub s: f64,
    pub kappa: f64,
    pub s_star: f64,
    pub norm_wplus: f64,
    pub norm_wminus: f64,
    pub norm_ric: f64,
    pub norm_ric0: f64,
}

/// Largest absolute value among several residuals.
pub(crate) fn max_of(vals: &[f64]) -> f64 {
    vals.iter().fold(0.0, |m: f64, v| m.max(v.abs()))
}
