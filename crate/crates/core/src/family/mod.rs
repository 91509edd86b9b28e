//! Strictly almost Kähler four-manifolds built from a surface and a
//! holomorphic function, plus raw-metric specs for non-family geometry.
//!
//! On M = Σ × ℝ² with isothermal coordinates (x, y) on Σ, fibre coordinates
//! (z, t) and h = w + iv:
//!
//! ```text
//! g = e^u w (dx² + dy²) + w dz² + (1/w)(dt + v dz)²
//! Ω = Ω_Σ − dz∧dt        (equal to Ω_Σ − dz∧(dt + v dz))
//! Ω̄ = Ω_Σ + dz∧dt
//! ```

pub mod expr;
pub mod holo;
pub mod presets;
pub mod random;
pub mod sample;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::almost_hermitian::AlmostHermitianField;
use crate::curvature::MetricField;
use crate::error::{GeometryError, InstanceError};
use crate::exterior::{MetricContext, DIM};
use crate::scalar::Scalar;

pub use expr::{Expr, Func};
pub use holo::HoloFn;
pub use presets::{preset, preset_names, presets};
pub use random::random_almost_kahler;
pub use sample::{halton, sample};

pub const DEFAULT_MARGIN: f64 = 1e-3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SurfaceKind {
    /// g_Σ = dx² + dy² (u = −ln w).
    Flat,
    /// g_Σ = (dx² + dy²)/x² on the half-plane x > 0.
    HyperbolicHalfplane,
    /// g_Σ = e^u w (dx² + dy²) for a user expression u(x, y).
    Custom,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceSpec {
    pub kind: SurfaceKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u: Option<Expr>,
    /// Extra a(x, y) dx⊗dx added to g_Σ. Breaks the conformal form of g_Σ and is
    /// only meant for negative controls; Ω_Σ is adjusted so the structure stays
    /// almost Kähler.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub anisotropy: Option<Expr>,
}

impl SurfaceSpec {
    pub fn new(kind: SurfaceKind) -> Self {
        SurfaceSpec {
            kind,
            u: None,
            anisotropy: None,
        }
    }

    pub fn custom(u: Expr) -> Self {
        SurfaceSpec {
            kind: SurfaceKind::Custom,
            u: Some(u),
            anisotropy: None,
        }
    }

    fn validate(&self) -> Result<(), InstanceError> {
        match (self.kind, &self.u) {
            (SurfaceKind::Custom, None) => {
                return Err(InstanceError::Invalid("custom surface needs `u`".into()))
            }
            (SurfaceKind::Custom, Some(u)) if !u.is_planar() => {
                return Err(InstanceError::Invalid("`u` may only depend on x and y".into()))
            }
            (SurfaceKind::Flat | SurfaceKind::HyperbolicHalfplane, Some(_)) => {
                return Err(InstanceError::Invalid(
                    "`u` is only allowed for custom surfaces".into(),
                ))
            }
            _ => {}
        }
        if let Some(a) = &self.anisotropy {
            if !a.is_planar() {
                return Err(InstanceError::Invalid(
                    "anisotropy may only depend on x and y".into(),
                ));
            }
        }
        Ok(())
    }

    /// e^u w, the conformal factor of g_Σ.
    fn conformal_factor<S: Scalar>(&self, p: &[S; DIM], w: &S) -> Result<S, GeometryError> {
        Ok(match self.kind {
            SurfaceKind::Flat => w.constant_like(1.0),
            SurfaceKind::HyperbolicHalfplane => p[0].powi(-2)?,
            SurfaceKind::Custom => {
                let u = self.u.as_ref().expect("validated");
                u.eval(p)?.exp().mul(w)
            }
        })
    }
}

/// Axis-aligned box in (x, y, z, t).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DomainBox {
    pub lo: [f64; DIM],
    pub hi: [f64; DIM],
}

impl DomainBox {
    pub fn new(lo: [f64; DIM], hi: [f64; DIM]) -> Result<Self, InstanceError> {
        let b = DomainBox { lo, hi };
        b.validate()?;
        Ok(b)
    }

    pub fn validate(&self) -> Result<(), InstanceError> {
        for i in 0..DIM {
            if !(self.lo[i].is_finite() && self.hi[i].is_finite() && self.lo[i] < self.hi[i]) {
                return Err(InstanceError::Invalid(format!(
                    "domain axis {i}: need finite lo < hi"
                )));
            }
        }
        Ok(())
    }

    /// Map a point of the unit cube into the box.
    pub fn lerp(&self, u: [f64; DIM]) -> [f64; DIM] {
        std::array::from_fn(|i| self.lo[i] + u[i] * (self.hi[i] - self.lo[i]))
    }

    pub fn corners(&self) -> impl Iterator<Item = [f64; DIM]> + '_ {
        (0..16usize).map(move |m| {
            std::array::from_fn(|i| if m >> i & 1 == 0 { self.lo[i] } else { self.hi[i] })
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyInstance {
    pub surface: SurfaceSpec,
    pub h: HoloFn,
    pub domain: DomainBox,
    #[serde(default = "one")]
    pub scale: f64,
}

fn one() -> f64 {
    1.0
}

impl FamilyInstance {
    pub fn new(surface: SurfaceSpec, h: HoloFn, domain: DomainBox) -> Result<Self, InstanceError> {
        let fi = FamilyInstance {
            surface,
            h,
            domain,
            scale: 1.0,
        };
        fi.validate()?;
        Ok(fi)
    }

    /// Checks the static invariants, including w > 0 and e^u w > 0 at the
    /// domain corners.
    pub fn validate(&self) -> Result<(), InstanceError> {
        self.surface.validate()?;
        self.h.validate()?;
        self.domain.validate()?;
        if !(self.scale.is_finite() && self.scale > 0.0) {
            return Err(InstanceError::Invalid("scale must be positive".into()));
        }
        if self.surface.kind == SurfaceKind::HyperbolicHalfplane && self.domain.lo[0] <= 0.0 {
            return Err(InstanceError::Invalid(
                "hyperbolic half-plane needs x > 0 on the domain".into(),
            ));
        }
        for c in self.domain.corners() {
            let (w, _) = self.h.eval(&c[0], &c[1]);
            if !(w > 0.0) {
                return Err(InstanceError::Invalid(format!(
                    "w = {w} is not positive at domain corner {c:?}"
                )));
            }
            let f = self
                .surface
                .conformal_factor(&c, &w)
                .map_err(|e| InstanceError::Invalid(e.to_string()))?;
            if !(f > 0.0) {
                return Err(InstanceError::Invalid(format!(
                    "conformal factor {f} is not positive at domain corner {c:?}"
                )));
            }
        }
        Ok(())
    }

    /// w = Re h at a point.
    pub fn w(&self, p: &[f64; DIM]) -> f64 {
        self.h.eval(&p[0], &p[1]).0
    }

    fn wv<S: Scalar>(&self, p: &[S; DIM]) -> Result<(S, S), GeometryError> {
        let (w, v) = self.h.eval(&p[0], &p[1]);
        if !(w.value() > 0.0) {
            return Err(GeometryError::Positivity(w.value()));
        }
        Ok((w, v))
    }

    /// (g_Σ)_xx and (g_Σ)_yy, unscaled.
    fn sigma_diag<S: Scalar>(&self, p: &[S; DIM], w: &S) -> Result<(S, S), GeometryError> {
        let f = self.surface.conformal_factor(p, w)?;
        let gxx = match &self.surface.anisotropy {
            Some(a) => f.add(&a.eval(p)?),
            None => f.clone(),
        };
        Ok((gxx, f))
    }

    /// c² g_Σ as a degenerate 4×4 tensor.
    pub fn sigma_metric<S: Scalar>(&self, p: &[S; DIM]) -> Result<[[S; DIM]; DIM], GeometryError> {
        let (w, _) = self.wv(p)?;
        let (gxx, gyy) = self.sigma_diag(p, &w)?;
        let c2 = self.scale * self.scale;
        let zero = w.zero_like();
        let mut g: [[S; DIM]; DIM] = std::array::from_fn(|_| std::array::from_fn(|_| zero.clone()));
        g[0][0] = gxx.scale(c2);
        g[1][1] = gyy.scale(c2);
        Ok(g)
    }

    /// c² Ω_Σ = c² vol_{g_Σ} dx∧dy.
    pub fn sigma_form<S: Scalar>(&self, p: &[S; DIM]) -> Result<[[S; DIM]; DIM], GeometryError> {
        let (w, _) = self.wv(p)?;
        let (gxx, gyy) = self.sigma_diag(p, &w)?;
        let area = gxx.mul(&gyy).sqrt()?.scale(self.scale * self.scale);
        let zero = w.zero_like();
        let mut o: [[S; DIM]; DIM] = std::array::from_fn(|_| std::array::from_fn(|_| zero.clone()));
        o[0][1] = area.clone();
        o[1][0] = area.neg();
        Ok(o)
    }

    /// Ω̄ = Ω_Σ + dz∧dt, the fundamental form of the opposite Kähler structure.
    pub fn opposite_form<S: Scalar>(&self, p: &[S; DIM]) -> Result<[[S; DIM]; DIM], GeometryError> {
        let mut o = self.sigma_form(p)?;
        let c2 = self.scale * self.scale;
        o[2][3] = o[0][0].constant_like(c2);
        o[3][2] = o[0][0].constant_like(-c2);
        Ok(o)
    }
}

impl MetricField for FamilyInstance {
    fn metric<S: Scalar>(&self, p: &[S; DIM]) -> Result<[[S; DIM]; DIM], GeometryError> {
        let (w, v) = self.wv(p)?;
        let mut g = self.sigma_metric(p)?;
        let c2 = self.scale * self.scale;
        let winv = w.recip()?;
        let v_w = v.mul(&winv);
        g[2][2] = w.add(&v.mul(&v_w)).scale(c2);
        g[2][3] = v_w.scale(c2);
        g[3][2] = g[2][3].clone();
        g[3][3] = winv.scale(c2);
        Ok(g)
    }
}

impl AlmostHermitianField for FamilyInstance {
    fn fundamental_form<S: Scalar>(&self, p: &[S; DIM]) -> Result<[[S; DIM]; DIM], GeometryError> {
        let mut o = self.sigma_form(p)?;
        let c2 = self.scale * self.scale;
        o[2][3] = o[0][0].constant_like(-c2);
        o[3][2] = o[0][0].constant_like(c2);
        Ok(o)
    }
}

/// Symmetric metric and 2-form given by explicit component expressions.
///
/// Metric keys are unordered index pairs over {x, y, z, t} (`"xx"`, `"xz"`,
/// ...); omega keys are ordered pairs (`"xy"` means Ω_xy, and Ω_yx = −Ω_xy).
/// Missing components are zero. J is recovered as g⁻¹Ωᵀ.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawSpec {
    pub metric: BTreeMap<String, Expr>,
    pub omega: BTreeMap<String, Expr>,
    pub domain: DomainBox,
}

fn pair_index(key: &str) -> Option<(usize, usize)> {
    let mut it = key.chars().map(|c| expr::VAR_NAMES.iter().position(|n| n.starts_with(c)));
    match (it.next(), it.next(), it.next()) {
        (Some(Some(a)), Some(Some(b)), None) => Some((a, b)),
        _ => None,
    }
}

impl RawSpec {
    pub fn validate(&self) -> Result<(), InstanceError> {
        self.domain.validate()?;
        let mut seen = BTreeSet::new();
        for k in self.metric.keys() {
            let (a, b) = pair_index(k)
                .ok_or_else(|| InstanceError::Invalid(format!("bad metric key `{k}`")))?;
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(InstanceError::Invalid(format!("duplicate metric key `{k}`")));
            }
        }
        seen.clear();
        for k in self.omega.keys() {
            let (a, b) = pair_index(k)
                .ok_or_else(|| InstanceError::Invalid(format!("bad omega key `{k}`")))?;
            if a == b || !seen.insert((a.min(b), a.max(b))) {
                return Err(InstanceError::Invalid(format!("bad or duplicate omega key `{k}`")));
            }
        }
        Ok(())
    }
}

impl MetricField for RawSpec {
    fn metric<S: Scalar>(&self, p: &[S; DIM]) -> Result<[[S; DIM]; DIM], GeometryError> {
        let zero = p[0].zero_like();
        let mut g: [[S; DIM]; DIM] = std::array::from_fn(|_| std::array::from_fn(|_| zero.clone()));
        for (k, e) in &self.metric {
            let (a, b) = pair_index(k).ok_or_else(|| GeometryError::Invalid(k.clone()))?;
            let v = e.eval(p)?;
            g[a][b] = v.clone();
            g[b][a] = v;
        }
        Ok(g)
    }
}

impl AlmostHermitianField for RawSpec {
    fn fundamental_form<S: Scalar>(&self, p: &[S; DIM]) -> Result<[[S; DIM]; DIM], GeometryError> {
        let zero = p[0].zero_like();
        let mut o: [[S; DIM]; DIM] = std::array::from_fn(|_| std::array::from_fn(|_| zero.clone()));
        for (k, e) in &self.omega {
            let (a, b) = pair_index(k).ok_or_else(|| GeometryError::Invalid(k.clone()))?;
            let v = e.eval(p)?;
            o[b][a] = v.neg();
            o[a][b] = v;
        }
        Ok(o)
    }
}

/// Structural facts an instance claims; checks that rely on a fact the
/// instance does not claim are reported as not applicable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Hypothesis {
    /// Curvature satisfies the second Gray condition.
    Gray2,
    /// Curvature satisfies the third Gray condition.
    Gray3,
    /// Built from a surface and a holomorphic function as above.
    Family,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Geometry {
    Family(FamilyInstance),
    Raw(RawSpec),
}

impl Geometry {
    pub fn domain(&self) -> &DomainBox {
        match self {
            Geometry::Family(f) => &f.domain,
            Geometry::Raw(r) => &r.domain,
        }
    }

    pub fn validate(&self) -> Result<(), InstanceError> {
        match self {
            Geometry::Family(f) => f.validate(),
            Geometry::Raw(r) => r.validate(),
        }
    }

    pub fn as_family(&self) -> Option<&FamilyInstance> {
        match self {
            Geometry::Family(f) => Some(f),
            Geometry::Raw(_) => None,
        }
    }

    /// Whether a point may be sampled: finite SPD metric and, for the
    /// family, w > margin.
    pub fn admissible(&self, p: &[f64; DIM], margin: f64) -> bool {
        if let Geometry::Family(f) = self {
            if !(f.w(p) > margin) {
                return false;
            }
        }
        match self.metric(p) {
            Ok(g) => g.iter().flatten().all(|v| v.is_finite()) && MetricContext::new(g).is_ok(),
            Err(_) => false,
        }
    }
}

impl MetricField for Geometry {
    fn metric<S: Scalar>(&self, p: &[S; DIM]) -> Result<[[S; DIM]; DIM], GeometryError> {
        match self {
            Geometry::Family(f) => f.metric(p),
            Geometry::Raw(r) => r.metric(p),
        }
    }
}

impl AlmostHermitianField for Geometry {
    fn fundamental_form<S: Scalar>(&self, p: &[S; DIM]) -> Result<[[S; DIM]; DIM], GeometryError> {
        match self {
            Geometry::Family(f) => f.fundamental_form(p),
            Geometry::Raw(r) => r.fundamental_form(p),
        }
    }
}

/// A named geometry with its declared hypotheses.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Instance {
    pub name: String,
    pub geometry: Geometry,
    #[serde(default)]
    pub hypotheses: BTreeSet<Hypothesis>,
    #[serde(default = "default_margin")]
    pub margin: f64,
}

fn default_margin() -> f64 {
    DEFAULT_MARGIN
}

impl Instance {
    pub fn new(name: impl Into<String>, geometry: Geometry) -> Self {
        Instance {
            name: name.into(),
            geometry,
            hypotheses: BTreeSet::new(),
            margin: DEFAULT_MARGIN,
        }
    }

    pub fn with_hypotheses(mut self, hs: &[Hypothesis]) -> Self {
        self.hypotheses.extend(hs.iter().copied());
        self
    }

    pub fn has(&self, h: Hypothesis) -> bool {
        self.hypotheses.contains(&h)
    }

    pub fn validate(&self) -> Result<(), InstanceError> {
        if !(self.margin.is_finite() && self.margin >= 0.0) {
            return Err(InstanceError::Invalid("margin must be non-negative".into()));
        }
        if self.has(Hypothesis::Family) && self.geometry.as_family().is_none() {
            return Err(InstanceError::Invalid(
                "the `family` hypothesis needs a family geometry".into(),
            ));
        }
        self.geometry.validate()
    }

    pub fn sample(&self, n: usize, seed: u64) -> Result<Vec<[f64; DIM]>, InstanceError> {
        sample(&self.geometry, n, seed, self.margin)
    }
}
