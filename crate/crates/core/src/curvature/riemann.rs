//! Riemann, Ricci and Weyl tensors from a jet metric.
//!
//! Sign convention: R_{X,Y}Z = ∇_{[X,Y]}Z − [∇_X, ∇_Y]Z, the negative of the
//! common textbook operator. The covariant tensor is
//! R_ijkl = ⟨R_{∂i,∂j}∂k, ∂l⟩, so R(X,Y,X,Y) is the sectional curvature of a
//! unit orthonormal pair and Ric(X,Y) = Σ R(X,e_a,Y,e_a).

use crate::curvature::connection::{christoffel, covariant_derivative};
use crate::curvature::operator::{identity, kulkarni_nomizu, operator_matrix, SingerThorpe};
use crate::error::{GeometryError, JetError};
use crate::exterior::{MetricContext, Orientation, Tensor, DIM};
use crate::jets::Jet;
use crate::scalar::Scalar;

/// Metric and curvature of one chart point, as jets.
#[derive(Clone, Debug)]
pub struct Curvature {
    pub ctx: MetricContext<Jet>,
    /// Γ^k_ij
    pub gamma: Tensor<Jet>,
    pub riemann: Tensor<Jet>,
    pub ricci: Tensor<Jet>,
    pub scalar: Jet,
    pub ric0: Tensor<Jet>,
    /// h = ½Ric₀ + (s/24) g
    pub normalized_ricci: Tensor<Jet>,
    pub weyl: Tensor<Jet>,
}

impl Curvature {
    pub fn from_metric(ctx: MetricContext<Jet>) -> Result<Self, GeometryError> {
        let gamma = christoffel(&ctx)?;
        let dgamma = gamma.partials()?;
        let base = ctx.sqrt_det.base();
        let zero = Jet::constant(base, 0.0);

        // R_ijkl = −g_lm (∂_iΓ^m_jk − ∂_jΓ^m_ik + Γ^m_ia Γ^a_jk − Γ^m_ja Γ^a_ik)
        let riemann = Tensor::covariant(4, |x| {
            let (i, j, k, l) = (x[0], x[1], x[2], x[3]);
            let mut acc = zero.clone();
            for m in 0..DIM {
                let mut r = dgamma.get(&[i, m, j, k]).sub(dgamma.get(&[j, m, i, k]));
                for a in 0..DIM {
                    r.add_mul_assign(gamma.get(&[m, i, a]), gamma.get(&[a, j, k]));
                    r.add_scaled_assign(&gamma.get(&[m, j, a]).mul(gamma.get(&[a, i, k])), -1.0);
                }
                acc.add_mul_assign(ctx.g(l, m), &r);
            }
            acc.neg()
        });
        let ricci = Tensor::covariant(2, |x| {
            let mut acc = zero.clone();
            for b in 0..DIM {
                for d in 0..DIM {
                    acc.add_mul_assign(ctx.ginv(b, d), riemann.get(&[x[0], b, x[1], d]));
                }
            }
            acc
        });
        let scalar = trace(&ricci, &ctx);
        let ric0 = ricci.sub(&ctx.g.scale_by(&scalar.scale(0.25)));
        let normalized_ricci = ric0.scale(0.5).add(&ctx.g.scale_by(&scalar.scale(1.0 / 24.0)));
        let weyl = riemann.sub(&kulkarni_nomizu(&normalized_ricci, &ctx.g));
        Ok(Curvature {
            ctx,
            gamma,
            riemann,
            ricci,
            scalar,
            ric0,
            normalized_ricci,
            weyl,
        })
    }

    pub fn nabla(&self, t: &Tensor<Jet>) -> Result<Tensor<Jet>, JetError> {
        covariant_derivative(t, &self.gamma)
    }

    /// 6×6 curvature operator in an orthonormal bivector basis.
    pub fn operator(&self) -> nalgebra::Matrix6<f64> {
        let ctx = self.ctx.values();
        operator_matrix(&self.riemann.values(), &ctx.orthonormal_frame())
    }

    pub fn singer_thorpe(&self, o: Orientation) -> SingerThorpe {
        SingerThorpe::from_operator(&self.operator(), o)
    }

    pub fn identity_op(&self) -> Tensor<Jet> {
        identity(&self.ctx)
    }
}

/// g^{ij} S_ij
pub fn trace<S: Scalar>(s: &Tensor<S>, ctx: &MetricContext<S>) -> S {
    let mut acc = ctx.sqrt_det.zero_like();
    for i in 0..DIM {
        for j in 0..DIM {
            acc.add_mul_assign(ctx.ginv(i, j), s.get(&[i, j]));
        }
    }
    acc
}
