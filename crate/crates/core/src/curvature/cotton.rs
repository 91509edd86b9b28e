//! Cotton–York tensor and the codifferential of the Weyl tensor.
//!
//! Λ²-valued 1-forms are stored with the 1-form index first: V[z][x][y] is
//! V_Z(X, Y).

use crate::curvature::riemann::Curvature;
use crate::error::JetError;
use crate::exterior::{hodge, MetricContext, Orientation, Tensor, DIM};
use crate::jets::Jet;
use crate::scalar::Scalar;

/// C_Z(X,Y) = C(X,Y,Z) = −(∇_X h)(Y,Z) + (∇_Y h)(X,Z).
pub fn cotton_york(curv: &Curvature) -> Result<Tensor<Jet>, JetError> {
    let nh = curv.nabla(&curv.normalized_ricci)?;
    Ok(Tensor::covariant(3, |i| {
        let (z, x, y) = (i[0], i[1], i[2]);
        nh.get(&[y, x, z]).sub(nh.get(&[x, y, z]))
    }))
}

/// Codifferential of a curvature-type tensor viewed as a Λ²-valued 2-form:
/// (δT)_Z(X,Y) = −g^{ij} (∇_i T)_{jZXY}.
pub fn codifferential_op(curv: &Curvature, t: &Tensor<Jet>) -> Result<Tensor<Jet>, JetError> {
    let nt = curv.nabla(t)?;
    let ctx = &curv.ctx;
    let base = ctx.sqrt_det.base();
    Ok(Tensor::covariant(3, |idx| {
        let mut acc = Jet::constant(base, 0.0);
        for i in 0..DIM {
            for j in 0..DIM {
                acc.add_mul_assign(ctx.ginv(i, j), nt.get(&[i, j, idx[0], idx[1], idx[2]]));
            }
        }
        acc.neg()
    }))
}

pub fn delta_weyl(curv: &Curvature) -> Result<Tensor<Jet>, JetError> {
    codifferential_op(curv, &curv.weyl)
}

/// Self-dual (sign = +1) or anti-self-dual (−1) part in the 2-form slots of
/// a Λ²-valued 1-form.
pub fn sd_part<S: Scalar>(
    v: &Tensor<S>,
    ctx: &MetricContext<S>,
    o: Orientation,
    sign: f64,
) -> Tensor<S> {
    let slices: Vec<Tensor<S>> = (0..DIM)
        .map(|z| {
            let vz = Tensor::covariant(2, |i| v.get(&[z, i[0], i[1]]).clone());
            vz.add(&hodge(&vz, ctx, o).scale(sign)).scale(0.5)
        })
        .collect();
    Tensor::covariant(3, |i| slices[i[0]].get(&i[1..]).clone())
}
