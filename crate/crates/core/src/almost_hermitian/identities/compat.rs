//! Preflight: the almost Kähler structure itself.

use super::{record, skip, PointState, Residuals};
use crate::exterior::{compose, exterior_derivative, form_inner, Slot, Tensor};
use crate::almost_hermitian::algebra::pullback2;

pub fn evaluate(st: &PointState, out: &mut Residuals) {
    let hd = &st.hd;
    let ctx = hd.ctx();
    record(out, "d_omega", || Ok(st.norm(&exterior_derivative(&hd.omega)?)));
    record(out, "j_squared", || {
        let j2 = compose(&hd.j, &hd.j).values();
        let id = Tensor::from_fn(&[Slot::Contra, Slot::Co], |i| if i[0] == i[1] { 1.0 } else { 0.0 });
        Ok(j2.add(&id).max_abs())
    });
    record(out, "j_orthogonal", || {
        Ok(pullback2(&hd.j, &ctx.g).sub(&ctx.g).values().max_abs())
    });
    record(out, "omega_norm", || {
        Ok((form_inner(&hd.omega, &hd.omega, ctx).value() - 2.0).abs())
    });
    record(out, "metric_spd", || {
        let m = ctx.values().matrix();
        let lmin = ((m + m.transpose()) * 0.5).symmetric_eigenvalues().min();
        Ok((-lmin).max(0.0))
    });
    match st.family {
        Some(f) => record(out, "cauchy_riemann", || {
            Ok(f.h.cauchy_riemann_residual(st.point[0], st.point[1])?)
        }),
        None => skip(out, "cauchy_riemann", "not a family instance"),
    }
}
