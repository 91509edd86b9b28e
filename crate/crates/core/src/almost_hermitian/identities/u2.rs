//! U(2) splitting of the curvature and the first-order J calculus.

use super::{max_of, record, PointState, Residuals};
use crate::almost_hermitian::calculus::{ddj, dj_function, dj_one_form, laplacian, nabla_j};
use crate::almost_hermitian::hermitian::U2Curvature;
use crate::curvature::operator::sd_projector;
use crate::exterior::{differential, form_inner, Tensor, DIM};
use crate::jets::Jet;

pub fn evaluate(st: &PointState, out: &mut Residuals) {
    let hd = &st.hd;
    let u = &st.u2;
    let g = &st.gauge;
    let ctx = hd.ctx();

    record(out, "u2_recompose", || {
        let rebuilt = u
            .scalar_piece(hd)
            .add(&u.w1)
            .add(&u.w2)
            .add(&g.w3_model())
            .add(&U2Curvature::ricci_piece(&u.ric0_prime, hd))
            .add(&U2Curvature::ricci_piece(&u.ric_pp, hd))
            .add(&u.wminus);
        Ok(st.norm(&hd.curv.riemann.sub(&rebuilt)))
    });
    record(out, "s_star", || {
        Ok((u.s_star.value() - (2.0 * u.kappa.value() + u.s.value()) / 3.0).abs())
    });
    record(out, "s*-s", || {
        Ok((u.s_star.value() - u.s.value() - hd.norm2.value()).abs())
    });
    record(out, "naOm-N", || {
        let n = hd.nijenhuis()?;
        let rhs = Tensor::covariant(3, |i| {
            let mut acc = st.zero();
            for b in 0..DIM {
                acc.add_mul_assign(hd.omega.get(&[i[0], b]), n.get(&[b, i[1], i[2]]));
            }
            acc.scale(0.5)
        });
        Ok(st.norm(&hd.nabla_omega.sub(&rhs)))
    });
    record(out, "naJ", || {
        let nj = nabla_j(hd)?;
        // (∇_{JX}J) + J∘(∇_X J)
        let res = Tensor::covariant(3, |i| {
            let (x, a, k) = (i[0], i[1], i[2]);
            let mut acc = st.zero();
            for m in 0..DIM {
                acc.add_mul_assign(hd.j.get(&[m, x]), nj.get(&[m, a, k]));
                acc.add_mul_assign(hd.j.get(&[a, m]), nj.get(&[x, m, k]));
            }
            acc
        });
        Ok(res.values().max_abs())
    });
    record(out, "ddJ+dJd", || {
        let f = st.test_function();
        let djf = dj_function(hd, &f)?;
        let lhs = ddj(hd, &f)?.add(&dj_one_form(hd, &differential(&f)?)?);
        let n = hd.nijenhuis()?;
        let rhs = Tensor::covariant(2, |i| {
            let mut acc = st.zero();
            for c in 0..DIM {
                acc.add_mul_assign(djf.get(&[c]), n.get(&[c, i[0], i[1]]));
            }
            acc
        });
        Ok(st.norm(&lhs.sub(&rhs)))
    });
    record(out, "laplacian", || {
        let f = st.test_function();
        let lap = laplacian(&hd.curv, &f)?;
        let alt = form_inner(&ddj(hd, &f)?, &hd.omega, ctx).neg();
        Ok((lap.value() - alt.value()).abs())
    });
    record(out, "na-om", || Ok(st.norm(&hd.nabla_omega.sub(&g.nabla_omega_model()))));
    record(out, "na-phi", || {
        let nphi = hd.curv.nabla(&g.phi)?;
        let njphi = hd.curv.nabla(&g.jphi)?;
        Ok(st.norm(&nphi.sub(&g.nabla_phi_model(hd))).max(st.norm(&njphi.sub(&g.nabla_jphi_model(hd)))))
    });
    record(out, "a_norm", || {
        Ok((hd.norm2.value() - 4.0 * g.a_norm2(hd).value()).abs())
    });
    record(out, "gauge_orthonormal", || {
        let basis = [&hd.omega, &g.phi, &g.jphi];
        let mut errs = Vec::new();
        for (i, x) in basis.iter().enumerate() {
            for (j, y) in basis.iter().enumerate() {
                let want = if i == j { 2.0 } else { 0.0 };
                errs.push(form_inner(x, y, ctx).value() - want);
            }
        }
        let pminus = sd_projector(ctx, hd.orientation, -1.0);
        for x in basis {
            let m = crate::curvature::operator::apply(&pminus, x, ctx);
            errs.push(st.norm(&m));
        }
        Ok(max_of(&errs))
    });
    record(out, "gauge_rotation", || {
        let theta = rotation_angle(st);
        let rot = g.rotated(hd, &theta, &u.w3)?;
        let (c, s) = (theta.cos(), theta.sin());
        let a_pred = g.a.scale_by(&c).sub(&g.ja.scale_by(&s));
        let b_pred = g.b.add(&differential(&theta)?);
        Ok(st.norm(&rot.a.sub(&a_pred)) + st.norm(&rot.b.sub(&b_pred)))
    });
}

/// θ = 0.3 + 0.2x, the gauge rotation used by the covariance checks.
pub fn rotation_angle(st: &PointState) -> Jet {
    let [x, ..] = Jet::coordinates(st.point);
    x.scale(0.2).add_const(0.3)
}
