//! Weitzenböck formulas for Ω and for ∇Ω.

use super::{record, PointState, Residuals};
use crate::almost_hermitian::algebra::{along_endo, Field};
use crate::almost_hermitian::calculus::{
    curvature_action, d_nabla, delta_nabla, j_commutator, rough_laplacian,
};
use crate::almost_hermitian::hermitian::U2Curvature;
use crate::curvature::codifferential_op;
use crate::error::GeometryError;
use crate::exterior::{compose, differential, endomorphism, form_inner};

/// A_Z = (d^∇Ric'')_Z + ι_{JZ} dρ as a Λ²-valued 1-form [z][x][y].
pub fn a_tensor(st: &PointState) -> Result<Field, GeometryError> {
    let hd = &st.hd;
    let nric = hd.curv.nabla(&st.u2.ric_pp)?;
    let drho = crate::exterior::exterior_derivative(&st.u2.rho)?;
    Ok(crate::exterior::Tensor::covariant(3, |i| {
        let (z, x, y) = (i[0], i[1], i[2]);
        let mut acc = nric.get(&[x, y, z]).sub(nric.get(&[y, x, z]));
        for a in 0..crate::exterior::DIM {
            acc.add_mul_assign(hd.j.get(&[a, z]), drho.get(&[a, x, y]));
        }
        acc
    }))
}

/// ∇*∇(∇Ω).
fn rough_nabla_omega(st: &PointState) -> Result<Field, GeometryError> {
    rough_laplacian(&st.hd.curv, &st.hd.nabla_omega)
}

pub fn evaluate(st: &PointState, out: &mut Residuals) {
    let hd = &st.hd;
    let u = &st.u2;
    let v = &hd.nabla_omega;
    let km_s = u.kappa.sub(&u.s);

    record(out, "weitzOm", || {
        let lhs = rough_laplacian(&hd.curv, &hd.omega)?.scale(0.5);
        Ok(st.norm(&lhs.sub(&u.rho_star.sub(&u.rho))))
    });
    record(out, "delnaom", || {
        let lhs = delta_nabla(&hd.curv, v)?;
        let rhs = u
            .rho_star_pp
            .scale(2.0)
            .add(&hd.omega.scale_by(&km_s.scale(1.0 / 3.0)));
        Ok(st.norm(&lhs.sub(&rhs)))
    });
    record(out, "ricid", || {
        let lhs = d_nabla(&hd.curv, v)?;
        Ok(st.norm(&lhs.sub(&j_commutator(hd, &hd.curv.riemann))))
    });
    record(out, "jpb2", || {
        let lhs = hd
            .curv
            .nabla(&delta_nabla(&hd.curv, v)?)?
            .add(&delta_nabla(&hd.curv, &d_nabla(&hd.curv, v)?)?);
        let ric = U2Curvature::ricci_endo(hd, &hd.curv.ricci);
        let rhs = rough_nabla_omega(st)?
            .add(&along_endo(v, &ric))
            .add(&curvature_action(&hd.curv.riemann, v, &hd.curv));
        Ok(st.norm(&lhs.sub(&rhs)))
    });
    record(out, "laplacenaom*", || {
        let lhs = rough_nabla_omega(st)?;
        let a_plus = st.sd(&a_tensor(st)?, 1.0);
        let ric = U2Curvature::ricci_endo(hd, &hd.curv.ricci);
        let ric0p = U2Curvature::ricci_endo(hd, &u.ric0_prime);
        let rhs = hd
            .curv
            .nabla(&u.rho_star_pp)?
            .scale(2.0)
            .sub(&st.j_slices(&st.pp(&a_plus)).scale(2.0))
            .sub(&along_endo(v, &ric))
            .sub(&curvature_action(&hd.curv.riemann, v, &hd.curv).scale(2.0))
            .add(&along_endo(v, &ric0p).scale(2.0))
            .add(&st.times_omega(&differential(&km_s)?).scale(1.0 / 3.0))
            .add(&v.scale_by(&km_s.scale(1.0 / 3.0)));
        Ok(st.norm(&lhs.sub(&rhs)))
    });
    record(out, "laplacenaom", || {
        let lhs = rough_nabla_omega(st)?;
        let rhs = laplacenaom_rhs(st)?;
        Ok(st.norm(&lhs.sub(&rhs)))
    });
    record(out, "weitzenbock1", || {
        let ric0 = U2Curvature::ricci_endo(hd, &hd.curv.ric0);
        let res = rough_nabla_omega(st)?
            .add(&v.scale_by(&u.s.scale(0.75)))
            .add(&along_endo(v, &ric0));
        Ok(st.norm(&res))
    });
}

/// Right side of the expanded formula for ∇*∇(∇Ω).
pub fn laplacenaom_rhs(st: &PointState) -> Result<Field, GeometryError> {
    let hd = &st.hd;
    let u = &st.u2;
    let ctx = hd.ctx();
    let v = &hd.nabla_omega;
    let km_s = u.kappa.sub(&u.s);
    let ric0p = U2Curvature::ricci_endo(hd, &u.ric0_prime);
    let ric0pp = U2Curvature::ricci_endo(hd, &u.ric_pp);
    let dw3 = codifferential_op(&hd.curv, &u.w3)?;
    let dw3_j = along_endo(&dw3, &hd.j);
    let coeff = crate::exterior::Tensor::covariant(1, |i| {
        let slice = crate::almost_hermitian::algebra::slice(&dw3_j, i[0]);
        form_inner(&slice, &hd.omega, ctx).scale(-2.0)
    })
    .add(&differential(&km_s)?.scale(1.0 / 3.0));
    let j_rho = compose(&hd.j, &endomorphism(&u.rho_star_pp, ctx));
    let tilde = U2Curvature::ricci_piece(&u.ric_pp, hd);
    Ok(along_endo(v, &ric0p)
        .scale(-1.0)
        .sub(&v.scale_by(&u.s.scale(0.75)))
        .add(&st.times_omega(&coeff))
        .add(&st.pp(&hd.curv.nabla(&u.rho_star_pp)?).scale(2.0))
        .add(&along_endo(v, &j_rho).scale(2.0))
        .sub(&along_endo(v, &ric0pp))
        .sub(&st.j_slices(&st.pp(&a_tensor(st)?)).scale(2.0))
        .sub(&curvature_action(&tilde, v, &hd.curv).scale(2.0)))
}
