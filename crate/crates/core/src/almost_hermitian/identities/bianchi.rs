//! Differential Bianchi identities split along the U(2) decomposition.

use super::weitzenbock::a_tensor;
use super::{max_of, record, PointState, Residuals};
use crate::almost_hermitian::algebra::{along_endo, codifferential, inner_slices, Field};
use crate::almost_hermitian::calculus::dj_function;
use crate::curvature::{codifferential_op, cotton_york, delta_weyl};
use crate::error::GeometryError;
use crate::exterior::{differential, endomorphism, exterior_derivative};

/// δ of a 2-tensor: (δS)_Z = −g^{ij}(∇_i S)_{jZ}.
fn delta2(st: &PointState, s: &Field) -> Result<Field, GeometryError> {
    Ok(codifferential(&st.hd.curv.nabla(s)?, st.hd.ctx()))
}

/// Terms shared by several identities.
struct Terms {
    a: Field,
    dw3: Field,
    /// ∇_{JZ}Ω
    nabla_jz_omega: Field,
    /// ∇_{ρ₀(Z)}Ω
    nabla_rho0_omega: Field,
    /// ∇_{ρ*''(Z)}Ω
    nabla_rhopp_omega: Field,
    /// ∇_{JZ}ρ*''
    nabla_jz_rhopp: Field,
    delta_rhopp: Field,
}

impl Terms {
    fn new(st: &PointState) -> Result<Self, GeometryError> {
        let hd = &st.hd;
        let u = &st.u2;
        let ctx = hd.ctx();
        let v = &hd.nabla_omega;
        Ok(Terms {
            a: a_tensor(st)?,
            dw3: codifferential_op(&hd.curv, &u.w3)?,
            nabla_jz_omega: along_endo(v, &hd.j),
            nabla_rho0_omega: along_endo(v, &endomorphism(&u.rho0, ctx)),
            nabla_rhopp_omega: along_endo(v, &endomorphism(&u.rho_star_pp, ctx)),
            nabla_jz_rhopp: along_endo(&hd.curv.nabla(&u.rho_star_pp)?, &hd.j),
            delta_rhopp: delta2(st, &u.rho_star_pp)?,
        })
    }
}

pub fn evaluate(st: &PointState, out: &mut Residuals) {
    let terms = match Terms::new(st) {
        Ok(t) => t,
        Err(e) => {
            for name in NAMES {
                record(out, name, || Err(e.clone()));
            }
            return;
        }
    };
    let hd = &st.hd;
    let u = &st.u2;
    let ctx = hd.ctx();
    let km_s = u.kappa.sub(&u.s);

    record(out, "bianchi+", || {
        let res = st
            .times_omega(&dj_function(hd, &km_s)?)
            .scale(-0.25)
            .add(&st.sd(&st.wedge_flat(&differential(&km_s)?)?, 1.0).scale(1.0 / 6.0))
            .add(&st.times_omega(&terms.delta_rhopp))
            .add(&terms.nabla_jz_omega.scale_by(&u.kappa.scale(0.25)))
            .sub(&terms.nabla_rho0_omega)
            .add(&terms.nabla_rhopp_omega)
            .add(&terms.nabla_jz_rhopp)
            .add(&terms.dw3.scale(2.0))
            .add(&st.sd(&terms.a, 1.0));
        Ok(st.norm(&res))
    });
    record(out, "bianchi-", || {
        let dw = delta_weyl(&hd.curv)?;
        let res = along_endo(&hd.curv.nabla(&u.rho0)?, &hd.j)
            .add(&st.sd(&st.wedge_flat(&differential(&u.s)?)?, -1.0).scale(1.0 / 6.0))
            .sub(&st.sd(&dw, -1.0).scale(2.0))
            .sub(&st.sd(&terms.a, -1.0));
        Ok(st.norm(&res))
    });
    record(out, "bianchiOm", || {
        let res = dj_function(hd, &km_s)?
            .scale(-1.0 / 3.0)
            .add(&inner_slices(&terms.dw3, &hd.omega, ctx).scale(2.0))
            .add(&terms.delta_rhopp.scale(2.0))
            .sub(&inner_slices(&terms.nabla_jz_omega, &u.rho_star_pp, ctx))
            .add(&inner_slices(&st.sd(&terms.a, 1.0), &hd.omega, ctx));
        Ok(st.norm(&res))
    });
    record(out, "bianchi+2,0", || {
        let sum = st
            .wedge_flat(&differential(&km_s)?)?
            .scale(1.0 / 6.0)
            .add(&terms.nabla_jz_omega.scale_by(&u.kappa.scale(0.25)))
            .sub(&terms.nabla_rho0_omega)
            .add(&terms.dw3.scale(2.0))
            .add(&terms.nabla_rhopp_omega)
            .add(&terms.nabla_jz_rhopp)
            .add(&st.sd(&terms.a, 1.0));
        Ok(st.norm(&st.pp(&sum)))
    });
    record(out, "riccibianchi", || {
        let lhs = delta2(st, &u.rho0.sub(&hd.omega.scale_by(&u.s.scale(0.25))))?.scale(-1.0);
        let rhs = hd.j_one_form(&delta2(st, &u.ric_pp)?);
        Ok(st.norm(&lhs.sub(&rhs)))
    });
    record(out, "contracted_bianchi", || {
        let t = hd.curv.ric0.sub(&ctx.g.scale_by(&u.s.scale(0.25)));
        Ok(st.norm(&delta2(st, &t)?))
    });
    record(out, "cotton-york", || {
        let c = cotton_york(&hd.curv)?;
        let rhs = along_endo(&hd.curv.nabla(&u.rho0)?, &hd.j)
            .sub(&st.times_omega(&dj_function(hd, &u.s)?).scale(0.25))
            .add(&terms.nabla_rho0_omega)
            .add(&st.wedge_flat(&differential(&u.s)?)?.scale(1.0 / 6.0))
            .sub(&terms.a);
        Ok(st.norm(&c.scale(2.0).sub(&rhs)))
    });
    record(out, "delta_w_c", || {
        let c = cotton_york(&hd.curv)?;
        Ok(st.norm(&delta_weyl(&hd.curv)?.sub(&c)))
    });
    record(out, "deltaw+1", || {
        let lhs = codifferential_op(&hd.curv, &u.w1)?;
        let rhs = st
            .times_omega(&dj_function(hd, &u.kappa)?)
            .scale(-1.0 / 8.0)
            .add(&terms.nabla_jz_omega.scale_by(&u.kappa.scale(1.0 / 8.0)))
            .add(&st.sd(&st.wedge_flat(&differential(&u.kappa)?)?, 1.0).scale(1.0 / 12.0));
        Ok(st.norm(&lhs.sub(&rhs)))
    });
    record(out, "deltaw+2", || {
        let lhs = codifferential_op(&hd.curv, &u.w2)?;
        let rhs = terms
            .nabla_jz_rhopp
            .add(&terms.nabla_rhopp_omega)
            .add(&st.times_omega(&terms.delta_rhopp))
            .scale(0.5);
        Ok(st.norm(&lhs.sub(&rhs)))
    });
    record(out, "lem3-1", || {
        let g = &st.gauge;
        let d_norm = differential(&hd.norm2)?.scale(0.25);
        let d_a = differential(&g.a_norm2(hd))?;
        let via_delta = hd
            .j_one_form(&inner_slices(&terms.dw3, &hd.omega, ctx))
            .scale(-1.0);
        let w3phi = crate::curvature::operator::apply(&u.w3, &g.phi, ctx);
        let via_w3 = hd.j_one_form(&contract_with(&w3phi, &g.a, st)).scale(-2.0);
        Ok(max_of(&[
            st.norm(&d_norm.sub(&d_a)),
            st.norm(&d_a.sub(&via_delta)),
            st.norm(&via_delta.sub(&via_w3)),
        ]))
    });
    record(out, "rho_closed", || Ok(st.norm(&exterior_derivative(&u.rho)?)));
}

/// The 1-form ψ(α♯, ·).
pub fn contract_with(psi: &Field, alpha: &Field, st: &PointState) -> Field {
    let x = crate::almost_hermitian::algebra::sharp(alpha, st.hd.ctx());
    crate::exterior::interior(&x, psi)
}

const NAMES: [&str; 12] = [
    "bianchi+",
    "bianchi-",
    "bianchiOm",
    "bianchi+2,0",
    "riccibianchi",
    "contracted_bianchi",
    "cotton-york",
    "delta_w_c",
    "deltaw+1",
    "deltaw+2",
    "lem3-1",
    "rho_closed",
];
