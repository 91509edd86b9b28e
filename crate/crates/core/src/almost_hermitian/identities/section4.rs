//! The Kähler nullity and the opposite structure under the third Gray
//! condition.

use super::bianchi::contract_with;
use super::chern::embed;
use super::{max_of, record, skip, PointState, Residuals, KAHLER_POINT};
use crate::almost_hermitian::algebra::{one_form_times, sharp};
use crate::almost_hermitian::calculus::dj_function;
use crate::curvature::operator::apply;
use crate::exterior::{differential, endomorphism, exterior_derivative, interior, DIM};
use crate::jets::Jet;

const NULLITY_CHECKS: [&str; 10] = [
    "m1",
    "naa",
    "abar",
    "na-bar-Om",
    "na-bar-phi",
    "bar-b",
    "d_omega_bar",
    "barpsi",
    "D_tangent",
    "sigma_explicit",
];

pub fn evaluate(st: &PointState, out: &mut Residuals) {
    nabla_i(st, out);
    let Some(n) = &st.nullity else {
        for name in NULLITY_CHECKS {
            skip(out, name, KAHLER_POINT);
        }
        return;
    };
    let hd = &st.hd;
    let g = &st.gauge;
    let ctx = hd.ctx();
    let inv = n.a_norm2.recip();

    record(out, "m1", || {
        let half_dlog = differential(&st.log_norm2()?)?.scale(0.5);
        let w3phi = apply(&st.u2.w3, &g.phi, ctx);
        let via_w3 = hd
            .j_one_form(&contract_with(&w3phi, &g.a, st))
            .scale_by(&inv.clone()?)
            .scale(-1.0);
        Ok(st.norm(&n.m1.sub(&half_dlog)).max(st.norm(&n.m1.sub(&via_w3))))
    });
    record(out, "naa", || {
        let jm1 = hd.j_one_form(&n.m1);
        let jm0 = hd.j_one_form(&n.m0);
        let half = n.n2.sub(&g.a.scale(0.5));
        Ok(max_of(&[
            st.norm(&n.n1.add(&g.b).add(&jm1)),
            st.norm(&n.m2.sub(&g.ja.scale(0.5)).sub(&jm0)),
            st.norm(&n.n2.add(&hd.j_one_form(&n.m2))),
            st.norm(&half.sub(&n.m0)),
        ]))
    });
    record(out, "abar", || {
        Ok(st.norm(&n.a_bar(hd)?.sub(&n.m0.scale(2.0))))
    });
    record(out, "na-bar-Om", || {
        let abar = n.a_bar(hd)?;
        let model = one_form_times(&abar, &n.phi_bar)
            .sub(&one_form_times(&n.i_one_form(&abar), &n.iphi_bar));
        Ok(st.norm(&hd.curv.nabla(&n.omega_bar)?.sub(&model)))
    });
    record(out, "na-bar-phi", || {
        let abar = n.a_bar(hd)?;
        let bbar = n.b_bar(hd)?;
        let model = one_form_times(&bbar, &n.iphi_bar).sub(&one_form_times(&abar, &n.omega_bar));
        Ok(st.norm(&hd.curv.nabla(&n.phi_bar)?.sub(&model)))
    });
    record(out, "bar-b", || {
        let pred = g.b.scale(3.0).add(&dj_function(hd, &st.log_norm2()?)?);
        Ok(st.norm(&n.b_bar(hd)?.sub(&pred)))
    });
    record(out, "d_omega_bar", || Ok(st.norm(&exterior_derivative(&n.omega_bar)?)));
    record(out, "barpsi", || {
        let nob = hd.curv.nabla(&n.omega_bar)?;
        let dlog = sharp(&differential(&st.log_norm2()?)?, ctx);
        let psi = interior(&dlog, &nob).scale(0.5);
        let nob2 = nob.dot(&nob, ctx).scale(0.5);
        let coeff = st.u2.s.add(&nob2.scale(0.25)).scale(0.25);
        let first = st.u2.rho0.sub(&n.omega_bar.scale_by(&coeff)).sub(&psi);
        let rho_bar = apply(&hd.curv.riemann, &n.omega_bar, ctx);
        let rho_bar_pp = crate::almost_hermitian::algebra::anti_invariant_part(&n.i, &rho_bar);
        Ok(st.norm(&first).max(st.norm(&rho_bar_pp.sub(&psi))))
    });

    let Some(f) = st.family else {
        for name in ["D_tangent", "sigma_explicit"] {
            skip(out, name, "not a family instance");
        }
        return;
    };
    record(out, "D_tangent", || {
        // P_D fixes ∂x, ∂y and kills ∂z, ∂t.
        let p = n.proj_d.values();
        let mut errs = Vec::new();
        for i in 0..DIM {
            for k in 0..DIM {
                let want = if i == k && i < 2 { 1.0 } else { 0.0 };
                errs.push(p.get(&[k, i]) - want);
            }
        }
        Ok(max_of(&errs))
    });
    record(out, "sigma_explicit", || {
        let vars = Jet::coordinates(st.point);
        let gs = embed(f.sigma_metric(&vars)?);
        let os = embed(f.sigma_form(&vars)?);
        let ob = embed(f.opposite_form(&vars)?);
        Ok(max_of(&[
            st.norm(&n.g_sigma.sub(&gs)),
            st.norm(&n.omega_sigma.sub(&os)),
            st.norm(&n.omega_bar.sub(&ob)),
        ]))
    });
}

/// |∇I|, using the explicit opposite form on family instances and the one
/// built from the nullity otherwise.
fn nabla_i(st: &PointState, out: &mut Residuals) {
    let vars = Jet::coordinates(st.point);
    let ob = match (st.family, &st.nullity) {
        (Some(f), _) => f.opposite_form(&vars).map(embed),
        (None, Some(n)) => Ok(n.omega_bar.clone()),
        (None, None) => {
            skip(out, "nabla_I", KAHLER_POINT);
            return;
        }
    };
    record(out, "nabla_I", || {
        let i = endomorphism(&ob?, st.hd.ctx());
        Ok(st.norm(&st.hd.curv.nabla(&i)?))
    });
}
