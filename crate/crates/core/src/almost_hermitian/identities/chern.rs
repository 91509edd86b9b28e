//! Ricci identities in the gauge and the canonical Chern forms.

use super::{record, skip, PointState, Residuals, KAHLER_POINT};
use crate::almost_hermitian::algebra::Field;
use crate::almost_hermitian::calculus::ddj;
use crate::curvature::operator::apply;
use crate::error::GeometryError;
use crate::exterior::{exterior_derivative, wedge, Tensor, DIM};

/// γ_J = R(Ω) − a∧Ja.
pub fn gamma_j(st: &PointState) -> Result<Field, GeometryError> {
    Ok(st.u2.rho_star.sub(&wedge(&st.gauge.a, &st.gauge.ja)?))
}

/// γ_I = R(Ω̄) − ā∧Iā, with ā read off from ∇Ω̄.
pub fn gamma_i(st: &PointState) -> Result<Option<Field>, GeometryError> {
    let Some(n) = &st.nullity else {
        return Ok(None);
    };
    let ctx = st.hd.ctx();
    let abar = n.a_bar(&st.hd)?;
    let rho = apply(&st.hd.curv.riemann, &n.omega_bar, ctx);
    Ok(Some(rho.sub(&wedge(&abar, &n.i_one_form(&abar))?)))
}

/// Embed a 4×4 component array as a covariant 2-tensor of jets.
pub(crate) fn embed(m: [[crate::jets::Jet; DIM]; DIM]) -> Field {
    Tensor::covariant(2, |i| m[i[0]][i[1]].clone())
}

pub fn evaluate(st: &PointState, out: &mut Residuals) {
    let hd = &st.hd;
    let g = &st.gauge;
    let ctx = hd.ctx();
    let r = &hd.curv.riemann;

    record(out, "star", || {
        let first = exterior_derivative(&g.a)?
            .sub(&wedge(&g.ja, &g.b)?)
            .add(&apply(r, &g.jphi, ctx));
        let second = exterior_derivative(&g.ja)?
            .add(&wedge(&g.a, &g.b)?)
            .add(&apply(r, &g.phi, ctx));
        Ok(st.norm(&first).max(st.norm(&second)))
    });
    record(out, "starstar", || {
        let res = exterior_derivative(&g.b)?
            .sub(&wedge(&g.a, &g.ja)?)
            .add(&st.u2.rho_star);
        Ok(st.norm(&res))
    });
    record(out, "chernform_closed", || Ok(st.norm(&exterior_derivative(&gamma_j(st)?)?)));
    match &st.nullity {
        Some(_) => record(out, "gammaI-gammaJ", || {
            let gi = gamma_i(st)?.expect("nullity present");
            let res = gi
                .sub(&gamma_j(st)?.scale(3.0))
                .add(&ddj(hd, &st.log_norm2()?)?);
            Ok(st.norm(&res))
        }),
        None => skip(out, "gammaI-gammaJ", KAHLER_POINT),
    }

    let Some(f) = st.family else {
        for name in ["chernforms_I", "chernforms_J", "ricci_shape"] {
            skip(out, name, "not a family instance");
        }
        return;
    };
    let vars = crate::jets::Jet::coordinates(st.point);
    let sigma = f.sigma_form(&vars).map(embed);
    let g_sigma = f.sigma_metric(&vars).map(embed);
    let s = &st.u2.s;
    match &st.nullity {
        Some(_) => record(out, "chernforms_I", || {
            let gi = gamma_i(st)?.expect("nullity present");
            let sigma = sigma.clone()?;
            Ok(st.norm(&gi.sub(&sigma.scale_by(&s.scale(0.5)))))
        }),
        None => record(out, "chernforms_I", || {
            // Kähler points: ā = 0 and γ_I = R(Ω̄) with the explicit Ω̄.
            let ob = embed(f.opposite_form(&vars)?);
            let gi = apply(r, &ob, ctx);
            Ok(st.norm(&gi.sub(&sigma.clone()?.scale_by(&s.scale(0.5)))))
        }),
    }
    record(out, "chernforms_J", || {
        let coeff = s.scale(0.5).add(&hd.norm2.scale(0.25));
        Ok(st.norm(&gamma_j(st)?.sub(&sigma.clone()?.scale_by(&coeff))))
    });
    record(out, "ricci_shape", || {
        let gs = g_sigma.clone()?;
        Ok(st.norm(&hd.curv.ricci.sub(&gs.scale_by(&s.scale(0.5)))))
    });
}
