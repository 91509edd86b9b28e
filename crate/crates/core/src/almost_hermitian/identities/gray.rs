//! Gray curvature conditions, measured relative to |R|.

use super::{record, PointState, Residuals};
use crate::almost_hermitian::algebra::{pullback4, Field};
use crate::curvature::operator::{compose, identity, in_frame, kulkarni_nomizu};
use crate::exterior::{Tensor, DIM};

/// Replace the listed slots of a covariant 4-tensor by their J-images:
/// T(…, J·, …).
pub fn j_slots(t: &Tensor<f64>, j: &Tensor<f64>, slots: &[usize]) -> Tensor<f64> {
    let mut step = t.clone();
    for &s in slots {
        step = Tensor::covariant(4, |i| {
            let mut src = [i[0], i[1], i[2], i[3]];
            let mut acc = 0.0;
            for a in 0..DIM {
                src[s] = a;
                acc += j.get(&[a, i[s]]) * step.get(&src);
            }
            acc
        });
    }
    step
}

/// Projection ψ ↦ ψ'' on 2-forms as a curvature-type tensor:
/// ½(Id − ½ Ω⊙Ω), since ½ Ω⊙Ω acts as ψ ↦ ψ(J·, J·).
pub fn anti_invariant_projector(st: &PointState) -> Field {
    let ctx = st.hd.ctx();
    let pull = kulkarni_nomizu(&st.hd.omega, &st.hd.omega).scale(0.5);
    identity(ctx).sub(&pull).scale(0.5)
}

fn relative(st: &PointState, v: f64) -> f64 {
    let r = st.norm(&st.hd.curv.riemann);
    if r > 1e-12 {
        v / r
    } else {
        v
    }
}

fn frame_max(st: &PointState, t: &Tensor<f64>) -> f64 {
    in_frame(t, &st.frame()).max_abs()
}

pub fn evaluate(st: &PointState, out: &mut Residuals) {
    let hd = &st.hd;
    let u = &st.u2;
    let ctx = hd.ctx();
    record(out, "g3_i", || {
        let v = st.norm(&u.ric_pp).max(st.norm(&u.rho_star_pp));
        Ok(relative(st, v))
    });
    record(out, "g3_iii", || {
        let shift = ctx.g.scale_by(&u.kappa.sub(&u.s).scale(1.0 / 6.0));
        let res = u.ric_star.sub(&hd.curv.ricci).sub(&shift);
        Ok(relative(st, st.norm(&res)))
    });
    record(out, "g3_iv", || {
        let r = hd.curv.riemann.values();
        let pulled = pullback4(&hd.j.values(), &r);
        Ok(relative(st, frame_max(st, &r.sub(&pulled))))
    });
    record(out, "g3_v", || {
        let p = anti_invariant_projector(st);
        let r = &hd.curv.riemann;
        let c = compose(r, &p, ctx).sub(&compose(&p, r, ctx));
        Ok(relative(st, st.norm(&c)))
    });
    record(out, "g2", || {
        let r = hd.curv.riemann.values();
        let j = hd.j.values();
        let res = r
            .sub(&j_slots(&r, &j, &[0, 1]))
            .sub(&j_slots(&r, &j, &[0, 2]))
            .sub(&j_slots(&r, &j, &[0, 3]));
        Ok(relative(st, frame_max(st, &res)))
    });
}
