//! Pointwise algebra with a metric and an almost complex structure.
//!
//! Λ²-valued 1-forms are rank-3 covariant tensors V[z][x][y] = V_Z(X, Y).
//! Endomorphisms have slots [Contra, Co], E[k][i] = E^k_i.

use crate::exterior::{form_inner, MetricContext, Slot, Tensor, DIM};
use crate::jets::Jet;
use crate::scalar::Scalar;

pub type Field = Tensor<Jet>;
pub type Vector = [Jet; DIM];

pub fn zero_of(ctx: &MetricContext<Jet>) -> Jet {
    ctx.sqrt_det.zero_like()
}

/// Vector dual to a 1-form.
pub fn sharp(alpha: &Field, ctx: &MetricContext<Jet>) -> Vector {
    std::array::from_fn(|k| {
        let mut acc = zero_of(ctx);
        for l in 0..DIM {
            acc.add_mul_assign(ctx.ginv(k, l), alpha.get(&[l]));
        }
        acc
    })
}

/// 1-form dual to a vector.
pub fn flat(x: &Vector, ctx: &MetricContext<Jet>) -> Field {
    Tensor::covariant(1, |i| {
        let mut acc = zero_of(ctx);
        for (k, xk) in x.iter().enumerate() {
            acc.add_mul_assign(ctx.g(i[0], k), xk);
        }
        acc
    })
}

/// E(X).
pub fn apply_endo(e: &Field, x: &Vector) -> Vector {
    std::array::from_fn(|k| {
        let mut acc = x[0].zero_like();
        for (i, xi) in x.iter().enumerate() {
            acc.add_mul_assign(e.get(&[k, i]), xi);
        }
        acc
    })
}

/// The vector ψ(X) with ⟨ψ(X), Y⟩ = ψ(X, Y).
pub fn form_apply(psi: &Field, x: &Vector, ctx: &MetricContext<Jet>) -> Vector {
    let lowered = Tensor::covariant(1, |i| {
        let mut acc = x[0].zero_like();
        for (a, xa) in x.iter().enumerate() {
            acc.add_mul_assign(xa, psi.get(&[a, i[0]]));
        }
        acc
    });
    sharp(&lowered, ctx)
}

/// (Eα)_X = −α(EX) for an endomorphism E acting on 1-forms.
pub fn endo_on_one_form(e: &Field, alpha: &Field) -> Field {
    Tensor::covariant(1, |i| {
        let mut acc = alpha.comps()[0].zero_like();
        for a in 0..DIM {
            acc.add_mul_assign(alpha.get(&[a]), e.get(&[a, i[0]]));
        }
        acc.neg()
    })
}

/// (Jψ)(X, Y) = −ψ(JX, Y), the complex structure of J-anti-invariant forms.
pub fn endo_on_two_form(e: &Field, psi: &Field) -> Field {
    Tensor::covariant(2, |i| {
        let mut acc = psi.comps()[0].zero_like();
        for a in 0..DIM {
            acc.add_mul_assign(e.get(&[a, i[0]]), psi.get(&[a, i[1]]));
        }
        acc.neg()
    })
}

/// T(E·, E·) for a covariant 2-tensor T.
pub fn pullback2(e: &Field, t: &Field) -> Field {
    Tensor::covariant(2, |i| {
        let mut acc = t.comps()[0].zero_like();
        for a in 0..DIM {
            for b in 0..DIM {
                acc.add_mul_assign(&e.get(&[a, i[0]]).mul(e.get(&[b, i[1]])), t.get(&[a, b]));
            }
        }
        acc
    })
}

/// T(E·, E·, E·, E·) for a covariant 4-tensor T.
pub fn pullback4(e: &Tensor<f64>, t: &Tensor<f64>) -> Tensor<f64> {
    let mut step = t.clone();
    for s in 0..4 {
        step = Tensor::covariant(4, |i| {
            let mut src = [i[0], i[1], i[2], i[3]];
            let mut acc = 0.0;
            for a in 0..DIM {
                src[s] = a;
                acc += e.get(&[a, i[s]]) * step.get(&src);
            }
            acc
        });
    }
    step
}

/// E-invariant part ½(T + T(E·, E·)).
pub fn invariant_part(e: &Field, t: &Field) -> Field {
    t.add(&pullback2(e, t)).scale(0.5)
}

/// E-anti-invariant part ½(T − T(E·, E·)).
pub fn anti_invariant_part(e: &Field, t: &Field) -> Field {
    t.sub(&pullback2(e, t)).scale(0.5)
}

/// α ⊗ ψ as a Λ²-valued 1-form.
pub fn one_form_times(alpha: &Field, psi: &Field) -> Field {
    Tensor::covariant(3, |i| alpha.get(&i[..1]).mul(psi.get(&i[1..])))
}

/// ψ ⊗ f for a scalar-valued 1-form f: V_Z = f(Z) ψ.
pub fn times_one_form(psi: &Field, f: &Field) -> Field {
    one_form_times(f, psi)
}

/// V_Z for a fixed coordinate direction Z = ∂z.
pub fn slice(v: &Field, z: usize) -> Field {
    Tensor::covariant(v.rank() - 1, |i| {
        let mut idx = Vec::with_capacity(i.len() + 1);
        idx.push(z);
        idx.extend_from_slice(i);
        v.get(&idx).clone()
    })
}

/// Rebuild a Λ²-valued 1-form from its four slices.
pub fn from_slices(slices: &[Field]) -> Field {
    let rank = slices[0].rank() + 1;
    Tensor::covariant(rank, |i| slices[i[0]].get(&i[1..]).clone())
}

/// Apply a slice-wise map to a Λ²-valued 1-form.
pub fn per_slice(v: &Field, f: impl Fn(&Field) -> Field) -> Field {
    let slices: Vec<Field> = (0..DIM).map(|z| f(&slice(v, z))).collect();
    from_slices(&slices)
}

/// V_X for a vector X.
pub fn along(v: &Field, x: &Vector) -> Field {
    crate::exterior::interior(x, v)
}

/// Λ²-valued 1-form Z ↦ V_{E(Z)} for an endomorphism E.
pub fn along_endo(v: &Field, e: &Field) -> Field {
    Tensor::covariant(v.rank(), |i| {
        let mut idx = i.to_vec();
        let mut acc = v.comps()[0].zero_like();
        for a in 0..DIM {
            idx[0] = a;
            acc.add_mul_assign(e.get(&[a, i[0]]), v.get(&idx));
        }
        acc
    })
}

/// Endomorphism of a symmetric 2-tensor: S(X)^k = g^{kl} S_{Xl}.
pub fn symmetric_endo(s: &Field, ctx: &MetricContext<Jet>) -> Field {
    Tensor::from_fn(&[Slot::Contra, Slot::Co], |idx| {
        let mut acc = zero_of(ctx);
        for l in 0..DIM {
            acc.add_mul_assign(ctx.ginv(idx[0], l), s.get(&[idx[1], l]));
        }
        acc
    })
}

/// 1-form Z ↦ ⟨V_Z, ψ⟩.
pub fn inner_slices(v: &Field, psi: &Field, ctx: &MetricContext<Jet>) -> Field {
    Tensor::covariant(1, |i| form_inner(&slice(v, i[0]), psi, ctx))
}

/// Codifferential of a k-form: (δψ)_{I} = −g^{ij} (∇_i ψ)_{j I}, from ∇ψ.
pub fn codifferential(nabla: &Field, ctx: &MetricContext<Jet>) -> Field {
    let rank = nabla.rank() - 2;
    let mut idx = vec![0; rank + 2];
    Tensor::covariant(rank, |rest| {
        let mut acc = zero_of(ctx);
        idx[2..].copy_from_slice(rest);
        for i in 0..DIM {
            for j in 0..DIM {
                idx[0] = i;
                idx[1] = j;
                acc.add_mul_assign(ctx.ginv(i, j), nabla.get(&idx));
            }
        }
        acc.neg()
    })
}

/// Rough Laplacian −g^{ij} ∇_i∇_j T from ∇∇T.
pub fn rough_laplacian(nabla2: &Field, ctx: &MetricContext<Jet>) -> Field {
    codifferential(nabla2, ctx)
}

/// Norm² by full contraction.
pub fn norm2_full(t: &Field, ctx: &MetricContext<Jet>) -> Jet {
    t.dot(t, ctx)
}

/// Value-level norm of a residual tensor by full contraction.
pub fn residual_norm(t: &Field, ctx: &MetricContext<Jet>) -> f64 {
    crate::exterior::tensor_norm(&t.values(), &ctx.values())
}

/// Value-level norm, or the norm of a list of tensors taken jointly.
pub fn residual_norm_many(ts: &[Field], ctx: &MetricContext<Jet>) -> f64 {
    ts.iter()
        .map(|t| residual_norm(t, ctx).powi(2))
        .sum::<f64>()
        .sqrt()
}
