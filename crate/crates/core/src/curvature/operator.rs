//! Curvature-type tensors viewed as symmetric operators on 2-forms.
//!
//! A covariant 4-tensor T antisymmetric in (ij) and (kl) acts on a 2-form by
//! `T(φ)_kl = ½ φ^{ij} T_ijkl`. With this normalization the identity of Λ²
//! has tensor `g_ik g_jl − g_il g_jk` and the Hodge star has tensor ε.

use nalgebra::{Matrix3, Matrix4, Matrix6};

use crate::exterior::{volume_form, MetricContext, Orientation, Tensor, BIVECTORS, DIM};
use crate::scalar::Scalar;

/// T(φ).
pub fn apply<S: Scalar>(t: &Tensor<S>, phi: &Tensor<S>, ctx: &MetricContext<S>) -> Tensor<S> {
    let raised = phi.musical(0, ctx).musical(1, ctx);
    let zero = ctx.sqrt_det.zero_like();
    Tensor::covariant(2, |idx| {
        let mut acc = zero.clone();
        for i in 0..DIM {
            for j in 0..DIM {
                if i != j {
                    acc.add_mul_assign(raised.get(&[i, j]), t.get(&[i, j, idx[0], idx[1]]));
                }
            }
        }
        acc.scale(0.5)
    })
}

/// Operator ψ ↦ ⟨α, ψ⟩ β, tensor α_ij β_kl.
pub fn outer<S: Scalar>(alpha: &Tensor<S>, beta: &Tensor<S>) -> Tensor<S> {
    Tensor::covariant(4, |i| alpha.get(&i[..2]).mul(beta.get(&i[2..])))
}

/// Symmetrized outer product ½(α⊗β + β⊗α).
pub fn sym_outer<S: Scalar>(alpha: &Tensor<S>, beta: &Tensor<S>) -> Tensor<S> {
    outer(alpha, beta).add(&outer(beta, alpha)).scale(0.5)
}

pub fn identity<S: Scalar>(ctx: &MetricContext<S>) -> Tensor<S> {
    Tensor::covariant(4, |i| {
        ctx.g(i[0], i[2])
            .mul(ctx.g(i[1], i[3]))
            .sub(&ctx.g(i[0], i[3]).mul(ctx.g(i[1], i[2])))
    })
}

/// Projection ½(Id ± *) onto Λ± for orientation `o`.
pub fn sd_projector<S: Scalar>(ctx: &MetricContext<S>, o: Orientation, sign: f64) -> Tensor<S> {
    identity(ctx).add(&volume_form(ctx, o).scale(sign)).scale(0.5)
}

/// (A∘B)_ijkl = ½ B_ij^{ab} A_abkl, so that (A∘B)(φ) = A(B(φ)).
pub fn compose<S: Scalar>(a: &Tensor<S>, b: &Tensor<S>, ctx: &MetricContext<S>) -> Tensor<S> {
    let braised = b.musical(2, ctx).musical(3, ctx);
    let zero = ctx.sqrt_det.zero_like();
    Tensor::covariant(4, |idx| {
        let mut acc = zero.clone();
        for p in 0..DIM {
            for q in 0..DIM {
                if p != q {
                    acc.add_mul_assign(
                        braised.get(&[idx[0], idx[1], p, q]),
                        a.get(&[p, q, idx[2], idx[3]]),
                    );
                }
            }
        }
        acc.scale(0.5)
    })
}

/// Kulkarni–Nomizu product (h⊙k)_ijkl = h_ik k_jl + h_jl k_ik − h_il k_jk − h_jk k_il.
pub fn kulkarni_nomizu<S: Scalar>(h: &Tensor<S>, k: &Tensor<S>) -> Tensor<S> {
    Tensor::covariant(4, |x| {
        let (i, j, a, b) = (x[0], x[1], x[2], x[3]);
        h.get(&[i, a])
            .mul(k.get(&[j, b]))
            .add(&h.get(&[j, b]).mul(k.get(&[i, a])))
            .sub(&h.get(&[i, b]).mul(k.get(&[j, a])))
            .sub(&h.get(&[j, a]).mul(k.get(&[i, b])))
    })
}

/// Components of a covariant tensor in the frame given by the columns of `e`.
pub fn in_frame(t: &Tensor<f64>, e: &Matrix4<f64>) -> Tensor<f64> {
    let mut out = t.clone();
    for s in 0..t.rank() {
        let cur = out.clone();
        let mut src = vec![0; t.rank()];
        out = Tensor::from_fn(cur.slots(), |idx| {
            src.copy_from_slice(idx);
            let mut acc = 0.0;
            for m in 0..DIM {
                src[s] = m;
                acc += e[(m, idx[s])] * cur.get(&src);
            }
            acc
        });
    }
    out
}

/// 6×6 matrix of a curvature-type tensor in an orthonormal bivector basis
/// {e01, e02, e03, e23, e31, e12} of the frame `e`.
pub fn operator_matrix(t: &Tensor<f64>, e: &Matrix4<f64>) -> Matrix6<f64> {
    let f = in_frame(t, e);
    Matrix6::from_fn(|a, b| {
        let (i, j) = BIVECTORS[a];
        let (k, l) = BIVECTORS[b];
        *f.get(&[i, j, k, l])
    })
}

/// Orthogonal change of basis to {Λ⁺ ; Λ⁻} with rows (e0i ± o·e_jk)/√2.
pub fn sd_basis(o: Orientation) -> Matrix6<f64> {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let s = o.sign();
    Matrix6::from_fn(|row, col| {
        let (i, plus) = if row < 3 { (row, true) } else { (row - 3, false) };
        if col == i {
            r
        } else if col == i + 3 {
            if plus {
                r * s
            } else {
                -r * s
            }
        } else {
            0.0
        }
    })
}

/// Singer–Thorpe blocks of the curvature operator.
#[derive(Clone, Debug, PartialEq)]
pub struct SingerThorpe {
    pub wplus: Matrix3<f64>,
    pub wminus: Matrix3<f64>,
    /// Λ⁺ → Λ⁻ block (the half trace-free Ricci part).
    pub off_diagonal: Matrix3<f64>,
    pub scalar: f64,
    pub orientation: Orientation,
}

impl SingerThorpe {
    pub fn from_operator(op: &Matrix6<f64>, o: Orientation) -> Self {
        let u = sd_basis(o);
        let m = u * op * u.transpose();
        let scalar = 2.0 * m.trace();
        let id = Matrix3::identity() * (scalar / 12.0);
        SingerThorpe {
            wplus: m.fixed_view::<3, 3>(0, 0).into_owned() - id,
            wminus: m.fixed_view::<3, 3>(3, 3).into_owned() - id,
            off_diagonal: m.fixed_view::<3, 3>(3, 0).into_owned(),
            scalar,
            orientation: o,
        }
    }

    pub fn recompose(&self) -> Matrix6<f64> {
        let id = Matrix3::identity() * (self.scalar / 12.0);
        let mut m = Matrix6::zeros();
        m.fixed_view_mut::<3, 3>(0, 0).copy_from(&(self.wplus + id));
        m.fixed_view_mut::<3, 3>(3, 3).copy_from(&(self.wminus + id));
        m.fixed_view_mut::<3, 3>(3, 0).copy_from(&self.off_diagonal);
        m.fixed_view_mut::<3, 3>(0, 3).copy_from(&self.off_diagonal.transpose());
        let u = sd_basis(self.orientation);
        u.transpose() * m * u
    }
}
