//! d^J, bundle-valued exterior calculus and the curvature action on
//! Λ²-valued forms.

use super::algebra::{codifferential, endo_on_one_form, pullback2, zero_of, Field};
use super::hermitian::HermitianData;
use crate::curvature::Curvature;
use crate::error::GeometryError;
use crate::exterior::{commutator, differential, endomorphism, exterior_derivative, form_of_endomorphism, Tensor, DIM};
use crate::jets::Jet;

/// d^J f = J df, with (Jα)_X = −α(JX).
pub fn dj_function(hd: &HermitianData, f: &Jet) -> Result<Field, GeometryError> {
    Ok(endo_on_one_form(&hd.j, &differential(f)?))
}

/// d^J α = −d(Jα)(J·, J·).
pub fn dj_one_form(hd: &HermitianData, alpha: &Field) -> Result<Field, GeometryError> {
    let d = exterior_derivative(&endo_on_one_form(&hd.j, alpha))?;
    Ok(pullback2(&hd.j, &d).scale(-1.0))
}

/// dd^J f.
pub fn ddj(hd: &HermitianData, f: &Jet) -> Result<Field, GeometryError> {
    Ok(exterior_derivative(&dj_function(hd, f)?)?)
}

/// d^∇V for a Λ²-valued 1-form: (d^∇V)_{X,Y} = (∇_X V)_Y − (∇_Y V)_X.
pub fn d_nabla(curv: &Curvature, v: &Field) -> Result<Field, GeometryError> {
    let nv = curv.nabla(v)?;
    let rank = nv.rank();
    Ok(Tensor::covariant(rank, |i| {
        let mut swapped = i.to_vec();
        swapped.swap(0, 1);
        nv.get(i).sub(nv.get(&swapped))
    }))
}

/// δ^∇ of a form-valued form: −g^{ij}(∇_i T)_{j…}.
pub fn delta_nabla(curv: &Curvature, t: &Field) -> Result<Field, GeometryError> {
    Ok(codifferential(&curv.nabla(t)?, &curv.ctx))
}

/// Rough Laplacian ∇*∇T = −g^{ij}∇_i∇_j T.
pub fn rough_laplacian(curv: &Curvature, t: &Field) -> Result<Field, GeometryError> {
    Ok(codifferential(&curv.nabla(&curv.nabla(t)?)?, &curv.ctx))
}

/// Skew endomorphisms T_{∂x,∂y} of a curvature-type tensor, indexed [x][y].
fn pair_endos(t: &Field, ctx: &crate::exterior::MetricContext<Jet>) -> Vec<Vec<Field>> {
    (0..DIM)
        .map(|x| {
            (0..DIM)
                .map(|y| {
                    let form = Tensor::covariant(2, |k| t.get(&[x, y, k[0], k[1]]).clone());
                    endomorphism(&form, ctx)
                })
                .collect()
        })
        .collect()
}

/// (T·V)_X = g^{ij}[T_{X,∂i}, V_{∂j}] for a curvature-type T and Λ²-valued
/// 1-form V, with 2-forms read as skew endomorphisms.
pub fn curvature_action(t: &Field, v: &Field, curv: &Curvature) -> Field {
    let ctx = &curv.ctx;
    let te = pair_endos(t, ctx);
    let ve: Vec<Field> = (0..DIM)
        .map(|j| {
            let form = Tensor::covariant(2, |k| v.get(&[j, k[0], k[1]]).clone());
            endomorphism(&form, ctx)
        })
        .collect();
    let slices: Vec<Field> = (0..DIM)
        .map(|x| {
            let mut acc: Option<Field> = None;
            for i in 0..DIM {
                for j in 0..DIM {
                    let c = commutator(&te[x][i], &ve[j]).scale_by(ctx.ginv(i, j));
                    acc = Some(match acc {
                        Some(a) => a.add(&c),
                        None => c,
                    });
                }
            }
            form_of_endomorphism(&acc.expect("DIM > 0"), ctx)
        })
        .collect();
    super::algebra::from_slices(&slices)
}

/// [J, T_{∂x,∂y}] lowered to a 2-form, as a Λ²-valued 2-form [x][y][a][b].
pub fn j_commutator(hd: &HermitianData, t: &Field) -> Field {
    let ctx = hd.ctx();
    let te = pair_endos(t, ctx);
    let forms: Vec<Vec<Field>> = te
        .iter()
        .map(|row| {
            row.iter()
                .map(|e| form_of_endomorphism(&commutator(&hd.j, e), ctx))
                .collect()
        })
        .collect();
    Tensor::covariant(4, |i| forms[i[0]][i[1]].get(&i[2..]).clone())
}

/// Hessian ∇²f as a symmetric 2-tensor.
pub fn hessian(curv: &Curvature, f: &Jet) -> Result<Field, GeometryError> {
    Ok(curv.nabla(&differential(f)?)?)
}

/// Metric Laplacian Δf = −g^{ij}∇²_{ij} f.
pub fn laplacian(curv: &Curvature, f: &Jet) -> Result<Jet, GeometryError> {
    let h = hessian(curv, f)?;
    let mut acc = zero_of(&curv.ctx);
    for i in 0..DIM {
        for j in 0..DIM {
            acc.add_mul_assign(curv.ctx.ginv(i, j), h.get(&[i, j]));
        }
    }
    Ok(acc.neg())
}

/// ∇J as a (1,1)-valued 1-form [k][a][i] = (∇_k J)^a_i.
pub fn nabla_j(hd: &HermitianData) -> Result<Field, GeometryError> {
    Ok(hd.curv.nabla(&hd.j)?)
}

/// Contract the first slot of a form-valued form with a vector field
/// given by its components at the point (jets).
pub fn contract_first(v: &Field, x: &[Jet; DIM]) -> Field {
    crate::exterior::interior(x, v)
}
