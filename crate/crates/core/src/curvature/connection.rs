//! Levi-Civita connection on jet-valued tensors.

use crate::error::JetError;
use crate::exterior::{MetricContext, Slot, Tensor, DIM};
use crate::jets::Jet;

/// Γ^k_ij = ½ g^{kl}(∂_i g_jl + ∂_j g_il − ∂_l g_ij), slots [Contra, Co, Co].
pub fn christoffel(ctx: &MetricContext<Jet>) -> Result<Tensor<Jet>, JetError> {
    let dg = ctx.g.partials()?;
    let base = ctx.sqrt_det.base();
    // first-kind symbols Γ_lij
    let first = Tensor::covariant(3, |idx| {
        let (l, i, j) = (idx[0], idx[1], idx[2]);
        dg.get(&[i, j, l])
            .add(dg.get(&[j, i, l]))
            .sub(dg.get(&[l, i, j]))
            .scale(0.5)
    });
    Ok(Tensor::from_fn(&[Slot::Contra, Slot::Co, Slot::Co], |idx| {
        let (k, i, j) = (idx[0], idx[1], idx[2]);
        let mut acc = Jet::constant(base, 0.0);
        for l in 0..DIM {
            acc.add_mul_assign(ctx.ginv(k, l), first.get(&[l, i, j]));
        }
        acc
    }))
}

/// ∇T with the derivative index placed first:
/// (∇T)_{k i..} = ∂_k T_{i..} − Σ Γ^m_{k i_s} T_{..m..} + Σ Γ^{i_s}_{k m} T^{..m..}.
pub fn covariant_derivative(t: &Tensor<Jet>, gamma: &Tensor<Jet>) -> Result<Tensor<Jet>, JetError> {
    let d = t.partials()?;
    let rank = t.rank();
    let slots = t.slots().to_vec();
    let mut src = vec![0; rank];
    Ok(Tensor::from_fn(d.slots(), |idx| {
        let k = idx[0];
        let mut acc = d.get(idx).clone();
        for s in 0..rank {
            src.copy_from_slice(&idx[1..]);
            let i = idx[1 + s];
            for m in 0..DIM {
                src[s] = m;
                match slots[s] {
                    Slot::Co => acc.add_scaled_assign(&gamma.get(&[m, k, i]).mul(t.get(&src)), -1.0),
                    Slot::Contra => acc.add_mul_assign(gamma.get(&[i, k, m]), t.get(&src)),
                }
            }
        }
        acc
    }))
}
