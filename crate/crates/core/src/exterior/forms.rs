//! Differential forms at a point.
//!
//! k-forms are stored as fully antisymmetric covariant [`Tensor`]s. The
//! wedge product follows the determinant normalization
//! `(α1∧…∧αr)(X1,…,Xr) = det(αi(Xj))`, and the induced inner product is
//! `⟨α, β⟩ = (1/k!) α_{i..} β^{i..}`, so `|dx∧dy|² = 1` in the Euclidean
//! metric and `|Ω|² = 2` for a fundamental form.

use serde::{Deserialize, Serialize};

use crate::error::{GeometryError, JetError};
use crate::exterior::tensor::{MetricContext, Slot, Tensor, DIM};
use crate::jets::Jet;
use crate::scalar::Scalar;

/// Sign of the volume form relative to dx∧dy∧dz∧dt.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    Standard,
    Reversed,
}

impl Orientation {
    pub fn sign(self) -> f64 {
        match self {
            Orientation::Standard => 1.0,
            Orientation::Reversed => -1.0,
        }
    }

    pub fn from_sign(s: f64) -> Self {
        if s >= 0.0 {
            Orientation::Standard
        } else {
            Orientation::Reversed
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Orientation::Standard => Orientation::Reversed,
            Orientation::Reversed => Orientation::Standard,
        }
    }
}

/// Sign of a permutation of distinct indices, 0 if any repeat.
pub fn permutation_sign(idx: &[usize]) -> f64 {
    let mut sign = 1.0;
    for a in 0..idx.len() {
        for b in a + 1..idx.len() {
            if idx[a] == idx[b] {
                return 0.0;
            }
            if idx[a] > idx[b] {
                sign = -sign;
            }
        }
    }
    sign
}

fn permutations(n: usize) -> Vec<(Vec<usize>, f64)> {
    fn rec(prefix: &mut Vec<usize>, n: usize, out: &mut Vec<(Vec<usize>, f64)>) {
        if prefix.len() == n {
            out.push((prefix.clone(), permutation_sign(prefix)));
            return;
        }
        for i in 0..n {
            if !prefix.contains(&i) {
                prefix.push(i);
                rec(prefix, n, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), n, &mut out);
    out
}

fn factorial(n: usize) -> f64 {
    (1..=n).product::<usize>() as f64
}

/// The Riemannian volume form ε for the given orientation.
pub fn volume_form<S: Scalar>(ctx: &MetricContext<S>, o: Orientation) -> Tensor<S> {
    let vol = ctx.sqrt_det.scale(o.sign());
    Tensor::covariant(4, |idx| vol.scale(permutation_sign(idx)))
}

/// α∧β for antisymmetric covariant α, β.
pub fn wedge<S: Scalar>(alpha: &Tensor<S>, beta: &Tensor<S>) -> Result<Tensor<S>, GeometryError> {
    let (k, l) = (alpha.rank(), beta.rank());
    if k + l > DIM {
        return Err(GeometryError::RankOverflow(k + l));
    }
    let zero = alpha.comps()[0].zero_like();
    let perms = permutations(k + l);
    let norm = 1.0 / (factorial(k) * factorial(l));
    let mut ia = vec![0; k];
    let mut ib = vec![0; l];
    Ok(Tensor::covariant(k + l, |idx| {
        let mut acc = zero.clone();
        if permutation_sign(idx) == 0.0 {
            return acc;
        }
        for (p, sign) in &perms {
            for a in 0..k {
                ia[a] = idx[p[a]];
            }
            for b in 0..l {
                ib[b] = idx[p[k + b]];
            }
            let term = alpha.get(&ia).mul(beta.get(&ib));
            acc.add_scaled_assign(&term, sign * norm);
        }
        acc
    }))
}

/// ⟨α, β⟩ for k-forms.
pub fn form_inner<S: Scalar>(alpha: &Tensor<S>, beta: &Tensor<S>, ctx: &MetricContext<S>) -> S {
    alpha.dot(beta, ctx).scale(1.0 / factorial(alpha.rank()))
}

/// Hodge star of a k-form: (*ω)_J = (1/k!) ω^I ε_{IJ}.
pub fn hodge<S: Scalar>(omega: &Tensor<S>, ctx: &MetricContext<S>, o: Orientation) -> Tensor<S> {
    let k = omega.rank();
    let mut raised = omega.clone();
    for s in 0..k {
        raised = raised.musical(s, ctx);
    }
    let eps = volume_form(ctx, o);
    let zero = ctx.sqrt_det.zero_like();
    let norm = 1.0 / factorial(k);
    let mut full = vec![0; DIM];
    let mut sub = vec![0; k];
    Tensor::covariant(DIM - k, |jdx| {
        let mut acc = zero.clone();
        for flat in 0..DIM.pow(k as u32) {
            let mut f = flat;
            for s in (0..k).rev() {
                sub[s] = f % DIM;
                f /= DIM;
            }
            full[..k].copy_from_slice(&sub);
            full[k..].copy_from_slice(jdx);
            if permutation_sign(&full) == 0.0 {
                continue;
            }
            acc.add_mul_assign(raised.get(&sub), eps.get(&full));
        }
        acc.scale(norm)
    })
}

/// Skew endomorphism E with ⟨E(X), Y⟩ = ω(X, Y); slots [Contra, Co], E[k][i].
pub fn endomorphism<S: Scalar>(omega: &Tensor<S>, ctx: &MetricContext<S>) -> Tensor<S> {
    let zero = ctx.sqrt_det.zero_like();
    Tensor::from_fn(&[Slot::Contra, Slot::Co], |idx| {
        let (k, i) = (idx[0], idx[1]);
        let mut acc = zero.clone();
        for l in 0..DIM {
            acc.add_mul_assign(ctx.ginv(k, l), omega.get(&[i, l]));
        }
        acc
    })
}

/// Inverse of [`endomorphism`]: ω(X, Y) = ⟨E(X), Y⟩.
pub fn form_of_endomorphism<S: Scalar>(e: &Tensor<S>, ctx: &MetricContext<S>) -> Tensor<S> {
    let zero = ctx.sqrt_det.zero_like();
    Tensor::covariant(2, |idx| {
        let (i, l) = (idx[0], idx[1]);
        let mut acc = zero.clone();
        for k in 0..DIM {
            acc.add_mul_assign(ctx.g(k, l), e.get(&[k, i]));
        }
        acc
    })
}

/// Endomorphism composition (A∘B)[k][i] = A[k][m] B[m][i].
pub fn compose<S: Scalar>(a: &Tensor<S>, b: &Tensor<S>) -> Tensor<S> {
    let zero = a.comps()[0].zero_like();
    Tensor::from_fn(&[Slot::Contra, Slot::Co], |idx| {
        let mut acc = zero.clone();
        for m in 0..DIM {
            acc.add_mul_assign(a.get(&[idx[0], m]), b.get(&[m, idx[1]]));
        }
        acc
    })
}

pub fn commutator<S: Scalar>(a: &Tensor<S>, b: &Tensor<S>) -> Tensor<S> {
    compose(a, b).sub(&compose(b, a))
}

/// ι_X ω, contracting the first slot with a vector.
pub fn interior<S: Scalar>(x: &[S; DIM], omega: &Tensor<S>) -> Tensor<S> {
    let zero = x[0].zero_like();
    let mut full = vec![0; omega.rank()];
    Tensor::covariant(omega.rank() - 1, |idx| {
        let mut acc = zero.clone();
        full[1..].copy_from_slice(idx);
        for (i, xi) in x.iter().enumerate() {
            full[0] = i;
            acc.add_mul_assign(xi, omega.get(&full));
        }
        acc
    })
}

/// Exterior derivative (dω)_{i0..ik} = Σ_j (−1)^j ∂_{ij} ω_{i0..îj..ik}.
pub fn exterior_derivative(omega: &Tensor<Jet>) -> Result<Tensor<Jet>, JetError> {
    let k = omega.rank();
    let base = omega.comps()[0].base();
    let mut sub = vec![0; k];
    Tensor::try_from_fn(&vec![Slot::Co; k + 1], |idx| {
        let mut acc = Jet::constant(base, 0.0);
        for j in 0..=k {
            let mut n = 0;
            for (m, &i) in idx.iter().enumerate() {
                if m != j {
                    sub[n] = i;
                    n += 1;
                }
            }
            let d = omega.get(&sub).derivative(idx[j])?;
            acc.add_scaled_assign(&d, if j % 2 == 0 { 1.0 } else { -1.0 });
        }
        Ok(acc)
    })
}

/// Differential of a scalar field as a 1-form.
pub fn differential(f: &Jet) -> Result<Tensor<Jet>, JetError> {
    Tensor::try_from_fn(&[Slot::Co], |idx| f.derivative(idx[0]))
}

/// Antisymmetrize a covariant 2-tensor without normalization loss:
/// ω_ij = ½(T_ij − T_ji).
pub fn skew_part<S: Scalar>(t: &Tensor<S>) -> Tensor<S> {
    Tensor::covariant(2, |i| t.get(&[i[0], i[1]]).sub(t.get(&[i[1], i[0]])).scale(0.5))
}

/// Norm of a covariant tensor via full contraction (Frobenius norm in an
/// orthonormal frame), without form normalization.
pub fn tensor_norm(t: &Tensor<f64>, ctx: &MetricContext<f64>) -> f64 {
    t.dot(t, ctx).max(0.0).sqrt()
}

/// Bivector basis order {e01, e02, e03, e23, e31, e12}.
pub const BIVECTORS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (2, 3), (3, 1), (1, 2)];

/// A 2-form in the coordinate bivector basis, carrying its metric.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoForm {
    pub comps: [f64; 6],
    pub ctx: MetricContext<f64>,
}

impl PartialEq for MetricContext<f64> {
    fn eq(&self, other: &Self) -> bool {
        self.g == other.g
    }
}

/// Self-dual and anti-self-dual parts of a 2-form.
#[derive(Clone, Debug, PartialEq)]
pub struct SelfDualSplit {
    pub plus: TwoForm,
    pub minus: TwoForm,
    pub orientation: Orientation,
}

impl TwoForm {
    pub fn new(comps: [f64; 6], ctx: MetricContext<f64>) -> Self {
        TwoForm { comps, ctx }
    }

    pub fn from_tensor(t: &Tensor<f64>, ctx: MetricContext<f64>) -> Self {
        let comps = std::array::from_fn(|n| {
            let (i, j) = BIVECTORS[n];
            0.5 * (t.get(&[i, j]) - t.get(&[j, i]))
        });
        TwoForm { comps, ctx }
    }

    pub fn to_tensor(&self) -> Tensor<f64> {
        Tensor::covariant(2, |idx| {
            let (i, j) = (idx[0], idx[1]);
            BIVECTORS
                .iter()
                .zip(&self.comps)
                .find_map(|(&(a, b), &c)| {
                    if (a, b) == (i, j) {
                        Some(c)
                    } else if (b, a) == (i, j) {
                        Some(-c)
                    } else {
                        None
                    }
                })
                .unwrap_or(0.0)
        })
    }

    pub fn inner(&self, other: &TwoForm) -> f64 {
        form_inner(&self.to_tensor(), &other.to_tensor(), &self.ctx)
    }

    pub fn hodge_star(&self, o: Orientation) -> TwoForm {
        TwoForm::from_tensor(&hodge(&self.to_tensor(), &self.ctx, o), self.ctx.clone())
    }

    pub fn as_endomorphism(&self) -> Tensor<f64> {
        endomorphism(&self.to_tensor(), &self.ctx)
    }

    pub fn sd_split(&self, o: Orientation) -> SelfDualSplit {
        let star = self.hodge_star(o);
        let half = |s: f64| -> TwoForm {
            TwoForm {
                comps: std::array::from_fn(|n| 0.5 * (self.comps[n] + s * star.comps[n])),
                ctx: self.ctx.clone(),
            }
        };
        SelfDualSplit {
            plus: half(1.0),
            minus: half(-1.0),
            orientation: o,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::tensor::flat_index;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn one_form(c: [f64; 4]) -> Tensor<f64> {
        Tensor::covariant(1, |i| c[i[0]])
    }

    fn basis(i: usize) -> Tensor<f64> {
        let mut c = [0.0; 4];
        c[i] = 1.0;
        one_form(c)
    }

    fn e(i: usize, j: usize) -> Tensor<f64> {
        wedge(&basis(i), &basis(j)).unwrap()
    }

    fn random_metric(seed: [f64; 10]) -> MetricContext<f64> {
        let a = nalgebra::Matrix4::from_fn(|i, j| seed[(i * 3 + j) % 10] * 0.3);
        let g = a * a.transpose() + nalgebra::Matrix4::identity();
        MetricContext::new(std::array::from_fn(|i| std::array::from_fn(|j| g[(i, j)]))).unwrap()
    }

    #[test]
    fn determinant_convention() {
        assert_eq!(*e(0, 1).get(&[0, 1]), 1.0);
        assert_eq!(*e(0, 1).get(&[1, 0]), -1.0);
        assert_eq!(e(0, 0).max_abs(), 0.0);
        let ctx = MetricContext::euclidean();
        assert_relative_eq!(form_inner(&e(0, 1), &e(0, 1), &ctx), 1.0);
    }

    #[test]
    fn euclidean_hodge() {
        let ctx = MetricContext::euclidean();
        let s = hodge(&e(0, 1), &ctx, Orientation::Standard);
        assert_eq!(s, e(2, 3));
        // *(dx∧dz) = −dy∧dt
        let s = hodge(&e(0, 2), &ctx, Orientation::Standard);
        assert_eq!(s, e(1, 3).scale(-1.0));
        let s = hodge(&basis(0), &ctx, Orientation::Standard);
        let dydzdt = wedge(&e(1, 2), &basis(3)).unwrap();
        assert_eq!(s, dydzdt);
    }

    #[test]
    fn endomorphism_sends_dx_dy_to_rotation() {
        let ctx = MetricContext::euclidean();
        let end = endomorphism(&e(0, 1), &ctx);
        // φ(∂x) = ∂y
        assert_eq!(*end.get(&[1, 0]), 1.0);
        assert_eq!(*end.get(&[0, 1]), -1.0);
        assert_eq!(form_of_endomorphism(&end, &ctx), e(0, 1));
    }

    #[test]
    fn sd_split_examples() {
        let ctx = MetricContext::euclidean();
        let w = TwoForm::from_tensor(&e(0, 1).add(&e(2, 3)), ctx.clone());
        let s = w.sd_split(Orientation::Standard);
        assert_eq!(s.plus, w);
        assert!(s.minus.comps.iter().all(|c| *c == 0.0));
        let w = TwoForm::from_tensor(&e(0, 1).sub(&e(2, 3)), ctx);
        let s = w.sd_split(Orientation::Standard);
        assert_eq!(s.minus, w);
        let r = w.sd_split(Orientation::Reversed);
        assert_eq!(r.plus, s.minus);
    }

    #[test]
    fn rank_overflow() {
        let three = wedge(&e(0, 1), &basis(2)).unwrap();
        assert!(matches!(
            wedge(&three, &e(0, 1)),
            Err(GeometryError::RankOverflow(5))
        ));
    }

    #[test]
    fn bivector_round_trip() {
        let ctx = MetricContext::euclidean();
        let w = TwoForm::new([1.0, -2.0, 0.5, 3.0, 0.25, -1.5], ctx.clone());
        assert_eq!(TwoForm::from_tensor(&w.to_tensor(), ctx), w);
    }

    proptest! {
        #[test]
        fn hodge_is_involutive_on_two_forms(
            c in prop::array::uniform6(-1.0f64..1.0),
            m in prop::array::uniform10(-1.0f64..1.0),
        ) {
            let ctx = random_metric(m);
            let w = TwoForm::new(c, ctx);
            let back = w.hodge_star(Orientation::Standard).hodge_star(Orientation::Standard);
            for n in 0..6 {
                prop_assert!((back.comps[n] - c[n]).abs() < 1e-12);
            }
        }

        #[test]
        fn sd_split_is_orthogonal_and_reassembles(
            c in prop::array::uniform6(-1.0f64..1.0),
            m in prop::array::uniform10(-1.0f64..1.0),
        ) {
            let w = TwoForm::new(c, random_metric(m));
            let s = w.sd_split(Orientation::Standard);
            prop_assert!(s.plus.inner(&s.minus).abs() < 1e-12);
            let plus_star = s.plus.hodge_star(Orientation::Standard);
            let minus_star = s.minus.hodge_star(Orientation::Standard);
            for n in 0..6 {
                prop_assert!((s.plus.comps[n] + s.minus.comps[n] - c[n]).abs() < 1e-12);
                prop_assert!((plus_star.comps[n] - s.plus.comps[n]).abs() < 1e-12);
                prop_assert!((minus_star.comps[n] + s.minus.comps[n]).abs() < 1e-12);
            }
        }

        #[test]
        fn wedge_anticommutes(
            a in prop::array::uniform4(-1.0f64..1.0),
            b in prop::array::uniform4(-1.0f64..1.0),
            c in prop::array::uniform4(-1.0f64..1.0),
        ) {
            let (a, b, c) = (one_form(a), one_form(b), one_form(c));
            let ab = wedge(&a, &b).unwrap();
            let ba = wedge(&b, &a).unwrap();
            prop_assert!(ab.add(&ba).max_abs() < 1e-13);
            // 2-form ∧ 1-form commutes
            let abc = wedge(&ab, &c).unwrap();
            let cab = wedge(&c, &ab).unwrap();
            prop_assert!(abc.sub(&cab).max_abs() < 1e-13);
        }

        #[test]
        fn two_form_norm_is_nonnegative(
            c in prop::array::uniform6(-1.0f64..1.0),
            m in prop::array::uniform10(-1.0f64..1.0),
        ) {
            let w = TwoForm::new(c, random_metric(m));
            let n = w.inner(&w);
            prop_assert!(n >= 0.0);
            prop_assert!(c.iter().all(|x| *x == 0.0) || n > 0.0);
        }
    }

    #[test]
    fn flat_index_is_row_major() {
        assert_eq!(flat_index(&[1, 2]), 6);
    }
}
