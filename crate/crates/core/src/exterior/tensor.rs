//! Dense tensors at a point with declared index variance.

use crate::error::{GeometryError, JetError};
use crate::jets::Jet;
use crate::scalar::Scalar;

pub const DIM: usize = 4;

/// Variance of one tensor slot.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    Co,
    Contra,
}

/// Components indexed by chart indices 0..4 per slot, row-major with the
/// first slot most significant.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor<S> {
    slots: Vec<Slot>,
    comps: Vec<S>,
}

pub(crate) fn flat_index(idx: &[usize]) -> usize {
    idx.iter().fold(0, |acc, &i| acc * DIM + i)
}

fn unflatten(mut flat: usize, rank: usize, out: &mut [usize]) {
    for k in (0..rank).rev() {
        out[k] = flat % DIM;
        flat /= DIM;
    }
}

impl<S> Tensor<S> {
    pub fn from_fn(slots: &[Slot], mut f: impl FnMut(&[usize]) -> S) -> Self {
        let rank = slots.len();
        let n = DIM.pow(rank as u32);
        let mut idx = vec![0; rank];
        let mut comps = Vec::with_capacity(n);
        for flat in 0..n {
            unflatten(flat, rank, &mut idx);
            comps.push(f(&idx));
        }
        Tensor {
            slots: slots.to_vec(),
            comps,
        }
    }

    pub fn try_from_fn<E>(
        slots: &[Slot],
        mut f: impl FnMut(&[usize]) -> Result<S, E>,
    ) -> Result<Self, E> {
        let rank = slots.len();
        let n = DIM.pow(rank as u32);
        let mut idx = vec![0; rank];
        let mut comps = Vec::with_capacity(n);
        for flat in 0..n {
            unflatten(flat, rank, &mut idx);
            comps.push(f(&idx)?);
        }
        Ok(Tensor {
            slots: slots.to_vec(),
            comps,
        })
    }

    /// All-covariant tensor of the given rank.
    pub fn covariant(rank: usize, f: impl FnMut(&[usize]) -> S) -> Self {
        Self::from_fn(&vec![Slot::Co; rank], f)
    }

    pub fn rank(&self) -> usize {
        self.slots.len()
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    pub fn comps(&self) -> &[S] {
        &self.comps
    }

    pub fn get(&self, idx: &[usize]) -> &S {
        debug_assert_eq!(idx.len(), self.rank());
        &self.comps[flat_index(idx)]
    }

    pub fn map<T>(&self, f: impl FnMut(&S) -> T) -> Tensor<T> {
        Tensor {
            slots: self.slots.clone(),
            comps: self.comps.iter().map(f).collect(),
        }
    }

    /// Reorder slots: `result[i_0, .., i_r] = self[i_perm[0], ..]` where
    /// slot k of the result is slot `perm[k]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Self
    where
        S: Clone,
    {
        assert_eq!(perm.len(), self.rank());
        let slots: Vec<Slot> = perm.iter().map(|&p| self.slots[p]).collect();
        let mut src = vec![0; perm.len()];
        Tensor::from_fn(&slots, |idx| {
            for (k, &p) in perm.iter().enumerate() {
                src[p] = idx[k];
            }
            self.get(&src).clone()
        })
    }
}

impl<S: Scalar> Tensor<S> {
    pub fn values(&self) -> Tensor<f64> {
        self.map(|s| s.value())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.slots, rhs.slots, "slot mismatch in tensor sum");
        Tensor {
            slots: self.slots.clone(),
            comps: self.comps.iter().zip(&rhs.comps).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.slots, rhs.slots, "slot mismatch in tensor difference");
        Tensor {
            slots: self.slots.clone(),
            comps: self.comps.iter().zip(&rhs.comps).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn scale(&self, c: f64) -> Self {
        self.map(|a| a.scale(c))
    }

    /// Multiply every component by a scalar field.
    pub fn scale_by(&self, f: &S) -> Self {
        self.map(|a| a.mul(f))
    }

    /// Lower (Contra → Co) or raise (Co → Contra) one slot.
    pub fn musical(&self, slot: usize, ctx: &MetricContext<S>) -> Self {
        let (target, m) = match self.slots[slot] {
            Slot::Contra => (Slot::Co, &ctx.g),
            Slot::Co => (Slot::Contra, &ctx.ginv),
        };
        let mut slots = self.slots.clone();
        slots[slot] = target;
        let zero = self.comps[0].zero_like();
        let mut src = vec![0; self.rank()];
        Tensor::from_fn(&slots, |idx| {
            src.copy_from_slice(idx);
            let mut acc = zero.clone();
            for m_ in 0..DIM {
                src[slot] = m_;
                acc.add_mul_assign(m.get(&[idx[slot], m_]), self.get(&src));
            }
            acc
        })
    }

    /// Full metric contraction ⟨T, U⟩ over every slot (no form normalization).
    pub fn dot(&self, rhs: &Self, ctx: &MetricContext<S>) -> S {
        assert_eq!(self.slots, rhs.slots);
        let mut raised = rhs.clone();
        for k in 0..rhs.rank() {
            raised = raised.musical(k, ctx);
        }
        let mut acc = self.comps[0].zero_like();
        for (a, b) in self.comps.iter().zip(&raised.comps) {
            acc.add_mul_assign(a, b);
        }
        acc
    }
}

impl Tensor<Jet> {
    /// Componentwise partial derivatives, the new derivative index first.
    pub fn partials(&self) -> Result<Tensor<Jet>, JetError> {
        let mut slots = vec![Slot::Co];
        slots.extend_from_slice(&self.slots);
        Tensor::try_from_fn(&slots, |idx| self.get(&idx[1..]).derivative(idx[0]))
    }

    pub fn truncate(&self, order: usize) -> Tensor<Jet> {
        self.map(|j| j.truncate(order))
    }
}

impl Tensor<f64> {
    pub fn max_abs(&self) -> f64 {
        self.comps.iter().fold(0.0, |m, c| m.max(c.abs()))
    }
}

/// Metric components, inverse and volume density at a point.
#[derive(Clone, Debug)]
pub struct MetricContext<S> {
    pub g: Tensor<S>,
    pub ginv: Tensor<S>,
    pub sqrt_det: S,
}

/// Smallest admissible metric eigenvalue.
pub const SPD_FLOOR: f64 = 1e-10;

impl<S: Scalar> MetricContext<S> {
    /// Build from symmetric components; rejects metrics that are not
    /// positive definite at the base point.
    pub fn new(g: [[S; DIM]; DIM]) -> Result<Self, GeometryError> {
        let values = nalgebra::Matrix4::from_fn(|i, j| g[i][j].value());
        let lambda_min = min_eigenvalue(&values);
        if !(lambda_min > SPD_FLOOR) {
            return Err(GeometryError::SingularMetric(lambda_min));
        }
        let det = det4(&g);
        let inv_det = det.recip()?;
        let ginv = Tensor::from_fn(&[Slot::Contra, Slot::Contra], |idx| {
            cofactor(&g, idx[1], idx[0]).mul(&inv_det)
        });
        let sqrt_det = det.sqrt()?;
        let gt = Tensor::from_fn(&[Slot::Co, Slot::Co], |idx| g[idx[0]][idx[1]].clone());
        Ok(MetricContext {
            g: gt,
            ginv,
            sqrt_det,
        })
    }

    pub fn values(&self) -> MetricContext<f64> {
        MetricContext {
            g: self.g.values(),
            ginv: self.ginv.values(),
            sqrt_det: self.sqrt_det.value(),
        }
    }

    pub fn g(&self, i: usize, j: usize) -> &S {
        self.g.get(&[i, j])
    }

    pub fn ginv(&self, i: usize, j: usize) -> &S {
        self.ginv.get(&[i, j])
    }
}

impl MetricContext<f64> {
    pub fn euclidean() -> Self {
        let id = |i: usize, j: usize| if i == j { 1.0 } else { 0.0 };
        MetricContext::new(std::array::from_fn(|i| std::array::from_fn(|j| id(i, j))))
            .expect("identity is positive definite")
    }

    pub fn matrix(&self) -> nalgebra::Matrix4<f64> {
        nalgebra::Matrix4::from_fn(|i, j| *self.g(i, j))
    }

    /// Columns form a g-orthonormal, positively oriented frame.
    pub fn orthonormal_frame(&self) -> nalgebra::Matrix4<f64> {
        let chol = nalgebra::Cholesky::new(self.matrix()).expect("metric is positive definite");
        let l = chol.l();
        l.transpose()
            .try_inverse()
            .expect("Cholesky factor is invertible")
    }
}

pub(crate) fn min_eigenvalue(m: &nalgebra::Matrix4<f64>) -> f64 {
    if m.iter().any(|x| !x.is_finite()) {
        return f64::NAN;
    }
    let sym = (m + m.transpose()) * 0.5;
    sym.symmetric_eigenvalues().min()
}

fn det3<S: Scalar>(m: &[[S; DIM]; DIM], rows: [usize; 3], cols: [usize; 3]) -> S {
    let e = |r: usize, c: usize| &m[rows[r]][cols[c]];
    let t1 = e(1, 1).mul(e(2, 2)).sub(&e(1, 2).mul(e(2, 1)));
    let t2 = e(1, 0).mul(e(2, 2)).sub(&e(1, 2).mul(e(2, 0)));
    let t3 = e(1, 0).mul(e(2, 1)).sub(&e(1, 1).mul(e(2, 0)));
    e(0, 0).mul(&t1).sub(&e(0, 1).mul(&t2)).add(&e(0, 2).mul(&t3))
}

fn others(k: usize) -> [usize; 3] {
    let mut out = [0; 3];
    let mut n = 0;
    for i in 0..DIM {
        if i != k {
            out[n] = i;
            n += 1;
        }
    }
    out
}

/// Signed cofactor C_ij.
fn cofactor<S: Scalar>(m: &[[S; DIM]; DIM], i: usize, j: usize) -> S {
    let minor = det3(m, others(i), others(j));
    if (i + j) % 2 == 0 {
        minor
    } else {
        minor.neg()
    }
}

pub fn det4<S: Scalar>(m: &[[S; DIM]; DIM]) -> S {
    let mut acc = m[0][0].zero_like();
    for j in 0..DIM {
        acc.add_mul_assign(&m[0][j], &cofactor(m, 0, j));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn sample_metric() -> MetricContext<f64> {
        let g = [
            [2.0, 0.3, 0.0, 0.1],
            [0.3, 1.5, 0.2, 0.0],
            [0.0, 0.2, 1.0, -0.4],
            [0.1, 0.0, -0.4, 3.0],
        ];
        MetricContext::new(g).unwrap()
    }

    #[test]
    fn inverse_matches_nalgebra() {
        let ctx = sample_metric();
        let inv = ctx.matrix().try_inverse().unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_relative_eq!(*ctx.ginv(i, j), inv[(i, j)], epsilon = 1e-14);
            }
        }
        assert_relative_eq!(ctx.sqrt_det * ctx.sqrt_det, ctx.matrix().determinant(), epsilon = 1e-12);
    }

    #[test]
    fn raise_then_lower_is_identity() {
        let ctx = sample_metric();
        let t = Tensor::covariant(3, |i| (i[0] as f64) - 0.5 * i[1] as f64 + (i[2] * i[0]) as f64);
        let back = t.musical(1, &ctx).musical(1, &ctx);
        for (a, b) in back.comps().iter().zip(t.comps()) {
            assert_relative_eq!(a, b, epsilon = 1e-13);
        }
    }

    #[test]
    fn euclidean_raise_is_identity() {
        let ctx = MetricContext::euclidean();
        let t = Tensor::covariant(2, |i| (3 * i[0] + i[1]) as f64);
        assert_eq!(t.musical(0, &ctx).comps(), t.comps());
    }

    #[test]
    fn orthonormal_frame_is_orthonormal() {
        let ctx = sample_metric();
        let e = ctx.orthonormal_frame();
        let gram = e.transpose() * ctx.matrix() * e;
        assert_relative_eq!(gram, nalgebra::Matrix4::identity(), epsilon = 1e-13);
        assert!(e.determinant() > 0.0);
    }

    #[test]
    fn singular_metric_rejected() {
        let mut g = [[0.0; 4]; 4];
        g[0][0] = 1.0;
        g[1][1] = 1.0;
        g[2][2] = 1.0;
        assert!(matches!(
            MetricContext::new(g),
            Err(GeometryError::SingularMetric(_))
        ));
    }

    #[test]
    fn permutation_moves_slots() {
        let t = Tensor::covariant(3, |i| (100 * i[0] + 10 * i[1] + i[2]) as f64);
        let p = t.permuted(&[2, 0, 1]);
        assert_eq!(*p.get(&[3, 1, 2]), 123.0);
    }
}
