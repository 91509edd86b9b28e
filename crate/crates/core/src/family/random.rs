//! Random almost Kähler raw specs.
//!
//! With Darboux coordinates q = (x, z), p = (y, t) and Ω₀ = dx∧dy + dz∧dt,
//! any symplectic matrix field S gives a compatible metric g = S⁻ᵀS⁻¹. We take
//! S = U(A)L(C) with U(A) = [[1, A], [0, 1]], L(C) = [[1, 0], [C, 1]] and A, C
//! symmetric 2×2 matrices of random quadratic polynomials, so that
//! S⁻¹ = [[1, −A], [−C, 1 + CA]]. Ω₀ is closed and J = g⁻¹Ω₀ᵀ is generically
//! not integrable.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::expr::{Expr, VAR_NAMES};
use super::{DomainBox, RawSpec};

const COEFF_RANGE: f64 = 0.3;
const HALF_WIDTH: f64 = 0.5;
/// Coordinate index of the (q₁, q₂, p₁, p₂) slots.
const QP: [usize; 4] = [0, 2, 1, 3];

fn quadratic(rng: &mut ChaCha8Rng) -> Expr {
    let mut c = || rng.random_range(-COEFF_RANGE..=COEFF_RANGE);
    let mut e = Expr::c(c());
    for i in 0..4 {
        e = e + Expr::c(c()) * Expr::var(i);
    }
    for i in 0..4 {
        for j in i..4 {
            e = e + Expr::c(c()) * Expr::var(i) * Expr::var(j);
        }
    }
    e
}

fn symmetric(rng: &mut ChaCha8Rng) -> [[Expr; 2]; 2] {
    let a = quadratic(rng);
    let b = quadratic(rng);
    let d = quadratic(rng);
    [[a, b.clone()], [b, d]]
}

/// A random almost Kähler structure on [−½, ½]⁴, reproducible from `seed`.
pub fn random_almost_kahler(seed: u64) -> RawSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = symmetric(&mut rng);
    let c = symmetric(&mut rng);
    let one = |i: usize, j: usize| Expr::c(if i == j { 1.0 } else { 0.0 });

    // S⁻¹ in the (q, p) basis.
    let mut sinv: [[Expr; 4]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| Expr::c(0.0)));
    for i in 0..2 {
        for j in 0..2 {
            sinv[i][j] = one(i, j);
            sinv[i][j + 2] = -a[i][j].clone();
            sinv[i + 2][j] = -c[i][j].clone();
            let ca = c[i][0].clone() * a[0][j].clone() + c[i][1].clone() * a[1][j].clone();
            sinv[i + 2][j + 2] = one(i, j) + ca;
        }
    }

    let mut metric = BTreeMap::new();
    for a_ in 0..4 {
        for b_ in a_..4 {
            let mut e = Expr::c(0.0);
            for row in &sinv {
                e = e + row[a_].clone() * row[b_].clone();
            }
            let (i, j) = (QP[a_].min(QP[b_]), QP[a_].max(QP[b_]));
            metric.insert(format!("{}{}", VAR_NAMES[i], VAR_NAMES[j]), e);
        }
    }
    let mut omega = BTreeMap::new();
    omega.insert("xy".to_string(), Expr::c(1.0));
    omega.insert("zt".to_string(), Expr::c(1.0));
    RawSpec {
        metric,
        omega,
        domain: DomainBox {
            lo: [-HALF_WIDTH; 4],
            hi: [HALF_WIDTH; 4],
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::almost_hermitian::AlmostHermitianField;
    use crate::curvature::MetricField;
    use crate::exterior::MetricContext;

    #[test]
    fn reproducible_and_compatible() {
        let spec = random_almost_kahler(11);
        assert_eq!(spec, random_almost_kahler(11));
        assert_ne!(spec, random_almost_kahler(12));
        spec.validate().unwrap();
        let p = [0.3, -0.2, 0.45, 0.1];
        let g = spec.metric(&p).unwrap();
        let om = spec.fundamental_form(&p).unwrap();
        let ctx = MetricContext::new(g).unwrap();
        let j = |k: usize, i: usize| (0..4).map(|l| ctx.ginv(k, l) * om[i][l]).sum::<f64>();
        for a in 0..4 {
            for b in 0..4 {
                let jj: f64 = (0..4).map(|c| j(a, c) * j(c, b)).sum();
                assert!((jj + if a == b { 1.0 } else { 0.0 }).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn spec_survives_json() {
        let spec = random_almost_kahler(5);
        let s = serde_json::to_string(&spec).unwrap();
        let back: RawSpec = serde_json::from_str(&s).unwrap();
        let p = [0.1, 0.2, -0.3, 0.4];
        let (g1, g2) = (spec.metric(&p).unwrap(), back.metric(&p).unwrap());
        for i in 0..4 {
            for j in 0..4 {
                assert!((g1[i][j] - g2[i][j]).abs() <= 1e-15 * g1[i][j].abs().max(1.0));
            }
        }
    }
}
