//! Holomorphic polynomials h = w + iv in ζ = x + iy.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{InstanceError, JetError};
use crate::scalar::Scalar;

pub const MAX_DEGREE: usize = 6;

/// h(ζ) = Σ c_n ζ^n. An optional `cr_defect` adds `cr_defect · x` to the
/// imaginary part only, producing a deliberately non-holomorphic pair.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HoloFn {
    pub coefficients: Vec<Complex64>,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub cr_defect: f64,
}

fn is_zero(v: &f64) -> bool {
    *v == 0.0
}

impl HoloFn {
    pub fn new(coefficients: Vec<Complex64>) -> Result<Self, InstanceError> {
        let h = HoloFn {
            coefficients,
            cr_defect: 0.0,
        };
        h.validate()?;
        Ok(h)
    }

    /// ζ^n with unit coefficient.
    pub fn monomial(n: usize) -> Self {
        let mut c = vec![Complex64::new(0.0, 0.0); n + 1];
        c[n] = Complex64::new(1.0, 0.0);
        HoloFn {
            coefficients: c,
            cr_defect: 0.0,
        }
    }

    pub fn constant(c: f64) -> Self {
        HoloFn {
            coefficients: vec![Complex64::new(c, 0.0)],
            cr_defect: 0.0,
        }
    }

    pub fn validate(&self) -> Result<(), InstanceError> {
        if self.coefficients.is_empty() || self.coefficients.len() > MAX_DEGREE + 1 {
            return Err(InstanceError::Invalid(format!(
                "holomorphic polynomial needs 1..={} coefficients",
                MAX_DEGREE + 1
            )));
        }
        if self
            .coefficients
            .iter()
            .any(|c| !c.re.is_finite() || !c.im.is_finite())
            || !self.cr_defect.is_finite()
        {
            return Err(InstanceError::Invalid("non-finite coefficient".into()));
        }
        Ok(())
    }

    pub fn is_constant(&self) -> bool {
        self.coefficients.iter().skip(1).all(|c| c.norm() == 0.0) && self.cr_defect == 0.0
    }

    /// (w, v) at (x, y).
    pub fn eval<S: Scalar>(&self, x: &S, y: &S) -> (S, S) {
        let mut re = x.constant_like(1.0);
        let mut im = x.constant_like(0.0);
        let mut w = x.constant_like(0.0);
        let mut v = x.constant_like(0.0);
        for (n, c) in self.coefficients.iter().enumerate() {
            if n > 0 {
                let nre = re.mul(x).sub(&im.mul(y));
                let nim = re.mul(y).add(&im.mul(x));
                re = nre;
                im = nim;
            }
            w.add_scaled_assign(&re, c.re);
            w.add_scaled_assign(&im, -c.im);
            v.add_scaled_assign(&im, c.re);
            v.add_scaled_assign(&re, c.im);
        }
        if self.cr_defect != 0.0 {
            v.add_scaled_assign(x, self.cr_defect);
        }
        (w, v)
    }

    /// |∂w/∂x − ∂v/∂y| + |∂w/∂y + ∂v/∂x| at (x, y).
    pub fn cauchy_riemann_residual(&self, x: f64, y: f64) -> Result<f64, JetError> {
        let [jx, jy, ..] = crate::jets::Jet::coordinates([x, y, 0.0, 0.0]);
        let (w, v) = self.eval(&jx, &jy);
        let d = |f: &crate::jets::Jet, i: usize| f.derivative(i).map(|j| j.value());
        Ok((d(&w, 0)? - d(&v, 1)?).abs() + (d(&w, 1)? + d(&v, 0)?).abs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_splits_into_real_and_imaginary_parts() {
        let h = HoloFn::monomial(2);
        let (w, v) = h.eval(&1.5, &0.5);
        assert_eq!(w, 1.5 * 1.5 - 0.25);
        assert_eq!(v, 2.0 * 1.5 * 0.5);
    }

    #[test]
    fn polynomials_satisfy_cauchy_riemann() {
        let h = HoloFn::new(vec![
            Complex64::new(1.0, 0.5),
            Complex64::new(-0.3, 2.0),
            Complex64::new(0.0, 0.1),
            Complex64::new(0.2, 0.0),
        ])
        .unwrap();
        for (x, y) in [(0.3, 0.7), (1.2, -0.4), (2.0, 1.0)] {
            assert!(h.cauchy_riemann_residual(x, y).unwrap() <= 1e-12);
        }
        let mut broken = h.clone();
        broken.cr_defect = 1e-3;
        let r = broken.cauchy_riemann_residual(0.3, 0.7).unwrap();
        assert!((r - 1e-3).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_degree() {
        assert!(HoloFn::new(vec![]).is_err());
        assert!(HoloFn::new(vec![Complex64::new(1.0, 0.0); 8]).is_err());
    }
}
