//! Arithmetic shared by plain values and jets.
//!
//! Geometry code is written once against [`Scalar`] so that the same
//! routines run on `f64` (pointwise algebra, finite-difference reference)
//! and on [`Jet`] (differentiable fields).

use std::fmt::Debug;

use crate::error::JetError;
use crate::jets::Jet;

pub trait Scalar: Clone + Debug + Send + Sync {
    /// A constant with the same base point (for jets) as `self`.
    fn constant_like(&self, c: f64) -> Self;
    fn value(&self) -> f64;

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, c: f64) -> Self;
    fn add_const(&self, c: f64) -> Self;

    fn recip(&self) -> Result<Self, JetError>;
    fn div(&self, rhs: &Self) -> Result<Self, JetError>;
    fn exp(&self) -> Self;
    fn ln(&self) -> Result<Self, JetError>;
    fn sqrt(&self) -> Result<Self, JetError>;
    fn sin(&self) -> Self;
    fn cos(&self) -> Self;
    fn powi(&self, n: i32) -> Result<Self, JetError>;

    /// self += a * b
    fn add_mul_assign(&mut self, a: &Self, b: &Self);
    /// self += c * a
    fn add_scaled_assign(&mut self, a: &Self, c: f64);

    fn zero_like(&self) -> Self {
        self.constant_like(0.0)
    }

    fn add_assign(&mut self, a: &Self) {
        self.add_scaled_assign(a, 1.0);
    }
}

impl Scalar for f64 {
    fn constant_like(&self, c: f64) -> Self {
        c
    }
    fn value(&self) -> f64 {
        *self
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, c: f64) -> Self {
        self * c
    }
    fn add_const(&self, c: f64) -> Self {
        self + c
    }
    fn recip(&self) -> Result<Self, JetError> {
        if *self == 0.0 {
            return Err(JetError::DivideByZero);
        }
        Ok(1.0 / self)
    }
    fn div(&self, rhs: &Self) -> Result<Self, JetError> {
        if *rhs == 0.0 {
            return Err(JetError::DivideByZero);
        }
        Ok(self / rhs)
    }
    fn exp(&self) -> Self {
        f64::exp(*self)
    }
    fn ln(&self) -> Result<Self, JetError> {
        if !(*self > 0.0) {
            return Err(JetError::Domain {
                op: "ln",
                value: *self,
            });
        }
        Ok(f64::ln(*self))
    }
    fn sqrt(&self) -> Result<Self, JetError> {
        if !(*self >= 0.0) {
            return Err(JetError::Domain {
                op: "sqrt",
                value: *self,
            });
        }
        Ok(f64::sqrt(*self))
    }
    fn sin(&self) -> Self {
        f64::sin(*self)
    }
    fn cos(&self) -> Self {
        f64::cos(*self)
    }
    fn powi(&self, n: i32) -> Result<Self, JetError> {
        if n < 0 && *self == 0.0 {
            return Err(JetError::DivideByZero);
        }
        Ok(f64::powi(*self, n))
    }
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
    fn add_scaled_assign(&mut self, a: &Self, c: f64) {
        *self += c * a;
    }
}

impl Scalar for Jet {
    fn constant_like(&self, c: f64) -> Self {
        Jet::constant(self.base(), c)
    }
    fn value(&self) -> f64 {
        Jet::value(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        Jet::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Jet::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Jet::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        Jet::neg(self)
    }
    fn scale(&self, c: f64) -> Self {
        Jet::scale(self, c)
    }
    fn add_const(&self, c: f64) -> Self {
        Jet::add_const(self, c)
    }
    fn recip(&self) -> Result<Self, JetError> {
        Jet::recip(self)
    }
    fn div(&self, rhs: &Self) -> Result<Self, JetError> {
        Jet::div(self, rhs)
    }
    fn exp(&self) -> Self {
        Jet::exp(self)
    }
    fn ln(&self) -> Result<Self, JetError> {
        Jet::ln(self)
    }
    fn sqrt(&self) -> Result<Self, JetError> {
        Jet::sqrt(self)
    }
    fn sin(&self) -> Self {
        Jet::sin(self)
    }
    fn cos(&self) -> Self {
        Jet::cos(self)
    }
    fn powi(&self, n: i32) -> Result<Self, JetError> {
        Jet::powi(self, n)
    }
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        Jet::add_mul_assign(self, a, b)
    }
    fn add_scaled_assign(&mut self, a: &Self, c: f64) {
        Jet::add_scaled_assign(self, a, c)
    }
}
