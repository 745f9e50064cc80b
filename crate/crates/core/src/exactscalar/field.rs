use std::fmt::Debug;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Element of an exact field, used by morphisms and the linear-algebra kernels.
pub trait FieldElem: Clone + PartialEq + Debug + Send + Sync + 'static {
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn neg(&self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn inv(&self) -> Result<Self>;

    fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    fn add_assign(&mut self, other: &Self) {
        *self = self.add(other);
    }

    /// `self -= factor * other`, the inner step of every elimination loop.
    fn sub_mul_assign(&mut self, factor: &Self, other: &Self) {
        *self = self.sub(&factor.mul(other));
    }
}

impl FieldElem for BigRational {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn inv(&self) -> Result<Self> {
        if Zero::is_zero(self) {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }
    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
    fn sub_mul_assign(&mut self, factor: &Self, other: &Self) {
        *self -= factor * other;
    }
}
