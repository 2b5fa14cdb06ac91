//! The coefficient-ring abstraction shared by the series transforms and the
//! polynomial model of imaginary root vectors.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::qlaurent::RatFunc;

/// A commutative ring containing Q.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_rational(c: &BigRational) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn scale(&self, c: &BigRational) -> Self {
        self.clone() * Self::from_rational(c)
    }
}

/// A ring that is also an algebra over Q(q).
pub trait QAlgebra: Ring {
    fn scale_q(&self, c: &RatFunc) -> Self;
}

impl Ring for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_rational(c: &BigRational) -> Self {
        c.clone()
    }
}

impl Ring for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn one() -> Self {
        RatFunc::one()
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn from_rational(c: &BigRational) -> Self {
        RatFunc::from_rational(c.clone())
    }
    fn scale(&self, c: &BigRational) -> Self {
        self.scale_rational(c)
    }
}

impl QAlgebra for RatFunc {
    fn scale_q(&self, c: &RatFunc) -> Self {
        self * c
    }
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring {
    fn inv(&self) -> Option<Self>;
}

impl Field for BigRational {
    fn inv(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
}

impl Field for RatFunc {
    fn inv(&self) -> Option<Self> {
        RatFunc::inv(self).ok()
    }
}
