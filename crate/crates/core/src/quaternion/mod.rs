//! Quaternions stored as complex pairs, `q = w1 + w2 j`, and the quaternionic form of
//! the representation (`∫ a dz b`).
//!
//! With `w1 = q0 + i q1` and `w2 = q2 + i q3` this is `q = q0 + i q1 + j q2 + k q3`.
//! The product reduces to complex arithmetic through `j c = c̄ j`:
//!
//! ```text
//! (w1 + w2 j)(v1 + v2 j) = (w1 v1 − w2 v̄2) + (w1 v2 + w2 v̄1) j
//! ```
//!
//! The algebra is generic over any signed numeric type, so identities can be checked
//! exactly over the rationals as well as in floating point.

mod field;

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{Float, Num};

pub use field::{
    embed_left, embed_right, equivalence_check, exterior_derivative_q, integrate_q, left_dzbar, product_form,
    quaternionic_dirac_residual, right_dzbar, unpack_left, unpack_right, QuaternionField, QuaternionOneForm,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Quaternion<T> {
    pub w1: Complex<T>,
    pub w2: Complex<T>,
}

impl<T: Clone + Num + Neg<Output = T>> Quaternion<T> {
    pub fn new(w1: Complex<T>, w2: Complex<T>) -> Self {
        Self { w1, w2 }
    }

    /// `q0 + i q1 + j q2 + k q3`.
    pub fn from_components(q0: T, q1: T, q2: T, q3: T) -> Self {
        Self { w1: Complex::new(q0, q1), w2: Complex::new(q2, q3) }
    }

    /// Embeds a complex number in `span{1, i}`.
    pub fn from_complex(c: Complex<T>) -> Self {
        Self { w1: c, w2: Complex::new(T::zero(), T::zero()) }
    }

    pub fn components(&self) -> [T; 4] {
        [self.w1.re.clone(), self.w1.im.clone(), self.w2.re.clone(), self.w2.im.clone()]
    }

    pub fn zero() -> Self {
        Self::from_components(T::zero(), T::zero(), T::zero(), T::zero())
    }

    pub fn one() -> Self {
        Self::from_components(T::one(), T::zero(), T::zero(), T::zero())
    }

    pub fn i() -> Self {
        Self::from_components(T::zero(), T::one(), T::zero(), T::zero())
    }

    pub fn j() -> Self {
        Self::from_components(T::zero(), T::zero(), T::one(), T::zero())
    }

    pub fn k() -> Self {
        Self::from_components(T::zero(), T::zero(), T::zero(), T::one())
    }

    /// Quaternion conjugate `q0 − i q1 − j q2 − k q3`.
    pub fn conj(&self) -> Self {
        Self { w1: self.w1.conj(), w2: -self.w2.clone() }
    }

    pub fn norm_sqr(&self) -> T {
        self.w1.norm_sqr() + self.w2.norm_sqr()
    }

    pub fn scale(&self, c: T) -> Self {
        Self { w1: self.w1.clone() * c.clone(), w2: self.w2.clone() * c }
    }
}

impl<T: Float> Quaternion<T> {
    pub fn norm(&self) -> T {
        self.norm_sqr().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.w1.re.is_finite() && self.w1.im.is_finite() && self.w2.re.is_finite() && self.w2.im.is_finite()
    }
}

impl<T: Clone + Num + Neg<Output = T>> Add for Quaternion<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self { w1: self.w1 + rhs.w1, w2: self.w2 + rhs.w2 }
    }
}

impl<T: Clone + Num + Neg<Output = T>> Sub for Quaternion<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self { w1: self.w1 - rhs.w1, w2: self.w2 - rhs.w2 }
    }
}

impl<T: Clone + Num + Neg<Output = T>> Neg for Quaternion<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self { w1: -self.w1, w2: -self.w2 }
    }
}

impl<T: Clone + Num + Neg<Output = T>> Mul for Quaternion<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let (w1, w2) = (self.w1, self.w2);
        let (v1, v2) = (rhs.w1, rhs.w2);
        Self { w1: w1.clone() * v1.clone() - w2.clone() * v2.conj(), w2: w1 * v2 + w2 * v1.conj() }
    }
}
