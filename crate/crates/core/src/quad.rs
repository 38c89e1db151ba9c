//! Elements of a real quadratic field Q(sqrt(d)).
//!
//! A `Quad` is `a + b*sqrt(d)` with rational coordinates and a square-free
//! integer discriminant `d`. Rational values are stored with `d = 0`; mixing
//! two different non-zero discriminants is rejected rather than coerced.

use crate::error::{CoreError, Result};
use crate::rat::{fmt_rat, Rat};
use num::{One, Zero};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quad {
    pub a: Rat,
    pub b: Rat,
    /// Square-free discriminant; 0 for plain rationals (b = 0).
    pub d: i64,
}

impl Quad {
    pub fn new(a: Rat, b: Rat, d: i64) -> Self {
        let mut q = Quad { a, b, d };
        q.canonicalize();
        q
    }

    pub fn from_rat(a: Rat) -> Self {
        Quad {
            a,
            b: Rat::zero(),
            d: 0,
        }
    }

    fn canonicalize(&mut self) {
        if self.b.is_zero() {
            self.d = 0;
        }
    }

    fn join_field(&self, other: &Self) -> Result<i64> {
        match (self.d, other.d) {
            (0, d) | (d, 0) => Ok(d),
            (d1, d2) if d1 == d2 => Ok(d1),
            (d1, d2) => Err(CoreError::MixedFields(d1, d2)),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Galois conjugate a - b*sqrt(d).
    pub fn conj(&self) -> Self {
        Quad::new(self.a.clone(), -self.b.clone(), self.d)
    }

    /// Field norm a^2 - d b^2.
    pub fn norm(&self) -> Rat {
        &self.a * &self.a - Rat::from(num::BigInt::from(self.d)) * &self.b * &self.b
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let d = self.join_field(other)?;
        Ok(Quad::new(&self.a + &other.a, &self.b + &other.b, d))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Quad::new(-self.a.clone(), -self.b.clone(), self.d)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let d = self.join_field(other)?;
        let dr = Rat::from(num::BigInt::from(d));
        let a = &self.a * &other.a + &dr * &self.b * &other.b;
        let b = &self.a * &other.b + &self.b * &other.a;
        Ok(Quad::new(a, b, d))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(CoreError::DivisionByZero);
        }
        let n = self.norm();
        if n.is_zero() {
            // d must be a square, which square-free discriminants exclude,
            // unless the element itself is zero.
            return Err(CoreError::DivisionByZero);
        }
        Ok(Quad::new(&self.a / &n, -&self.b / &n, self.d))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.mul(&other.inv()?)
    }
}

impl fmt::Display for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", fmt_rat(&self.a));
        }
        if self.a.is_zero() {
            return write!(f, "{}*sqrt({})", fmt_rat(&self.b), self.d);
        }
        write!(f, "{} + {}*sqrt({})", fmt_rat(&self.a), fmt_rat(&self.b), self.d)
    }
}

impl Quad {
    pub fn one() -> Self {
        Quad::from_rat(Rat::one())
    }

    pub fn zero() -> Self {
        Quad::from_rat(Rat::zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn arithmetic_and_norm() {
        let u = Quad::new(rat(11, 6), rat(5, 6), 5);
        let v = Quad::new(rat(1, 2), rat(-1, 3), 5);
        let w = u.mul(&v).unwrap();
        // norm is multiplicative
        assert_eq!(w.norm(), u.norm() * v.norm());
        // conjugation is a ring automorphism
        assert_eq!(
            u.conj().mul(&v.conj()).unwrap(),
            u.mul(&v).unwrap().conj()
        );
        let inv = u.inv().unwrap();
        assert_eq!(u.mul(&inv).unwrap(), Quad::one());
    }

    #[test]
    fn mixed_fields_rejected() {
        let u = Quad::new(rat(1, 1), rat(1, 1), 5);
        let v = Quad::new(rat(1, 1), rat(1, 1), 11);
        assert_eq!(u.add(&v), Err(CoreError::MixedFields(5, 11)));
        // rationals embed in any field
        let r = Quad::from_rat(rat(2, 1));
        assert_eq!(u.add(&r).unwrap().d, 5);
    }
}
