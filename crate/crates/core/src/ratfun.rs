//! Rational functions num/den over Q, kept in lowest terms with monic
//! denominator.

use crate::poly::Poly;
use crate::rat::Rat;
use num::{One, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut r = RatFun { num, den };
        r.reduce();
        r
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFun {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn constant(c: Rat) -> Self {
        RatFun::from_poly(Poly::constant(c))
    }

    pub fn zero() -> Self {
        RatFun::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        RatFun::from_poly(Poly::one())
    }

    /// The identity function z.
    pub fn z() -> Self {
        RatFun::from_poly(Poly::x())
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = Poly::one();
            return;
        }
        let g = self.num.gcd(&self.den);
        if g.degree().map_or(false, |d| d > 0) {
            self.num = self.num.div_exact(&g);
            self.den = self.den.div_exact(&g);
        }
        let lc = self.den.leading();
        if !lc.is_one() {
            self.den = self.den.scale(&lc.recip());
            self.num = self.num.scale(&lc.recip());
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.degree().map_or(true, |d| d == 0) && self.den.is_one()
    }

    pub fn inv(&self) -> RatFun {
        assert!(!self.is_zero(), "inverting zero rational function");
        RatFun::new(self.den.clone(), self.num.clone())
    }

    pub fn eval(&self, x: &Rat) -> Option<Rat> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    pub fn derivative(&self) -> RatFun {
        // (n/d)' = (n'd - nd')/d^2
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RatFun::new(n, &self.den * &self.den)
    }

    pub fn pow_i(&self, n: i64) -> RatFun {
        let base = if n >= 0 { self.clone() } else { self.inv() };
        let mut acc = RatFun::one();
        for _ in 0..n.unsigned_abs() {
            acc = &acc * &base;
        }
        acc
    }

    /// Substitute a rational function for the variable.
    pub fn compose(&self, inner: &RatFun) -> RatFun {
        let dn = self.num.deg_i().max(self.den.deg_i()).max(0) as usize;
        // num(inner)/den(inner), cleared by inner.den^dn
        let mut num_acc = Poly::zero();
        let mut den_acc = Poly::zero();
        for k in 0..=dn {
            let scale = &inner.num.pow(k) * &inner.den.pow(dn - k);
            if !self.num.coeff(k).is_zero() {
                num_acc = &num_acc + &scale.scale(&self.num.coeff(k));
            }
            if !self.den.coeff(k).is_zero() {
                den_acc = &den_acc + &scale.scale(&self.den.coeff(k));
            }
        }
        RatFun::new(num_acc, den_acc)
    }
}

impl Add for &RatFun {
    type Output = RatFun;
    fn add(self, rhs: &RatFun) -> RatFun {
        RatFun::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &RatFun) -> RatFun {
        self + &(-rhs)
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &RatFun) -> RatFun {
        RatFun::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &RatFun {
    type Output = RatFun;
    fn div(self, rhs: &RatFun) -> RatFun {
        assert!(!rhs.is_zero(), "division by zero rational function");
        RatFun::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn reduction_invariants() {
        // (x^2-1)/(x-1) = x+1, monic denominator
        let r = RatFun::new(Poly::from_i64(&[-1, 0, 1]), Poly::from_i64(&[-2, 2]));
        assert_eq!(r.num(), &Poly::from_coeffs(vec![rat(1, 2), rat(1, 2)]));
        assert_eq!(r.den(), &Poly::one());
    }

    #[test]
    fn field_ops() {
        let r = RatFun::new(Poly::from_i64(&[0, 1]), Poly::from_i64(&[1, 1]));
        let s = &r * &r.inv();
        assert_eq!(s, RatFun::one());
        let d = r.derivative();
        // (x/(1+x))' = 1/(1+x)^2
        assert_eq!(
            d,
            RatFun::new(Poly::one(), Poly::from_i64(&[1, 2, 1]))
        );
    }
}
