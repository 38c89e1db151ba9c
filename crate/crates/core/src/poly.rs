//! Dense univariate polynomials over Q.
//!
//! Coefficients are stored in ascending degree order; the vector is empty for
//! the zero polynomial and otherwise ends with a nonzero coefficient. The gcd
//! and factorization routines clear denominators and delegate to [`crate::intpoly`].

use crate::intpoly::{self, ZPoly};
use crate::quad::Quad;
use crate::rat::{fmt_rat, Rat};
use num::bigint::BigInt;
use num::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    pub fn x() -> Self {
        Poly::from_coeffs(vec![Rat::zero(), Rat::one()])
    }

    pub fn constant(c: Rat) -> Self {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { coeffs: vec![c] }
        }
    }

    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        let mut p = Poly { coeffs };
        p.normalize();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| Rat::from(BigInt::from(c))).collect())
    }

    /// c * x^k
    pub fn monomial(c: Rat, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    fn normalize(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Degree with deg(0) = -1, convenient for pole bookkeeping.
    pub fn deg_i(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let l = self.leading();
        self.scale(&l.recip())
    }

    pub fn scale(&self, s: &Rat) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_quad(&self, x: &Quad) -> Quad {
        let mut acc = Quad::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc
                .mul(x)
                .and_then(|t| t.add(&Quad::from_rat(c.clone())))
                .expect("same field");
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::from_coeffs(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * Rat::from(BigInt::from(i as i64 + 1)))
                .collect(),
        )
    }

    /// Substitute q for the variable: self(q).
    pub fn compose(&self, q: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * q) + &Poly::constant(c.clone());
        }
        acc
    }

    pub fn pow(&self, n: usize) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division: self = q*d + r with deg r < deg d.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r = self.clone();
        let dd = d.degree().unwrap();
        let dlc = d.leading();
        if r.degree().map_or(true, |dr| dr < dd) {
            return (Poly::zero(), r);
        }
        let mut q = vec![Rat::zero(); r.degree().unwrap() - dd + 1];
        while let Some(dr) = r.degree() {
            if dr < dd {
                break;
            }
            let c = r.leading() / dlc.clone();
            q[dr - dd] = c.clone();
            for (j, cd) in d.coeffs.iter().enumerate() {
                let idx = dr - dd + j;
                let v = r.coeff(idx) - &c * cd;
                r.coeffs[idx] = v;
            }
            r.normalize();
        }
        (Poly::from_coeffs(q), r)
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.divrem(d).1
    }

    pub fn div_exact(&self, d: &Poly) -> Poly {
        let (q, r) = self.divrem(d);
        assert!(r.is_zero(), "non-exact division");
        q
    }

    /// Clear denominators: returns (c, z) with self = c * z, z primitive integer.
    pub fn to_zpoly(&self) -> (Rat, ZPoly) {
        if self.is_zero() {
            return (Rat::one(), Vec::new());
        }
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = num::Integer::lcm(&den, c.denom());
        }
        let ints: ZPoly = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let (content, prim) = intpoly::zp_primitive(&ints);
        (Rat::new(content, den), prim)
    }

    pub fn from_zpoly(z: &[BigInt]) -> Poly {
        Poly::from_coeffs(z.iter().map(|c| Rat::from(c.clone())).collect())
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() && other.is_zero() {
            return Poly::zero();
        }
        let (_, a) = self.to_zpoly();
        let (_, b) = other.to_zpoly();
        let g = intpoly::zp_gcd(&a, &b);
        Poly::from_zpoly(&g).monic()
    }

    /// Squarefree decomposition: [(g, multiplicity)] with monic squarefree g.
    pub fn squarefree_decomposition(&self) -> Vec<(Poly, usize)> {
        let (_, z) = self.to_zpoly();
        intpoly::zp_squarefree_decomposition(&z)
            .into_iter()
            .map(|(g, m)| (Poly::from_zpoly(&g).monic(), m))
            .collect()
    }

    /// Factor into monic irreducible factors with multiplicities
    /// (the rational content is dropped).
    pub fn factor(&self) -> Vec<(Poly, usize)> {
        let (_, z) = self.to_zpoly();
        let (_, facs) = intpoly::zp_factor(&z);
        facs.into_iter()
            .map(|(g, m)| (Poly::from_zpoly(&g).monic(), m))
            .collect()
    }

    /// x -> x^k substitution.
    pub fn inflate(&self, k: usize) -> Poly {
        if self.is_zero() || k == 1 {
            return self.clone();
        }
        let mut coeffs = vec![Rat::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        Poly::from_coeffs(coeffs)
    }

    /// Order of vanishing at x = 0.
    pub fn valuation_at_zero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = vec![Rat::zero(); self.coeffs.len().max(rhs.coeffs.len())];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            out[i] += c;
        }
        Poly::from_coeffs(out)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::from_coeffs(out)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() {
                ("-", -c.clone())
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign)?;
            }
            if i == 0 {
                write!(f, "{}", fmt_rat(&mag))?;
            } else {
                if !mag.is_one() {
                    write!(f, "{}*", fmt_rat(&mag))?;
                }
                if i == 1 {
                    write!(f, "x")?;
                } else {
                    write!(f, "x^{}", i)?;
                }
            }
        }
        Ok(())
    }
}

/// Monic gcd of two polynomials; gcd(f, 0) = monic f, gcd(0, 0) = 0.
pub fn poly_gcd(f: &Poly, g: &Poly) -> Poly {
    f.gcd(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn gcd_examples() {
        // gcd(x^2-1, x^2-2x+1) = x-1
        let f = Poly::from_i64(&[-1, 0, 1]);
        let g = Poly::from_i64(&[1, -2, 1]);
        assert_eq!(poly_gcd(&f, &g), Poly::from_i64(&[-1, 1]));
        // gcd(f, 0) = monic f
        let h = Poly::from_i64(&[2, 4]);
        assert_eq!(
            poly_gcd(&h, &Poly::zero()),
            Poly::from_coeffs(vec![rat(1, 2), rat(1, 1)])
        );
        assert_eq!(poly_gcd(&Poly::zero(), &Poly::zero()), Poly::zero());
    }

    #[test]
    fn isophi1_in_lowest_terms() {
        // numerator 1728 x (x^2-11x-1)^5 and denominator (x^4+228x^3+494x^2-228x+1)^3
        let num = &Poly::from_i64(&[0, 1728]) * &Poly::from_i64(&[-1, -11, 1]).pow(5);
        let den = Poly::from_i64(&[1, -228, 494, 228, 1]).pow(3);
        assert_eq!(poly_gcd(&num, &den), Poly::one());
    }

    #[test]
    fn degree_additivity_and_division() {
        let f = Poly::from_i64(&[1, 2, 3]);
        let g = Poly::from_i64(&[-5, 0, 0, 7]);
        assert_eq!(
            (&f * &g).degree(),
            Some(f.degree().unwrap() + g.degree().unwrap())
        );
        let (q, r) = (&(&f * &g) + &Poly::from_i64(&[1])).divrem(&f);
        assert_eq!(&(&q * &f) + &r, &(&f * &g) + &Poly::from_i64(&[1]));
    }

    #[test]
    fn display_roundtrip_shape() {
        let f = Poly::from_coeffs(vec![rat(1, 1), rat(-117, 1), rat(-234, 1)]);
        assert_eq!(format!("{}", f), "1 - 117*x - 234*x^2");
    }
}
