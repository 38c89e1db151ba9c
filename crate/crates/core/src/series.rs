//! Truncated Puiseux series with exact rational coefficients.
//!
//! A series is sum_i c_i * v^((val+i)/ram) in a base variable v, known modulo
//! v^(prec/ram). Binary operations align ramifications on the lcm grid and
//! take the minimum consistent truncation order. The zero series is stored
//! with an empty coefficient vector and val = prec.

use crate::error::{CoreError, Result};
use crate::poly::Poly;
use crate::rat::{fmt_rat, lcm_i64, pow_rat, Rat};
use num::{BigInt, One, Signed, Zero};
use std::fmt;

/// Truncation marker for exactly-known series (polynomials, constants).
const EXACT_CAP: i64 = 1 << 40;
pub const EXACT: i64 = 1 << 41;

fn scale_prec(p: i64, k: i64) -> i64 {
    if p >= EXACT_CAP {
        EXACT
    } else {
        p * k
    }
}

fn add_prec(a: i64, b: i64) -> i64 {
    let s = a.saturating_add(b);
    if s >= EXACT_CAP {
        EXACT
    } else {
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    ram: i64,
    val: i64,
    coeffs: Vec<Rat>,
    prec: i64,
}

impl Series {
    // ---- constructors ----

    pub fn zero_with(prec: i64, ram: i64) -> Self {
        Series {
            ram,
            val: prec,
            coeffs: Vec::new(),
            prec,
        }
    }

    pub fn constant(c: Rat) -> Self {
        Series::new(1, 0, vec![c], EXACT)
    }

    pub fn one() -> Self {
        Series::constant(Rat::one())
    }

    /// The identity series v (exactly known).
    pub fn identity() -> Self {
        Series::new(1, 1, vec![Rat::one()], EXACT)
    }

    /// c * v^(num/den), exactly known.
    pub fn monomial(c: Rat, num: i64, den: i64) -> Self {
        assert!(den >= 1);
        Series::new(den, num, vec![c], EXACT)
    }

    pub fn new(ram: i64, val: i64, coeffs: Vec<Rat>, prec: i64) -> Self {
        assert!(ram >= 1);
        let mut s = Series {
            ram,
            val,
            coeffs,
            prec,
        };
        s.normalize();
        s
    }

    /// Power series from polynomial coefficients (ascending), exactly known.
    pub fn from_poly(p: &Poly) -> Self {
        Series::new(1, 0, p.coeffs().to_vec(), EXACT)
    }

    fn normalize(&mut self) {
        // clip to precision
        if self.prec < EXACT_CAP {
            let keep = (self.prec - self.val).max(0) as usize;
            self.coeffs.truncate(keep);
        }
        while self.coeffs.first().map_or(false, |c| c.is_zero()) {
            self.coeffs.remove(0);
            self.val += 1;
        }
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
        if self.coeffs.is_empty() {
            self.val = self.prec;
        }
    }

    // ---- accessors ----

    pub fn ram(&self) -> i64 {
        self.ram
    }

    /// Grid index of the leading term (None for a zero-to-precision series).
    pub fn valuation(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.val)
        }
    }

    /// Valuation as an exact exponent.
    pub fn valuation_exp(&self) -> Option<Rat> {
        self.valuation()
            .map(|v| Rat::new(BigInt::from(v), BigInt::from(self.ram)))
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading_coeff(&self) -> Option<Rat> {
        self.coeffs.first().cloned()
    }

    /// Coefficient of v^(idx/ram) (zero when within known range, panics past
    /// the truncation order).
    pub fn coeff_idx(&self, idx: i64) -> Rat {
        assert!(idx < self.prec, "coefficient beyond truncation order");
        if idx < self.val {
            return Rat::zero();
        }
        self.coeffs
            .get((idx - self.val) as usize)
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    /// Coefficient of v^e for a rational exponent e.
    pub fn coeff_exp(&self, e: &Rat) -> Rat {
        let scaled = e * Rat::from(BigInt::from(self.ram));
        if !crate::rat::is_integer(&scaled) {
            return Rat::zero();
        }
        let idx: i64 = crate::rat::to_i64(&scaled).expect("exponent too large");
        self.coeff_idx(idx)
    }

    // ---- grid management ----

    pub fn with_ram(&self, new_ram: i64) -> Series {
        assert!(new_ram % self.ram == 0);
        let k = new_ram / self.ram;
        if k == 1 {
            return self.clone();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() * k as usize);
        for c in &self.coeffs {
            coeffs.push(c.clone());
            for _ in 1..k {
                coeffs.push(Rat::zero());
            }
        }
        Series::new(new_ram, self.val * k, coeffs, scale_prec(self.prec, k))
    }

    fn aligned(&self, other: &Series) -> (Series, Series) {
        let r = lcm_i64(self.ram, other.ram);
        (self.with_ram(r), other.with_ram(r))
    }

    pub fn truncate(&self, prec: i64) -> Series {
        let mut s = self.clone();
        s.prec = s.prec.min(prec);
        s.normalize();
        s
    }

    // ---- ring operations ----

    pub fn add(&self, other: &Series) -> Series {
        let (a, b) = self.aligned(other);
        let prec = a.prec.min(b.prec);
        if a.coeffs.is_empty() && b.coeffs.is_empty() {
            return Series::zero_with(prec, a.ram);
        }
        let lo = match (a.coeffs.is_empty(), b.coeffs.is_empty()) {
            (true, false) => b.val,
            (false, true) => a.val,
            _ => a.val.min(b.val),
        };
        let mut stored_hi = lo;
        if !a.coeffs.is_empty() {
            stored_hi = stored_hi.max(a.val + a.coeffs.len() as i64);
        }
        if !b.coeffs.is_empty() {
            stored_hi = stored_hi.max(b.val + b.coeffs.len() as i64);
        }
        let hi = if prec >= EXACT_CAP {
            stored_hi
        } else {
            stored_hi.min(prec)
        }
        .max(lo);
        let mut coeffs = vec![Rat::zero(); (hi - lo) as usize];
        for (i, c) in a.coeffs.iter().enumerate() {
            let idx = a.val + i as i64 - lo;
            if idx >= 0 && (idx as usize) < coeffs.len() {
                coeffs[idx as usize] += c;
            }
        }
        for (i, c) in b.coeffs.iter().enumerate() {
            let idx = b.val + i as i64 - lo;
            if idx >= 0 && (idx as usize) < coeffs.len() {
                coeffs[idx as usize] += c;
            }
        }
        Series::new(a.ram, lo, coeffs, prec)
    }

    pub fn neg(&self) -> Series {
        Series {
            ram: self.ram,
            val: self.val,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            prec: self.prec,
        }
    }

    pub fn sub(&self, other: &Series) -> Series {
        self.add(&other.neg())
    }

    pub fn mul_scalar(&self, s: &Rat) -> Series {
        if s.is_zero() {
            return Series::zero_with(self.prec, self.ram);
        }
        Series {
            ram: self.ram,
            val: self.val,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
            prec: self.prec,
        }
    }

    pub fn mul(&self, other: &Series) -> Series {
        let (a, b) = self.aligned(other);
        let prec = add_prec(a.prec, b.val).min(add_prec(b.prec, a.val));
        if a.coeffs.is_empty() || b.coeffs.is_empty() {
            return Series::zero_with(prec, a.ram);
        }
        let val = a.val + b.val;
        let len = if prec >= EXACT_CAP {
            a.coeffs.len() + b.coeffs.len() - 1
        } else {
            ((prec - val).max(0) as usize).min(a.coeffs.len() + b.coeffs.len() - 1)
        };
        let mut coeffs = vec![Rat::zero(); len];
        for (i, ca) in a.coeffs.iter().enumerate() {
            if ca.is_zero() || i >= len {
                continue;
            }
            for (j, cb) in b.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                coeffs[i + j] += ca * cb;
            }
        }
        Series::new(a.ram, val, coeffs, prec)
    }

    /// Multiplicative inverse; the leading coefficient must be nonzero.
    pub fn inv(&self) -> Result<Series> {
        if self.coeffs.is_empty() {
            return Err(CoreError::DivisionByZero);
        }
        let c0 = &self.coeffs[0];
        let rel_len = if self.prec >= EXACT_CAP {
            self.coeffs.len().max(1)
        } else {
            (self.prec - self.val).max(1) as usize
        };
        let mut inv = Vec::with_capacity(rel_len);
        let c0_inv = c0.recip();
        inv.push(c0_inv.clone());
        for k in 1..rel_len {
            let mut acc = Rat::zero();
            for i in 1..=k {
                let ci = self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero);
                if !ci.is_zero() {
                    acc += ci * &inv[k - i];
                }
            }
            inv.push(-acc * &c0_inv);
        }
        let prec = if self.prec >= EXACT_CAP {
            // an exact non-polynomial inverse is still truncated at its length
            if self.coeffs.len() == 1 {
                EXACT
            } else {
                -self.val + rel_len as i64
            }
        } else {
            self.prec - 2 * self.val
        };
        Ok(Series::new(self.ram, -self.val, inv, prec))
    }

    pub fn div(&self, other: &Series) -> Result<Series> {
        Ok(self.mul(&other.inv()?))
    }

    /// Raise to a rational power q.
    ///
    /// The leading exponent q*val/ram must land on some grid; the leading
    /// coefficient must possess an exact rational q-th power, otherwise a
    /// field-extension-needed error is raised.
    pub fn pow(&self, q: &Rat) -> Result<Series> {
        if q.is_zero() {
            return Ok(Series::one());
        }
        if self.coeffs.is_empty() {
            if q.is_positive() {
                return Ok(Series::zero_with(self.prec, self.ram));
            }
            return Err(CoreError::DivisionByZero);
        }
        let lead = &self.coeffs[0];
        let lead_pow = pow_rat(lead, q).ok_or_else(|| CoreError::FieldExtensionNeeded {
            n: crate::rat::to_i64(&Rat::from(q.denom().clone())).unwrap_or(0),
            value: fmt_rat(lead),
        })?;
        // leading exponent e = q * val / ram
        let e = q * Rat::new(BigInt::from(self.val), BigInt::from(self.ram));
        let eden: i64 = e
            .denom()
            .to_string()
            .parse()
            .map_err(|_| CoreError::RamificationOverflow {
                ram: self.ram,
                exp: fmt_rat(&e),
            })?;
        let new_ram = lcm_i64(self.ram, eden);
        let k = new_ram / self.ram;
        let new_val: i64 = crate::rat::to_i64(&(e * Rat::from(BigInt::from(new_ram))))
            .ok_or_else(|| CoreError::Other("exponent overflow".into()))?;

        // binomial series on the unit part w = s/(lead v^(val/ram)) - 1
        let rel_len = if self.prec >= EXACT_CAP {
            self.coeffs.len()
        } else {
            (self.prec - self.val).max(1) as usize
        };
        let lead_inv = lead.recip();
        let w: Vec<Rat> = self.coeffs.iter().map(|c| c * &lead_inv).collect();
        // w as relative series with w[0] = 1 removed
        let mut acc = vec![Rat::zero(); rel_len];
        acc[0] = Rat::one();
        let mut term = vec![Rat::zero(); rel_len];
        term[0] = Rat::one();
        let mut k_iter: u64 = 0;
        loop {
            k_iter += 1;
            if k_iter as usize >= rel_len {
                break;
            }
            // term *= w_unit_minus_1 ; multiply by (q - k + 1)/k
            let factor = (q - Rat::from(BigInt::from(k_iter as i64 - 1)))
                / Rat::from(BigInt::from(k_iter as i64));
            let mut next = vec![Rat::zero(); rel_len];
            for (i, t) in term.iter().enumerate() {
                if t.is_zero() {
                    continue;
                }
                for (j, wc) in w.iter().enumerate().skip(1) {
                    if i + j >= rel_len {
                        break;
                    }
                    if !wc.is_zero() {
                        next[i + j] += t * wc;
                    }
                }
            }
            let mut all_zero = true;
            for (i, n) in next.iter().enumerate() {
                let v = n * &factor;
                if !v.is_zero() {
                    all_zero = false;
                }
                term[i] = v;
            }
            if all_zero {
                break;
            }
            for i in 0..rel_len {
                if !term[i].is_zero() {
                    acc[i] += &term[i];
                }
            }
        }
        let coeffs: Vec<Rat> = acc.into_iter().map(|c| c * &lead_pow).collect();
        // spread to new grid
        let mut spread = Vec::with_capacity(coeffs.len() * k as usize);
        for c in coeffs {
            spread.push(c);
            for _ in 1..k {
                spread.push(Rat::zero());
            }
        }
        let prec = if self.prec >= EXACT_CAP {
            if self.coeffs.len() == 1 {
                EXACT
            } else {
                new_val + rel_len as i64 * k
            }
        } else {
            new_val + (rel_len as i64) * k
        };
        Ok(Series::new(new_ram, new_val, spread, prec))
    }

    pub fn pow_i(&self, n: i64) -> Series {
        self.pow(&Rat::from(BigInt::from(n)))
            .expect("integer powers never need roots")
    }

    /// Compose outer(inner). The outer series must be an ordinary power
    /// series (ramification 1, valuation >= 0); the inner series must vanish
    /// at the base point.
    pub fn compose(outer: &Series, inner: &Series) -> Result<Series> {
        if outer.ram != 1 || (!outer.coeffs.is_empty() && outer.val < 0) {
            return Err(CoreError::Other(
                "composition outer must be a power series".into(),
            ));
        }
        match inner.valuation() {
            None => {}
            Some(v) if v >= 1 => {}
            _ => return Err(CoreError::CompositionDivergence),
        }
        let n_terms = if outer.prec >= EXACT_CAP {
            outer.val + outer.coeffs.len() as i64
        } else {
            outer.prec
        };
        let mut acc = Series::zero_with(EXACT, 1);
        for k in (0..n_terms).rev() {
            let c = if k < outer.val {
                Rat::zero()
            } else {
                outer
                    .coeffs
                    .get((k - outer.val) as usize)
                    .cloned()
                    .unwrap_or_else(Rat::zero)
            };
            acc = acc.mul(inner);
            if !c.is_zero() {
                acc = acc.add(&Series::constant(c));
            }
        }
        // truncation from the outer tail
        if outer.prec < EXACT_CAP {
            let inner_val = inner.valuation().unwrap_or(inner.prec);
            acc = acc.truncate(outer.prec.saturating_mul(inner_val).min(EXACT));
        }
        Ok(acc)
    }

    /// d/dv (exponents shift down by one in the base variable).
    pub fn derivative(&self) -> Series {
        let coeffs: Vec<Rat> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * Rat::new(BigInt::from(self.val + i as i64), BigInt::from(self.ram)))
            .collect();
        Series::new(
            self.ram,
            self.val - self.ram,
            coeffs,
            if self.prec >= EXACT_CAP {
                EXACT
            } else {
                self.prec - self.ram
            },
        )
    }

    /// First exponent (as a rational) at which the two series disagree, up to
    /// the common truncation order. None means equal through that order.
    pub fn first_mismatch(&self, other: &Series) -> Option<Rat> {
        let (a, b) = self.aligned(other);
        let prec = a.prec.min(b.prec);
        let lo = a.val.min(b.val);
        for idx in lo..prec {
            if a.coeff_idx(idx) != b.coeff_idx(idx) {
                return Some(Rat::new(BigInt::from(idx), BigInt::from(a.ram)));
            }
        }
        None
    }

    /// Equality of all coefficients with exponent <= order (order in base-variable units).
    pub fn agrees_to_order(&self, other: &Series, order: i64) -> bool {
        match self.first_mismatch(other) {
            None => true,
            Some(e) => e > Rat::from(BigInt::from(order)),
        }
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "O(v^{}/{})", self.prec, self.ram);
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = Rat::new(BigInt::from(self.val + i as i64), BigInt::from(self.ram));
            if e.is_zero() {
                parts.push(fmt_rat(c));
            } else if e.is_one() {
                parts.push(format!("{}*v", fmt_rat(c)));
            } else {
                parts.push(format!("{}*v^({})", fmt_rat(c), fmt_rat(&e)));
            }
            if parts.len() > 12 {
                parts.push("...".into());
                break;
            }
        }
        write!(f, "{}", parts.join(" + "))?;
        if self.prec < EXACT_CAP {
            write!(f, " + O(v^({}/{}))", self.prec, self.ram)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rint};

    fn geom(prec: i64) -> Series {
        // 1/(1-v) = 1 + v + v^2 + ...
        Series::new(1, 0, vec![Rat::one(); prec as usize], prec)
    }

    #[test]
    fn compose_trivial_cases() {
        // outer = 1 + u, inner = v^2 -> 1 + v^2
        let outer = Series::new(1, 0, vec![rint(1), rint(1)], EXACT);
        let inner = Series::monomial(Rat::one(), 2, 1);
        let c = Series::compose(&outer, &inner).unwrap();
        assert_eq!(c.coeff_idx(0), rint(1));
        assert_eq!(c.coeff_idx(2), rint(1));
        // geometric series composed with 2v: coefficients 2^k
        let c2 = Series::compose(&geom(10), &Series::monomial(rint(2), 1, 1)).unwrap();
        for k in 0..10 {
            assert_eq!(c2.coeff_idx(k), rint(1 << k));
        }
        // inner with valuation 0 rejected
        let bad = Series::one();
        assert_eq!(
            Series::compose(&geom(5), &bad),
            Err(CoreError::CompositionDivergence)
        );
    }

    #[test]
    fn pow_binomial() {
        // (1 - 2v)^(-1/4) = 1 + v/2 + 5v^2/8 + O(v^3)
        let s = Series::new(1, 0, vec![rint(1), rint(-2)], 3);
        let p = s.pow(&rat(-1, 4)).unwrap();
        assert_eq!(p.coeff_idx(0), rint(1));
        assert_eq!(p.coeff_idx(1), rat(1, 2));
        assert_eq!(p.coeff_idx(2), rat(5, 8));
        // s^0 = 1
        assert_eq!(s.pow(&Rat::zero()).unwrap(), Series::one());
        // (v^2)^(1/2) = v with ramification handling
        let m = Series::monomial(Rat::one(), 2, 1);
        let r = m.pow(&rat(1, 2)).unwrap();
        assert_eq!(r.valuation_exp(), Some(rint(1)));
        // no rational root -> error
        let s2 = Series::new(1, 0, vec![rint(2), rint(1)], 4);
        assert!(matches!(
            s2.pow(&rat(1, 2)),
            Err(CoreError::FieldExtensionNeeded { .. })
        ));
    }

    #[test]
    fn pow_composition_law() {
        let s = Series::new(1, 2, vec![rint(1), rint(1), rat(1, 5)], 12);
        let a = s.pow(&rat(2, 3)).unwrap().pow(&rat(3, 2)).unwrap();
        assert!(a.first_mismatch(&s).is_none());
        let b = s.pow(&rat(-1, 1)).unwrap();
        let prod = b.mul(&s);
        assert!(prod.first_mismatch(&Series::one()).is_none());
    }

    #[test]
    fn mixed_ramification_arithmetic() {
        // v^(1/2) * v^(1/3) = v^(5/6)
        let a = Series::monomial(rint(1), 1, 2);
        let b = Series::monomial(rint(1), 1, 3);
        let p = a.mul(&b);
        assert_eq!(p.valuation_exp(), Some(rat(5, 6)));
    }

    #[test]
    fn inverse_of_unit() {
        let s = Series::new(1, 0, vec![rint(1), rint(33), rint(-9)], 8);
        let i = s.inv().unwrap();
        assert!(s.mul(&i).first_mismatch(&Series::one()).is_none());
    }
}
