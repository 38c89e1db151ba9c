//! Arbitrary-precision rational scalars.
//!
//! `Rat` is `num::BigRational`: always reduced, positive denominator, exact
//! arithmetic. This module adds the literal grammar `"±num/den"` used across
//! the catalog files and a few numeric helpers (floor, n-th roots,
//! rational powers of integers) that the series and divisor code relies on.

use crate::error::{CoreError, Result};
use num::bigint::{BigInt, Sign};
use num::{BigRational, One, Signed, Zero};

pub type Rat = BigRational;

/// Shorthand for `n/d` as a `Rat`. Panics when `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    assert!(d != 0, "zero denominator");
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for an integer `Rat`.
pub fn rint(n: i64) -> Rat {
    BigRational::from(BigInt::from(n))
}

/// Parse the literal grammar `"±num/den"` (decimal digit strings, optional
/// denominator). Whitespace around the literal is ignored.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    if s.is_empty() {
        return Err(CoreError::Parse("empty rational literal".into()));
    }
    let (num_s, den_s) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num_s
        .parse()
        .map_err(|_| CoreError::Parse(format!("bad integer {num_s:?}")))?;
    let den: BigInt = den_s
        .parse()
        .map_err(|_| CoreError::Parse(format!("bad integer {den_s:?}")))?;
    if den.is_zero() {
        return Err(CoreError::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(num, den))
}

/// Canonical printing: `num/den`, or just `num` when the denominator is 1.
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// Floor of a rational as a `BigInt`.
pub fn floor_int(r: &Rat) -> BigInt {
    r.floor().to_integer()
}

/// `r` as `i64`, when integral and small enough.
pub fn to_i64(r: &Rat) -> Option<i64> {
    if !is_integer(r) {
        return None;
    }
    let n = r.numer();
    n.to_string().parse::<i64>().ok()
}

/// Exact integer n-th root when `a` is a perfect n-th power (n >= 1).
/// Negative `a` is allowed for odd n.
pub fn nth_root_bigint(a: &BigInt, n: u32) -> Option<BigInt> {
    if n == 0 {
        return None;
    }
    if n == 1 {
        return Some(a.clone());
    }
    if a.is_zero() {
        return Some(BigInt::zero());
    }
    if a.sign() == Sign::Minus {
        if n % 2 == 0 {
            return None;
        }
        return nth_root_bigint(&(-a), n).map(|r| -r);
    }
    let r = a.nth_root(n);
    if num::pow::pow(r.clone(), n as usize) == *a {
        Some(r)
    } else {
        None
    }
}

/// Exact rational n-th root when both numerator and denominator are perfect
/// n-th powers.
pub fn nth_root_rat(r: &Rat, n: u32) -> Option<Rat> {
    let num = nth_root_bigint(r.numer(), n)?;
    let den = nth_root_bigint(r.denom(), n)?;
    Some(BigRational::new(num, den))
}

/// `base^e` for rational exponent `e`, when the result stays rational.
pub fn pow_rat(base: &Rat, e: &Rat) -> Option<Rat> {
    if base.is_zero() {
        return if e.is_positive() {
            Some(Rat::zero())
        } else {
            None
        };
    }
    let den = e.denom();
    let den_u32: u32 = den.to_string().parse().ok()?;
    let root = nth_root_rat(base, den_u32)?;
    let num = e.numer();
    let n_i64: i64 = num.to_string().parse().ok()?;
    Some(pow_int(&root, n_i64))
}

/// `base^n` for integer `n` (negative allowed; panics on 0^negative).
pub fn pow_int(base: &Rat, n: i64) -> Rat {
    if n == 0 {
        return Rat::one();
    }
    let p = num::pow::pow(base.clone(), n.unsigned_abs() as usize);
    if n > 0 {
        p
    } else {
        p.recip()
    }
}

/// Binomial-style falling product `q (q-1) ... (q-k+1) / k!` for rational q.
pub fn binom_rat(q: &Rat, k: u64) -> Rat {
    let mut acc = Rat::one();
    for i in 0..k {
        let factor = (q - rint(i as i64)) / rint((i + 1) as i64);
        acc *= factor;
    }
    acc
}

/// lcm of two positive i64.
pub fn lcm_i64(a: i64, b: i64) -> i64 {
    a / gcd_i64(a, b) * b
}

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literal_roundtrip() {
        for s in ["3/4", "-2", "0", "-11/60", "228"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(fmt_rat(&r), s);
        }
        assert_eq!(parse_rat("6/8").unwrap(), rat(3, 4));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("").is_err());
    }

    #[test]
    fn roots_and_powers() {
        assert_eq!(nth_root_rat(&rat(8, 27), 3), Some(rat(2, 3)));
        assert_eq!(nth_root_rat(&rat(-8, 27), 3), Some(rat(-2, 3)));
        assert_eq!(nth_root_rat(&rat(2, 1), 2), None);
        assert_eq!(pow_rat(&rat(4, 9), &rat(-1, 2)), Some(rat(3, 2)));
        assert_eq!(pow_int(&rat(2, 3), -2), rat(9, 4));
    }

    #[test]
    fn binomial_coefficients() {
        // (-1/4 choose 2) = (-1/4)(-5/4)/2 = 5/32
        assert_eq!(binom_rat(&rat(-1, 4), 2), rat(5, 32));
        assert_eq!(binom_rat(&rat(3, 1), 5), rat(0, 1));
    }
}
