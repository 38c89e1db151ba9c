//! Arithmetic, valuations, principal divisors and base-point Puiseux
//! expansions for elements f1(x) + xi f2(x) of the function field of a
//! Weierstrass curve, and for radical functions (products of Q-powers).
//!
//! Genus-0 functions are carried in the same type with no curve attached and
//! f2 = 0; their divisors live on P^1.

use crate::bipoly::BiPoly;
use crate::elliptic::{Branch, ClosedPoint, QDivisor, WeierstrassCurve};
use crate::error::{CoreError, Result};
use crate::poly::Poly;
use crate::rat::{nth_root_rat, rat, Rat};
use crate::ratfun::RatFun;
use crate::series::Series;
use num::{BigInt, One, Zero};
use std::collections::BTreeSet;
use std::fmt;

// ---------------------------------------------------------------------------
// CurveFunction
// ---------------------------------------------------------------------------

/// f1(x) + xi f2(x) on a Weierstrass curve, or a plain rational function of x
/// when no curve is attached.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveFunction {
    pub curve: Option<WeierstrassCurve>,
    pub f1: RatFun,
    pub f2: RatFun,
}

impl CurveFunction {
    pub fn rational(f: RatFun) -> Self {
        CurveFunction {
            curve: None,
            f1: f,
            f2: RatFun::zero(),
        }
    }

    pub fn from_parts(curve: &WeierstrassCurve, f1: RatFun, f2: RatFun) -> Self {
        CurveFunction {
            curve: Some(curve.clone()),
            f1,
            f2,
        }
    }

    pub fn constant(c: Rat) -> Self {
        CurveFunction::rational(RatFun::constant(c))
    }

    pub fn x(curve: Option<&WeierstrassCurve>) -> Self {
        CurveFunction {
            curve: curve.cloned(),
            f1: RatFun::z(),
            f2: RatFun::zero(),
        }
    }

    pub fn xi(curve: &WeierstrassCurve) -> Self {
        CurveFunction {
            curve: Some(curve.clone()),
            f1: RatFun::zero(),
            f2: RatFun::one(),
        }
    }

    /// Reduce a bivariate polynomial mod xi^2 = G(x). Without a curve the
    /// polynomial must not involve xi.
    pub fn from_bipoly(curve: Option<&WeierstrassCurve>, p: &BiPoly) -> Result<Self> {
        match curve {
            Some(e) => {
                let (f1, f2) = p.reduce_mod_curve(&e.cubic());
                Ok(CurveFunction::from_parts(
                    e,
                    RatFun::from_poly(f1),
                    RatFun::from_poly(f2),
                ))
            }
            None => {
                if p.xi_degree() > 0 {
                    return Err(CoreError::Parse(
                        "xi appears in a genus-0 function".into(),
                    ));
                }
                Ok(CurveFunction::rational(RatFun::from_poly(p.xi_coeff(0))))
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.f1.is_zero() && self.f2.is_zero()
    }

    fn same_curve(&self, other: &Self) -> Option<WeierstrassCurve> {
        match (&self.curve, &other.curve) {
            (Some(a), Some(b)) => {
                assert!(a == b, "functions on different curves");
                Some(a.clone())
            }
            (Some(a), None) => Some(a.clone()),
            (None, Some(b)) => Some(b.clone()),
            (None, None) => None,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        CurveFunction {
            curve: self.same_curve(other),
            f1: &self.f1 + &other.f1,
            f2: &self.f2 + &other.f2,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        CurveFunction {
            curve: self.curve.clone(),
            f1: -&self.f1,
            f2: -&self.f2,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let curve = self.same_curve(other);
        match &curve {
            Some(e) => {
                let g = RatFun::from_poly(e.cubic());
                // (f1 + xi f2)(g1 + xi g2) = f1 g1 + G f2 g2 + xi (f1 g2 + f2 g1)
                let f1 = &(&self.f1 * &other.f1) + &(&(&g * &self.f2) * &other.f2);
                let f2 = &(&self.f1 * &other.f2) + &(&self.f2 * &other.f1);
                CurveFunction { curve, f1, f2 }
            }
            None => CurveFunction {
                curve,
                f1: &self.f1 * &other.f1,
                f2: RatFun::zero(),
            },
        }
    }

    pub fn conjugate(&self) -> Self {
        CurveFunction {
            curve: self.curve.clone(),
            f1: self.f1.clone(),
            f2: -&self.f2,
        }
    }

    /// Field norm f1^2 - G f2^2 (just f1 for genus 0).
    pub fn norm(&self) -> RatFun {
        match &self.curve {
            Some(e) => {
                let g = RatFun::from_poly(e.cubic());
                &(&self.f1 * &self.f1) - &(&(&g * &self.f2) * &self.f2)
            }
            None => self.f1.clone(),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(CoreError::DivisionByZero);
        }
        match &self.curve {
            Some(_) => {
                let n = self.norm();
                if n.is_zero() {
                    return Err(CoreError::DivisionByZero);
                }
                let ninv = n.inv();
                Ok(CurveFunction {
                    curve: self.curve.clone(),
                    f1: &self.f1 * &ninv,
                    f2: &(-&self.f2) * &ninv,
                })
            }
            None => Ok(CurveFunction::rational(self.f1.inv())),
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow_i(&self, n: i64) -> Result<Self> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut acc = CurveFunction {
            curve: self.curve.clone(),
            f1: RatFun::one(),
            f2: RatFun::zero(),
        };
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// d/dx with xi' = G'(x)/(2 xi), i.e. xi (f2' + G' f2 / (2G)) + f1'.
    pub fn derivative(&self) -> Self {
        match &self.curve {
            None => CurveFunction::rational(self.f1.derivative()),
            Some(e) => {
                let g = RatFun::from_poly(e.cubic());
                let dg = RatFun::from_poly(e.cubic().derivative());
                let two = RatFun::constant(rat(2, 1));
                let f2_new = &self.f2.derivative() + &(&(&dg * &self.f2) / &(&two * &g));
                CurveFunction {
                    curve: self.curve.clone(),
                    f1: self.f1.derivative(),
                    f2: f2_new,
                }
            }
        }
    }

    /// Clear denominators: (A, B, C) with self = (A + xi B)/C.
    pub fn cleared(&self) -> (Poly, Poly, Poly) {
        let d1 = self.f1.den();
        let d2 = self.f2.den();
        let g = d1.gcd(d2);
        let c = &d1.div_exact(&g) * d2;
        let a = self.f1.num() * &c.div_exact(d1);
        let b = self.f2.num() * &c.div_exact(d2);
        (a, b, c)
    }

    pub fn eval_rational(&self, x: &Rat, xi: &Rat) -> Option<Rat> {
        let v1 = self.f1.eval(x)?;
        let v2 = self.f2.eval(x)?;
        Some(v1 + xi * v2)
    }
}

impl fmt::Display for CurveFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.f2.is_zero() {
            write!(f, "{}", self.f1)
        } else {
            write!(f, "({}) + xi*({})", self.f1, self.f2)
        }
    }
}

// ---------------------------------------------------------------------------
// p-adic helpers in Q[x]
// ---------------------------------------------------------------------------

/// Multiplicity of the irreducible p in h (h nonzero).
fn val_p(h: &Poly, p: &Poly) -> i64 {
    let mut v = 0;
    let mut rest = h.clone();
    loop {
        let (q, r) = rest.divrem(p);
        if r.is_zero() {
            v += 1;
            rest = q;
            if rest.is_zero() {
                break;
            }
        } else {
            break;
        }
    }
    v
}

/// Inverse of u modulo m (coprime), by the extended Euclidean algorithm.
fn poly_invmod(u: &Poly, m: &Poly) -> Poly {
    let (mut r0, mut r1) = (m.clone(), u.rem(m));
    let (mut t0, mut t1) = (Poly::zero(), Poly::one());
    while !r1.is_zero() {
        let (q, r) = r0.divrem(&r1);
        let t = &t0 - &(&q * &t1);
        r0 = r1;
        r1 = r;
        t0 = t1;
        t1 = t;
    }
    // r0 = gcd (a nonzero constant)
    assert!(
        r0.degree() == Some(0),
        "not invertible modulo the given polynomial"
    );
    t0.scale(&r0.coeff(0).recip()).rem(m)
}

/// Newton lift of q0 with q0^2 = g mod p to q with q^2 = g mod p^k.
fn hensel_sqrt(g: &Poly, p: &Poly, q0: &Poly, k: i64) -> Poly {
    let mut q = q0.clone();
    let mut prec = 1i64;
    let half = rat(1, 2);
    while prec < k {
        prec = (2 * prec).min(k);
        let modulus = p.pow(prec as usize);
        let qinv = poly_invmod(&q, &modulus);
        // q <- (q + g q^{-1})/2
        q = (&(&q + &(&g.rem(&modulus) * &qinv).rem(&modulus)).scale(&half)).rem(&modulus);
    }
    q
}

// ---------------------------------------------------------------------------
// Valuations and principal divisors (elliptic)
// ---------------------------------------------------------------------------

/// Divisor on P^1 with rational coefficients, for genus-0 radical functions.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct P1Divisor {
    pub coeffs: std::collections::BTreeMap<P1Point, Rat>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum P1Point {
    Finite(Poly),
    Infinity,
}

impl P1Point {
    pub fn degree(&self) -> i64 {
        match self {
            P1Point::Infinity => 1,
            P1Point::Finite(p) => p.deg_i(),
        }
    }
}

impl P1Divisor {
    pub fn insert(&mut self, p: P1Point, c: Rat) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(p.clone()).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&p);
        }
    }

    pub fn add(&self, other: &P1Divisor) -> P1Divisor {
        let mut out = self.clone();
        for (p, c) in &other.coeffs {
            out.insert(p.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Rat) -> P1Divisor {
        let mut out = P1Divisor::default();
        for (p, c) in &self.coeffs {
            out.insert(p.clone(), c * s);
        }
        out
    }

    pub fn degree(&self) -> Rat {
        let mut acc = Rat::zero();
        for (p, c) in &self.coeffs {
            acc += c * Rat::from(BigInt::from(p.degree()));
        }
        acc
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(crate::rat::is_integer)
    }
}

/// Divisor of a rational function on P^1.
pub fn p1_divisor(f: &RatFun) -> P1Divisor {
    assert!(!f.is_zero(), "divisor of the zero function");
    let mut out = P1Divisor::default();
    for (p, m) in f.num().factor() {
        out.insert(P1Point::Finite(p), Rat::from(BigInt::from(m as i64)));
    }
    for (p, m) in f.den().factor() {
        out.insert(P1Point::Finite(p), -Rat::from(BigInt::from(m as i64)));
    }
    out.insert(
        P1Point::Infinity,
        Rat::from(BigInt::from(f.den().deg_i() - f.num().deg_i())),
    );
    out
}

/// Valuation of a nonzero curve function at a closed point.
pub fn valuation_at(f: &CurveFunction, point: &ClosedPoint) -> Result<i64> {
    if f.is_zero() {
        return Err(CoreError::Other("valuation of the zero function".into()));
    }
    let curve = f
        .curve
        .clone()
        .ok_or_else(|| CoreError::Other("valuation_at needs a curve".into()))?;
    let (a, b, c) = f.cleared();
    let g = curve.cubic();
    let ord = match point {
        ClosedPoint::Infinity => ord_at_infinity(&a, &b, &c),
        ClosedPoint::Rational(x0, xi0) => {
            let p = Poly::from_coeffs(vec![-x0.clone(), Rat::one()]);
            if xi0.is_zero() && g.eval(x0).is_zero() {
                ramified_ord(&a, &b, &c, &p)
            } else {
                let q0 = Poly::constant(xi0.clone());
                split_ord(&a, &b, &c, &g, &p, &q0)
            }
        }
        ClosedPoint::Component { p, branch } => match branch {
            Branch::Ramified => ramified_ord(&a, &b, &c, p),
            Branch::Split(q) => split_ord(&a, &b, &c, &g, p, q),
            Branch::Fiber => {
                // balanced only: half the norm valuation minus the pole part
                let n = &(&a * &a) - &(&g * &(&b * &b));
                let vn = val_p(&n, p);
                let vc = val_p(&c, p);
                if vn % 2 != 0 {
                    return Err(CoreError::UnsupportedSupport);
                }
                vn / 2 - vc
            }
        },
    };
    Ok(ord)
}

fn ord_at_infinity(a: &Poly, b: &Poly, c: &Poly) -> i64 {
    let num_ord = match (a.is_zero(), b.is_zero()) {
        (true, true) => unreachable!("zero function"),
        (false, true) => -2 * a.deg_i(),
        (true, false) => -3 - 2 * b.deg_i(),
        (false, false) => (-2 * a.deg_i()).min(-3 - 2 * b.deg_i()),
    };
    num_ord + 2 * c.deg_i()
}

fn ramified_ord(a: &Poly, b: &Poly, c: &Poly, p: &Poly) -> i64 {
    let va = if a.is_zero() {
        i64::MAX / 4
    } else {
        2 * val_p(a, p)
    };
    let vb = if b.is_zero() {
        i64::MAX / 4
    } else {
        1 + 2 * val_p(b, p)
    };
    va.min(vb) - 2 * val_p(c, p)
}

fn split_ord(a: &Poly, b: &Poly, c: &Poly, g: &Poly, p: &Poly, q0: &Poly) -> i64 {
    let vc = val_p(c, p);
    if a.is_zero() && b.is_zero() {
        unreachable!("zero function");
    }
    // strip the common p-power of (A, B)
    let va = if a.is_zero() { i64::MAX / 4 } else { val_p(a, p) };
    let vb = if b.is_zero() { i64::MAX / 4 } else { val_p(b, p) };
    let vmin = va.min(vb);
    let (ar, br) = (
        if a.is_zero() {
            Poly::zero()
        } else {
            a.div_exact(&p.pow(vmin as usize))
        },
        if b.is_zero() {
            Poly::zero()
        } else {
            b.div_exact(&p.pow(vmin as usize))
        },
    );
    let n = &(&ar * &ar) - &(g * &(&br * &br));
    let vn = if n.is_zero() { 0 } else { val_p(&n, p) };
    if vn == 0 {
        return vmin - vc;
    }
    // Hensel-lift the branch and measure divisibility of A + qK B
    let k = vn + 1;
    let qk = hensel_sqrt(g, p, q0, k);
    let modulus = p.pow(k as usize);
    let h = (&ar + &(&qk * &br)).rem(&modulus);
    let aplus = if h.is_zero() { vn } else { val_p(&h, p).min(vn) };
    vmin + aplus - vc
}

/// Principal divisor of a nonzero function on an elliptic curve. The support
/// is discovered by factoring the norm and the cleared denominator; linear
/// factors with rational branches become rational points.
pub fn principal_divisor(f: &CurveFunction) -> Result<QDivisor> {
    if f.is_zero() {
        return Err(CoreError::Other("divisor of the zero function".into()));
    }
    let curve = f
        .curve
        .clone()
        .ok_or_else(|| CoreError::Other("principal_divisor needs a curve; use p1_divisor".into()))?;
    let g = curve.cubic();
    let (a, b, c) = f.cleared();
    let n = &(&a * &a) - &(&g * &(&b * &b));
    assert!(!n.is_zero(), "norm vanishes: function is xi times rational?");

    let mut support: BTreeSet<Poly> = BTreeSet::new();
    for (p, _) in n.factor() {
        support.insert(p);
    }
    for (p, _) in c.factor() {
        support.insert(p);
    }

    let mut div = QDivisor::zero();
    div.insert(
        ClosedPoint::Infinity,
        Rat::from(BigInt::from(ord_at_infinity(&a, &b, &c))),
    );

    for p in support {
        let vc = val_p(&c, &p);
        if g.rem(&p).is_zero() {
            // ramified closed point
            let ord = ramified_ord(&a, &b, &c, &p);
            let key = if p.degree() == Some(1) {
                ClosedPoint::Rational(-p.coeff(0), Rat::zero())
            } else {
                ClosedPoint::Component {
                    p: p.clone(),
                    branch: Branch::Ramified,
                }
            };
            div.insert(key, Rat::from(BigInt::from(ord)));
            continue;
        }
        // unramified
        let va = if a.is_zero() { i64::MAX / 4 } else { val_p(&a, &p) };
        let vb = if b.is_zero() { i64::MAX / 4 } else { val_p(&b, &p) };
        let vmin = va.min(vb);
        let ar = if a.is_zero() {
            Poly::zero()
        } else {
            a.div_exact(&p.pow(vmin as usize))
        };
        let br = if b.is_zero() {
            Poly::zero()
        } else {
            b.div_exact(&p.pow(vmin as usize))
        };
        let nr = &(&ar * &ar) - &(&g * &(&br * &br));
        let vn = val_p(&nr, &p);
        if vn == 0 {
            // balanced: both branches carry vmin - vc
            let bal = vmin - vc;
            if bal == 0 {
                continue;
            }
            insert_balanced(&mut div, &g, &p, bal)?;
            continue;
        }
        // q0 = -A/B mod p is the vanishing branch
        let binv = poly_invmod(&br, &p);
        let q0 = (&(-&ar) * &binv).rem(&p);
        let k = vn + 1;
        let qk = hensel_sqrt(&g, &p, &q0, k);
        let modulus = p.pow(k as usize);
        let h = (&ar + &(&qk * &br)).rem(&modulus);
        let aplus = if h.is_zero() { vn } else { val_p(&h, &p).min(vn) };
        let aminus = vn - aplus;
        let ord_plus = vmin + aplus - vc;
        let ord_minus = vmin + aminus - vc;
        let (key_plus, key_minus) = branch_keys(&p, &q0)?;
        div.insert(key_plus, Rat::from(BigInt::from(ord_plus)));
        div.insert(key_minus, Rat::from(BigInt::from(ord_minus)));
    }
    debug_assert!(div.degree().is_zero(), "principal divisor has degree != 0");
    Ok(div)
}

fn branch_keys(p: &Poly, q0: &Poly) -> Result<(ClosedPoint, ClosedPoint)> {
    if p.degree() == Some(1) {
        let x0 = -p.coeff(0);
        let y0 = q0.eval(&x0);
        Ok((
            ClosedPoint::Rational(x0.clone(), y0.clone()),
            ClosedPoint::Rational(x0, -y0),
        ))
    } else {
        let qneg = (&Poly::zero() - q0).rem(p);
        Ok((
            ClosedPoint::Component {
                p: p.clone(),
                branch: Branch::Split(q0.clone()),
            },
            ClosedPoint::Component {
                p: p.clone(),
                branch: Branch::Split(qneg),
            },
        ))
    }
}

fn insert_balanced(div: &mut QDivisor, g: &Poly, p: &Poly, ord: i64) -> Result<()> {
    if p.degree() == Some(1) {
        let x0 = -p.coeff(0);
        let g0 = g.eval(&x0);
        if let Some(r) = nth_root_rat(&g0, 2) {
            div.insert(
                ClosedPoint::Rational(x0.clone(), r.clone()),
                Rat::from(BigInt::from(ord)),
            );
            div.insert(
                ClosedPoint::Rational(x0, -r),
                Rat::from(BigInt::from(ord)),
            );
            return Ok(());
        }
    }
    div.insert(
        ClosedPoint::Component {
            p: p.clone(),
            branch: Branch::Fiber,
        },
        Rat::from(BigInt::from(ord)),
    );
    Ok(())
}

// ---------------------------------------------------------------------------
// Radical functions
// ---------------------------------------------------------------------------

/// A formal product constant * prod f_i^(e_i) with rational exponents.
#[derive(Clone, Debug)]
pub struct RadicalFunction {
    pub curve: Option<WeierstrassCurve>,
    pub constant: Rat,
    pub factors: Vec<(CurveFunction, Rat)>,
}

impl RadicalFunction {
    pub fn one(curve: Option<&WeierstrassCurve>) -> Self {
        RadicalFunction {
            curve: curve.cloned(),
            constant: Rat::one(),
            factors: Vec::new(),
        }
    }

    pub fn push(&mut self, f: CurveFunction, e: Rat) {
        if e.is_zero() {
            return;
        }
        self.factors.push((f, e));
    }

    /// The exponent-weighted divisor on the curve.
    pub fn divisor(&self) -> Result<QDivisor> {
        let mut out = QDivisor::zero();
        for (f, e) in &self.factors {
            out = out.add(&principal_divisor(f)?.scale(e));
        }
        Ok(out)
    }

    /// The exponent-weighted divisor on P^1 (genus-0 only).
    pub fn p1_divisor(&self) -> Result<P1Divisor> {
        let mut out = P1Divisor::default();
        for (f, e) in &self.factors {
            if f.curve.is_some() {
                return Err(CoreError::Other("p1_divisor on an elliptic radical".into()));
            }
            out = out.add(&p1_divisor(&f.f1).scale(e));
        }
        Ok(out)
    }

    /// Formal product of the factors as a curve function, when all exponents
    /// are integers.
    pub fn as_curve_function(&self) -> Result<CurveFunction> {
        let mut acc = CurveFunction {
            curve: self.curve.clone(),
            f1: RatFun::constant(self.constant.clone()),
            f2: RatFun::zero(),
        };
        for (f, e) in &self.factors {
            let n = crate::rat::to_i64(e)
                .ok_or_else(|| CoreError::Other("non-integer exponent".into()))?;
            acc = acc.mul(&f.pow_i(n)?);
        }
        Ok(acc)
    }
}

// ---------------------------------------------------------------------------
// Base-point expansion
// ---------------------------------------------------------------------------

/// Which square root of G/x the expansion substitutes for xi/t.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum XiBranch {
    Plus,
    Minus,
}

/// Series expansion of a curve function at the base point (0,0) in t with
/// t^2 = x (t = x for genus 0), known through grid exponent >= prec_units.
pub fn expand_at_base(
    f: &CurveFunction,
    prec_units: i64,
    branch: XiBranch,
) -> Result<Series> {
    match &f.curve {
        None => {
            // t = x
            let pad = prec_units + 8;
            let num = Series::from_poly(f.f1.num()).truncate(pad);
            let den = Series::from_poly(f.f1.den()).truncate(pad);
            num.div(&den)
        }
        Some(e) => {
            let g = e.cubic();
            if !g.coeff(0).is_zero() {
                return Err(CoreError::Other(
                    "base point (0,0) does not lie on the curve".into(),
                ));
            }
            let unit = Poly::from_coeffs(vec![g.coeff(1), g.coeff(2), g.coeff(3)]);
            // margin for pole orders at the base point
            let pad = prec_units + 16;
            // xi = s t sqrt(unit(t^2)), s the branch sign
            let unit_t = Series::from_poly(&unit.inflate(2)).truncate(pad);
            let root = unit_t.pow(&rat(1, 2))?;
            let sign = match branch {
                XiBranch::Plus => Rat::one(),
                XiBranch::Minus => -Rat::one(),
            };
            let xi_series = root
                .mul(&Series::monomial(sign, 1, 1))
                .truncate(pad);
            let sub = |r: &RatFun| -> Result<Series> {
                let num = Series::from_poly(&r.num().inflate(2)).truncate(pad);
                let den = Series::from_poly(&r.den().inflate(2)).truncate(pad);
                num.div(&den)
            };
            let s1 = sub(&f.f1)?;
            let s2 = sub(&f.f2)?;
            Ok(s1.add(&xi_series.mul(&s2)))
        }
    }
}

/// Monomial-times-unit expansion of a radical function at the base point:
/// constant * t^t_exp * unit(t) with unit(0) = 1-leading.
#[derive(Clone, Debug)]
pub struct RadicalExpansion {
    pub t_exp: Rat,
    pub unit: Series,
}

impl RadicalExpansion {
    /// Collapse to a plain Puiseux series when the monomial exponent fits a
    /// modest ramification grid.
    pub fn as_series(&self) -> Result<Series> {
        let den: i64 = self
            .t_exp
            .denom()
            .to_string()
            .parse()
            .map_err(|_| CoreError::Other("exponent denominator too large".into()))?;
        let num: i64 = self
            .t_exp
            .numer()
            .to_string()
            .parse()
            .map_err(|_| CoreError::Other("exponent numerator too large".into()))?;
        Ok(self.unit.mul(&Series::monomial(Rat::one(), num, den)))
    }
}

/// Expand a radical function at the base point on the chosen branch.
pub fn expand_radical_at_base(
    r: &RadicalFunction,
    prec_units: i64,
    branch: XiBranch,
) -> Result<RadicalExpansion> {
    let mut t_exp = Rat::zero();
    let mut unit = Series::constant(r.constant.clone()).truncate(prec_units + 2);
    for (f, e) in &r.factors {
        if f.is_zero() {
            return Err(CoreError::DivisionByZero);
        }
        // widen the window until the factor's valuation is visible
        let mut pad = prec_units + 4;
        let s = loop {
            let s = expand_at_base(f, pad, branch)?;
            if s.valuation().is_some() {
                break s;
            }
            pad *= 2;
            if pad > 1 << 14 {
                return Err(CoreError::Other(
                    "radical factor vanishes to unknown order".into(),
                ));
            }
        };
        let v = s.valuation().unwrap();
        let ram = s.ram();
        t_exp += e * Rat::new(BigInt::from(v), BigInt::from(ram));
        // shift to a unit and raise to the rational power
        let unit_part = s
            .mul(&Series::monomial(Rat::one(), -v, ram))
            .truncate(prec_units + 2);
        let powered = unit_part.pow(e)?;
        unit = unit.mul(&powered).truncate(prec_units + 2);
    }
    Ok(RadicalExpansion {
        t_exp,
        unit: unit.truncate(prec_units + 1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elliptic::is_principal;
    use crate::rat::rint;

    fn e3() -> WeierstrassCurve {
        WeierstrassCurve::by_key("E3").unwrap()
    }

    fn bp(curve: Option<&WeierstrassCurve>, s: &str) -> CurveFunction {
        CurveFunction::from_bipoly(curve, &crate::bipoly::parse_bipoly(s).unwrap()).unwrap()
    }

    #[test]
    fn field_arithmetic() {
        let e = e3();
        let xi = CurveFunction::xi(&e);
        let sq = xi.mul(&xi);
        assert_eq!(sq.f1, RatFun::from_poly(e.cubic()));
        assert!(sq.f2.is_zero());
        let f = bp(Some(&e), "1 + xi");
        let finv = f.inv().unwrap();
        let one = f.mul(&finv);
        assert_eq!(one.f1, RatFun::one());
        assert!(one.f2.is_zero());
    }

    #[test]
    fn valuations_on_e3() {
        let e = e3();
        let xi = CurveFunction::xi(&e);
        let origin = ClosedPoint::Rational(Rat::zero(), Rat::zero());
        assert_eq!(valuation_at(&xi, &origin).unwrap(), 1);
        let x = CurveFunction::x(Some(&e));
        assert_eq!(valuation_at(&x, &ClosedPoint::Infinity).unwrap(), -2);
        assert_eq!(valuation_at(&xi, &ClosedPoint::Infinity).unwrap(), -3);
        let f = bp(Some(&e), "1 + 9*x");
        let m = ClosedPoint::Rational(rat(-1, 9), rat(-5, 9));
        assert_eq!(valuation_at(&f, &m).unwrap(), 1);
        assert_eq!(valuation_at(&x, &origin).unwrap(), 2);
    }

    #[test]
    fn divisor_of_xi_and_polynomials_on_e3() {
        let e = e3();
        let d = principal_divisor(&CurveFunction::xi(&e)).unwrap();
        assert_eq!(d.degree(), Rat::zero());
        assert_eq!(
            d.coeff(&ClosedPoint::Rational(Rat::zero(), Rat::zero())),
            rint(1)
        );
        assert_eq!(d.coeff(&ClosedPoint::Infinity), rint(-3));
        // the 2-torsion pair over Q(sqrt5)
        let pair = ClosedPoint::Component {
            p: Poly::from_coeffs(vec![rat(-1, 9), rat(-11, 3), rint(1)]),
            branch: Branch::Ramified,
        };
        assert_eq!(d.coeff(&pair), rint(1));
        assert!(is_principal(&e, &d).is_principal());

        // div(1 - 9 xi + 54 x) = 3 (-1/9, -5/9) - 3 O
        let f = bp(Some(&e), "1 - 9*xi + 54*x");
        let d = principal_divisor(&f).unwrap();
        assert_eq!(
            d.coeff(&ClosedPoint::Rational(rat(-1, 9), rat(-5, 9))),
            rint(3)
        );
        assert_eq!(d.coeff(&ClosedPoint::Infinity), rint(-3));
        assert_eq!(d.support_len(), 2);
    }

    #[test]
    fn divisor_with_quartic_component_on_e3() {
        // div(1+21xi-117x+9x*xi-234x^2) = R1+R2+R3+R4 + (-1/9,-5/9) - 5O
        let e = e3();
        let f = bp(Some(&e), "1 + 21*xi - 117*x + 9*x*xi - 234*x^2");
        let d = principal_divisor(&f).unwrap();
        assert_eq!(d.coeff(&ClosedPoint::Infinity), rint(-5));
        assert_eq!(
            d.coeff(&ClosedPoint::Rational(rat(-1, 9), rat(-5, 9))),
            rint(1)
        );
        // quartic 81x^4+6156x^3+4446x^2-684x+1, xi = (27x^3+1989x^2+741x-7)/150
        let p = Poly::from_i64(&[1, -684, 4446, 6156, 81]).monic();
        let q = Poly::from_coeffs(vec![
            rat(-7, 150),
            rat(741, 150),
            rat(1989, 150),
            rat(27, 150),
        ])
        .rem(&p);
        let r = ClosedPoint::Component {
            p,
            branch: Branch::Split(q),
        };
        assert_eq!(d.coeff(&r), rint(1), "divisor was {d}");
        assert_eq!(d.degree(), Rat::zero());
        assert!(is_principal(&e, &d).is_principal());
    }

    #[test]
    fn multiplicativity_and_expansion() {
        let e = e3();
        let f = bp(Some(&e), "1 - 9*xi + 54*x");
        let g = bp(Some(&e), "1 + 9*x");
        let dfg = principal_divisor(&f.mul(&g)).unwrap();
        let sum = principal_divisor(&f)
            .unwrap()
            .add(&principal_divisor(&g).unwrap());
        assert_eq!(dfg, sum);

        // xi on E3 expands as t + (33/2) t^3 + ...
        let s = expand_at_base(&CurveFunction::xi(&e), 8, XiBranch::Plus).unwrap();
        assert_eq!(s.coeff_idx(1), rint(1));
        assert_eq!(s.coeff_idx(3), rat(33, 2));
        // x -> t^2
        let s = expand_at_base(&CurveFunction::x(Some(&e)), 8, XiBranch::Plus).unwrap();
        assert_eq!(s.valuation(), Some(2));
        // genus 0: (1+2x)^(-1/2) = 1 - x + 3/2 x^2 - ...
        let mut r = RadicalFunction::one(None);
        r.push(bp(None, "1 + 2*x"), rat(-1, 2));
        let ex = expand_radical_at_base(&r, 8, XiBranch::Plus).unwrap();
        assert!(ex.t_exp.is_zero());
        assert_eq!(ex.unit.coeff_idx(0), rint(1));
        assert_eq!(ex.unit.coeff_idx(1), rint(-1));
        assert_eq!(ex.unit.coeff_idx(2), rat(3, 2));
        // expansion of f times expansion of 1/f is 1
        let finv = f.inv().unwrap();
        let a = expand_at_base(&f, 10, XiBranch::Plus).unwrap();
        let b = expand_at_base(&finv, 10, XiBranch::Plus).unwrap();
        assert!(a.mul(&b).first_mismatch(&Series::one()).is_none());
    }

    #[test]
    fn e5_genus0_style_radical_with_fractional_monomials() {
        // x^(1/15) on E5 contributes t^(2/15)
        let e5 = WeierstrassCurve::by_key("E5").unwrap();
        let mut r = RadicalFunction::one(Some(&e5));
        r.push(CurveFunction::x(Some(&e5)), rat(1, 15));
        let ex = expand_radical_at_base(&r, 10, XiBranch::Plus).unwrap();
        assert_eq!(ex.t_exp, rat(2, 15));
    }
}
