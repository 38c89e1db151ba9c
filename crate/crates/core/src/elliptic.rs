//! Weierstrass curves xi^2 = G(x) over Q, the chord-and-tangent group law,
//! torsion detection, Q-divisors on closed points, and the principality
//! criteria for divisors of radical functions.
//!
//! Closed points are Galois orbits: a rational affine point, the point at
//! infinity, or a component cut out by an irreducible p(x) together with a
//! branch (xi = q(x) mod p for split components, xi = 0 for ramified ones).

use crate::error::{CoreError, Result};
use crate::poly::Poly;
use crate::quad::Quad;
use crate::rat::{fmt_rat, is_integer, rat, Rat};
use num::{BigInt, One, Zero};
use std::collections::BTreeMap;
use std::fmt;

// ---------------------------------------------------------------------------
// Curves and points
// ---------------------------------------------------------------------------

/// xi^2 = c3 x^3 + c2 x^2 + c1 x + c0 with nonzero cubic discriminant.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct WeierstrassCurve {
    pub label: String,
    pub c3: Rat,
    pub c2: Rat,
    pub c1: Rat,
    pub c0: Rat,
}

impl WeierstrassCurve {
    pub fn new(label: &str, c3: Rat, c2: Rat, c1: Rat, c0: Rat) -> Self {
        assert!(!c3.is_zero(), "cubic leading coefficient must be nonzero");
        let curve = WeierstrassCurve {
            label: label.to_string(),
            c3,
            c2,
            c1,
            c0,
        };
        assert!(
            !curve.discriminant().is_zero(),
            "singular cubic for {label}"
        );
        curve
    }

    /// The four Darboux curves, by registry key "E3".."E6".
    pub fn by_key(key: &str) -> Result<WeierstrassCurve> {
        let coeffs: [i64; 3] = match key {
            "E3" => [-9, 33, 1],  // xi^2 = x (1 + 33x - 9x^2)
            "E4" => [-5, 5, 1],   // xi^2 = x (1 + 5x - 5x^2)
            "E5" => [16, 17, 1],  // xi^2 = x (1 + x)(1 + 16x)
            "E6" => [-1, 1, 1],   // xi^2 = x (1 + x - x^2)
            other => return Err(CoreError::UnknownKey(other.to_string())),
        };
        Ok(WeierstrassCurve::new(
            key,
            rat(coeffs[0], 1),
            rat(coeffs[1], 1),
            rat(coeffs[2], 1),
            Rat::zero(),
        ))
    }

    pub fn cubic(&self) -> Poly {
        Poly::from_coeffs(vec![
            self.c0.clone(),
            self.c1.clone(),
            self.c2.clone(),
            self.c3.clone(),
        ])
    }

    pub fn discriminant(&self) -> Rat {
        let (a, b, c, d) = (&self.c3, &self.c2, &self.c1, &self.c0);
        rat(18, 1) * a * b * c * d - rat(4, 1) * b * b * b * d + b * b * c * c
            - rat(4, 1) * a * c * c * c
            - rat(27, 1) * a * a * d * d
    }
}

impl fmt::Display for WeierstrassCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: xi^2 = {}", self.label, self.cubic())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CurvePoint {
    Infinity,
    Affine(Rat, Rat),
}

impl CurvePoint {
    pub fn affine(x: Rat, xi: Rat) -> Self {
        CurvePoint::Affine(x, xi)
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvePoint::Infinity => write!(f, "O"),
            CurvePoint::Affine(x, xi) => write!(f, "({}, {})", fmt_rat(x), fmt_rat(xi)),
        }
    }
}

pub fn on_curve(curve: &WeierstrassCurve, p: &CurvePoint) -> bool {
    match p {
        CurvePoint::Infinity => true,
        CurvePoint::Affine(x, xi) => xi * xi == curve.cubic().eval(x),
    }
}

/// Same check for a point with coordinates in Q(sqrt(d)).
pub fn on_curve_quad(curve: &WeierstrassCurve, x: &Quad, xi: &Quad) -> bool {
    match xi.mul(xi) {
        Ok(sq) => sq.sub(&curve.cubic().eval_quad(x)).map_or(false, |d| d.is_zero()),
        Err(_) => false,
    }
}

pub fn negate(p: &CurvePoint) -> CurvePoint {
    match p {
        CurvePoint::Infinity => CurvePoint::Infinity,
        CurvePoint::Affine(x, xi) => CurvePoint::Affine(x.clone(), -xi.clone()),
    }
}

/// Chord-and-tangent addition. Both points must lie on the curve.
pub fn add(curve: &WeierstrassCurve, p: &CurvePoint, q: &CurvePoint) -> CurvePoint {
    debug_assert!(on_curve(curve, p) && on_curve(curve, q));
    let (x1, y1, x2, y2) = match (p, q) {
        (CurvePoint::Infinity, _) => return q.clone(),
        (_, CurvePoint::Infinity) => return p.clone(),
        (CurvePoint::Affine(x1, y1), CurvePoint::Affine(x2, y2)) => (x1, y1, x2, y2),
    };
    let lambda = if x1 == x2 {
        if (y1.clone() + y2).is_zero() {
            return CurvePoint::Infinity;
        }
        // tangent: G'(x)/(2 xi)
        curve.cubic().derivative().eval(x1) / (rat(2, 1) * y1)
    } else {
        (y2 - y1) / (x2 - x1)
    };
    let x3 = (&lambda * &lambda - &curve.c2) / &curve.c3 - x1 - x2;
    let y3 = y1 + &lambda * (&x3 - x1);
    CurvePoint::Affine(x3, -y3)
}

/// n P by double-and-add (n may be negative).
pub fn mul(curve: &WeierstrassCurve, n: i64, p: &CurvePoint) -> CurvePoint {
    let base = if n < 0 { negate(p) } else { p.clone() };
    let mut acc = CurvePoint::Infinity;
    let mut addend = base;
    let mut k = n.unsigned_abs();
    while k > 0 {
        if k & 1 == 1 {
            acc = add(curve, &acc, &addend);
        }
        k >>= 1;
        if k > 0 {
            addend = add(curve, &addend, &addend);
        }
    }
    acc
}

/// Least n <= bound with n P = O, or None.
pub fn order_of(curve: &WeierstrassCurve, p: &CurvePoint, bound: u32) -> Option<u32> {
    debug_assert!(on_curve(curve, p));
    let mut acc = p.clone();
    for n in 1..=bound {
        if acc.is_infinity() {
            return Some(n);
        }
        acc = add(curve, &acc, p);
    }
    None
}

// ---------------------------------------------------------------------------
// Closed points and Q-divisors
// ---------------------------------------------------------------------------

/// Branch data of a component: which sheet of xi^2 = G it lives on.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Branch {
    /// p divides G: the 2-torsion locus xi = 0.
    Ramified,
    /// xi = q(x) mod p with q^2 = G mod p, q nonzero.
    Split(Poly),
    /// the balanced full fiber over p (both sheets together); used for
    /// conjugate pairs whose xi-coordinate lives in a quadratic extension,
    /// and for balanced pole pairs.
    Fiber,
}

/// A Galois-stable closed point.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ClosedPoint {
    Infinity,
    Rational(Rat, Rat),
    Component { p: Poly, branch: Branch },
}

impl ClosedPoint {
    pub fn from_point(p: &CurvePoint) -> Self {
        match p {
            CurvePoint::Infinity => ClosedPoint::Infinity,
            CurvePoint::Affine(x, xi) => ClosedPoint::Rational(x.clone(), xi.clone()),
        }
    }

    /// Residue degree of the closed point.
    pub fn degree(&self) -> i64 {
        match self {
            ClosedPoint::Infinity | ClosedPoint::Rational(..) => 1,
            ClosedPoint::Component { p, branch } => match branch {
                Branch::Fiber => 2 * p.deg_i(),
                _ => p.deg_i(),
            },
        }
    }

    pub fn conjugate(&self) -> ClosedPoint {
        match self {
            ClosedPoint::Rational(x, xi) => ClosedPoint::Rational(x.clone(), -xi.clone()),
            ClosedPoint::Component { p, branch } => ClosedPoint::Component {
                p: p.clone(),
                branch: match branch {
                    Branch::Split(q) => Branch::Split(&Poly::zero() - q),
                    other => other.clone(),
                },
            },
            ClosedPoint::Infinity => ClosedPoint::Infinity,
        }
    }
}

impl fmt::Display for ClosedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClosedPoint::Infinity => write!(f, "O"),
            ClosedPoint::Rational(x, xi) => write!(f, "({}, {})", fmt_rat(x), fmt_rat(xi)),
            ClosedPoint::Component { p, branch } => match branch {
                Branch::Ramified => write!(f, "[{} = 0, xi = 0]", p),
                Branch::Split(q) => write!(f, "[{} = 0, xi = {}]", p, q),
                Branch::Fiber => write!(f, "[{} = 0, both sheets]", p),
            },
        }
    }
}

/// A finitely supported divisor with rational coefficients on closed points.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct QDivisor {
    coeffs: BTreeMap<ClosedPoint, Rat>,
}

impl QDivisor {
    pub fn zero() -> Self {
        QDivisor::default()
    }

    pub fn single(p: ClosedPoint, c: Rat) -> Self {
        let mut d = QDivisor::zero();
        d.insert(p, c);
        d
    }

    pub fn insert(&mut self, p: ClosedPoint, c: Rat) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(p.clone()).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&p);
        }
        // canonical form: the conjugate-balanced part of a split component
        // pair lives in the Fiber key, and only the lexicographically
        // smaller branch polynomial is ever stored
        if let ClosedPoint::Component {
            p: poly,
            branch: Branch::Split(q),
        } = &p
        {
            let qn = &Poly::zero() - q;
            let (qc, qo) = if *q <= qn {
                (q.clone(), qn)
            } else {
                (qn, q.clone())
            };
            let key_c = ClosedPoint::Component {
                p: poly.clone(),
                branch: Branch::Split(qc),
            };
            let key_o = ClosedPoint::Component {
                p: poly.clone(),
                branch: Branch::Split(qo),
            };
            let co = self.coeffs.remove(&key_o).unwrap_or_else(Rat::zero);
            if !co.is_zero() {
                let cc = self.coeffs.remove(&key_c).unwrap_or_else(Rat::zero);
                let fiber = ClosedPoint::Component {
                    p: poly.clone(),
                    branch: Branch::Fiber,
                };
                let excess = &cc - &co;
                if !excess.is_zero() {
                    self.coeffs.insert(key_c, excess);
                }
                let e = self.coeffs.entry(fiber.clone()).or_insert_with(Rat::zero);
                *e += co;
                if e.is_zero() {
                    self.coeffs.remove(&fiber);
                }
            }
        }
    }

    pub fn add(&self, other: &QDivisor) -> QDivisor {
        let mut out = self.clone();
        for (p, c) in &other.coeffs {
            out.insert(p.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> QDivisor {
        QDivisor {
            coeffs: self
                .coeffs
                .iter()
                .map(|(p, c)| (p.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &QDivisor) -> QDivisor {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Rat) -> QDivisor {
        if s.is_zero() {
            return QDivisor::zero();
        }
        QDivisor {
            coeffs: self
                .coeffs
                .iter()
                .map(|(p, c)| (p.clone(), c * s))
                .collect(),
        }
    }

    pub fn coeff(&self, p: &ClosedPoint) -> Rat {
        self.coeffs.get(p).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ClosedPoint, &Rat)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    /// Degree: sum of coefficients weighted by residue degrees.
    pub fn degree(&self) -> Rat {
        let mut acc = Rat::zero();
        for (p, c) in &self.coeffs {
            acc += c * Rat::from(BigInt::from(p.degree()));
        }
        acc
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(is_integer)
    }

    /// lcm of the coefficient denominators.
    pub fn clearing_multiple(&self) -> BigInt {
        let mut m = BigInt::one();
        for c in self.coeffs.values() {
            m = num::Integer::lcm(&m, c.denom());
        }
        m
    }

    /// The fractional part of each coefficient (coefficient mod 1, in [0,1)).
    pub fn fractional_part(&self) -> QDivisor {
        let mut out = QDivisor::zero();
        for (p, c) in &self.coeffs {
            let fr = c - c.floor();
            out.insert(p.clone(), fr);
        }
        out
    }

    /// Per-branch view of the canonical form: where a component carries both
    /// a Fiber part and a Split part, the Fiber coefficient is pushed back
    /// onto the two branches. Genuine fibers (no split mate) stay whole.
    pub fn branch_spread(&self) -> Vec<(ClosedPoint, Rat)> {
        use std::collections::BTreeMap;
        let mut fibers: BTreeMap<Poly, Rat> = BTreeMap::new();
        let mut split_polys: Vec<Poly> = Vec::new();
        for (p, c) in &self.coeffs {
            if let ClosedPoint::Component { p: poly, branch } = p {
                match branch {
                    Branch::Fiber => {
                        fibers.insert(poly.clone(), c.clone());
                    }
                    Branch::Split(_) => split_polys.push(poly.clone()),
                    Branch::Ramified => {}
                }
            }
        }
        let mut out = Vec::new();
        for (p, c) in &self.coeffs {
            match p {
                ClosedPoint::Component {
                    p: poly,
                    branch: Branch::Split(q),
                } => {
                    let f = fibers.get(poly).cloned().unwrap_or_else(Rat::zero);
                    let main = c + &f;
                    if !main.is_zero() {
                        out.push((p.clone(), main));
                    }
                    if !f.is_zero() {
                        let conj = ClosedPoint::Component {
                            p: poly.clone(),
                            branch: Branch::Split(&Poly::zero() - q),
                        };
                        out.push((conj, f));
                    }
                }
                ClosedPoint::Component {
                    p: poly,
                    branch: Branch::Fiber,
                } => {
                    if !split_polys.contains(poly) {
                        out.push((p.clone(), c.clone()));
                    }
                }
                _ => out.push((p.clone(), c.clone())),
            }
        }
        out
    }
}

impl fmt::Display for QDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (p, c) in &self.coeffs {
            if first {
                write!(f, "{}*{}", fmt_rat(c), p)?;
                first = false;
            } else {
                write!(f, " + {}*{}", fmt_rat(c), p)?;
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Group sums of closed points
// ---------------------------------------------------------------------------

/// Sum, in the group, of all geometric points of a closed point.
/// None for inert components (undecided without a quadratic extension).
pub fn class_sum(curve: &WeierstrassCurve, p: &ClosedPoint) -> Option<CurvePoint> {
    class_sum_depth(curve, p, 0)
}

fn class_sum_depth(curve: &WeierstrassCurve, p: &ClosedPoint, depth: usize) -> Option<CurvePoint> {
    if depth > 12 {
        return None;
    }
    match p {
        ClosedPoint::Infinity => Some(CurvePoint::Infinity),
        ClosedPoint::Rational(x, xi) => Some(CurvePoint::Affine(x.clone(), xi.clone())),
        ClosedPoint::Component { p, branch } => match branch {
            // div(p(x)) = fiber - 2 deg(p) O, so the full fiber sums to O
            Branch::Fiber => Some(CurvePoint::Infinity),
            Branch::Ramified => {
                // all points are 2-torsion; the full 2-torsion sums to O
                let g = curve.cubic();
                let rest = g.div_exact(p).monic();
                match rest.degree() {
                    Some(0) | None => Some(CurvePoint::Infinity),
                    Some(1) => {
                        let r = -rest.coeff(0);
                        Some(CurvePoint::Affine(r, Rat::zero()))
                    }
                    _ => {
                        // p is linear and rest quadratic cannot happen here
                        // (components have degree >= 2), but handle by symmetry
                        None
                    }
                }
            }
            Branch::Split(q) => {
                // div(xi - q) = sum over roots of N = q^2 - G of
                // v_x0(N) (x0, q(x0)) - M*O, and the whole zero set sums to O.
                let g = curve.cubic();
                let mut qq = q.clone();
                let mut n = &(&qq * &qq) - &g;
                // ensure p divides N exactly once so the component sum is not
                // multiplied
                let mut v = 0usize;
                let mut rest = n.clone();
                loop {
                    let (quot, rem) = rest.divrem(p);
                    if rem.is_zero() {
                        v += 1;
                        rest = quot;
                    } else {
                        break;
                    }
                }
                if v != 1 {
                    qq = &qq + p;
                    n = &(&qq * &qq) - &g;
                    rest = n.clone();
                    let mut v2 = 0usize;
                    loop {
                        let (quot, rem) = rest.divrem(p);
                        if rem.is_zero() {
                            v2 += 1;
                            rest = quot;
                        } else {
                            break;
                        }
                    }
                    if v2 != 1 {
                        return None;
                    }
                }
                // rest = N / p: its roots carry the remaining zeros of xi - qq
                let mut total = CurvePoint::Infinity;
                for (fac, mult) in rest.factor() {
                    let partial = if fac.degree() == Some(1) {
                        let x0 = -fac.coeff(0);
                        let y0 = qq.eval(&x0);
                        CurvePoint::Affine(x0, y0)
                    } else {
                        let qr = qq.rem(&fac);
                        let sub = ClosedPoint::Component {
                            p: fac.clone(),
                            branch: if qr.is_zero() {
                                Branch::Ramified
                            } else {
                                Branch::Split(qr)
                            },
                        };
                        class_sum_depth(curve, &sub, depth + 1)?
                    };
                    let scaled = mul(curve, mult as i64, &partial);
                    total = add(curve, &total, &scaled);
                }
                Some(negate(&total))
            }
        },
    }
}

/// Sum of an integral divisor with rational support in the group.
/// Components are rejected with an unsupported-support error.
pub fn divisor_class_sum(curve: &WeierstrassCurve, d: &QDivisor) -> Result<CurvePoint> {
    let mut total = CurvePoint::Infinity;
    for (p, c) in d.iter() {
        if !is_integer(c) {
            return Err(CoreError::Other("divisor coefficients must be integers".into()));
        }
        let n = crate::rat::to_i64(c).ok_or_else(|| CoreError::Other("coefficient too large".into()))?;
        let pt = match p {
            ClosedPoint::Infinity => CurvePoint::Infinity,
            ClosedPoint::Rational(x, xi) => CurvePoint::Affine(x.clone(), xi.clone()),
            ClosedPoint::Component { .. } => return Err(CoreError::UnsupportedSupport),
        };
        total = add(curve, &total, &mul(curve, n, &pt));
    }
    Ok(total)
}

/// Outcome of the principal-divisor test for Q-divisors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Principality {
    /// Degree zero and the integer-cleared sum is torsion.
    Principal { clearing: BigInt, torsion_order: u32 },
    NotPrincipal { reason: String },
    /// A component could not be reduced to rational points.
    Undecided { what: String },
}

impl Principality {
    pub fn is_principal(&self) -> bool {
        matches!(self, Principality::Principal { .. })
    }
}

/// Principality of a Q-divisor: degree zero, and the smallest integer
/// multiple with integer coefficients sums to a torsion point (bound 16).
pub fn is_principal(curve: &WeierstrassCurve, d: &QDivisor) -> Principality {
    if d.is_zero() {
        return Principality::Principal {
            clearing: BigInt::one(),
            torsion_order: 1,
        };
    }
    let deg = d.degree();
    if !deg.is_zero() {
        return Principality::NotPrincipal {
            reason: format!("degree {} is nonzero", fmt_rat(&deg)),
        };
    }
    let clearing = d.clearing_multiple();
    let cleared = d.scale(&Rat::from(clearing.clone()));
    let mut total = CurvePoint::Infinity;
    for (p, c) in cleared.iter() {
        let n = match crate::rat::to_i64(c) {
            Some(n) => n,
            None => {
                return Principality::Undecided {
                    what: "coefficient too large".into(),
                }
            }
        };
        match class_sum(curve, p) {
            Some(pt) => {
                total = add(curve, &total, &mul(curve, n, &pt));
            }
            None => {
                return Principality::Undecided {
                    what: format!("component {p} has no computable class sum"),
                }
            }
        }
    }
    match order_of(curve, &total, 16) {
        Some(ord) => Principality::Principal {
            clearing,
            torsion_order: ord,
        },
        None => Principality::NotPrincipal {
            reason: format!("cleared sum {total} is not torsion within bound 16"),
        },
    }
}

// ---------------------------------------------------------------------------
// E4 point naming and the parity check
// ---------------------------------------------------------------------------

/// Names of E4 rational points: n*(1/5,3/5) + star*(0,0).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct E4Name {
    pub n: i64,
    pub star: bool,
}

/// Recognize a rational point of E4 in the named lattice with |n| <= bound.
pub fn e4_name(curve: &WeierstrassCurve, p: &CurvePoint, bound: i64) -> Option<E4Name> {
    let gen = CurvePoint::Affine(rat(1, 5), rat(3, 5));
    let ostar = CurvePoint::Affine(Rat::zero(), Rat::zero());
    for n in -bound..=bound {
        let base = mul(curve, n, &gen);
        if &base == p {
            return Some(E4Name { n, star: false });
        }
        if add(curve, &base, &ostar) == *p {
            return Some(E4Name { n, star: true });
        }
    }
    None
}

/// Parity criterion for principal divisors of polynomials on E4 with rational
/// support: sum of N vanishes and sum of L is even, where N(n,star) = n and
/// L = star (L(O) = 0).
pub fn e4_parity_check(curve: &WeierstrassCurve, d: &QDivisor) -> Result<bool> {
    let mut n_sum = Rat::zero();
    let mut l_sum = Rat::zero();
    for (p, c) in d.iter() {
        match p {
            ClosedPoint::Infinity => {}
            ClosedPoint::Rational(x, xi) => {
                let pt = CurvePoint::Affine(x.clone(), xi.clone());
                let name = e4_name(curve, &pt, 16)
                    .ok_or_else(|| CoreError::Other(format!("unnamed E4 point ({}, {})", x, xi)))?;
                n_sum += c * Rat::from(BigInt::from(name.n));
                if name.star {
                    l_sum += c;
                }
            }
            ClosedPoint::Component { .. } => {
                return Err(CoreError::UnsupportedSupport);
            }
        }
    }
    Ok(n_sum.is_zero() && is_integer(&(l_sum / rat(2, 1))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rint;

    fn e(key: &str) -> WeierstrassCurve {
        WeierstrassCurve::by_key(key).unwrap()
    }

    fn pt(x: (i64, i64), xi: (i64, i64)) -> CurvePoint {
        CurvePoint::Affine(rat(x.0, x.1), rat(xi.0, xi.1))
    }

    #[test]
    fn on_curve_examples() {
        assert!(on_curve(&e("E4"), &pt((1, 5), (3, 5))));
        assert!(on_curve(&e("E6"), &pt((0, 1), (0, 1))));
        assert!(!on_curve(&e("E3"), &pt((1, 1), (4, 1))));
        // quadratic-field point ((11+5√5)/6, 0) lies on E3
        let x = Quad::new(rat(11, 6), rat(5, 6), 5);
        assert!(on_curve_quad(&e("E3"), &x, &Quad::zero()));
    }

    #[test]
    fn add_examples_on_e6() {
        let e6 = e("E6");
        assert_eq!(
            add(&e6, &pt((1, 1), (1, 1)), &pt((1, 1), (-1, 1))),
            CurvePoint::Infinity
        );
        assert_eq!(
            add(&e6, &pt((0, 1), (0, 1)), &pt((0, 1), (0, 1))),
            CurvePoint::Infinity
        );
        // tangent at (1,1) is horizontal; third intersection (-1,1); negate
        assert_eq!(
            add(&e6, &pt((1, 1), (1, 1)), &pt((1, 1), (1, 1))),
            pt((-1, 1), (-1, 1))
        );
    }

    #[test]
    fn orders() {
        assert_eq!(order_of(&e("E6"), &pt((1, 1), (1, 1)), 12), Some(6));
        assert_eq!(order_of(&e("E3"), &pt((0, 1), (0, 1)), 12), Some(2));
        assert_eq!(order_of(&e("E4"), &pt((1, 5), (3, 5)), 16), None);
        // A5 = 5*(1/5,3/5) = (1/125, 57/625), A5* = (-25, 285)
        let e4 = e("E4");
        let a5 = mul(&e4, 5, &pt((1, 5), (3, 5)));
        assert_eq!(a5, pt((1, 125), (57, 625)));
        let a5s = add(&e4, &a5, &pt((0, 1), (0, 1)));
        assert_eq!(a5s, pt((-25, 1), (285, 1)));
    }

    #[test]
    fn divisor_class_sums() {
        let e6 = e("E6");
        // D = P - P ~ O
        let p = ClosedPoint::Rational(rint(1), rint(1));
        let mut d = QDivisor::zero();
        d.insert(p.clone(), rint(1));
        d.insert(p.clone(), rint(-1));
        assert!(d.is_zero());
        // D = 2(1,1) - (-1,-1) - O sums to O
        let mut d = QDivisor::zero();
        d.insert(ClosedPoint::Rational(rint(1), rint(1)), rint(2));
        d.insert(ClosedPoint::Rational(rint(-1), rint(-1)), rint(-1));
        d.insert(ClosedPoint::Infinity, rint(-1));
        assert_eq!(divisor_class_sum(&e6, &d).unwrap(), CurvePoint::Infinity);
    }

    #[test]
    fn ramified_component_class_sum() {
        // E3: the conjugate pair of 2-torsion points over Q(sqrt5) sums to -(0,0) = (0,0)
        let e3 = e("E3");
        let p = Poly::from_coeffs(vec![rat(-1, 9), rat(-11, 3), rint(1)]).monic();
        let comp = ClosedPoint::Component {
            p,
            branch: Branch::Ramified,
        };
        assert_eq!(comp.degree(), 2);
        let s = class_sum(&e3, &comp).unwrap();
        assert_eq!(s, pt((0, 1), (0, 1)));
        // div(xi) = (0,0) + pair - 3O is principal
        let mut d = QDivisor::zero();
        d.insert(ClosedPoint::Rational(rint(0), rint(0)), rint(1));
        d.insert(comp, rint(1));
        d.insert(ClosedPoint::Infinity, rint(-3));
        assert!(is_principal(&e3, &d).is_principal());
    }

    #[test]
    fn principality_examples() {
        let e4 = e("E4");
        // free generator minus O is not principal
        let mut d = QDivisor::zero();
        d.insert(ClosedPoint::Rational(rat(1, 5), rat(3, 5)), rint(1));
        d.insert(ClosedPoint::Infinity, rint(-1));
        assert!(!is_principal(&e4, &d).is_principal());
        // empty divisor is principal
        assert!(is_principal(&e4, &QDivisor::zero()).is_principal());
        // the E6 conjugate 2-torsion pair with (0,0): div(xi)
        let e6 = e("E6");
        let p = Poly::from_coeffs(vec![rint(-1), rint(-1), rint(1)]);
        let comp = ClosedPoint::Component {
            p,
            branch: Branch::Ramified,
        };
        let mut d = QDivisor::zero();
        d.insert(ClosedPoint::Rational(rint(0), rint(0)), rint(1));
        d.insert(comp, rint(1));
        d.insert(ClosedPoint::Infinity, rint(-3));
        assert!(is_principal(&e6, &d).is_principal());
    }

    #[test]
    fn e4_parity_examples() {
        let e4 = e("E4");
        // div(x) = 2 O* - 2 O
        let mut d = QDivisor::zero();
        d.insert(ClosedPoint::Rational(rint(0), rint(0)), rint(2));
        d.insert(ClosedPoint::Infinity, rint(-2));
        assert!(e4_parity_check(&e4, &d).unwrap());
        // A1 - O has N-sum 1
        let mut d = QDivisor::zero();
        d.insert(ClosedPoint::Rational(rat(1, 5), rat(3, 5)), rint(1));
        d.insert(ClosedPoint::Infinity, rint(-1));
        assert!(!e4_parity_check(&e4, &d).unwrap());
        // A5* + ~A5* - 2O: N-sum 0, L-sum 2
        let a5s = pt((-25, 1), (285, 1));
        let mut d = QDivisor::zero();
        d.insert(ClosedPoint::from_point(&a5s), rint(1));
        d.insert(ClosedPoint::from_point(&negate(&a5s)), rint(1));
        d.insert(ClosedPoint::Infinity, rint(-2));
        assert!(e4_parity_check(&e4, &d).unwrap());
    }

    #[test]
    fn table2_groups() {
        // E3 and E6 realize Z/6; E5 realizes Z/4 + Z/2
        let e3 = e("E3");
        let pts3 = [
            pt((0, 1), (0, 1)),
            pt((-1, 9), (5, 9)),
            pt((-1, 9), (-5, 9)),
            pt((1, 1), (-5, 1)),
            pt((1, 1), (5, 1)),
        ];
        for p in &pts3 {
            assert!(on_curve(&e3, p));
            assert!(order_of(&e3, p, 12).is_some());
        }
        let orders: Vec<u32> = pts3.iter().map(|p| order_of(&e3, p, 12).unwrap()).collect();
        assert!(orders.contains(&6));
        assert!(orders.contains(&2));
        let e5 = e("E5");
        let pts5 = [
            pt((0, 1), (0, 1)),
            pt((-1, 4), (-3, 4)),
            pt((-1, 4), (3, 4)),
            pt((-1, 1), (0, 1)),
            pt((-1, 16), (0, 1)),
            pt((1, 4), (-5, 4)),
            pt((1, 4), (5, 4)),
        ];
        let mut max_order = 0;
        for p in &pts5 {
            assert!(on_curve(&e5, p));
            max_order = max_order.max(order_of(&e5, p, 12).unwrap());
        }
        assert_eq!(max_order, 4);
    }
}
