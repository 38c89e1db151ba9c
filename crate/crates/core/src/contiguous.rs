//! Contiguous relations of 2F1: express any integer-shifted function in the
//! basis {F(A,B;C), F(A+1,B;C)} with rational-function coefficients.
//!
//! Internally a shifted function is tracked as u(z) F + v(z) F' and each unit
//! step applies a first-order operator, reducing F'' through the
//! hypergeometric equation of the base parameters. Shifts in C are eliminated
//! first, then B, then A.

use crate::error::{CoreError, Result};
use crate::hypergeom::{gauss_series, HpgParams};
use crate::poly::Poly;
use crate::rat::{fmt_rat, is_integer, Rat};
use crate::ratfun::RatFun;
use crate::series::Series;
use num::{BigInt, One, Zero};

/// Integer parameter shifts (k, l, m) for (A, B, C).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ShiftVector {
    pub k: i64,
    pub l: i64,
    pub m: i64,
}

impl ShiftVector {
    pub fn new(k: i64, l: i64, m: i64) -> Self {
        ShiftVector { k, l, m }
    }

    /// Shift between two parameter triples, when integral.
    pub fn between(base: &HpgParams, target: &HpgParams) -> Option<ShiftVector> {
        let dk = &target.a - &base.a;
        let dl = &target.b - &base.b;
        let dm = &target.c - &base.c;
        if is_integer(&dk) && is_integer(&dl) && is_integer(&dm) {
            Some(ShiftVector {
                k: crate::rat::to_i64(&dk)?,
                l: crate::rat::to_i64(&dl)?,
                m: crate::rat::to_i64(&dm)?,
            })
        } else {
            None
        }
    }
}

/// Coefficients of a contiguous expression in the basis {F, F(A+1,B;C)}.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisExpression {
    pub p: RatFun,
    pub q: RatFun,
}

/// Coefficients of the operator form u F + v F'.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorExpression {
    pub u: RatFun,
    pub v: RatFun,
}

fn degenerate(step: &str, a: &Rat, b: &Rat, c: &Rat) -> CoreError {
    CoreError::DegeneratePath {
        step: step.into(),
        a: fmt_rat(a),
        b: fmt_rat(b),
        c: fmt_rat(c),
    }
}

// ---------------------------------------------------------------------------
// The three printed relations
// ---------------------------------------------------------------------------

/// b F(a,b+1;c) = (b-a) F + a F(a+1,b;c).
pub fn relation_b_up(a: &Rat, b: &Rat, c: &Rat) -> Result<BasisExpression> {
    if b.is_zero() {
        return Err(degenerate("b-up", a, b, c));
    }
    Ok(BasisExpression {
        p: RatFun::constant((b - a) / b),
        q: RatFun::constant(a / b),
    })
}

/// (c-1) F(a,b;c-1) = (c-a-1) F + a F(a+1,b;c).
pub fn relation_c_down(a: &Rat, b: &Rat, c: &Rat) -> Result<BasisExpression> {
    if c.is_one() {
        return Err(degenerate("c-down", a, b, c));
    }
    let cm1 = c - Rat::one();
    Ok(BasisExpression {
        p: RatFun::constant((c - a - Rat::one()) / &cm1),
        q: RatFun::constant(a / &cm1),
    })
}

/// a(1-z) F(a+1,b;c) = (2a-c-az+bz) F + (c-a) F(a-1,b;c), rearranged for
/// F(a-1,b;c).
pub fn relation_a_down(a: &Rat, b: &Rat, c: &Rat) -> Result<BasisExpression> {
    if a == c {
        return Err(degenerate("a-down", a, b, c));
    }
    let cma = c - a;
    // p = (c - 2a + (a-b) z)/(c-a), q = a (1-z)/(c-a)
    let p = RatFun::new(
        Poly::from_coeffs(vec![c - a - a, a - b]),
        Poly::constant(cma.clone()),
    );
    let q = RatFun::new(
        Poly::from_coeffs(vec![a.clone(), -a.clone()]),
        Poly::constant(cma),
    );
    Ok(BasisExpression { p, q })
}

// ---------------------------------------------------------------------------
// Operator walk
// ---------------------------------------------------------------------------

struct Walk {
    u: RatFun,
    v: RatFun,
    /// F''-reduction coefficients of the base equation:
    /// F'' = r0 F + r1 F' with r0 = ab/(z(1-z)), r1 = ((a+b+1)z - c)/(z(1-z)).
    r0: RatFun,
    r1: RatFun,
}

impl Walk {
    fn new(base: &HpgParams) -> Self {
        let z1mz = Poly::from_coeffs(vec![Rat::zero(), Rat::one(), -Rat::one()]);
        let r0 = RatFun::new(
            Poly::constant(&base.a * &base.b),
            z1mz.clone(),
        );
        let r1 = RatFun::new(
            Poly::from_coeffs(vec![-base.c.clone(), &base.a + &base.b + Rat::one()]),
            z1mz,
        );
        Walk {
            u: RatFun::one(),
            v: RatFun::zero(),
            r0,
            r1,
        }
    }

    /// Apply the operator alpha + beta d/dz to the tracked expression.
    fn apply(&mut self, alpha: &RatFun, beta: &RatFun) {
        let du = self.u.derivative();
        let dv = self.v.derivative();
        let new_u = &(alpha * &self.u) + &(beta * &(&du + &(&self.v * &self.r0)));
        let new_v =
            &(alpha * &self.v) + &(beta * &(&(&self.u + &dv) + &(&self.v * &self.r1)));
        self.u = new_u;
        self.v = new_v;
    }

    fn step(&mut self, cur: &mut HpgParams, step: Step) -> Result<()> {
        let one = RatFun::one();
        let z = RatFun::z();
        let one_minus_z = &one - &z;
        match step {
            Step::AUp => {
                if cur.a.is_zero() {
                    return Err(degenerate("a-up", &cur.a, &cur.b, &cur.c));
                }
                let inv = RatFun::constant(cur.a.recip());
                self.apply(&one, &(&z * &inv));
                cur.a += Rat::one();
            }
            Step::ADown => {
                if cur.a == cur.c {
                    return Err(degenerate("a-down", &cur.a, &cur.b, &cur.c));
                }
                let d = RatFun::constant((&cur.c - &cur.a).recip());
                let alpha = &RatFun::new(
                    Poly::from_coeffs(vec![&cur.c - &cur.a, -cur.b.clone()]),
                    Poly::one(),
                ) * &d;
                let beta = &(&z * &one_minus_z) * &d;
                self.apply(&alpha, &beta);
                cur.a -= Rat::one();
            }
            Step::BUp => {
                if cur.b.is_zero() {
                    return Err(degenerate("b-up", &cur.a, &cur.b, &cur.c));
                }
                let inv = RatFun::constant(cur.b.recip());
                self.apply(&one, &(&z * &inv));
                cur.b += Rat::one();
            }
            Step::BDown => {
                if cur.b == cur.c {
                    return Err(degenerate("b-down", &cur.a, &cur.b, &cur.c));
                }
                let d = RatFun::constant((&cur.c - &cur.b).recip());
                let alpha = &RatFun::new(
                    Poly::from_coeffs(vec![&cur.c - &cur.b, -cur.a.clone()]),
                    Poly::one(),
                ) * &d;
                let beta = &(&z * &one_minus_z) * &d;
                self.apply(&alpha, &beta);
                cur.b -= Rat::one();
            }
            Step::CDown => {
                if cur.c.is_one() {
                    return Err(degenerate("c-down", &cur.a, &cur.b, &cur.c));
                }
                let inv = RatFun::constant((&cur.c - Rat::one()).recip());
                self.apply(&one, &(&z * &inv));
                cur.c -= Rat::one();
            }
            Step::CUp => {
                if cur.c == cur.a || cur.c == cur.b {
                    return Err(degenerate("c-up", &cur.a, &cur.b, &cur.c));
                }
                let den = (&cur.c - &cur.a) * (&cur.c - &cur.b);
                let scale = RatFun::constant(&cur.c / &den);
                let alpha = &RatFun::constant(&cur.c - &cur.a - &cur.b) * &scale;
                let beta = &one_minus_z * &scale;
                self.apply(&alpha, &beta);
                cur.c += Rat::one();
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy)]
enum Step {
    AUp,
    ADown,
    BUp,
    BDown,
    CUp,
    CDown,
}

/// F(A+k, B+l; C+m) = u F + v F' with u, v in Q(z); the elimination handles
/// the C-shift first, then B, then A.
pub fn express_operator(base: &HpgParams, shift: ShiftVector) -> Result<OperatorExpression> {
    let mut walk = Walk::new(base);
    let mut cur = base.clone();
    let c_step = if shift.m >= 0 { Step::CUp } else { Step::CDown };
    for _ in 0..shift.m.unsigned_abs() {
        walk.step(&mut cur, c_step)?;
    }
    let b_step = if shift.l >= 0 { Step::BUp } else { Step::BDown };
    for _ in 0..shift.l.unsigned_abs() {
        walk.step(&mut cur, b_step)?;
    }
    let a_step = if shift.k >= 0 { Step::AUp } else { Step::ADown };
    for _ in 0..shift.k.unsigned_abs() {
        walk.step(&mut cur, a_step)?;
    }
    Ok(OperatorExpression {
        u: walk.u,
        v: walk.v,
    })
}

/// Convert u F + v F' into the basis {F, F(A+1,B;C)} using
/// F' = a (F(A+1) - F)/z. Requires A nonzero.
pub fn operator_to_basis(base: &HpgParams, op: &OperatorExpression) -> Result<BasisExpression> {
    if base.a.is_zero() {
        return Err(degenerate("basis", &base.a, &base.b, &base.c));
    }
    let a_over_z = RatFun::new(Poly::constant(base.a.clone()), Poly::x());
    let qv = &op.v * &a_over_z;
    Ok(BasisExpression {
        p: &op.u - &qv,
        q: qv,
    })
}

/// Express F(A+k,B+l;C+m) in the basis {F, F(A+1,B;C)}.
pub fn express_in_basis(base: &HpgParams, shift: ShiftVector) -> Result<BasisExpression> {
    let op = express_operator(base, shift)?;
    operator_to_basis(base, &op)
}

/// dF/dz in the basis {F, F(A+1,B;C)}: routed through the classical
/// dF/dz = (AB/C) F(A+1,B+1;C+1) and `express_in_basis`.
pub fn derivative_as_contiguous(base: &HpgParams) -> Result<BasisExpression> {
    let ab = &base.a * &base.b;
    if ab.is_zero() {
        return Ok(BasisExpression {
            p: RatFun::zero(),
            q: RatFun::zero(),
        });
    }
    let shifted = express_in_basis(base, ShiftVector::new(1, 1, 1))?;
    let scale = RatFun::constant(ab / &base.c);
    Ok(BasisExpression {
        p: &shifted.p * &scale,
        q: &shifted.q * &scale,
    })
}

// ---------------------------------------------------------------------------
// Series oracle
// ---------------------------------------------------------------------------

/// Evaluate p(z) F + q(z) F1 as a series to the given order, where F, F1 are
/// power series. Poles of p, q at z = 0 must cancel in the combination.
pub fn basis_expr_series(
    expr: &BasisExpression,
    f: &Series,
    f1: &Series,
    order: i64,
) -> Result<Series> {
    let eval = |r: &RatFun, s: &Series| -> Result<Series> {
        if r.is_zero() {
            return Ok(Series::zero_with(order + 1, 1));
        }
        let num = Series::from_poly(r.num()).truncate(2 * order + 4);
        let den = Series::from_poly(r.den()).truncate(2 * order + 4);
        num.mul(s).div(&den)
    };
    Ok(eval(&expr.p, f)?.add(&eval(&expr.q, f1)?).truncate(order + 1))
}

/// Check the expression against the Gauss series of the target parameters.
pub fn verify_expression_by_series(
    base: &HpgParams,
    shift: ShiftVector,
    expr: &BasisExpression,
    order: i64,
) -> Result<bool> {
    let pad = order + 4 + shift.k.abs() + shift.l.abs() + shift.m.abs();
    let f = gauss_series(base, pad)?;
    let f1 = gauss_series(
        &HpgParams::new(&base.a + Rat::one(), base.b.clone(), base.c.clone())?,
        pad,
    )?;
    let lhs = gauss_series(
        &HpgParams::new(
            &base.a + Rat::from(BigInt::from(shift.k)),
            &base.b + Rat::from(BigInt::from(shift.l)),
            &base.c + Rat::from(BigInt::from(shift.m)),
        )?,
        pad,
    )?;
    let rhs = basis_expr_series(expr, &f, &f1, order)?;
    Ok(lhs.truncate(order + 1).first_mismatch(&rhs).is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rint};

    fn params(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> HpgParams {
        HpgParams::new(rat(a.0, a.1), rat(b.0, b.1), rat(c.0, c.1)).unwrap()
    }

    #[test]
    fn printed_relation_b_up() {
        // A=1/4, B=-1/12: p = (B-A)/B = 4, q = A/B = -3
        let e = relation_b_up(&rat(1, 4), &rat(-1, 12), &rat(2, 3)).unwrap();
        assert_eq!(e.p, RatFun::constant(rint(4)));
        assert_eq!(e.q, RatFun::constant(rint(-3)));
        // A=B: F(A,A+1;C) = F(A+1,A;C), so p=0, q=1
        let e = relation_b_up(&rat(1, 3), &rat(1, 3), &rat(1, 2)).unwrap();
        assert_eq!(e.p, RatFun::zero());
        assert_eq!(e.q, RatFun::one());
        assert!(relation_b_up(&rat(1, 4), &rint(0), &rat(2, 3)).is_err());
        // series oracle, order 12
        let base = params((1, 4), (-1, 12), (2, 3));
        let e = relation_b_up(&base.a, &base.b, &base.c).unwrap();
        assert!(verify_expression_by_series(&base, ShiftVector::new(0, 1, 0), &e, 12).unwrap());
    }

    #[test]
    fn printed_relation_c_down() {
        // A=0 collapses to p=1, q=0
        let e = relation_c_down(&rint(0), &rat(1, 3), &rat(5, 3)).unwrap();
        assert_eq!(e.p, RatFun::one());
        assert_eq!(e.q, RatFun::zero());
        let base = params((1, 4), (-1, 12), (5, 3));
        let e = relation_c_down(&base.a, &base.b, &base.c).unwrap();
        assert_eq!(
            e.p,
            RatFun::constant((rat(5, 3) - rat(1, 4) - rint(1)) / rat(2, 3))
        );
        assert_eq!(e.q, RatFun::constant(rat(1, 4) / rat(2, 3)));
        assert!(
            verify_expression_by_series(&base, ShiftVector::new(0, 0, -1), &e, 12).unwrap()
        );
        assert!(relation_c_down(&rat(1, 4), &rat(1, 3), &rint(1)).is_err());
    }

    #[test]
    fn printed_relation_a_down() {
        // value consistency at z=0: p(0) + q(0) = 1
        let base = params((1, 4), (-1, 12), (2, 3));
        let e = relation_a_down(&base.a, &base.b, &base.c).unwrap();
        let p0 = e.p.eval(&rint(0)).unwrap();
        let q0 = e.q.eval(&rint(0)).unwrap();
        assert_eq!(p0 + q0, rint(1));
        assert!(
            verify_expression_by_series(&base, ShiftVector::new(-1, 0, 0), &e, 12).unwrap()
        );
        assert!(relation_a_down(&rat(1, 3), &rat(1, 4), &rat(1, 3)).is_err());
    }

    #[test]
    fn express_basic_shifts() {
        let base = params((1, 4), (-1, 12), (2, 3));
        let e = express_in_basis(&base, ShiftVector::new(0, 0, 0)).unwrap();
        assert_eq!(e.p, RatFun::one());
        assert_eq!(e.q, RatFun::zero());
        let e = express_in_basis(&base, ShiftVector::new(1, 0, 0)).unwrap();
        assert_eq!(e.p, RatFun::zero());
        assert_eq!(e.q, RatFun::one());
        let e = express_in_basis(&base, ShiftVector::new(0, 1, 0)).unwrap();
        let direct = relation_b_up(&base.a, &base.b, &base.c).unwrap();
        assert_eq!(e, direct);
    }

    #[test]
    fn express_mixed_shifts_series_checked() {
        let base = params((1, 4), (-1, 12), (2, 3));
        for (k, l, m) in [
            (1i64, 0i64, 1i64),
            (0, -1, -1),
            (-1, 0, -1),
            (2, -1, 1),
            (-2, 2, -1),
            (0, 0, 2),
        ] {
            let s = ShiftVector::new(k, l, m);
            let e = express_in_basis(&base, s).unwrap();
            assert!(
                verify_expression_by_series(&base, s, &e, 12).unwrap(),
                "shift ({k},{l},{m}) failed series check"
            );
        }
    }

    #[test]
    fn derivative_examples() {
        // AB = 0: derivative of the constant series is zero
        let base = params((0, 1), (1, 3), (1, 2));
        let e = derivative_as_contiguous(&base).unwrap();
        assert!(e.p.is_zero() && e.q.is_zero());
        // (1,1,2): -log(1-z)/z, check to order 10
        let base = params((1, 1), (1, 1), (2, 1));
        let e = derivative_as_contiguous(&base).unwrap();
        let pad = 16;
        let f = gauss_series(&base, pad).unwrap();
        let f1 = gauss_series(&params((2, 1), (1, 1), (2, 1)), pad).unwrap();
        let rhs = basis_expr_series(&e, &f, &f1, 10).unwrap();
        let d = gauss_series(&base, pad).unwrap().derivative().truncate(11);
        assert!(d.first_mismatch(&rhs).is_none());
        // (1/4,-1/12,2/3) to order 12
        let base = params((1, 4), (-1, 12), (2, 3));
        let e = derivative_as_contiguous(&base).unwrap();
        let f = gauss_series(&base, 20).unwrap();
        let f1 = gauss_series(&params((5, 4), (-1, 12), (2, 3)), 20).unwrap();
        let rhs = basis_expr_series(&e, &f, &f1, 12).unwrap();
        let d = f.derivative().truncate(13);
        assert!(d.first_mismatch(&rhs).is_none());
    }

    #[test]
    fn composition_coherence() {
        let base = params((1, 4), (-1, 12), (2, 3));
        let s1 = ShiftVector::new(1, -1, 0);
        let s2 = ShiftVector::new(0, 1, 1);
        let shifted = params((5, 4), (-13, 12), (2, 3));
        let e1 = express_in_basis(&base, s1).unwrap();
        let e1a = express_in_basis(&base, ShiftVector::new(s1.k + 1, s1.l, s1.m)).unwrap();
        let e2 = express_in_basis(&shifted, s2).unwrap();
        // recombine: F(base + s1 + s2) = e2.p * F(base+s1) + e2.q * F(base+s1+eA)
        let p = &(&e2.p * &e1.p) + &(&e2.q * &e1a.p);
        let q = &(&e2.p * &e1.q) + &(&e2.q * &e1a.q);
        let direct = express_in_basis(&base, ShiftVector::new(1, 0, 1)).unwrap();
        assert_eq!(p, direct.p);
        assert_eq!(q, direct.q);
    }

    #[test]
    fn degenerate_path_reports_step() {
        let base = params((0, 1), (1, 3), (1, 2));
        let err = express_in_basis(&base, ShiftVector::new(1, 0, 0)).unwrap_err();
        match err {
            CoreError::DegeneratePath { step, .. } => assert_eq!(step, "a-up"),
            other => panic!("unexpected error {other:?}"),
        }
    }
}
