//! The shipped catalog of 56 evaluations, the power-series verifier, the
//! contiguous derivation engine, and the candidate-divisor solution search.
//!
//! Catalog files are JSON with rationals and polynomials as strings in the
//! shared literal grammars; parse -> print -> parse is the identity.

use crate::bipoly::{parse_bipoly, BiPoly};
use crate::contiguous::{express_operator, OperatorExpression, ShiftVector};
use crate::curvefunc::{
    expand_at_base, expand_radical_at_base, CurveFunction, RadicalExpansion, RadicalFunction,
    XiBranch,
};
use crate::darboux::{covering, Covering, CoveringBody, PullbackScheme};
use crate::elliptic::{QDivisor, WeierstrassCurve};
use crate::error::{CoreError, Result};
use crate::hypergeom::{
    classify_schwartz, exponent_diffs, gauss_series, HpgParams, SchwartzType,
};
use crate::poly::Poly;
use crate::rat::{fmt_rat, parse_rat, rat, Rat};
use crate::ratfun::RatFun;
use crate::series::Series;
use num::{BigInt, One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

// ---------------------------------------------------------------------------
// Records and catalog I/O
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RhsFactorDoc {
    pub poly: String,
    pub exp: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RhsDoc {
    pub constant: String,
    pub factors: Vec<RhsFactorDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RecordDoc {
    pub id: String,
    #[serde(rename = "type")]
    pub type_triple: String,
    pub params: [String; 3],
    pub covering: String,
    pub rhs: RhsDoc,
    #[serde(default)]
    pub notes: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CatalogDoc {
    pub records: Vec<RecordDoc>,
}

/// A parsed catalog entry.
#[derive(Clone, Debug)]
pub struct EvaluationRecord {
    pub id: String,
    pub type_triple: [Rat; 3],
    pub params: HpgParams,
    pub covering_key: String,
    pub constant: Rat,
    pub factors: Vec<(BiPoly, Rat)>,
    pub notes: String,
}

impl EvaluationRecord {
    pub fn from_doc(doc: &RecordDoc) -> Result<Self> {
        let triple: Vec<Rat> = doc
            .type_triple
            .split(',')
            .map(|s| parse_rat(s.trim()))
            .collect::<Result<_>>()?;
        if triple.len() != 3 {
            return Err(CoreError::Parse(format!(
                "record {}: type must be three rationals",
                doc.id
            )));
        }
        let params = HpgParams::new(
            parse_rat(&doc.params[0])?,
            parse_rat(&doc.params[1])?,
            parse_rat(&doc.params[2])?,
        )?;
        let mut factors = Vec::new();
        for f in &doc.rhs.factors {
            factors.push((parse_bipoly(&f.poly)?, parse_rat(&f.exp)?));
        }
        Ok(EvaluationRecord {
            id: doc.id.clone(),
            type_triple: [triple[0].clone(), triple[1].clone(), triple[2].clone()],
            params,
            covering_key: doc.covering.clone(),
            constant: parse_rat(&doc.rhs.constant)?,
            factors,
            notes: doc.notes.clone(),
        })
    }

    pub fn to_doc(&self) -> RecordDoc {
        RecordDoc {
            id: self.id.clone(),
            type_triple: format!(
                "{},{},{}",
                fmt_rat(&self.type_triple[0]),
                fmt_rat(&self.type_triple[1]),
                fmt_rat(&self.type_triple[2])
            ),
            params: [
                fmt_rat(&self.params.a),
                fmt_rat(&self.params.b),
                fmt_rat(&self.params.c),
            ],
            covering: self.covering_key.clone(),
            rhs: RhsDoc {
                constant: fmt_rat(&self.constant),
                factors: self
                    .factors
                    .iter()
                    .map(|(p, e)| RhsFactorDoc {
                        poly: format!("{p}"),
                        exp: fmt_rat(e),
                    })
                    .collect(),
            },
            notes: self.notes.clone(),
        }
    }

    pub fn covering(&self) -> Result<Covering> {
        covering(&self.covering_key)
    }

    /// The right-hand side as a radical function on the covering's curve.
    pub fn rhs_radical(&self) -> Result<RadicalFunction> {
        let cov = self.covering()?;
        let curve = cov.curve().cloned();
        let mut r = RadicalFunction::one(curve.as_ref());
        r.constant = self.constant.clone();
        for (p, e) in &self.factors {
            let f = CurveFunction::from_bipoly(curve.as_ref(), p)?;
            r.push(f, e.clone());
        }
        Ok(r)
    }

    /// The record's Schwartz type must match its parameters, and the RHS must
    /// take the value 1 at the base point.
    pub fn validate(&self) -> Result<()> {
        let own = classify_schwartz(&exponent_diffs(&self.params));
        let declared = classify_schwartz(&crate::hypergeom::ExponentDiffs::new(
            self.type_triple[0].clone(),
            self.type_triple[1].clone(),
            self.type_triple[2].clone(),
        ));
        if own != declared || matches!(own, SchwartzType::NonAlgebraic) {
            return Err(CoreError::Other(format!(
                "record {}: declared type does not match parameters",
                self.id
            )));
        }
        let rhs = self.rhs_radical()?;
        let ex = expand_radical_at_base(&rhs, 2, XiBranch::Plus)?;
        if !ex.t_exp.is_zero() || ex.unit.leading_coeff() != Some(Rat::one()) {
            return Err(CoreError::Other(format!(
                "record {}: rhs does not equal 1 at the base point",
                self.id
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct Catalog {
    pub records: Vec<EvaluationRecord>,
}

impl Catalog {
    pub fn from_json(s: &str) -> Result<Catalog> {
        let doc: CatalogDoc =
            serde_json::from_str(s).map_err(|e| CoreError::Parse(format!("catalog JSON: {e}")))?;
        let records = doc
            .records
            .iter()
            .map(EvaluationRecord::from_doc)
            .collect::<Result<Vec<_>>>()?;
        Ok(Catalog { records })
    }

    pub fn to_json(&self) -> String {
        let doc = CatalogDoc {
            records: self.records.iter().map(|r| r.to_doc()).collect(),
        };
        serde_json::to_string_pretty(&doc).expect("serializable")
    }

    /// The catalog bundled with the crate.
    pub fn builtin() -> Catalog {
        Catalog::from_json(BUILTIN_CATALOG_JSON).expect("bundled catalog parses")
    }

    pub fn find(&self, id: &str) -> Option<&EvaluationRecord> {
        self.records.iter().find(|r| r.id == id)
    }

    /// (base, companion) pairs: within each group of four, the second record
    /// is contiguous to the first and the fourth to the third.
    pub fn companion_pairs(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        for chunk in self.records.chunks(4) {
            if chunk.len() == 4 {
                out.push((chunk[0].id.clone(), chunk[1].id.clone()));
                out.push((chunk[2].id.clone(), chunk[3].id.clone()));
            }
        }
        out
    }
}

pub const BUILTIN_CATALOG_JSON: &str = include_str!("catalog.json");

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub id: String,
    pub ok: bool,
    pub order: i64,
    /// t-exponent of the first mismatching coefficient, when any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mismatch_index: Option<i64>,
}

/// Series expansion of a covering map at the base point (in t, with t = x on
/// genus 0 and t = sqrt x on the Darboux curves).
pub fn covering_expansion(cov: &Covering, prec_units: i64) -> Result<Series> {
    let s = match &cov.body {
        CoveringBody::Genus0(map) => {
            let num = Series::from_poly(map.num()).truncate(prec_units + 2);
            let den = Series::from_poly(map.den()).truncate(prec_units + 2);
            num.div(&den)?
        }
        CoveringBody::Elliptic { map, .. } => {
            let ex = expand_radical_at_base(map, prec_units + 2, XiBranch::Plus)?;
            ex.as_series()?
        }
    };
    match s.valuation() {
        Some(v) if v >= 1 => Ok(s),
        _ => Err(CoreError::CompositionDivergence),
    }
}

/// Verify one record by exact coefficient comparison through t-order `order`.
pub fn verify(rec: &EvaluationRecord, order: i64) -> Result<VerificationReport> {
    if order < 0 {
        return Err(CoreError::BadParameter("order must be >= 0".into()));
    }
    let cov = rec.covering()?;
    let inner = covering_expansion(&cov, order + 1)?;
    verify_with_inner(rec, order, &inner)
}

/// Verify every record; reports are returned in catalog order. Covering
/// expansions are shared across the records that use them.
pub fn verify_all(catalog: &Catalog, order: i64) -> Vec<Result<VerificationReport>> {
    use std::collections::HashMap;
    let keys: std::collections::BTreeSet<String> = catalog
        .records
        .iter()
        .map(|r| r.covering_key.clone())
        .collect();
    let inners: HashMap<String, Result<Series>> = keys
        .into_iter()
        .map(|k| {
            let inner = covering(&k).and_then(|c| covering_expansion(&c, order + 1));
            (k, inner)
        })
        .collect();
    catalog
        .records
        .par_iter()
        .map(|r| match inners.get(&r.covering_key) {
            Some(Ok(inner)) => verify_with_inner(r, order, inner),
            Some(Err(e)) => Err(e.clone()),
            None => verify(r, order),
        })
        .collect()
}

/// Verify against a precomputed covering expansion.
pub fn verify_with_inner(
    rec: &EvaluationRecord,
    order: i64,
    inner: &Series,
) -> Result<VerificationReport> {
    let outer = gauss_series(&rec.params, order + 1)?;
    let lhs = Series::compose(&outer, inner)?;
    let rhs = expand_radical_at_base(&rec.rhs_radical()?, order + 1, XiBranch::Plus)?;
    if !rhs.t_exp.is_zero() {
        return Err(CoreError::Other(format!(
            "record {}: rhs has nonzero valuation {} at the base point",
            rec.id,
            fmt_rat(&rhs.t_exp)
        )));
    }
    let mismatch = lhs
        .truncate(order + 1)
        .first_mismatch(&rhs.unit.truncate(order + 1))
        .map(|e| crate::rat::to_i64(&e).unwrap_or(i64::MIN));
    Ok(VerificationReport {
        id: rec.id.clone(),
        ok: mismatch.is_none(),
        order,
        mismatch_index: mismatch,
    })
}

// ---------------------------------------------------------------------------
// Contiguous derivation engine
// ---------------------------------------------------------------------------

fn bipoly_from_parts(a: &Poly, b: &Poly) -> BiPoly {
    let mut out = BiPoly::zero();
    for (i, c) in a.coeffs().iter().enumerate() {
        out.insert(0, i, c.clone());
    }
    for (i, c) in b.coeffs().iter().enumerate() {
        out.insert(1, i, c.clone());
    }
    out
}

// ---------------------------------------------------------------------------
// Projective function-field arithmetic for the derivation engine.
//
// Intermediate results stay polynomial (elements a + xi b of the coordinate
// ring and fractions of them); the one gcd happens when the final multiplier
// is cleared to (A + xi B)/C.
// ---------------------------------------------------------------------------

#[derive(Clone)]
struct Ord2 {
    a: Poly,
    b: Poly,
}

impl Ord2 {
    fn from_rat(c: Rat) -> Self {
        Ord2 {
            a: Poly::constant(c),
            b: Poly::zero(),
        }
    }

    fn one() -> Self {
        Ord2::from_rat(Rat::one())
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn mul(&self, other: &Ord2, g: Option<&Poly>) -> Ord2 {
        match g {
            Some(g) => Ord2 {
                a: &(&self.a * &other.a) + &(g * &(&self.b * &other.b)),
                b: &(&self.a * &other.b) + &(&self.b * &other.a),
            },
            None => Ord2 {
                a: &self.a * &other.a,
                b: Poly::zero(),
            },
        }
    }

    fn add(&self, other: &Ord2) -> Ord2 {
        Ord2 {
            a: &self.a + &other.a,
            b: &self.b + &other.b,
        }
    }

    fn sub(&self, other: &Ord2) -> Ord2 {
        Ord2 {
            a: &self.a - &other.a,
            b: &self.b - &other.b,
        }
    }

    fn scale(&self, s: &Rat) -> Ord2 {
        Ord2 {
            a: self.a.scale(s),
            b: self.b.scale(s),
        }
    }

    fn conj(&self) -> Ord2 {
        Ord2 {
            a: self.a.clone(),
            b: -&self.b,
        }
    }

    /// (numerator, denominator) of d/dx: on a curve xi' = G'/(2 xi), so
    /// (a + xi b)' = (2G a' + xi (2G b' + G' b)) / (2G); on the line, (a', 1).
    fn derivative_pair(&self, g: Option<&Poly>) -> (Ord2, Poly) {
        match g {
            Some(g) => {
                let two_g = g.scale(&rat(2, 1));
                let dg = g.derivative();
                (
                    Ord2 {
                        a: &two_g * &self.a.derivative(),
                        b: &(&two_g * &self.b.derivative()) + &(&dg * &self.b),
                    },
                    two_g,
                )
            }
            None => (
                Ord2 {
                    a: self.a.derivative(),
                    b: Poly::zero(),
                },
                Poly::one(),
            ),
        }
    }
}

#[derive(Clone)]
struct FF2 {
    n: Ord2,
    d: Ord2,
}

impl FF2 {
    fn mul(&self, other: &FF2, g: Option<&Poly>) -> FF2 {
        FF2 {
            n: self.n.mul(&other.n, g),
            d: self.d.mul(&other.d, g),
        }
    }

    fn add(&self, other: &FF2, g: Option<&Poly>) -> FF2 {
        FF2 {
            n: self.n.mul(&other.d, g).add(&other.n.mul(&self.d, g)),
            d: self.d.mul(&other.d, g),
        }
    }

    fn div(&self, other: &FF2, g: Option<&Poly>) -> Result<FF2> {
        if other.n.is_zero() {
            return Err(CoreError::DivisionByZero);
        }
        Ok(FF2 {
            n: self.n.mul(&other.d, g),
            d: self.d.mul(&other.n, g),
        })
    }
}

/// u(N/D) for u in Q(z), as one fraction of order elements.
fn eval_ratfun_ff(u: &RatFun, n: &Ord2, d: &Ord2, g: Option<&Poly>) -> FF2 {
    let deg = u.num().deg_i().max(u.den().deg_i()).max(0) as usize;
    // powers of N and D up to deg
    let mut npow = vec![Ord2::one()];
    let mut dpow = vec![Ord2::one()];
    for i in 1..=deg {
        npow.push(npow[i - 1].mul(n, g));
        dpow.push(dpow[i - 1].mul(d, g));
    }
    let build = |p: &Poly| -> Ord2 {
        let mut acc = Ord2 {
            a: Poly::zero(),
            b: Poly::zero(),
        };
        for (i, c) in p.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc = acc.add(&npow[i].mul(&dpow[deg - i], g).scale(c));
        }
        acc
    };
    FF2 {
        n: build(u.num()),
        d: build(u.den()),
    }
}

fn ord2_from_curvefunction(f: &CurveFunction) -> Result<Ord2> {
    let (a, b, c) = f.cleared();
    if !c.is_one() {
        return Err(CoreError::Other("expected a polynomial function".into()));
    }
    Ok(Ord2 { a, b })
}

/// The covering as constant * N/D with polynomial order elements.
fn covering_as_fraction(cov: &Covering) -> Result<(Option<Poly>, Ord2, Ord2)> {
    match &cov.body {
        CoveringBody::Genus0(map) => Ok((
            None,
            Ord2 {
                a: map.num().clone(),
                b: Poly::zero(),
            },
            Ord2 {
                a: map.den().clone(),
                b: Poly::zero(),
            },
        )),
        CoveringBody::Elliptic { curve, map } => {
            let g = curve.cubic();
            let mut num = Ord2::from_rat(map.constant.clone());
            let mut den = Ord2::one();
            for (f, e) in &map.factors {
                let k = crate::rat::to_i64(e)
                    .ok_or_else(|| CoreError::Other("covering exponent not integral".into()))?;
                let o = ord2_from_curvefunction(f)?;
                for _ in 0..k.unsigned_abs() {
                    if k > 0 {
                        num = num.mul(&o, Some(&g));
                    } else {
                        den = den.mul(&o, Some(&g));
                    }
                }
            }
            Ok((Some(g), num, den))
        }
    }
}

/// The contiguous multiplier u(phi) + v(phi) lambda / phi' as a cleared
/// (A + xi B)/C with a single gcd at the end.
fn contiguous_multiplier_cleared(
    op: &OperatorExpression,
    cov: &Covering,
    rhs: &RadicalFunction,
) -> Result<(Poly, Poly, Poly)> {
    let (g_opt, nn, dd) = covering_as_fraction(cov)?;
    let g = g_opt.as_ref();
    // lambda = sum e_q f_q'/f_q over the catalog factors, one fraction
    let mut factors: Vec<(Ord2, Rat)> = Vec::new();
    for (f, e) in &rhs.factors {
        factors.push((ord2_from_curvefunction(f)?, e.clone()));
    }
    let mut lam_den = Ord2::one();
    let mut deriv_den = Poly::one();
    for (f, _) in &factors {
        lam_den = lam_den.mul(f, g);
    }
    let mut lam_num = Ord2 {
        a: Poly::zero(),
        b: Poly::zero(),
    };
    for (q, (fq, eq)) in factors.iter().enumerate() {
        let (dnum, dden) = fq.derivative_pair(g);
        deriv_den = dden; // same for every factor
        let mut term = dnum.scale(eq);
        for (r, (fr, _)) in factors.iter().enumerate() {
            if r != q {
                term = term.mul(fr, g);
            }
        }
        lam_num = lam_num.add(&term);
    }
    let lambda = FF2 {
        n: lam_num,
        d: lam_den.mul(
            &Ord2 {
                a: deriv_den.clone(),
                b: Poly::zero(),
            },
            g,
        ),
    };
    // phi' = (N' D - N D')/(den * D^2)
    let (n_dn, n_dd) = nn.derivative_pair(g);
    let (d_dn, _) = dd.derivative_pair(g);
    let phi_prime = FF2 {
        n: n_dn.mul(&dd, g).sub(&nn.mul(&d_dn, g)),
        d: Ord2 {
            a: n_dd,
            b: Poly::zero(),
        }
        .mul(&dd.mul(&dd, g), g),
    };
    let u_phi = eval_ratfun_ff(&op.u, &nn, &dd, g);
    let v_phi = eval_ratfun_ff(&op.v, &nn, &dd, g);
    let s = u_phi.add(&v_phi.mul(&lambda.div(&phi_prime, g)?, g), g);
    // clear: S = n/d = n conj(d) / norm(d)
    let (num, den) = match g {
        Some(g) => {
            let n = s.n.mul(&s.d.conj(), Some(g));
            let d = &(&s.d.a * &s.d.a) - &(g * &(&s.d.b * &s.d.b));
            (n, d)
        }
        None => (
            Ord2 {
                a: s.n.a.clone(),
                b: Poly::zero(),
            },
            s.d.a.clone(),
        ),
    };
    // One reduction pass keeps companion-pair multipliers small; for large
    // operators the cosmetic gcd costs more than it saves, so skip it.
    if den.deg_i() <= 64 {
        let g1 = num.a.gcd(&num.b).gcd(&den);
        if g1.degree().map_or(false, |d| d > 0) {
            return Ok((
                num.a.div_exact(&g1),
                num.b.div_exact(&g1),
                den.div_exact(&g1),
            ));
        }
    }
    Ok((num.a, num.b, den))
}

/// The logarithmic derivative of a radical function: sum e_i f_i'/f_i.
pub fn log_derivative(r: &RadicalFunction) -> Result<CurveFunction> {
    let mut acc = CurveFunction {
        curve: r.curve.clone(),
        f1: RatFun::zero(),
        f2: RatFun::zero(),
    };
    for (f, e) in &r.factors {
        let term = f.derivative().div(f)?;
        let scaled = CurveFunction {
            curve: term.curve.clone(),
            f1: &term.f1 * &RatFun::constant(e.clone()),
            f2: &term.f2 * &RatFun::constant(e.clone()),
        };
        acc = acc.add(&scaled);
    }
    Ok(acc)
}

/// Derive the evaluation of a contiguous 2F1 from a base record:
/// F(target)(phi) = (u(phi) + v(phi) lambda/phi') * R, with (u,v) from the
/// contiguous elimination, lambda = R'/R and phi' = d phi/dx. The derived
/// record keeps the base factors and appends the rational multiplier.
pub fn derive_contiguous(
    target: &HpgParams,
    base: &EvaluationRecord,
) -> Result<EvaluationRecord> {
    let target_type = classify_schwartz(&exponent_diffs(target));
    let base_type = classify_schwartz(&exponent_diffs(&base.params));
    if target_type != base_type {
        return Err(CoreError::BadParameter(format!(
            "target type {target_type} differs from base type {base_type}"
        )));
    }
    let shift = match ShiftVector::between(&base.params, target) {
        Some(s) => s,
        None => ShiftVector::between(&base.params, &target.swapped()).ok_or_else(|| {
            CoreError::BadParameter(
                "target parameters are not an integral shift of the base (even after A<->B swap)"
                    .into(),
            )
        })?,
    };
    if shift.k == 0 && shift.l == 0 && shift.m == 0 {
        let mut rec = base.clone();
        rec.params = target.clone();
        return Ok(rec);
    }
    let op: OperatorExpression = match express_operator(&base.params, shift) {
        Ok(op) => op,
        Err(CoreError::DegeneratePath { .. }) => {
            // retry with A and B swapped in the base role of the relations
            let swapped = base.params.swapped();
            let shift2 = ShiftVector::between(&swapped, target)
                .or_else(|| ShiftVector::between(&swapped, &target.swapped()))
                .ok_or_else(|| CoreError::BadParameter("shift lost under swap".into()))?;
            express_operator(&swapped, shift2)?
        }
        Err(e) => return Err(e),
    };
    let cov = base.covering()?;
    let rhs = base.rhs_radical()?;
    let (a, b, c) = contiguous_multiplier_cleared(&op, &cov, &rhs)?;

    // the multiplier must equal 1 at the base point; the unreduced fraction
    // may share a factor vanishing there to high order, so widen the window
    // until both valuations are visible
    let curve = cov.curve().cloned();
    let num_cf = CurveFunction::from_bipoly(curve.as_ref(), &bipoly_from_parts(&a, &b))?;
    let den_cf = CurveFunction {
        curve: curve.clone(),
        f1: RatFun::from_poly(c.clone()),
        f2: RatFun::zero(),
    };
    let mut pad = 8;
    let ex = loop {
        let ex_num = expand_at_base(&num_cf, pad, XiBranch::Plus)?;
        let ex_den = expand_at_base(&den_cf, pad, XiBranch::Plus)?;
        if ex_num.valuation().is_some() && ex_den.valuation().is_some() {
            break ex_num.div(&ex_den)?;
        }
        pad *= 2;
        if pad > 1 << 14 {
            return Err(CoreError::Other(
                "contiguous multiplier vanishes to very high order at the base point".into(),
            ));
        }
    };
    if ex.valuation() != Some(0) {
        return Err(CoreError::Other(
            "contiguous multiplier is singular at the base point".into(),
        ));
    }
    let lead = ex.leading_coeff().unwrap();
    if !lead.is_one() {
        return Err(CoreError::Other(format!(
            "contiguous multiplier takes value {} at the base point",
            fmt_rat(&lead)
        )));
    }
    let mut factors = base.factors.clone();
    factors.push((bipoly_from_parts(&a, &b), Rat::one()));
    factors.push((BiPoly::from_poly_x(&c), -Rat::one()));
    Ok(EvaluationRecord {
        id: format!("{}+({},{},{})", base.id, shift.k, shift.l, shift.m),
        type_triple: base.type_triple.clone(),
        params: target.clone(),
        covering_key: base.covering_key.clone(),
        constant: base.constant.clone(),
        factors,
        notes: format!(
            "derived from {} by the contiguous shift ({},{},{})",
            base.id, shift.k, shift.l, shift.m
        ),
    })
}

/// The rational multiplier of a derived record relative to its base: the
/// product of the appended integer-exponent factors.
pub fn derived_multiplier(derived: &EvaluationRecord, base: &EvaluationRecord) -> Result<CurveFunction> {
    let cov = base.covering()?;
    let curve = cov.curve().cloned();
    let mut acc = CurveFunction {
        curve: curve.clone(),
        f1: RatFun::constant(&derived.constant / &base.constant),
        f2: RatFun::zero(),
    };
    for (p, e) in derived.factors.iter().skip(base.factors.len()) {
        let f = CurveFunction::from_bipoly(curve.as_ref(), p)?;
        let n = crate::rat::to_i64(e)
            .ok_or_else(|| CoreError::Other("non-integer multiplier exponent".into()))?;
        acc = acc.mul(&f.pow_i(n)?);
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// Radical solution search
// ---------------------------------------------------------------------------

/// The functions of the principal-divisor tables, per curve.
pub fn table_function_strings(curve_key: &str) -> Vec<&'static str> {
    match curve_key {
        "E3" => vec![
            "xi",
            "1 + 33*x - 9*x^2",
            "1 - 9*xi + 54*x",
            "1 + 9*xi + 54*x",
            "1 + 9*x",
            "xi + 5*x",
            "1 + 21*xi - 117*x + 9*x*xi - 234*x^2",
            "1 - 21*xi - 117*x - 9*x*xi - 234*x^2",
        ],
        "E4" => vec![
            "x",
            "1 - 5*x",
            "25 + x",
            "1 - 125*x",
            "5*xi + 57*x",
            "-5*xi + 57*x",
            "1 + 5*xi + 10*x",
            "1 - 3*xi + 2*x",
            "4 + 21*xi + 41*x",
            "5 - 3*xi - 34*x",
            "1 - 15*x - 5*x^2",
            "1 - 40*x - 5*x^2",
            "5 - 7*xi - 45*x - 5*x^2",
            "5 + 18*xi - 80*x + 5*x^2",
            "1 - 7*xi + 15*x + 15*x^2",
            "4 - 7*xi - 30*x",
            "1 + 3*xi - 20*x",
            "1 - 8*xi + 22*x - 15*x^2",
            "4 - 35*xi - 101*x",
            "20 - 7*xi - 79*x",
            "1 + 50*x - 125*xi^2 + 450*x*xi - 500*x^2",
            "1 + 50*x - 125*xi^2 - 450*x*xi - 500*x^2",
            "25 - 570*xi + 248*x + xi^2 - 380*x^2",
            "4 + 95*xi + 83*x + 21*xi^2 - 475*x*xi + 40*x^2",
        ],
        "E5" => vec![
            "xi + 5*x",
            "xi - 5*x",
            "xi + 3*x",
            "xi - 3*x",
            "1 + xi + x",
            "1 - 2*xi + 6*x",
            "1 + 12*x + 16*x^2",
            "1 - 2*xi - 14*x",
            "1 - 28*x + 16*x^2",
            "1 + 8*xi - 28*x + 8*x*xi - 104*x^2",
        ],
        "E6" => vec![
            "xi",
            "1 - xi",
            "1 + xi",
            "1 + xi + 2*x",
            "1 - xi + 2*x",
            "1 + x - x^2",
            "1 - 4*x - x^2",
            "xi + 2*x + x^2",
            "1 + xi - 2*x",
            "1 - xi - 2*x",
        ],
        _ => vec![],
    }
}

pub fn table_functions(curve: &WeierstrassCurve) -> Result<Vec<CurveFunction>> {
    table_function_strings(&curve.label)
        .into_iter()
        .map(|s| CurveFunction::from_bipoly(Some(curve), &parse_bipoly(s)?))
        .collect()
}

/// Solve D = sum c_j div(f_j) over Q by Gaussian elimination on the joint
/// support; returns the exponents when solvable.
fn solve_in_table_span(
    divisors: &[QDivisor],
    target: &QDivisor,
) -> Option<Vec<Rat>> {
    use crate::elliptic::ClosedPoint;
    let mut support: Vec<ClosedPoint> = Vec::new();
    let mut add_support = |d: &QDivisor| {
        for (p, _) in d.iter() {
            if !support.contains(p) {
                support.push(p.clone());
            }
        }
    };
    for d in divisors {
        add_support(d);
    }
    add_support(target);
    let rows = support.len();
    let cols = divisors.len();
    // matrix [A | b]
    let mut m: Vec<Vec<Rat>> = Vec::with_capacity(rows);
    for p in &support {
        let mut row: Vec<Rat> = divisors.iter().map(|d| d.coeff(p)).collect();
        row.push(target.coeff(p));
        m.push(row);
    }
    // Gaussian elimination
    let mut pivot_row = 0usize;
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    for col in 0..cols {
        let mut sel = None;
        for r in pivot_row..rows {
            if !m[r][col].is_zero() {
                sel = Some(r);
                break;
            }
        }
        let Some(sel) = sel else { continue };
        m.swap(pivot_row, sel);
        let inv = m[pivot_row][col].clone().recip();
        for c in col..=cols {
            m[pivot_row][c] = &m[pivot_row][c] * &inv;
        }
        for r in 0..rows {
            if r != pivot_row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=cols {
                    let v = &m[r][c] - &(&f * &m[pivot_row][c]);
                    m[r][c] = v;
                }
            }
        }
        pivots.push((pivot_row, col));
        pivot_row += 1;
        if pivot_row == rows {
            break;
        }
    }
    // consistency
    for r in pivot_row..rows {
        if !m[r][cols].is_zero() {
            return None;
        }
    }
    let mut sol = vec![Rat::zero(); cols];
    for (r, c) in pivots {
        sol[c] = m[r][cols].clone();
    }
    Some(sol)
}

/// A radical solution candidate that matched one of the two local series.
#[derive(Clone, Debug)]
pub struct RadicalSolution {
    pub divisor: QDivisor,
    pub function: RadicalFunction,
    /// 0 = the 2F1 itself, 1 = the second local solution.
    pub which: usize,
}

/// For each candidate divisor, build a radical function with that divisor
/// from the curve's table functions and keep those whose base-point series
/// matches one of the two local hypergeometric solutions.
pub fn radical_solution_search(
    params: &HpgParams,
    cov: &Covering,
    scheme: &PullbackScheme,
    budget: usize,
    order: i64,
) -> Result<Vec<RadicalSolution>> {
    let curve = cov
        .curve()
        .cloned()
        .ok_or_else(|| CoreError::Other("search needs an elliptic covering".into()))?;
    let candidates = crate::darboux::candidate_divisors(scheme, &curve, budget)?;
    let funcs = table_functions(&curve)?;
    let divisors: Vec<QDivisor> = funcs
        .iter()
        .map(crate::curvefunc::principal_divisor)
        .collect::<Result<_>>()?;

    // local solutions at the base point, as (t-exponent, unit series)
    let inner = covering_expansion(cov, order + 2)?;
    let f1 = Series::compose(&gauss_series(params, order + 2)?, &inner)?;
    let sol1 = normalize_unit(&f1)?;
    let one_minus_c = Rat::one() - &params.c;
    let shifted = HpgParams::new(
        &params.a + &one_minus_c,
        &params.b + &one_minus_c,
        Rat::from(BigInt::from(2)) - &params.c,
    )?;
    let f2_tail = Series::compose(&gauss_series(&shifted, order + 2)?, &inner)?;
    // phi^(1-C) up to constant: t^(1-C) times the unit part of phi raised
    let inner_val = inner.valuation().unwrap();
    let inner_unit = inner.mul(&Series::monomial(Rat::one(), -inner_val, inner.ram()));
    let inner_unit = normalize_unit(&inner_unit)?;
    let phi_pow_unit = inner_unit.1.pow(&one_minus_c)?;
    let sol2_unit = phi_pow_unit.mul(&f2_tail);
    let sol2 = (
        &one_minus_c * Rat::from(BigInt::from(inner_val)) + sol2_unit_shift(&sol2_unit),
        normalize_unit(&sol2_unit)?.1,
    );

    let mut out = Vec::new();
    for cand in candidates {
        let Some(coeffs) = solve_in_table_span(&divisors, &cand) else {
            continue;
        };
        let mut radical = RadicalFunction::one(Some(&curve));
        for (f, e) in funcs.iter().zip(coeffs.iter()) {
            if !e.is_zero() {
                radical.push(f.clone(), e.clone());
            }
        }
        let ex = expand_radical_at_base(&radical, order + 2, XiBranch::Plus)?;
        let (shift_t, unit) = (ex.t_exp.clone(), normalize_series(&ex)?);
        for (which, sol) in [(0usize, (Rat::zero(), sol1.1.clone())), (1, sol2.clone())] {
            if shift_t != sol.0 {
                continue;
            }
            if unit
                .truncate(order + 1)
                .first_mismatch(&sol.1.truncate(order + 1))
                .is_none()
            {
                // normalize the stored constant so the unit part leads with 1
                out.push(RadicalSolution {
                    divisor: cand.clone(),
                    function: radical.clone(),
                    which,
                });
            }
        }
    }
    Ok(out)
}

fn sol2_unit_shift(s: &Series) -> Rat {
    match s.valuation() {
        Some(v) => Rat::new(BigInt::from(v), BigInt::from(s.ram())),
        None => Rat::zero(),
    }
}

/// Normalize a series to (valuation exponent, unit with leading coefficient 1).
fn normalize_unit(s: &Series) -> Result<(Rat, Series)> {
    let v = s
        .valuation()
        .ok_or_else(|| CoreError::Other("zero series".into()))?;
    let lead = s.leading_coeff().unwrap();
    let unit = s
        .mul(&Series::monomial(lead.recip(), -v, s.ram()));
    Ok((Rat::new(BigInt::from(v), BigInt::from(s.ram())), unit))
}

fn normalize_series(ex: &RadicalExpansion) -> Result<Series> {
    let lead = ex
        .unit
        .leading_coeff()
        .ok_or_else(|| CoreError::Other("zero expansion".into()))?;
    let v = ex.unit.valuation().unwrap();
    Ok(ex
        .unit
        .mul(&Series::monomial(lead.recip(), -v, ex.unit.ram())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn catalog_parses_and_validates() {
        let cat = Catalog::builtin();
        assert_eq!(cat.records.len(), 56);
        for rec in &cat.records {
            rec.validate().unwrap_or_else(|e| panic!("{}: {e}", rec.id));
        }
    }

    #[test]
    fn catalog_roundtrip_is_identity() {
        let cat = Catalog::builtin();
        let json = cat.to_json();
        let cat2 = Catalog::from_json(&json).unwrap();
        assert_eq!(cat.to_json(), cat2.to_json());
        // and printed polynomials reparse to the same values
        for (a, b) in cat.records.iter().zip(cat2.records.iter()) {
            assert_eq!(a.factors, b.factors);
            assert_eq!(a.params, b.params);
        }
    }

    #[test]
    fn verify_fptetra1_low_order() {
        let cat = Catalog::builtin();
        let rec = cat.find("fptetra1").unwrap();
        let rep = verify(rec, 2).unwrap();
        assert!(rep.ok);
        // both sides are 1 + x/2 + 5x^2/8
        let cov = rec.covering().unwrap();
        let inner = covering_expansion(&cov, 3).unwrap();
        let lhs = Series::compose(&gauss_series(&rec.params, 3).unwrap(), &inner).unwrap();
        assert_eq!(lhs.coeff_idx(0), Rat::one());
        assert_eq!(lhs.coeff_idx(1), rat(1, 2));
        assert_eq!(lhs.coeff_idx(2), rat(5, 8));
    }

    #[test]
    fn corrupted_exponent_is_caught() {
        let cat = Catalog::builtin();
        let mut rec = cat.find("fptetra1").unwrap().clone();
        rec.factors[0].1 = rat(-1, 2);
        let rep = verify(&rec, 3).unwrap();
        assert!(!rep.ok);
        assert_eq!(rep.mismatch_index, Some(1));
    }

    #[test]
    fn verify_one_record_per_covering_family() {
        let cat = Catalog::builtin();
        for id in [
            "fptetra2",
            "fpocta1",
            "fpocta2",
            "fpicosa1",
            "fpicosa3",
            "icosellipta",
            "icosellipta4",
            "icosellipta5",
            "icosellipta6",
            "icoselliptk6",
        ] {
            let rec = cat.find(id).unwrap();
            let rep = verify(rec, 6).unwrap();
            assert!(rep.ok, "{id} fails at order 6: {:?}", rep.mismatch_index);
        }
    }

    #[test]
    fn derive_fptetra1a_from_fptetra1() {
        let cat = Catalog::builtin();
        let base = cat.find("fptetra1").unwrap();
        let target = cat.find("fptetra1a").unwrap();
        let derived = derive_contiguous(&target.params, base).unwrap();
        let rep = verify(&derived, 12).unwrap();
        assert!(rep.ok);
        // the multiplier is (1+x)/(1+x/4)^2
        let mult = derived_multiplier(&derived, base).unwrap();
        let expected = CurveFunction::rational(RatFun::new(
            crate::bipoly::parse_poly_x("1 + x").unwrap(),
            crate::bipoly::parse_poly_x("1 + 1/2*x + 1/16*x^2").unwrap(),
        ));
        assert_eq!(mult.f1, expected.f1);
        assert!(mult.f2.is_zero());
    }

    #[test]
    fn derive_zero_shift_returns_base() {
        let cat = Catalog::builtin();
        let base = cat.find("fptetra1").unwrap();
        let derived = derive_contiguous(&base.params, base).unwrap();
        assert_eq!(derived.factors.len(), base.factors.len());
    }

    #[test]
    fn search_first_phi3_scheme() {
        let cat = Catalog::builtin();
        let rec = cat.find("icosellipta").unwrap();
        let cov = rec.covering().unwrap();
        let scheme = crate::darboux::pullback_exponents(
            &crate::hypergeom::riemann_scheme(&rec.params),
            &cov,
        )
        .unwrap();
        let sols = radical_solution_search(&rec.params, &cov, &scheme, 0, 8).unwrap();
        assert_eq!(sols.len(), 2, "expected both local solutions");
        let whiches: Vec<usize> = sols.iter().map(|s| s.which).collect();
        assert!(whiches.contains(&0) && whiches.contains(&1));
        // the which=0 divisor is (2/5) O - (1/10)(R1+...+R4)
        let d0 = &sols.iter().find(|s| s.which == 0).unwrap().divisor;
        assert_eq!(
            d0.coeff(&crate::elliptic::ClosedPoint::Infinity),
            rat(2, 5)
        );
    }

    #[test]
    fn search_second_phi3_scheme_selects_printed_points() {
        let cat = Catalog::builtin();
        let rec = cat.find("icoselliptk3").unwrap();
        let cov = rec.covering().unwrap();
        let curve = cov.curve().cloned().unwrap();
        let scheme = crate::darboux::pullback_exponents(
            &crate::hypergeom::riemann_scheme(&rec.params),
            &cov,
        )
        .unwrap();
        let cands = crate::darboux::candidate_divisors(&scheme, &curve, 1).unwrap();
        assert_eq!(cands.len(), 8, "expected 8 candidate divisors");
        let sols = radical_solution_search(&rec.params, &cov, &scheme, 1, 8).unwrap();
        assert_eq!(sols.len(), 2);
        use crate::elliptic::ClosedPoint;
        let x_point = ClosedPoint::Rational(rat(-1, 9), rat(-5, 9));
        let y_point = ClosedPoint::Rational(rat(1, 1), rat(-5, 1));
        let d0 = &sols.iter().find(|s| s.which == 0).unwrap().divisor;
        let d1 = &sols.iter().find(|s| s.which == 1).unwrap().divisor;
        assert_eq!(d0.coeff(&x_point), Rat::one(), "X = (-1/9,-5/9): {d0}");
        assert_eq!(d1.coeff(&y_point), Rat::one(), "Y = (1,-5): {d1}");
    }
}

