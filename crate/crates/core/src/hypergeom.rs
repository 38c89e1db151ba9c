//! Gauss hypergeometric series, the (A,B,C) <-> (e0,e1,einf) dictionary,
//! Riemann schemes and Schwartz-type classification.

use crate::error::{CoreError, Result};
use crate::poly::Poly;
use crate::rat::{fmt_rat, is_integer, rat, Rat};
use crate::ratfun::RatFun;
use crate::series::Series;
use num::{BigInt, One, Signed, Zero};
use std::fmt;

/// Parameters (A, B; C) of 2F1. C must not be zero or a negative integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HpgParams {
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
}

impl HpgParams {
    pub fn new(a: Rat, b: Rat, c: Rat) -> Result<Self> {
        if is_integer(&c) && !c.is_positive() {
            return Err(CoreError::BadParameter(format!(
                "C = {} is zero or a negative integer",
                fmt_rat(&c)
            )));
        }
        Ok(HpgParams { a, b, c })
    }

    pub fn swapped(&self) -> HpgParams {
        HpgParams {
            a: self.b.clone(),
            b: self.a.clone(),
            c: self.c.clone(),
        }
    }
}

impl fmt::Display for HpgParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}; {})",
            fmt_rat(&self.a),
            fmt_rat(&self.b),
            fmt_rat(&self.c)
        )
    }
}

/// Local exponent differences (e0, e1, einf) at z = 0, 1, infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentDiffs {
    pub e0: Rat,
    pub e1: Rat,
    pub einf: Rat,
}

impl ExponentDiffs {
    pub fn new(e0: Rat, e1: Rat, einf: Rat) -> Self {
        ExponentDiffs { e0, e1, einf }
    }

    pub fn as_array(&self) -> [Rat; 3] {
        [self.e0.clone(), self.e1.clone(), self.einf.clone()]
    }
}

impl fmt::Display for ExponentDiffs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {})",
            fmt_rat(&self.e0),
            fmt_rat(&self.e1),
            fmt_rat(&self.einf)
        )
    }
}

/// e0 = 1-C, e1 = C-A-B, einf = A-B.
pub fn exponent_diffs(p: &HpgParams) -> ExponentDiffs {
    ExponentDiffs {
        e0: Rat::one() - &p.c,
        e1: &p.c - &p.a - &p.b,
        einf: &p.a - &p.b,
    }
}

/// The Riemann scheme: ordered exponent pairs at 0, 1, infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RiemannScheme {
    pub at_zero: (Rat, Rat),
    pub at_one: (Rat, Rat),
    pub at_inf: (Rat, Rat),
}

impl RiemannScheme {
    /// Fuchs relation: the six exponents sum to 1.
    pub fn fuchs_sum(&self) -> Rat {
        &self.at_zero.0
            + &self.at_zero.1
            + &self.at_one.0
            + &self.at_one.1
            + &self.at_inf.0
            + &self.at_inf.1
    }
}

pub fn riemann_scheme(p: &HpgParams) -> RiemannScheme {
    RiemannScheme {
        at_zero: (Rat::zero(), Rat::one() - &p.c),
        at_one: (Rat::zero(), &p.c - &p.a - &p.b),
        at_inf: (p.a.clone(), p.b.clone()),
    }
}

/// Gauss series 1 + (AB/C) z + ... through z^order (inclusive).
pub fn gauss_series(p: &HpgParams, order: i64) -> Result<Series> {
    if is_integer(&p.c) && !p.c.is_positive() {
        return Err(CoreError::BadParameter(format!(
            "C = {} is zero or a negative integer",
            fmt_rat(&p.c)
        )));
    }
    if order < 0 {
        return Err(CoreError::BadParameter("negative order".into()));
    }
    let mut coeffs = Vec::with_capacity(order as usize + 1);
    let mut c = Rat::one();
    coeffs.push(c.clone());
    for k in 0..order {
        let kq = Rat::from(BigInt::from(k));
        let num = (&p.a + &kq) * (&p.b + &kq);
        let den = (&p.c + &kq) * (&kq + Rat::one());
        c = c * num / den;
        coeffs.push(c.clone());
    }
    Ok(Series::new(1, 0, coeffs, order + 1))
}

/// The second solution z^(1-C) 2F1(A+1-C, B+1-C; 2-C; z) as a Puiseux series
/// whose ramification hosts the exponent 1-C. Fails when 2-C is a
/// non-positive integer; C = 1 collapses both solutions (degenerate).
pub fn second_solution_series(p: &HpgParams, order: i64) -> Result<Series> {
    let one_minus_c = Rat::one() - &p.c;
    if one_minus_c.is_zero() {
        return Err(CoreError::BadParameter(
            "C = 1: degenerate (logarithmic) second solution".into(),
        ));
    }
    let shifted = HpgParams::new(&p.a + &one_minus_c, &p.b + &one_minus_c, rat(2, 1) - &p.c)?;
    let f = gauss_series(&shifted, order)?;
    let den: i64 = one_minus_c
        .denom()
        .to_string()
        .parse()
        .map_err(|_| CoreError::Other("exponent denominator too large".into()))?;
    let num: i64 = one_minus_c
        .numer()
        .to_string()
        .parse()
        .map_err(|_| CoreError::Other("exponent numerator too large".into()))?;
    let prefactor = Series::monomial(Rat::one(), num, den);
    Ok(f.mul(&prefactor))
}

/// Potential r(z) of the normalized form y'' = r(z) y:
/// r = (e1^2-1)/(4(z-1)^2) + (e0^2-1)/(4 z^2) + (1+einf^2-e0^2-e1^2)/(4 z (z-1)).
pub fn normalized_potential(e: &ExponentDiffs) -> RatFun {
    let one = Rat::one();
    let q = |r: &Rat| r * r;
    let four = rat(4, 1);
    let z = RatFun::z();
    let zm1 = &z - &RatFun::one();
    let t1 = &RatFun::constant((q(&e.e1) - &one) / &four) / &(&zm1 * &zm1);
    let t2 = &RatFun::constant((q(&e.e0) - &one) / &four) / &(&z * &z);
    let t3 = &RatFun::constant((&one + q(&e.einf) - q(&e.e0) - q(&e.e1)) / &four) / &(&z * &zm1);
    &(&t1 + &t2) + &t3
}

// ---------------------------------------------------------------------------
// Schwartz classification
// ---------------------------------------------------------------------------

/// Schwartz type of a hypergeometric equation with rational exponent
/// differences: one of the 14 main representatives, the cyclic or dihedral
/// families, or non-algebraic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SchwartzType {
    Cyclic,
    Dihedral,
    /// index into [`MAIN_REPRESENTATIVES`]
    Main(usize),
    NonAlgebraic,
}

/// The 14 main representatives: 2 tetrahedral, 2 octahedral, 10 icosahedral.
pub const MAIN_REPRESENTATIVES: [(&str, [(i64, i64); 3]); 14] = [
    ("tetrahedral (1/2,1/3,1/3)", [(1, 2), (1, 3), (1, 3)]),
    ("tetrahedral (1/3,1/3,2/3)", [(1, 3), (1, 3), (2, 3)]),
    ("octahedral (1/2,1/3,1/4)", [(1, 2), (1, 3), (1, 4)]),
    ("octahedral (2/3,1/4,1/4)", [(2, 3), (1, 4), (1, 4)]),
    ("icosahedral (1/2,1/3,1/5)", [(1, 2), (1, 3), (1, 5)]),
    ("icosahedral (1/2,1/3,2/5)", [(1, 2), (1, 3), (2, 5)]),
    ("icosahedral (1/2,1/5,2/5)", [(1, 2), (1, 5), (2, 5)]),
    ("icosahedral (1/3,1/3,2/5)", [(1, 3), (1, 3), (2, 5)]),
    ("icosahedral (1/3,2/3,1/5)", [(1, 3), (2, 3), (1, 5)]),
    ("icosahedral (2/3,1/5,1/5)", [(2, 3), (1, 5), (1, 5)]),
    ("icosahedral (1/3,2/5,3/5)", [(1, 3), (2, 5), (3, 5)]),
    ("icosahedral (1/3,1/5,3/5)", [(1, 3), (1, 5), (3, 5)]),
    ("icosahedral (1/5,1/5,4/5)", [(1, 5), (1, 5), (4, 5)]),
    ("icosahedral (2/5,2/5,2/5)", [(2, 5), (2, 5), (2, 5)]),
];

pub fn representative_diffs(idx: usize) -> ExponentDiffs {
    let (_, t) = MAIN_REPRESENTATIVES[idx];
    ExponentDiffs::new(rat(t[0].0, t[0].1), rat(t[1].0, t[1].1), rat(t[2].0, t[2].1))
}

impl fmt::Display for SchwartzType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SchwartzType::Cyclic => write!(f, "cyclic"),
            SchwartzType::Dihedral => write!(f, "dihedral"),
            SchwartzType::Main(i) => write!(f, "{}", MAIN_REPRESENTATIVES[*i].0),
            SchwartzType::NonAlgebraic => write!(f, "non-algebraic"),
        }
    }
}

/// Are two signed triples related by componentwise integer shifts with even
/// total shift, under some permutation and sign flips?
fn contiguous_equations(target: &[Rat; 3], rep: &[Rat; 3]) -> bool {
    const PERMS: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    for perm in PERMS {
        for sign_mask in 0..8u32 {
            let mut total = Rat::zero();
            let mut ok = true;
            for i in 0..3 {
                let s = if sign_mask & (1 << i) != 0 {
                    -target[perm[i]].clone()
                } else {
                    target[perm[i]].clone()
                };
                let d = &rep[i] - &s;
                if !is_integer(&d) {
                    ok = false;
                    break;
                }
                total += d;
            }
            if ok && is_integer(&(total / rat(2, 1))) {
                return true;
            }
        }
    }
    false
}

/// Classify by exponent differences, invariant under permutation, sign flips
/// and even-sum integer shifts. Falls through to the cyclic and dihedral
/// families and then to NonAlgebraic.
pub fn classify_schwartz(e: &ExponentDiffs) -> SchwartzType {
    let t = e.as_array();
    for (i, (_, rep)) in MAIN_REPRESENTATIVES.iter().enumerate() {
        let rep_r = [
            rat(rep[0].0, rep[0].1),
            rat(rep[1].0, rep[1].1),
            rat(rep[2].0, rep[2].1),
        ];
        if contiguous_equations(&t, &rep_r) {
            return SchwartzType::Main(i);
        }
    }
    // cyclic family (1, q, q): one signed entry shifts to 1, the other two
    // agree mod 1 after sign choices, with even total shift
    for i in 0..3 {
        if !is_integer(&t[i]) {
            continue;
        }
        let (u, v) = (&t[(i + 1) % 3], &t[(i + 2) % 3]);
        for su in [1i64, -1] {
            for sv in [1i64, -1] {
                for sm in [1i64, -1] {
                    let du = rat(su, 1) * u;
                    let dv = rat(sv, 1) * v;
                    if !is_integer(&(&du - &dv)) {
                        continue;
                    }
                    let total = rat(1, 1) - rat(sm, 1) * &t[i] + du - dv;
                    if is_integer(&(total / rat(2, 1))) {
                        return SchwartzType::Cyclic;
                    }
                }
            }
        }
    }
    // dihedral family (1/2, 1/2, q): a sign flip on a half-odd entry absorbs
    // any shift parity, so two half-odd entries plus a non-integer third
    // suffice
    let halfish = |r: &Rat| !is_integer(r) && is_integer(&(r * rat(2, 1)));
    for i in 0..3 {
        let (u, v, w) = (&t[i], &t[(i + 1) % 3], &t[(i + 2) % 3]);
        if halfish(u) && halfish(v) && !is_integer(w) {
            return SchwartzType::Dihedral;
        }
    }
    SchwartzType::NonAlgebraic
}

/// 2F1(p) composed with a polynomial argument vanishing at 0.
pub fn gauss_series_in(p: &HpgParams, arg: &Poly, order: i64) -> Result<Series> {
    let outer = gauss_series(p, order)?;
    let inner = Series::from_poly(arg).truncate(order + 1);
    Series::compose(&outer, &inner)
}

/// Coefficient recurrence c_{k+1}/c_k = (A+k)(B+k)/((C+k)(1+k)), term by term.
pub fn satisfies_gauss_recurrence(p: &HpgParams, s: &Series, upto: i64) -> bool {
    for k in 0..upto {
        let kq = Rat::from(BigInt::from(k));
        let lhs = s.coeff_idx(k + 1) * (&p.c + &kq) * (&kq + Rat::one());
        let rhs = s.coeff_idx(k) * (&p.a + &kq) * (&p.b + &kq);
        if lhs != rhs {
            return false;
        }
    }
    true
}
