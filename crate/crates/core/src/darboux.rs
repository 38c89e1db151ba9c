//! Covering maps onto P^1: the standard Darboux coverings, the elliptic
//! coverings phi3..phi6, Klein pull-back data, branching partitions, the
//! Hurwitz formula, fiber products, the genus table, pulled-back local
//! exponents and candidate divisors for radical solutions.

use crate::bipoly::parse_bipoly;
use crate::curvefunc::{principal_divisor, CurveFunction, P1Point, RadicalFunction};
use crate::elliptic::{class_sum, ClosedPoint, CurvePoint, QDivisor, WeierstrassCurve};
use crate::error::{CoreError, Result};
use crate::hypergeom::RiemannScheme;
use crate::poly::Poly;
use crate::rat::{is_integer, rat, Rat};
use crate::ratfun::RatFun;
use num::{BigInt, One, Signed, Zero};

// ---------------------------------------------------------------------------
// Coverings
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub enum CoveringBody {
    Genus0(RatFun),
    Elliptic {
        curve: WeierstrassCurve,
        map: RadicalFunction,
    },
}

#[derive(Clone, Debug)]
pub struct Covering {
    pub key: String,
    pub degree: i64,
    pub body: CoveringBody,
    /// For the standard Darboux coverings: the denominator of the local
    /// exponent difference sitting over 0, 1, infinity.
    pub placement: Option<[i64; 3]>,
}

impl Covering {
    pub fn curve(&self) -> Option<&WeierstrassCurve> {
        match &self.body {
            CoveringBody::Genus0(_) => None,
            CoveringBody::Elliptic { curve, .. } => Some(curve),
        }
    }

    /// The covering as a single function-field element.
    pub fn as_function(&self) -> Result<CurveFunction> {
        match &self.body {
            CoveringBody::Genus0(r) => Ok(CurveFunction::rational(r.clone())),
            CoveringBody::Elliptic { map, .. } => map.as_curve_function(),
        }
    }
}

fn rf(num: &str, den: &str) -> RatFun {
    let n = crate::bipoly::parse_poly_x(num).expect("covering numerator");
    let d = crate::bipoly::parse_poly_x(den).expect("covering denominator");
    RatFun::new(n, d)
}

fn genus0(key: &str, degree: i64, placement: Option<[i64; 3]>, map: RatFun) -> Covering {
    Covering {
        key: key.to_string(),
        degree,
        body: CoveringBody::Genus0(map),
        placement,
    }
}

fn elliptic_map(
    key: &str,
    curve_key: &str,
    constant: Rat,
    factors: &[(&str, i64)],
) -> Covering {
    let curve = WeierstrassCurve::by_key(curve_key).expect("curve key");
    let mut map = RadicalFunction::one(Some(&curve));
    map.constant = constant;
    for (s, e) in factors {
        let f = CurveFunction::from_bipoly(Some(&curve), &parse_bipoly(s).expect("factor"))
            .expect("factor reduces");
        map.push(f, rat(*e, 1));
    }
    Covering {
        key: key.to_string(),
        degree: 12,
        body: CoveringBody::Elliptic { curve, map },
        placement: None,
    }
}

/// Covering registry. Standard keys carry the denominators of the standard
/// type over (0, 1, infinity); "octa24" and "icosa60" are produced by the
/// x -> x^k substitution rule from lower-degree standard coverings.
pub fn covering(key: &str) -> Result<Covering> {
    let c = match key {
        "tetra4" => genus0(
            key,
            4,
            Some([3, 2, 3]),
            rf("x^4 + 12*x^3 + 48*x^2 + 64*x", "32*x^3 - 48*x^2 + 24*x - 4"),
        ),
        "tetra4b" => genus0(
            key,
            4,
            None,
            rf("x^4 + 6*x^3 + 12*x^2 + 8*x", "8*x^3 + 12*x^2 + 6*x + 1"),
        ),
        "tetra6" => genus0(
            key,
            6,
            Some([3, 2, 3]),
            {
                let a = crate::bipoly::parse_poly_x("x^2 - 6*x - 3").unwrap().pow(3);
                let b = crate::bipoly::parse_poly_x("x^2 + 6*x - 3").unwrap().pow(3);
                RatFun::new(a, b)
            },
        ),
        "tetra12" => {
            // substitution x -> x^3 into tetra4
            let base = covering("tetra4")?;
            let map = match base.body {
                CoveringBody::Genus0(m) => m,
                _ => unreachable!(),
            };
            let cube = RatFun::from_poly(Poly::monomial(Rat::one(), 3));
            genus0(key, 12, Some([3, 2, 3]), map.compose(&cube))
        }
        "octa6" => genus0(key, 6, Some([4, 2, 3]), {
            let num = &crate::bipoly::parse_poly_x("108*x").unwrap()
                * &crate::bipoly::parse_poly_x("x - 1").unwrap().pow(4);
            let den = crate::bipoly::parse_poly_x("x^2 + 14*x + 1").unwrap().pow(3);
            RatFun::new(num, den)
        }),
        "octa6b" => genus0(key, 6, None, {
            let num = &crate::bipoly::parse_poly_x("27*x").unwrap()
                * &crate::bipoly::parse_poly_x("x + 1").unwrap().pow(4);
            let den = crate::bipoly::parse_poly_x("2*x^2 + 8*x + 2")
                .unwrap()
                .pow(3)
                .scale(&rat(1, 4));
            RatFun::new(num, den)
        }),
        "octa8" => genus0(key, 8, Some([4, 2, 3]), {
            let num = crate::bipoly::parse_poly_x("x^2 + 20*x - 8").unwrap().pow(4);
            let den = &(&crate::bipoly::parse_poly_x("256*x").unwrap()
                * &crate::bipoly::parse_poly_x("x + 1").unwrap().pow(3))
                * &crate::bipoly::parse_poly_x("x - 8").unwrap().pow(3);
            RatFun::new(num, den)
        }),
        "octa12" => genus0(key, 12, Some([4, 2, 3]), {
            let num = &(&crate::bipoly::parse_poly_x("27").unwrap()
                * &crate::bipoly::parse_poly_x("x - 1").unwrap().pow(4))
                * &crate::bipoly::parse_poly_x("x^2 + 6*x + 1").unwrap().pow(4);
            let den = &crate::bipoly::parse_poly_x("x^2 - 10*x + 1").unwrap().pow(3)
                * &crate::bipoly::parse_poly_x("3*x^2 + 2*x + 3").unwrap().pow(3);
            RatFun::new(num, den)
        }),
        "octa24" => {
            let base = covering("octa12")?;
            let map = match base.body {
                CoveringBody::Genus0(m) => m,
                _ => unreachable!(),
            };
            let sq = RatFun::from_poly(Poly::monomial(Rat::one(), 2));
            genus0(key, 24, Some([4, 2, 3]), map.compose(&sq))
        }
        "phi1" | "icosa12" => genus0("icosa12", 12, Some([5, 2, 3]), {
            let num = &crate::bipoly::parse_poly_x("1728*x").unwrap()
                * &crate::bipoly::parse_poly_x("x^2 - 11*x - 1").unwrap().pow(5);
            let den = crate::bipoly::parse_poly_x("x^4 + 228*x^3 + 494*x^2 - 228*x + 1")
                .unwrap()
                .pow(3);
            RatFun::new(num, den)
        }),
        "icosa20" => genus0(key, 20, Some([5, 2, 3]), {
            let num = crate::bipoly::parse_poly_x("64").unwrap().pow(1).scale(&Rat::one())
                .coeffs()
                .to_vec();
            let _ = num;
            let num = crate::bipoly::parse_poly_x("x^4 + 55*x^3 - 165*x^2 - 275*x + 25")
                .unwrap()
                .pow(5)
                .scale(&rat(64, 1));
            let den = &(&(&crate::bipoly::parse_poly_x("125*x").unwrap()
                * &crate::bipoly::parse_poly_x("x^2 + 5*x + 40").unwrap().pow(3))
                * &crate::bipoly::parse_poly_x("x^2 - 40*x - 5").unwrap().pow(3))
                * &crate::bipoly::parse_poly_x("8*x^2 - 5*x + 5").unwrap().pow(3);
            RatFun::new(num, den)
        }),
        "icosa30" => genus0(key, 30, Some([5, 2, 3]), {
            let num = &(&crate::bipoly::parse_poly_x("x^2 + 2*x + 5").unwrap().pow(5)
                * &crate::bipoly::parse_poly_x("x^4 + 20*x^3 - 210*x^2 + 100*x + 25")
                    .unwrap()
                    .pow(5))
                * &crate::bipoly::parse_poly_x("27").unwrap();
            let den = &(&crate::bipoly::parse_poly_x("3*x^2 - 10*x + 15").unwrap().pow(3)
                * &crate::bipoly::parse_poly_x("x^4 + 70*x^2 + 25").unwrap().pow(3))
                * &crate::bipoly::parse_poly_x("x^4 - 60*x^3 - 370*x^2 - 300*x + 25")
                    .unwrap()
                    .pow(3);
            RatFun::new(num, den)
        }),
        "icosa60" => {
            let base = covering("icosa12")?;
            let map = match base.body {
                CoveringBody::Genus0(m) => m,
                _ => unreachable!(),
            };
            let p5 = RatFun::from_poly(Poly::monomial(Rat::one(), 5));
            genus0(key, 60, Some([5, 2, 3]), map.compose(&p5))
        }
        "phi2" => genus0(key, 12, None, {
            let num = &crate::bipoly::parse_poly_x("64*x").unwrap()
                * &crate::bipoly::parse_poly_x("x^2 - x - 1").unwrap().pow(5);
            let den = &crate::bipoly::parse_poly_x("x^2 - 1").unwrap()
                * &crate::bipoly::parse_poly_x("x^2 + 4*x - 1").unwrap().pow(5);
            RatFun::new(num, den)
        }),
        "phi3" => elliptic_map(
            key,
            "E3",
            rat(144, 1),
            &[
                ("xi", 1),
                ("1 + 33*x - 9*x^2", 2),
                ("1 - 9*xi + 54*x", 1),
                ("1 + 21*xi - 117*x + 9*x*xi - 234*x^2", -3),
            ],
        ),
        "phi4" => elliptic_map(
            key,
            "E4",
            rat(432, 1),
            &[
                ("x", 1),
                ("1 - 7/5*xi - 9*x - x^2", 5),
                ("1 + 50*x - 125*xi^2 + 450*x*xi - 500*x^2", 1),
                ("5*xi + 57*x", -1),
                ("1 + 18/5*xi - 16*x + x^2", -5),
                ("1 + 50*x - 125*xi^2 - 450*x*xi - 500*x^2", -1),
            ],
        ),
        "phi5" => elliptic_map(
            key,
            "E5",
            rat(-54, 1),
            &[
                ("xi + 5*x", 3),
                ("1 - 2*xi + 6*x", 5),
                ("1 - 16*x^2", -1),
                ("xi - 5*x", -2),
                ("1 - 2*xi - 14*x", -5),
            ],
        ),
        "phi6" => elliptic_map(
            key,
            "E6",
            rat(16, 1),
            &[
                ("xi", 1),
                ("1 + x - x^2", 2),
                ("1 - xi", 2),
                ("1 + xi + 2*x", -1),
                ("1 + xi - 2*x", -5),
            ],
        ),
        other => return Err(CoreError::UnknownKey(other.to_string())),
    };
    Ok(c)
}

// ---------------------------------------------------------------------------
// Branching data
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaseValue {
    Zero,
    One,
    Infinity,
}

impl BaseValue {
    pub const ALL: [BaseValue; 3] = [BaseValue::Zero, BaseValue::One, BaseValue::Infinity];

    pub fn index(&self) -> usize {
        match self {
            BaseValue::Zero => 0,
            BaseValue::One => 1,
            BaseValue::Infinity => 2,
        }
    }
}

impl std::fmt::Display for BaseValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BaseValue::Zero => write!(f, "0"),
            BaseValue::One => write!(f, "1"),
            BaseValue::Infinity => write!(f, "inf"),
        }
    }
}

/// Branching partition above a base value: the multiset of branching indices,
/// sorted descending; sums to the covering degree.
pub fn branching_data(c: &Covering, value: BaseValue) -> Result<Vec<i64>> {
    match &c.body {
        CoveringBody::Genus0(map) => {
            let d = c.degree;
            let poly = match value {
                BaseValue::Zero => map.num().clone(),
                BaseValue::One => map.num() - map.den(),
                BaseValue::Infinity => map.den().clone(),
            };
            let mut parts = Vec::new();
            for (p, m) in poly.squarefree_decomposition() {
                for _ in 0..p.deg_i() {
                    parts.push(m as i64);
                }
            }
            let deficit = d - poly.deg_i();
            if deficit > 0 {
                parts.push(deficit);
            }
            let total: i64 = parts.iter().sum();
            if total != d {
                return Err(CoreError::InconsistentBranching(format!(
                    "branching over {value} sums to {total}, degree is {d}"
                )));
            }
            parts.sort_unstable_by(|a, b| b.cmp(a));
            Ok(parts)
        }
        CoveringBody::Elliptic { .. } => {
            let f = c.as_function()?;
            let div_points = |d: &QDivisor, positive: bool| -> Vec<i64> {
                let mut parts = Vec::new();
                for (p, coeff) in d.branch_spread() {
                    let n = crate::rat::to_i64(&coeff).expect("integer divisor");
                    if positive && n > 0 {
                        for _ in 0..p.degree() {
                            parts.push(n);
                        }
                    }
                    if !positive && n < 0 {
                        for _ in 0..p.degree() {
                            parts.push(-n);
                        }
                    }
                }
                parts.sort_unstable_by(|a, b| b.cmp(a));
                parts
            };
            let parts = match value {
                BaseValue::Zero => div_points(&principal_divisor(&f)?, true),
                BaseValue::Infinity => div_points(&principal_divisor(&f)?, false),
                BaseValue::One => {
                    let one = CurveFunction::constant(Rat::one());
                    div_points(&principal_divisor(&one.sub(&f))?, true)
                }
            };
            let total: i64 = parts.iter().sum();
            if total != c.degree {
                return Err(CoreError::InconsistentBranching(format!(
                    "elliptic branching over {value} sums to {total}, degree is {}",
                    c.degree
                )));
            }
            Ok(parts)
        }
    }
}

/// Branching partition of a genus-0 covering above an arbitrary finite
/// value; a non-critical value yields the all-ones partition.
pub fn branching_data_at(c: &Covering, value: &Rat) -> Result<Vec<i64>> {
    match &c.body {
        CoveringBody::Genus0(map) => {
            let poly = map.num() - &map.den().scale(value);
            let mut parts = Vec::new();
            for (p, m) in poly.squarefree_decomposition() {
                for _ in 0..p.deg_i() {
                    parts.push(m as i64);
                }
            }
            let deficit = c.degree - poly.deg_i();
            if deficit > 0 {
                parts.push(deficit);
            }
            parts.sort_unstable_by(|a, b| b.cmp(a));
            Ok(parts)
        }
        CoveringBody::Elliptic { .. } => Err(CoreError::Other(
            "generic-value branching is implemented for genus-0 coverings".into(),
        )),
    }
}

/// Ramification lemma check at one critical value of a standard covering:
/// every branching index is the exponent denominator k or 1, with at most
/// two unramified points (the two branch points of the cyclic factor map
/// x -> x^(|G|/m); the naive count floor(m/k) overstates the k-points
/// whenever those two land in a fiber with k | m).
pub fn check_dramifico(c: &Covering, value: BaseValue) -> Result<bool> {
    let placement = c
        .placement
        .ok_or_else(|| CoreError::Other(format!("{} is not a standard covering", c.key)))?;
    let k = placement[value.index()];
    let parts = branching_data(c, value)?;
    if k == 1 {
        return Ok(parts.iter().all(|&r| r == 1));
    }
    let ones = parts.iter().filter(|&&r| r == 1).count();
    Ok(parts.iter().all(|&r| r == k || r == 1) && ones <= 2)
}

/// Genus from the Hurwitz formula:
/// 2g - 2 = deg (2 g_base - 2) + sum (r_P - 1).
pub fn hurwitz_genus(degree: i64, base_genus: i64, branchings: &[Vec<i64>]) -> Result<i64> {
    let mut ram = 0i64;
    for parts in branchings {
        let total: i64 = parts.iter().sum();
        if total != degree {
            return Err(CoreError::InconsistentBranching(format!(
                "partition sums to {total}, degree is {degree}"
            )));
        }
        ram += parts.iter().map(|r| r - 1).sum::<i64>();
    }
    let two_g_minus_2 = (2 * base_genus - 2) * degree + ram;
    if two_g_minus_2 % 2 != 0 {
        return Err(CoreError::InconsistentBranching(
            "odd total ramification".into(),
        ));
    }
    let g = (two_g_minus_2 + 2) / 2;
    if g < 0 {
        return Err(CoreError::InconsistentBranching("negative genus".into()));
    }
    Ok(g)
}

/// Branching of the fiber-product projection over one shared critical value:
/// a psi-point of index r against a phi-fiber {a_i} yields, for each a_i,
/// gcd(a_i, r) points of index lcm(a_i, r)/r. One partition per psi-point,
/// each summing to deg(phi).
pub fn fiber_product_branching(psi_parts: &[i64], phi_parts: &[i64]) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for &r in psi_parts {
        let mut fiber = Vec::new();
        for &a in phi_parts {
            let g = crate::rat::gcd_i64(a, r);
            let idx = a / g; // lcm(a, r)/r
            for _ in 0..g {
                fiber.push(idx);
            }
        }
        fiber.sort_unstable_by(|a, b| b.cmp(a));
        out.push(fiber);
    }
    out
}

// ---------------------------------------------------------------------------
// Klein pull-back data and the genus table
// ---------------------------------------------------------------------------

/// Branching of the Klein covering of a Schwartz type over the three
/// critical values of its standard equation, in the (0, 1, inf) placement of
/// the standard coverings (n @ 0, 2 @ 1, 3 @ inf).
#[derive(Clone, Debug)]
pub struct KleinData {
    pub type_index: usize,
    pub degree: i64,
    pub branching: [Vec<i64>; 3],
    /// Explicit rational map, when one is on record for the type.
    pub map: Option<RatFun>,
}

pub fn klein_data(type_index: usize) -> KleinData {
    let (degree, branching, map): (i64, [Vec<i64>; 3], Option<RatFun>) = match type_index {
        0 | 2 | 4 => (1, [vec![1], vec![1], vec![1]], None),
        1 => (2, [vec![1, 1], vec![2], vec![2]], None),
        3 => (2, [vec![1, 1], vec![2], vec![2]], None),
        5 => (
            7,
            [vec![5, 2], vec![2, 2, 2, 1], vec![3, 3, 1]],
            Some({
                let num = &Poly::monomial(Rat::one(), 2)
                    * &crate::bipoly::parse_poly_x("189 - 64*x").unwrap().pow(5);
                let den = crate::bipoly::parse_poly_x("3584*x^2 + 2457*x - 2916")
                    .unwrap()
                    .pow(3);
                RatFun::new(num, den)
            }),
        ),
        6 => (3, [vec![2, 1], vec![2, 1], vec![3]], None),
        7 => (2, [vec![2], vec![2], vec![1, 1]], None),
        8 => (
            6,
            [vec![5, 1], vec![2, 2, 2], vec![3, 2, 1]],
            Some({
                let num = &crate::bipoly::parse_poly_x("4*x").unwrap()
                    * &crate::bipoly::parse_poly_x("25*x - 9").unwrap().pow(5);
                let den = &(&crate::bipoly::parse_poly_x("27").unwrap()
                    * &crate::bipoly::parse_poly_x("x - 1").unwrap())
                    * &crate::bipoly::parse_poly_x("125*x + 3").unwrap().pow(3);
                RatFun::new(num, den)
            }),
        ),
        9 => (2, [vec![1, 1], vec![2], vec![2]], None),
        10 => (
            10,
            [vec![5, 3, 2], vec![2, 2, 2, 2, 2], vec![3, 3, 3, 1]],
            Some({
                let num = &(&crate::bipoly::parse_poly_x("3125*x^2").unwrap()
                    * &crate::bipoly::parse_poly_x("x - 1").unwrap().pow(3))
                    * &crate::bipoly::parse_poly_x("5*x + 27").unwrap().pow(5);
                let den = crate::bipoly::parse_poly_x("625*x^3 - 2875*x^2 + 675*x - 729")
                    .unwrap()
                    .pow(3)
                    .scale(&rat(4, 1));
                RatFun::new(num, den)
            }),
        ),
        11 => (4, [vec![1, 3], vec![2, 2], vec![3, 1]], None),
        12 => (6, [vec![4, 1, 1], vec![2, 2, 2], vec![3, 3]], None),
        13 => (6, [vec![2, 2, 2], vec![2, 2, 2], vec![3, 3]], None),
        _ => panic!("type index out of range"),
    };
    KleinData {
        type_index,
        degree,
        branching,
        map,
    }
}

/// The four Darboux covering keys of the monodromy group of a type.
pub fn group_covering_keys(type_index: usize) -> [&'static str; 4] {
    match type_index {
        0 | 1 => ["tetra4", "tetra4", "tetra6", "tetra12"],
        2 | 3 => ["octa6", "octa8", "octa12", "octa24"],
        _ => ["icosa12", "icosa20", "icosa30", "icosa60"],
    }
}

/// Genus of the Darboux curve of a type for each of the four covering
/// degrees, from fiber-product branching and the Hurwitz formula.
pub fn darboux_genera(type_index: usize) -> Result<[i64; 4]> {
    let klein = klein_data(type_index);
    let mut out = [0i64; 4];
    for (col, key) in group_covering_keys(type_index).iter().enumerate() {
        let cov = covering(key)?;
        let mut branchings = Vec::new();
        for v in BaseValue::ALL {
            let phi_parts = branching_data(&cov, v)?;
            branchings.extend(fiber_product_branching(
                &klein.branching[v.index()],
                &phi_parts,
            ));
        }
        out[col] = hurwitz_genus(cov.degree, 0, &branchings)?;
    }
    Ok(out)
}

/// All 14 rows of the genus table.
pub fn genus_table() -> Result<Vec<(usize, [i64; 4])>> {
    let mut rows = Vec::new();
    for idx in 0..14 {
        rows.push((idx, darboux_genera(idx)?));
    }
    Ok(rows)
}

// ---------------------------------------------------------------------------
// Pull-back schemes and candidate divisors
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub enum SchemeLocus {
    Curve(ClosedPoint),
    Line(P1Point),
}

impl std::fmt::Display for SchemeLocus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SchemeLocus::Curve(p) => write!(f, "{p}"),
            SchemeLocus::Line(P1Point::Infinity) => write!(f, "x=inf"),
            SchemeLocus::Line(P1Point::Finite(p)) => write!(f, "[{p} = 0]"),
        }
    }
}

/// A point above a singular value with its pulled-back local exponents.
#[derive(Clone, Debug)]
pub struct SchemePoint {
    pub locus: SchemeLocus,
    pub over: BaseValue,
    pub index: i64,
    pub exponents: (Rat, Rat),
    /// Integer exponent difference: an apparent (removable) singularity.
    pub integral: bool,
}

pub type PullbackScheme = Vec<SchemePoint>;

/// Pull back the Riemann scheme of an equation along a covering: each point
/// above the base value s with branching index r carries exponents
/// (r lambda1, r lambda2).
pub fn pullback_exponents(scheme: &RiemannScheme, c: &Covering) -> Result<PullbackScheme> {
    let pairs = [
        scheme.at_zero.clone(),
        scheme.at_one.clone(),
        scheme.at_inf.clone(),
    ];
    let mut out = Vec::new();
    match &c.body {
        CoveringBody::Genus0(map) => {
            for v in BaseValue::ALL {
                let (l1, l2) = pairs[v.index()].clone();
                let poly = match v {
                    BaseValue::Zero => map.num().clone(),
                    BaseValue::One => map.num() - map.den(),
                    BaseValue::Infinity => map.den().clone(),
                };
                for (p, m) in poly.squarefree_decomposition() {
                    for (fac, _) in p.factor() {
                        push_scheme_point(
                            &mut out,
                            SchemeLocus::Line(P1Point::Finite(fac)),
                            v,
                            m as i64,
                            &l1,
                            &l2,
                        );
                    }
                }
                let deficit = c.degree - poly.deg_i();
                if deficit > 0 {
                    push_scheme_point(
                        &mut out,
                        SchemeLocus::Line(P1Point::Infinity),
                        v,
                        deficit,
                        &l1,
                        &l2,
                    );
                }
            }
        }
        CoveringBody::Elliptic { .. } => {
            let f = c.as_function()?;
            let phi_div = principal_divisor(&f)?;
            let one_minus = principal_divisor(&CurveFunction::constant(Rat::one()).sub(&f))?;
            for v in BaseValue::ALL {
                let (l1, l2) = pairs[v.index()].clone();
                let src: Vec<(ClosedPoint, i64)> = match v {
                    BaseValue::Zero => phi_div
                        .branch_spread()
                        .into_iter()
                        .filter(|(_, c)| c.is_positive())
                        .map(|(p, c)| (p, crate::rat::to_i64(&c).unwrap()))
                        .collect(),
                    BaseValue::Infinity => phi_div
                        .branch_spread()
                        .into_iter()
                        .filter(|(_, c)| c.is_negative())
                        .map(|(p, c)| (p, -crate::rat::to_i64(&c).unwrap()))
                        .collect(),
                    BaseValue::One => one_minus
                        .branch_spread()
                        .into_iter()
                        .filter(|(_, c)| c.is_positive())
                        .map(|(p, c)| (p, crate::rat::to_i64(&c).unwrap()))
                        .collect(),
                };
                for (p, r) in src {
                    push_scheme_point(&mut out, SchemeLocus::Curve(p), v, r, &l1, &l2);
                }
            }
        }
    }
    Ok(out)
}

fn push_scheme_point(
    out: &mut PullbackScheme,
    locus: SchemeLocus,
    over: BaseValue,
    index: i64,
    l1: &Rat,
    l2: &Rat,
) {
    let r = Rat::from(BigInt::from(index));
    let e1 = l1 * &r;
    let e2 = l2 * &r;
    let integral = is_integer(&(&e2 - &e1));
    out.push(SchemePoint {
        locus,
        over,
        index,
        exponents: (e1, e2),
        integral,
    });
}

/// All degree-0 divisors whose coefficient at each scheme point is one of
/// that point's pulled exponents, augmented by up to `budget` extra rational
/// torsion points with coefficient 1, and passing the torsion criterion.
pub fn candidate_divisors(
    scheme: &PullbackScheme,
    curve: &WeierstrassCurve,
    budget: usize,
) -> Result<Vec<QDivisor>> {
    // scheme points on the curve with their two exponent choices
    let mut slots: Vec<(ClosedPoint, Vec<Rat>)> = Vec::new();
    for sp in scheme {
        let p = match &sp.locus {
            SchemeLocus::Curve(p) => p.clone(),
            SchemeLocus::Line(_) => {
                return Err(CoreError::Other("scheme is not on a curve".into()))
            }
        };
        let mut choices = vec![sp.exponents.0.clone()];
        if sp.exponents.1 != sp.exponents.0 {
            choices.push(sp.exponents.1.clone());
        }
        slots.push((p, choices));
    }
    // extra points: rational torsion not already in the scheme
    let scheme_support: Vec<ClosedPoint> = slots.iter().map(|(p, _)| p.clone()).collect();
    let pool: Vec<ClosedPoint> = rational_torsion_points(curve)
        .into_iter()
        .map(|p| ClosedPoint::from_point(&p))
        .filter(|p| !scheme_support.contains(p))
        .collect();

    let mut extra_sets: Vec<Vec<ClosedPoint>> = vec![Vec::new()];
    if budget >= 1 {
        for p in &pool {
            extra_sets.push(vec![p.clone()]);
        }
    }
    if budget >= 2 {
        for i in 0..pool.len() {
            for j in i + 1..pool.len() {
                extra_sets.push(vec![pool[i].clone(), pool[j].clone()]);
            }
        }
    }

    let mut found = Vec::new();
    let n = slots.len();
    let mut counters = vec![0usize; n];
    loop {
        // build the candidate for the current choice vector
        for extras in &extra_sets {
            let mut d = QDivisor::zero();
            for (i, (p, choices)) in slots.iter().enumerate() {
                d.insert(p.clone(), choices[counters[i]].clone());
            }
            for p in extras {
                d.insert(p.clone(), Rat::one());
            }
            if !d.degree().is_zero() {
                continue;
            }
            if !torsion_condition(curve, &d)? {
                continue;
            }
            if !found.contains(&d) {
                found.push(d);
            }
        }
        // advance the mixed-radix counter
        let mut i = 0;
        loop {
            if i == n {
                return Ok(found);
            }
            counters[i] += 1;
            if counters[i] < slots[i].1.len() {
                break;
            }
            counters[i] = 0;
            i += 1;
        }
        if n == 0 {
            return Ok(found);
        }
    }
}

/// Condition (ii): the integer-cleared divisor sums to a torsion point.
fn torsion_condition(curve: &WeierstrassCurve, d: &QDivisor) -> Result<bool> {
    let clearing = d.clearing_multiple();
    let cleared = d.scale(&Rat::from(clearing));
    let mut total = CurvePoint::Infinity;
    for (p, c) in cleared.iter() {
        let n = crate::rat::to_i64(c).ok_or_else(|| CoreError::Other("huge coefficient".into()))?;
        match class_sum(curve, p) {
            Some(pt) => total = crate::elliptic::add(curve, &total, &crate::elliptic::mul(curve, n, &pt)),
            None => return Err(CoreError::UnsupportedSupport),
        }
    }
    Ok(crate::elliptic::order_of(curve, &total, 16).is_some())
}

// ---------------------------------------------------------------------------
// Printed function-field identities on E3
// ---------------------------------------------------------------------------

/// phi3 in the form arising from the fiber-product isomorphism:
/// 2 / (1 + (9x^2+1)(81x^4-14094x^3-90054x^2+1566x+1) / (72 xi (9x^2-33x-1)^2)).
pub fn phi3_fiber_product_form() -> Result<CurveFunction> {
    let e3 = WeierstrassCurve::by_key("E3")?;
    let sq = {
        let p = crate::bipoly::parse_poly_x("9*x^2 - 33*x - 1")?;
        &p * &p
    };
    let n1 = CurveFunction::from_bipoly(Some(&e3), &parse_bipoly("72*xi")?)?
        .mul(&CurveFunction::rational(RatFun::from_poly(sq)));
    let n2 = CurveFunction::rational(RatFun::from_poly(
        &crate::bipoly::parse_poly_x("9*x^2 + 1")?
            * &crate::bipoly::parse_poly_x("81*x^4 - 14094*x^3 - 90054*x^2 + 1566*x + 1")?,
    ));
    let two_n1 = n1.mul(&CurveFunction::constant(rat(2, 1)));
    two_n1.div(&n1.add(&n2))
}

/// The printed closed form of 1 - phi3:
/// (1-21xi-117x-9x xi-234x^2)^3 (1-9xi+54x) /
/// ((1+21xi-117x+9x xi-234x^2)^3 (1+9xi+54x)).
pub fn one_minus_phi3_form() -> Result<CurveFunction> {
    let e3 = WeierstrassCurve::by_key("E3")?;
    let d_bar = CurveFunction::from_bipoly(
        Some(&e3),
        &parse_bipoly("1 - 21*xi - 117*x - 9*x*xi - 234*x^2")?,
    )?;
    let d = CurveFunction::from_bipoly(
        Some(&e3),
        &parse_bipoly("1 + 21*xi - 117*x + 9*x*xi - 234*x^2")?,
    )?;
    let f_bar = CurveFunction::from_bipoly(Some(&e3), &parse_bipoly("1 - 9*xi + 54*x")?)?;
    let f = CurveFunction::from_bipoly(Some(&e3), &parse_bipoly("1 + 9*xi + 54*x")?)?;
    d_bar.pow_i(3)?.mul(&f_bar).div(&d.pow_i(3)?.mul(&f))
}

/// The rational torsion points of the four catalog curves (all rational
/// points for E3, E5, E6; only the 2-torsion of E4's free lattice).
pub fn rational_torsion_points(curve: &WeierstrassCurve) -> Vec<CurvePoint> {
    let pts: Vec<(Rat, Rat)> = match curve.label.as_str() {
        "E3" => vec![
            (rat(0, 1), rat(0, 1)),
            (rat(-1, 9), rat(5, 9)),
            (rat(-1, 9), rat(-5, 9)),
            (rat(1, 1), rat(-5, 1)),
            (rat(1, 1), rat(5, 1)),
        ],
        "E4" => vec![(rat(0, 1), rat(0, 1))],
        "E5" => vec![
            (rat(0, 1), rat(0, 1)),
            (rat(-1, 4), rat(-3, 4)),
            (rat(-1, 4), rat(3, 4)),
            (rat(-1, 1), rat(0, 1)),
            (rat(-1, 16), rat(0, 1)),
            (rat(1, 4), rat(-5, 4)),
            (rat(1, 4), rat(5, 4)),
        ],
        "E6" => vec![
            (rat(0, 1), rat(0, 1)),
            (rat(-1, 1), rat(1, 1)),
            (rat(-1, 1), rat(-1, 1)),
            (rat(1, 1), rat(-1, 1)),
            (rat(1, 1), rat(1, 1)),
        ],
        _ => vec![],
    };
    pts.into_iter()
        .map(|(x, xi)| CurvePoint::Affine(x, xi))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn branching_of_phi1() {
        let c = covering("phi1").unwrap();
        assert_eq!(branching_data(&c, BaseValue::Zero).unwrap(), vec![5, 5, 1, 1]);
        assert_eq!(
            branching_data(&c, BaseValue::One).unwrap(),
            vec![2, 2, 2, 2, 2, 2]
        );
        assert_eq!(
            branching_data(&c, BaseValue::Infinity).unwrap(),
            vec![3, 3, 3, 3]
        );
    }

    #[test]
    fn branching_of_tetra_coverings() {
        let c = covering("tetra4").unwrap();
        assert_eq!(branching_data(&c, BaseValue::Zero).unwrap(), vec![3, 1]);
        assert_eq!(branching_data(&c, BaseValue::One).unwrap(), vec![2, 2]);
        assert_eq!(branching_data(&c, BaseValue::Infinity).unwrap(), vec![3, 1]);
        let c = covering("tetra6").unwrap();
        assert_eq!(
            branching_data(&c, BaseValue::One).unwrap(),
            vec![2, 2, 1, 1]
        );
    }

    #[test]
    fn dramifico_examples() {
        let c = covering("phi1").unwrap();
        for v in BaseValue::ALL {
            assert!(check_dramifico(&c, v).unwrap());
        }
        let c = covering("tetra4").unwrap();
        assert!(check_dramifico(&c, BaseValue::Zero).unwrap());
    }

    #[test]
    fn hurwitz_examples() {
        // phi1: genus 0
        assert_eq!(
            hurwitz_genus(
                12,
                0,
                &[vec![5, 5, 1, 1], vec![2, 2, 2, 2, 2, 2], vec![3, 3, 3, 3]]
            )
            .unwrap(),
            0
        );
        // unramified self-cover of a genus-1 curve
        assert_eq!(hurwitz_genus(5, 1, &[]).unwrap(), 1);
        // elliptic double cover of the line
        assert_eq!(
            hurwitz_genus(2, 0, &[vec![2], vec![2], vec![2], vec![2]]).unwrap(),
            1
        );
    }

    #[test]
    fn fiber_product_rule() {
        assert_eq!(fiber_product_branching(&[2], &[4]), vec![vec![2, 2]]);
        assert_eq!(fiber_product_branching(&[5], &[3]), vec![vec![3]]);
        // octahedral degree-6 against the Klein degree-2 map of (2/3,1/4,1/4)
        let klein = klein_data(3);
        let cov = covering("octa6").unwrap();
        let mut branchings = Vec::new();
        for v in BaseValue::ALL {
            branchings.extend(fiber_product_branching(
                &klein.branching[v.index()],
                &branching_data(&cov, v).unwrap(),
            ));
        }
        assert_eq!(hurwitz_genus(6, 0, &branchings).unwrap(), 0);
    }

    #[test]
    fn klein_maps_match_shipped_branching() {
        for idx in [5usize, 8, 10] {
            let k = klein_data(idx);
            let map = k.map.clone().unwrap();
            let cov = Covering {
                key: format!("klein-{idx}"),
                degree: k.degree,
                body: CoveringBody::Genus0(map),
                placement: None,
            };
            for v in BaseValue::ALL {
                let mut expected = k.branching[v.index()].clone();
                expected.sort_unstable_by(|a, b| b.cmp(a));
                assert_eq!(
                    branching_data(&cov, v).unwrap(),
                    expected,
                    "type {idx} over {v}"
                );
            }
        }
    }

    #[test]
    fn genus_table_row_examples() {
        assert_eq!(darboux_genera(7).unwrap(), [1, 1, 3, 5]);
        assert_eq!(darboux_genera(4).unwrap(), [0, 0, 0, 0]);
        assert_eq!(darboux_genera(12).unwrap(), [1, 5, 7, 13]);
    }

    #[test]
    fn empty_scheme_yields_zero_divisor() {
        let e3 = WeierstrassCurve::by_key("E3").unwrap();
        let cands = candidate_divisors(&Vec::new(), &e3, 0).unwrap();
        assert_eq!(cands.len(), 1);
        assert!(cands[0].is_zero());
    }

    #[test]
    fn phi3_identities() {
        let phi3 = covering("phi3").unwrap().as_function().unwrap();
        let alt = phi3_fiber_product_form().unwrap();
        assert_eq!(phi3.f1, alt.f1);
        assert_eq!(phi3.f2, alt.f2);
        let one_minus = CurveFunction::constant(Rat::one()).sub(&phi3);
        let printed = one_minus_phi3_form().unwrap();
        assert_eq!(one_minus.f1, printed.f1);
        assert_eq!(one_minus.f2, printed.f2);
    }

    #[test]
    fn elliptic_covering_branching_and_genus() {
        // phi3 branching: [5,5,1,1] over 0, [3,3,3,3] over 1 and infinity;
        // Hurwitz gives back genus 1
        let c = covering("phi3").unwrap();
        assert_eq!(branching_data(&c, BaseValue::Zero).unwrap(), vec![5, 5, 1, 1]);
        assert_eq!(branching_data(&c, BaseValue::One).unwrap(), vec![3, 3, 3, 3]);
        assert_eq!(
            branching_data(&c, BaseValue::Infinity).unwrap(),
            vec![3, 3, 3, 3]
        );
        let branchings: Vec<Vec<i64>> = BaseValue::ALL
            .iter()
            .map(|&v| branching_data(&c, v).unwrap())
            .collect();
        assert_eq!(hurwitz_genus(12, 0, &branchings).unwrap(), 1);
    }

    #[test]
    fn pullback_scheme_of_phi3() {
        // the (1/3,1/3,2/5) main representative pulled through phi3
        let params = crate::hypergeom::HpgParams::new(rat(3, 10), rat(-1, 30), rat(3, 5)).unwrap();
        let scheme =
            pullback_exponents(&crate::hypergeom::riemann_scheme(&params), &covering("phi3").unwrap())
                .unwrap();
        // the R components (index 3 over infinity) carry (9/10, -1/10)
        let mut saw_r = false;
        for sp in &scheme {
            if sp.over == BaseValue::Infinity {
                assert_eq!(sp.index, 3);
                let es = [sp.exponents.0.clone(), sp.exponents.1.clone()];
                assert!(es.contains(&rat(9, 10)) && es.contains(&rat(-1, 10)));
                saw_r = true;
            }
        }
        assert!(saw_r);
        // candidate divisors with budget 0: exactly the two printed ones
        let e3 = WeierstrassCurve::by_key("E3").unwrap();
        let cands = candidate_divisors(&scheme, &e3, 0).unwrap();
        assert_eq!(cands.len(), 2);
        for c in &cands {
            assert_eq!(c.degree(), Rat::zero());
            // coefficient -1/10 on the quartic component
            let has_r = c
                .iter()
                .any(|(p, co)| matches!(p, ClosedPoint::Component { .. }) && *co == rat(-1, 10));
            assert!(has_r, "candidate {c}");
        }
        let coeffs_at_origin: Vec<Rat> = cands
            .iter()
            .map(|c| c.coeff(&ClosedPoint::Rational(Rat::zero(), Rat::zero())))
            .collect();
        assert!(coeffs_at_origin.contains(&rat(2, 5)));
        assert!(coeffs_at_origin.contains(&Rat::zero()));
    }
}
