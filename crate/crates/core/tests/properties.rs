//! Property suites: ring axioms on sampled inputs, series round-trips,
//! quadratic-field norms, classification invariance, and a few exact radical
//! identities between catalog entries.

use darboux_core::bipoly::parse_poly_x;
use darboux_core::curvefunc::{expand_radical_at_base, XiBranch};
use darboux_core::evaluations::Catalog;
use darboux_core::hypergeom::{
    classify_schwartz, representative_diffs, ExponentDiffs, SchwartzType,
};
use darboux_core::poly::Poly;
use darboux_core::quad::Quad;
use darboux_core::rat::{rat, rint, Rat};
use darboux_core::ratfun::RatFun;
use darboux_core::series::Series;
use num::{One, Zero};
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = Rat> {
    (-12i64..=12, 1i64..=9).prop_map(|(n, d)| rat(n, d))
}

fn small_poly(max_deg: usize) -> impl Strategy<Value = Poly> {
    proptest::collection::vec(small_rat(), 1..=max_deg + 1).prop_map(Poly::from_coeffs)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn poly_ring_axioms(f in small_poly(6), g in small_poly(6), h in small_poly(4)) {
        // distributivity
        let lhs = &f * &(&g + &h);
        let rhs = &(&f * &g) + &(&f * &h);
        prop_assert_eq!(lhs, rhs);
        // degree additivity
        if !f.is_zero() && !g.is_zero() {
            prop_assert_eq!(
                (&f * &g).degree(),
                Some(f.degree().unwrap() + g.degree().unwrap())
            );
        }
    }

    #[test]
    fn poly_gcd_divides_both(f in small_poly(5), g in small_poly(5)) {
        let d = f.gcd(&g);
        if !d.is_zero() {
            prop_assert!(f.divrem(&d).1.is_zero());
            prop_assert!(g.divrem(&d).1.is_zero());
        }
    }

    #[test]
    fn quad_norm_is_multiplicative(
        a in small_rat(), b in small_rat(),
        c in small_rat(), d in small_rat(),
    ) {
        let u = Quad::new(a, b, 5);
        let v = Quad::new(c, d, 5);
        let w = u.mul(&v).unwrap();
        prop_assert_eq!(w.norm(), u.norm() * v.norm());
    }

    #[test]
    fn series_power_round_trips(
        tail in proptest::collection::vec(small_rat(), 19),
        pn in 1i64..=3, pd in 1i64..=3,
        qn in 1i64..=3, qd in 1i64..=3,
    ) {
        // unit-leading series to order 20
        let mut coeffs = vec![Rat::one()];
        coeffs.extend(tail);
        let s = Series::new(1, 0, coeffs, 20);
        let p = rat(pn, pd);
        let q = rat(qn, qd);
        let lhs = s.pow(&p).unwrap().pow(&q).unwrap();
        let rhs = s.pow(&(&p * &q)).unwrap();
        prop_assert!(lhs.first_mismatch(&rhs).is_none());
        // s * 1/s = 1
        let inv = s.pow(&rat(-1, 1)).unwrap();
        prop_assert!(s.mul(&inv).first_mismatch(&Series::one()).is_none());
        // compose with the identity
        let composed = Series::compose(&s, &Series::identity()).unwrap();
        prop_assert!(composed.first_mismatch(&s).is_none());
    }

    #[test]
    fn classification_is_invariant(
        idx in 0usize..14,
        perm in 0usize..6,
        signs in 0u32..8,
        s1 in -2i64..=2, s2 in -2i64..=2,
    ) {
        const PERMS: [[usize; 3]; 6] =
            [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let rep = representative_diffs(idx);
        let arr = rep.as_array();
        let mut t: Vec<Rat> = PERMS[perm].iter().map(|&i| arr[i].clone()).collect();
        for (i, v) in t.iter_mut().enumerate() {
            if signs & (1 << i) != 0 {
                *v = -v.clone();
            }
        }
        // integer shifts with even sum
        let s3 = -(s1 + s2); // total shift s1+s2+s3 = 0, even
        t[0] += rint(2 * s1);
        t[1] += rint(2 * s2);
        t[2] += rint(2 * s3);
        let shifted = ExponentDiffs::new(t[0].clone(), t[1].clone(), t[2].clone());
        prop_assert_eq!(classify_schwartz(&shifted), SchwartzType::Main(idx));
        // odd single shifts are also allowed if the total stays even
        let mut t2 = shifted.as_array().to_vec();
        t2[0] += rint(1);
        t2[1] += rint(1);
        let odd_pair = ExponentDiffs::new(t2[0].clone(), t2[1].clone(), t2[2].clone());
        prop_assert_eq!(classify_schwartz(&odd_pair), SchwartzType::Main(idx));
    }
}

#[test]
fn rhs_ratio_of_fptetra1z_to_fptetra1_is_rational() {
    // the two evaluations differ by exactly (1 + 5/2 x)/(1 - 2x): their
    // radical exponents on (1-2x) differ by the integer -1
    let cat = Catalog::builtin();
    let base = cat.find("fptetra1").unwrap().rhs_radical().unwrap();
    let other = cat.find("fptetra1z").unwrap().rhs_radical().unwrap();
    let ratio = RatFun::new(
        parse_poly_x("1 + 5/2*x").unwrap(),
        parse_poly_x("1 - 2*x").unwrap(),
    );
    // series check: other = base * ratio
    let eb = expand_radical_at_base(&base, 20, XiBranch::Plus).unwrap();
    let eo = expand_radical_at_base(&other, 20, XiBranch::Plus).unwrap();
    assert!(eb.t_exp.is_zero() && eo.t_exp.is_zero());
    let num = Series::from_poly(ratio.num()).truncate(21);
    let den = Series::from_poly(ratio.den()).truncate(21);
    let rhs = eb.unit.mul(&num.div(&den).unwrap());
    assert!(eo.unit.truncate(20).first_mismatch(&rhs.truncate(20)).is_none());
    // divisor check on the line
    let db = base.p1_divisor().unwrap();
    let dz = other.p1_divisor().unwrap();
    let diff = dz.add(&db.scale(&rat(-1, 1)));
    assert!(diff.is_integral());
    assert_eq!(diff, darboux_core::curvefunc::p1_divisor(&ratio));
}

#[test]
fn second_solution_partners_share_equations() {
    // within each group of four, the third record's parameters are the
    // second-solution shift of the first record's
    let cat = Catalog::builtin();
    for group in cat.records.chunks(4) {
        let f = &group[0].params;
        let g = &group[2].params;
        let omc = Rat::one() - &f.c;
        let expected_c = rat(2, 1) - &f.c;
        let pair = [&f.a + &omc, &f.b + &omc];
        assert_eq!(g.c, expected_c, "group of {}", group[0].id);
        assert!(
            (g.a == pair[0] && g.b == pair[1]) || (g.a == pair[1] && g.b == pair[0]),
            "group of {}",
            group[0].id
        );
    }
}

#[test]
fn covering_substitution_consistency() {
    // substituting x -> x^5 into the degree-12 covering gives the maximal
    // covering's fully ramified branching
    use darboux_core::darboux::{branching_data, covering, BaseValue};
    let c60 = covering("icosa60").unwrap();
    assert_eq!(c60.degree, 60);
    assert_eq!(
        branching_data(&c60, BaseValue::Zero).unwrap(),
        vec![5; 12]
    );
    assert_eq!(branching_data(&c60, BaseValue::One).unwrap(), vec![2; 30]);
    assert_eq!(
        branching_data(&c60, BaseValue::Infinity).unwrap(),
        vec![3; 20]
    );
    let c24 = covering("octa24").unwrap();
    assert_eq!(
        branching_data(&c24, BaseValue::Zero).unwrap(),
        vec![4; 6]
    );
    assert_eq!(branching_data(&c24, BaseValue::One).unwrap(), vec![2; 12]);
    assert_eq!(
        branching_data(&c24, BaseValue::Infinity).unwrap(),
        vec![3; 8]
    );
}

#[test]
fn identity_covering_and_generic_values() {
    use darboux_core::darboux::{
        branching_data, branching_data_at, covering, pullback_exponents, BaseValue, Covering,
        CoveringBody,
    };
    use darboux_core::hypergeom::{riemann_scheme, HpgParams};
    // degree-1 identity map: [1] above every value
    let ident = Covering {
        key: "identity".into(),
        degree: 1,
        body: CoveringBody::Genus0(RatFun::z()),
        placement: None,
    };
    for v in BaseValue::ALL {
        assert_eq!(branching_data(&ident, v).unwrap(), vec![1]);
    }
    assert_eq!(branching_data_at(&ident, &rat(7, 3)).unwrap(), vec![1]);
    // a non-critical value of a catalog covering is all ones
    let phi1 = covering("icosa12").unwrap();
    assert_eq!(branching_data_at(&phi1, &rat(2, 1)).unwrap(), vec![1; 12]);
    // pulling back through the identity reproduces the scheme
    let p = HpgParams::new(rat(1, 4), rat(-1, 12), rat(2, 3)).unwrap();
    let scheme = pullback_exponents(&riemann_scheme(&p), &ident).unwrap();
    assert_eq!(scheme.len(), 3);
    for sp in &scheme {
        assert_eq!(sp.index, 1);
    }
}

#[test]
fn all_coverings_satisfy_hurwitz() {
    use darboux_core::darboux::{branching_data, covering, hurwitz_genus, BaseValue};
    for (key, genus) in [
        ("tetra4", 0),
        ("tetra4b", 0),
        ("tetra6", 0),
        ("tetra12", 0),
        ("octa6", 0),
        ("octa6b", 0),
        ("octa8", 0),
        ("octa12", 0),
        ("icosa12", 0),
        ("icosa20", 0),
        ("icosa30", 0),
        ("phi2", 0),
        ("phi3", 1),
        ("phi4", 1),
        ("phi5", 1),
        ("phi6", 1),
    ] {
        let c = covering(key).unwrap();
        let branchings: Vec<Vec<i64>> = BaseValue::ALL
            .iter()
            .map(|&v| branching_data(&c, v).unwrap())
            .collect();
        assert_eq!(
            hurwitz_genus(c.degree, 0, &branchings).unwrap(),
            genus,
            "covering {key}"
        );
    }
}

#[test]
fn gauss_recurrence_on_both_local_solutions() {
    use darboux_core::hypergeom::{
        gauss_series, satisfies_gauss_recurrence, second_solution_series, HpgParams,
    };
    let p = HpgParams::new(rat(3, 10), rat(-1, 30), rat(3, 5)).unwrap();
    let f = gauss_series(&p, 12).unwrap();
    assert!(satisfies_gauss_recurrence(&p, &f, 11));
    // the shifted series inside the second solution satisfies its recurrence
    let shifted = HpgParams::new(
        &p.a + rat(2, 5),
        &p.b + rat(2, 5),
        rat(2, 1) - rat(3, 5),
    )
    .unwrap();
    let g = gauss_series(&shifted, 12).unwrap();
    assert!(satisfies_gauss_recurrence(&shifted, &g, 11));
    let s = second_solution_series(&p, 6).unwrap();
    assert_eq!(s.valuation_exp(), Some(rat(2, 5)));
}
