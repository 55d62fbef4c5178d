//! Property suites for the polynomial layer: truncation consistency across
//! caps, the ring-homomorphism law for substitution, unit inversion, and
//! agreement of localized arithmetic with cleared-denominator polynomial
//! arithmetic.

use std::collections::BTreeMap;
use std::sync::Arc;

use defring_core::coeffs::{CycloElem, Rational};
use defring_core::polyring::{LocalizedPoly, Mono, SparsePoly, TruncSeries, VarSet};
use proptest::prelude::*;

fn vars3() -> Arc<VarSet> {
    VarSet::new(&["u", "v", "w"])
}

fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| Rational::new(n, d))
}

fn cyclo() -> impl Strategy<Value = CycloElem> {
    prop_oneof![
        4 => rational().prop_map(CycloElem::from_rational),
        1 => (rational(), rational()).prop_map(|(a, b)| {
            CycloElem::from_coords(a, b, Rational::ZERO, Rational::ZERO)
        }),
    ]
}

prop_compose! {
    fn poly3(max_terms: usize)(
        terms in prop::collection::vec(((0u32..=3, 0u32..=3, 0u32..=3), cyclo()), 0..max_terms)
    ) -> SparsePoly {
        let vars = vars3();
        let mut p = SparsePoly::zero(&vars);
        for ((a, b, c), coeff) in terms {
            p.insert_add(Mono::from_exps(&[a, b, c]), coeff);
        }
        p
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// Computing at a higher cap and re-truncating agrees with computing
    /// at the lower cap directly.
    #[test]
    fn truncation_consistency(f in poly3(8), g in poly3(8), cap in 2u32..5) {
        let hi = cap + 2;
        let a_lo = TruncSeries::new(f.clone(), cap);
        let b_lo = TruncSeries::new(g.clone(), cap);
        let lo = a_lo.try_mul(&b_lo).unwrap();
        let a_hi = TruncSeries::new(f, hi);
        let b_hi = TruncSeries::new(g, hi);
        let hi_prod = a_hi.try_mul(&b_hi).unwrap();
        prop_assert_eq!(hi_prod.truncated_to(cap), lo);
    }

    /// Substitution distributes over sums and products.
    #[test]
    fn substitute_is_ring_homomorphism(f in poly3(6), g in poly3(6)) {
        let vars = vars3();
        let target = VarSet::new(&["s", "t"]);
        let s = SparsePoly::var(&target, 0);
        let t = SparsePoly::var(&target, 1);
        let one = SparsePoly::one(&target);
        let mut images: BTreeMap<usize, SparsePoly> = BTreeMap::new();
        images.insert(0, s.try_add(&t).unwrap());
        images.insert(1, t.try_mul(&t).unwrap().try_sub(&one).unwrap());
        images.insert(2, SparsePoly::constant(&target, CycloElem::i_unit()));
        let _ = &vars;

        let sum = f.try_add(&g).unwrap().substitute(&images, &target).unwrap();
        let sum_img = f.substitute(&images, &target).unwrap()
            .try_add(&g.substitute(&images, &target).unwrap()).unwrap();
        prop_assert_eq!(sum, sum_img);

        let prod = f.try_mul(&g).unwrap().substitute(&images, &target).unwrap();
        let prod_img = f.substitute(&images, &target).unwrap()
            .try_mul(&g.substitute(&images, &target).unwrap()).unwrap();
        prop_assert_eq!(prod, prod_img);
    }

    /// Localized arithmetic agrees with polynomial arithmetic after
    /// clearing denominators (cross-multiplication identities).
    #[test]
    fn localized_matches_cleared_polynomials(
        pa in tpoly(5), pb in tpoly(5), ka in 0u32..3, kb in 0u32..3
    ) {
        let unit = arc_unit();
        let a = LocalizedPoly::new(pa.clone(), unit.clone(), ka).unwrap();
        let b = LocalizedPoly::new(pb.clone(), unit.clone(), kb).unwrap();

        // sum: (a + b) * u^(ka + kb) == (pa u^kb + pb u^ka) * u^(sum.pow')
        let sum = a.try_add(&b).unwrap();
        let lhs = sum.numerator()
            .try_mul(&unit.pow(ka + kb - sum.denominator_power())).unwrap();
        let rhs = pa.try_mul(&unit.pow(kb)).unwrap()
            .try_add(&pb.try_mul(&unit.pow(ka)).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);

        // product: prod.num * u^(ka + kb - prod.pow) == pa * pb
        let prod = a.try_mul(&b).unwrap();
        let lhs = prod.numerator()
            .try_mul(&unit.pow(ka + kb - prod.denominator_power())).unwrap();
        let rhs = pa.try_mul(&pb).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

fn arc_unit() -> SparsePoly {
    let vars = VarSet::univar_t();
    let t = SparsePoly::var(&vars, 0);
    let c = CycloElem::zeta8().sub(&CycloElem::ONE);
    SparsePoly::one(&vars).try_add(&t.mul_scalar(&c)).unwrap()
}

prop_compose! {
    fn tpoly(max_terms: usize)(
        terms in prop::collection::vec((0u32..=5, cyclo()), 0..max_terms)
    ) -> SparsePoly {
        let vars = VarSet::univar_t();
        let mut p = SparsePoly::zero(&vars);
        for (e, coeff) in terms {
            p.insert_add(Mono::from_exps(&[e]), coeff);
        }
        p
    }
}

prop_compose! {
    /// A truncated series with a unit constant term (valuation zero).
    fn unit_series(cap: u32)(
        p in poly3(8),
        c in prop_oneof![Just(1i64), Just(-1), Just(3), Just(5), Just(7)],
    ) -> TruncSeries {
        let vars = vars3();
        let body = p.try_sub(&SparsePoly::constant(&vars, p.constant_term())).unwrap();
        let series = body.try_add(&SparsePoly::constant(&vars, CycloElem::from_int(c))).unwrap();
        TruncSeries::new(series, cap)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// Geometric-series inversion is a genuine inverse at the cap.
    #[test]
    fn invert_unit_is_inverse(a in unit_series(4)) {
        let inv = a.invert_unit().unwrap();
        let prod = a.try_mul(&inv).unwrap();
        prop_assert_eq!(prod, TruncSeries::one(a.vars(), a.cap()));
    }
}

#[test]
fn second_trunc_example() {
    // (1 + x)(1 - x) at cap 2 is 1 - x^2
    let vars = vars3();
    let x = SparsePoly::var(&vars, 0);
    let one = SparsePoly::one(&vars);
    let a = TruncSeries::new(one.try_add(&x).unwrap(), 2);
    let b = TruncSeries::new(one.try_sub(&x).unwrap(), 2);
    let prod = a.try_mul(&b).unwrap();
    assert_eq!(prod, TruncSeries::new(one.try_sub(&x.pow(2)).unwrap(), 2));
}
