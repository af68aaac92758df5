use proptest::prelude::*;

use cone_zeta::algebra::serial::{from_json, to_json};
use cone_zeta::algebra::{rat, FactoredRational, LaurentPoly, Monomial};
use cone_zeta::oracle::series_expand;

fn poly_strategy() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-3i64..=3, -2i64..=2, -2i64..=3), 1..5).prop_map(|terms| {
        LaurentPoly::from_terms(
            terms
                .into_iter()
                .map(|(c, a, b)| (Monomial::new(a, b), rat(c))),
        )
    })
}

fn factor_strategy() -> impl Strategy<Value = (i64, i64)> {
    (-2i64..=2, 0i64..=3).prop_filter("nonconstant", |(a, b)| *a != 0 || *b != 0)
}

fn rational_strategy() -> impl Strategy<Value = FactoredRational> {
    (
        poly_strategy(),
        prop::collection::vec(factor_strategy(), 0..4),
    )
        .prop_map(|(p, f)| FactoredRational::new(p, f).unwrap())
}

/// Factors with positive `t`-degree, so the `t`-expansion exists.
fn expandable_strategy() -> impl Strategy<Value = FactoredRational> {
    (
        poly_strategy(),
        prop::collection::vec((-2i64..=2, 1i64..=3), 0..3),
    )
        .prop_map(|(p, f)| FactoredRational::new(p, f).unwrap())
}

proptest! {
    #[test]
    fn inversion_is_an_involution(x in rational_strategy()) {
        prop_assert!(x.invert_variables().invert_variables().eq_rational(&x));
    }

    #[test]
    fn inversion_is_multiplicative(x in rational_strategy(), y in rational_strategy()) {
        let lhs = x.mul(&y).invert_variables();
        let rhs = x.invert_variables().mul(&y.invert_variables());
        prop_assert!(lhs.eq_rational(&rhs));
    }

    #[test]
    fn inversion_is_additive(x in rational_strategy(), y in rational_strategy()) {
        let lhs = x.add(&y).invert_variables();
        let rhs = x.invert_variables().add(&y.invert_variables());
        prop_assert!(lhs.eq_rational(&rhs));
    }

    #[test]
    fn normalize_preserves_value(x in rational_strategy(), y in rational_strategy()) {
        let s = x.add(&y);
        let n = s.normalize();
        prop_assert!(n.eq_rational(&s));
        prop_assert!(n.denominator().values().sum::<u32>() <= s.denominator().values().sum::<u32>());
    }

    #[test]
    fn ratio_test_is_sound(x in rational_strategy(), a in -3i64..=3, b in -3i64..=3, neg in any::<bool>()) {
        prop_assume!(!x.is_zero());
        let c = if neg { rat(-1) } else { rat(1) };
        let y = x.mul_monomial(&c, Monomial::new(a, b));
        let got = y.monomial_ratio_test(&x).unwrap();
        prop_assert_eq!(got, Some((if neg { -1 } else { 1 }, a, b)));
    }

    #[test]
    fn subtraction_cancels(x in rational_strategy()) {
        prop_assert!(x.sub(&x).normalize().is_zero());
    }

    #[test]
    fn json_round_trip(x in rational_strategy()) {
        let v = to_json(&x);
        let back = from_json(&v).unwrap();
        prop_assert_eq!(&back, &x);
        prop_assert_eq!(to_json(&back).to_string(), v.to_string());
    }

    #[test]
    fn expansion_is_multiplicative(x in expandable_strategy(), y in expandable_strategy()) {
        let order = 6;
        let prod = series_expand(&x.mul(&y), order).unwrap();
        // multiply the truncated series by hand, keeping enough low degrees
        let sx = series_expand(&x, order + 4).unwrap();
        let sy = series_expand(&y, order + 4).unwrap();
        let mut manual = LaurentPoly::zero();
        for (i, p) in sx.coefficients() {
            for (j, q) in sy.coefficients() {
                if i + j <= order {
                    manual = &manual + &(&(p * q) * &LaurentPoly::qt(0, i + j));
                }
            }
        }
        let manual = cone_zeta::oracle::TruncatedSeries::from_poly(&manual, order);
        prop_assert_eq!(prod, manual);
    }
}

#[test]
fn reciprocal_of_a_geometric_series() {
    // 1/(1-t) inverted is -t/(1-t)
    let g = FactoredRational::new(LaurentPoly::one(), [(0, 1)]).unwrap();
    let want = FactoredRational::new(
        LaurentPoly::monomial(rat(-1), Monomial::new(0, 1)),
        [(0, 1)],
    )
    .unwrap();
    assert!(g.invert_variables().eq_rational(&want));
}
