use monodyn::bounds::{discrepancy_brute_force, discrepancy_on_circle_exact};
use monodyn::ntcore::factor::{irreducibility_oracle, IrreducibilityOracle};
use monodyn::ntcore::rational::{ord_p, rat, rat_pow};
use monodyn::ntcore::{factor_poly, height_rational, newton_polygon_root_valuations, product_formula_check, Rational, UniPoly};
use monodyn::scan::ScanConfig;
use monodyn::semigroup::{Semigroup, Word};
use num_traits::Zero;
use proptest::prelude::*;

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (any::<i64>().prop_filter("nonzero", |n| *n != 0), 1..=i64::MAX).prop_map(|(n, d)| rat(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn product_formula_is_exact(x in nonzero_rational()) {
        let w = product_formula_check(&x).unwrap();
        prop_assert!(w.exact_zero);
        prop_assert!(w.float_sum.abs() < 1e-9);
    }

    #[test]
    fn height_of_powers(n in -1000i64..1000, d in 1i64..1000, k in -6i64..=6) {
        prop_assume!(n != 0);
        let x = rat(n, d);
        let h = height_rational(&rat_pow(&x, k));
        prop_assert!((h - k.abs() as f64 * height_rational(&x)).abs() < 1e-9);
    }

    #[test]
    fn factorization_reconstructs(c in proptest::collection::vec(-9i64..=9, 2..=7)) {
        let f = UniPoly::from_ints(&c);
        prop_assume!(f.deg() >= 1);
        let fac = factor_poly(&f, 64).unwrap();
        prop_assert_eq!(fac.reconstruct(), f);
        for (g, _) in &fac.factors {
            prop_assert_ne!(irreducibility_oracle(g), IrreducibilityOracle::Reducible, "{}", g);
        }
    }

    #[test]
    fn polygon_sum_is_constant_over_leading(c in proptest::collection::vec(1i64..=200, 2..=6), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let f = UniPoly::from_ints(&c);
        let vals = newton_polygon_root_valuations(&f, p);
        prop_assert_eq!(vals.len(), f.deg());
        let s: Rational = vals.into_iter().sum();
        let want = Rational::from_integer((ord_p(&f.coeff(0), p) - ord_p(&f.lead(), p)).into());
        prop_assert_eq!(s, want);
    }

    #[test]
    fn discrepancy_formula_matches_brute_force(den in 1i64..60, nums in proptest::collection::vec(0i64..60, 1..20)) {
        let xs: Vec<Rational> = nums.iter().map(|&n| rat(n % den, den)).collect();
        let a = discrepancy_on_circle_exact(&xs).unwrap();
        prop_assert_eq!(a.clone(), discrepancy_brute_force(&xs).unwrap());
        prop_assert!(a > Rational::zero() && a <= Rational::from_integer(1.into()));
    }

    #[test]
    fn word_roundtrip(v in proptest::collection::vec(0usize..9, 0..8)) {
        let w = Word(v);
        prop_assert_eq!(w.to_string().parse::<Word>().unwrap(), w);
    }

    #[test]
    fn scan_config_roundtrip(a in 2i64..50, d in 2i64..5, b in 3i64..90, depth in 1usize..6) {
        let json = format!(r#"{{"generators":[{{"a":"{a}","d":{d}}},{{"a":"1/{a}","d":-{d}}}],"S":["inf",2,5],"beta":"{b}/7","max_wordlen":{depth}}}"#);
        let cfg = ScanConfig::from_json(&json).unwrap();
        let back = ScanConfig::from_json(&serde_json::to_string(&cfg).unwrap()).unwrap();
        prop_assert_eq!(back, cfg);
    }
}

#[test]
fn semigroup_rejects_low_degree() {
    assert!(Semigroup::from_json(r#"{"generators":[{"a":"2","d":1}]}"#).is_err());
    assert!(Semigroup::from_json(r#"{"generators":[{"a":"0","d":2}]}"#).is_err());
    assert!(Semigroup::from_json(r#"{"generators":[]}"#).is_err());
}
