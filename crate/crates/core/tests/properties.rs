use std::collections::BTreeMap;

use num_complex::Complex64;
use proptest::prelude::*;

use singmon_core::arith::divisors;
use singmon_core::mckay::{build_root_system, kac_dims, pg_series, RootLabel};
use singmon_core::seifert::{self, partial_fraction_eval, wagreich3_check, ResidueFormula};
use singmon_core::verify::brieskorn;
use singmon_core::FrameShape;

fn config() -> ProptestConfig {
    ProptestConfig::with_cases(256)
}

/// A level `h <= 60` and a shape supported on its divisors.
fn shape_at_level() -> impl Strategy<Value = (u64, FrameShape)> {
    (1u64..=60).prop_flat_map(|h| {
        let divs = divisors(h);
        let n = divs.len();
        (Just(h), proptest::collection::vec(-4i64..=4, n)).prop_map(move |(h, es)| {
            let shape = FrameShape::from_pairs(divisors(h).into_iter().zip(es));
            (h, shape)
        })
    })
}

fn any_shape(max_period: u64) -> impl Strategy<Value = FrameShape> {
    proptest::collection::vec((1..=max_period, -3i64..=3), 0..5).prop_map(FrameShape::from_pairs)
}

/// Products of cyclotomic polynomials with indices up to 30 and
/// multiplicities up to 4.
fn polynomial_shape() -> impl Strategy<Value = FrameShape> {
    proptest::collection::btree_map(1u64..=30, 1i64..=4, 0..4)
        .prop_map(|e: BTreeMap<u64, i64>| FrameShape::from_cyclotomic_multiplicities(&e))
}

fn root_label() -> impl Strategy<Value = RootLabel> {
    prop_oneof![
        (1usize..=10).prop_map(RootLabel::A),
        (4usize..=10).prop_map(RootLabel::D),
        Just(RootLabel::E6),
        Just(RootLabel::E7),
        Just(RootLabel::E8),
    ]
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn saito_dual_is_an_involution((h, shape) in shape_at_level()) {
        let dual = shape.saito_dual(h).unwrap();
        prop_assert_eq!(dual.saito_dual(h).unwrap(), shape.clone());
        prop_assert_eq!(dual.total_exponent(), -shape.total_exponent());
    }

    #[test]
    fn factor_roundtrip(shape in polynomial_shape()) {
        let p = shape.to_polynomial().unwrap();
        prop_assert_eq!(FrameShape::factor_cyclotomic(&p).unwrap(), shape);
    }

    #[test]
    fn series_is_multiplicative(a in any_shape(20), b in any_shape(20), n in 0usize..=64) {
        let lhs = a.mul(&b).expand_series(n);
        let rhs = a.expand_series(n).mul(&b.expand_series(n));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn mobius_roundtrip((h, shape) in shape_at_level()) {
        let lambdas: BTreeMap<u64, i64> = divisors(h).into_iter().map(|k| (k, shape.newton_sum(k))).collect();
        prop_assert_eq!(FrameShape::from_newton_sums(&lambdas, h).unwrap(), shape);
    }

    #[test]
    fn kac_dimension_identity(label in root_label(), m in 0usize..=100) {
        let spec = build_root_system(label).unwrap();
        let dims = kac_dims(&spec).unwrap();
        let v = &pg_series(&spec, m)[m];
        let s: i64 = v.iter().zip(&dims).map(|(&x, &d)| x * d as i64).sum();
        prop_assert!(v.iter().all(|&x| x >= 0));
        prop_assert_eq!(s, m as i64 + 1);
    }

    #[test]
    fn wagreich_exact_conditions(a in 2u64..=12, b in 2u64..=12, c in 2u64..=12) {
        let (q, d) = brieskorn(a, b, c);
        let data = seifert::hypersurface_seifert(q, d).unwrap();
        let rep = wagreich3_check(q, d, &data, ResidueFormula::Printed);
        prop_assert!(rep.exact_conditions_hold(), "{:?}", rep);
    }

    #[test]
    fn newton_sums_match_roots(shape in polynomial_shape(), k in 1u64..=60) {
        let numeric = shape.roots_power_sum_numeric(k).unwrap();
        prop_assert!((numeric.re - shape.newton_sum(k) as f64).abs() < 1e-9);
        prop_assert!(numeric.im.abs() < 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn residue_reconstruction(
        a in 2u64..=7, b in 2u64..=7, c in 2u64..=7,
        points in proptest::collection::vec((0.3f64..=0.7, 0.0f64..std::f64::consts::TAU), 20),
    ) {
        let (q, d) = brieskorn(a, b, c);
        let p = seifert::WeightSystem::hypersurface(q, d).unwrap().poincare_series();
        for (r, theta) in points {
            let t = Complex64::from_polar(r, theta);
            let direct = p.eval(t);
            let rebuilt = partial_fraction_eval(&p, t);
            prop_assert!((direct - rebuilt).norm() < 1e-7, "{} at {}: {} vs {}", p, t, direct, rebuilt);
        }
    }
}
