use brauerkit_core::arith::{is_prime, Place, Prime};
use brauerkit_core::brauer::QmodZ;
use brauerkit_core::lind_reichardt::{
    lift_point, local_point, local_point_with_precision, obstruction_conclusion_with, pairing,
    pairing_via_representative, search_rational_points, Chart,
};
use num_bigint::BigInt;
use proptest::prelude::*;

fn odd_prime() -> impl Strategy<Value = u64> {
    (3u64..400).prop_filter("odd prime", |&p| is_prime(&BigInt::from(p)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn charts_agree_on_the_overlap(p in odd_prime(), t in 1u64..10_000, precision in 3u32..16) {
        let prime = Prime::new(p).unwrap();
        let t = BigInt::from(t);
        prop_assume!(&t % p != BigInt::from(0));
        if let Some(pt) = lift_point(Chart::U, &t, &prime, precision).unwrap() {
            prop_assert!(pt.satisfies_equation());
            let v = pt.to_chart_v().unwrap();
            prop_assert!(v.satisfies_equation());
            prop_assert_eq!(pairing_via_representative(&pt).unwrap(), pairing_via_representative(&v).unwrap());
            prop_assert_eq!(pairing(&pt).unwrap(), pairing(&v).unwrap());
        }
    }

    #[test]
    fn pairing_ignores_precision(p in odd_prime(), k1 in 2u32..8, k2 in 8u32..24) {
        let v = Place::finite(p).unwrap();
        let a = pairing_via_representative(&local_point_with_precision(&v, k1).unwrap()).unwrap();
        let b = pairing_via_representative(&local_point_with_precision(&v, k2).unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn sampled_adelic_points_pair_to_one_half() {
    let mut total = QmodZ::ZERO;
    for v in std::iter::once(Place::Real).chain((2..=300u64).filter(|&p| is_prime(&BigInt::from(p))).map(|p| Place::finite(p).unwrap())) {
        total = total + pairing(&local_point(&v).unwrap()).unwrap();
    }
    assert_eq!(total, QmodZ::HALF);
    assert_eq!(obstruction_conclusion_with(100, 1000).unwrap().verdict, "empty");
}

#[test]
fn no_rational_points_of_height_up_to_ten_thousand() {
    let r = search_rational_points(10_000);
    assert!(r.found.is_empty());
    assert!(r.candidates > 10_000_000);
}
