use brauerkit_core::arith::squarefree_part;
use brauerkit_core::brauer::{
    conic_point, descent_split_trace, is_split, local_invariants, product_formula_check, ConicSolution,
    DescentOutcome, QuaternionClass,
};
use brauerkit_core::Rational;
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

fn squarefree(n: i64) -> i64 {
    let (s, _) = squarefree_part(&BigInt::from(n)).unwrap();
    s.try_into().unwrap()
}

fn nonzero(bound: i64) -> impl Strategy<Value = i64> {
    (-bound..=bound).prop_filter("nonzero", |x| *x != 0)
}

fn class(a: i64, b: i64) -> QuaternionClass {
    QuaternionClass::from_integers(a, b).unwrap()
}

fn rational() -> impl Strategy<Value = Rational> {
    (nonzero(500), 1i64..=60).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn invariants_are_bimultiplicative(a in nonzero(2000), a2 in nonzero(2000), b in nonzero(2000)) {
        let (a, a2, b) = (squarefree(a), squarefree(a2), squarefree(b));
        let lhs = local_invariants(&class(a * a2, b));
        let rhs = local_invariants(&class(a, b)).add(&local_invariants(&class(a2, b)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn steinberg_and_antisymmetry(a in rational(), b in rational()) {
        let one = Rational::from_integer(1.into());
        if a != one {
            prop_assert!(is_split(&QuaternionClass::new(a.clone(), &one - &a).unwrap()));
        }
        prop_assert!(is_split(&QuaternionClass::new(a.clone(), -a.clone()).unwrap()));
        let ab = local_invariants(&QuaternionClass::new(a.clone(), b.clone()).unwrap());
        let ba = local_invariants(&QuaternionClass::new(b, a).unwrap());
        prop_assert_eq!(ab, ba);
    }

    #[test]
    fn conic_points_satisfy_the_equation(a in rational(), b in rational()) {
        match conic_point(&a, &b).unwrap() {
            ConicSolution::Point([u, v, w]) => {
                prop_assert!(!(u.is_zero() && v.is_zero() && w.is_zero()));
                let (u, v, w) = (Rational::from_integer(u), Rational::from_integer(v), Rational::from_integer(w));
                prop_assert!((&u * &u - &a * &v * &v - &b * &w * &w).is_zero());
            }
            ConicSolution::Obstructed(_) => {
                prop_assert!(!is_split(&QuaternionClass::new(a, b).unwrap()));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn product_formula_holds(a in nonzero(10_000), b in nonzero(10_000)) {
        let (a, b) = (squarefree(a), squarefree(b));
        prop_assert!(product_formula_check(&class(a, b)));
    }
}

#[test]
fn descent_decides_splitting_exhaustively() {
    for a in -200i64..=200 {
        if a == 0 || squarefree(a) != a {
            continue;
        }
        for b in -200i64..=200 {
            if b == 0 || squarefree(b) != b {
                continue;
            }
            let t = descent_split_trace(&BigInt::from(a), &BigInt::from(b)).unwrap();
            let split = is_split(&class(a, b));
            assert_eq!(t.outcome == DescentOutcome::BaseCaseSplit, split, "({a}, {b})");
            for pair in t.steps.windows(2) {
                let m0 = pair[0].a.magnitude() + pair[0].b.magnitude();
                let m1 = pair[1].a.magnitude() + pair[1].b.magnitude();
                assert!(m1 < m0);
            }
        }
    }
}
