use alloc::vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::arith::residue::diagonal_has_local_zero;
use crate::arith::{legendre_symbol, mod_inverse, rational_unit_part, Place, Prime, Rational};

/// Depth of the 2-adic residue search for the norm form `u^2 - a v^2 - b w^2`.
pub const TWO_ADIC_DEPTH: u32 = 6;

/// The tame symbol `(-1)^{v(a)v(b)} a^{-v(b)} b^{v(a)}` reduced into `F_p^*`, for odd `p`.
pub fn hilbert_residue(a: &Rational, b: &Rational, p: &Prime) -> BigInt {
    assert!(!p.is_two(), "the residue formula needs odd residue characteristic");
    assert!(!a.is_zero() && !b.is_zero());
    let pv = p.value();
    let (alpha, ua) = rational_unit_part(a, pv);
    let (beta, ub) = rational_unit_part(b, pv);
    let reduce = |u: &Rational| -> BigInt {
        let inv = mod_inverse(u.denom(), pv).expect("unit");
        (u.numer() * inv).mod_floor(pv)
    };
    let ua = reduce(&ua);
    let ub = reduce(&ub);
    let pow = |x: &BigInt, e: i64| -> BigInt {
        let base = if e < 0 { mod_inverse(x, pv).expect("unit") } else { x.clone() };
        base.modpow(&BigInt::from(e.unsigned_abs()), pv)
    };
    let mut r = (pow(&ua, -beta) * pow(&ub, alpha)).mod_floor(pv);
    if (alpha * beta).rem_euclid(2) == 1 {
        r = (pv - r).mod_floor(pv);
    }
    r
}

/// `(a, b)_v`: `+1` when `u^2 - a v^2 - b w^2` has a nontrivial zero over `Q_v`, else `-1`.
pub fn hilbert_symbol(a: &Rational, b: &Rational, v: &Place) -> i8 {
    assert!(!a.is_zero() && !b.is_zero(), "Hilbert symbol of zero");
    match v {
        Place::Real => {
            if a.is_negative() && b.is_negative() {
                -1
            } else {
                1
            }
        }
        Place::Finite(p) if p.is_two() => {
            let coeffs = vec![Rational::from_integer(1.into()), -a.clone(), -b.clone()];
            if diagonal_has_local_zero(&coeffs, p, TWO_ADIC_DEPTH) {
                1
            } else {
                -1
            }
        }
        Place::Finite(p) => legendre_symbol(&hilbert_residue(a, b, p), p),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn at(p: u64) -> Place {
        Place::finite(p).unwrap()
    }

    #[test]
    fn symbol_examples() {
        assert_eq!(hilbert_symbol(&q(-1), &q(-1), &Place::Real), -1);
        assert_eq!(hilbert_symbol(&q(-1), &q(-1), &at(2)), -1);
        assert_eq!(hilbert_symbol(&q(17), &q(3), &at(17)), -1);
        assert_eq!(hilbert_residue(&q(17), &q(3), &Prime::new(17).unwrap()), BigInt::from(3));
        assert_eq!(hilbert_residue(&q(17), &q(3), &Prime::new(3).unwrap()), BigInt::from(2));
        assert_eq!(hilbert_symbol(&q(17), &q(3), &at(3)), -1);
        assert_eq!(hilbert_symbol(&q(2), &q(7), &at(7)), 1);
        assert_eq!(hilbert_symbol(&q(2), &q(7), &at(2)), 1);
    }

    /// Classical closed form of the 2-adic symbol, used only as an independent check.
    fn serre_two_adic(a: i64, b: i64) -> i8 {
        let (alpha, u) = split2(a);
        let (beta, v) = split2(b);
        let eps = |x: i64| ((x - 1) / 2).rem_euclid(2);
        let omega = |x: i64| ((x * x - 1) / 8).rem_euclid(2);
        let e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u);
        if e % 2 == 0 {
            1
        } else {
            -1
        }
    }

    fn split2(mut x: i64) -> (i64, i64) {
        let mut k = 0;
        while x % 2 == 0 {
            x /= 2;
            k += 1;
        }
        (k, x)
    }

    #[test]
    fn two_adic_search_matches_closed_form() {
        for a in -40i64..=40 {
            for b in -40i64..=40 {
                if a == 0 || b == 0 {
                    continue;
                }
                assert_eq!(hilbert_symbol(&q(a), &q(b), &at(2)), serre_two_adic(a, b), "({a},{b})");
            }
        }
    }

    #[test]
    fn steinberg_relation_at_every_small_place() {
        for n in [-7i64, -3, 2, 5, 6, 10] {
            for d in [1i64, 3, 4] {
                let a = Rational::new(n.into(), d.into());
                let b = q(1) - &a;
                if b.is_zero() {
                    continue;
                }
                for v in [Place::Real, at(2), at(3), at(5), at(7), at(11), at(13)] {
                    assert_eq!(hilbert_symbol(&a, &b, &v), 1, "a = {a} at {v}");
                }
            }
        }
    }
}
