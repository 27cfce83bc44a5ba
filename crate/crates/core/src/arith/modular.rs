use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::factor::factorize;
use super::place::Prime;
use crate::Result;

/// Legendre symbol `(a/p)` for an odd prime, by Euler's criterion.
pub fn legendre_symbol(a: &BigInt, p: &Prime) -> i8 {
    let p = p.value();
    debug_assert!(p.is_odd());
    let r = a.mod_floor(p);
    if r.is_zero() {
        return 0;
    }
    let e = (p - 1u32) >> 1;
    if r.modpow(&e, p).is_one() {
        1
    } else {
        -1
    }
}

/// Inverse of `a` modulo `m`, if it exists; the result lies in `[0, m)`.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// A square root of `a` modulo the prime `p` (Tonelli-Shanks), in `[0, p)`.
pub fn sqrt_mod_prime(a: &BigInt, p: &Prime) -> Option<BigInt> {
    let pv = p.value();
    let a = a.mod_floor(pv);
    if a.is_zero() || p.is_two() {
        return Some(a);
    }
    if legendre_symbol(&a, p) != 1 {
        return None;
    }
    let one = BigInt::one();
    let p_minus_one = pv - &one;
    let s = p_minus_one.trailing_zeros().unwrap_or(0);
    let q = &p_minus_one >> s;
    let mut z = BigInt::from(2);
    while legendre_symbol(&z, p) != -1 {
        z += 1;
    }
    let mut m = s;
    let mut c = z.modpow(&q, pv);
    let mut t = a.modpow(&q, pv);
    let mut r = a.modpow(&((&q + &one) >> 1), pv);
    while !t.is_one() {
        let mut i = 0;
        let mut t2 = t.clone();
        while !t2.is_one() {
            t2 = (&t2 * &t2) % pv;
            i += 1;
        }
        let b = c.modpow(&(BigInt::one() << (m - i - 1)), pv);
        m = i;
        c = (&b * &b) % pv;
        t = (t * &c) % pv;
        r = (r * b) % pv;
    }
    Some(r)
}

/// Combines `x = r1 mod m1` and `x = r2 mod m2` for coprime moduli.
pub fn crt_pair(r1: &BigInt, m1: &BigInt, r2: &BigInt, m2: &BigInt) -> BigInt {
    let inv = mod_inverse(m1, m2).expect("moduli must be coprime");
    let k = ((r2 - r1) * inv).mod_floor(m2);
    (r1 + k * m1).mod_floor(&(m1 * m2))
}

/// Every square root of `a` modulo the squarefree modulus `|b|`, sorted.
/// `Ok(None)` when `a` is not a square modulo some prime dividing `b`.
pub fn sqrt_mod_squarefree(a: &BigInt, b: &BigInt) -> Result<Option<Vec<BigInt>>> {
    let modulus = b.abs();
    let mut roots = vec![BigInt::zero()];
    let mut acc = BigInt::one();
    if modulus.is_one() {
        return Ok(Some(roots));
    }
    for (p, e) in factorize(&modulus)? {
        debug_assert_eq!(e, 1, "modulus must be squarefree");
        let Some(r) = sqrt_mod_prime(a, &p) else {
            return Ok(None);
        };
        let pv = p.value();
        let mut local = vec![r.clone()];
        let neg = (pv - &r).mod_floor(pv);
        if neg != r {
            local.push(neg);
        }
        let mut next = Vec::with_capacity(roots.len() * local.len());
        for x in &roots {
            for y in &local {
                next.push(crt_pair(x, &acc, y, pv));
            }
        }
        acc *= pv;
        roots = next;
    }
    roots.sort();
    Ok(Some(roots))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre_symbol(&BigInt::from(2), &p(17)), 1);
        assert_eq!(legendre_symbol(&BigInt::from(3), &p(17)), -1);
        assert_eq!(legendre_symbol(&BigInt::from(0), &p(7)), 0);
        assert_eq!(legendre_symbol(&BigInt::from(-1), &p(5)), 1);
        assert_eq!(legendre_symbol(&BigInt::from(-1), &p(7)), -1);
    }

    #[test]
    fn legendre_against_enumeration() {
        for q in [3u64, 5, 7, 11, 13, 17, 19, 23, 97] {
            let squares: Vec<u64> = (1..q).map(|x| x * x % q).collect();
            for a in 0..q {
                let expected = if a == 0 {
                    0
                } else if squares.contains(&a) {
                    1
                } else {
                    -1
                };
                assert_eq!(legendre_symbol(&BigInt::from(a), &p(q)), expected, "({a}/{q})");
            }
        }
    }

    #[test]
    fn tonelli_shanks_roots_square_back() {
        for q in [2u64, 3, 5, 13, 17, 41, 97, 193, 1_000_003] {
            let pr = p(q);
            for a in 0..60u64 {
                let a = BigInt::from(a);
                match sqrt_mod_prime(&a, &pr) {
                    Some(r) => assert_eq!((&r * &r - &a).mod_floor(pr.value()), BigInt::zero()),
                    None => assert_eq!(legendre_symbol(&a, &pr), -1),
                }
            }
        }
    }

    #[test]
    fn squarefree_roots() {
        let roots = sqrt_mod_squarefree(&BigInt::from(2), &BigInt::from(7)).unwrap().unwrap();
        assert_eq!(roots, vec![BigInt::from(3), BigInt::from(4)]);
        let roots = sqrt_mod_squarefree(&BigInt::from(4), &BigInt::from(-105)).unwrap().unwrap();
        assert_eq!(roots.len(), 8);
        for r in &roots {
            assert!(((r * r - BigInt::from(4)) % BigInt::from(105)).is_zero());
        }
        assert_eq!(sqrt_mod_squarefree(&BigInt::from(3), &BigInt::from(7)).unwrap(), None);
    }
}
