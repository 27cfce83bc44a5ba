use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::place::Prime;
use crate::{Error, Result};

/// Trial-division bound used when no explicit bound is given.
pub const DEFAULT_FACTOR_BOUND: u64 = 1_000_000;

const MR_BASES: [u64; 20] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71];

/// Miller-Rabin with the first twenty prime bases. The first thirteen already
/// make the test exact below 3.3 * 10^24.
pub fn is_prime(n: &BigInt) -> bool {
    if n < &BigInt::from(2) {
        return false;
    }
    if let Some(small) = n.to_u64() {
        if small < 4 {
            return true;
        }
        for &p in &MR_BASES {
            if small == p {
                return true;
            }
            if small % p == 0 {
                return false;
            }
        }
        return miller_rabin_u64(small);
    }
    for &p in &MR_BASES {
        if (n % p).is_zero() {
            return false;
        }
    }
    let one = BigInt::one();
    let n_minus_one = n - &one;
    let s = n_minus_one.trailing_zeros().unwrap_or(0);
    let d = &n_minus_one >> s;
    'bases: for &a in &MR_BASES {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x == one || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_one {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

// Deterministic for all 64-bit inputs with the first twelve prime bases.
fn miller_rabin_u64(n: u64) -> bool {
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &MR_BASES[..12] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Factorization of `|n|` into `(prime, exponent)` pairs in increasing order.
pub fn factorize(n: &BigInt) -> Result<Vec<(Prime, u32)>> {
    factorize_with_bound(n, DEFAULT_FACTOR_BOUND)
}

pub fn factorize_with_bound(n: &BigInt, bound: u64) -> Result<Vec<(Prime, u32)>> {
    if n.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let mut rest = n.abs();
    let mut out = Vec::new();
    if let Some(small) = rest.to_u64() {
        let (factors, cofactor) = trial_divide_u64(small, bound);
        out.extend(factors.into_iter().map(|(p, e)| (Prime::new_unchecked(BigInt::from(p)), e)));
        rest = BigInt::from(cofactor);
    } else {
        let mut d: u64 = 2;
        while d <= bound {
            let db = BigInt::from(d);
            if &db * &db > rest {
                break;
            }
            let mut e = 0;
            loop {
                let (q, r) = rest.div_rem(&db);
                if !r.is_zero() {
                    break;
                }
                rest = q;
                e += 1;
            }
            if e > 0 {
                out.push((Prime::new_unchecked(db), e));
            }
            d += if d == 2 { 1 } else { 2 };
        }
    }
    if !rest.is_one() {
        // Anything left has no factor <= min(bound, sqrt(rest)).
        let b = BigInt::from(bound);
        if rest <= &b * &b || is_prime(&rest) {
            out.push((Prime::new_unchecked(rest), 1));
        } else {
            return Err(Error::FactorizationBoundExceeded { cofactor: rest });
        }
    }
    Ok(out)
}

fn trial_divide_u64(mut n: u64, bound: u64) -> (Vec<(u64, u32)>, u64) {
    let mut out = Vec::new();
    let mut d = 2u64;
    let limit = bound.min(n.sqrt() + 1);
    while d <= limit && d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    (out, n)
}

/// Distinct primes dividing `n`.
pub fn prime_divisors(n: &BigInt) -> Result<Vec<Prime>> {
    Ok(factorize(n)?.into_iter().map(|(p, _)| p).collect())
}

/// `n = s * f^2` with `s` squarefree carrying the sign of `n` and `f > 0`.
pub fn squarefree_part(n: &BigInt) -> Result<(BigInt, BigInt)> {
    squarefree_part_with_bound(n, DEFAULT_FACTOR_BOUND)
}

pub fn squarefree_part_with_bound(n: &BigInt, bound: u64) -> Result<(BigInt, BigInt)> {
    let mut s = BigInt::one();
    let mut f = BigInt::one();
    for (p, e) in factorize_with_bound(n, bound)? {
        if e % 2 == 1 {
            s *= p.value();
        }
        f *= p.value().pow(e / 2);
    }
    if n.is_negative() {
        s = -s;
    }
    Ok((s, f))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sf(n: i64) -> (i64, i64) {
        let (s, f) = squarefree_part(&BigInt::from(n)).unwrap();
        (s.to_i64().unwrap(), f.to_i64().unwrap())
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(sf(12), (3, 2));
        assert_eq!(sf(-50), (-2, 5));
        assert_eq!(sf(17), (17, 1));
        assert_eq!(sf(1), (1, 1));
        assert_eq!(sf(-1), (-1, 1));
        assert_eq!(squarefree_part(&BigInt::zero()), Err(Error::ZeroArgument));
    }

    #[test]
    fn primality_matches_sieve() {
        let mut sieve = alloc::vec![true; 5000];
        sieve[0] = false;
        sieve[1] = false;
        for i in 2..5000 {
            if sieve[i] {
                let mut j = i * i;
                while j < 5000 {
                    sieve[j] = false;
                    j += i;
                }
            }
        }
        for (i, &flag) in sieve.iter().enumerate() {
            assert_eq!(is_prime(&BigInt::from(i)), flag, "{i}");
        }
        // Carmichael numbers and a strong pseudoprime to base 2.
        for c in [561u64, 1105, 1729, 2047, 3215031751] {
            assert!(!is_prime(&BigInt::from(c)));
        }
        let m61 = (BigInt::one() << 61) - 1;
        assert!(is_prime(&m61));
        let m127 = (BigInt::one() << 127) - 1;
        assert!(is_prime(&m127));
        assert!(!is_prime(&(&m61 * &m127)));
    }

    #[test]
    fn bound_exceeded_for_hidden_square() {
        // (10^6 + 3)^2 * 2 has no factor below a tiny bound and is not prime.
        let p = BigInt::from(1_000_003u64);
        let n = &p * &p * 2;
        match squarefree_part_with_bound(&n, 100) {
            Err(Error::FactorizationBoundExceeded { cofactor }) => assert_eq!(cofactor, &p * &p),
            other => panic!("unexpected {other:?}"),
        }
        assert!(squarefree_part(&n).is_err());
        assert_eq!(squarefree_part_with_bound(&n, 1_000_003).unwrap(), (BigInt::from(2), p));
    }

    #[test]
    fn large_prime_cofactor_accepted() {
        let m89 = (BigInt::one() << 89) - 1;
        let n = &m89 * 12;
        assert_eq!(squarefree_part(&n).unwrap(), (&m89 * 3, BigInt::from(2)));
    }
}
