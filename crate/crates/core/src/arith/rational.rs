use alloc::format;
use alloc::string::{String, ToString};
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// Exact rational number; always stored in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Parses `"n"` or `"p/q"`. A leading Unicode minus sign is accepted as well.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let cleaned = s.trim().replace('\u{2212}', "-");
    let parsed = match cleaned.split_once('/') {
        Some((n, d)) => {
            let n = parse_integer(n)?;
            let d = parse_integer(d)?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Rational::new(n, d)
        }
        None => Rational::from_integer(parse_integer(&cleaned)?),
    };
    Ok(parsed)
}

pub fn parse_integer(s: &str) -> Result<BigInt> {
    let cleaned = s.trim().replace('\u{2212}', "-");
    let body = cleaned.strip_prefix('+').unwrap_or(&cleaned);
    BigInt::from_str(body).map_err(|_| Error::Parse(format!("not an integer: {s:?}")))
}

/// `"n"` for integers, `"p/q"` otherwise.
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Strips every factor `p` from a nonzero integer; returns `(v_p(n), n / p^v)`.
pub fn int_valuation(n: &BigInt, p: &BigInt) -> (u64, BigInt) {
    debug_assert!(!n.is_zero());
    let mut v = 0;
    let mut rest = n.clone();
    loop {
        let (q, r) = rest.div_rem(p);
        if !r.is_zero() {
            return (v, rest);
        }
        rest = q;
        v += 1;
    }
}

/// `ord_p(x)`; `None` stands for the valuation of zero (+infinity).
pub fn padic_valuation(x: &Rational, p: &BigInt) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    let (vn, _) = int_valuation(x.numer(), p);
    let (vd, _) = int_valuation(x.denom(), p);
    Some(vn as i64 - vd as i64)
}

/// Splits a nonzero rational as `p^v * u` with `u` a p-adic unit.
pub fn rational_unit_part(x: &Rational, p: &BigInt) -> (i64, Rational) {
    let (vn, un) = int_valuation(x.numer(), p);
    let (vd, ud) = int_valuation(x.denom(), p);
    (vn as i64 - vd as i64, Rational::new(un, ud))
}

/// An integer in the same square class as `x`: `num * den`.
pub fn square_class_integer(x: &Rational) -> BigInt {
    x.numer() * x.denom()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn valuation_examples() {
        let two = BigInt::from(2);
        let three = BigInt::from(3);
        assert_eq!(padic_valuation(&q("12"), &two), Some(2));
        assert_eq!(padic_valuation(&q("1/9"), &three), Some(-2));
        assert_eq!(padic_valuation(&q("7"), &BigInt::from(5)), Some(0));
        assert_eq!(padic_valuation(&q("0"), &two), None);
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(format_rational(&q("6/-4")), "-3/2");
        assert_eq!(format_rational(&q("\u{2212}17")), "-17");
        assert_eq!(format_rational(&q("+8/2")), "4");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
