use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::modular::{legendre_symbol, mod_inverse};
use super::place::{Place, Prime};
use super::poly::IntPoly;
use super::rational::{int_valuation, rational_unit_part, Rational};
use crate::{Error, Result};

/// `unit * p^valuation`, with the unit known modulo `p^precision`.
///
/// Equivalently the value is known modulo `p^(valuation + precision)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PAdicApprox {
    prime: Prime,
    valuation: i64,
    unit: BigInt,
    precision: u32,
}

impl PAdicApprox {
    pub fn new(prime: Prime, valuation: i64, unit: BigInt, precision: u32) -> Result<Self> {
        if precision == 0 {
            return Err(Error::InvalidArgument("p-adic precision must be at least 1".into()));
        }
        let modulus = prime.value().pow(precision);
        let unit = unit.mod_floor(&modulus);
        if (&unit % prime.value()).is_zero() {
            return Err(Error::InvalidArgument("unit part must be coprime to p".into()));
        }
        Ok(PAdicApprox { prime, valuation, unit, precision })
    }

    /// The element represented by the integer `x`, known modulo `p^abs_precision`.
    pub fn from_integer_mod(prime: Prime, x: &BigInt, abs_precision: u32) -> Result<Self> {
        let modulus = prime.value().pow(abs_precision);
        let r = x.mod_floor(&modulus);
        if r.is_zero() {
            return Err(Error::InsufficientPrecision);
        }
        let (m, unit) = int_valuation(&r, prime.value());
        Self::new(prime, m as i64, unit, abs_precision - m as u32)
    }

    /// An exact nonzero rational truncated to the given relative precision.
    pub fn from_rational(x: &Rational, prime: Prime, precision: u32) -> Result<Self> {
        if x.is_zero() {
            return Err(Error::ZeroArgument);
        }
        let (m, u) = rational_unit_part(x, prime.value());
        let modulus = prime.value().pow(precision);
        let inv = mod_inverse(u.denom(), &modulus).expect("unit denominator is invertible");
        Self::new(prime, m, u.numer() * inv, precision)
    }

    pub fn prime(&self) -> &Prime {
        &self.prime
    }

    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    pub fn unit(&self) -> &BigInt {
        &self.unit
    }

    /// Relative precision: digits of the unit that are known.
    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// Absolute precision `valuation + precision`.
    pub fn absolute_precision(&self) -> i64 {
        self.valuation + self.precision as i64
    }

    /// A rational representative `unit * p^valuation`.
    pub fn to_rational(&self) -> Rational {
        let p = self.prime.value();
        if self.valuation >= 0 {
            Rational::from_integer(&self.unit * p.pow(self.valuation as u32))
        } else {
            Rational::new(self.unit.clone(), p.pow((-self.valuation) as u32))
        }
    }

    /// The unit part modulo `p^digits`.
    pub fn unit_residue(&self, digits: u32) -> Result<BigInt> {
        if digits > self.precision {
            return Err(Error::InsufficientPrecision);
        }
        Ok(&self.unit % self.prime.value().pow(digits))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.prime, other.prime, "mixed primes");
        let precision = self.precision.min(other.precision);
        let modulus = self.prime.value().pow(precision);
        PAdicApprox {
            prime: self.prime.clone(),
            valuation: self.valuation + other.valuation,
            unit: (&self.unit * &other.unit).mod_floor(&modulus),
            precision,
        }
    }

    pub fn inverse(&self) -> Self {
        let modulus = self.prime.value().pow(self.precision);
        PAdicApprox {
            prime: self.prime.clone(),
            valuation: -self.valuation,
            unit: mod_inverse(&self.unit, &modulus).expect("unit is invertible"),
            precision: self.precision,
        }
    }

    /// Whether the represented element is a square in Q_p. Needs one digit of
    /// unit precision for odd p and three for p = 2.
    pub fn is_square(&self) -> Result<bool> {
        if self.valuation.rem_euclid(2) == 1 {
            return Ok(false);
        }
        if self.prime.is_two() {
            Ok(self.unit_residue(3)? == BigInt::one())
        } else {
            Ok(legendre_symbol(&self.unit_residue(1)?, &self.prime) == 1)
        }
    }

    /// An integer in the same Q_p square class: `p^(v mod 2) * (unit mod p^d)`,
    /// with `d = 1` for odd p and `d = 3` for p = 2.
    pub fn square_class_representative(&self) -> Result<BigInt> {
        let digits = if self.prime.is_two() { 3 } else { 1 };
        let u = self.unit_residue(digits)?;
        if self.valuation.rem_euclid(2) == 1 {
            Ok(u * self.prime.value())
        } else {
            Ok(u)
        }
    }
}

/// Newton iteration for a root of `f` near `seed` in Z_p.
///
/// Requires `v(f(seed)) > 2 v(f'(seed))`. The returned approximation `x`
/// is the root modulo `p^k` and satisfies `f(x) = 0 mod p^k`.
pub fn hensel_lift(f: &IntPoly, seed: &BigInt, p: &Prime, k: u32) -> Result<PAdicApprox> {
    if k == 0 {
        return Err(Error::InvalidArgument("target precision must be positive".into()));
    }
    let pv = p.value();
    let df = f.derivative();
    let f0 = f.eval(seed);
    let d0 = df.eval(seed);
    if d0.is_zero() {
        return Err(Error::HenselConditionFailed);
    }
    let (t, _) = int_valuation(&d0, pv);
    let t = t as u32;
    if !f0.is_zero() && int_valuation(&f0, pv).0 <= 2 * t as u64 {
        return Err(Error::HenselConditionFailed);
    }
    // Work modulo p^(k+t) so that the root is pinned down modulo p^k.
    let work = k + t;
    let modulus = pv.pow(work);
    let pt = pv.pow(t);
    let mut x = seed.mod_floor(&modulus);
    loop {
        let fx = f.eval(&x).mod_floor(&modulus);
        if fx.is_zero() {
            break;
        }
        let dx = df.eval(&x);
        let (_, unit) = int_valuation(&dx, pv);
        let step = (&fx / &pt) * mod_inverse(&unit, &modulus).expect("unit");
        x = (x - step).mod_floor(&modulus);
    }
    PAdicApprox::from_integer_mod(p.clone(), &x, k)
}

/// Whether the nonzero rational `x` is a square in the completion at `v`.
pub fn is_square_local(x: &Rational, v: &Place) -> bool {
    assert!(!x.is_zero(), "is_square_local expects a nonzero argument");
    match v {
        Place::Real => x.is_positive(),
        Place::Finite(p) => {
            let (m, u) = rational_unit_part(x, p.value());
            if m.rem_euclid(2) == 1 {
                return false;
            }
            let class = u.numer() * u.denom();
            if p.is_two() {
                class.mod_floor(&BigInt::from(8)).is_one()
            } else {
                legendre_symbol(&class, p) == 1
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn square_local_examples() {
        assert!(is_square_local(&q(17, 1), &Place::Finite(p(2))));
        assert!(is_square_local(&q(2, 1), &Place::Finite(p(17))));
        assert!(!is_square_local(&q(3, 1), &Place::Finite(p(17))));
        assert!(is_square_local(&q(2, 1), &Place::Real));
        assert!(!is_square_local(&q(-1, 4), &Place::Real));
        assert!(!is_square_local(&q(3, 4), &Place::Finite(p(2))));
        assert!(is_square_local(&q(1, 17), &Place::Finite(p(2))));
    }

    #[test]
    fn two_adic_criterion_matches_residue_enumeration() {
        // Unit u is a 2-adic square iff u = x^2 mod 2^6 for an odd x.
        let squares: Vec<i64> = (1..64).step_by(2).map(|x: i64| x * x % 64).collect();
        for u in (1..64).step_by(2) {
            for k in [0i64, 2, 4] {
                let x = q(u << k, 1);
                assert_eq!(is_square_local(&x, &Place::Finite(p(2))), squares.contains(&u), "{u}*2^{k}");
            }
            assert!(!is_square_local(&q(2 * u, 1), &Place::Finite(p(2))));
        }
    }

    #[test]
    fn hensel_fourth_root_of_17_in_z2() {
        let f = IntPoly::monomial_plus(4, -17);
        let x = hensel_lift(&f, &BigInt::from(3), &p(2), 10).unwrap();
        let value = x.to_rational().to_integer();
        assert_eq!(x.valuation(), 0);
        assert_eq!(value.mod_floor(&BigInt::from(4)), BigInt::from(3));
        assert!(f.eval(&value).mod_floor(&BigInt::from(1024)).is_zero());
        assert_eq!(BigInt::from(3).pow(4u32) - 17, BigInt::from(64));
    }

    #[test]
    fn hensel_square_root_of_2_mod_17() {
        let f = IntPoly::monomial_plus(2, -2);
        let x = hensel_lift(&f, &BigInt::from(6), &p(17), 5).unwrap();
        let value = x.to_rational().to_integer();
        assert_eq!(value.mod_floor(&BigInt::from(17)), BigInt::from(6));
        assert!(f.eval(&value).mod_floor(&BigInt::from(17).pow(5u32)).is_zero());
    }

    #[test]
    fn hensel_fixed_point_and_failure() {
        let f = IntPoly::monomial_plus(2, -1);
        let x = hensel_lift(&f, &BigInt::one(), &p(5), 3).unwrap();
        assert_eq!(x.to_rational(), q(1, 1));
        // t^2 - 17 at 2: f(1) = -16, f'(1) = 2, 4 > 2 passes; f(3) = -8, f'(3) = 6: 3 > 2 passes.
        assert!(hensel_lift(&IntPoly::monomial_plus(2, -17), &BigInt::from(1), &p(2), 8).is_ok());
        // t^2 - 3 at 2 from seed 1: v(f) = 1 is not > 2.
        assert_eq!(
            hensel_lift(&IntPoly::monomial_plus(2, -3), &BigInt::from(1), &p(2), 8),
            Err(Error::HenselConditionFailed)
        );
    }

    #[test]
    fn approx_arithmetic_tracks_precision() {
        let a = PAdicApprox::from_rational(&q(18, 5), p(3), 4).unwrap();
        assert_eq!(a.valuation(), 2);
        let b = PAdicApprox::from_rational(&q(1, 3), p(3), 2).unwrap();
        let c = a.mul(&b);
        assert_eq!(c.valuation(), 1);
        assert_eq!(c.precision(), 2);
        assert_eq!(c.unit_residue(3), Err(Error::InsufficientPrecision));
        let inv = a.inverse();
        assert_eq!(inv.mul(&a).unit_residue(4).unwrap(), BigInt::one());
        assert_eq!(inv.valuation(), -2);
    }
}
