use alloc::format;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::factor::is_prime;
use super::rational::parse_integer;
use crate::{Error, Result};

/// A rational prime whose primality was checked at construction.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Prime(BigInt);

impl Prime {
    pub fn new(p: impl Into<BigInt>) -> Result<Self> {
        let p = p.into();
        if is_prime(&p) {
            Ok(Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    /// For primes already known to be prime (factorization output, small constants).
    pub(crate) fn new_unchecked(p: BigInt) -> Self {
        debug_assert!(is_prime(&p));
        Prime(p)
    }

    pub fn two() -> Self {
        Prime(BigInt::from(2))
    }

    pub fn value(&self) -> &BigInt {
        &self.0
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    pub fn is_two(&self) -> bool {
        self.0 == BigInt::from(2)
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A place of Q. The real place sorts before every finite prime.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Real,
    Finite(Prime),
}

impl Place {
    pub fn finite(p: u64) -> Result<Self> {
        Prime::new(p).map(Place::Finite)
    }

    pub fn prime(&self) -> Option<&Prime> {
        match self {
            Place::Real => None,
            Place::Finite(p) => Some(p),
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Real => f.write_str("inf"),
            Place::Finite(p) => p.fmt(f),
        }
    }
}

impl FromStr for Place {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "real" | "oo" => Ok(Place::Real),
            other => {
                let p = parse_integer(other).map_err(|_| Error::Parse(format!("not a place: {s:?}")))?;
                Prime::new(p).map(Place::Finite)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_places() {
        assert_eq!("inf".parse::<Place>().unwrap(), Place::Real);
        assert_eq!("17".parse::<Place>().unwrap(), Place::finite(17).unwrap());
        assert_eq!("15".parse::<Place>(), Err(Error::NotPrime(BigInt::from(15))));
        assert!("1".parse::<Place>().is_err());
        assert!(Place::Real < Place::finite(2).unwrap());
        assert!(Place::finite(3).unwrap() < Place::finite(17).unwrap());
    }
}
