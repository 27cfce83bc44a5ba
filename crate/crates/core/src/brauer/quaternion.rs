use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use super::hilbert::hilbert_symbol;
use super::qmodz::QmodZ;
use crate::arith::{prime_divisors, square_class_integer, squarefree_part, Place, Prime, Rational};
use crate::{Error, Result};

/// Local invariants of a Brauer class; places not stored carry invariant 0.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct InvariantVector {
    entries: BTreeMap<Place, QmodZ>,
}

impl InvariantVector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, place: Place, value: QmodZ) {
        if value.is_zero() {
            self.entries.remove(&place);
        } else {
            self.entries.insert(place, value);
        }
    }

    pub fn get(&self, place: &Place) -> QmodZ {
        self.entries.get(place).copied().unwrap_or(QmodZ::ZERO)
    }

    /// Nonzero entries in place order (real place first).
    pub fn iter(&self) -> impl Iterator<Item = (&Place, &QmodZ)> {
        self.entries.iter()
    }

    pub fn support(&self) -> Vec<Place> {
        self.entries.keys().cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn sum(&self) -> QmodZ {
        self.entries.values().copied().sum()
    }

    /// Componentwise sum in Q/Z.
    pub fn add(&self, other: &InvariantVector) -> InvariantVector {
        let mut out = self.clone();
        for (v, x) in &other.entries {
            let y = out.get(v) + *x;
            out.set(v.clone(), y);
        }
        out
    }
}

/// The class of the quaternion algebra `(a, b)` over Q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuaternionClass {
    a: Rational,
    b: Rational,
    a_bar: BigInt,
    b_bar: BigInt,
    bad_primes: Vec<Prime>,
}

impl QuaternionClass {
    pub fn new(a: Rational, b: Rational) -> Result<Self> {
        if a.is_zero() || b.is_zero() {
            return Err(Error::ZeroArgument);
        }
        let (a_bar, _) = squarefree_part(&square_class_integer(&a))?;
        let (b_bar, _) = squarefree_part(&square_class_integer(&b))?;
        let mut bad_primes = prime_divisors(&(&a_bar * &b_bar))?;
        if !bad_primes.iter().any(Prime::is_two) {
            bad_primes.insert(0, Prime::two());
        }
        Ok(QuaternionClass { a, b, a_bar, b_bar, bad_primes })
    }

    pub fn from_integers(a: i64, b: i64) -> Result<Self> {
        Self::new(Rational::from_integer(a.into()), Rational::from_integer(b.into()))
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    /// Squarefree integers in the square classes of `a` and `b`.
    pub fn normalized(&self) -> (&BigInt, &BigInt) {
        (&self.a_bar, &self.b_bar)
    }

    /// The real place, 2, and the primes dividing `ā b̄`: every place where the class can ramify.
    pub fn candidate_places(&self) -> Vec<Place> {
        let mut out = Vec::with_capacity(self.bad_primes.len() + 1);
        out.push(Place::Real);
        out.extend(self.bad_primes.iter().cloned().map(Place::Finite));
        out
    }

    pub fn hilbert_symbol(&self, v: &Place) -> i8 {
        hilbert_symbol(&self.a, &self.b, v)
    }
}

pub fn local_invariants(c: &QuaternionClass) -> InvariantVector {
    let mut out = InvariantVector::new();
    for v in c.candidate_places() {
        let inv = QmodZ::from_sign(c.hilbert_symbol(&v));
        out.set(v, inv);
    }
    out
}

/// Whether the invariants sum to zero in Q/Z.
pub fn product_formula_check(c: &QuaternionClass) -> bool {
    local_invariants(c).sum().is_zero()
}

pub fn is_split(c: &QuaternionClass) -> bool {
    local_invariants(c).is_zero()
}

/// First place (real place, then primes in increasing order) where the class does not split.
pub fn first_obstruction(c: &QuaternionClass) -> Option<Place> {
    local_invariants(c).support().into_iter().next()
}
