use alloc::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::Rational;

/// Affine chart of the curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Chart {
    /// `2 y^2 = x^4 - 17`, coordinates `(x, y)`.
    U,
    /// `2 z^2 = 1 - 17 w^4`, coordinates `(w, z)`.
    V,
}

/// The genus-one curve glued from `2y^2 = x^4 - 17` and `2z^2 = 1 - 17w^4` along `x = 1/w`, `y = z/w^2`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LindReichardtCurve;

impl LindReichardtCurve {
    pub const A: i64 = 17;

    /// `2 y^2 - x^4 + 17`.
    pub fn u_defect(x: &Rational, y: &Rational) -> Rational {
        let x2 = x * x;
        Rational::from_integer(2.into()) * y * y - &x2 * &x2 + Rational::from_integer(17.into())
    }

    /// `2 z^2 - 1 + 17 w^4`.
    pub fn v_defect(w: &Rational, z: &Rational) -> Rational {
        let w2 = w * w;
        Rational::from_integer(2.into()) * z * z - Rational::one() + Rational::from_integer(17.into()) * &w2 * &w2
    }

    pub fn on_chart(chart: Chart, a: &Rational, b: &Rational) -> bool {
        match chart {
            Chart::U => Self::u_defect(a, b).is_zero(),
            Chart::V => Self::v_defect(a, b).is_zero(),
        }
    }

    /// `(w, z) = (1/x, y/x^2)` for `x != 0`.
    pub fn u_to_v(x: &Rational, y: &Rational) -> Option<(Rational, Rational)> {
        if x.is_zero() {
            return None;
        }
        let w = x.recip();
        let z = y * &w * &w;
        Some((w, z))
    }

    /// Substitutes `x = w^-1`, `y = z w^-2` into the U equation, multiplies by `w^4`,
    /// and compares with the V equation as polynomials.
    pub fn transition_identity_holds() -> bool {
        // Monomials keyed by exponents; U in (x, y), V in (w, z).
        let u: BTreeMap<(i32, i32), BigInt> =
            [((0, 2), BigInt::from(2)), ((4, 0), BigInt::from(-1)), ((0, 0), BigInt::from(17))].into();
        let v: BTreeMap<(i32, i32), BigInt> =
            [((0, 2), BigInt::from(2)), ((0, 0), BigInt::from(-1)), ((4, 0), BigInt::from(17))].into();
        let mut image: BTreeMap<(i32, i32), BigInt> = BTreeMap::new();
        for (&(a, b), c) in &u {
            // x^a y^b -> w^(-a - 2b) z^b, then times w^4.
            let key = (4 - a - 2 * b, b);
            *image.entry(key).or_insert_with(BigInt::zero) += c;
        }
        image.retain(|_, c| !c.is_zero());
        image == v
    }
}
