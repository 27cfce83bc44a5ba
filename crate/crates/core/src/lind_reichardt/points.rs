use core::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::curve::{Chart, LindReichardtCurve};
use crate::arith::{
    hensel_lift, mod_inverse, padic_valuation, sqrt_mod_prime, IntPoly, PAdicApprox, Place,
    Prime, Rational,
};
use crate::{Error, Result};

/// Default working precision, in p-adic digits.
pub const DEFAULT_PRECISION: u32 = 12;

/// A coordinate in Q_p: an exact rational, or an approximation with tracked precision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PAdicValue {
    Exact(Rational),
    Approx(PAdicApprox),
}

impl PAdicValue {
    pub fn is_exact_zero(&self) -> bool {
        matches!(self, PAdicValue::Exact(x) if x.is_zero())
    }

    /// Valuation; `None` for an exact zero.
    pub fn valuation(&self, p: &Prime) -> Option<i64> {
        match self {
            PAdicValue::Exact(x) => padic_valuation(x, p.value()),
            PAdicValue::Approx(a) => Some(a.valuation()),
        }
    }

    /// Rational whose p-adic expansion agrees with the value to the known precision.
    pub fn to_rational(&self) -> Rational {
        match self {
            PAdicValue::Exact(x) => x.clone(),
            PAdicValue::Approx(a) => a.to_rational(),
        }
    }

    /// Absolute precision; exact values are known to infinite precision.
    pub fn absolute_precision(&self) -> Option<i64> {
        match self {
            PAdicValue::Exact(_) => None,
            PAdicValue::Approx(a) => Some(a.absolute_precision()),
        }
    }

    fn as_approx(&self, p: &Prime, precision: u32) -> Result<PAdicApprox> {
        match self {
            PAdicValue::Exact(x) => PAdicApprox::from_rational(x, p.clone(), precision),
            PAdicValue::Approx(a) => Ok(a.clone()),
        }
    }

    pub fn mul(&self, other: &PAdicValue, p: &Prime) -> Result<PAdicValue> {
        match (self, other) {
            (PAdicValue::Exact(a), PAdicValue::Exact(b)) => Ok(PAdicValue::Exact(a * b)),
            _ if self.is_exact_zero() || other.is_exact_zero() => Ok(PAdicValue::Exact(Rational::zero())),
            (PAdicValue::Approx(a), b) | (b, PAdicValue::Approx(a)) => {
                let b = b.as_approx(p, a.precision())?;
                Ok(PAdicValue::Approx(a.mul(&b)))
            }
        }
    }

    pub fn inverse(&self) -> Result<PAdicValue> {
        match self {
            PAdicValue::Exact(x) if x.is_zero() => Err(Error::ZeroArgument),
            PAdicValue::Exact(x) => Ok(PAdicValue::Exact(x.recip())),
            PAdicValue::Approx(a) => Ok(PAdicValue::Approx(a.inverse())),
        }
    }

    /// An integer in the same square class of Q_p.
    pub fn square_class_representative(&self, p: &Prime) -> Result<BigInt> {
        match self {
            PAdicValue::Exact(x) if x.is_zero() => Err(Error::RepresentativeVanishes),
            PAdicValue::Exact(x) => {
                let digits = if p.is_two() { 3 } else { 1 };
                PAdicApprox::from_rational(x, p.clone(), digits)?.square_class_representative()
            }
            PAdicValue::Approx(a) => a.square_class_representative(),
        }
    }
}

/// A real coordinate: exact, or the unique root of `poly` inside the open interval `(lo, hi)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RealValue {
    Exact(Rational),
    Surd { poly: IntPoly, lo: Rational, hi: Rational },
}

impl RealValue {
    /// Sign of the value; surd brackets never straddle zero.
    pub fn signum(&self) -> Ordering {
        match self {
            RealValue::Exact(x) => x.cmp(&Rational::zero()),
            RealValue::Surd { lo, hi, .. } => {
                if lo.is_positive() || lo.is_zero() {
                    Ordering::Greater
                } else {
                    debug_assert!(hi.is_negative() || hi.is_zero());
                    Ordering::Less
                }
            }
        }
    }

    /// The bracket holds a sign change of the defining polynomial.
    pub fn bracket_is_valid(&self) -> bool {
        match self {
            RealValue::Exact(_) => true,
            RealValue::Surd { poly, lo, hi } => {
                let eval = |x: &Rational| {
                    poly.coeffs().iter().rev().fold(Rational::zero(), |acc, c| acc * x + Rational::from_integer(c.clone()))
                };
                lo < hi && (eval(lo).signum() * eval(hi).signum()).is_negative() && (lo.signum() * hi.signum()).is_positive()
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Coordinates {
    Real([RealValue; 2]),
    PAdic([PAdicValue; 2]),
}

/// A point of the curve over the completion at `place`, in one chart:
/// `(x, y)` on U or `(w, z)` on V.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalPoint {
    pub place: Place,
    pub chart: Chart,
    pub coords: Coordinates,
}

impl LocalPoint {
    /// Whether the chart equation holds to the stored precision.
    pub fn satisfies_equation(&self) -> bool {
        match (&self.coords, &self.place) {
            (Coordinates::Real([a, b]), Place::Real) => {
                let (RealValue::Exact(a), true) = (a, b.bracket_is_valid()) else {
                    return false;
                };
                match b {
                    RealValue::Exact(b) => LindReichardtCurve::on_chart(self.chart, a, b),
                    // Only quadratic surds t^2 - c occur: then b^2 = c exactly.
                    RealValue::Surd { poly, .. } => {
                        let c = poly.coeffs();
                        if c.len() != 3 || !c[1].is_zero() || !c[2].is_one() {
                            return false;
                        }
                        let b2 = Rational::from_integer(-c[0].clone());
                        let defect = match self.chart {
                            Chart::U => LindReichardtCurve::u_defect(a, &Rational::zero()) + Rational::from_integer(2.into()) * b2,
                            Chart::V => LindReichardtCurve::v_defect(a, &Rational::zero()) + Rational::from_integer(2.into()) * b2,
                        };
                        defect.is_zero()
                    }
                }
            }
            (Coordinates::PAdic([a, b]), Place::Finite(p)) => {
                let defect = match self.chart {
                    Chart::U => LindReichardtCurve::u_defect(&a.to_rational(), &b.to_rational()),
                    Chart::V => LindReichardtCurve::v_defect(&a.to_rational(), &b.to_rational()),
                };
                let needed = [a, b].iter().filter_map(|c| c.absolute_precision()).min();
                match (padic_valuation(&defect, p.value()), needed) {
                    (None, _) => true,
                    (Some(_), None) => false,
                    (Some(v), Some(n)) => v >= n,
                }
            }
            _ => false,
        }
    }

    /// The chart's representative of the Brauer class: `y` on U, `z` on V.
    pub fn representative_padic(&self) -> Option<&PAdicValue> {
        match &self.coords {
            Coordinates::PAdic([_, b]) => Some(b),
            Coordinates::Real(_) => None,
        }
    }

    /// The same point in chart V, when it lies on the overlap (`x != 0`).
    pub fn to_chart_v(&self) -> Result<LocalPoint> {
        if self.chart == Chart::V {
            return Ok(self.clone());
        }
        let coords = match (&self.coords, &self.place) {
            (Coordinates::PAdic([x, y]), Place::Finite(p)) => {
                if x.is_exact_zero() {
                    return Err(Error::InvalidArgument("point lies off the overlap".into()));
                }
                let w = x.inverse()?;
                let z = y.mul(&w, p)?.mul(&w, p)?;
                Coordinates::PAdic([w, z])
            }
            (Coordinates::Real([RealValue::Exact(x), RealValue::Exact(y)]), Place::Real) => {
                let (w, z) = LindReichardtCurve::u_to_v(x, y)
                    .ok_or_else(|| Error::InvalidArgument("point lies off the overlap".into()))?;
                Coordinates::Real([RealValue::Exact(w), RealValue::Exact(z)])
            }
            _ => return Err(Error::InvalidArgument("chart change for surd coordinates is not supported".into())),
        };
        Ok(LocalPoint { place: self.place.clone(), chart: Chart::V, coords })
    }
}

pub fn local_point(v: &Place) -> Result<LocalPoint> {
    local_point_with_precision(v, DEFAULT_PRECISION)
}

pub fn local_point_with_precision(v: &Place, precision: u32) -> Result<LocalPoint> {
    let q = |n: i64| Rational::from_integer(n.into());
    match v {
        Place::Real => Ok(LocalPoint {
            place: Place::Real,
            chart: Chart::U,
            coords: Coordinates::Real([
                RealValue::Exact(q(3)),
                RealValue::Surd {
                    poly: IntPoly::from_i64(&[-32, 0, 1]),
                    lo: Rational::new(5656.into(), 1000.into()),
                    hi: Rational::new(5657.into(), 1000.into()),
                },
            ]),
        }),
        Place::Finite(p) if p.is_two() => {
            // 3^4 - 17 = 64: a fourth root of 17 in Z_2, lying on y = 0.
            let t = hensel_lift(&IntPoly::monomial_plus(4, -17), &BigInt::from(3), p, precision)?;
            Ok(LocalPoint {
                place: v.clone(),
                chart: Chart::U,
                coords: Coordinates::PAdic([PAdicValue::Approx(t), PAdicValue::Exact(Rational::zero())]),
            })
        }
        Place::Finite(p) if p.value() == &BigInt::from(17) => {
            // z = sqrt(2)/2 at w = 0, with sqrt(2) = 6 mod 17.
            let s = hensel_lift(&IntPoly::monomial_plus(2, -2), &BigInt::from(6), p, precision)?;
            let half = PAdicApprox::from_rational(&Rational::new(1.into(), 2.into()), p.clone(), precision)?;
            Ok(LocalPoint {
                place: v.clone(),
                chart: Chart::V,
                coords: Coordinates::PAdic([PAdicValue::Exact(Rational::zero()), PAdicValue::Approx(s.mul(&half))]),
            })
        }
        Place::Finite(p) => residue_point(p, precision),
    }
}

/// The point of `chart` over `Z_p` (odd `p`) with first coordinate the integer `t`
/// and a unit second coordinate, when `2 s^2 = c(t)` is solvable with `c(t)` a unit.
pub fn lift_point(chart: Chart, t: &BigInt, p: &Prime, precision: u32) -> Result<Option<LocalPoint>> {
    if p.is_two() {
        return Err(Error::InvalidArgument("unit lifting needs an odd prime".into()));
    }
    let pv = p.value();
    let t4 = t.pow(4);
    // U: 2 y^2 = t^4 - 17.  V: 2 z^2 = 1 - 17 t^4.
    let c: BigInt = match chart {
        Chart::U => &t4 - BigInt::from(17),
        Chart::V => BigInt::one() - BigInt::from(17) * &t4,
    };
    let inv2 = mod_inverse(&BigInt::from(2), pv).expect("odd prime");
    let target = (&c * &inv2).mod_floor(pv);
    if target.is_zero() {
        return Ok(None);
    }
    let Some(s0) = sqrt_mod_prime(&target, p) else {
        return Ok(None);
    };
    let f = IntPoly::new(alloc::vec![-c, BigInt::zero(), BigInt::from(2)]);
    let s = hensel_lift(&f, &s0, p, precision)?;
    Ok(Some(LocalPoint {
        place: Place::Finite(p.clone()),
        chart,
        coords: Coordinates::PAdic([PAdicValue::Exact(Rational::from_integer(t.clone())), PAdicValue::Approx(s)]),
    }))
}

/// Smooth residue point with a unit representative, on U then V; as a last
/// resort a point with `y = 0` (smooth since `x` is then a unit).
fn residue_point(p: &Prime, precision: u32) -> Result<LocalPoint> {
    let pv = p.value();
    for chart in [Chart::U, Chart::V] {
        let mut t = BigInt::zero();
        while &t < pv {
            if let Some(pt) = lift_point(chart, &t, p, precision)? {
                return Ok(pt);
            }
            t += 1;
        }
    }
    // x^4 = 17 with x a unit.
    let mut x = BigInt::one();
    while &x < pv {
        if (x.pow(4) - BigInt::from(17)).mod_floor(pv).is_zero() {
            let root = hensel_lift(&IntPoly::monomial_plus(4, -17), &x, p, precision)?;
            return Ok(LocalPoint {
                place: Place::Finite(p.clone()),
                chart: Chart::U,
                coords: Coordinates::PAdic([PAdicValue::Approx(root), PAdicValue::Exact(Rational::zero())]),
            });
        }
        x += 1;
    }
    Err(Error::NoSmoothResiduePoint(p.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points_at_special_places() {
        let r = local_point(&Place::Real).unwrap();
        assert!(r.satisfies_equation());
        let two = local_point(&Place::finite(2).unwrap()).unwrap();
        assert!(two.satisfies_equation());
        let Coordinates::PAdic([PAdicValue::Approx(t), _]) = &two.coords else { panic!() };
        assert_eq!(t.unit_residue(2).unwrap(), BigInt::from(3));
        let p17 = local_point(&Place::finite(17).unwrap()).unwrap();
        assert_eq!(p17.chart, Chart::V);
        assert!(p17.satisfies_equation());
        let PAdicValue::Approx(z) = p17.representative_padic().unwrap() else { panic!() };
        let z0 = z.unit_residue(1).unwrap();
        assert!(z0 == BigInt::from(3) || z0 == BigInt::from(14));
    }

    #[test]
    fn points_at_other_primes() {
        for p in [3u64, 5, 7, 11, 13, 19, 23, 29, 31, 37, 41, 43, 47, 101, 1009] {
            let pt = local_point(&Place::finite(p).unwrap()).unwrap();
            assert!(pt.satisfies_equation(), "p = {p}");
        }
    }

    #[test]
    fn chart_change_preserves_the_equation() {
        let pt = local_point(&Place::finite(3).unwrap()).unwrap();
        assert_eq!(pt.chart, Chart::U);
        let v = pt.to_chart_v().unwrap();
        assert!(v.satisfies_equation());
    }
}
