use core::cmp::Ordering;

use num_bigint::BigInt;

use super::points::{Coordinates, LocalPoint};
use crate::arith::{is_square_local, Place, Rational};
use crate::brauer::{hilbert_symbol, QmodZ};
use crate::{Error, Result};

fn seventeen() -> Rational {
    Rational::from_integer(BigInt::from(17))
}

/// Local invariant of the class `(17, f)` at the point, `f` being `y` on U and `z` on V.
pub fn pairing(pt: &LocalPoint) -> Result<QmodZ> {
    if is_square_local(&seventeen(), &pt.place) {
        return Ok(QmodZ::ZERO);
    }
    pairing_via_representative(pt)
}

/// Always evaluates the Hilbert symbol on the chart representative, even where 17 is a local square.
pub fn pairing_via_representative(pt: &LocalPoint) -> Result<QmodZ> {
    let rep: Rational = match (&pt.coords, &pt.place) {
        (Coordinates::Real([_, b]), Place::Real) => match b.signum() {
            Ordering::Equal => return Err(Error::RepresentativeVanishes),
            Ordering::Greater => Rational::from_integer(1.into()),
            Ordering::Less => Rational::from_integer((-1).into()),
        },
        (Coordinates::PAdic([_, b]), Place::Finite(p)) => Rational::from_integer(b.square_class_representative(p)?),
        _ => return Err(Error::InvalidArgument("coordinates do not match the place".into())),
    };
    Ok(QmodZ::from_sign(hilbert_symbol(&seventeen(), &rep, &pt.place)))
}

#[cfg(test)]
mod tests {
    use super::super::points::{local_point, local_point_with_precision};
    use super::*;

    #[test]
    fn pairing_examples() {
        let at = |p: u64| Place::finite(p).unwrap();
        assert_eq!(pairing(&local_point(&at(17)).unwrap()).unwrap(), QmodZ::HALF);
        assert_eq!(pairing(&local_point(&at(2)).unwrap()).unwrap(), QmodZ::ZERO);
        assert_eq!(pairing(&local_point(&Place::Real).unwrap()).unwrap(), QmodZ::ZERO);
        assert_eq!(pairing_via_representative(&local_point(&Place::Real).unwrap()).unwrap(), QmodZ::ZERO);
        // y = 0 on the 2-adic point: the representative itself is unusable.
        assert_eq!(
            pairing_via_representative(&local_point(&at(2)).unwrap()),
            Err(Error::RepresentativeVanishes)
        );
        for p in [3u64, 5, 7, 11, 13, 19, 23] {
            assert_eq!(pairing(&local_point(&at(p)).unwrap()).unwrap(), QmodZ::ZERO, "p = {p}");
        }
    }

    #[test]
    fn precision_does_not_matter() {
        for p in [3u64, 5, 17, 29] {
            let v = Place::finite(p).unwrap();
            let a = pairing(&local_point_with_precision(&v, 4).unwrap()).unwrap();
            let b = pairing(&local_point_with_precision(&v, 20).unwrap()).unwrap();
            assert_eq!(a, b);
        }
    }
}
