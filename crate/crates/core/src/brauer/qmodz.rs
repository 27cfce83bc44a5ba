use core::fmt;
use core::ops::{Add, Neg};

use num_integer::Integer;

/// An element of Q/Z as a reduced fraction `num/den` with `0 <= num < den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QmodZ {
    num: u64,
    den: u64,
}

impl QmodZ {
    pub const ZERO: QmodZ = QmodZ { num: 0, den: 1 };
    pub const HALF: QmodZ = QmodZ { num: 1, den: 2 };

    pub fn new(num: i64, den: u64) -> Self {
        assert!(den > 0, "zero denominator");
        let n = num.rem_euclid(den as i64) as u64;
        let g = n.gcd(&den);
        QmodZ { num: n / g, den: den / g }
    }

    pub fn numer(&self) -> u64 {
        self.num
    }

    pub fn denom(&self) -> u64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// `0` for `+1`, `1/2` for `-1`.
    pub fn from_sign(sign: i8) -> Self {
        if sign < 0 {
            Self::HALF
        } else {
            Self::ZERO
        }
    }
}

impl Default for QmodZ {
    fn default() -> Self {
        Self::ZERO
    }
}

impl Add for QmodZ {
    type Output = QmodZ;
    fn add(self, rhs: QmodZ) -> QmodZ {
        let den = self.den.lcm(&rhs.den);
        let num = (self.num as u128 * (den / self.den) as u128 + rhs.num as u128 * (den / rhs.den) as u128)
            % den as u128;
        QmodZ::new(num as i64, den)
    }
}

impl Neg for QmodZ {
    type Output = QmodZ;
    fn neg(self) -> QmodZ {
        QmodZ::new(-(self.num as i64), self.den)
    }
}

impl core::iter::Sum for QmodZ {
    fn sum<I: Iterator<Item = QmodZ>>(iter: I) -> QmodZ {
        iter.fold(QmodZ::ZERO, Add::add)
    }
}

impl fmt::Display for QmodZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num == 0 {
            f.write_str("0")
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}
