use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Isomorphism type of a finitely generated abelian group:
/// `Z^free_rank + Z/d_1 + ... + Z/d_k` with `d_1 | d_2 | ... | d_k`, every `d_i >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianInvariants {
    pub fn trivial() -> Self {
        Self::default()
    }

    /// Canonicalizes arbitrary cyclic factors into invariant-factor form.
    pub fn new(free_rank: usize, factors: Vec<BigInt>) -> Self {
        Self::from_diagonal(free_rank, factors)
    }

    /// From the nonzero diagonal of any diagonalization of a relation matrix.
    pub fn from_diagonal(free_rank: usize, entries: impl IntoIterator<Item = BigInt>) -> Self {
        let mut d: Vec<BigInt> = entries.into_iter().map(|x| x.abs()).filter(|x| !x.is_one()).collect();
        assert!(d.iter().all(|x| !x.is_zero()), "zero entries belong to the free part");
        for i in 0..d.len() {
            for j in i + 1..d.len() {
                let g = d[i].gcd(&d[j]);
                let l = d[i].lcm(&d[j]);
                d[i] = g;
                d[j] = l;
            }
        }
        d.retain(|x| !x.is_one());
        d.sort();
        AbelianInvariants { free_rank, torsion: d }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Largest invariant factor (1 when torsion-free).
    pub fn exponent(&self) -> BigInt {
        self.torsion.last().cloned().unwrap_or_else(BigInt::one)
    }

    /// Product of the torsion invariant factors.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let mut first = true;
        let mut sep = |f: &mut fmt::Formatter<'_>| {
            let out = if first { Ok(()) } else { f.write_str(" + ") };
            first = false;
            out
        };
        if self.free_rank > 0 {
            sep(f)?;
            write!(f, "Z^{}", self.free_rank)?;
        }
        for d in &self.torsion {
            sep(f)?;
            write!(f, "Z/{d}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;

    fn b(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn canonical_form() {
        let a = AbelianInvariants::new(1, b(&[4, 6, 1, -3]));
        assert_eq!(a.torsion, b(&[6, 12]));
        assert_eq!(a.exponent(), BigInt::from(12));
        assert_eq!(AbelianInvariants::new(0, b(&[2, 3])).torsion, b(&[6]));
        assert_eq!(AbelianInvariants::new(0, b(&[2, 2])).torsion, b(&[2, 2]));
        assert_eq!(format!("{}", AbelianInvariants::new(2, b(&[2, 4]))), "Z^2 + Z/2 + Z/4");
        assert_eq!(format!("{}", AbelianInvariants::trivial()), "0");
    }
}
