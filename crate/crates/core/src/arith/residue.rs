//! Local solvability of diagonal forms by residue search plus Hensel lifting.
//!
//! Coefficients are first normalized to p-adic valuation 0 or 1 (dividing by
//! even powers of p). A primitive residue vector `x mod p^k` with
//! `Q(x) = 0 mod p^k` lifts to a genuine zero as soon as some coordinate with
//! coefficient `c_i` has `x_i` a unit and `2 v(2 c_i) < k`. Every primitive zero
//! over Z_p reduces to such a certificate at depth `2 v(2) + 3`, so the search
//! is a decision procedure at that depth.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::modular::{legendre_symbol, mod_inverse};
use super::place::Prime;
use super::rational::{rational_unit_part, Rational};

/// Residue enumeration is skipped for odd primes with more than this many
/// projective residue vectors per level; the reduction criterion is used instead.
const ENUMERATION_LIMIT: u64 = 20_000;

/// Search depth sufficient for completeness: `2 v_p(2) + 3`.
pub(crate) fn isotropy_depth(p: &Prime) -> u32 {
    if p.is_two() {
        5
    } else {
        3
    }
}

struct Normalized {
    /// `v_p(c_i) mod 2`.
    parity: Vec<u32>,
    /// Integer unit parts reduced modulo `p^depth`.
    units: Vec<BigInt>,
}

fn normalize(coeffs: &[Rational], p: &Prime, depth: u32) -> Normalized {
    let modulus = p.value().pow(depth);
    let mut parity = Vec::with_capacity(coeffs.len());
    let mut units = Vec::with_capacity(coeffs.len());
    for c in coeffs {
        let (v, u) = rational_unit_part(c, p.value());
        let inv = mod_inverse(u.denom(), &modulus).expect("unit denominator");
        parity.push(v.rem_euclid(2) as u32);
        units.push((u.numer() * inv).mod_floor(&modulus));
    }
    Normalized { parity, units }
}

/// Whether `sum c_i x_i^2` has a primitive zero over Z_p (hence a nontrivial
/// zero over Q_p). `depth` must be at least [`isotropy_depth`].
pub(crate) fn diagonal_has_local_zero(coeffs: &[Rational], p: &Prime, depth: u32) -> bool {
    debug_assert!(depth >= isotropy_depth(p));
    debug_assert!(coeffs.iter().all(|c| !c.is_zero()));
    let n = coeffs.len();
    if n < 2 {
        return false;
    }
    let norm = normalize(coeffs, p, depth);
    let small = p.to_u64().and_then(|pv| {
        let modulus = pv.checked_pow(depth)?;
        let per_level = pv.checked_pow(n as u32 - 1)?;
        (modulus < (1 << 62) && (p.is_two() || per_level <= ENUMERATION_LIMIT)).then_some((pv, modulus))
    });
    match small {
        Some((pv, modulus)) => {
            let coeffs: Vec<u64> = norm
                .units
                .iter()
                .zip(&norm.parity)
                .map(|(u, &e)| {
                    let c = u.to_u64().unwrap() as u128 * if e == 1 { pv as u128 } else { 1 };
                    (c % modulus as u128) as u64
                })
                .collect();
            let search = ResidueSearch {
                p: pv,
                depth,
                modulus,
                coeffs,
                hensel_t: norm
                    .parity
                    .iter()
                    .map(|&e| e + if p.is_two() { 1 } else { 0 })
                    .collect(),
            };
            search.run()
        }
        None => {
            debug_assert!(!p.is_two());
            reduction_criterion(&norm, p)
        }
    }
}

struct ResidueSearch {
    p: u64,
    depth: u32,
    modulus: u64,
    coeffs: Vec<u64>,
    /// `v_p(2 c_i)` for each coordinate.
    hensel_t: Vec<u32>,
}

impl ResidueSearch {
    fn value(&self, x: &[u64]) -> u64 {
        let m = self.modulus as u128;
        let mut acc: u128 = 0;
        for (c, &xi) in self.coeffs.iter().zip(x) {
            let sq = (xi as u128 * xi as u128) % m;
            acc = (acc + (*c as u128 * sq) % m) % m;
        }
        acc as u64
    }

    fn accepts(&self, x: &[u64], level: u32) -> bool {
        x.iter()
            .zip(&self.hensel_t)
            .any(|(&xi, &t)| xi % self.p != 0 && 2 * t < level)
    }

    fn run(&self) -> bool {
        let n = self.coeffs.len();
        // Scale so that the first unit coordinate is exactly 1.
        for lead in 0..n {
            let free: Vec<usize> = (lead + 1..n).collect();
            let mut x = vec![0u64; n];
            x[lead] = 1;
            // Coordinates before `lead` are divisible by p; after it, arbitrary.
            if self.extend(&mut x, lead, &free, 0, 1) {
                return true;
            }
        }
        false
    }

    /// Enumerates level-`level` digits of every coordinate except `lead`
    /// (whose value is fixed to 1), then checks and recurses.
    fn extend(&self, x: &mut Vec<u64>, lead: usize, free: &[usize], idx: usize, level: u32) -> bool {
        let n = x.len();
        if idx == n {
            return self.check(x, lead, free, level);
        }
        if idx == lead {
            return self.extend(x, lead, free, idx + 1, level);
        }
        let scale = self.p.pow(level - 1);
        let base = x[idx];
        // At level 1 the coordinates ahead of the lead stay divisible by p.
        let digits = if level == 1 && idx < lead { 1 } else { self.p };
        for d in 0..digits {
            x[idx] = base + d * scale;
            if self.extend(x, lead, free, idx + 1, level) {
                x[idx] = base;
                return true;
            }
        }
        x[idx] = base;
        false
    }

    fn check(&self, x: &mut Vec<u64>, lead: usize, free: &[usize], level: u32) -> bool {
        let q = self.value(x);
        if !q.is_multiple_of(self.p.pow(level)) {
            return false;
        }
        if self.accepts(x, level) {
            return true;
        }
        if level == self.depth {
            return false;
        }
        self.extend(x, lead, free, 0, level + 1)
    }
}

/// Odd p: a diagonal form `Q0 + p Q1` (unit coefficients) is isotropic iff
/// the reduction of `Q0` or of `Q1` has a nontrivial zero over F_p.
fn reduction_criterion(norm: &Normalized, p: &Prime) -> bool {
    let part = |e: u32| -> Vec<&BigInt> {
        norm.units.iter().zip(&norm.parity).filter(|(_, &pe)| pe == e).map(|(u, _)| u).collect()
    };
    [0, 1].into_iter().any(|e| {
        let units = part(e);
        match units.len() {
            0 | 1 => false,
            // x^2 = -u2/u1 y^2 solvable iff -u1 u2 is a square.
            2 => legendre_symbol(&-(units[0] * units[1]), p) == 1,
            // Chevalley-Warning: three or more variables always have a zero.
            _ => true,
        }
    })
}
