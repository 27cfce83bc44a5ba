use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};

use super::curve::LindReichardtCurve;
use super::pairing::pairing;
use super::points::{local_point, LocalPoint};
use crate::arith::{is_prime, is_square_local, legendre_symbol, Place, Prime, Rational};
use crate::brauer::QmodZ;
use crate::Result;

/// Exhaustive residue analysis at 17.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstantAt17Report {
    /// `(x, y, y / x^2)` for every residue point of U with `y` a unit.
    pub u_residues: Vec<(u64, u64, u64)>,
    /// Values of `y / x^2` that occur.
    pub ratios: Vec<u64>,
    /// `(w, z)` for every residue point of V with `w = 0 mod 17`.
    pub v_residues: Vec<(u64, u64)>,
    pub ratios_are_nonresidues: bool,
    pub nonzero_fourth_powers: Vec<u64>,
    pub two_is_fourth_power: bool,
    pub holds: bool,
    pub verdict: &'static str,
}

/// `2y^2 = x^4` over F_17 forces `y = ±3 x^2`, and `(17, ±3)_17 = -1`;
/// the residue points of V with `w = 0` have `z = ±3`. Integral points of U
/// have `x` a unit (otherwise `v(x^4 - 17) = 1` is odd), and all other points
/// lie in V with `w = 0 mod 17`.
pub fn verify_pairing_constant_at_17() -> ConstantAt17Report {
    const P: u64 = 17;
    let inv = |a: u64| (1..P).find(|b| a * b % P == 1).expect("unit");
    let mut u_residues = Vec::new();
    let mut ratios = BTreeSet::new();
    for x in 0..P {
        for y in 1..P {
            if (2 * y * y) % P == x.pow(4) % P {
                let r = y * inv(x * x % P) % P;
                u_residues.push((x, y, r));
                ratios.insert(r);
            }
        }
    }
    let mut v_residues = Vec::new();
    for z in 0..P {
        if (2 * z * z) % P == 1 {
            v_residues.push((0, z));
        }
    }
    let p = Prime::new(P).expect("prime");
    let nonresidue = |r: u64| legendre_symbol(&BigInt::from(r), &p) == -1;
    let ratios: Vec<u64> = ratios.into_iter().collect();
    let ratios_are_nonresidues =
        ratios.iter().all(|&r| nonresidue(r)) && v_residues.iter().all(|&(_, z)| nonresidue(z));
    let fourth: BTreeSet<u64> = (1..P).map(|t| t.pow(4) % P).collect();
    let two_is_fourth_power = fourth.contains(&2);
    let holds = ratios_are_nonresidues && !two_is_fourth_power && !u_residues.is_empty() && !v_residues.is_empty();
    ConstantAt17Report {
        u_residues,
        ratios,
        v_residues,
        ratios_are_nonresidues,
        nonzero_fourth_powers: fourth.into_iter().collect(),
        two_is_fourth_power,
        holds,
        verdict: if holds { "pairing = 1/2 on X(Q_17)" } else { "not established" },
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZeroReason {
    /// 17 is a square in Q_p, so `(17, ·)_p` is trivial.
    SeventeenIsSquare,
    /// 17 is a nonsquare unit; every integral point has a unit representative,
    /// and the symbol of two units at odd p is trivial.
    UnitRepresentative { u_points: u64, v_points: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeEntry {
    pub prime: u64,
    pub reason: ZeroReason,
    pub pairing: QmodZ,
    pub verified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroElsewhereReport {
    pub bound: u64,
    pub entries: Vec<PrimeEntry>,
    pub all_zero: bool,
}

/// Checks `p = 2` and every odd prime `p <= bound` other than 17.
pub fn verify_pairing_zero_elsewhere(bound: u64) -> ZeroElsewhereReport {
    let seventeen = Rational::from_integer(17.into());
    let mut entries = Vec::new();
    for p in (2..=bound).filter(|&p| p != 17 && is_prime(&BigInt::from(p))) {
        let place = Place::finite(p).expect("prime");
        let entry = if is_square_local(&seventeen, &place) {
            PrimeEntry { prime: p, reason: ZeroReason::SeventeenIsSquare, pairing: QmodZ::ZERO, verified: true }
        } else {
            let (u_points, v_points, ok) = unit_scan(p);
            PrimeEntry {
                prime: p,
                reason: ZeroReason::UnitRepresentative { u_points, v_points },
                pairing: QmodZ::ZERO,
                verified: ok,
            }
        };
        entries.push(entry);
    }
    let all_zero = entries.iter().all(|e| e.verified && e.pairing.is_zero());
    ZeroElsewhereReport { bound, entries, all_zero }
}

/// Counts residue points of U (all x) and V (w = 0 mod p) and checks that none
/// has a vanishing representative.
fn unit_scan(p: u64) -> (u64, u64, bool) {
    let prime = Prime::new(p).expect("prime");
    let inv2 = p.div_ceil(2);
    let count = |c: u64| -> (u64, bool) {
        // Solutions of 2 t^2 = c mod p.
        let target = c * inv2 % p;
        if target == 0 {
            return (1, false);
        }
        (if legendre_symbol(&BigInt::from(target), &prime) == 1 { 2 } else { 0 }, true)
    };
    let mut ok = true;
    let mut u = 0;
    for x in 0..p {
        let x4 = (x as u128).pow(4) % p as u128;
        let c = ((x4 + p as u128 * 17 - 17) % p as u128) as u64;
        let (n, unit) = count(c);
        u += n;
        ok &= unit;
    }
    let (v, unit) = count(1);
    ok &= unit;
    (u, v, ok)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPointSearch {
    pub height: u32,
    /// Number of `x = m/n` with `m^4 > 17 n^4` that were tested.
    pub candidates: u64,
    /// Every `(x, y)` found; the curve has none.
    pub found: Vec<(Rational, Rational)>,
}

/// `y` with `2y^2 = x^4 - 17`, if rational.
pub fn rational_y(x: &Rational) -> Option<Rational> {
    let x2 = x * x;
    let rhs = (&x2 * &x2 - Rational::from_integer(17.into())) / Rational::from_integer(2.into());
    crate::quadform::rational_sqrt(&rhs)
}

/// All `x = m/n` in lowest terms with `max(|m|, n) <= height`. `x` and `-x`
/// give the same `y^2`, and only `m^4 > 17 n^4` can give a real `y`.
pub fn search_rational_points(height: u32) -> RationalPointSearch {
    let h = height as u64;
    let mut square_mod = [false; 256];
    for t in 0..256u32 {
        square_mod[(t * t % 256) as usize] = true;
    }
    let mut candidates = 0;
    let mut found = Vec::new();
    for n in 1..=h {
        let n4 = 17 * (n as u128).pow(4);
        // Least m with m^4 > 17 n^4.
        let start = n4.nth_root(4) as u64 + 1;
        for m in start..=h {
            candidates += 1;
            // 2 (m^4 - 17 n^4) must be a perfect square.
            let s = 2 * ((m as u128).pow(4) - n4);
            if !square_mod[(s & 255) as usize] {
                continue;
            }
            let r = s.sqrt();
            if r * r == s && m.gcd(&n) == 1 {
                for sign in [1i64, -1] {
                    let x = Rational::new(BigInt::from(m) * sign, BigInt::from(n));
                    if let Some(y) = rational_y(&x) {
                        found.push((x, y));
                    }
                }
            }
        }
    }
    RationalPointSearch { height, candidates, found }
}

/// The sampled adelic point, the two pairing lemmas and the verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionReport {
    pub sample_bound: u64,
    pub local_points: Vec<(LocalPoint, QmodZ)>,
    pub local_points_nonempty: bool,
    pub chart_identity: bool,
    pub constant_at_17: ConstantAt17Report,
    pub zero_elsewhere: ZeroElsewhereReport,
    /// Every odd `p != 17` falls in one of the two cases of [`ZeroReason`];
    /// checked numerically up to the spot-check bound.
    pub dichotomy_covers_all_primes: bool,
    pub total_pairing: QmodZ,
    pub verdict: &'static str,
}

pub const DEFAULT_SAMPLE_BOUND: u64 = 100;
pub const DEFAULT_SPOT_CHECK_BOUND: u64 = 1000;

pub fn obstruction_conclusion() -> Result<ObstructionReport> {
    obstruction_conclusion_with(DEFAULT_SAMPLE_BOUND, DEFAULT_SPOT_CHECK_BOUND)
}

pub fn obstruction_conclusion_with(sample_bound: u64, spot_bound: u64) -> Result<ObstructionReport> {
    let mut places = alloc::vec![Place::Real];
    places.extend((2..=sample_bound.max(17)).filter(|&p| is_prime(&BigInt::from(p))).map(|p| Place::finite(p).expect("prime")));
    let mut local_points = Vec::new();
    for v in places {
        let pt = local_point(&v)?;
        let inv = pairing(&pt)?;
        local_points.push((pt, inv));
    }
    let local_points_nonempty = local_points.iter().all(|(pt, _)| pt.satisfies_equation());
    let total_pairing: QmodZ = local_points.iter().map(|(_, x)| *x).sum();
    let constant_at_17 = verify_pairing_constant_at_17();
    let zero_elsewhere = verify_pairing_zero_elsewhere(spot_bound);
    let dichotomy_covers_all_primes = zero_elsewhere.entries.iter().all(|e| e.verified);
    let chart_identity = LindReichardtCurve::transition_identity_holds();
    let empty = local_points_nonempty
        && chart_identity
        && constant_at_17.holds
        && zero_elsewhere.all_zero
        && dichotomy_covers_all_primes
        && total_pairing == QmodZ::HALF;
    Ok(ObstructionReport {
        sample_bound,
        local_points,
        local_points_nonempty,
        chart_identity,
        constant_at_17,
        zero_elsewhere,
        dichotomy_covers_all_primes,
        total_pairing,
        verdict: if empty { "empty" } else { "inconclusive" },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residue_table_at_17() {
        let r = verify_pairing_constant_at_17();
        assert_eq!(r.ratios, [3, 14]);
        assert_eq!(r.nonzero_fourth_powers, [1, 4, 13, 16]);
        assert!(!r.two_is_fourth_power);
        assert!(r.holds);
        assert_eq!(r.v_residues, [(0, 3), (0, 14)]);
    }

    #[test]
    fn zero_elsewhere_examples() {
        let r = verify_pairing_zero_elsewhere(13);
        let find = |p: u64| r.entries.iter().find(|e| e.prime == p).unwrap().clone();
        assert_eq!(find(2).reason, ZeroReason::SeventeenIsSquare);
        assert_eq!(find(13).reason, ZeroReason::SeventeenIsSquare);
        assert!(matches!(find(3).reason, ZeroReason::UnitRepresentative { .. }));
        assert!(r.all_zero);
    }

    #[test]
    fn small_searches() {
        let q = |n: i64| Rational::from_integer(n.into());
        assert_eq!(rational_y(&q(3)), None);
        assert_eq!(rational_y(&q(1)), None);
        assert!(search_rational_points(1).found.is_empty());
        assert!(search_rational_points(300).found.is_empty());
    }

    #[test]
    fn conclusion() {
        let r = obstruction_conclusion_with(100, 200).unwrap();
        assert_eq!(r.verdict, "empty");
        assert_eq!(r.total_pairing, QmodZ::HALF);
        assert!(r.local_points_nonempty);
    }
}
