//! The central extension `0 -> Λ²W -> G̃ -> W -> 0` with `W = F_p^4` and
//! cocycle `(w1, w2) -> w1 ∧ w2`.
//!
//! Elements are pairs `(w, m)` and every structural statement about the
//! group of order `p^10` is checked through this parametrization; the group
//! itself is never enumerated.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use crate::{Error, Result};

/// Index pairs of the basis `e_i ∧ e_j`, `i < j`, zero-based.
pub const BIVECTOR_BASIS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Largest prime accepted by the exhaustive scans.
pub const EXHAUSTIVE_PRIME_CAP: u32 = 5;

fn check_odd_prime(p: u32) -> Result<()> {
    if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p.is_multiple_of(d)) {
        return Err(Error::NotPrime(BigInt::from(p)));
    }
    if p == 2 {
        return Err(Error::InvalidArgument("the construction needs an odd prime".into()));
    }
    Ok(())
}

fn check_exhaustive(p: u32) -> Result<()> {
    check_odd_prime(p)?;
    if p > EXHAUSTIVE_PRIME_CAP {
        return Err(Error::InvalidArgument("exhaustive scans are limited to p <= 5".into()));
    }
    Ok(())
}

fn reduce(x: i64, p: u32) -> u32 {
    x.rem_euclid(p as i64) as u32
}

fn inv_mod(a: u32, p: u32) -> u32 {
    // p is prime, so a^(p-2) is the inverse.
    let (mut base, mut exp, mut acc) = (a as u64 % p as u64, p - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    acc as u32
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FpVector {
    p: u32,
    coords: [u32; 4],
}

impl FpVector {
    pub fn new(p: u32, coords: [i64; 4]) -> Self {
        FpVector { p, coords: coords.map(|c| reduce(c, p)) }
    }

    pub fn zero(p: u32) -> Self {
        FpVector { p, coords: [0; 4] }
    }

    /// The basis vector `e_{i+1}`.
    pub fn basis(p: u32, i: usize) -> Self {
        let mut coords = [0; 4];
        coords[i] = 1;
        FpVector::new(p, coords)
    }

    /// The `index`-th vector of `F_p^4` in base-p order, `index < p^4`.
    pub fn from_index(p: u32, mut index: u32) -> Self {
        let mut coords = [0u32; 4];
        for c in coords.iter_mut() {
            *c = index % p;
            index /= p;
        }
        FpVector { p, coords }
    }

    /// All `p^4` vectors.
    pub fn all(p: u32) -> impl Iterator<Item = FpVector> {
        (0..p.pow(4)).map(move |i| FpVector::from_index(p, i))
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn coords(&self) -> [u32; 4] {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords == [0; 4]
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p, "mixed primes");
        let mut coords = self.coords;
        for (c, o) in coords.iter_mut().zip(other.coords) {
            *c = (*c + o) % self.p;
        }
        FpVector { p: self.p, coords }
    }

    pub fn scale(&self, k: i64) -> Self {
        let k = reduce(k, self.p) as u64;
        FpVector { p: self.p, coords: self.coords.map(|c| (c as u64 * k % self.p as u64) as u32) }
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }
}

impl fmt::Display for FpVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.coords;
        write!(f, "({a},{b},{c},{d})")
    }
}

/// An element of `Λ²(F_p^4)` in the basis [`BIVECTOR_BASIS`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Bivector {
    p: u32,
    coords: [u32; 6],
}

impl Bivector {
    pub fn new(p: u32, coords: [i64; 6]) -> Self {
        Bivector { p, coords: coords.map(|c| reduce(c, p)) }
    }

    pub fn zero(p: u32) -> Self {
        Bivector { p, coords: [0; 6] }
    }

    /// `e_i ∧ e_j` for the `k`-th pair of [`BIVECTOR_BASIS`].
    pub fn basis(p: u32, k: usize) -> Self {
        let mut coords = [0; 6];
        coords[k] = 1;
        Bivector::new(p, coords)
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn coords(&self) -> [u32; 6] {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords == [0; 6]
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p, "mixed primes");
        let mut coords = self.coords;
        for (c, o) in coords.iter_mut().zip(other.coords) {
            *c = (*c + o) % self.p;
        }
        Bivector { p: self.p, coords }
    }

    pub fn scale(&self, k: i64) -> Self {
        let k = reduce(k, self.p) as u64;
        Bivector { p: self.p, coords: self.coords.map(|c| (c as u64 * k % self.p as u64) as u32) }
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    /// Whether `self = c * z` for some `c` in `F_p`.
    pub fn in_span_of(&self, z: &Bivector) -> bool {
        let Some(k) = z.coords.iter().position(|&c| c != 0) else {
            return self.is_zero();
        };
        let c = self.coords[k] as u64 * inv_mod(z.coords[k], self.p) as u64 % self.p as u64;
        z.scale(c as i64) == *self
    }
}

impl fmt::Display for Bivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &(i, j)) in BIVECTOR_BASIS.iter().enumerate() {
            let c = self.coords[k];
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if c != 1 {
                write!(f, "{c}*")?;
            }
            write!(f, "e{}e{}", i + 1, j + 1)?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

pub fn wedge(u: &FpVector, v: &FpVector) -> Bivector {
    assert_eq!(u.p, v.p, "mixed primes");
    let mut coords = [0i64; 6];
    for (k, &(i, j)) in BIVECTOR_BASIS.iter().enumerate() {
        coords[k] = u.coords[i] as i64 * v.coords[j] as i64 - u.coords[j] as i64 * v.coords[i] as i64;
    }
    Bivector::new(u.p, coords)
}

/// `z ∧ z` as the coefficient of `e1∧e2∧e3∧e4`.
pub fn self_wedge(z: &Bivector) -> u32 {
    let c = z.coords.map(|x| x as i64);
    reduce(2 * (c[0] * c[5] - c[1] * c[4] + c[2] * c[3]), z.p)
}

/// In dimension four a bivector is decomposable iff `z ∧ z = 0`.
pub fn bivector_decomposable(z: &Bivector) -> bool {
    self_wedge(z) == 0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WGroupElement {
    pub w: FpVector,
    pub m: Bivector,
}

impl WGroupElement {
    pub fn new(w: FpVector, m: Bivector) -> Self {
        assert_eq!(w.p, m.p, "mixed primes");
        WGroupElement { w, m }
    }

    pub fn identity(p: u32) -> Self {
        WGroupElement { w: FpVector::zero(p), m: Bivector::zero(p) }
    }

    /// The lift `(w, 0)`.
    pub fn lift(w: FpVector) -> Self {
        WGroupElement { w, m: Bivector::zero(w.p) }
    }

    pub fn central(m: Bivector) -> Self {
        WGroupElement { w: FpVector::zero(m.p), m }
    }

    pub fn prime(&self) -> u32 {
        self.w.p
    }

    pub fn is_identity(&self) -> bool {
        self.w.is_zero() && self.m.is_zero()
    }

    pub fn inverse(&self) -> Self {
        // w ∧ w = 0, so the cocycle correction vanishes.
        WGroupElement { w: self.w.neg(), m: self.m.neg() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = WGroupElement::identity(self.prime());
        for _ in 0..k {
            acc = group_mul(&acc, self);
        }
        acc
    }
}

impl fmt::Display for WGroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.w, self.m)
    }
}

pub fn group_mul(g1: &WGroupElement, g2: &WGroupElement) -> WGroupElement {
    WGroupElement { w: g1.w.add(&g2.w), m: g1.m.add(&g2.m).add(&wedge(&g1.w, &g2.w)) }
}

/// `g1 g2 g1^-1 g2^-1`.
pub fn commutator(g1: &WGroupElement, g2: &WGroupElement) -> WGroupElement {
    let left = group_mul(g1, g2);
    let right = group_mul(&g1.inverse(), &g2.inverse());
    group_mul(&left, &right)
}

pub fn associative_on(a: &WGroupElement, b: &WGroupElement, c: &WGroupElement) -> bool {
    group_mul(&group_mul(a, b), c) == group_mul(a, &group_mul(b, c))
}

/// All `(w, m)` with `w` in `F_p^4` and `m` in `{0} ∪ {e_i ∧ e_j}`: a
/// generating set of size `7 p^4` that contains a spanning set of both
/// factors.
pub fn generating_closure(p: u32) -> Vec<WGroupElement> {
    let mut out = Vec::with_capacity(7 * p.pow(4) as usize);
    for w in FpVector::all(p) {
        out.push(WGroupElement::lift(w));
        for k in 0..6 {
            out.push(WGroupElement::new(w, Bivector::basis(p, k)));
        }
    }
    out
}

/// Rank over `F_p` of a list of bivectors.
fn span_rank(p: u32, vectors: &[Bivector]) -> usize {
    let mut rows: Vec<[u32; 6]> = vectors.iter().map(|v| v.coords).collect();
    let mut rank = 0;
    for col in 0..6 {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = inv_mod(rows[rank][col], p) as u64;
        let pivot_row = rows[rank].map(|x| (x as u64 * inv % p as u64) as u32);
        rows[rank] = pivot_row;
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let f = rows[r][col] as u64;
                for c in 0..6 {
                    rows[r][c] = ((rows[r][c] as u64 + (p as u64 - f) * pivot_row[c] as u64) % p as u64) as u32;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureReport {
    pub prime: u32,
    pub closure_size: usize,
    /// `g^p = 1` for every element of the generating closure.
    pub exponent_p: bool,
    /// Every commutator has trivial `W` component.
    pub commutators_central: bool,
    /// `[g1, g2] = (0, 2 w1 ∧ w2)` for every pair in the closure.
    pub commutator_identity: bool,
    pub commutator_span_rank: usize,
    /// Triples checked from the lifts of `W` together with `(0, e_i ∧ e_j)`.
    pub associativity_triples: usize,
    pub associativity: bool,
    /// Number of `w` with `w ∧ v = 0` for all `v`.
    pub central_w_count: u64,
    pub center_order: BigInt,
}

impl StructureReport {
    pub fn passes(&self) -> bool {
        self.exponent_p
            && self.commutators_central
            && self.commutator_identity
            && self.commutator_span_rank == 6
            && self.associativity
            && self.central_w_count == 1
            && self.center_order == BigInt::from(self.prime).pow(6)
    }
}

pub fn verify_structure(p: u32) -> Result<StructureReport> {
    check_exhaustive(p)?;
    let closure = generating_closure(p);

    let exponent_p = closure.iter().all(|g| g.pow(p).is_identity());

    let mut commutators_central = true;
    let mut commutator_identity = true;
    for g1 in &closure {
        for g2 in &closure {
            let c = commutator(g1, g2);
            commutators_central &= c.w.is_zero();
            commutator_identity &= c == WGroupElement::central(wedge(&g1.w, &g2.w).scale(2));
        }
    }
    let basis_commutators: Vec<Bivector> = BIVECTOR_BASIS
        .iter()
        .map(|&(i, j)| {
            commutator(&WGroupElement::lift(FpVector::basis(p, i)), &WGroupElement::lift(FpVector::basis(p, j))).m
        })
        .collect();
    let commutator_span_rank = span_rank(p, &basis_commutators);

    let mut small: Vec<WGroupElement> = FpVector::all(p).map(WGroupElement::lift).collect();
    small.extend((0..6).map(|k| WGroupElement::central(Bivector::basis(p, k))));
    let mut associativity = true;
    for a in &small {
        for b in &small {
            for c in &small {
                associativity &= associative_on(a, b, c);
            }
        }
    }

    let central_w_count = FpVector::all(p).filter(|w| FpVector::all(p).all(|v| wedge(w, &v).is_zero())).count() as u64;
    let center_order = BigInt::from(central_w_count) * BigInt::from(p).pow(6);

    Ok(StructureReport {
        prime: p,
        closure_size: closure.len(),
        exponent_p,
        commutators_central,
        commutator_identity,
        commutator_span_rank,
        associativity_triples: small.len().pow(3),
        associativity,
        central_w_count,
        center_order,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientCenter {
    pub z: Bivector,
    pub decomposable: bool,
    /// Number of `w` with `2 w ∧ v ∈ ⟨z⟩` for all `v`.
    pub central_w_count: u64,
    /// `|Z(G̃/⟨z⟩)| = central_w_count * p^5`.
    pub order: BigInt,
    /// Whether the center is larger than `W'/⟨z⟩`.
    pub exceeds_w_prime: bool,
    /// Independent `v, v'` with `v ∧ v'` a nonzero multiple of `z`; exists
    /// iff `z` is decomposable.
    pub plane: Option<(FpVector, FpVector)>,
}

pub fn quotient_center_order(z: &Bivector) -> Result<QuotientCenter> {
    let p = z.p;
    check_exhaustive(p)?;
    if z.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let central_w_count = FpVector::all(p)
        .filter(|w| FpVector::all(p).all(|v| wedge(w, &v).scale(2).in_span_of(z)))
        .count() as u64;
    let order = BigInt::from(central_w_count) * BigInt::from(p).pow(5);
    let mut plane = None;
    'outer: for v in FpVector::all(p) {
        for v2 in FpVector::all(p) {
            let x = wedge(&v, &v2);
            if !x.is_zero() && x.in_span_of(z) {
                plane = Some((v, v2));
                break 'outer;
            }
        }
    }
    Ok(QuotientCenter {
        z: *z,
        decomposable: bivector_decomposable(z),
        central_w_count,
        order,
        exceeds_w_prime: central_w_count > 1,
        plane,
    })
}

/// Pairs `(w_i, v_i)` with `2 Σ w_i ∧ v_i = m`, at most one per basis bivector.
pub fn commutator_product_witness(m: &Bivector) -> Result<Vec<(FpVector, FpVector)>> {
    let p = m.p;
    check_odd_prime(p)?;
    if m.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let half = inv_mod(2, p) as i64;
    Ok(BIVECTOR_BASIS
        .iter()
        .zip(m.coords)
        .filter(|(_, c)| *c != 0)
        .map(|(&(i, j), c)| (FpVector::basis(p, i), FpVector::basis(p, j).scale(c as i64 * half)))
        .collect())
}

/// Multiplies out `Π [g_i, f_i]` for lifts `g_i = (w_i, a_i)`, `f_i = (v_i, b_i)`
/// with the given central offsets.
pub fn commutator_product(pairs: &[(FpVector, FpVector)], offsets: &[(Bivector, Bivector)]) -> Option<WGroupElement> {
    let p = pairs.first()?.0.p;
    let mut acc = WGroupElement::identity(p);
    for (k, (w, v)) in pairs.iter().enumerate() {
        let (a, b) = offsets.get(k).copied().unwrap_or((Bivector::zero(p), Bivector::zero(p)));
        acc = group_mul(&acc, &commutator(&WGroupElement::new(*w, a), &WGroupElement::new(*v, b)));
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn e(i: usize) -> FpVector {
        FpVector::basis(3, i)
    }

    #[test]
    fn wedge_examples() {
        assert_eq!(wedge(&e(0), &e(1)), Bivector::basis(3, 0));
        let u = FpVector::new(3, [1, 2, 0, 1]);
        assert!(wedge(&u, &u).is_zero());
        let lhs = wedge(&e(0).add(&e(2)), &e(1).add(&e(3)));
        assert_eq!(lhs, Bivector::new(3, [1, 0, 1, -1, 0, 1]));
    }

    #[test]
    fn group_law_basics() {
        let g = WGroupElement::new(FpVector::new(3, [1, 2, 0, 1]), Bivector::new(3, [0, 1, 2, 0, 0, 1]));
        assert_eq!(group_mul(&g, &WGroupElement::identity(3)), g);
        assert!(group_mul(&g, &g.inverse()).is_identity());
        assert!(g.pow(3).is_identity());
        let h = WGroupElement::lift(FpVector::new(3, [0, 1, 1, 2]));
        assert_eq!(commutator(&g, &h), WGroupElement::central(wedge(&g.w, &h.w).scale(2)));
    }

    #[test]
    fn structure_for_p3() {
        let report = verify_structure(3).unwrap();
        assert_eq!(report.closure_size, 567);
        assert_eq!(report.center_order, BigInt::from(729));
        assert_eq!(report.commutator_span_rank, 6);
        assert!(report.passes(), "{report:?}");
    }

    #[test]
    fn rejects_bad_primes() {
        assert_eq!(verify_structure(4), Err(Error::NotPrime(BigInt::from(4))));
        assert!(matches!(verify_structure(2), Err(Error::InvalidArgument(_))));
        assert!(matches!(verify_structure(7), Err(Error::InvalidArgument(_))));
        assert!(matches!(commutator_product_witness(&Bivector::basis(2, 0)), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn decomposability() {
        assert!(bivector_decomposable(&Bivector::basis(3, 0)));
        assert!(!bivector_decomposable(&Bivector::new(3, [1, 0, 0, 0, 0, 1])));
        assert!(bivector_decomposable(&Bivector::zero(3)));
    }

    #[test]
    fn quotient_center_indecomposable() {
        let q = quotient_center_order(&Bivector::new(3, [1, 0, 0, 0, 0, 1])).unwrap();
        assert_eq!(q.order, BigInt::from(243));
        assert!(!q.decomposable);
        assert!(q.plane.is_none());
        assert_eq!(quotient_center_order(&Bivector::zero(3)), Err(Error::ZeroArgument));
    }

    #[test]
    fn quotient_center_decomposable() {
        // For w != 0 the map v -> w ∧ v has rank 3, so it never lands in a line.
        let q = quotient_center_order(&Bivector::basis(3, 0)).unwrap();
        assert!(q.decomposable);
        assert_eq!(q.order, BigInt::from(243));
        assert!(!q.exceeds_w_prime);
        let (v, v2) = q.plane.unwrap();
        assert!(wedge(&v, &v2).in_span_of(&Bivector::basis(3, 0)));
    }

    #[test]
    fn witness_examples() {
        let m = Bivector::basis(3, 0).scale(2);
        assert_eq!(commutator_product_witness(&m).unwrap(), vec![(e(0), e(1))]);
        let m = Bivector::basis(3, 0);
        assert_eq!(commutator_product_witness(&m).unwrap(), vec![(e(0), e(1).scale(2))]);
        let m = Bivector::new(3, [1, 0, 0, 0, 0, 1]);
        let pairs = commutator_product_witness(&m).unwrap();
        assert_eq!(pairs.len(), 2);
        let offsets = [(Bivector::basis(3, 3), Bivector::basis(3, 5)), (Bivector::basis(3, 1), Bivector::zero(3))];
        assert_eq!(commutator_product(&pairs, &offsets), Some(WGroupElement::central(m)));
        assert_eq!(commutator_product_witness(&Bivector::zero(3)), Err(Error::ZeroArgument));
    }

    #[test]
    fn display() {
        assert_eq!(Bivector::new(3, [1, 0, 0, 2, 0, 0]).to_string(), "e1e2 + 2*e2e3");
        assert_eq!(Bivector::zero(5).to_string(), "0");
    }
}
