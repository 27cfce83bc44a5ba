//! Quadratic forms over Q: diagonalization, discriminant, Clifford invariant and the
//! Hasse-Minkowski decision.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::residue::{diagonal_has_local_zero, isotropy_depth};
use crate::arith::{prime_divisors, square_class_integer, squarefree_part, Place, Prime, Rational};
use crate::brauer::{conic_point, ConicSolution, QuaternionClass};
use crate::{Error, Result};

/// Default number of candidate vectors tried by the witness search.
pub const DEFAULT_WITNESS_BUDGET: u64 = 200_000;

/// A nondegenerate quadratic form `x^T G x` with its diagonalization cached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticForm {
    gram: Vec<Vec<Rational>>,
    diagonal: Vec<Rational>,
    basis: Vec<Vec<Rational>>,
}

impl QuadraticForm {
    pub fn new(gram: Vec<Vec<Rational>>) -> Result<Self> {
        let n = gram.len();
        if n == 0 {
            return Err(Error::InvalidForm("empty Gram matrix".into()));
        }
        if gram.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidForm("Gram matrix is not square".into()));
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::InvalidForm(format!("Gram matrix is not symmetric at ({i}, {j})")));
                }
            }
        }
        let (diagonal, basis) = symmetric_gauss(&gram)?;
        Ok(QuadraticForm { gram, diagonal, basis })
    }

    pub fn diagonal_form(entries: &[Rational]) -> Result<Self> {
        let n = entries.len();
        let gram = (0..n)
            .map(|i| (0..n).map(|j| if i == j { entries[i].clone() } else { Rational::zero() }).collect())
            .collect();
        Self::new(gram)
    }

    pub fn from_integers(entries: &[i64]) -> Result<Self> {
        let e: Vec<Rational> = entries.iter().map(|&x| Rational::from_integer(x.into())).collect();
        Self::diagonal_form(&e)
    }

    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<Rational>] {
        &self.gram
    }

    pub fn diagonal(&self) -> &[Rational] {
        &self.diagonal
    }

    pub fn determinant(&self) -> Rational {
        self.diagonal.iter().fold(Rational::one(), |acc, d| acc * d)
    }

    pub fn evaluate(&self, x: &[Rational]) -> Rational {
        let n = self.dim();
        let mut acc = Rational::zero();
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                acc += &self.gram[i][j] * &x[i] * &x[j];
            }
        }
        acc
    }

    pub fn scaled(&self, c: &Rational) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::ZeroArgument);
        }
        Self::new(self.gram.iter().map(|row| row.iter().map(|x| x * c).collect()).collect())
    }
}

/// Congruence diagonalization: `(D, T)` with `T^T G T = diag(D)`; columns of `T` are the new basis.
pub fn diagonalize(f: &QuadraticForm) -> (Vec<Rational>, Vec<Vec<Rational>>) {
    (f.diagonal.clone(), f.basis.clone())
}

fn symmetric_gauss(gram: &[Vec<Rational>]) -> Result<(Vec<Rational>, Vec<Vec<Rational>>)> {
    let n = gram.len();
    let mut w: Vec<Vec<Rational>> = gram.to_vec();
    let mut t: Vec<Vec<Rational>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()).collect();
    for k in 0..n {
        if w[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !w[j][j].is_zero()) {
                w.swap(k, j);
                for row in w.iter_mut() {
                    row.swap(k, j);
                }
                for row in t.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !w[k][j].is_zero()) {
                // e_k <- e_k + e_j makes the pivot 2 w_kj.
                for c in 0..n {
                    let x = w[j][c].clone();
                    w[k][c] += x;
                }
                for r in 0..n {
                    let x = w[r][j].clone();
                    w[r][k] += x;
                }
                for row in t.iter_mut() {
                    let x = row[j].clone();
                    row[k] += x;
                }
            } else {
                return Err(Error::DegenerateForm);
            }
        }
        let pivot = w[k][k].clone();
        for j in k + 1..n {
            if w[k][j].is_zero() {
                continue;
            }
            let f = &w[k][j] / &pivot;
            for c in 0..n {
                let x = &f * &w[k][c];
                w[j][c] -= x;
            }
            for r in 0..n {
                let x = &f * &w[r][k];
                w[r][j] -= x;
            }
            for row in t.iter_mut() {
                let x = &f * &row[k];
                row[j] -= x;
            }
        }
    }
    Ok(((0..n).map(|i| w[i][i].clone()).collect(), t))
}

/// A class in `Q^*/Q^*2`, represented by a squarefree integer.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SquareClass(BigInt);

impl SquareClass {
    pub fn of(x: &Rational) -> Result<Self> {
        if x.is_zero() {
            return Err(Error::ZeroArgument);
        }
        Ok(SquareClass(squarefree_part(&square_class_integer(x))?.0))
    }

    pub fn representative(&self) -> &BigInt {
        &self.0
    }

    pub fn is_trivial(&self) -> bool {
        self.0.is_one()
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Square class of the determinant, for forms of even rank.
pub fn discriminant(f: &QuadraticForm) -> Result<SquareClass> {
    if !f.dim().is_multiple_of(2) {
        return Err(Error::InvalidForm(format!("discriminant needs even rank, got {}", f.dim())));
    }
    SquareClass::of(&f.determinant())
}

/// For a rank-four form of trivial discriminant with diagonal `<d1, d2, d3, d4>`, the class `(-d1 d2, -d1 d3)`.
pub fn clifford_invariant(f: &QuadraticForm) -> Result<QuaternionClass> {
    if f.dim() != 4 {
        return Err(Error::InvalidForm(format!("Clifford invariant needs rank 4, got {}", f.dim())));
    }
    if !discriminant(f)?.is_trivial() {
        return Err(Error::DiscriminantNotTrivial);
    }
    let d = f.diagonal();
    QuaternionClass::new(-(&d[0] * &d[1]), -(&d[0] * &d[2]))
}

pub fn local_isotropy(f: &QuadraticForm, v: &Place) -> bool {
    diagonal_isotropic_at(f.diagonal(), v)
}

fn diagonal_isotropic_at(d: &[Rational], v: &Place) -> bool {
    let n = d.len();
    if n < 2 {
        return false;
    }
    match v {
        Place::Real => d.iter().any(Signed::is_positive) && d.iter().any(Signed::is_negative),
        Place::Finite(p) => {
            if n >= 5 && !p.is_two() {
                let odd = d.iter().filter(|x| valuation_parity(x, p) == 1).count();
                if odd >= 3 || n - odd >= 3 {
                    return true;
                }
            }
            diagonal_has_local_zero(d, p, isotropy_depth(p))
        }
    }
}

fn valuation_parity(x: &Rational, p: &Prime) -> u32 {
    let (v, _) = crate::arith::rational_unit_part(x, p.value());
    v.rem_euclid(2) as u32
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsotropyCertificate {
    /// Primitive integer vector with `q(w) = 0`, in the coordinates of the Gram matrix.
    Isotropic(Vec<BigInt>),
    Anisotropic(Place),
    IsotropicNoWitness,
}

/// Places where isotropy can fail, in the order they are checked: the real
/// place, odd primes in increasing order, then 2.
pub fn relevant_places(f: &QuadraticForm) -> Result<Vec<Place>> {
    let mut primes: Vec<Prime> = Vec::new();
    for d in f.diagonal() {
        for p in prime_divisors(&square_class_integer(d))? {
            if !p.is_two() && !primes.contains(&p) {
                primes.push(p);
            }
        }
    }
    primes.sort();
    let mut out = vec![Place::Real];
    out.extend(primes.into_iter().map(Place::Finite));
    out.push(Place::Finite(Prime::two()));
    Ok(out)
}

pub fn global_isotropy(f: &QuadraticForm) -> Result<IsotropyCertificate> {
    global_isotropy_with_budget(f, DEFAULT_WITNESS_BUDGET)
}

pub fn global_isotropy_with_budget(f: &QuadraticForm, budget: u64) -> Result<IsotropyCertificate> {
    if f.dim() < 2 {
        return Err(Error::InvalidForm("isotropy needs at least two variables".into()));
    }
    for v in relevant_places(f)? {
        if !local_isotropy(f, &v) {
            return Ok(IsotropyCertificate::Anisotropic(v));
        }
    }
    let d = f.diagonal();
    let diag_witness: Option<Vec<Rational>> = match d.len() {
        2 => {
            let r = -(&d[1] / &d[0]);
            let root = rational_sqrt(&r).ok_or_else(|| Error::InvalidForm("locally isotropic binary form without a rational zero".into()))?;
            Some(vec![Rational::from_integer(root.numer().clone()), Rational::from_integer(root.denom().clone())])
        }
        3 => match conic_point(&-(&d[1] / &d[0]), &-(&d[2] / &d[0]))? {
            ConicSolution::Point(p) => Some(p.into_iter().map(Rational::from_integer).collect()),
            ConicSolution::Obstructed(v) => return Ok(IsotropyCertificate::Anisotropic(v)),
        },
        _ => search_diagonal(d, budget),
    };
    let Some(x) = diag_witness else {
        return Ok(IsotropyCertificate::IsotropicNoWitness);
    };
    let n = f.dim();
    let w: Vec<Rational> = (0..n).map(|i| (0..n).map(|k| &f.basis[i][k] * &x[k]).sum()).collect();
    let w = primitive_integer_vector(&w);
    debug_assert!(f.evaluate(&w.iter().cloned().map(Rational::from_integer).collect::<Vec<_>>()).is_zero());
    Ok(IsotropyCertificate::Isotropic(w))
}

pub(crate) fn rational_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    (&n * &n == *x.numer() && &d * &d == *x.denom()).then(|| Rational::new(n, d))
}

/// Scales a nonzero rational vector to a primitive integer vector whose first nonzero entry is positive.
pub fn primitive_integer_vector(v: &[Rational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let sign = match ints.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => -BigInt::one(),
        _ => BigInt::one(),
    };
    ints.into_iter().map(|x| x / &g * &sign).collect()
}

/// Advances `x` through `[0, h]^len` in lexicographic order; false once exhausted.
fn odometer(x: &mut [u64], h: u64) -> bool {
    for i in (0..x.len()).rev() {
        if x[i] < h {
            x[i] += 1;
            x[i + 1..].iter_mut().for_each(|y| *y = 0);
            return true;
        }
    }
    false
}

/// Nonnegative vectors by increasing max-norm; the last coordinate is solved for.
fn search_diagonal(d: &[Rational], budget: u64) -> Option<Vec<Rational>> {
    let n = d.len();
    let l = d.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let c: Vec<BigInt> = d.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect();
    let last = &c[n - 1];
    let mut tried = 0u64;
    let mut prev = 0u64;
    let mut h = 1u64;
    loop {
        let mut x = vec![0u64; n - 1];
        loop {
            if x.iter().copied().max().unwrap_or(0) > prev {
                tried += 1;
                let s: BigInt = x.iter().zip(&c).map(|(&xi, ci)| ci * BigInt::from(xi) * BigInt::from(xi)).sum();
                let (q, r) = (-s).div_rem(last);
                if r.is_zero() && !q.is_negative() {
                    let y = q.sqrt();
                    if &y * &y == q {
                        let mut out: Vec<Rational> = x.iter().map(|&xi| Rational::from_integer(xi.into())).collect();
                        out.push(Rational::from_integer(y));
                        return Some(out);
                    }
                }
                if tried >= budget {
                    return None;
                }
            }
            if !odometer(&mut x, h) {
                break;
            }
        }
        prev = h;
        h *= 2;
    }
}
