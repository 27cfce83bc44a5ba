//! Global splitting of `(a, b)` by induction on `|a| + |b|`.
//!
//! With `|a| <= |b|`, pick `c` with `c^2 = a mod b` and `|c| <= |b|/2`; then
//! `b b' = c^2 - a` is a norm from `Q(sqrt a)`, so `(a, b) = (a, b')` with
//! `|b'| < |b|`. A solution for the smaller pair is carried back through
//! multiplication by `c + sqrt a`.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::quaternion::{first_obstruction, QuaternionClass};
use crate::arith::{squarefree_part, sqrt_mod_squarefree, square_class_integer, Place, Rational};
use crate::{Error, Result};

/// Default height cap for the direct search in [`conic_point`].
pub const DEFAULT_CONIC_SEARCH_CAP: u64 = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescentStep {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    /// `(c^2 - a) / b`.
    pub b_prime: BigInt,
    /// Squarefree part of `b'`, the second entry of the next pair.
    pub reduced: BigInt,
    /// `b' = reduced * square^2`.
    pub square: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DescentOutcome {
    BaseCaseSplit,
    LocalObstruction(Place),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescentTrace {
    pub steps: Vec<DescentStep>,
    pub outcome: DescentOutcome,
    /// Primitive `(u, v, w)` with `u^2 - a v^2 - b w^2 = 0` for the input pair, when split.
    pub witness: Option<[BigInt; 3]>,
}

fn is_squarefree(n: &BigInt) -> Result<bool> {
    let (_, f) = squarefree_part(n)?;
    Ok(f.is_one())
}

/// Runs the descent on squarefree integers `a`, `b`.
pub fn descent_split_trace(a: &BigInt, b: &BigInt) -> Result<DescentTrace> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroArgument);
    }
    if !is_squarefree(a)? || !is_squarefree(b)? {
        return Err(Error::InvalidArgument("descent needs squarefree integers".into()));
    }
    let class = QuaternionClass::new(Rational::from_integer(a.clone()), Rational::from_integer(b.clone()))?;
    if let Some(v) = first_obstruction(&class) {
        return Ok(DescentTrace { steps: Vec::new(), outcome: DescentOutcome::LocalObstruction(v), witness: None });
    }
    let mut steps = Vec::new();
    // Each frame records whether the pair was swapped before the step.
    let mut swaps = Vec::new();
    let (mut x, mut y) = (a.clone(), b.clone());
    let base_swapped;
    loop {
        let swapped = x.abs() > y.abs();
        if swapped {
            core::mem::swap(&mut x, &mut y);
        }
        if x.is_one() || y.is_one() {
            base_swapped = swapped;
            break;
        }
        let roots = sqrt_mod_squarefree(&x, &y)?
            .ok_or_else(|| Error::InvalidArgument("split pair without a square root modulo b".into()))?;
        let modulus = y.abs();
        let c = roots
            .iter()
            .map(|r| if r * 2 > modulus { r - &modulus } else { r.clone() })
            .min_by(|p, q| p.abs().cmp(&q.abs()).then_with(|| q.cmp(p)))
            .expect("at least one root");
        let b_prime = (&c * &c - &x) / &y;
        debug_assert!(!b_prime.is_zero() && b_prime.abs() < y.abs());
        let (s, f) = squarefree_part(&b_prime)?;
        steps.push(DescentStep {
            a: x.clone(),
            b: y.clone(),
            c,
            b_prime,
            reduced: s.clone(),
            square: f,
        });
        swaps.push(swapped);
        y = s;
    }
    // Base solution of u^2 - x v^2 - y w^2 = 0.
    let mut sol = if x.is_one() {
        [BigInt::one(), BigInt::one(), BigInt::zero()]
    } else {
        [BigInt::one(), BigInt::zero(), BigInt::one()]
    };
    if base_swapped {
        sol.swap(1, 2);
    }
    for (step, swapped) in steps.iter().zip(swaps).rev() {
        let [u, v, w] = sol;
        // u^2 - a v^2 - reduced w^2 = 0  =>  (f u)^2 - a (f v)^2 - b' w^2 = 0.
        let (xx, yy, zz) = (&u * &step.square, &v * &step.square, w);
        let nu = &step.c * &xx + &step.a * &yy;
        let nv = &xx + &step.c * &yy;
        let nw = &step.b_prime * &zz;
        sol = primitive([nu, nv, nw]);
        if swapped {
            sol.swap(1, 2);
        }
    }
    debug_assert!(satisfies(&sol, a, b));
    Ok(DescentTrace { steps, outcome: DescentOutcome::BaseCaseSplit, witness: Some(sol) })
}

fn primitive(mut t: [BigInt; 3]) -> [BigInt; 3] {
    let g = t[0].gcd(&t[1]).gcd(&t[2]);
    if !g.is_zero() && !g.is_one() {
        for x in &mut t {
            *x /= &g;
        }
    }
    if t[0].is_negative() {
        for x in &mut t {
            *x = -&*x;
        }
    }
    t
}

fn satisfies(t: &[BigInt; 3], a: &BigInt, b: &BigInt) -> bool {
    &t[0] * &t[0] - a * &t[1] * &t[1] - b * &t[2] * &t[2] == BigInt::zero()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConicSolution {
    /// Primitive integers `(u, v, w)` with `u^2 - a v^2 - b w^2 = 0`, not all zero.
    Point([BigInt; 3]),
    Obstructed(Place),
}

/// A point on `u^2 = a v^2 + b w^2`, or the first place where none exists.
pub fn conic_point(a: &Rational, b: &Rational) -> Result<ConicSolution> {
    conic_point_with_cap(a, b, DEFAULT_CONIC_SEARCH_CAP)
}

/// Searches heights `1, 2, 4, ...` up to `cap`, then falls back to descent.
pub fn conic_point_with_cap(a: &Rational, b: &Rational, cap: u64) -> Result<ConicSolution> {
    let class = QuaternionClass::new(a.clone(), b.clone())?;
    if let Some(v) = first_obstruction(&class) {
        return Ok(ConicSolution::Obstructed(v));
    }
    let (a_bar, b_bar) = class.normalized();
    let (a_bar, b_bar) = (a_bar.clone(), b_bar.clone());
    let found = search(&a_bar, &b_bar, cap).map(Ok).unwrap_or_else(|| {
        descent_split_trace(&a_bar, &b_bar).map(|t| t.witness.expect("split pairs carry a witness"))
    })?;
    // a = a_bar * (fa / da)^2 with da the denominator of a.
    let scale = |x: &Rational, bar: &BigInt| -> (BigInt, BigInt) {
        let sq = square_class_integer(x);
        let f = (&sq / bar).sqrt();
        (f, x.denom().clone())
    };
    let (fa, da) = scale(a, &a_bar);
    let (fb, db) = scale(b, &b_bar);
    let [u, v, w] = found;
    let point = primitive([u * &fa * &fb, v * da * &fb, w * db * &fa]);
    debug_assert!({
        let [u, v, w] = &point;
        let (u, v, w) = (Rational::from_integer(u.clone()), Rational::from_integer(v.clone()), Rational::from_integer(w.clone()));
        &u * &u - a * &v * &v - b * &w * &w == Rational::zero()
    });
    Ok(ConicSolution::Point(point))
}

fn search(a: &BigInt, b: &BigInt, cap: u64) -> Option<[BigInt; 3]> {
    let mut h = 1u64;
    let mut done = 0u64;
    while h <= cap.max(1) {
        for w in 0..=h {
            for v in 0..=h {
                if v.max(w) <= done || (v == 0 && w == 0) {
                    continue;
                }
                let (vb, wb) = (BigInt::from(v), BigInt::from(w));
                let rhs = a * &vb * &vb + b * &wb * &wb;
                if rhs.is_negative() {
                    continue;
                }
                let u = rhs.sqrt();
                if &u * &u == rhs {
                    return Some(primitive([u, vb, wb]));
                }
            }
        }
        done = h;
        if h == cap {
            break;
        }
        h = (h * 2).min(cap);
    }
    None
}
