//! Diagonalization of integer matrices by unimodular row and column operations.
//!
//! Pivots are chosen column by column, taking the entry of least absolute
//! value. Arithmetic runs in checked `i128` first and restarts in `BigInt` if
//! any intermediate overflows. The diagonal is not forced into a divisibility
//! chain; [`AbelianInvariants::from_diagonal`] normalizes it.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::abelian::AbelianInvariants;
use super::matrix::IntMatrix;
use super::modular::smith_mod;

trait Entry: Clone + Debug + PartialEq + Sized {
    fn e_zero() -> Self;
    fn e_one() -> Self;
    fn e_is_zero(&self) -> bool;
    fn abs_lt(&self, other: &Self) -> bool;
    fn floor_div(&self, d: &Self) -> Self;
    /// `self - q * b`, or `None` on overflow.
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self>;
    fn checked_neg(&self) -> Option<Self>;
    fn to_big(&self) -> BigInt;
}

impl Entry for i128 {
    fn e_zero() -> Self {
        0
    }
    fn e_one() -> Self {
        1
    }
    fn e_is_zero(&self) -> bool {
        *self == 0
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn floor_div(&self, d: &Self) -> Self {
        self.div_floor(d)
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        self.checked_sub(q.checked_mul(*b)?)
    }
    fn checked_neg(&self) -> Option<Self> {
        i128::checked_neg(*self)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Entry for BigInt {
    fn e_zero() -> Self {
        Zero::zero()
    }
    fn e_one() -> Self {
        One::one()
    }
    fn e_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.magnitude() < other.magnitude()
    }
    fn floor_div(&self, d: &Self) -> Self {
        self.div_floor(d)
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        Some(self - q * b)
    }
    fn checked_neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Column transform `Q` with `P * A * Q = diag`, together with `Q^{-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColumnTransform {
    pub q: Vec<Vec<BigInt>>,
    pub q_inv: Vec<Vec<BigInt>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    /// Nonzero diagonal entries (positive), in pivot order.
    pub diagonal: Vec<BigInt>,
    pub rows: usize,
    pub cols: usize,
    pub transform: Option<ColumnTransform>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// Invariants of the cokernel `Z^rows / A Z^cols`.
    pub fn cokernel(&self) -> AbelianInvariants {
        AbelianInvariants::from_diagonal(self.rows - self.rank(), self.diagonal.iter().cloned())
    }
}

/// Smith diagonalization; `track_columns` also records `Q` and `Q^{-1}`.
pub fn smith_form(matrix: &IntMatrix, track_columns: bool) -> SmithForm {
    let rows: Vec<Vec<i128>> = (0..matrix.rows())
        .map(|r| matrix.row(r).iter().map(|&x| x as i128).collect())
        .collect();
    if let Some(out) = Diagonalizer::new(rows, matrix.cols(), track_columns).run() {
        return out;
    }
    let rows: Vec<Vec<BigInt>> = (0..matrix.rows())
        .map(|r| matrix.row(r).iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    Diagonalizer::new(rows, matrix.cols(), track_columns).run().expect("BigInt elimination cannot overflow")
}

struct Diagonalizer<T: Entry> {
    a: Vec<Vec<T>>,
    rows: usize,
    cols: usize,
    q: Option<Vec<Vec<T>>>,
    q_inv: Option<Vec<Vec<T>>>,
}

impl<T: Entry> Diagonalizer<T> {
    fn new(a: Vec<Vec<T>>, cols: usize, track: bool) -> Self {
        let rows = a.len();
        let ident = || {
            (0..cols)
                .map(|i| (0..cols).map(|j| if i == j { T::e_one() } else { T::e_zero() }).collect())
                .collect::<Vec<Vec<T>>>()
        };
        Diagonalizer { a, rows, cols, q: track.then(ident), q_inv: track.then(ident) }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in &mut self.a {
            row.swap(i, j);
        }
        if let (Some(q), Some(qi)) = (&mut self.q, &mut self.q_inv) {
            for row in q.iter_mut() {
                row.swap(i, j);
            }
            qi.swap(i, j);
        }
    }

    /// `col_j -= f * col_i` on the transforms only (the matrix side is handled by the caller).
    fn track_col_op(&mut self, j: usize, i: usize, f: &T) -> Option<()> {
        if let (Some(q), Some(qi)) = (&mut self.q, &mut self.q_inv) {
            for row in q.iter_mut() {
                if !row[i].e_is_zero() {
                    row[j] = row[j].sub_mul(f, &row[i])?;
                }
            }
            // Inverse: row_i += f * row_j.
            let neg = f.checked_neg()?;
            let (lo, hi) = qi.split_at_mut(i.max(j));
            let (ri, rj) = if i < j { (&mut lo[i], &hi[0]) } else { (&mut hi[0], &lo[j]) };
            for (x, y) in ri.iter_mut().zip(rj.iter()) {
                if !y.e_is_zero() {
                    *x = x.sub_mul(&neg, y)?;
                }
            }
        }
        Some(())
    }

    fn column_is_zero(&self, c: usize, from: usize) -> bool {
        self.a[from..].iter().all(|row| row[c].e_is_zero())
    }

    fn run(mut self) -> Option<SmithForm> {
        let mut diagonal = Vec::new();
        let mut active = self.cols;
        let mut t = 0;
        while t < self.rows && t < active {
            // Bring a column with a nonzero entry (rows >= t) to position t.
            while t < active && self.column_is_zero(t, t) {
                active -= 1;
                self.swap_cols(t, active);
            }
            if t >= active {
                break;
            }
            self.pivot_at(t, active)?;
            diagonal.push(self.a[t][t].to_big().abs());
            t += 1;
        }
        let transform = match (self.q, self.q_inv) {
            (Some(q), Some(qi)) => Some(ColumnTransform {
                q: q.iter().map(|r| r.iter().map(Entry::to_big).collect()).collect(),
                q_inv: qi.iter().map(|r| r.iter().map(Entry::to_big).collect()).collect(),
            }),
            _ => None,
        };
        Some(SmithForm { diagonal, rows: self.rows, cols: self.cols, transform })
    }

    /// Clears row t and column t apart from the pivot `a[t][t]`.
    fn pivot_at(&mut self, t: usize, active: usize) -> Option<()> {
        loop {
            // Column phase: least nonzero |entry| in column t becomes the pivot.
            loop {
                let mut best: Option<usize> = None;
                for r in t..self.rows {
                    let x = &self.a[r][t];
                    if !x.e_is_zero() && best.is_none_or(|b| x.abs_lt(&self.a[b][t])) {
                        best = Some(r);
                    }
                }
                let best = best.expect("column has a nonzero entry");
                self.a.swap(t, best);
                let pivot = self.a[t][t].clone();
                let support: Vec<usize> = (t..active).filter(|&c| !self.a[t][c].e_is_zero()).collect();
                let mut clean = true;
                for r in t + 1..self.rows {
                    if self.a[r][t].e_is_zero() {
                        continue;
                    }
                    let f = self.a[r][t].floor_div(&pivot);
                    let (upper, lower) = self.a.split_at_mut(r);
                    let prow = &upper[t];
                    let row = &mut lower[0];
                    for &c in &support {
                        row[c] = row[c].sub_mul(&f, &prow[c])?;
                    }
                    if !row[t].e_is_zero() {
                        clean = false;
                    }
                }
                if clean {
                    break;
                }
            }
            // Row phase: column operations against the pivot column. Column t is
            // zero below the pivot, so only row t changes in the matrix.
            let pivot = self.a[t][t].clone();
            let mut clean = true;
            for c in t + 1..active {
                if self.a[t][c].e_is_zero() {
                    continue;
                }
                let f = self.a[t][c].floor_div(&pivot);
                self.a[t][c] = self.a[t][c].sub_mul(&f, &pivot)?;
                self.track_col_op(c, t, &f)?;
                if !self.a[t][c].e_is_zero() {
                    clean = false;
                }
            }
            if clean {
                return Some(());
            }
            // A remainder survived: move the smallest one into the pivot position.
            let mut best = t + 1;
            for c in t + 1..active {
                let x = &self.a[t][c];
                if !x.e_is_zero() && (self.a[t][best].e_is_zero() || x.abs_lt(&self.a[t][best])) {
                    best = c;
                }
            }
            self.swap_cols(t, best);
        }
    }
}

/// `ker(outgoing) / im(incoming)` for a complex `C'' -> C -> C'` of free
/// modules over Z (`modulus == 0`) or Z/m (`modulus == m`).
///
/// Over Z/m the kernel is the lattice `{x : outgoing * x = 0 mod m}`; its basis
/// comes from the column transform of the Smith form of `outgoing`.
pub fn subquotient(outgoing: &IntMatrix, incoming: &IntMatrix, modulus: u64) -> AbelianInvariants {
    let n = outgoing.cols();
    assert_eq!(incoming.rows(), n, "complex dimensions do not match");
    if modulus == 0 {
        let rank_out = smith_form(outgoing, false).rank();
        let inc = smith_form(incoming, false);
        return AbelianInvariants::from_diagonal(n - rank_out - inc.rank(), inc.diagonal.iter().cloned());
    }
    let m = modulus;
    if m == 1 {
        return AbelianInvariants::trivial();
    }
    let to_rows = |a: &IntMatrix| -> Vec<Vec<u64>> {
        (0..a.rows()).map(|r| a.row(r).iter().map(|&x| x.rem_euclid(m as i64) as u64).collect()).collect()
    };
    let snf = smith_mod(to_rows(outgoing), n, m, true);
    let q_inv = snf.q_inv.expect("tracked");
    let gcd_m = |d: u64| d.gcd(&m);
    // Kernel generators are Q (c_j e_j) with c_j = m / gcd(d_j, m); the kernel
    // is the sum of Z/(m / c_j).
    let scale: Vec<u64> = (0..n).map(|j| snf.diagonal.get(j).map_or(1, |&d| m / gcd_m(d))).collect();
    let inc = to_rows(incoming);
    let k = incoming.cols();
    let mut relations = vec![vec![0u64; k + n]; n];
    for (j, rel_row) in relations.iter_mut().enumerate() {
        let qrow = &q_inv[j];
        for col in 0..k {
            let mut acc: u128 = 0;
            for (i, &qi) in qrow.iter().enumerate() {
                let b = inc[i][col];
                if b != 0 && qi != 0 {
                    acc = (acc + qi as u128 * b as u128) % m as u128;
                }
            }
            let acc = acc as u64;
            debug_assert_eq!(acc % scale[j], 0, "image must lie in the kernel");
            rel_row[col] = acc / scale[j];
        }
        rel_row[k + j] = (m / scale[j]) % m;
    }
    let rel = smith_mod(relations, k + n, m, false);
    let zero_rows = n - rel.diagonal.len();
    let factors = rel
        .diagonal
        .iter()
        .map(|&d| BigInt::from(gcd_m(d)))
        .chain(core::iter::repeat_n(BigInt::from(m), zero_rows));
    AbelianInvariants::from_diagonal(0, factors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn inv(free: usize, torsion: &[u64]) -> AbelianInvariants {
        AbelianInvariants::new(free, torsion.iter().map(|&t| BigInt::from(t)).collect())
    }

    #[test]
    fn cokernel_of_small_matrices() {
        let m = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        // Classic example: invariant factors 2, 6, 12.
        assert_eq!(smith_form(&m, false).cokernel(), inv(0, &[2, 6, 12]));
        let m = IntMatrix::from_rows(&[vec![0, 0], vec![0, 0]]);
        assert_eq!(smith_form(&m, false).cokernel(), inv(2, &[]));
        let m = IntMatrix::from_rows(&[vec![2], vec![3]]);
        assert_eq!(smith_form(&m, false).cokernel(), inv(1, &[]));
        let m = IntMatrix::from_rows(&[vec![4, 6]]);
        assert_eq!(smith_form(&m, false).cokernel(), inv(0, &[2]));
    }

    #[test]
    fn tracked_transform_is_inverse_pair() {
        let m = IntMatrix::from_rows(&[vec![3, 5, 7, 0], vec![1, -2, 4, 9], vec![6, 10, 14, 0]]);
        let snf = smith_form(&m, true);
        let t = snf.transform.unwrap();
        let n = 4;
        for i in 0..n {
            for j in 0..n {
                let s: BigInt = (0..n).map(|k| &t.q[i][k] * &t.q_inv[k][j]).sum();
                assert_eq!(s, if i == j { BigInt::one() } else { BigInt::zero() });
            }
        }
        // A * Q has zero columns beyond the rank.
        for j in snf.diagonal.len()..n {
            for r in 0..m.rows() {
                let s: BigInt = (0..n).map(|k| &t.q[k][j] * m.get(r, k)).sum();
                assert!(s.is_zero());
            }
        }
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let big = i64::MAX / 3;
        let m = IntMatrix::from_rows(&[vec![big, big - 1, 7], vec![big - 5, big, 3], vec![5, 11, big]]);
        let a = smith_form(&m, false);
        assert_eq!(a.rank(), 3);
    }

    #[test]
    fn subquotient_mod_m() {
        // Z/8 --(x4)--> Z/8 --(x4)--> Z/8: kernel 2Z/8, image 4Z/8.
        let four = IntMatrix::from_rows(&[vec![4]]);
        assert_eq!(subquotient(&four, &four, 8), inv(0, &[2]));
        let two = IntMatrix::from_rows(&[vec![2]]);
        assert_eq!(subquotient(&two, &two, 4), inv(0, &[]));
        // 0 -> Z/6 -> 0.
        let z = IntMatrix::zeros(0, 1);
        let zi = IntMatrix::zeros(1, 0);
        assert_eq!(subquotient(&z, &zi, 6), inv(0, &[6]));
        // Over Z: Z --(x2)--> Z --(0)--> Z.
        assert_eq!(subquotient(&IntMatrix::from_rows(&[vec![0]]), &two, 0), inv(0, &[2]));
    }

    /// Elements of `ker A / im B` killed by `d`, counted by enumeration.
    fn killed_by(a: &[Vec<i64>], b: &[Vec<i64>], n: usize, m: i64, d: i64) -> usize {
        let vectors: Vec<Vec<i64>> = (0..m.pow(n as u32))
            .map(|mut x| (0..n).map(|_| { let c = x % m; x /= m; c }).collect())
            .collect();
        let apply = |rows: &[Vec<i64>], v: &[i64]| -> Vec<i64> {
            rows.iter().map(|r| r.iter().zip(v).map(|(x, y)| x * y).sum::<i64>().rem_euclid(m)).collect()
        };
        let k = b.first().map_or(0, |r| r.len());
        let image: alloc::collections::BTreeSet<Vec<i64>> = (0..m.pow(k as u32))
            .map(|mut x| {
                let c: Vec<i64> = (0..k).map(|_| { let t = x % m; x /= m; t }).collect();
                apply(b, &c)
            })
            .collect();
        let kernel: Vec<&Vec<i64>> = vectors.iter().filter(|v| apply(a, v).iter().all(|&x| x == 0)).collect();
        let hits = kernel.iter().filter(|v| image.contains(&v.iter().map(|x| (d * x).rem_euclid(m)).collect::<Vec<_>>())).count();
        hits / image.len()
    }

    #[test]
    fn subquotient_mod_m_matches_enumeration() {
        let mut state = 0x9e37_79b9_7f4a_7c15u64;
        let mut next = |bound: u64| {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state % bound
        };
        for _ in 0..200 {
            let m = 2 + next(11) as i64;
            let n = 1 + next(3) as usize;
            let k = next(3) as usize;
            let b: Vec<Vec<i64>> = (0..n).map(|_| (0..k).map(|_| next(m as u64) as i64).collect()).collect();
            // Rows of A: random vectors annihilating the image of B.
            let apply_b = |r: &[i64]| (0..k).all(|c| (0..n).map(|i| r[i] * b[i][c]).sum::<i64>().rem_euclid(m) == 0);
            let mut a: Vec<Vec<i64>> = Vec::new();
            for _ in 0..8 {
                let r: Vec<i64> = (0..n).map(|_| next(m as u64) as i64).collect();
                if apply_b(&r) && a.len() < 3 {
                    a.push(r);
                }
            }
            let am = if a.is_empty() { IntMatrix::zeros(0, n) } else { IntMatrix::from_rows(&a) };
            let bm = if k == 0 { IntMatrix::zeros(n, 0) } else { IntMatrix::from_rows(&b) };
            let got = subquotient(&am, &bm, m as u64);
            for d in 1..=m {
                let predicted: usize = got
                    .torsion
                    .iter()
                    .map(|t| num_integer::gcd(BigInt::from(d), t.clone()))
                    .map(|g| usize::try_from(g).unwrap())
                    .product();
                assert_eq!(predicted, killed_by(&a, &b, n, m, d), "m={m} a={a:?} b={b:?} d={d}");
            }
        }
    }
}
