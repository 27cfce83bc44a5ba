//! Diagonalization over Z/m by 2x2 unimodular steps built from extended gcds.
//! Entries stay reduced in `[0, m)`, so nothing grows.

use alloc::vec;
use alloc::vec::Vec;

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

/// `(g, s, t)` with `g = gcd(a, b) = s a + t b`, for `a, b >= 0` not both zero.
fn xgcd(a: u64, b: u64) -> (u64, i128, i128) {
    let (mut r0, mut r1) = (a as i128, b as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (r0 as u64, s0, t0)
}

fn to_mod(x: i128, m: u64) -> u64 {
    x.rem_euclid(m as i128) as u64
}

/// The 2x2 matrix `[[s, t], [-b/g, a/g]]` of determinant one, reduced mod m;
/// it sends `(a, b)` to `(g, 0)`. When `a` divides `b` the first row is left
/// alone, which keeps the diagonalization from cycling.
fn eliminator(a: u64, b: u64, m: u64) -> [u64; 4] {
    if a != 0 && b.is_multiple_of(a) {
        return [1 % m, 0, to_mod(-((b / a) as i128), m), 1 % m];
    }
    let (g, s, t) = xgcd(a, b);
    [to_mod(s, m), to_mod(t, m), to_mod(-((b / g) as i128), m), (a / g) % m]
}

/// `(x, y) <- (c0 x + c1 y, c2 x + c3 y)` on two slices.
fn combine(x: &mut [u64], y: &mut [u64], c: [u64; 4], m: u64) {
    for (xi, yi) in x.iter_mut().zip(y.iter_mut()) {
        if *xi == 0 && *yi == 0 {
            continue;
        }
        let nx = (mulmod(c[0], *xi, m) + mulmod(c[1], *yi, m)) % m;
        let ny = (mulmod(c[2], *xi, m) + mulmod(c[3], *yi, m)) % m;
        *xi = nx;
        *yi = ny;
    }
}

fn pair<T>(v: &mut [T], i: usize, j: usize) -> (&mut T, &mut T) {
    assert!(i < j);
    let (lo, hi) = v.split_at_mut(j);
    (&mut lo[i], &mut hi[0])
}

/// Row echelon form over Z/m; returns the nonzero rows.
fn echelon(mut a: Vec<Vec<u64>>, cols: usize, m: u64) -> Vec<Vec<u64>> {
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..a.len() {
            if a[i][c] == 0 {
                continue;
            }
            let e = eliminator(a[r][c], a[i][c], m);
            let (x, y) = pair(&mut a, r, i);
            combine(&mut x[c..], &mut y[c..], e, m);
        }
        r += 1;
    }
    a.truncate(r);
    a.retain(|row| row.iter().any(|&x| x != 0));
    a
}

pub(crate) struct ModSmith {
    /// Pivot values, nonzero mod m, in pivot order.
    pub diagonal: Vec<u64>,
    /// `Q^{-1}` with `P A Q` diagonal, when requested.
    pub q_inv: Option<Vec<Vec<u64>>>,
}

/// Diagonalizes `a` (entries already reduced mod m, `m >= 2`).
pub(crate) fn smith_mod(a: Vec<Vec<u64>>, cols: usize, m: u64, track: bool) -> ModSmith {
    let mut a = echelon(a, cols, m);
    let rows = a.len();
    let mut q_inv: Option<Vec<Vec<u64>>> = track.then(|| {
        (0..cols)
            .map(|i| {
                let mut row = vec![0; cols];
                row[i] = 1 % m;
                row
            })
            .collect()
    });
    let mut diagonal = Vec::new();
    for t in 0..rows.min(cols) {
        // Pivot: the nonzero entry with the smallest gcd with m.
        let mut best: Option<(u64, usize, usize)> = None;
        'scan: for (i, row) in a.iter().enumerate().skip(t) {
            for (j, &x) in row.iter().enumerate().skip(t) {
                if x != 0 {
                    let g = xgcd(x, m).0;
                    if best.is_none_or(|(bg, _, _)| g < bg) {
                        best = Some((g, i, j));
                        if g == 1 {
                            break 'scan;
                        }
                    }
                }
            }
        }
        let Some((_, pi, pj)) = best else {
            break;
        };
        a.swap(t, pi);
        if pj != t {
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            if let Some(q) = q_inv.as_mut() {
                q.swap(t, pj);
            }
        }
        loop {
            for i in t + 1..rows {
                if a[i][t] != 0 {
                    let e = eliminator(a[t][t], a[i][t], m);
                    let (x, y) = pair(&mut a, t, i);
                    combine(&mut x[t..], &mut y[t..], e, m);
                }
            }
            for j in t + 1..cols {
                if a[t][j] == 0 {
                    continue;
                }
                let (g, s, u) = match a[t][j] % a[t][t] {
                    0 => (a[t][t], 1, 0),
                    _ => xgcd(a[t][t], a[t][j]),
                };
                let (p, b) = (a[t][t] / g, a[t][j] / g);
                // Columns: (col_t, col_j) <- (s col_t + u col_j, -b col_t + p col_j).
                let (s, u) = (to_mod(s, m), to_mod(u, m));
                let nb = to_mod(-(b as i128), m);
                for row in a.iter_mut() {
                    let (x, y) = (row[t], row[j]);
                    if x == 0 && y == 0 {
                        continue;
                    }
                    row[t] = (mulmod(s, x, m) + mulmod(u, y, m)) % m;
                    row[j] = (mulmod(nb, x, m) + mulmod(p % m, y, m)) % m;
                }
                // Q^{-1} <- T^{-1} Q^{-1}, T^{-1} = [[p, b], [-u, s]] on rows (t, j).
                if let Some(q) = q_inv.as_mut() {
                    let (x, y) = pair(q, t, j);
                    combine(x, y, [p % m, b % m, to_mod(-(u as i128), m), s], m);
                }
            }
            if (t + 1..rows).all(|i| a[i][t] == 0) {
                break;
            }
        }
        diagonal.push(a[t][t]);
    }
    ModSmith { diagonal, q_inv }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matmul(a: &[Vec<u64>], b: &[Vec<u64>], m: u64) -> Vec<Vec<u64>> {
        let k = b.len();
        a.iter()
            .map(|row| (0..b[0].len()).map(|j| (0..k).fold(0, |acc, l| (acc + mulmod(row[l], b[l][j], m)) % m)).collect())
            .collect()
    }

    #[test]
    fn eliminator_is_unimodular() {
        for m in [4u64, 6, 12] {
            for a in 0..m {
                for b in 0..m {
                    if a == 0 && b == 0 {
                        continue;
                    }
                    let [c0, c1, c2, c3] = eliminator(a, b, m);
                    assert_eq!((mulmod(c0, a, m) + mulmod(c1, b, m)) % m, xgcd(a, b).0 % m);
                    assert_eq!((mulmod(c2, a, m) + mulmod(c3, b, m)) % m, 0);
                    let det = (mulmod(c0, c3, m) + m - mulmod(c1, c2, m)) % m;
                    assert_eq!(det, 1 % m);
                }
            }
        }
    }

    #[test]
    fn kernel_basis_from_q_inverse() {
        // Over Z/6: x + 2y + 3z = 0 and 4y = 0.
        let m = 6;
        let a = vec![vec![1, 2, 3], vec![0, 4, 0]];
        let s = smith_mod(a.clone(), 3, m, true);
        let q_inv = s.q_inv.unwrap();
        // Brute-force kernel size.
        let mut count = 0;
        for x in 0..m {
            for y in 0..m {
                for z in 0..m {
                    let v = vec![vec![x], vec![y], vec![z]];
                    if matmul(&a, &v, m).iter().all(|r| r[0] == 0) {
                        count += 1;
                        // Q^{-1} x has d_j * y_j = 0 in the pivot coordinates.
                        let w = matmul(&q_inv, &v, m);
                        for (j, d) in s.diagonal.iter().enumerate() {
                            assert_eq!(mulmod(*d, w[j][0], m), 0);
                        }
                    }
                }
            }
        }
        let predicted: u64 = s.diagonal.iter().map(|&d| xgcd(d, m).0).product::<u64>() * m.pow(3 - s.diagonal.len() as u32);
        assert_eq!(count, predicted);
    }
}
