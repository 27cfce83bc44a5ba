use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::group::FiniteGroup;
use super::module::GModule;
use crate::linalg::{subquotient, AbelianInvariants, IntMatrix};
use crate::{Error, Result};

/// Default cap on the number of rows of a boundary matrix.
pub const DEFAULT_DIMENSION_CAP: usize = 2_000_000;
/// Highest degree computed through the standard complex.
pub const MAX_DEGREE: usize = 3;

/// An inhomogeneous cochain: values on `i`-tuples, tuples ordered lexicographically
/// with the first entry most significant, each value a vector of length `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain {
    pub degree: usize,
    pub rank: usize,
    pub values: Vec<i64>,
}

impl Cochain {
    pub fn zero(group: &FiniteGroup, module: &GModule, degree: usize) -> Self {
        let len = group.order().pow(degree as u32) * module.rank();
        Cochain { degree, rank: module.rank(), values: vec![0; len] }
    }

    /// Value at the tuple with flat index `t`.
    pub fn at(&self, t: usize) -> &[i64] {
        &self.values[t * self.rank..(t + 1) * self.rank]
    }

    /// `dφ`, evaluated directly from the coboundary formula.
    pub fn coboundary(&self, group: &FiniteGroup, module: &GModule) -> Cochain {
        let n = group.order();
        let i = self.degree;
        let r = self.rank;
        let m = module.modulus();
        let tuples = n.pow(i as u32 + 1);
        let mut values = vec![0i64; tuples * r];
        let mut digits = vec![0usize; i + 1];
        for t in 0..tuples {
            decode(t, n, &mut digits);
            let out = &mut values[t * r..(t + 1) * r];
            let rho = module.action(digits[0]);
            let tail = self.at(encode(&digits[1..], n));
            for (a, o) in out.iter_mut().enumerate() {
                *o += (0..r).map(|b| rho.get(a, b) * tail[b]).sum::<i64>();
            }
            for j in 1..=i {
                let merged = merge(&digits, j, group);
                let sign = if j % 2 == 0 { 1 } else { -1 };
                for (o, v) in out.iter_mut().zip(self.at(encode(&merged, n))) {
                    *o += sign * v;
                }
            }
            let sign = if (i + 1).is_multiple_of(2) { 1 } else { -1 };
            for (o, v) in out.iter_mut().zip(self.at(encode(&digits[..i], n))) {
                *o += sign * v;
            }
            if m > 0 {
                for o in out.iter_mut() {
                    *o = o.rem_euclid(m as i64);
                }
            }
        }
        Cochain { degree: i + 1, rank: r, values }
    }
}

fn decode(mut t: usize, n: usize, digits: &mut [usize]) {
    for d in digits.iter_mut().rev() {
        *d = t % n;
        t /= n;
    }
}

fn encode(digits: &[usize], n: usize) -> usize {
    digits.iter().fold(0, |acc, &d| acc * n + d)
}

/// Tuple with entries `j` and `j+1` (1-based) replaced by their product.
fn merge(digits: &[usize], j: usize, group: &FiniteGroup) -> Vec<usize> {
    let mut out = Vec::with_capacity(digits.len() - 1);
    out.extend_from_slice(&digits[..j - 1]);
    out.push(group.mul(digits[j - 1], digits[j]));
    out.extend_from_slice(&digits[j + 1..]);
    out
}

fn rows_for(group: &FiniteGroup, module: &GModule, degree: usize) -> Option<usize> {
    group.order().checked_pow(degree as u32 + 1)?.checked_mul(module.rank())
}

/// Matrix of `d: C^i -> C^{i+1}` in the tuple basis.
pub fn boundary_matrix(group: &FiniteGroup, module: &GModule, degree: usize) -> Result<IntMatrix> {
    boundary_matrix_with_cap(group, module, degree, DEFAULT_DIMENSION_CAP)
}

pub fn boundary_matrix_with_cap(
    group: &FiniteGroup,
    module: &GModule,
    degree: usize,
    cap: usize,
) -> Result<IntMatrix> {
    let rows = rows_for(group, module, degree).unwrap_or(usize::MAX);
    if rows > cap {
        return Err(Error::DimensionOverflow { rows, cap });
    }
    let n = group.order();
    let r = module.rank();
    let i = degree;
    let cols = n.pow(i as u32) * r;
    let mut d = IntMatrix::zeros(rows, cols);
    let mut digits = vec![0usize; i + 1];
    for t in 0..n.pow(i as u32 + 1) {
        decode(t, n, &mut digits);
        let rho = module.action(digits[0]);
        let tail = encode(&digits[1..], n);
        for a in 0..r {
            for b in 0..r {
                d.add_to(t * r + a, tail * r + b, rho.get(a, b));
            }
        }
        for j in 1..=i {
            let merged = encode(&merge(&digits, j, group), n);
            let sign = if j % 2 == 0 { 1 } else { -1 };
            for a in 0..r {
                d.add_to(t * r + a, merged * r + a, sign);
            }
        }
        let head = encode(&digits[..i], n);
        let sign = if (i + 1).is_multiple_of(2) { 1 } else { -1 };
        for a in 0..r {
            d.add_to(t * r + a, head * r + a, sign);
        }
    }
    Ok(if module.modulus() > 0 { d.reduced(module.modulus()) } else { d })
}

/// `H^i(G, M)` as `ker d_i / im d_{i-1}` of the standard complex.
pub fn cohomology(group: &FiniteGroup, module: &GModule, degree: usize) -> Result<AbelianInvariants> {
    cohomology_with_cap(group, module, degree, DEFAULT_DIMENSION_CAP)
}

pub fn cohomology_with_cap(
    group: &FiniteGroup,
    module: &GModule,
    degree: usize,
    cap: usize,
) -> Result<AbelianInvariants> {
    if degree > MAX_DEGREE {
        return Err(Error::InvalidArgument(format!("degree {degree} exceeds the supported maximum {MAX_DEGREE}")));
    }
    let outgoing = boundary_matrix_with_cap(group, module, degree, cap)?;
    let incoming = if degree == 0 {
        IntMatrix::zeros(module.rank(), 0)
    } else {
        boundary_matrix_with_cap(group, module, degree - 1, cap)?
    };
    Ok(subquotient(&outgoing, &incoming, module.modulus()))
}

/// Cohomology of `Z/n` acting through `s`, from the periodic resolution.
pub fn cyclic_cohomology(n: usize, s: &IntMatrix, modulus: u64, degree: usize) -> Result<AbelianInvariants> {
    let r = s.rows();
    if s.cols() != r || n == 0 {
        return Err(Error::InvalidArgument("need a square action matrix and n >= 1".into()));
    }
    let s = if modulus > 0 { s.reduced(modulus) } else { s.clone() };
    let id = IntMatrix::identity(r);
    let mut power = id.clone();
    let mut norm = IntMatrix::zeros(r, r);
    for _ in 0..n {
        for a in 0..r {
            for b in 0..r {
                norm.add_to(a, b, power.get(a, b));
            }
        }
        power = power.mul(&s, modulus);
    }
    let id_red = if modulus > 0 { id.reduced(modulus) } else { id.clone() };
    if power != id_red {
        return Err(Error::NotAnAction);
    }
    let mut s_minus_1 = s.clone();
    for a in 0..r {
        s_minus_1.add_to(a, a, -1);
    }
    if modulus > 0 {
        norm = norm.reduced(modulus);
        s_minus_1 = s_minus_1.reduced(modulus);
    }
    Ok(match degree {
        0 => subquotient(&s_minus_1, &IntMatrix::zeros(r, 0), modulus),
        d if d % 2 == 1 => subquotient(&norm, &s_minus_1, modulus),
        _ => subquotient(&s_minus_1, &norm, modulus),
    })
}

#[cfg(test)]
mod tests {
    use super::super::group::corpus::*;
    use super::*;
    use num_bigint::BigInt;

    fn inv(free: usize, t: &[u64]) -> AbelianInvariants {
        AbelianInvariants::new(free, t.iter().map(|&x| BigInt::from(x)).collect())
    }

    fn sign_module(g: &FiniteGroup) -> GModule {
        GModule::from_generators(g, 1, 0, &[(1, IntMatrix::from_rows(&[vec![-1]]))]).unwrap()
    }

    #[test]
    fn boundary_examples() {
        let z2 = cyclic(2);
        let d = boundary_matrix(&z2, &GModule::trivial(&z2, 1, 0), 0).unwrap();
        assert_eq!(d.to_rows(), vec![vec![0], vec![0]]);
        let d = boundary_matrix(&z2, &sign_module(&z2), 0).unwrap();
        assert_eq!(d.to_rows(), vec![vec![0], vec![-2]]);
    }

    #[test]
    fn d_squared_vanishes() {
        for (_, g) in standard().into_iter().filter(|(_, g)| g.order() <= 8) {
            let m = GModule::regular(&g);
            for i in 0..2 {
                let d0 = boundary_matrix(&g, &m, i).unwrap();
                let d1 = boundary_matrix(&g, &m, i + 1).unwrap();
                assert!(d1.mul(&d0, 0).is_zero());
            }
        }
    }

    #[test]
    fn matrix_agrees_with_direct_coboundary() {
        let g = symmetric3();
        let m = GModule::permutation_module(&g, &g.closure(&[1]).into_iter().collect::<Vec<_>>()).unwrap();
        let mut phi = Cochain::zero(&g, &m, 1);
        for (k, v) in phi.values.iter_mut().enumerate() {
            *v = (k as i64 * 7 + 3) % 11 - 5;
        }
        let direct = phi.coboundary(&g, &m);
        let d = boundary_matrix(&g, &m, 1).unwrap();
        let col = IntMatrix::from_rows(&phi.values.iter().map(|&v| vec![v]).collect::<Vec<_>>());
        let via = d.mul(&col, 0);
        assert_eq!(via.to_rows().concat(), direct.values);
    }

    #[test]
    fn known_groups() {
        let z3 = cyclic(3);
        assert_eq!(cohomology(&z3, &GModule::trivial(&z3, 1, 3), 2).unwrap(), inv(0, &[3]));
        let z2 = cyclic(2);
        assert_eq!(cohomology(&z2, &GModule::regular(&z2), 1).unwrap(), inv(0, &[]));
        let s3 = symmetric3();
        assert_eq!(cohomology(&s3, &GModule::trivial(&s3, 1, 0), 2).unwrap(), inv(0, &[2]));
        assert_eq!(cohomology(&s3, &GModule::trivial(&s3, 1, 0), 0).unwrap(), inv(1, &[]));
        assert_eq!(cohomology(&z2, &sign_module(&z2), 1).unwrap(), inv(0, &[2]));
    }

    #[test]
    fn cyclic_formulae() {
        let one = IntMatrix::identity(1);
        for n in 1..=8 {
            let expect = if n == 1 { inv(0, &[]) } else { inv(0, &[n as u64]) };
            assert_eq!(cyclic_cohomology(n, &one, 0, 2).unwrap(), expect);
            assert_eq!(cyclic_cohomology(n, &one, 0, 1).unwrap(), inv(0, &[]));
        }
        let neg = IntMatrix::from_rows(&[vec![-1]]);
        assert_eq!(cyclic_cohomology(2, &neg, 0, 1).unwrap(), inv(0, &[2]));
        assert_eq!(cyclic_cohomology(3, &neg, 0, 1), Err(Error::NotAnAction));
    }

    #[test]
    fn overflow_is_reported() {
        let g = alternating4();
        let m = GModule::trivial(&g, 1, 0);
        assert!(matches!(boundary_matrix_with_cap(&g, &m, 2, 1000), Err(Error::DimensionOverflow { rows: 1728, cap: 1000 })));
    }
}
