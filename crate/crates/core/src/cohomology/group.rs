use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::linalg::{smith_form, AbelianInvariants, IntMatrix};
use crate::{Error, Result};

/// Largest group accepted from permutation generators.
pub const PERMUTATION_ORDER_CAP: usize = 10_000;

/// A finite group given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    identity: usize,
    inverses: Vec<usize>,
    generators: Vec<usize>,
}

impl FiniteGroup {
    /// Validates a Cayley table: closure, two-sided identity, inverses and associativity.
    pub fn from_table(table: Vec<Vec<usize>>, identity: usize) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        if identity >= n {
            return Err(Error::InvalidGroup(format!("identity {identity} out of range")));
        }
        let mut flat = Vec::with_capacity(n * n);
        for (g, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!("row {g} has length {}", row.len())));
            }
            for &x in row {
                if x >= n {
                    return Err(Error::InvalidGroup(format!("entry {x} out of range")));
                }
                flat.push(x as u32);
            }
        }
        let mul = |g: usize, h: usize| flat[g * n + h] as usize;
        for g in 0..n {
            if mul(identity, g) != g || mul(g, identity) != g {
                return Err(Error::InvalidGroup(format!("{identity} is not a two-sided identity")));
            }
        }
        let mut inverses = vec![usize::MAX; n];
        for g in 0..n {
            let inv = (0..n).find(|&h| mul(g, h) == identity && mul(h, g) == identity);
            inverses[g] = inv.ok_or_else(|| Error::InvalidGroup(format!("element {g} has no inverse")))?;
        }
        let mut group = FiniteGroup { order: n, table: flat, identity, inverses, generators: Vec::new() };
        group.generators = group.greedy_generators();
        group.check_associative()?;
        Ok(group)
    }

    /// Closes a set of permutations of `{0..d-1}` under composition.
    /// The product `g h` is the composite "apply `h`, then `g`".
    pub fn from_permutations(gens: &[Vec<usize>]) -> Result<Self> {
        let degree = gens.first().map_or(0, Vec::len);
        for g in gens {
            if g.len() != degree {
                return Err(Error::InvalidGroup("generators act on sets of different sizes".into()));
            }
            let mut seen = vec![false; degree];
            for &x in g {
                if x >= degree || core::mem::replace(&mut seen[x], true) {
                    return Err(Error::InvalidGroup(format!("{g:?} is not a permutation")));
                }
            }
        }
        let compose = |g: &[usize], h: &[usize]| -> Vec<usize> { h.iter().map(|&x| g[x]).collect() };
        let id: Vec<usize> = (0..degree).collect();
        let mut elements = vec![id.clone()];
        let mut index: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        index.insert(id, 0);
        // right[x][k] = elements[x] * gens[k]
        let mut right: Vec<Vec<usize>> = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            let mut row = Vec::with_capacity(gens.len());
            for g in gens {
                let y = compose(&elements[x], g);
                let idx = match index.get(&y) {
                    Some(&i) => i,
                    None => {
                        if elements.len() >= PERMUTATION_ORDER_CAP {
                            return Err(Error::InvalidGroup(format!(
                                "generated group exceeds order cap {PERMUTATION_ORDER_CAP}"
                            )));
                        }
                        let i = elements.len();
                        index.insert(y.clone(), i);
                        elements.push(y);
                        queue.push_back(i);
                        i
                    }
                };
                row.push(idx);
            }
            right.push(row);
        }
        let n = elements.len();
        // Every element as a word: BFS parent and last generator.
        let mut word: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut order = vec![0usize];
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut q = VecDeque::from([0usize]);
        while let Some(x) = q.pop_front() {
            for (k, &y) in right[x].iter().enumerate() {
                if !seen[y] {
                    seen[y] = true;
                    word[y] = Some((x, k));
                    order.push(y);
                    q.push_back(y);
                }
            }
        }
        let mut table = vec![0u32; n * n];
        for g in 0..n {
            table[g * n] = g as u32;
            for &h in &order[1..] {
                let (parent, k) = word[h].expect("reached by BFS");
                let gp = table[g * n + parent] as usize;
                table[g * n + h] = right[gp][k] as u32;
            }
        }
        let mut inverses = vec![0; n];
        for g in 0..n {
            inverses[g] = (0..n).find(|&h| table[g * n + h] == 0).expect("finite group");
        }
        let generators: Vec<usize> = gens.iter().map(|g| index[g]).collect();
        Ok(FiniteGroup { order: n, table, identity: 0, inverses, generators })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g * self.order + h] as usize
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.inverses[g]
    }

    /// A generating set; for permutation input these are the given generators, in order.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.order).map(|g| (0..self.order).map(|h| self.mul(g, h)).collect()).collect()
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|g| self.generators.iter().all(|&s| self.mul(g, s) == self.mul(s, g)))
    }

    /// Associativity checked against a generating set: `(xy)s = x(ys)` for all `x, y` and
    /// generators `s` forces it for every third argument by induction on word length.
    fn check_associative(&self) -> Result<()> {
        for x in 0..self.order {
            for y in 0..self.order {
                let xy = self.mul(x, y);
                for &s in &self.generators {
                    if self.mul(xy, s) != self.mul(x, self.mul(y, s)) {
                        return Err(Error::InvalidGroup(format!("not associative at ({x}, {y}, {s})")));
                    }
                }
            }
        }
        Ok(())
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = self.closure(&[]);
        for g in 0..self.order {
            if !span.contains(&g) {
                gens.push(g);
                span = self.closure(&gens);
            }
        }
        gens
    }

    /// Subgroup generated by `elems`.
    pub fn closure(&self, elems: &[usize]) -> BTreeSet<usize> {
        let mut set = BTreeSet::from([self.identity]);
        let mut frontier = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &s in elems {
                let y = self.mul(x, s);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        set
    }

    pub fn is_subgroup(&self, elems: &[usize]) -> bool {
        let set: BTreeSet<usize> = elems.iter().copied().collect();
        !set.is_empty()
            && set.iter().all(|&g| g < self.order)
            && set.contains(&self.identity)
            && set.iter().all(|&g| set.contains(&self.inverses[g]) && set.iter().all(|&h| set.contains(&self.mul(g, h))))
    }

    /// All subgroups, as sorted element lists, found by joining cyclic subgroups until nothing new appears.
    pub fn subgroups(&self) -> Vec<Vec<usize>> {
        let cyclic: BTreeSet<Vec<usize>> =
            (0..self.order).map(|g| self.closure(&[g]).into_iter().collect()).collect();
        let mut all: BTreeSet<Vec<usize>> = cyclic.clone();
        let mut frontier: Vec<Vec<usize>> = all.iter().cloned().collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for h in &frontier {
                for c in &cyclic {
                    let mut gens = h.clone();
                    gens.extend_from_slice(c);
                    let joined: Vec<usize> = self.closure(&gens).into_iter().collect();
                    if all.insert(joined.clone()) {
                        next.push(joined);
                    }
                }
            }
            frontier = next;
        }
        let mut out: Vec<Vec<usize>> = all.into_iter().collect();
        out.sort_by_key(|h| (h.len(), h.clone()));
        out
    }

    /// `G / [G, G]` from the relations `x_g + x_s = x_{gs}` over `g` in `G`, `s` a generator,
    /// together with `x_e = 0`.
    pub fn abelianization(&self) -> AbelianInvariants {
        let n = self.order;
        let k = self.generators.len();
        let mut rel = IntMatrix::zeros(n, n * k + 1);
        rel.set(self.identity, n * k, 1);
        for g in 0..n {
            for (j, &s) in self.generators.iter().enumerate() {
                let col = g * k + j;
                rel.add_to(g, col, 1);
                rel.add_to(s, col, 1);
                rel.add_to(self.mul(g, s), col, -1);
            }
        }
        let inv = smith_form(&rel, false).cokernel();
        debug_assert_eq!(inv.free_rank, 0);
        inv
    }

    pub fn order_big(&self) -> BigInt {
        BigInt::from(self.order)
    }
}

/// Small groups used throughout the test corpus.
pub mod corpus {
    use super::*;

    pub fn cyclic(n: usize) -> FiniteGroup {
        assert!(n >= 1);
        let table = (0..n).map(|g| (0..n).map(|h| (g + h) % n).collect()).collect();
        FiniteGroup::from_table(table, 0).expect("cyclic group")
    }

    /// `Z/a x Z/b`, element `(x, y)` stored at `x * b + y`.
    pub fn product_of_cyclic(a: usize, b: usize) -> FiniteGroup {
        let n = a * b;
        let table = (0..n)
            .map(|g| (0..n).map(|h| ((g / b + h / b) % a) * b + (g % b + h % b) % b).collect())
            .collect();
        FiniteGroup::from_table(table, 0).expect("product group")
    }

    pub fn klein_four() -> FiniteGroup {
        product_of_cyclic(2, 2)
    }

    pub fn symmetric3() -> FiniteGroup {
        FiniteGroup::from_permutations(&[vec![1, 0, 2], vec![1, 2, 0]]).expect("S3")
    }

    /// Symmetries of a square, acting on its vertices.
    pub fn dihedral4() -> FiniteGroup {
        FiniteGroup::from_permutations(&[vec![1, 2, 3, 0], vec![0, 3, 2, 1]]).expect("D4")
    }

    pub fn alternating4() -> FiniteGroup {
        FiniteGroup::from_permutations(&[vec![1, 2, 0, 3], vec![1, 0, 3, 2]]).expect("A4")
    }

    /// Quaternion units `±1, ±i, ±j, ±k`, element `2 * u + s` for unit `u` in `1, i, j, k` and sign bit `s`.
    pub fn quaternion8() -> FiniteGroup {
        // Products of basis units: (sign, unit).
        const UNIT: [[(u8, usize); 4]; 4] = [
            [(0, 0), (0, 1), (0, 2), (0, 3)],
            [(0, 1), (1, 0), (0, 3), (1, 2)],
            [(0, 2), (1, 3), (1, 0), (0, 1)],
            [(0, 3), (0, 2), (1, 1), (1, 0)],
        ];
        let table = (0..8)
            .map(|g| {
                (0..8)
                    .map(|h| {
                        let (s, u) = UNIT[g / 2][h / 2];
                        2 * u + ((s as usize + g % 2 + h % 2) % 2)
                    })
                    .collect()
            })
            .collect();
        FiniteGroup::from_table(table, 0).expect("Q8")
    }

    /// The named corpus of groups of order at most 12.
    pub fn standard() -> Vec<(&'static str, FiniteGroup)> {
        let mut out: Vec<(&'static str, FiniteGroup)> = Vec::new();
        const CYCLIC: [&str; 8] = ["Z/1", "Z/2", "Z/3", "Z/4", "Z/5", "Z/6", "Z/7", "Z/8"];
        for (n, name) in CYCLIC.iter().enumerate() {
            out.push((name, cyclic(n + 1)));
        }
        out.push(("Z/2xZ/2", klein_four()));
        out.push(("S3", symmetric3()));
        out.push(("D4", dihedral4()));
        out.push(("Q8", quaternion8()));
        out.push(("Z/2xZ/4", product_of_cyclic(2, 4)));
        out.push(("A4", alternating4()));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::corpus::*;
    use super::*;

    fn inv(t: &[u64]) -> AbelianInvariants {
        AbelianInvariants::new(0, t.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn corpus_orders_and_shapes() {
        assert_eq!(symmetric3().order(), 6);
        assert_eq!(dihedral4().order(), 8);
        assert_eq!(alternating4().order(), 12);
        assert_eq!(quaternion8().order(), 8);
        let q = quaternion8();
        assert_eq!((0..8).filter(|&g| q.element_order(g) == 4).count(), 6);
        assert!(!q.is_abelian());
        assert!(klein_four().is_abelian());
    }

    #[test]
    fn abelianizations() {
        assert_eq!(cyclic(6).abelianization(), inv(&[6]));
        assert_eq!(symmetric3().abelianization(), inv(&[2]));
        assert_eq!(klein_four().abelianization(), inv(&[2, 2]));
        assert_eq!(quaternion8().abelianization(), inv(&[2, 2]));
        assert_eq!(dihedral4().abelianization(), inv(&[2, 2]));
        assert_eq!(alternating4().abelianization(), inv(&[3]));
    }

    #[test]
    fn subgroup_counts() {
        assert_eq!(symmetric3().subgroups().len(), 6);
        assert_eq!(dihedral4().subgroups().len(), 10);
        assert_eq!(quaternion8().subgroups().len(), 6);
        assert_eq!(alternating4().subgroups().len(), 10);
        assert_eq!(cyclic(12).subgroups().len(), 6);
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]], 0).is_err());
        // A Latin square that is not associative.
        let t = vec![vec![0, 1, 2, 3, 4], vec![1, 0, 3, 4, 2], vec![2, 4, 0, 1, 3], vec![3, 2, 4, 0, 1], vec![4, 3, 1, 2, 0]];
        assert!(matches!(FiniteGroup::from_table(t, 0), Err(Error::InvalidGroup(_))));
        assert!(FiniteGroup::from_permutations(&[vec![0, 0]]).is_err());
    }

    #[test]
    fn permutation_table_matches_composition() {
        let g = symmetric3();
        let t = g.table();
        let from = FiniteGroup::from_table(t, g.identity()).unwrap();
        assert_eq!(from.order(), 6);
    }
}
