use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::group::FiniteGroup;
use crate::linalg::IntMatrix;
use crate::{Error, Result};

/// A finitely generated G-module: `Z^r` (modulus 0) or `(Z/m)^r`, with `g` acting by `ρ(g)` on column vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GModule {
    rank: usize,
    modulus: u64,
    action: Vec<IntMatrix>,
}

impl GModule {
    /// Action given on every element; checked to be a homomorphism.
    pub fn new(group: &FiniteGroup, modulus: u64, action: Vec<IntMatrix>) -> Result<Self> {
        if action.len() != group.order() {
            return Err(Error::InvalidModule(format!(
                "{} matrices for a group of order {}",
                action.len(),
                group.order()
            )));
        }
        let rank = action.first().map_or(0, IntMatrix::rows);
        for m in &action {
            if m.rows() != rank || m.cols() != rank {
                return Err(Error::InvalidModule("action matrices must all be r x r".into()));
            }
        }
        let action = action.into_iter().map(|m| reduce(m, modulus)).collect();
        let module = GModule { rank, modulus, action };
        module.check_action(group)?;
        Ok(module)
    }

    /// Extends an action specified on some elements (typically generators) to the whole group.
    pub fn from_generators(
        group: &FiniteGroup,
        rank: usize,
        modulus: u64,
        on: &[(usize, IntMatrix)],
    ) -> Result<Self> {
        let n = group.order();
        let mut known: Vec<Option<IntMatrix>> = vec![None; n];
        known[group.identity()] = Some(IntMatrix::identity(rank));
        let mut gens = Vec::new();
        for (g, m) in on {
            if *g >= n {
                return Err(Error::InvalidModule(format!("element {g} out of range")));
            }
            if m.rows() != rank || m.cols() != rank {
                return Err(Error::InvalidModule(format!("matrix for element {g} is not {rank} x {rank}")));
            }
            gens.push((*g, reduce(m.clone(), modulus)));
        }
        let mut queue = VecDeque::from([group.identity()]);
        while let Some(x) = queue.pop_front() {
            for (s, ms) in &gens {
                let y = group.mul(x, *s);
                if known[y].is_none() {
                    let mx = known[x].as_ref().expect("visited");
                    known[y] = Some(mx.mul(ms, modulus));
                    queue.push_back(y);
                }
            }
        }
        let action: Option<Vec<IntMatrix>> = known.into_iter().collect();
        let action = action.ok_or_else(|| Error::InvalidModule("specified elements do not generate the group".into()))?;
        // Consistency on the specified elements themselves is part of the homomorphism check.
        for (g, m) in &gens {
            if &action[*g] != m {
                return Err(Error::NotAnAction);
            }
        }
        let module = GModule { rank, modulus, action };
        module.check_action(group)?;
        Ok(module)
    }

    pub fn trivial(group: &FiniteGroup, rank: usize, modulus: u64) -> Self {
        let id = reduce(IntMatrix::identity(rank), modulus);
        GModule { rank, modulus, action: vec![id; group.order()] }
    }

    /// `Z[G/H]` with `G` permuting left cosets; basis indexed by least element of each coset.
    pub fn permutation_module(group: &FiniteGroup, subgroup: &[usize]) -> Result<Self> {
        if !group.is_subgroup(subgroup) {
            return Err(Error::NotASubgroup);
        }
        let n = group.order();
        let mut coset_of = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for x in 0..n {
            if coset_of[x] == usize::MAX {
                let idx = reps.len();
                reps.push(x);
                for &h in subgroup {
                    coset_of[group.mul(x, h)] = idx;
                }
            }
        }
        let k = reps.len();
        let action = (0..n)
            .map(|g| {
                let mut m = IntMatrix::zeros(k, k);
                for (c, &x) in reps.iter().enumerate() {
                    m.set(coset_of[group.mul(g, x)], c, 1);
                }
                m
            })
            .collect();
        Ok(GModule { rank: k, modulus: 0, action })
    }

    pub fn regular(group: &FiniteGroup) -> Self {
        GModule::permutation_module(group, &[group.identity()]).expect("trivial subgroup")
    }

    /// Rank-one module where `g` acts by `χ(g) = ±1`, with kernel the given index-2 subgroup.
    pub fn sign_character(group: &FiniteGroup, kernel: &[usize]) -> Result<Self> {
        if !group.is_subgroup(kernel) || 2 * kernel.len() != group.order() {
            return Err(Error::NotASubgroup);
        }
        let action = (0..group.order())
            .map(|g| IntMatrix::from_rows(&[vec![if kernel.contains(&g) { 1 } else { -1 }]]))
            .collect();
        Ok(GModule { rank: 1, modulus: 0, action })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn action(&self, g: usize) -> &IntMatrix {
        &self.action[g]
    }

    pub fn direct_sum(&self, other: &GModule) -> Result<Self> {
        if self.modulus != other.modulus || self.action.len() != other.action.len() {
            return Err(Error::InvalidModule("summands live over different groups or rings".into()));
        }
        let r = self.rank + other.rank;
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| {
                let mut m = IntMatrix::zeros(r, r);
                for i in 0..self.rank {
                    for j in 0..self.rank {
                        m.set(i, j, a.get(i, j));
                    }
                }
                for i in 0..other.rank {
                    for j in 0..other.rank {
                        m.set(self.rank + i, self.rank + j, b.get(i, j));
                    }
                }
                m
            })
            .collect();
        Ok(GModule { rank: r, modulus: self.modulus, action })
    }

    /// Tensor with a rank-one module (a character).
    pub fn twist(&self, character: &GModule) -> Result<Self> {
        if character.rank != 1 || character.action.len() != self.action.len() {
            return Err(Error::InvalidModule("twisting needs a rank-one module over the same group".into()));
        }
        let action = self
            .action
            .iter()
            .zip(&character.action)
            .map(|(a, c)| {
                let s = c.get(0, 0);
                let mut m = a.clone();
                for i in 0..self.rank {
                    for j in 0..self.rank {
                        m.set(i, j, s * a.get(i, j));
                    }
                }
                reduce(m, self.modulus)
            })
            .collect();
        Ok(GModule { rank: self.rank, modulus: self.modulus, action })
    }

    /// `ρ'(g) = U ρ(g) U^{-1}`; the caller supplies a unimodular pair.
    pub fn conjugate(&self, u: &IntMatrix, u_inv: &IntMatrix) -> Result<Self> {
        if u.mul(u_inv, 0) != IntMatrix::identity(self.rank) {
            return Err(Error::InvalidArgument("conjugating matrices are not inverse".into()));
        }
        let action = self.action.iter().map(|a| u.mul(a, 0).mul(u_inv, self.modulus)).collect();
        Ok(GModule { rank: self.rank, modulus: self.modulus, action })
    }

    /// Same action read modulo `m`.
    pub fn reduce_mod(&self, m: u64) -> Self {
        assert!(m > 0);
        GModule { rank: self.rank, modulus: m, action: self.action.iter().map(|a| reduce(a.clone(), m)).collect() }
    }

    /// Action on the specified elements, keyed by element index.
    pub fn action_on(&self, elements: &[usize]) -> BTreeMap<usize, Vec<Vec<i64>>> {
        elements.iter().map(|&g| (g, self.action[g].to_rows())).collect()
    }

    fn check_action(&self, group: &FiniteGroup) -> Result<()> {
        if self.action[group.identity()] != reduce(IntMatrix::identity(self.rank), self.modulus) {
            return Err(Error::NotAnAction);
        }
        // ρ(g)ρ(s) = ρ(gs) on generators s extends to all pairs by induction on word length.
        for g in 0..group.order() {
            for &s in group.generators() {
                if self.action[g].mul(&self.action[s], self.modulus) != self.action[group.mul(g, s)] {
                    return Err(Error::NotAnAction);
                }
            }
        }
        Ok(())
    }
}

fn reduce(m: IntMatrix, modulus: u64) -> IntMatrix {
    if modulus == 0 {
        m
    } else {
        m.reduced(modulus)
    }
}

#[cfg(test)]
mod tests {
    use super::super::group::corpus::*;
    use super::*;

    #[test]
    fn permutation_modules_are_actions() {
        for (_, g) in standard() {
            for h in g.subgroups() {
                let m = GModule::permutation_module(&g, &h).unwrap();
                assert_eq!(m.rank() * h.len(), g.order());
            }
        }
        let s3 = symmetric3();
        let r = (0..6).find(|&g| s3.element_order(g) == 3).unwrap();
        assert!(matches!(GModule::permutation_module(&s3, &[0, r]), Err(Error::NotASubgroup)));
    }

    #[test]
    fn generator_extension_and_rejection() {
        let g = cyclic(4);
        let s = IntMatrix::from_rows(&[vec![0, -1], vec![1, 0]]);
        let m = GModule::from_generators(&g, 2, 0, &[(1, s.clone())]).unwrap();
        assert_eq!(m.action(2), &IntMatrix::from_rows(&[vec![-1, 0], vec![0, -1]]));
        let bad = IntMatrix::from_rows(&[vec![2, 0], vec![0, 1]]);
        assert!(matches!(GModule::from_generators(&g, 2, 0, &[(1, bad)]), Err(Error::NotAnAction)));
        // Over Z/2 the order-4 rotation still acts.
        assert!(GModule::from_generators(&g, 2, 2, &[(1, s)]).is_ok());
    }
}
