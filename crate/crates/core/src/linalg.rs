//! Sparse exact linear algebra over Gaussian rationals.

use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;

use crate::scalars::Gq;

pub type SparseVec = BTreeMap<usize, Gq>;

fn axpy(target: &mut SparseVec, a: &Gq, x: &SparseVec) {
    for (k, v) in x {
        let slot = target.entry(*k).or_insert_with(Gq::zero);
        *slot += &(a * v);
        if slot.is_zero() {
            target.remove(k);
        }
    }
}

/// Incrementally built row-echelon basis of a subspace.
///
/// Each stored row has leading coefficient 1 at its pivot column and no
/// entries to the left of it.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// The unique representative of `v + span` with no pivot-column entries.
    pub fn remainder(&self, v: &SparseVec) -> SparseVec {
        let mut v = v.clone();
        let mut cursor = 0usize;
        loop {
            let next = v.range(cursor..).next().map(|(k, c)| (*k, c.clone()));
            let Some((k, c)) = next else { break };
            if let Some(row) = self.rows.get(&k) {
                axpy(&mut v, &(-&c), row);
            }
            cursor = k + 1;
        }
        v
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.remainder(v).is_empty()
    }

    /// Adds `v`; returns false when it was already in the span.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let r = self.remainder(v);
        let Some((&pivot, lead)) = r.iter().next() else {
            return false;
        };
        let inv = lead.inv().expect("nonzero lead");
        let row: SparseVec = r.iter().map(|(k, c)| (*k, c * &inv)).collect();
        self.rows.insert(pivot, row);
        true
    }
}

/// Assigns dense indices to arbitrary coordinate keys.
#[derive(Clone, Debug)]
pub struct Coords<K: Eq + Hash + Clone> {
    index: HashMap<K, usize>,
    keys: Vec<K>,
}

impl<K: Eq + Hash + Clone> Default for Coords<K> {
    fn default() -> Self {
        Coords {
            index: HashMap::new(),
            keys: Vec::new(),
        }
    }
}

impl<K: Eq + Hash + Clone> Coords<K> {
    pub fn new() -> Self {
        Coords::default()
    }

    pub fn id(&mut self, k: &K) -> usize {
        if let Some(&i) = self.index.get(k) {
            return i;
        }
        let i = self.keys.len();
        self.index.insert(k.clone(), i);
        self.keys.push(k.clone());
        i
    }

    pub fn lookup(&self, k: &K) -> Option<usize> {
        self.index.get(k).copied()
    }

    pub fn key(&self, i: usize) -> &K {
        &self.keys[i]
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }
}

/// Solution set `particular + span(nullspace)`.
#[derive(Clone, Debug)]
pub struct Solution {
    pub particular: Vec<Gq>,
    pub nullspace: Vec<Vec<Gq>>,
}

/// Equations `row · x = rhs` over `n` unknowns.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    n: usize,
    rows: BTreeMap<usize, (SparseVec, Gq)>,
    inconsistent: bool,
}

impl LinearSystem {
    pub fn new(n: usize) -> Self {
        LinearSystem {
            n,
            rows: BTreeMap::new(),
            inconsistent: false,
        }
    }

    pub fn unknowns(&self) -> usize {
        self.n
    }

    pub fn add_equation(&mut self, row: SparseVec, rhs: Gq) {
        let mut v = row;
        let mut b = rhs;
        let mut cursor = 0usize;
        loop {
            let next = v.range(cursor..).next().map(|(k, c)| (*k, c.clone()));
            let Some((k, c)) = next else { break };
            if let Some((prow, prhs)) = self.rows.get(&k) {
                let f = -&c;
                axpy(&mut v, &f, prow);
                b += &(&f * prhs);
            }
            cursor = k + 1;
        }
        match v.iter().next() {
            None => {
                if !b.is_zero() {
                    self.inconsistent = true;
                }
            }
            Some((&pivot, lead)) => {
                let inv = lead.inv().expect("nonzero lead");
                let row: SparseVec = v.iter().map(|(k, c)| (*k, c * &inv)).collect();
                self.rows.insert(pivot, (row, &b * &inv));
            }
        }
    }

    /// `None` when the equations are inconsistent.
    pub fn solve(&self) -> Option<Solution> {
        if self.inconsistent {
            return None;
        }
        let free: Vec<usize> = (0..self.n).filter(|k| !self.rows.contains_key(k)).collect();
        let particular = self.back_substitute(None);
        let nullspace = free
            .iter()
            .map(|&f| self.back_substitute(Some(f)))
            .collect();
        Some(Solution {
            particular,
            nullspace,
        })
    }

    /// Particular solution with free variables zero, or the homogeneous
    /// solution with free variable `free_one` set to 1.
    fn back_substitute(&self, free_one: Option<usize>) -> Vec<Gq> {
        let mut x = vec![Gq::zero(); self.n];
        if let Some(f) = free_one {
            x[f] = Gq::one();
        }
        for (&p, (row, rhs)) in self.rows.iter().rev() {
            let mut acc = if free_one.is_some() {
                Gq::zero()
            } else {
                rhs.clone()
            };
            for (&k, c) in row.range(p + 1..) {
                acc = &acc - &(c * &x[k]);
            }
            x[p] = acc;
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(entries: &[(usize, i64)]) -> SparseVec {
        entries.iter().map(|&(k, c)| (k, Gq::int(c))).collect()
    }

    #[test]
    fn echelon_membership() {
        let mut e = Echelon::new();
        assert!(e.insert(&v(&[(0, 1), (1, 1)])));
        assert!(e.insert(&v(&[(1, 1), (2, 1)])));
        assert!(e.contains(&v(&[(0, 1), (2, -1)])));
        assert!(!e.contains(&v(&[(2, 1)])));
        assert!(!e.insert(&v(&[(0, 2), (1, 4), (2, 2)])));
        assert_eq!(e.rank(), 2);
    }

    #[test]
    fn solves_with_nullspace() {
        // x0 + x1 = 3, x1 - x2 = 1
        let mut s = LinearSystem::new(3);
        s.add_equation(v(&[(0, 1), (1, 1)]), Gq::int(3));
        s.add_equation(v(&[(1, 1), (2, -1)]), Gq::int(1));
        let sol = s.solve().unwrap();
        assert_eq!(sol.nullspace.len(), 1);
        let check = |x: &[Gq]| (&x[0] + &x[1], &x[1] - &x[2]);
        assert_eq!(check(&sol.particular), (Gq::int(3), Gq::int(1)));
        assert_eq!(check(&sol.nullspace[0]), (Gq::zero(), Gq::zero()));
    }

    #[test]
    fn detects_inconsistency() {
        let mut s = LinearSystem::new(1);
        s.add_equation(v(&[(0, 2)]), Gq::int(2));
        s.add_equation(v(&[(0, 1)]), Gq::int(2));
        assert!(s.solve().is_none());
    }
}
