//! Finite permutation groups held as full element sets, with the small
//! generating sets used by the series computations.

mod perm;

use std::collections::{HashSet, VecDeque};

pub use perm::Perm;

use crate::error::{Error, Result};

/// Largest group materialized by default.
pub const DEFAULT_GROUP_CAP: usize = 100_000;

#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Perm>,
    /// Sorted.
    elements: Vec<Perm>,
}

/// A conjugate `g h g^-1` that leaves a subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalityWitness {
    pub g: Perm,
    pub h: Perm,
    pub conjugate: Perm,
}

impl PermGroup {
    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup { degree, gens: Vec::new(), elements: vec![Perm::identity(degree)] }
    }

    /// The subgroup generated by `gens`, by breadth-first closure.
    pub fn generate(degree: usize, gens: &[Perm], cap: usize) -> Result<PermGroup> {
        if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
            return Err(Error::ArityMismatch { expected: degree, found: g.degree() });
        }
        let gens: Vec<Perm> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        let id = Perm::identity(degree);
        let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y = x.compose(g);
                if !seen.contains(&y) {
                    if seen.len() >= cap {
                        return Err(Error::CapExceeded {
                            what: "permutation group",
                            size: seen.len() as u128 + 1,
                            cap: cap as u128,
                        });
                    }
                    seen.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
        let mut elements: Vec<Perm> = seen.into_iter().collect();
        elements.sort_unstable();
        Ok(PermGroup { degree, gens, elements })
    }

    /// Wraps an element set, checking that it is a group. A small generating
    /// set is chosen greedily; the set is a group iff it equals the closure
    /// of those generators.
    pub fn from_elements(degree: usize, elements: Vec<Perm>) -> Result<PermGroup> {
        let mut elements = elements;
        elements.sort_unstable();
        elements.dedup();
        let mut gens = Vec::new();
        let mut current = PermGroup::trivial(degree);
        for e in &elements {
            if !current.contains(e) {
                gens.push(e.clone());
                current = PermGroup::generate(degree, &gens, elements.len())
                    .map_err(|_| Error::InvalidStructure("element set is not closed under composition".into()))?;
            }
        }
        if current.elements != elements {
            return Err(Error::InvalidStructure("element set is not closed under composition".into()));
        }
        Ok(current)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn gens(&self) -> &[Perm] {
        &self.gens
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_abelian(&self) -> bool {
        self.gens
            .iter()
            .enumerate()
            .all(|(i, a)| self.gens[i + 1..].iter().all(|b| a.compose(b) == b.compose(a)))
    }

    /// Two non-commuting generators, if any.
    pub fn noncommuting_pair(&self) -> Option<(Perm, Perm)> {
        for (i, a) in self.gens.iter().enumerate() {
            for b in &self.gens[i + 1..] {
                if a.compose(b) != b.compose(a) {
                    return Some((a.clone(), b.clone()));
                }
            }
        }
        None
    }

    pub fn is_subgroup_of(&self, g: &PermGroup) -> bool {
        self.degree == g.degree && self.gens.iter().all(|x| g.contains(x))
    }

    /// Smallest normal subgroup of `self` containing `gens`.
    pub fn normal_closure(&self, gens: &[Perm]) -> Result<PermGroup> {
        let cap = self.order();
        let mut n = PermGroup::generate(self.degree, gens, cap)?;
        loop {
            let mut extra = Vec::new();
            for x in &n.gens {
                for g in &self.gens {
                    let c = x.conjugate_by(g);
                    if !n.contains(&c) && !extra.contains(&c) {
                        extra.push(c);
                    }
                }
            }
            if extra.is_empty() {
                return Ok(n);
            }
            let mut all = n.gens.clone();
            all.extend(extra);
            n = PermGroup::generate(self.degree, &all, cap)?;
        }
    }

    /// `None` if `self` is normal in `g`, otherwise a conjugate leaving `self`.
    pub fn normality_witness(&self, g: &PermGroup) -> Result<Option<NormalityWitness>> {
        if !self.is_subgroup_of(g) {
            return Err(Error::InvalidStructure("not a subgroup".into()));
        }
        for x in &g.gens {
            for h in &self.gens {
                let c = h.conjugate_by(x);
                if !self.contains(&c) {
                    return Ok(Some(NormalityWitness { g: x.clone(), h: h.clone(), conjugate: c }));
                }
            }
        }
        Ok(None)
    }

    pub fn is_normal_in(&self, g: &PermGroup) -> Result<bool> {
        Ok(self.normality_witness(g)?.is_none())
    }

    pub fn derived_subgroup(&self) -> Result<PermGroup> {
        let mut comms = Vec::new();
        for (i, a) in self.gens.iter().enumerate() {
            for b in &self.gens[i + 1..] {
                comms.push(Perm::commutator(a, b));
            }
        }
        self.normal_closure(&comms)
    }

    /// `G, G', G'', ..` up to the first repeated term.
    pub fn derived_series(&self) -> Result<Vec<PermGroup>> {
        let mut out = vec![self.clone()];
        loop {
            let last = out.last().unwrap();
            let next = last.derived_subgroup()?;
            if next.order() == last.order() {
                return Ok(out);
            }
            out.push(next);
        }
    }

    /// `G = g1 >= g2 = [g1, G] >= ..` up to the first repeated term.
    pub fn lower_central_series(&self) -> Result<Vec<PermGroup>> {
        let mut out = vec![self.clone()];
        loop {
            let last = out.last().unwrap();
            let mut comms = Vec::new();
            for x in &last.gens {
                for g in &self.gens {
                    comms.push(Perm::commutator(x, g));
                }
            }
            let next = self.normal_closure(&comms)?;
            if next.order() == last.order() {
                return Ok(out);
            }
            out.push(next);
        }
    }

    pub fn is_solvable(&self) -> Result<bool> {
        Ok(self.derived_series()?.last().unwrap().is_trivial())
    }

    pub fn is_nilpotent(&self) -> Result<bool> {
        Ok(self.lower_central_series()?.last().unwrap().is_trivial())
    }
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}

impl Eq for PermGroup {}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Perm {
        Perm::new(v.to_vec()).unwrap()
    }

    fn symmetric(n: usize) -> PermGroup {
        let mut cycle: Vec<u32> = (1..n as u32).collect();
        cycle.push(0);
        let mut swap: Vec<u32> = (0..n as u32).collect();
        swap.swap(0, 1);
        PermGroup::generate(n, &[p(&cycle), p(&swap)], 1000).unwrap()
    }

    #[test]
    fn symmetric_groups() {
        let s3 = symmetric(3);
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        assert!(s3.is_solvable().unwrap());
        assert!(!s3.is_nilpotent().unwrap());
        let s5 = symmetric(5);
        let orders: Vec<usize> = s5.derived_series().unwrap().iter().map(|g| g.order()).collect();
        assert_eq!(orders, [120, 60]);
        assert!(!s5.is_solvable().unwrap());
        let s4 = symmetric(4);
        let orders: Vec<usize> = s4.derived_series().unwrap().iter().map(|g| g.order()).collect();
        assert_eq!(orders, [24, 12, 4, 1]);
    }

    #[test]
    fn dihedral_group_is_nilpotent() {
        let r = p(&[1, 2, 3, 0]);
        let s = p(&[0, 3, 2, 1]);
        let d4 = PermGroup::generate(4, &[r, s], 100).unwrap();
        assert_eq!(d4.order(), 8);
        let lcs: Vec<usize> = d4.lower_central_series().unwrap().iter().map(|g| g.order()).collect();
        assert_eq!(lcs, [8, 2, 1]);
        assert!(d4.noncommuting_pair().is_some());
    }

    #[test]
    fn normality() {
        let s3 = symmetric(3);
        let a3 = PermGroup::generate(3, &[p(&[1, 2, 0])], 10).unwrap();
        assert!(a3.is_normal_in(&s3).unwrap());
        let c2 = PermGroup::generate(3, &[p(&[1, 0, 2])], 10).unwrap();
        let w = c2.normality_witness(&s3).unwrap().unwrap();
        assert!(!c2.contains(&w.conjugate));
        assert!(PermGroup::trivial(3).is_normal_in(&s3).unwrap());
        let other = PermGroup::generate(4, &[p(&[1, 0, 2, 3])], 10).unwrap();
        assert!(other.is_normal_in(&s3).is_err());
    }

    #[test]
    fn element_sets() {
        let s3 = symmetric(3);
        let g = PermGroup::from_elements(3, s3.elements().to_vec()).unwrap();
        assert_eq!(g, s3);
        let bad = vec![Perm::identity(3), p(&[1, 2, 0])];
        assert!(PermGroup::from_elements(3, bad).is_err());
        assert!(PermGroup::generate(5, symmetric(5).gens(), 50).is_err());
    }
}
