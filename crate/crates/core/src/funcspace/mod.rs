//! Polynomial function spaces `F(R^k)`, unit-valued functions `FU(R^k)`,
//! polynomial permutations `P(R)` and the induced permutation groups of `R^n`.
//!
//! Spaces are built by closure: monomial functions are the multiplicative
//! closure of the projections, and `F(R^k)` is their additive span with
//! coefficients in `R`. No degree bound is assumed.

mod report;

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub use report::{
    p_group_check, ratio_report, order_report, tr_vs_mt_report, Report, Rational,
};

use crate::error::{Error, Result};
use crate::group::{Perm, PermGroup, DEFAULT_GROUP_CAP};
use crate::poly::domain_size;
use crate::ring::{Idx, Ring};
use crate::tri::table_from_components;

/// Largest number of function tables held in one space.
pub const DEFAULT_SPACE_CAP: usize = 1 << 20;
/// Largest domain `|R|^k` enumerated by default.
pub const DEFAULT_SPACE_DOMAIN: u128 = 256;

pub type Table = Box<[Idx]>;

#[derive(Clone, Copy, Debug)]
pub struct SpaceOptions {
    pub domain_cap: u128,
    pub size_cap: usize,
    pub group_cap: usize,
    /// Shuffles the generator order; the resulting set must not depend on it.
    pub seed: Option<u64>,
}

impl Default for SpaceOptions {
    fn default() -> Self {
        SpaceOptions {
            domain_cap: DEFAULT_SPACE_DOMAIN,
            size_cap: DEFAULT_SPACE_CAP,
            group_cap: DEFAULT_GROUP_CAP,
            seed: None,
        }
    }
}

/// A set of functions `R^k -> R`, sorted and deduplicated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuncSpace {
    ring: Ring,
    arity: usize,
    tables: Vec<Table>,
}

impl FuncSpace {
    fn from_set(ring: &Ring, arity: usize, set: HashSet<Table>) -> FuncSpace {
        let mut tables: Vec<Table> = set.into_iter().collect();
        tables.sort_unstable();
        FuncSpace { ring: ring.clone(), arity, tables }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.tables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tables.is_empty()
    }

    pub fn tables(&self) -> &[Table] {
        &self.tables
    }

    pub fn index_of(&self, values: &[Idx]) -> Option<usize> {
        self.tables.binary_search_by(|t| t[..].cmp(values)).ok()
    }

    pub fn contains(&self, values: &[Idx]) -> bool {
        self.index_of(values).is_some()
    }

    pub fn filter(&self, pred: impl Fn(&[Idx]) -> bool) -> FuncSpace {
        let tables = self.tables.iter().filter(|t| pred(t)).cloned().collect();
        FuncSpace { ring: self.ring.clone(), arity: self.arity, tables }
    }

    /// Members whose every value is a unit.
    pub fn unit_valued(&self) -> FuncSpace {
        let r = self.ring.clone();
        self.filter(|t| t.iter().all(|&v| r.is_unit(v)))
    }
}

fn check_domain(ring: &Ring, k: usize, opts: &SpaceOptions) -> Result<usize> {
    domain_size(ring, k, opts.domain_cap)
}

fn projection(ring: &Ring, k: usize, j: usize) -> Table {
    let size = ring.size();
    let total = size.pow(k as u32);
    let stride = size.pow((k - 1 - j) as u32);
    (0..total).map(|p| ((p / stride) % size) as Idx).collect()
}

fn constant(total: usize, c: Idx) -> Table {
    vec![c; total].into_boxed_slice()
}

fn pointwise(ring: &Ring, a: &[Idx], b: &[Idx], mul: bool) -> Table {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| if mul { ring.mul(x, y) } else { ring.add(x, y) })
        .collect()
}

fn scale(ring: &Ring, c: Idx, a: &[Idx]) -> Table {
    a.iter().map(|&x| ring.mul(c, x)).collect()
}

fn cap_error(what: &'static str, size: usize, cap: usize) -> Error {
    Error::CapExceeded { what, size: size as u128, cap: cap as u128 }
}

fn shuffled<T>(mut v: Vec<T>, seed: Option<u64>) -> Vec<T> {
    if let Some(s) = seed {
        v.shuffle(&mut ChaCha8Rng::seed_from_u64(s));
    }
    v
}

/// Closure of `start` under pointwise multiplication by `gens`.
fn mult_closure(ring: &Ring, start: Vec<Table>, gens: &[Table], cap: usize) -> Result<HashSet<Table>> {
    let mut seen: HashSet<Table> = start.iter().cloned().collect();
    let mut frontier = start;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for x in &frontier {
            for g in gens {
                let y = pointwise(ring, x, g, true);
                if seen.insert(y.clone()) {
                    if seen.len() > cap {
                        return Err(cap_error("monomial function set", seen.len(), cap));
                    }
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    Ok(seen)
}

/// Additive subgroup generated by `gens`.
fn additive_span(ring: &Ring, total: usize, gens: Vec<Table>, cap: usize) -> Result<HashSet<Table>> {
    let mut set: HashSet<Table> = HashSet::from([constant(total, 0)]);
    for g in gens {
        if set.contains(&g) {
            continue;
        }
        // set := set + <g>, growing by cosets of the current set
        let base: Vec<Table> = set.iter().cloned().collect();
        let mut shift = g.clone();
        while !set.contains(&shift) {
            for b in &base {
                set.insert(pointwise(ring, b, &shift, false));
            }
            if set.len() > cap {
                return Err(cap_error("function space", set.len(), cap));
            }
            shift = pointwise(ring, &shift, &g, false);
        }
    }
    Ok(set)
}

/// Value tables of the monomial functions `x^e` with `e != 0`.
fn nonconstant_monomials(ring: &Ring, k: usize, opts: &SpaceOptions) -> Result<Vec<Table>> {
    let projs: Vec<Table> = (0..k).map(|j| projection(ring, k, j)).collect();
    let set = mult_closure(ring, projs.clone(), &projs, opts.size_cap)?;
    let mut v: Vec<Table> = set.into_iter().collect();
    v.sort_unstable();
    Ok(shuffled(v, opts.seed))
}

/// `F(R^k)`: all functions induced by polynomials in `k` variables.
pub fn enumerate_poly_functions(ring: &Ring, k: usize, opts: &SpaceOptions) -> Result<FuncSpace> {
    let total = check_domain(ring, k, opts)?;
    let mut monos = nonconstant_monomials(ring, k, opts)?;
    monos.push(constant(total, 1));
    let gens: Vec<Table> = monos
        .iter()
        .flat_map(|m| ring.elements().map(move |c| (c, m)))
        .map(|(c, m)| scale(ring, c, m))
        .collect();
    let span = additive_span(ring, total, shuffled(gens, opts.seed), opts.size_cap)?;
    Ok(FuncSpace::from_set(ring, k, span))
}

/// `FU(R^k)`, the unit-valued members of `F(R^k)`.
pub fn enumerate_unit_valued(space: &FuncSpace) -> FuncSpace {
    space.unit_valued()
}

/// `P(R)`: bijective members of `F(R)`.
pub fn enumerate_poly_permutations(ring: &Ring, opts: &SpaceOptions) -> Result<FuncSpace> {
    let size = ring.size();
    let f = enumerate_poly_functions(ring, 1, opts)?;
    Ok(f.filter(|t| {
        let mut seen = vec![false; size];
        t.iter().all(|&v| !std::mem::replace(&mut seen[v as usize], true))
    }))
}

/// Functions induced by unit polynomials in `k` variables: a unit constant
/// plus the span of nilpotent multiples of nonconstant monomial functions.
pub fn enumerate_unit_induced(ring: &Ring, k: usize, opts: &SpaceOptions) -> Result<FuncSpace> {
    let total = check_domain(ring, k, opts)?;
    let nil: Vec<Idx> = ring.nilpotents().into_iter().filter(|&n| n != 0).collect();
    let span = if k == 0 || nil.is_empty() {
        HashSet::from([constant(total, 0)])
    } else {
        let monos = nonconstant_monomials(ring, k, opts)?;
        let gens = monos.iter().flat_map(|m| nil.iter().map(move |&n| scale(ring, n, m))).collect();
        additive_span(ring, total, gens, opts.size_cap)?
    };
    let mut out = HashSet::new();
    for c in ring.units() {
        for s in &span {
            out.insert(s.iter().map(|&v| ring.add(c, v)).collect::<Table>());
        }
    }
    Ok(FuncSpace::from_set(ring, k, out))
}

/// Functions induced by R-automorphisms of `R[x]`: `c + a x` with `a` a unit,
/// plus the span of nilpotent multiples of `x^i`, `i >= 2`.
pub fn enumerate_automorphism_induced(ring: &Ring, opts: &SpaceOptions) -> Result<FuncSpace> {
    let total = check_domain(ring, 1, opts)?;
    let x = projection(ring, 1, 0);
    let nil: Vec<Idx> = ring.nilpotents().into_iter().filter(|&n| n != 0).collect();
    let span = if nil.is_empty() {
        HashSet::from([constant(total, 0)])
    } else {
        let x2 = pointwise(ring, &x, &x, true);
        let x3 = pointwise(ring, &x2, &x, true);
        let high = mult_closure(ring, vec![x2.clone(), x3.clone()], &[x.clone()], opts.size_cap)?;
        let mut high: Vec<Table> = high.into_iter().collect();
        high.sort_unstable();
        let gens = high.iter().flat_map(|m| nil.iter().map(move |&n| scale(ring, n, m))).collect();
        additive_span(ring, total, gens, opts.size_cap)?
    };
    let mut out = HashSet::new();
    for a in ring.units() {
        for c in ring.elements() {
            let affine: Table = x.iter().map(|&v| ring.add(c, ring.mul(a, v))).collect();
            for s in &span {
                out.insert(pointwise(ring, &affine, s, false));
            }
        }
    }
    Ok(FuncSpace::from_set(ring, 1, out))
}

/// Choice sets for each factor of a triangular map: `F1` from `f1`, and at
/// level `i` the pair `(Fi, Ui)` from `levels[i - 2]`.
#[derive(Clone, Debug)]
pub struct Components {
    ring: Ring,
    f1: Vec<Table>,
    levels: Vec<(Vec<Table>, Vec<Table>)>,
}

fn identity_level(ring: &Ring, arity: usize) -> (Vec<Table>, Vec<Table>) {
    let total = ring.size().pow(arity as u32);
    (vec![constant(total, 0)], vec![constant(total, 1)])
}

impl Components {
    /// Component sets of `pi_n(MT_n)`.
    pub fn mt(ring: &Ring, n: usize, opts: &SpaceOptions) -> Result<Components> {
        Components::mt_embedded(ring, n, n, opts)
    }

    /// `pi_m(MT_m)` acting on the first `m` of `n` coordinates.
    pub fn mt_embedded(ring: &Ring, m: usize, n: usize, opts: &SpaceOptions) -> Result<Components> {
        assert!(1 <= m && m <= n);
        let f1 = enumerate_poly_permutations(ring, opts)?.tables;
        let mut levels = Vec::with_capacity(n - 1);
        for i in 2..=n {
            if i <= m {
                let f = enumerate_poly_functions(ring, i - 1, opts)?;
                let u = f.unit_valued();
                levels.push((f.tables, u.tables));
            } else {
                levels.push(identity_level(ring, i - 1));
            }
        }
        Ok(Components { ring: ring.clone(), f1, levels })
    }

    /// Component sets of `pi_n(TR_n)`.
    pub fn tr(ring: &Ring, n: usize, opts: &SpaceOptions) -> Result<Components> {
        let f1 = enumerate_automorphism_induced(ring, opts)?.tables;
        let mut levels = Vec::with_capacity(n - 1);
        for i in 2..=n {
            let f = enumerate_poly_functions(ring, i - 1, opts)?;
            let u = enumerate_unit_induced(ring, i - 1, opts)?;
            levels.push((f.tables, u.tables));
        }
        Ok(Components { ring: ring.clone(), f1, levels })
    }

    /// Component sets of `pi_n(ML^n_k)`: only level `k` moves.
    pub fn ml(ring: &Ring, n: usize, k: usize, opts: &SpaceOptions) -> Result<Components> {
        if k < 2 || k > n {
            return Err(Error::InvalidStructure(format!("level {k} outside 2..={n}")));
        }
        let total = ring.size();
        let x: Table = (0..total as Idx).collect();
        let mut levels: Vec<_> = (2..=n).map(|i| identity_level(ring, i - 1)).collect();
        let f = enumerate_poly_functions(ring, k - 1, opts)?;
        let u = f.unit_valued();
        levels[k - 2] = (f.tables, u.tables);
        Ok(Components { ring: ring.clone(), f1: vec![x], levels })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn n(&self) -> usize {
        self.levels.len() + 1
    }

    pub fn f1(&self) -> &[Table] {
        &self.f1
    }

    pub fn levels(&self) -> &[(Vec<Table>, Vec<Table>)] {
        &self.levels
    }

    /// Number of component tuples, which is the group order since distinct
    /// tuples give distinct maps.
    pub fn order(&self) -> u128 {
        self.levels.iter().fold(self.f1.len() as u128, |acc, (f, u)| {
            acc.saturating_mul(f.len() as u128).saturating_mul(u.len() as u128)
        })
    }

    /// Mixed-radix digits of a tuple index: `[F1, F2, U2, F3, U3, ..]`.
    pub fn radices(&self) -> Vec<usize> {
        let mut out = vec![self.f1.len()];
        for (f, u) in &self.levels {
            out.push(f.len());
            out.push(u.len());
        }
        out
    }

    /// Map of the tuple with the given digits.
    pub fn table(&self, digits: &[usize]) -> Perm {
        let levels: Vec<(&[Idx], &[Idx])> = self
            .levels
            .iter()
            .enumerate()
            .map(|(k, (f, u))| (&f[digits[1 + 2 * k]][..], &u[digits[2 + 2 * k]][..]))
            .collect();
        Perm::from_vec_unchecked(table_from_components(&self.ring, &self.f1[digits[0]], &levels))
    }

    /// Every map, in tuple order (last digit fastest).
    pub fn materialize(&self, cap: usize) -> Result<Vec<Perm>> {
        let order = self.order();
        if order > cap as u128 {
            return Err(Error::CapExceeded { what: "induced group", size: order, cap: cap as u128 });
        }
        let radices = self.radices();
        Ok((0..order as usize)
            .into_par_iter()
            .map(|mut idx| {
                let mut digits = vec![0; radices.len()];
                for (d, &r) in digits.iter_mut().zip(&radices).rev() {
                    *d = idx % r;
                    idx /= r;
                }
                self.table(&digits)
            })
            .collect())
    }

    /// The group of all maps, checked for closure.
    pub fn group(&self, cap: usize) -> Result<PermGroup> {
        let elements = self.materialize(cap)?;
        let degree = self.ring.size().pow(self.n() as u32);
        let g = PermGroup::from_elements(degree, elements)?;
        if g.order() as u128 != self.order() {
            return Err(Error::InvalidStructure(format!(
                "{} distinct maps from {} component tuples",
                g.order(),
                self.order()
            )));
        }
        Ok(g)
    }
}

/// `pi_n(MT_n)` materialized.
pub fn induced_group_mt(ring: &Ring, n: usize, opts: &SpaceOptions) -> Result<PermGroup> {
    Components::mt(ring, n, opts)?.group(opts.group_cap)
}

/// `pi_n(TR_n)` materialized.
pub fn induced_group_tr(ring: &Ring, n: usize, opts: &SpaceOptions) -> Result<PermGroup> {
    Components::tr(ring, n, opts)?.group(opts.group_cap)
}

/// `|P(R)| * prod_{i<n} |F(R^i)| |FU(R^i)|` without materializing the group.
pub fn mt_order(ring: &Ring, n: usize, opts: &SpaceOptions) -> Result<u128> {
    Ok(Components::mt(ring, n, opts)?.order())
}

pub fn tr_order(ring: &Ring, n: usize, opts: &SpaceOptions) -> Result<u128> {
    Ok(Components::tr(ring, n, opts)?.order())
}

/// Table of `x^q - x + 1` on a local ring with residue field of size `q`.
pub fn nonunit_level_witness(ring: &Ring) -> Result<Table> {
    let q = ring.local().ok_or_else(|| Error::NotLocal(ring.name().into()))?.residue_size();
    Ok(ring
        .elements()
        .map(|a| ring.add(ring.sub(ring.pow(a, q as u64), a), 1))
        .collect())
}

/// Whether `x^q - x + 1` induces a function no unit polynomial induces.
pub fn nonunit_level_check(ring: &Ring, opts: &SpaceOptions) -> Result<bool> {
    if ring.is_field() {
        return Err(Error::IsAField(ring.name().into()));
    }
    let w = nonunit_level_witness(ring)?;
    Ok(!enumerate_unit_induced(ring, 1, opts)?.contains(&w))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(s: &str) -> Ring {
        Ring::parse(s).unwrap()
    }

    fn opts() -> SpaceOptions {
        SpaceOptions::default()
    }

    #[test]
    fn function_counts() {
        for (spec, k, f, fu) in [("F2", 1, 4, 1), ("F3", 1, 27, 8), ("Z4", 1, 64, 16), ("F2", 2, 16, 1)] {
            let s = enumerate_poly_functions(&ring(spec), k, &opts()).unwrap();
            assert_eq!(s.len(), f, "{spec}");
            assert_eq!(enumerate_unit_valued(&s).len(), fu, "{spec}");
        }
    }

    #[test]
    fn permutation_counts() {
        for (spec, n) in [("F2", 2), ("F3", 6), ("Z4", 8), ("F5", 120)] {
            assert_eq!(enumerate_poly_permutations(&ring(spec), &opts()).unwrap().len(), n, "{spec}");
        }
    }

    #[test]
    fn closure_does_not_depend_on_order() {
        let r = ring("Z4");
        let a = enumerate_poly_functions(&r, 1, &opts()).unwrap();
        for seed in [1, 2, 3] {
            let b = enumerate_poly_functions(&r, 1, &SpaceOptions { seed: Some(seed), ..opts() }).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn induced_orders() {
        assert_eq!(mt_order(&ring("F2"), 2, &opts()).unwrap(), 8);
        assert_eq!(mt_order(&ring("F3"), 2, &opts()).unwrap(), 1296);
        assert_eq!(mt_order(&ring("Z4"), 2, &opts()).unwrap(), 8192);
        assert_eq!(induced_group_mt(&ring("F2"), 2, &opts()).unwrap().order(), 8);
        assert_eq!(tr_order(&ring("F2"), 2, &opts()).unwrap(), 8);
    }

    #[test]
    fn unit_induced_sets() {
        let z4 = ring("Z4");
        let u = enumerate_unit_induced(&z4, 1, &opts()).unwrap();
        let fu = enumerate_poly_functions(&z4, 1, &opts()).unwrap().unit_valued();
        assert!(u.len() < fu.len());
        assert!(u.tables().iter().all(|t| fu.contains(t)));
        assert!(nonunit_level_check(&z4, &opts()).unwrap());
        assert!(nonunit_level_check(&ring("F3"), &opts()).is_err());
        let aut = enumerate_automorphism_induced(&z4, &opts()).unwrap();
        let p = enumerate_poly_permutations(&z4, &opts()).unwrap();
        assert!(aut.tables().iter().all(|t| p.contains(t)));
    }
}
