//! Finite commutative rings with enumerated elements.
//!
//! Every element is a canonical index in `0..size` with `0` the zero and `1`
//! the identity. Arithmetic is computed from the ring description and, for
//! rings of at most [`TABLE_LIMIT`] elements, memoized into operation tables.

mod crt;
mod spec;

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

pub use crt::{crt_split, CrtSplit};
pub(crate) use spec::factorize;
pub use spec::RingSpec;

use crate::error::{Error, Result};

/// Canonical element index.
pub type Idx = u32;

/// Default bound on ring cardinality.
pub const DEFAULT_RING_CAP: usize = 4096;
/// Rings up to this size get full addition and multiplication tables.
pub const TABLE_LIMIT: usize = 256;

const NO_INVERSE: Idx = Idx::MAX;

/// Maximal ideal and residue data of a local ring.
#[derive(Debug, Clone)]
pub struct LocalData {
    maximal: Vec<Idx>,
    residue: Vec<u32>,
    residue_reps: Vec<Idx>,
}

impl LocalData {
    /// Elements of the maximal ideal, ascending.
    pub fn maximal_ideal(&self) -> &[Idx] {
        &self.maximal
    }

    /// Size `q` of the residue field.
    pub fn residue_size(&self) -> usize {
        self.residue_reps.len()
    }

    /// Residue class of `a`; class `0` is `M` itself.
    pub fn residue(&self, a: Idx) -> u32 {
        self.residue[a as usize]
    }

    /// Smallest element of each residue class, indexed by class.
    pub fn residue_representatives(&self) -> &[Idx] {
        &self.residue_reps
    }
}

#[derive(Debug)]
enum Arith {
    Zmod(u32),
    Algebra(Algebra),
    Product(Product),
}

/// Free module over `base` with basis `e_0 = 1, e_1, ..` and structure constants.
#[derive(Debug)]
struct Algebra {
    base: Ring,
    dim: usize,
    /// `structure[i * dim + j]` lists `(k, c)` with `e_i e_j = sum c e_k`.
    structure: Vec<Vec<(usize, Idx)>>,
    symbols: Vec<String>,
}

#[derive(Debug)]
struct Product {
    factors: Vec<Ring>,
    strides: Vec<usize>,
    raw_one: usize,
}

#[derive(Debug)]
struct RingInner {
    spec: RingSpec,
    name: String,
    size: usize,
    arith: Arith,
    add_table: Option<Vec<Idx>>,
    mul_table: Option<Vec<Idx>>,
    neg_table: Vec<Idx>,
    inverse: Vec<Idx>,
    nilpotent: Vec<bool>,
    local: Option<LocalData>,
}

/// An immutable, fully classified finite commutative ring. Cloning is cheap.
///
/// Two rings compare equal iff they were built from the same spec.
#[derive(Clone)]
pub struct Ring(Arc<RingInner>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.spec == other.0.spec
    }
}

impl Eq for Ring {}

impl Hash for Ring {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.spec.hash(state);
    }
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({})", self.0.name)
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.name)
    }
}

impl Ring {
    /// Builds and classifies a ring with the default cardinality cap.
    pub fn new(spec: RingSpec) -> Result<Ring> {
        Ring::with_cap(spec, DEFAULT_RING_CAP)
    }

    pub fn with_cap(spec: RingSpec, cap: usize) -> Result<Ring> {
        spec.validate()?;
        let card = spec.cardinality();
        if card > cap as u128 {
            return Err(Error::CapExceeded { what: "ring", size: card, cap: cap as u128 });
        }
        let size = card as usize;
        let arith = match &spec {
            RingSpec::Zmod(m) | RingSpec::Prime(m) => Arith::Zmod(*m as u32),
            RingSpec::Extension { p, modulus } => {
                Arith::Algebra(Algebra::extension(Ring::new(RingSpec::Prime(*p))?, modulus))
            }
            RingSpec::Truncated { base, exponent } => {
                Arith::Algebra(Algebra::truncated(Ring::with_cap((**base).clone(), cap)?, *exponent as usize))
            }
            RingSpec::Dual { base, generators } => {
                Arith::Algebra(Algebra::dual(Ring::with_cap((**base).clone(), cap)?, *generators as usize))
            }
            RingSpec::Product(fs) => {
                let factors = fs
                    .iter()
                    .map(|f| Ring::with_cap(f.clone(), cap))
                    .collect::<Result<Vec<_>>>()?;
                let mut strides = Vec::with_capacity(factors.len());
                let mut acc = 1;
                for r in &factors {
                    strides.push(acc);
                    acc *= r.size();
                }
                let raw_one = strides.iter().sum();
                Arith::Product(Product { factors, strides, raw_one })
            }
        };
        let name = spec.to_string();
        let mut inner = RingInner {
            spec,
            name,
            size,
            arith,
            add_table: None,
            mul_table: None,
            neg_table: Vec::new(),
            inverse: Vec::new(),
            nilpotent: Vec::new(),
            local: None,
        };
        if size <= TABLE_LIMIT {
            let mut add = vec![0; size * size];
            let mut mul = vec![0; size * size];
            for a in 0..size {
                for b in 0..size {
                    add[a * size + b] = inner.compute_add(a as Idx, b as Idx);
                    mul[a * size + b] = inner.compute_mul(a as Idx, b as Idx);
                }
            }
            inner.add_table = Some(add);
            inner.mul_table = Some(mul);
        }
        inner.neg_table = (0..size as Idx).map(|a| inner.compute_neg(a)).collect();
        let ring = Ring(Arc::new(inner));
        let (inverse, nilpotent, local) = ring.classify();
        let mut inner = Arc::try_unwrap(ring.0).expect("ring not yet shared");
        inner.inverse = inverse;
        inner.nilpotent = nilpotent;
        inner.local = local;
        Ok(Ring(Arc::new(inner)))
    }

    /// Parses a spec string and builds the ring.
    pub fn parse(s: &str) -> Result<Ring> {
        Ring::new(s.parse()?)
    }

    fn classify(&self) -> (Vec<Idx>, Vec<bool>, Option<LocalData>) {
        let n = self.size();
        let mut inverse = vec![NO_INVERSE; n];
        for a in 0..n as Idx {
            if inverse[a as usize] != NO_INVERSE {
                continue;
            }
            if let Some(b) = (0..n as Idx).find(|&b| self.mul(a, b) == 1) {
                inverse[a as usize] = b;
                inverse[b as usize] = a;
            }
        }
        let nilpotent: Vec<bool> = (0..n as Idx).map(|a| self.pow(a, n as u64) == 0).collect();
        let non_units: Vec<Idx> = (0..n as Idx).filter(|&a| inverse[a as usize] == NO_INVERSE).collect();
        let mut is_non_unit = vec![false; n];
        for &a in &non_units {
            is_non_unit[a as usize] = true;
        }
        let closed = non_units
            .iter()
            .all(|&a| non_units.iter().all(|&b| is_non_unit[self.add(a, b) as usize]));
        let local = closed.then(|| {
            let mut residue = vec![u32::MAX; n];
            let mut reps = Vec::new();
            for a in 0..n as Idx {
                if residue[a as usize] != u32::MAX {
                    continue;
                }
                let class = reps.len() as u32;
                reps.push(a);
                for &m in &non_units {
                    residue[self.add(a, m) as usize] = class;
                }
            }
            LocalData { maximal: non_units.clone(), residue, residue_reps: reps }
        });
        (inverse, nilpotent, local)
    }

    pub fn spec(&self) -> &RingSpec {
        &self.0.spec
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn size(&self) -> usize {
        self.0.size
    }

    pub fn elements(&self) -> impl Iterator<Item = Idx> + Clone {
        0..self.0.size as Idx
    }

    #[inline]
    pub fn add(&self, a: Idx, b: Idx) -> Idx {
        match &self.0.add_table {
            Some(t) => t[a as usize * self.0.size + b as usize],
            None => self.0.compute_add(a, b),
        }
    }

    #[inline]
    pub fn mul(&self, a: Idx, b: Idx) -> Idx {
        match &self.0.mul_table {
            Some(t) => t[a as usize * self.0.size + b as usize],
            None => self.0.compute_mul(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: Idx) -> Idx {
        self.0.neg_table[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: Idx, b: Idx) -> Idx {
        self.add(a, self.neg(b))
    }

    pub fn pow(&self, a: Idx, mut e: u64) -> Idx {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// The element `n * 1`.
    pub fn from_int(&self, n: i64) -> Idx {
        let mut acc = 0;
        let mut unit = if n < 0 { self.neg(1) } else { 1 };
        let mut k = n.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(acc, unit);
            }
            unit = self.add(unit, unit);
            k >>= 1;
        }
        acc
    }

    pub fn is_unit(&self, a: Idx) -> bool {
        self.0.inverse[a as usize] != NO_INVERSE
    }

    pub fn inverse(&self, a: Idx) -> Option<Idx> {
        let b = self.0.inverse[a as usize];
        (b != NO_INVERSE).then_some(b)
    }

    pub fn is_nilpotent(&self, a: Idx) -> bool {
        self.0.nilpotent[a as usize]
    }

    pub fn units(&self) -> Vec<Idx> {
        self.elements().filter(|&a| self.is_unit(a)).collect()
    }

    pub fn nilpotents(&self) -> Vec<Idx> {
        self.elements().filter(|&a| self.is_nilpotent(a)).collect()
    }

    pub fn local(&self) -> Option<&LocalData> {
        self.0.local.as_ref()
    }

    pub fn is_local(&self) -> bool {
        self.0.local.is_some()
    }

    pub fn is_field(&self) -> bool {
        self.local().is_some_and(|l| l.maximal.len() == 1)
    }

    /// Value of a named generator (`t`, `a1`, ..) as an element, if the ring has one.
    pub fn symbol(&self, name: &str) -> Option<Idx> {
        match &self.0.arith {
            Arith::Algebra(alg) => match alg.symbols.iter().position(|s| s == name) {
                Some(i) if i > 0 => {
                    let mut coeffs = vec![0; alg.dim];
                    coeffs[i] = 1;
                    Some(alg.encode(&coeffs))
                }
                _ => alg.base.symbol(name).map(|b| self.embed_base(b)),
            },
            _ => None,
        }
    }

    fn embed_base(&self, b: Idx) -> Idx {
        match &self.0.arith {
            Arith::Algebra(alg) => {
                let mut coeffs = vec![0; alg.dim];
                coeffs[0] = b;
                alg.encode(&coeffs)
            }
            _ => b,
        }
    }

    /// Factor rings of a product ring (empty for other rings).
    pub fn product_factors(&self) -> &[Ring] {
        match &self.0.arith {
            Arith::Product(p) => &p.factors,
            _ => &[],
        }
    }

    /// Element of a product ring from its factor components.
    pub fn from_components(&self, parts: &[Idx]) -> Result<Idx> {
        match &self.0.arith {
            Arith::Product(p) if p.factors.len() == parts.len() => Ok(p.encode(parts)),
            Arith::Product(p) => Err(Error::ArityMismatch { expected: p.factors.len(), found: parts.len() }),
            _ => Err(Error::Parse(format!("{} is not a product ring", self.name()))),
        }
    }

    /// Factor components of a product-ring element.
    pub fn components(&self, a: Idx) -> Option<Vec<Idx>> {
        match &self.0.arith {
            Arith::Product(p) => Some(p.decode(a)),
            _ => None,
        }
    }

    /// Base ring and coordinates of an element of a coefficient algebra
    /// (extension, truncated or dual ring).
    pub fn algebra_coordinates(&self, a: Idx) -> Option<(Ring, Vec<Idx>)> {
        match &self.0.arith {
            Arith::Algebra(alg) => Some((alg.base.clone(), alg.decode(a))),
            _ => None,
        }
    }

    /// Inverse of [`Ring::algebra_coordinates`].
    pub fn from_algebra_coordinates(&self, coords: &[Idx]) -> Option<Idx> {
        match &self.0.arith {
            Arith::Algebra(alg) if coords.len() == alg.dim => Some(alg.encode(coords)),
            _ => None,
        }
    }

    /// Canonical literal; parenthesized whenever it is not a plain integer.
    pub fn format_elem(&self, a: Idx) -> String {
        match &self.0.arith {
            Arith::Zmod(_) => a.to_string(),
            Arith::Product(p) => {
                let parts: Vec<String> = p
                    .decode(a)
                    .iter()
                    .zip(&p.factors)
                    .map(|(&c, r)| r.format_elem(c))
                    .collect();
                format!("({})", parts.join(","))
            }
            Arith::Algebra(alg) => {
                let coeffs = alg.decode(a);
                let nonzero: Vec<usize> = (0..alg.dim).filter(|&i| coeffs[i] != 0).collect();
                match nonzero.as_slice() {
                    [] => "0".into(),
                    [0] => alg.base.format_elem(coeffs[0]),
                    _ => {
                        let terms: Vec<String> = nonzero
                            .iter()
                            .map(|&i| {
                                let c = alg.base.format_elem(coeffs[i]);
                                match (i, coeffs[i]) {
                                    (0, _) => c,
                                    (_, 1) => alg.symbols[i].clone(),
                                    _ => format!("{c}*{}", alg.symbols[i]),
                                }
                            })
                            .collect();
                        format!("({})", terms.join("+"))
                    }
                }
            }
        }
    }

    pub(crate) fn check_same(&self, other: &Ring) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::MixedRings(self.name().into(), other.name().into()))
        }
    }
}

impl RingInner {
    fn compute_add(&self, a: Idx, b: Idx) -> Idx {
        match &self.arith {
            Arith::Zmod(m) => ((a as u64 + b as u64) % *m as u64) as Idx,
            Arith::Algebra(alg) => {
                let (x, y) = (alg.decode(a), alg.decode(b));
                let sum: Vec<Idx> = x.iter().zip(&y).map(|(&p, &q)| alg.base.add(p, q)).collect();
                alg.encode(&sum)
            }
            Arith::Product(p) => {
                let (x, y) = (p.decode(a), p.decode(b));
                let parts: Vec<Idx> = p.factors.iter().zip(x.iter().zip(&y)).map(|(r, (&s, &t))| r.add(s, t)).collect();
                p.encode(&parts)
            }
        }
    }

    fn compute_mul(&self, a: Idx, b: Idx) -> Idx {
        match &self.arith {
            Arith::Zmod(m) => ((a as u64 * b as u64) % *m as u64) as Idx,
            Arith::Algebra(alg) => alg.mul(a, b),
            Arith::Product(p) => {
                let (x, y) = (p.decode(a), p.decode(b));
                let parts: Vec<Idx> = p.factors.iter().zip(x.iter().zip(&y)).map(|(r, (&s, &t))| r.mul(s, t)).collect();
                p.encode(&parts)
            }
        }
    }

    fn compute_neg(&self, a: Idx) -> Idx {
        match &self.arith {
            Arith::Zmod(m) => ((*m - a % *m) % *m) as Idx,
            Arith::Algebra(alg) => {
                let neg: Vec<Idx> = alg.decode(a).iter().map(|&c| alg.base.neg(c)).collect();
                alg.encode(&neg)
            }
            Arith::Product(p) => {
                let parts: Vec<Idx> = p.factors.iter().zip(p.decode(a)).map(|(r, c)| r.neg(c)).collect();
                p.encode(&parts)
            }
        }
    }
}

impl Algebra {
    fn extension(base: Ring, modulus: &[u64]) -> Algebra {
        let dim = modulus.len() - 1;
        // powers[m] = t^m reduced, for m < 2 * dim - 1
        let mut powers: Vec<Vec<Idx>> = Vec::new();
        let mut cur = vec![0; dim];
        cur[0] = 1;
        for _ in 0..(2 * dim).max(2) {
            powers.push(cur.clone());
            let mut next = vec![0; dim];
            next[1..dim].copy_from_slice(&cur[..dim - 1]);
            let top = cur[dim - 1];
            if top != 0 {
                for (l, slot) in next.iter_mut().enumerate() {
                    let m = base.from_int(modulus[l] as i64);
                    *slot = base.sub(*slot, base.mul(top, m));
                }
            }
            cur = next;
        }
        let structure = (0..dim * dim)
            .map(|ij| {
                let (i, j) = (ij / dim, ij % dim);
                powers[i + j]
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(k, &c)| (k, c))
                    .collect()
            })
            .collect();
        Algebra { base, dim, structure, symbols: power_symbols(dim) }
    }

    fn truncated(base: Ring, exponent: usize) -> Algebra {
        let dim = exponent;
        let structure = (0..dim * dim)
            .map(|ij| {
                let k = ij / dim + ij % dim;
                if k < dim {
                    vec![(k, 1)]
                } else {
                    vec![]
                }
            })
            .collect();
        Algebra { base, dim, structure, symbols: power_symbols(dim) }
    }

    fn dual(base: Ring, generators: usize) -> Algebra {
        let dim = generators + 1;
        let structure = (0..dim * dim)
            .map(|ij| match (ij / dim, ij % dim) {
                (0, j) => vec![(j, 1)],
                (i, 0) => vec![(i, 1)],
                _ => vec![],
            })
            .collect();
        let symbols = std::iter::once("1".to_string())
            .chain((1..dim).map(|i| format!("a{i}")))
            .collect();
        Algebra { base, dim, structure, symbols }
    }

    fn decode(&self, mut a: Idx) -> Vec<Idx> {
        let b = self.base.size() as Idx;
        (0..self.dim)
            .map(|_| {
                let c = a % b;
                a /= b;
                c
            })
            .collect()
    }

    fn encode(&self, coeffs: &[Idx]) -> Idx {
        let b = self.base.size() as Idx;
        coeffs.iter().rev().fold(0, |acc, &c| acc * b + c)
    }

    fn mul(&self, a: Idx, b: Idx) -> Idx {
        let (x, y) = (self.decode(a), self.decode(b));
        let mut out = vec![0; self.dim];
        for (i, &xi) in x.iter().enumerate().filter(|(_, &c)| c != 0) {
            for (j, &yj) in y.iter().enumerate().filter(|(_, &c)| c != 0) {
                let prod = self.base.mul(xi, yj);
                for &(k, c) in &self.structure[i * self.dim + j] {
                    out[k] = self.base.add(out[k], self.base.mul(prod, c));
                }
            }
        }
        self.encode(&out)
    }
}

fn power_symbols(dim: usize) -> Vec<String> {
    (0..dim)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "t".to_string(),
            _ => format!("t^{i}"),
        })
        .collect()
}

impl Product {
    fn raw_to_canonical(&self, raw: usize) -> Idx {
        if raw == 1 {
            self.raw_one as Idx
        } else if raw == self.raw_one {
            1
        } else {
            raw as Idx
        }
    }

    fn decode(&self, a: Idx) -> Vec<Idx> {
        // the swap of 1 and raw_one is an involution
        let raw = self.raw_to_canonical(a as usize) as usize;
        self.factors
            .iter()
            .zip(&self.strides)
            .map(|(r, &s)| ((raw / s) % r.size()) as Idx)
            .collect()
    }

    fn encode(&self, parts: &[Idx]) -> Idx {
        let raw: usize = parts.iter().zip(&self.strides).map(|(&c, &s)| c as usize * s).sum();
        self.raw_to_canonical(raw)
    }
}

/// An element tagged with its ring, for checked arithmetic across API boundaries.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Elem {
    ring: Ring,
    idx: Idx,
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.ring.format_elem(self.idx), self.ring)
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ring.format_elem(self.idx))
    }
}

/// Binary ring operation selector for [`ring_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingOp {
    Add,
    Mul,
    Sub,
    /// Negates the first operand; the second is only checked for ring agreement.
    Neg,
}

impl Elem {
    pub fn new(ring: &Ring, idx: Idx) -> Result<Elem> {
        if (idx as usize) < ring.size() {
            Ok(Elem { ring: ring.clone(), idx })
        } else {
            Err(Error::InvalidStructure(format!("index {idx} out of range for {ring}")))
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn index(&self) -> Idx {
        self.idx
    }
}

pub fn ring_arith(a: &Elem, b: &Elem, op: RingOp) -> Result<Elem> {
    a.ring.check_same(&b.ring)?;
    let r = &a.ring;
    let idx = match op {
        RingOp::Add => r.add(a.idx, b.idx),
        RingOp::Mul => r.mul(a.idx, b.idx),
        RingOp::Sub => r.sub(a.idx, b.idx),
        RingOp::Neg => r.neg(a.idx),
    };
    Ok(Elem { ring: r.clone(), idx })
}

pub fn unit_inverse(a: &Elem) -> Result<Elem> {
    a.ring
        .inverse(a.idx)
        .map(|idx| Elem { ring: a.ring.clone(), idx })
        .ok_or_else(|| Error::NotAUnit(format!("{a} in {}", a.ring)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(s: &str) -> Ring {
        Ring::parse(s).unwrap()
    }

    #[test]
    fn z4_classification() {
        let r = ring("Z4");
        assert_eq!(r.size(), 4);
        assert_eq!(r.units(), vec![1, 3]);
        assert_eq!(r.nilpotents(), vec![0, 2]);
        let l = r.local().unwrap();
        assert_eq!(l.maximal_ideal(), &[0, 2]);
        assert_eq!(l.residue_size(), 2);
    }

    #[test]
    fn f2_is_a_field() {
        let r = ring("F2");
        assert_eq!(r.units(), vec![1]);
        assert_eq!(r.nilpotents(), vec![0]);
        assert!(r.is_field());
        assert_eq!(r.local().unwrap().residue_size(), 2);
    }

    #[test]
    fn z4_times_f3_is_not_local() {
        let r = ring("Z4xF3");
        assert_eq!(r.size(), 12);
        assert!(!r.is_local());
        assert_eq!(r.units().len(), 4);
    }

    #[test]
    fn arithmetic_examples() {
        let z4 = ring("Z4");
        assert_eq!(z4.add(2, 2), 0);
        assert_eq!(z4.mul(3, 3), 1);
        let f4 = ring("F2^2:t^2+t+1");
        let t = f4.symbol("t").unwrap();
        assert_eq!(f4.mul(t, t), f4.add(t, 1));
        assert_eq!(f4.format_elem(f4.mul(t, t)), "(1+t)");
        assert!(f4.is_field());
    }

    #[test]
    fn unit_inverse_examples() {
        let check = |spec: &str, a: Idx, expect: Idx| {
            let r = ring(spec);
            let e = Elem::new(&r, a).unwrap();
            assert_eq!(unit_inverse(&e).unwrap().index(), expect);
        };
        check("Z4", 3, 3);
        check("F3", 2, 2);
        check("Z9", 2, 5);
        let z4 = ring("Z4");
        assert!(matches!(unit_inverse(&Elem::new(&z4, 2).unwrap()), Err(Error::NotAUnit(_))));
    }

    #[test]
    fn mixed_ring_arithmetic_is_rejected() {
        let a = Elem::new(&ring("Z4"), 1).unwrap();
        let b = Elem::new(&ring("F3"), 1).unwrap();
        assert!(matches!(ring_arith(&a, &b, RingOp::Add), Err(Error::MixedRings(..))));
        let c = Elem::new(&ring("Z4"), 3).unwrap();
        assert_eq!(ring_arith(&a, &c, RingOp::Add).unwrap().index(), 0);
    }

    #[test]
    fn product_identity_is_index_one() {
        let r = ring("Z4xF3");
        assert_eq!(r.components(1).unwrap(), vec![1, 1]);
        assert_eq!(r.components(0).unwrap(), vec![0, 0]);
        for a in r.elements() {
            assert_eq!(r.mul(a, 1), a);
            assert_eq!(r.add(a, 0), a);
        }
    }

    #[test]
    fn ring_axioms_hold_exhaustively() {
        for spec in ["Z4", "Z6", "F3", "F2^2:t^2+t+1", "F2[t]/t^2", "Z4[t]/t^2", "F2[a1..a2]dual", "Z4xF3", "Z2xZ2"] {
            let r = ring(spec);
            assert!(r.size() <= 64);
            for a in r.elements() {
                for b in r.elements() {
                    assert_eq!(r.add(a, b), r.add(b, a), "{spec}");
                    assert_eq!(r.mul(a, b), r.mul(b, a), "{spec}");
                    for c in r.elements() {
                        assert_eq!(r.mul(r.mul(a, b), c), r.mul(a, r.mul(b, c)), "{spec}");
                        assert_eq!(r.add(r.add(a, b), c), r.add(a, r.add(b, c)), "{spec}");
                        assert_eq!(r.mul(a, r.add(b, c)), r.add(r.mul(a, b), r.mul(a, c)), "{spec}");
                    }
                }
                assert_eq!(r.add(a, r.neg(a)), 0);
                assert_eq!(r.is_unit(a), r.elements().any(|b| r.mul(a, b) == 1));
                let mut p = a;
                let mut nil = false;
                for _ in 0..r.size() {
                    if p == 0 {
                        nil = true;
                        break;
                    }
                    p = r.mul(p, a);
                }
                assert_eq!(r.is_nilpotent(a), nil || p == 0, "{spec}");
            }
            if let Some(l) = r.local() {
                let q = l.residue_size();
                assert_eq!(r.size() % l.maximal_ideal().len(), 0);
                assert_eq!(q, r.size() / l.maximal_ideal().len());
                assert_eq!(crate::ring::factorize(q as u64).len(), 1);
                for a in r.elements() {
                    assert_eq!(r.is_unit(a), l.residue(a) != 0);
                }
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let err = Ring::with_cap("Z100".parse().unwrap(), 64).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { .. }));
        assert!(Ring::new("Z4097".parse().unwrap()).is_err());
    }

    #[test]
    fn from_int_reduces() {
        let r = ring("Z9");
        assert_eq!(r.from_int(-1), 8);
        assert_eq!(r.from_int(20), 2);
        let f4 = ring("F2^2:t^2+t+1");
        assert_eq!(f4.from_int(2), 0);
    }
}
