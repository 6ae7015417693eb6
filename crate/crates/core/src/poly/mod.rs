//! Exact sparse multivariate polynomials over a [`Ring`].
//!
//! Identity of polynomials and equality of their induced functions are kept
//! apart: nothing here reduces a polynomial modulo the function kernel.

mod criteria;
mod functable;
mod parse;

use std::collections::BTreeMap;
use std::fmt;

pub use criteria::{
    automorphism_inverse, compositional_inverse, is_automorphism, is_permutation_poly,
    is_permutation_poly_brute, is_unit_poly, is_unit_valued, lagrange_interpolate, nobauer_test,
    unit_poly_inverse,
};
pub(crate) use functable::domain_size;
pub use functable::{func_equiv, func_of, point_index, point_of, FuncTable, DEFAULT_DOMAIN_CAP};

use crate::error::{Error, Result};
use crate::ring::{Elem, Idx, Ring};

/// Exponent vector; its length is the variable count.
pub type Monomial = Vec<u32>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    ring: Ring,
    nvars: usize,
    terms: BTreeMap<Monomial, Idx>,
}

/// Selector for [`poly_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

impl MultiPoly {
    pub fn zero(ring: &Ring, nvars: usize) -> MultiPoly {
        MultiPoly { ring: ring.clone(), nvars, terms: BTreeMap::new() }
    }

    pub fn constant(ring: &Ring, nvars: usize, c: Idx) -> MultiPoly {
        MultiPoly::monomial(ring, nvars, vec![0; nvars], c)
    }

    pub fn one(ring: &Ring, nvars: usize) -> MultiPoly {
        MultiPoly::constant(ring, nvars, 1)
    }

    /// The variable `x_{i+1}` (zero-based `i`).
    pub fn var(ring: &Ring, nvars: usize, i: usize) -> MultiPoly {
        assert!(i < nvars, "variable x{} outside {nvars} variables", i + 1);
        let mut e = vec![0; nvars];
        e[i] = 1;
        MultiPoly::monomial(ring, nvars, e, 1)
    }

    pub fn monomial(ring: &Ring, nvars: usize, exps: Monomial, c: Idx) -> MultiPoly {
        debug_assert_eq!(exps.len(), nvars);
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(exps, c);
        }
        MultiPoly { ring: ring.clone(), nvars, terms }
    }

    /// Builds a polynomial by summing the given terms.
    pub fn from_terms<I>(ring: &Ring, nvars: usize, terms: I) -> Result<MultiPoly>
    where
        I: IntoIterator<Item = (Monomial, Idx)>,
    {
        let mut p = MultiPoly::zero(ring, nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::ArityMismatch { expected: nvars, found: e.len() });
            }
            if c as usize >= ring.size() {
                return Err(Error::InvalidStructure(format!("coefficient index {c} outside {ring}")));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// One-variable polynomial from coefficients in ascending degree.
    pub fn univariate(ring: &Ring, coeffs: &[Idx]) -> MultiPoly {
        let mut p = MultiPoly::zero(ring, 1);
        for (d, &c) in coeffs.iter().enumerate() {
            p.add_term(vec![d as u32], c);
        }
        p
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, Idx)> {
        self.terms.iter().map(|(e, &c)| (e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exps: &[u32]) -> Idx {
        self.terms.get(exps).copied().unwrap_or(0)
    }

    pub fn constant_term(&self) -> Idx {
        self.coeff(&vec![0; self.nvars])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    /// Coefficients in ascending degree of a one-variable polynomial.
    pub fn univariate_coeffs(&self) -> Vec<Idx> {
        assert_eq!(self.nvars, 1);
        let d = self.degree_in(0) as usize;
        let mut out = vec![0; if self.is_zero() { 0 } else { d + 1 }];
        for (e, &c) in &self.terms {
            out[e[0] as usize] = c;
        }
        out
    }

    fn add_term(&mut self, e: Monomial, c: Idx) {
        if c == 0 {
            return;
        }
        let r = &self.ring;
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = r.add(*o.get(), c);
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_compatible(&self, other: &MultiPoly) -> Result<()> {
        self.ring.check_same(&other.ring)?;
        if self.nvars != other.nvars {
            return Err(Error::ArityMismatch { expected: self.nvars, found: other.nvars });
        }
        Ok(())
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        debug_assert!(self.check_compatible(other).is_ok());
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn neg(&self) -> MultiPoly {
        let terms = self.terms.iter().map(|(e, &c)| (e.clone(), self.ring.neg(c))).collect();
        MultiPoly { ring: self.ring.clone(), nvars: self.nvars, terms }
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        debug_assert!(self.check_compatible(other).is_ok());
        let r = &self.ring;
        let mut out = MultiPoly::zero(r, self.nvars);
        for (e1, &c1) in &self.terms {
            for (e2, &c2) in &other.terms {
                let c = r.mul(c1, c2);
                if c != 0 {
                    out.add_term(e1.iter().zip(e2).map(|(a, b)| a + b).collect(), c);
                }
            }
        }
        out
    }

    pub fn scalar_mul(&self, c: Idx) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.ring, self.nvars);
        for (e, &a) in &self.terms {
            out.add_term(e.clone(), self.ring.mul(c, a));
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> MultiPoly {
        let mut base = self.clone();
        let mut acc = MultiPoly::one(&self.ring, self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn evaluate(&self, point: &[Idx]) -> Result<Idx> {
        if point.len() != self.nvars {
            return Err(Error::ArityMismatch { expected: self.nvars, found: point.len() });
        }
        if let Some(&bad) = point.iter().find(|&&a| a as usize >= self.ring.size()) {
            return Err(Error::InvalidStructure(format!("point coordinate {bad} outside {}", self.ring)));
        }
        Ok(self.eval(point))
    }

    /// Evaluation without argument checks.
    pub fn eval(&self, point: &[Idx]) -> Idx {
        let r = &self.ring;
        let mut acc = 0;
        for (e, &c) in &self.terms {
            let mut t = c;
            for (&a, &k) in point.iter().zip(e) {
                if k > 0 {
                    t = r.mul(t, r.pow(a, k as u64));
                }
            }
            acc = r.add(acc, t);
        }
        acc
    }

    /// Substitutes `args[i]` for `x_{i+1}`. All arguments must share one ring
    /// and one variable count, which becomes the variable count of the result.
    pub fn substitute(&self, args: &[MultiPoly]) -> Result<MultiPoly> {
        let target = match args.first() {
            Some(a) => a.nvars,
            None => 0,
        };
        self.substitute_into(args, target)
    }

    /// As [`MultiPoly::substitute`], with an explicit result variable count
    /// (needed when `args` is empty).
    pub fn substitute_into(&self, args: &[MultiPoly], target_nvars: usize) -> Result<MultiPoly> {
        if args.len() != self.nvars {
            return Err(Error::ArityMismatch { expected: self.nvars, found: args.len() });
        }
        for a in args {
            self.ring.check_same(&a.ring)?;
            if a.nvars != target_nvars {
                return Err(Error::ArityMismatch { expected: target_nvars, found: a.nvars });
            }
        }
        Ok(self.subst(args, target_nvars))
    }

    pub(crate) fn subst(&self, args: &[MultiPoly], target_nvars: usize) -> MultiPoly {
        let r = &self.ring;
        let mut powers: Vec<Vec<MultiPoly>> = args
            .iter()
            .map(|_| vec![MultiPoly::one(r, target_nvars)])
            .collect();
        for (v, arg) in args.iter().enumerate() {
            let need = self.degree_in(v) as usize;
            while powers[v].len() <= need {
                let next = powers[v].last().unwrap().mul(arg);
                powers[v].push(next);
            }
        }
        let mut out = MultiPoly::zero(r, target_nvars);
        for (e, &c) in &self.terms {
            let mut t = MultiPoly::constant(r, target_nvars, c);
            for (v, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = t.mul(&powers[v][k as usize]);
                    if t.is_zero() {
                        break;
                    }
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// One-variable composition `self(g)`.
    pub fn compose(&self, g: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, 1, "compose expects a one-variable outer polynomial");
        self.subst(std::slice::from_ref(g), g.nvars)
    }

    /// Formal partial derivative with respect to `x_{var+1}`.
    pub fn derivative(&self, var: usize) -> Result<MultiPoly> {
        if var >= self.nvars {
            return Err(Error::ArityMismatch { expected: self.nvars, found: var + 1 });
        }
        let r = &self.ring;
        let mut out = MultiPoly::zero(r, self.nvars);
        for (e, &c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[var] -= 1;
            out.add_term(e2, r.mul(r.from_int(e[var] as i64), c));
        }
        Ok(out)
    }

    /// Re-reads the polynomial in `nvars >= self.nvars()` variables.
    pub fn lift(&self, nvars: usize) -> MultiPoly {
        assert!(nvars >= self.nvars);
        let terms = self
            .terms
            .iter()
            .map(|(e, &c)| {
                let mut e2 = e.clone();
                e2.resize(nvars, 0);
                (e2, c)
            })
            .collect();
        MultiPoly { ring: self.ring.clone(), nvars, terms }
    }

    /// Drops trailing variables that do not occur; fails if one does.
    pub fn restrict(&self, nvars: usize) -> Option<MultiPoly> {
        if nvars > self.nvars {
            return None;
        }
        let mut terms = BTreeMap::new();
        for (e, &c) in &self.terms {
            if e[nvars..].iter().any(|&x| x != 0) {
                return None;
            }
            terms.insert(e[..nvars].to_vec(), c);
        }
        Some(MultiPoly { ring: self.ring.clone(), nvars, terms })
    }

    /// Maps each coefficient through `f` into `ring` (a ring homomorphism for CRT use).
    pub fn map_coeffs(&self, ring: &Ring, f: impl Fn(Idx) -> Idx) -> MultiPoly {
        let mut out = MultiPoly::zero(ring, self.nvars);
        for (e, &c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    /// Coefficient-wise split `self = a + x_var * b` where `a`, `b` are free of `x_var`;
    /// `None` if `x_var` occurs with degree above one.
    pub fn split_linear(&self, var: usize) -> Option<(MultiPoly, MultiPoly)> {
        let mut a = MultiPoly::zero(&self.ring, self.nvars);
        let mut b = MultiPoly::zero(&self.ring, self.nvars);
        for (e, &c) in &self.terms {
            match e[var] {
                0 => a.add_term(e.clone(), c),
                1 => {
                    let mut e2 = e.clone();
                    e2[var] = 0;
                    b.add_term(e2, c);
                }
                _ => return None,
            }
        }
        Some((a, b))
    }

    pub fn parse(ring: &Ring, nvars: usize, text: &str) -> Result<MultiPoly> {
        parse::parse_poly(ring, nvars, text)
    }
}

/// Checked binary arithmetic.
pub fn poly_arith(f: &MultiPoly, g: &MultiPoly, op: PolyOp) -> Result<MultiPoly> {
    f.check_compatible(g)?;
    Ok(match op {
        PolyOp::Add => f.add(g),
        PolyOp::Sub => f.sub(g),
        PolyOp::Mul => f.mul(g),
    })
}

pub fn scalar_mul(f: &MultiPoly, c: &Elem) -> Result<MultiPoly> {
    f.ring.check_same(c.ring())?;
    Ok(f.scalar_mul(c.index()))
}

pub use parse::{parse_element, parse_point, split_tuple};

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut terms: Vec<(&Monomial, Idx)> = self.terms.iter().map(|(e, &c)| (e, c)).collect();
        terms.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        let parts: Vec<String> = terms
            .into_iter()
            .map(|(e, c)| {
                let factors: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(i, &k)| if k == 1 { format!("x{}", i + 1) } else { format!("x{}^{k}", i + 1) })
                    .collect();
                let coeff = self.ring.format_elem(c);
                if factors.is_empty() {
                    coeff
                } else if c == 1 {
                    factors.join("*")
                } else {
                    format!("{coeff}*{}", factors.join("*"))
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}; {}]({})", self.ring, self.nvars, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z4() -> Ring {
        Ring::parse("Z4").unwrap()
    }

    fn p(r: &Ring, n: usize, s: &str) -> MultiPoly {
        MultiPoly::parse(r, n, s).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let r = z4();
        let f = p(&r, 1, "1 + 2*x1");
        assert_eq!(poly_arith(&f, &f, PolyOp::Mul).unwrap(), MultiPoly::one(&r, 1));
        let zero = MultiPoly::zero(&r, 1);
        assert_eq!(poly_arith(&f, &zero, PolyOp::Add).unwrap(), f);
        let g = p(&r, 1, "2*x1 + 1");
        assert_eq!(scalar_mul(&g, &Elem::new(&r, 2).unwrap()).unwrap(), MultiPoly::constant(&r, 1, 2));
    }

    #[test]
    fn arithmetic_rejects_mismatches() {
        let r = z4();
        let f3 = Ring::parse("F3").unwrap();
        let a = p(&r, 1, "x1");
        let b = p(&f3, 1, "x1");
        assert!(matches!(poly_arith(&a, &b, PolyOp::Add), Err(Error::MixedRings(..))));
        let c = p(&r, 2, "x2");
        assert!(matches!(poly_arith(&a, &c, PolyOp::Add), Err(Error::ArityMismatch { .. })));
    }

    #[test]
    fn evaluation_examples() {
        let r = z4();
        assert_eq!(p(&r, 1, "x1^2 - x1 + 1").evaluate(&[2]).unwrap(), 3);
        assert_eq!(MultiPoly::constant(&r, 2, 3).evaluate(&[1, 2]).unwrap(), 3);
        let f2 = Ring::parse("F2").unwrap();
        assert_eq!(p(&f2, 1, "x1^2 + x1").evaluate(&[1]).unwrap(), 0);
        assert!(matches!(p(&r, 1, "x1").evaluate(&[1, 1]), Err(Error::ArityMismatch { .. })));
    }

    #[test]
    fn substitution_examples() {
        let r = z4();
        let f = p(&r, 2, "x1*x2");
        let args = [p(&r, 2, "x2"), p(&r, 2, "x1")];
        assert_eq!(f.substitute(&args).unwrap(), f);
        let sq = p(&r, 1, "x1^2");
        let out = sq.substitute(&[p(&r, 2, "x1 + x2")]).unwrap();
        assert_eq!(out, p(&r, 2, "x1^2 + 2*x1*x2 + x2^2"));
        let g = p(&r, 2, "3*x1^2*x2 + 2*x1 + 1");
        let ids = [MultiPoly::var(&r, 2, 0), MultiPoly::var(&r, 2, 1)];
        assert_eq!(g.substitute(&ids).unwrap(), g);
        assert!(g.substitute(&ids[..1]).is_err());
    }

    #[test]
    fn derivative_examples() {
        let r = z4();
        assert_eq!(p(&r, 1, "x1 + 2*x1^2").derivative(0).unwrap(), MultiPoly::one(&r, 1));
        assert!(MultiPoly::constant(&r, 1, 3).derivative(0).unwrap().is_zero());
        let z9 = Ring::parse("Z9").unwrap();
        assert_eq!(p(&z9, 1, "x1^3").derivative(0).unwrap(), p(&z9, 1, "3*x1^2"));
        assert!(p(&r, 1, "x1").derivative(1).is_err());
    }

    #[test]
    fn display_round_trips() {
        let r = z4();
        let f = p(&r, 2, "3*x1^2*x2 + 2*x1 + 1");
        assert_eq!(f.to_string(), "3*x1^2*x2 + 2*x1 + 1");
        assert_eq!(p(&r, 2, &f.to_string()), f);
        assert_eq!(MultiPoly::zero(&r, 1).to_string(), "0");
        let dual = Ring::parse("Z4[a1..a1]dual").unwrap();
        let g = p(&dual, 1, "(1+2*a1)*x1 + a1");
        assert_eq!(p(&dual, 1, &g.to_string()), g);
    }

    #[test]
    fn split_linear_recovers_components() {
        let r = z4();
        let f = p(&r, 2, "x1 + x2*(1+2*x1)");
        let (a, b) = f.split_linear(1).unwrap();
        assert_eq!(a, p(&r, 2, "x1"));
        assert_eq!(b, p(&r, 2, "1 + 2*x1"));
        assert!(p(&r, 2, "x2^2").split_linear(1).is_none());
    }
}
