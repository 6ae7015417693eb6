//! The triangular monoid `MT_n` in factored form.
//!
//! An element is `(1:f1)(2:u2;f2)...(n:un;fn)`, i.e. the vector-polynomial
//! `(f1, f2 + x2*u2, ..., fn + xn*un)` with `fi, ui` in `x1..x(i-1)`.
//! Composition follows `(f o g)_i = f_i(g)`.

mod json;

use std::fmt;

pub use json::{TriJson, VecPolyJson};

use crate::error::{Error, Result};
use crate::poly::{
    automorphism_inverse, func_equiv, func_of, is_automorphism, is_permutation_poly, is_unit_poly,
    is_unit_valued, split_tuple, unit_poly_inverse, MultiPoly,
};
use crate::ring::{Idx, Ring};

/// Level `i >= 2` of a triangular element: the pair `(f_i, u_i)` in `i-1` variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Level {
    pub f: MultiPoly,
    pub u: MultiPoly,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TriElem {
    ring: Ring,
    f1: MultiPoly,
    levels: Vec<Level>,
}

/// An ordered list of `n` polynomials in `n` variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VecPoly {
    ring: Ring,
    components: Vec<MultiPoly>,
}

impl VecPoly {
    pub fn new(ring: &Ring, components: Vec<MultiPoly>) -> Result<VecPoly> {
        let n = components.len();
        for c in &components {
            ring.check_same(c.ring())?;
            if c.nvars() != n {
                return Err(Error::ArityMismatch { expected: n, found: c.nvars() });
            }
        }
        Ok(VecPoly { ring: ring.clone(), components })
    }

    /// Reads `(p1, .., pn)` with each component in `n` variables.
    pub fn parse(ring: &Ring, n: usize, text: &str) -> Result<VecPoly> {
        let parts = split_tuple(text)?;
        if parts.len() != n {
            return Err(Error::ArityMismatch { expected: n, found: parts.len() });
        }
        let components = parts.iter().map(|p| MultiPoly::parse(ring, n, p)).collect::<Result<Vec<_>>>()?;
        VecPoly::new(ring, components)
    }

    pub fn identity(ring: &Ring, n: usize) -> VecPoly {
        VecPoly { ring: ring.clone(), components: (0..n).map(|i| MultiPoly::var(ring, n, i)).collect() }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn n(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[MultiPoly] {
        &self.components
    }

    /// Componentwise substitution `self o other`.
    pub fn compose(&self, other: &VecPoly) -> Result<VecPoly> {
        if self.n() != other.n() {
            return Err(Error::ArityMismatch { expected: self.n(), found: other.n() });
        }
        let components = self
            .components
            .iter()
            .map(|c| c.substitute(&other.components))
            .collect::<Result<Vec<_>>>()?;
        Ok(VecPoly { ring: self.ring.clone(), components })
    }

    pub fn apply(&self, point: &[Idx]) -> Result<Vec<Idx>> {
        self.components.iter().map(|c| c.evaluate(point)).collect()
    }
}

impl fmt::Display for VecPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

fn violation(index: usize, reason: String) -> Error {
    Error::MembershipViolation { index, reason }
}

impl TriElem {
    /// Validating constructor. `levels[k]` is level `k + 2` and lives in `k + 1` variables.
    pub fn new(f1: MultiPoly, levels: Vec<Level>) -> Result<TriElem> {
        let t = TriElem::check_shape(f1, levels)?;
        t.validate(None)?;
        Ok(t)
    }

    /// Constructor that checks only ring and arity, deferring the membership
    /// checks to debug builds. Meant for bulk enumeration of known members.
    pub fn trusted(f1: MultiPoly, levels: Vec<Level>) -> TriElem {
        let t = TriElem::check_shape(f1, levels).expect("malformed triangular element");
        debug_assert!(t.validate(None).is_ok(), "trusted element fails membership: {t}");
        t
    }

    fn check_shape(f1: MultiPoly, levels: Vec<Level>) -> Result<TriElem> {
        let ring = f1.ring().clone();
        if f1.nvars() != 1 {
            return Err(Error::ArityMismatch { expected: 1, found: f1.nvars() });
        }
        for (k, l) in levels.iter().enumerate() {
            ring.check_same(l.f.ring())?;
            ring.check_same(l.u.ring())?;
            for p in [&l.f, &l.u] {
                if p.nvars() != k + 1 {
                    return Err(Error::ArityMismatch { expected: k + 1, found: p.nvars() });
                }
            }
        }
        Ok(TriElem { ring, f1, levels })
    }

    /// Checks that `f1` permutes `R` and each `u_i` is unit-valued.
    pub fn validate(&self, cap: Option<u128>) -> Result<()> {
        if !is_permutation_poly(&self.f1)? {
            return Err(violation(1, format!("f1 = {} is not a permutation polynomial", self.f1)));
        }
        for (k, l) in self.levels.iter().enumerate() {
            if !is_unit_valued(&l.u, cap)? {
                return Err(violation(k + 2, format!("u{} = {} is not unit-valued", k + 2, l.u)));
            }
        }
        Ok(())
    }

    pub fn identity(ring: &Ring, n: usize) -> TriElem {
        assert!(n >= 1);
        let levels = (1..n)
            .map(|k| Level { f: MultiPoly::zero(ring, k), u: MultiPoly::one(ring, k) })
            .collect();
        TriElem { ring: ring.clone(), f1: MultiPoly::var(ring, 1, 0), levels }
    }

    /// The factor `(1:f)` in `n` variables.
    pub fn factor1(n: usize, f: MultiPoly) -> Result<TriElem> {
        let mut t = TriElem::identity(f.ring(), n);
        t.f1 = f;
        t.validate(None)?;
        Ok(t)
    }

    /// The factor `(i:u;f)` in `n` variables, `2 <= i <= n`.
    pub fn factor(n: usize, i: usize, u: MultiPoly, f: MultiPoly) -> Result<TriElem> {
        if i < 2 || i > n {
            return Err(Error::InvalidStructure(format!("level {i} outside 2..={n}")));
        }
        let mut levels = TriElem::identity(f.ring(), n).levels;
        levels[i - 2] = Level { f, u };
        let f1 = MultiPoly::var(levels[0].f.ring(), 1, 0);
        TriElem::new(f1, levels)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn n(&self) -> usize {
        self.levels.len() + 1
    }

    pub fn f1(&self) -> &MultiPoly {
        &self.f1
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    /// Level `i` for `2 <= i <= n`.
    pub fn level(&self, i: usize) -> &Level {
        &self.levels[i - 2]
    }

    pub fn is_identity(&self) -> bool {
        *self == TriElem::identity(&self.ring, self.n())
    }

    /// The first `count` components `f1, f2 + x2 u2, ..`, each lifted to `nvars` variables.
    fn components_in(&self, count: usize, nvars: usize) -> Vec<MultiPoly> {
        let mut out = Vec::with_capacity(count);
        out.push(self.f1.lift(nvars));
        for (k, l) in self.levels.iter().take(count.saturating_sub(1)).enumerate() {
            let i = k + 2;
            let xi = MultiPoly::var(&self.ring, i, i - 1);
            let c = l.f.lift(i).add(&xi.mul(&l.u.lift(i)));
            out.push(c.lift(nvars));
        }
        out
    }

    pub fn to_vecpoly(&self) -> VecPoly {
        VecPoly { ring: self.ring.clone(), components: self.components_in(self.n(), self.n()) }
    }

    /// Recovers the factored form; component `i` must be `f_i + x_i u_i`
    /// with `f_i, u_i` free of `x_i..x_n`.
    pub fn from_vecpoly(v: &VecPoly) -> Result<TriElem> {
        let n = v.n();
        if n == 0 {
            return Err(Error::NotTriangular("empty vector-polynomial".into()));
        }
        let shape = |i: usize| Error::NotTriangular(format!("component {i} = {}", v.components[i - 1]));
        let f1 = v.components[0].restrict(1).ok_or_else(|| shape(1))?;
        let mut levels = Vec::with_capacity(n - 1);
        for i in 2..=n {
            let c = &v.components[i - 1];
            let (a, b) = c.split_linear(i - 1).ok_or_else(|| shape(i))?;
            let f = a.restrict(i - 1).ok_or_else(|| shape(i))?;
            let u = b.restrict(i - 1).ok_or_else(|| shape(i))?;
            levels.push(Level { f, u });
        }
        TriElem::new(f1, levels)
    }

    /// Evaluates at a point of `R^n`.
    pub fn apply(&self, point: &[Idx]) -> Result<Vec<Idx>> {
        if point.len() != self.n() {
            return Err(Error::ArityMismatch { expected: self.n(), found: point.len() });
        }
        if let Some(&bad) = point.iter().find(|&&a| a as usize >= self.ring.size()) {
            return Err(Error::InvalidStructure(format!("coordinate {bad} outside {}", self.ring)));
        }
        Ok(self.apply_unchecked(point))
    }

    fn apply_unchecked(&self, point: &[Idx]) -> Vec<Idx> {
        let r = &self.ring;
        let mut out = Vec::with_capacity(point.len());
        out.push(self.f1.eval(&point[..1]));
        for (k, l) in self.levels.iter().enumerate() {
            let prefix = &point[..k + 1];
            out.push(r.add(l.f.eval(prefix), r.mul(point[k + 1], l.u.eval(prefix))));
        }
        out
    }

    /// The unique `a` with `self.apply(a) == target`, by back-substitution.
    pub fn solve_preimage(&self, target: &[Idx]) -> Result<Vec<Idx>> {
        if target.len() != self.n() {
            return Err(Error::ArityMismatch { expected: self.n(), found: target.len() });
        }
        let r = &self.ring;
        let a1 = r
            .elements()
            .find(|&a| self.f1.eval(&[a]) == target[0])
            .ok_or_else(|| violation(1, format!("f1 = {} misses {}", self.f1, target[0])))?;
        let mut out = vec![a1];
        for (k, l) in self.levels.iter().enumerate() {
            let u = l.u.eval(&out);
            let inv = r
                .inverse(u)
                .ok_or_else(|| violation(k + 2, format!("u{} takes non-unit value", k + 2)))?;
            let diff = r.sub(target[k + 1], l.f.eval(&out));
            out.push(r.mul(diff, inv));
        }
        Ok(out)
    }

    /// The induced permutation of `R^n` as a table over row-major point indices.
    pub fn perm_table(&self, cap: Option<u128>) -> Result<Vec<u32>> {
        crate::poly::domain_size(&self.ring, self.n(), cap.unwrap_or(crate::poly::DEFAULT_DOMAIN_CAP))?;
        let f1 = func_of(&self.f1, None)?.into_values();
        let mut tables = Vec::with_capacity(self.n() - 1);
        for l in &self.levels {
            tables.push((func_of(&l.f, cap)?.into_values(), func_of(&l.u, cap)?.into_values()));
        }
        let refs: Vec<(&[Idx], &[Idx])> = tables.iter().map(|(f, u)| (&f[..], &u[..])).collect();
        Ok(table_from_components(&self.ring, &f1, &refs))
    }

    /// Projection of the induced map onto its first `m` coordinates, which is
    /// well defined since the map is triangular.
    pub fn truncate(&self, m: usize) -> TriElem {
        assert!(m >= 1 && m <= self.n());
        TriElem { ring: self.ring.clone(), f1: self.f1.clone(), levels: self.levels[..m - 1].to_vec() }
    }

    pub fn to_json(&self) -> TriJson {
        TriJson::from_tri(self)
    }
}

impl fmt::Display for TriElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(1:{})", self.f1)?;
        for (k, l) in self.levels.iter().enumerate() {
            if l.u.constant_term() == 1 && l.u.num_terms() == 1 && l.f.is_zero() {
                continue;
            }
            write!(f, "({}:{};{})", k + 2, l.u, l.f)?;
        }
        Ok(())
    }
}

impl fmt::Debug for TriElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TriElem[{}; n={}]{}", self.ring, self.n(), self)
    }
}

/// Table of the map `(a1, .., an) -> (F1(a1), .., Fi(a<i) + ai Ui(a<i), ..)`
/// given the value tables of `F1` and of each level `(Fi, Ui)` over `R^(i-1)`.
pub fn table_from_components(ring: &Ring, f1: &[Idx], levels: &[(&[Idx], &[Idx])]) -> Vec<u32> {
    let size = ring.size();
    let n = levels.len() + 1;
    // stride[i] = size^(n-1-i): weight of coordinate i in a point index
    let mut stride = vec![1usize; n];
    for i in (0..n - 1).rev() {
        stride[i] = stride[i + 1] * size;
    }
    let total = stride[0] * size;
    let mut out = Vec::with_capacity(total);
    for p in 0..total {
        let mut img = f1[p / stride[0]] as usize * stride[0];
        for (k, (ft, ut)) in levels.iter().enumerate() {
            let i = k + 1;
            let prefix = p / stride[i - 1];
            let ai = ((p / stride[i]) % size) as Idx;
            let v = ring.add(ft[prefix], ring.mul(ai, ut[prefix]));
            img += v as usize * stride[i];
        }
        out.push(img as u32);
    }
    out
}

pub fn make_tri(f1: MultiPoly, levels: Vec<(MultiPoly, MultiPoly)>) -> Result<TriElem> {
    TriElem::new(f1, levels.into_iter().map(|(f, u)| Level { f, u }).collect())
}

fn check_pair(g: &TriElem, f: &TriElem) -> Result<()> {
    g.ring.check_same(&f.ring)?;
    if g.n() != f.n() {
        return Err(Error::ArityMismatch { expected: g.n(), found: f.n() });
    }
    Ok(())
}

/// `g o f`, computed level by level on the factored forms.
///
/// Level `i` of the result is `(i : w_i(v_i) u_i ; g_i(v_i) + w_i(v_i) f_i)`
/// where `(g_i, w_i)` is level `i` of `g`, `(f_i, u_i)` level `i` of `f`,
/// and `v_i` the first `i-1` components of `f`.
pub fn compose_tri(g: &TriElem, f: &TriElem) -> Result<TriElem> {
    check_pair(g, f)?;
    Ok(compose_unchecked(g, f))
}

pub(crate) fn compose_unchecked(g: &TriElem, f: &TriElem) -> TriElem {
    let n = f.n();
    let ring = &f.ring;
    let m = (n - 1).max(1);
    let comps = f.components_in(m, m);
    let f1 = g.f1.compose(&f.f1);
    let mut levels = Vec::with_capacity(n - 1);
    for (k, (gl, fl)) in g.levels.iter().zip(&f.levels).enumerate() {
        let i = k + 2;
        let args = &comps[..i - 1];
        let target = args[0].nvars();
        let gv = gl.f.subst(args, target).restrict(i - 1).unwrap();
        let wv = gl.u.subst(args, target).restrict(i - 1).unwrap();
        levels.push(Level { f: gv.add(&wv.mul(&fl.f)), u: wv.mul(&fl.u) });
    }
    TriElem { ring: ring.clone(), f1, levels }
}

/// Unit of the monoid: `f1` an R-automorphism of `R[x]` and every `u_i` a unit polynomial.
pub fn is_unit_tri(t: &TriElem) -> bool {
    is_automorphism(&t.f1).unwrap_or(false) && t.levels.iter().all(|l| is_unit_poly(&l.u))
}

/// Inverse as `(n:un^-1;-un^-1 fn)...(2:u2^-1;-u2^-1 f2)(1:f1^-1)`.
pub fn invert_tri(t: &TriElem) -> Result<TriElem> {
    if !is_unit_tri(t) {
        return Err(Error::NotAUnit(t.to_string()));
    }
    let n = t.n();
    let mut acc = TriElem::identity(&t.ring, n);
    for i in (2..=n).rev() {
        let l = t.level(i);
        let ui = unit_poly_inverse(&l.u)?;
        let fi = ui.mul(&l.f).neg();
        let mut levels = TriElem::identity(&t.ring, n).levels;
        levels[i - 2] = Level { f: fi, u: ui };
        let factor = TriElem { ring: t.ring.clone(), f1: MultiPoly::var(&t.ring, 1, 0), levels };
        acc = compose_unchecked(&acc, &factor);
    }
    let mut first = TriElem::identity(&t.ring, n);
    first.f1 = automorphism_inverse(&t.f1)?;
    Ok(compose_unchecked(&acc, &first))
}

/// Equality of induced maps, decided componentwise on `f1`, `f_i`, `u_i`.
pub fn equiv_tri(s: &TriElem, t: &TriElem, cap: Option<u128>) -> Result<bool> {
    check_pair(s, t)?;
    if !func_equiv(&s.f1, &t.f1, cap)? {
        return Ok(false);
    }
    for (a, b) in s.levels.iter().zip(&t.levels) {
        if !func_equiv(&a.f, &b.f, cap)? || !func_equiv(&a.u, &b.u, cap)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Appends identity components up to `k` coordinates.
pub fn embed_tri(t: &TriElem, k: usize) -> Result<TriElem> {
    if k <= t.n() {
        return Err(Error::InvalidStructure(format!("target size {k} must exceed n = {}", t.n())));
    }
    let mut out = t.clone();
    for m in t.n()..k {
        out.levels.push(Level { f: MultiPoly::zero(&t.ring, m), u: MultiPoly::one(&t.ring, m) });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(s: &str) -> Ring {
        Ring::parse(s).unwrap()
    }

    #[test]
    fn vec_parsing() {
        let z4 = ring("Z4");
        let v = VecPoly::parse(&z4, 2, "(x1+2*x1^2, x1 + x2*(1+2*x1))").unwrap();
        let t = TriElem::from_vecpoly(&v).unwrap();
        assert_eq!(t.to_vecpoly(), v);
        assert!(VecPoly::parse(&z4, 3, "(x1, x2)").is_err());
        assert!(VecPoly::parse(&z4, 2, "(x1, (x2)").is_err());
        let p6 = ring("Z2xF3");
        let w = VecPoly::parse(&p6, 2, "((1,2)*x1, x2 + (0,1))").unwrap();
        assert_eq!(w.components()[0].to_string(), "(1,2)*x1");
        assert_eq!(crate::poly::parse_point(&p6, 2, "((1,1), 0)").unwrap().len(), 2);
    }

    fn p(r: &Ring, n: usize, s: &str) -> MultiPoly {
        MultiPoly::parse(r, n, s).unwrap()
    }

    fn tri(r: &Ring, f1: &str, levels: &[(&str, &str)]) -> TriElem {
        let levels = levels
            .iter()
            .enumerate()
            .map(|(k, (f, u))| (p(r, k + 1, f), p(r, k + 1, u)))
            .collect();
        make_tri(p(r, 1, f1), levels).unwrap()
    }

    #[test]
    fn construction_examples() {
        let z4 = ring("Z4");
        tri(&z4, "x1 + 2*x1^2", &[("x1", "1 + 2*x1")]);
        let f3 = ring("F3");
        let err = make_tri(p(&f3, 1, "x1^2"), vec![(p(&f3, 1, "0"), p(&f3, 1, "1"))]).unwrap_err();
        assert!(matches!(err, Error::MembershipViolation { index: 1, .. }));
        let err = make_tri(p(&z4, 1, "x1"), vec![(p(&z4, 1, "0"), p(&z4, 1, "x1"))]).unwrap_err();
        assert!(matches!(err, Error::MembershipViolation { index: 2, .. }));
        let id = TriElem::identity(&z4, 3);
        assert_eq!(id.to_vecpoly(), VecPoly::identity(&z4, 3));
        assert!(TriElem::new(id.f1.clone(), id.levels.clone()).is_ok());
    }

    #[test]
    fn vecpoly_conversions() {
        let z4 = ring("Z4");
        let t = tri(&z4, "x1 + 1", &[("x1", "1")]);
        let v = t.to_vecpoly();
        assert_eq!(v.components(), [p(&z4, 2, "x1 + 1"), p(&z4, 2, "x1 + x2")]);
        assert_eq!(TriElem::from_vecpoly(&v).unwrap(), t);
        let swap = VecPoly::new(&z4, vec![p(&z4, 2, "x2"), p(&z4, 2, "x1")]).unwrap();
        assert!(matches!(TriElem::from_vecpoly(&swap), Err(Error::NotTriangular(_))));
    }

    #[test]
    fn composition_examples() {
        let z4 = ring("Z4");
        let a = TriElem::factor(2, 2, p(&z4, 1, "1 + 2*x1"), p(&z4, 1, "x1")).unwrap();
        let b = TriElem::factor(2, 2, p(&z4, 1, "3"), p(&z4, 1, "2*x1 + 1")).unwrap();
        let ab = compose_tri(&a, &b).unwrap();
        // (i:uv; f+ug)
        let expect = TriElem::factor(2, 2, p(&z4, 1, "3 + 2*x1"), p(&z4, 1, "x1 + (1 + 2*x1)*(2*x1 + 1)")).unwrap();
        assert_eq!(ab, expect);
        let f = TriElem::factor1(2, p(&z4, 1, "x1 + 2*x1^2")).unwrap();
        let g = TriElem::factor1(2, p(&z4, 1, "3*x1 + 1")).unwrap();
        let fg = compose_tri(&f, &g).unwrap();
        assert_eq!(fg.f1(), &f.f1().compose(g.f1()));
        let id = TriElem::identity(&z4, 2);
        assert_eq!(compose_tri(&id, &ab).unwrap(), ab);
        assert_eq!(compose_tri(&ab, &id).unwrap(), ab);
    }

    #[test]
    fn compose_matches_substitution() {
        let z4 = ring("Z4");
        let s = tri(&z4, "3*x1 + 2*x1^2", &[("x1^2 + 1", "1 + 2*x1"), ("x1*x2", "x1^2 - x1 + 1")]);
        let t = tri(&z4, "x1 + 1", &[("2*x1", "3"), ("x2 + 3*x1^3", "1 + 2*x2")]);
        let st = compose_tri(&s, &t).unwrap();
        assert_eq!(st.to_vecpoly(), s.to_vecpoly().compose(&t.to_vecpoly()).unwrap());
        st.validate(None).unwrap();
    }

    #[test]
    fn unit_examples() {
        let z4 = ring("Z4");
        assert!(is_unit_tri(&tri(&z4, "x1 + 2*x1^2", &[("x1", "1 + 2*x1")])));
        assert!(!is_unit_tri(&tri(&z4, "x1", &[("0", "x1^2 - x1 + 1")])));
        let f4 = ring("F2^2:t^2+t+1");
        assert!(!is_unit_tri(&tri(&f4, "x1^2", &[("0", "1")])));
    }

    #[test]
    fn inversion_examples() {
        let z4 = ring("Z4");
        let t = tri(&z4, "x1", &[("x1", "1 + 2*x1")]);
        assert_eq!(invert_tri(&t).unwrap(), tri(&z4, "x1", &[("3*x1 + 2*x1^2", "1 + 2*x1")]));
        let s = tri(&z4, "x1 + 1", &[("0", "1")]);
        assert_eq!(invert_tri(&s).unwrap(), tri(&z4, "x1 + 3", &[("0", "1")]));
        let id = TriElem::identity(&z4, 3);
        assert_eq!(invert_tri(&id).unwrap(), id);
        let u = tri(&z4, "x1 + 2*x1^2 + 1", &[("x1^3", "3 + 2*x1"), ("x1*x2 + 2", "1 + 2*x1*x2")]);
        let ui = invert_tri(&u).unwrap();
        assert!(compose_tri(&u, &ui).unwrap().is_identity());
        assert!(compose_tri(&ui, &u).unwrap().is_identity());
        assert!(matches!(invert_tri(&tri(&z4, "x1", &[("0", "x1^2 - x1 + 1")])), Err(Error::NotAUnit(_))));
    }

    #[test]
    fn apply_and_solve_examples() {
        let z4 = ring("Z4");
        let t = tri(&z4, "x1 + 1", &[("x1", "1")]);
        assert_eq!(t.apply(&[1, 1]).unwrap(), [2, 2]);
        assert_eq!(t.solve_preimage(&[2, 2]).unwrap(), [1, 1]);
        let f2 = ring("F2");
        assert_eq!(tri(&f2, "x1", &[("x1", "1")]).apply(&[1, 0]).unwrap(), [1, 1]);
        let f4 = ring("F2^2:t^2+t+1");
        let fr = tri(&f4, "x1^2", &[("0", "1")]);
        let t_ = f4.symbol("t").unwrap();
        assert_eq!(fr.solve_preimage(&[t_, 0]).unwrap(), [f4.mul(t_, t_), 0]);
        let id = TriElem::identity(&z4, 3);
        assert_eq!(id.apply(&[1, 2, 3]).unwrap(), [1, 2, 3]);
        assert_eq!(id.solve_preimage(&[1, 2, 3]).unwrap(), [1, 2, 3]);
    }

    #[test]
    fn perm_table_matches_apply() {
        let z4 = ring("Z4");
        let t = tri(&z4, "3*x1 + 2*x1^2", &[("x1^2 + 1", "x1^2 - x1 + 1"), ("x1*x2", "1 + 2*x2")]);
        let table = t.perm_table(None).unwrap();
        for (i, &img) in table.iter().enumerate() {
            let pt = crate::poly::point_of(4, 3, i);
            assert_eq!(crate::poly::point_of(4, 3, img as usize), t.apply(&pt).unwrap());
        }
    }

    #[test]
    fn equivalence_examples() {
        let f2 = ring("F2");
        let a = tri(&f2, "x1^2", &[("0", "1")]);
        let b = tri(&f2, "x1", &[("0", "1")]);
        assert!(equiv_tri(&a, &b, None).unwrap());
        let z4 = ring("Z4");
        let c = tri(&z4, "x1", &[("0", "x1^2 - x1 + 1")]);
        let d = tri(&z4, "x1", &[("0", "1")]);
        assert!(!equiv_tri(&c, &d, None).unwrap());
        assert!(equiv_tri(&c, &c, None).unwrap());
    }

    #[test]
    fn embedding_examples() {
        let z4 = ring("Z4");
        let t = TriElem::factor1(1, p(&z4, 1, "x1 + 1")).unwrap();
        assert_eq!(embed_tri(&t, 2).unwrap(), tri(&z4, "x1 + 1", &[("0", "1")]));
        assert_eq!(embed_tri(&TriElem::identity(&z4, 2), 4).unwrap(), TriElem::identity(&z4, 4));
        assert!(embed_tri(&t, 1).is_err());
    }
}
