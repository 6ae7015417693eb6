//! Dual numbers `R_n = R[a1..an]`, `ai aj = 0`, with polynomials held in
//! component form `g = g0 + sum gi ai`, `gi` in `R[x]`.
//!
//! Two choices are worth knowing: the permutation test asks for `f0` to
//! permute `R` and for the derivative `f0'` to be unit-valued, and function
//! equality asks for `fi = gi` on `R` for all `i` together with `f0' = g0'`.
//! Both are cross-checked against brute force on the dual ring.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::funcspace::{enumerate_poly_permutations, SpaceOptions};
use crate::group::Perm;
use crate::poly::{func_equiv, func_of, is_permutation_poly, is_unit_valued, MultiPoly};
use crate::ring::{Idx, Ring, RingSpec};
use crate::tri::{Level, TriElem};

/// `R[a1..an]` as a ring.
pub fn dual_ring(base: &Ring, n: usize) -> Result<Ring> {
    Ring::new(RingSpec::Dual { base: Box::new(base.spec().clone()), generators: n as u32 })
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DualPoly {
    base: Ring,
    components: Vec<MultiPoly>,
}

impl DualPoly {
    /// Components `g0..gn`, each a one-variable polynomial over `base`.
    pub fn new(base: &Ring, components: Vec<MultiPoly>) -> Result<DualPoly> {
        if components.is_empty() {
            return Err(Error::InvalidStructure("a dual polynomial needs g0".into()));
        }
        for c in &components {
            base.check_same(c.ring())?;
            if c.nvars() != 1 {
                return Err(Error::ArityMismatch { expected: 1, found: c.nvars() });
            }
        }
        Ok(DualPoly { base: base.clone(), components })
    }

    pub fn parse(base: &Ring, components: &[&str]) -> Result<DualPoly> {
        let comps = components.iter().map(|s| MultiPoly::parse(base, 1, s)).collect::<Result<Vec<_>>>()?;
        DualPoly::new(base, comps)
    }

    pub fn identity(base: &Ring, n: usize) -> DualPoly {
        let mut components = vec![MultiPoly::var(base, 1, 0)];
        components.extend((0..n).map(|_| MultiPoly::zero(base, 1)));
        DualPoly { base: base.clone(), components }
    }

    pub fn base(&self) -> &Ring {
        &self.base
    }

    /// Number of dual generators.
    pub fn n(&self) -> usize {
        self.components.len() - 1
    }

    pub fn components(&self) -> &[MultiPoly] {
        &self.components
    }

    pub fn f0(&self) -> &MultiPoly {
        &self.components[0]
    }

    fn derivative0(&self) -> MultiPoly {
        self.f0().derivative(0).unwrap()
    }

    /// The same polynomial with coefficients in `dual`, which must be
    /// `dual_ring(base, n)`.
    pub fn to_ring_poly(&self, dual: &Ring) -> Result<MultiPoly> {
        let max = self.components.iter().map(|c| c.degree_in(0)).max().unwrap_or(0);
        let mut terms = Vec::new();
        for d in 0..=max {
            let coords: Vec<Idx> = self.components.iter().map(|c| c.coeff(&[d])).collect();
            let c = dual
                .from_algebra_coordinates(&coords)
                .ok_or_else(|| Error::MixedRings(dual.name().into(), self.base.name().into()))?;
            terms.push((vec![d], c));
        }
        MultiPoly::from_terms(dual, 1, terms)
    }

    pub fn from_ring_poly(p: &MultiPoly) -> Result<DualPoly> {
        let dual = p.ring();
        let (base, n) = match dual.spec() {
            RingSpec::Dual { base, generators } => (Ring::new((**base).clone())?, *generators as usize),
            _ => return Err(Error::InvalidStructure(format!("{dual} is not a dual-number ring"))),
        };
        let mut comps: Vec<Vec<(Vec<u32>, Idx)>> = vec![Vec::new(); n + 1];
        for (e, c) in p.terms() {
            let (_, coords) = dual.algebra_coordinates(c).unwrap();
            for (i, &v) in coords.iter().enumerate() {
                comps[i].push((e.clone(), v));
            }
        }
        let components = comps
            .into_iter()
            .map(|t| MultiPoly::from_terms(&base, 1, t))
            .collect::<Result<Vec<_>>>()?;
        DualPoly::new(&base, components)
    }

    pub fn to_json(&self) -> DualPolyJson {
        DualPolyJson {
            base_ring: self.base.name().to_string(),
            n: self.n(),
            components: self.components.iter().map(|c| c.to_string()).collect(),
        }
    }
}

impl std::fmt::Display for DualPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.components[0])?;
        for (i, c) in self.components.iter().enumerate().skip(1) {
            if !c.is_zero() {
                write!(f, " + ({c})*a{i}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualPolyJson {
    pub base_ring: String,
    pub n: usize,
    pub components: Vec<String>,
}

impl DualPolyJson {
    pub fn to_dual(&self) -> Result<DualPoly> {
        let base = Ring::parse(&self.base_ring)?;
        if self.components.len() != self.n + 1 {
            return Err(Error::ArityMismatch { expected: self.n + 1, found: self.components.len() });
        }
        let refs: Vec<&str> = self.components.iter().map(|s| s.as_str()).collect();
        DualPoly::parse(&base, &refs)
    }
}

fn check_pair(f: &DualPoly, g: &DualPoly) -> Result<()> {
    f.base.check_same(&g.base)?;
    if f.n() != g.n() {
        return Err(Error::ArityMismatch { expected: f.n(), found: g.n() });
    }
    Ok(())
}

/// `f(g) = f0(g0) + sum (gi f0'(g0) + fi(g0)) ai`.
pub fn dual_eval(f: &DualPoly, g: &DualPoly) -> Result<DualPoly> {
    check_pair(f, g)?;
    let g0 = g.f0();
    let d = f.derivative0().compose(g0);
    let mut components = vec![f.f0().compose(g0)];
    for i in 1..=f.n() {
        components.push(g.components[i].mul(&d).add(&f.components[i].compose(g0)));
    }
    Ok(DualPoly { base: f.base.clone(), components })
}

/// `f0` permutes `R` and `f0'` is unit-valued on `R`.
pub fn is_perm_dual(f: &DualPoly) -> Result<bool> {
    let fast = is_permutation_poly(f.f0())? && is_unit_valued(&f.derivative0(), None)?;
    if cfg!(debug_assertions) && dual_size_ok(f) {
        debug_assert_eq!(fast, is_perm_dual_brute(f)?, "permutation criterion disagrees on {f}");
    }
    Ok(fast)
}

fn dual_size_ok(f: &DualPoly) -> bool {
    (f.base.size() as u128).pow(f.n() as u32 + 1) <= 256
}

/// Bijectivity of the induced map on the dual ring, by evaluation.
pub fn is_perm_dual_brute(f: &DualPoly) -> Result<bool> {
    let dual = dual_ring(&f.base, f.n())?;
    Ok(func_of(&f.to_ring_poly(&dual)?, None)?.is_permutation())
}

/// `fi = gi` on `R` for every `i`, and `f0' = g0'` on `R`.
pub fn equiv_dual(f: &DualPoly, g: &DualPoly) -> Result<bool> {
    check_pair(f, g)?;
    let mut fast = func_equiv(&f.derivative0(), &g.derivative0(), None)?;
    for (a, b) in f.components.iter().zip(&g.components) {
        fast = fast && func_equiv(a, b, None)?;
    }
    if cfg!(debug_assertions) && dual_size_ok(f) {
        debug_assert_eq!(fast, equiv_dual_brute(f, g)?, "equivalence criterion disagrees on {f} vs {g}");
    }
    Ok(fast)
}

pub fn equiv_dual_brute(f: &DualPoly, g: &DualPoly) -> Result<bool> {
    check_pair(f, g)?;
    let dual = dual_ring(&f.base, f.n())?;
    func_equiv(&f.to_ring_poly(&dual)?, &g.to_ring_poly(&dual)?, None)
}

/// `(f0(x1), f1(x1) + x2 f0'(x1), .., fn(x1) + x(n+1) f0'(x1))`.
pub fn embed_psi(f: &DualPoly) -> Result<TriElem> {
    if !is_perm_dual(f)? {
        return Err(Error::InvalidStructure(format!("{f} does not permute the dual ring")));
    }
    let d = f.derivative0();
    let levels = (1..=f.n())
        .map(|i| Level { f: f.components[i].lift(i), u: d.lift(i) })
        .collect();
    TriElem::new(f.f0().clone(), levels)
}

/// The map of `R^(n+1)` induced by `embed_psi(f)`.
pub fn embed_phi(f: &DualPoly) -> Result<Perm> {
    Perm::new(embed_psi(f)?.perm_table(None)?)
}

/// Counts behind the injectivity check of `embed_phi` on `P(R_1)`.
#[derive(Clone, Debug, Serialize)]
pub struct EmbedCheck {
    pub base_ring: String,
    /// `|P(R_1)|` by closure enumeration on the dual ring.
    pub closure_count: usize,
    /// Distinct permutations of `R_1` reached by the representative corpus.
    pub corpus_count: usize,
    /// Distinct images under `embed_phi`.
    pub image_count: usize,
    /// Degree bound at which the corpus reached `closure_count`.
    pub degree: u32,
    pub injective: bool,
}

fn all_polys(base: &Ring, max_deg: u32) -> Vec<MultiPoly> {
    let q = base.size();
    let len = max_deg as usize + 1;
    let total = q.pow(len as u32);
    (0..total)
        .map(|mut i| {
            let coeffs: Vec<Idx> = (0..len)
                .map(|_| {
                    let c = (i % q) as Idx;
                    i /= q;
                    c
                })
                .collect();
            MultiPoly::univariate(base, &coeffs)
        })
        .collect()
}

/// Classes of one-variable polynomials of degree `<= max_deg` over `base`
/// by the pair of tables `(F, F')`, one representative each.
fn value_derivative_classes(base: &Ring, max_deg: u32) -> Result<HashMap<(Vec<Idx>, Vec<Idx>), MultiPoly>> {
    let mut out = HashMap::new();
    for p in all_polys(base, max_deg) {
        let key = (func_of(&p, None)?.into_values(), func_of(&p.derivative(0)?, None)?.into_values());
        out.entry(key).or_insert(p);
    }
    Ok(out)
}

/// Injectivity of `embed_phi` on `P(R_1)`: representatives with growing
/// degree until every permutation of `R_1` found by closure is reached.
pub fn embed_phi_check(base: &Ring, opts: &SpaceOptions) -> Result<EmbedCheck> {
    let dual = dual_ring(base, 1)?;
    let closure_count = enumerate_poly_permutations(&dual, opts)?.len();
    let mut degree = 1;
    loop {
        let classes = value_derivative_classes(base, degree)?;
        let values: HashMap<Vec<Idx>, MultiPoly> = classes
            .iter()
            .map(|((v, _), p)| (v.clone(), p.clone()))
            .collect();
        let mut perms: HashSet<Vec<Idx>> = HashSet::new();
        let mut images: HashSet<Perm> = HashSet::new();
        for ((_, d0), f0) in &classes {
            if !is_permutation_poly(f0)? || !d0.iter().all(|&x| base.is_unit(x)) {
                continue;
            }
            for f1 in values.values() {
                let f = DualPoly::new(base, vec![f0.clone(), f1.clone()])?;
                perms.insert(func_of(&f.to_ring_poly(&dual)?, None)?.into_values());
                images.insert(embed_phi(&f)?);
            }
        }
        if perms.len() >= closure_count || degree >= 2 * base.size() as u32 + 2 {
            return Ok(EmbedCheck {
                base_ring: base.name().to_string(),
                closure_count,
                corpus_count: perms.len(),
                image_count: images.len(),
                degree,
                injective: images.len() == perms.len(),
            });
        }
        degree += 1;
    }
}

/// Agreement of [`is_perm_dual`] and [`equiv_dual`] with brute force over
/// every `(f0, f1)` with components of degree `<= max_deg`.
#[derive(Clone, Debug, Serialize)]
pub struct DualCrossCheck {
    pub base_ring: String,
    pub polynomials: usize,
    pub perm_agree: bool,
    pub equiv_agree: bool,
}

/// Equivalence is compared as a partition: the criterion key
/// `(F0, F1, F0')` and the brute-force table on `R_1` must determine each other.
pub fn dual_cross_check(base: &Ring, max_deg: u32) -> Result<DualCrossCheck> {
    let dual = dual_ring(base, 1)?;
    let polys = all_polys(base, max_deg);
    let tables: Vec<(Vec<Idx>, Vec<Idx>)> = polys
        .iter()
        .map(|p| Ok((func_of(p, None)?.into_values(), func_of(&p.derivative(0)?, None)?.into_values())))
        .collect::<Result<_>>()?;
    let perm0: Vec<bool> = polys.iter().map(is_permutation_poly).collect::<Result<_>>()?;
    let mut perm_agree = true;
    let mut key_to_table: HashMap<(usize, usize), Vec<Idx>> = HashMap::new();
    let mut table_to_key: HashMap<Vec<Idx>, (usize, usize)> = HashMap::new();
    let mut equiv_agree = true;
    // classes of (F0, F0') and of F1, as small ids
    let mut class0: HashMap<&(Vec<Idx>, Vec<Idx>), usize> = HashMap::new();
    let mut class1: HashMap<&Vec<Idx>, usize> = HashMap::new();
    for t in &tables {
        let k = class0.len();
        class0.entry(t).or_insert(k);
        let k = class1.len();
        class1.entry(&t.0).or_insert(k);
    }
    for (i, f0) in polys.iter().enumerate() {
        let crit_perm = perm0[i] && tables[i].1.iter().all(|&x| base.is_unit(x));
        for (j, f1) in polys.iter().enumerate() {
            let f = DualPoly { base: base.clone(), components: vec![f0.clone(), f1.clone()] };
            let table = func_of(&f.to_ring_poly(&dual)?, None)?;
            perm_agree &= table.is_permutation() == crit_perm;
            let key = (class0[&tables[i]], class1[&tables[j].0]);
            let values = table.into_values();
            if let Some(t) = key_to_table.get(&key) {
                equiv_agree &= *t == values;
            } else {
                key_to_table.insert(key, values.clone());
            }
            match table_to_key.get(&values) {
                Some(k) => equiv_agree &= *k == key,
                None => {
                    table_to_key.insert(values, key);
                }
            }
        }
    }
    Ok(DualCrossCheck {
        base_ring: base.name().to_string(),
        polynomials: polys.len() * polys.len(),
        perm_agree,
        equiv_agree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(s: &str) -> Ring {
        Ring::parse(s).unwrap()
    }

    #[test]
    fn dual_ring_examples() {
        let r = dual_ring(&ring("F2"), 1).unwrap();
        assert_eq!(r.size(), 4);
        assert!(r.is_local());
        assert_eq!(r.local().unwrap().maximal_ideal().len(), 2);
        assert_eq!(r.local().unwrap().residue_size(), 2);
        let r2 = dual_ring(&ring("Z4"), 2).unwrap();
        let (a1, a2) = (r2.symbol("a1").unwrap(), r2.symbol("a2").unwrap());
        assert_eq!(r2.mul(a1, a2), 0);
    }

    #[test]
    fn evaluation_examples() {
        let z4 = ring("Z4");
        let g = DualPoly::parse(&z4, &["x1", "1"]).unwrap();
        let id = DualPoly::identity(&z4, 1);
        assert_eq!(dual_eval(&id, &g).unwrap(), g);
        let f = DualPoly::parse(&z4, &["x1^2", "0"]).unwrap();
        assert_eq!(dual_eval(&f, &g).unwrap(), DualPoly::parse(&z4, &["x1^2", "2*x1"]).unwrap());
    }

    #[test]
    fn evaluation_matches_dual_ring_substitution() {
        let z4 = ring("Z4");
        let dual = dual_ring(&z4, 2).unwrap();
        let f = DualPoly::parse(&z4, &["x1^3 + 2*x1", "x1 + 1", "3*x1^2"]).unwrap();
        let g = DualPoly::parse(&z4, &["x1^2 + 1", "2", "x1^3"]).unwrap();
        let direct = f.to_ring_poly(&dual).unwrap().compose(&g.to_ring_poly(&dual).unwrap());
        assert_eq!(DualPoly::from_ring_poly(&direct).unwrap(), dual_eval(&f, &g).unwrap());
    }

    #[test]
    fn permutation_examples() {
        assert!(is_perm_dual(&DualPoly::parse(&ring("Z4"), &["x1 + 2*x1^2", "x1^3"]).unwrap()).unwrap());
        let cube = DualPoly::parse(&ring("F3"), &["x1^3", "0"]).unwrap();
        assert!(!is_perm_dual(&cube).unwrap());
        assert!(!is_perm_dual_brute(&cube).unwrap());
        assert!(is_perm_dual(&DualPoly::identity(&ring("F3"), 1)).unwrap());
    }

    #[test]
    fn equivalence_examples() {
        let f2 = ring("F2");
        let a = DualPoly::parse(&f2, &["x1^2", "0"]).unwrap();
        let b = DualPoly::parse(&f2, &["x1", "0"]).unwrap();
        assert!(!equiv_dual(&a, &b).unwrap());
        assert!(equiv_dual(&a, &a).unwrap());
        let z4 = ring("Z4");
        let c = DualPoly::parse(&z4, &["x1 + 4*x1^2", "0"]).unwrap();
        let d = DualPoly::parse(&z4, &["x1", "0"]).unwrap();
        assert!(equiv_dual(&c, &d).unwrap());
    }

    #[test]
    fn embedding_examples() {
        let z4 = ring("Z4");
        assert!(embed_psi(&DualPoly::identity(&z4, 2)).unwrap().is_identity());
        let f = DualPoly::parse(&z4, &["x1 + 2*x1^2", "1"]).unwrap();
        let t = embed_psi(&f).unwrap();
        assert_eq!(t.level(2).f, MultiPoly::one(&z4, 1));
        assert_eq!(t.level(2).u, MultiPoly::one(&z4, 1));
        assert!(embed_phi(&DualPoly::identity(&z4, 1)).unwrap().is_identity());
        let bad = DualPoly::parse(&ring("F3"), &["x1^3", "0"]).unwrap();
        assert!(embed_psi(&bad).is_err());
    }

    #[test]
    fn cross_check_over_f2() {
        let c = dual_cross_check(&ring("F2"), 3).unwrap();
        assert!(c.perm_agree && c.equiv_agree);
        let e = embed_phi_check(&ring("F2"), &SpaceOptions::default()).unwrap();
        assert!(e.injective);
        assert_eq!(e.corpus_count, e.closure_count);
    }

    #[test]
    fn json_round_trip() {
        let f = DualPoly::parse(&ring("Z4"), &["x1 + 2*x1^2", "1"]).unwrap();
        let text = serde_json::to_string(&f.to_json()).unwrap();
        assert!(text.contains("base_ring"));
        let back: DualPolyJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_dual().unwrap(), f);
    }
}
