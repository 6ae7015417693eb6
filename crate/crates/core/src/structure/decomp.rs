use std::collections::HashMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use super::StructureReport;
use crate::error::{Error, Result};
use crate::funcspace::{
    enumerate_poly_functions, enumerate_poly_permutations, p_group_check, Components, SpaceOptions, Table,
};
use crate::group::{Perm, PermGroup};
use crate::poly::MultiPoly;
use crate::ring::{Idx, Ring};
use crate::sample::{random_mt, random_poly, random_tr, random_unit_poly, random_unit_valued};
use crate::tri::{compose_tri, invert_tri, is_unit_tri, Level, TriElem};

/// Where the decomposition `MT_n = ML^n_n x| MT_(n-1)` is checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecompositionLevel {
    /// Exact polynomial identities on sampled elements of `MT_n`.
    Monoid,
    /// The same on sampled elements of `TR_n`.
    Group,
    /// Exhaustively on the induced permutation groups.
    Induced,
}

impl std::str::FromStr for DecompositionLevel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "monoid" => Ok(DecompositionLevel::Monoid),
            "group" => Ok(DecompositionLevel::Group),
            "induced" => Ok(DecompositionLevel::Induced),
            _ => Err(Error::Parse(format!("unknown level {s:?} (monoid, group, induced)"))),
        }
    }
}

pub fn verify_decomposition(
    ring: &Ring,
    n: usize,
    level: DecompositionLevel,
    opts: &SpaceOptions,
    samples: usize,
    seed: u64,
) -> Result<StructureReport> {
    if n < 2 {
        return Err(Error::InvalidStructure("decomposition needs n >= 2".into()));
    }
    match level {
        DecompositionLevel::Induced => induced(ring, n, opts),
        DecompositionLevel::Monoid => sampled(ring, n, false, samples, seed),
        DecompositionLevel::Group => sampled(ring, n, true, samples, seed),
    }
}

fn index_map(tables: &[Table]) -> HashMap<&[Idx], usize> {
    tables.iter().enumerate().map(|(i, t)| (&t[..], i)).collect()
}

/// `pi_n(MT_n)` against pairs `(H, (U, F))` with `H` in `pi_(n-1)(MT_(n-1))`
/// and `(U, F)` a level-`n` factor, under
/// `(H,(U,F))(L,(V,G)) = (H o L, ((U o L) V, F o L + (U o L) G))`,
/// mapped by `(H,(U,F)) -> (a, an) -> (H(a), F(a) + U(a) an)`.
fn induced(ring: &Ring, n: usize, opts: &SpaceOptions) -> Result<StructureReport> {
    let size = ring.size();
    let lhs = Components::mt(ring, n, opts)?.materialize(opts.group_cap)?;
    let hs = Components::mt(ring, n - 1, opts)?.materialize(opts.group_cap)?;
    let fs = enumerate_poly_functions(ring, n - 1, opts)?;
    let us = fs.unit_valued();
    let (nh, nu, nf) = (hs.len(), us.len(), fs.len());
    let total = nh * nu * nf;
    if total > opts.group_cap {
        return Err(Error::CapExceeded { what: "semidirect product", size: total as u128, cap: opts.group_cap as u128 });
    }
    let d = size.pow(n as u32 - 1);
    let h_pos: HashMap<&Perm, usize> = hs.iter().enumerate().map(|(i, h)| (h, i)).collect();
    let f_pos = index_map(fs.tables());
    let u_pos = index_map(us.tables());
    let h_mul: Vec<usize> = hs.iter().flat_map(|a| hs.iter().map(|b| h_pos[&a.compose(b)])).collect::<Vec<_>>();
    let precompose = |t: &[Idx], h: &Perm| -> Vec<Idx> { h.images().iter().map(|&p| t[p as usize]).collect() };
    let comp_f: Vec<usize> = fs
        .tables()
        .iter()
        .flat_map(|f| hs.iter().map(|h| f_pos[&precompose(f, h)[..]]))
        .collect();
    let comp_u: Vec<usize> = us
        .tables()
        .iter()
        .flat_map(|u| hs.iter().map(|h| u_pos[&precompose(u, h)[..]]))
        .collect();
    let pointwise = |a: &[Idx], b: &[Idx], mul: bool| -> Vec<Idx> {
        a.iter().zip(b).map(|(&x, &y)| if mul { ring.mul(x, y) } else { ring.add(x, y) }).collect()
    };
    let mul_uu: Vec<usize> = us
        .tables()
        .iter()
        .flat_map(|a| us.tables().iter().map(|b| u_pos[&pointwise(a, b, true)[..]]).collect::<Vec<_>>())
        .collect();
    let mul_uf: Vec<usize> = us
        .tables()
        .iter()
        .flat_map(|a| fs.tables().iter().map(|b| f_pos[&pointwise(a, b, true)[..]]).collect::<Vec<_>>())
        .collect();
    let add_ff: Vec<usize> = fs
        .tables()
        .iter()
        .flat_map(|a| fs.tables().iter().map(|b| f_pos[&pointwise(a, b, false)[..]]).collect::<Vec<_>>())
        .collect();
    let label = |h: usize, u: usize, f: usize| (h * nu + u) * nf + f;
    let split = |x: usize| (x / (nu * nf), (x / nf) % nu, x % nf);
    let product = |x: usize, y: usize| {
        let ((h1, u1, f1), (h2, u2, f2)) = (split(x), split(y));
        let ul = comp_u[u1 * nh + h2];
        let fl = comp_f[f1 * nh + h2];
        label(h_mul[h1 * nh + h2], mul_uu[ul * nu + u2], add_ff[fl * nf + mul_uf[ul * nf + f2]])
    };
    // psi tables, flat: entry x * (d * size) + point
    let dn = d * size;
    let mut psi = vec![0u32; total * dn];
    for x in 0..total {
        let (h, u, f) = split(x);
        let (ht, ut, ft) = (hs[h].images(), &us.tables()[u], &fs.tables()[f]);
        for p in 0..d {
            for an in 0..size {
                let v = ring.add(ft[p], ring.mul(ut[p], an as Idx));
                psi[x * dn + p * size + an] = ht[p] * size as u32 + v;
            }
        }
    }
    let mut image: Vec<&[u32]> = psi.chunks(dn).collect();
    image.sort_unstable();
    image.dedup();
    let mut lhs_sorted: Vec<&[u32]> = lhs.iter().map(|p| p.images()).collect();
    lhs_sorted.sort_unstable();
    let bijective = image.len() == total && image == lhs_sorted;
    let homomorphic = (0..total).all(|x| {
        let px = &psi[x * dn..(x + 1) * dn];
        (0..total).all(|y| {
            let py = &psi[y * dn..(y + 1) * dn];
            let z = product(x, y);
            let pz = &psi[z * dn..(z + 1) * dn];
            py.iter().zip(pz).all(|(&a, &b)| px[a as usize] == b)
        })
    });
    // section j(H) = (H, (1, 0)) and projection onto the first n-1 coordinates
    let one_u = u_pos[&vec![1 as Idx; d][..]];
    let zero_f = f_pos[&vec![0 as Idx; d][..]];
    let section_ok = (0..nh).all(|h| {
        let t = &psi[label(h, one_u, zero_f) * dn..][..dn];
        (0..d).all(|p| t[p * size] / size as u32 == hs[h].images()[p])
    }) && (0..nh).all(|a| {
        (0..nh).all(|b| product(label(a, one_u, zero_f), label(b, one_u, zero_f)) == label(h_mul[a * nh + b], one_u, zero_f))
    });
    Ok(StructureReport {
        claim: format!("pi_{n}(MT_{n}) = pi_{n}(ML^{n}_{n}) x| pi_{}(MT_{})", n - 1, n - 1),
        instance: format!("{ring}, n = {n}, induced"),
        lhs_order: lhs.len() as u64,
        rhs_order: total as u64,
        map_bijective: bijective,
        map_homomorphic: homomorphic,
        witnesses: vec![json!({
            "pairs_checked": (total as u64) * (total as u64),
            "components": {"H": nh, "U": nu, "F": nf},
            "section_splits": section_ok,
        })],
    })
}

struct Pair {
    h: TriElem,
    u: MultiPoly,
    f: MultiPoly,
}

fn psi(x: &Pair) -> TriElem {
    let mut levels = x.h.levels().to_vec();
    levels.push(Level { f: x.f.clone(), u: x.u.clone() });
    TriElem::trusted(x.h.f1().clone(), levels)
}

/// `(h,(u,f))(l,(v,g)) = (h o l, (u(l) v, f(l) + u(l) g))`.
fn pair_product(x: &Pair, y: &Pair) -> Result<Pair> {
    let lv = y.h.to_vecpoly();
    let ul = x.u.substitute(lv.components())?;
    let fl = x.f.substitute(lv.components())?;
    Ok(Pair { h: compose_tri(&x.h, &y.h)?, u: ul.mul(&y.u), f: fl.add(&ul.mul(&y.f)) })
}

fn sampled(ring: &Ring, n: usize, units: bool, samples: usize, seed: u64) -> Result<StructureReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let deg = 2;
    let draw = |rng: &mut ChaCha8Rng| {
        if units {
            Pair {
                h: random_tr(rng, ring, n - 1, deg),
                u: random_unit_poly(rng, ring, n - 1, deg),
                f: random_poly(rng, ring, n - 1, deg),
            }
        } else {
            Pair {
                h: random_mt(rng, ring, n - 1, deg),
                u: random_unit_valued(rng, ring, n - 1, deg),
                f: random_poly(rng, ring, n - 1, deg),
            }
        }
    };
    let mut homomorphic = true;
    let mut bijective = true;
    let mut witnesses = Vec::new();
    for _ in 0..samples {
        let (x, y) = (draw(&mut rng), draw(&mut rng));
        let xy = pair_product(&x, &y)?;
        let lhs = compose_tri(&psi(&x), &psi(&y))?;
        if psi(&xy) != lhs {
            homomorphic = false;
            witnesses.push(json!({"x": psi(&x).to_string(), "y": psi(&y).to_string()}));
        }
        if units && !(is_unit_tri(&lhs) && invert_tri(&lhs).is_ok()) {
            homomorphic = false;
        }
        // psi is inverted by splitting off the last level
        let t = if units { random_tr(&mut rng, ring, n, deg) } else { random_mt(&mut rng, ring, n, deg) };
        let back = Pair { h: t.truncate(n - 1), u: t.level(n).u.clone(), f: t.level(n).f.clone() };
        if psi(&back) != t {
            bijective = false;
        }
    }
    let (m, sub) = if units { ("TR", "TL") } else { ("MT", "ML") };
    Ok(StructureReport {
        claim: format!("{m}_{n} = {sub}^{n}_{n} x| {m}_{}", n - 1),
        instance: format!("{ring}, n = {n}, {} sampled pairs, seed {seed}", samples),
        lhs_order: samples as u64,
        rhs_order: samples as u64,
        map_bijective: bijective,
        map_homomorphic: homomorphic,
        witnesses,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct NormalityReport {
    pub instance: String,
    pub subgroup_order: u64,
    pub group_order: u64,
    pub normal: bool,
    pub witness: Option<serde_json::Value>,
}

/// Whether `pi_n(ML^n_k)` is normal in `pi_n(MT_n)`; for `k < n` the report
/// carries a conjugate that leaves the subgroup.
pub fn normality_report(ring: &Ring, n: usize, k: usize, opts: &SpaceOptions) -> Result<NormalityReport> {
    let g = Components::mt(ring, n, opts)?.group(opts.group_cap)?;
    let h = Components::ml(ring, n, k, opts)?.group(opts.group_cap)?;
    let w = h.normality_witness(&g)?;
    let witness = if k == 2 && n == 3 {
        let (conj, inside) = fixed_normality_witness(ring, &h)?;
        Some(json!({"g": "(3:1;x2)", "h": "(2:1;x1)", "conjugate": conj.to_vecpoly().to_string(), "in_subgroup": inside}))
    } else {
        w.map(|w| json!({"g": w.g.images(), "h": w.h.images(), "conjugate": w.conjugate.images()}))
    };
    Ok(NormalityReport {
        instance: format!("pi_{n}(ML^{n}_{k}) in pi_{n}(MT_{n}) over {ring}"),
        subgroup_order: h.order() as u64,
        group_order: g.order() as u64,
        normal: h.is_normal_in(&g)?,
        witness,
    })
}

/// `g h g^-1` for `g = (3:1;x2)`, `h = (2:1;x1)` in `MT_3`, and whether its
/// induced map lies in `ml`.
pub fn fixed_normality_witness(ring: &Ring, ml: &PermGroup) -> Result<(TriElem, bool)> {
    let one1 = MultiPoly::one(ring, 1);
    let one2 = MultiPoly::one(ring, 2);
    let g = TriElem::factor(3, 3, one2, MultiPoly::var(ring, 2, 1))?;
    let h = TriElem::factor(3, 2, one1, MultiPoly::var(ring, 1, 0))?;
    let conj = compose_tri(&compose_tri(&g, &h)?, &invert_tri(&g)?)?;
    let table = Perm::new(conj.perm_table(None)?)?;
    Ok((conj, ml.contains(&table)))
}

/// `P(R)` as a permutation group of `R`.
pub fn poly_permutation_group(ring: &Ring, opts: &SpaceOptions) -> Result<PermGroup> {
    let p = enumerate_poly_permutations(ring, opts)?;
    let elems = p.tables().iter().map(|t| Perm::new(t.to_vec())).collect::<Result<Vec<_>>>()?;
    PermGroup::from_elements(ring.size(), elems)
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupProps {
    pub ring: String,
    pub n: usize,
    pub order: u64,
    pub abelian: bool,
    pub solvable: bool,
    pub nilpotent: bool,
    pub p_group: Option<bool>,
    pub derived_orders: Vec<u64>,
    pub lower_central_orders: Vec<u64>,
    pub noncommuting_pair: Option<[Vec<u32>; 2]>,
}

/// Abelian, solvable and nilpotent tests for `pi_n(MT_n)`.
pub fn group_props(ring: &Ring, n: usize, opts: &SpaceOptions) -> Result<GroupProps> {
    let g = Components::mt(ring, n, opts)?.group(opts.group_cap)?;
    let derived = g.derived_series()?;
    let lower = g.lower_central_series()?;
    let orders = |s: &[PermGroup]| s.iter().map(|x| x.order() as u64).collect::<Vec<_>>();
    Ok(GroupProps {
        ring: ring.name().to_string(),
        n,
        order: g.order() as u64,
        abelian: g.is_abelian(),
        solvable: derived.last().unwrap().is_trivial(),
        nilpotent: lower.last().unwrap().is_trivial(),
        p_group: p_group_check(ring, g.order() as u128).ok(),
        derived_orders: orders(&derived),
        lower_central_orders: orders(&lower),
        noncommuting_pair: g.noncommuting_pair().map(|(a, b)| [a.images().to_vec(), b.images().to_vec()]),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn induced_decomposition_over_f2() {
        let f2 = Ring::parse("F2").unwrap();
        let rep = verify_decomposition(&f2, 2, DecompositionLevel::Induced, &SpaceOptions::default(), 0, 0).unwrap();
        assert!(rep.ok(), "{rep:?}");
        assert_eq!(rep.lhs_order, 8);
        let rep = verify_decomposition(&f2, 3, DecompositionLevel::Induced, &SpaceOptions::default(), 0, 0).unwrap();
        assert!(rep.ok(), "{rep:?}");
        assert_eq!(rep.lhs_order, 128);
    }

    #[test]
    fn sampled_decomposition() {
        let z4 = Ring::parse("Z4").unwrap();
        for level in [DecompositionLevel::Monoid, DecompositionLevel::Group] {
            let rep = verify_decomposition(&z4, 3, level, &SpaceOptions::default(), 10, 1).unwrap();
            assert!(rep.ok(), "{rep:?}");
        }
    }

    #[test]
    fn normality_over_f2() {
        let f2 = Ring::parse("F2").unwrap();
        assert!(normality_report(&f2, 2, 2, &SpaceOptions::default()).unwrap().normal);
        let rep = normality_report(&f2, 3, 2, &SpaceOptions::default()).unwrap();
        assert!(!rep.normal);
        assert_eq!(rep.witness.unwrap()["in_subgroup"], false);
    }

    #[test]
    fn props_of_small_groups() {
        let f2 = Ring::parse("F2").unwrap();
        let p = group_props(&f2, 2, &SpaceOptions::default()).unwrap();
        assert_eq!(p.order, 8);
        assert!(p.nilpotent && p.solvable && !p.abelian);
        let s5 = poly_permutation_group(&Ring::parse("F5").unwrap(), &SpaceOptions::default()).unwrap();
        assert_eq!(s5.derived_series().unwrap().iter().map(|g| g.order()).collect::<Vec<_>>(), [120, 60]);
    }
}
