use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::StructureReport;
use crate::error::{Error, Result};
use crate::funcspace::{enumerate_poly_functions, enumerate_poly_permutations, FuncSpace, SpaceOptions};
use crate::ring::Ring;

/// Binary operation on element labels `0..order`.
pub type Op = Arc<dyn Fn(usize, usize) -> usize + Send + Sync>;
/// `action(a, b)` is the image of `b` under the endomorphism attached to `a`.
pub type Action = Arc<dyn Fn(usize, usize) -> usize + Send + Sync>;

/// Monoids up to this order get an exhaustive associativity check.
pub const EXHAUSTIVE_ASSOC: usize = 512;
const SAMPLED_TRIPLES: usize = 20_000;

#[derive(Clone)]
pub struct FiniteMonoid {
    name: String,
    order: usize,
    identity: usize,
    op: Op,
}

impl fmt::Debug for FiniteMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteMonoid({}, order {})", self.name, self.order)
    }
}

impl FiniteMonoid {
    /// Checks the identity law and associativity (exhaustive up to
    /// [`EXHAUSTIVE_ASSOC`] elements, sampled above).
    pub fn new(name: impl Into<String>, order: usize, identity: usize, op: Op) -> Result<FiniteMonoid> {
        let m = FiniteMonoid { name: name.into(), order, identity, op };
        if identity >= order {
            return Err(Error::InvalidStructure(format!("identity {identity} outside {order} elements")));
        }
        for x in 0..order {
            if m.mul(identity, x) != x || m.mul(x, identity) != x {
                return Err(Error::InvalidStructure(format!("{}: identity law fails at {x}", m.name)));
            }
        }
        let assoc = |(a, b, c): (usize, usize, usize)| m.mul(m.mul(a, b), c) == m.mul(a, m.mul(b, c));
        let bad = if order <= EXHAUSTIVE_ASSOC {
            (0..order)
                .flat_map(|a| (0..order).flat_map(move |b| (0..order).map(move |c| (a, b, c))))
                .find(|&t| !assoc(t))
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(order as u64);
            (0..SAMPLED_TRIPLES)
                .map(|_| (rng.gen_range(0..order), rng.gen_range(0..order), rng.gen_range(0..order)))
                .find(|&t| !assoc(t))
        };
        if let Some(t) = bad {
            return Err(Error::InvalidStructure(format!("{}: associativity fails at {t:?}", m.name)));
        }
        Ok(m)
    }

    /// Monoid given by its Cayley table (row `a`, column `b` holds `ab`).
    pub fn from_table(name: impl Into<String>, order: usize, table: Vec<usize>) -> Result<FiniteMonoid> {
        if table.len() != order * order {
            return Err(Error::InvalidStructure("Cayley table has the wrong size".into()));
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| table[e * order + x] == x && table[x * order + e] == x))
            .ok_or_else(|| Error::InvalidStructure("no identity element".into()))?;
        let table = Arc::new(table);
        FiniteMonoid::new(name, order, identity, Arc::new(move |a, b| table[a * order + b]))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        (self.op)(a, b)
    }

    pub fn inverse(&self, a: usize) -> Option<usize> {
        (0..self.order).find(|&b| self.mul(a, b) == self.identity && self.mul(b, a) == self.identity)
    }

    pub fn is_group(&self) -> bool {
        (0..self.order).all(|a| self.inverse(a).is_some())
    }
}

/// The group of two-sided units of a monoid, with labels into the monoid.
#[derive(Clone, Debug)]
pub struct UnitGroup {
    pub group: FiniteMonoid,
    /// `members[i]` is the monoid label of group element `i`; ascending.
    pub members: Vec<usize>,
}

pub fn units_of(m: &FiniteMonoid) -> Result<UnitGroup> {
    let members: Vec<usize> = (0..m.order).filter(|&a| m.inverse(a).is_some()).collect();
    let pos: Arc<HashMap<usize, usize>> = Arc::new(members.iter().enumerate().map(|(i, &a)| (a, i)).collect());
    let labels = Arc::new(members.clone());
    let inner = m.clone();
    let identity = pos[&m.identity];
    let op: Op = Arc::new(move |a, b| pos[&inner.mul(labels[a], labels[b])]);
    let group = FiniteMonoid::new(format!("units of {}", m.name), members.len(), identity, op)?;
    Ok(UnitGroup { group, members })
}

/// `B x| A` on labels `a * |B| + b` with `(a,b)(c,d) = (ac, b * phi_a(d))`.
///
/// Each `phi_a` must be an endomorphism of `B` and `a -> phi_a` a monoid
/// homomorphism into `End(B)`; both are checked exhaustively.
pub fn semidirect(b: &FiniteMonoid, a: &FiniteMonoid, action: Action) -> Result<FiniteMonoid> {
    let nb = b.order;
    for x in 0..a.order {
        if action(x, b.identity) != b.identity {
            return Err(Error::InvalidStructure(format!("action of {x} moves the identity")));
        }
        for d in 0..nb {
            for e in 0..nb {
                if action(x, b.mul(d, e)) != b.mul(action(x, d), action(x, e)) {
                    return Err(Error::InvalidStructure(format!("action of {x} is not an endomorphism")));
                }
            }
        }
    }
    for d in 0..nb {
        if action(a.identity, d) != d {
            return Err(Error::InvalidStructure("identity of A acts nontrivially".into()));
        }
        for x in 0..a.order {
            for y in 0..a.order {
                if action(a.mul(x, y), d) != action(x, action(y, d)) {
                    return Err(Error::InvalidStructure(format!("action is not a homomorphism at ({x},{y})")));
                }
            }
        }
    }
    let (bm, am) = (b.clone(), a.clone());
    let op: Op = Arc::new(move |p, q| {
        let (x, d1) = (p / nb, p % nb);
        let (y, d2) = (q / nb, q % nb);
        am.mul(x, y) * nb + bm.mul(d1, action(x, d2))
    });
    let name = format!("{} x| {}", b.name, a.name);
    FiniteMonoid::new(name, a.order * nb, a.identity * nb + b.identity, op)
}

/// Compares `units_of(B x| A)` with `units_of(B) x| units_of(A)` under the
/// restricted action: same label set, same products.
pub fn verify_semidirect_units(name: &str, b: &FiniteMonoid, a: &FiniteMonoid, action: Action) -> Result<StructureReport> {
    let m = semidirect(b, a, action.clone())?;
    let um = units_of(&m)?;
    let ub = units_of(b)?;
    let ua = units_of(a)?;
    let nb = b.order();
    let pos_b: HashMap<usize, usize> = ub.members.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let mut witnesses = Vec::new();
    // every unit of A acts bijectively on the units of B
    let mut restricted_ok = true;
    for &x in &ua.members {
        let mut image: Vec<usize> = Vec::with_capacity(ub.members.len());
        for &d in &ub.members {
            match pos_b.get(&action(x, d)) {
                Some(&i) => image.push(i),
                None => restricted_ok = false,
            }
        }
        image.sort_unstable();
        image.dedup();
        restricted_ok &= image.len() == ub.members.len();
    }
    witnesses.push(json!({"restricted_action_bijective": restricted_ok}));
    if !restricted_ok {
        return Ok(StructureReport {
            claim: "units of a semidirect product".into(),
            instance: name.into(),
            lhs_order: um.members.len() as u64,
            rhs_order: 0,
            map_bijective: false,
            map_homomorphic: false,
            witnesses,
        });
    }
    let (ubm, uam) = (Arc::new(ub.members.clone()), Arc::new(ua.members.clone()));
    let pos_b = Arc::new(pos_b);
    let act = action.clone();
    let (ubm2, uam2) = (ubm.clone(), uam.clone());
    let restricted: Action = Arc::new(move |x, d| pos_b[&act(uam2[x], ubm2[d])]);
    let rhs = semidirect(&ub.group, &ua.group, restricted)?;
    let nub = ub.members.len();
    let embed = |p: usize| uam[p / nub] * nb + ubm[p % nub];
    let mut image: Vec<usize> = (0..rhs.order()).map(embed).collect();
    image.sort_unstable();
    let bijective = image == um.members;
    let homomorphic = (0..rhs.order())
        .all(|p| (0..rhs.order()).all(|q| embed(rhs.mul(p, q)) == m.mul(embed(p), embed(q))));
    Ok(StructureReport {
        claim: "units of a semidirect product".into(),
        instance: name.into(),
        lhs_order: um.members.len() as u64,
        rhs_order: rhs.order() as u64,
        map_bijective: bijective,
        map_homomorphic: homomorphic,
        witnesses,
    })
}

fn space_table(space: &FuncSpace, mul: bool) -> Vec<usize> {
    let r = space.ring();
    let n = space.len();
    let mut out = Vec::with_capacity(n * n);
    for x in space.tables() {
        for y in space.tables() {
            let z: Vec<_> = x
                .iter()
                .zip(y.iter())
                .map(|(&s, &t)| if mul { r.mul(s, t) } else { r.add(s, t) })
                .collect();
            out.push(space.index_of(&z).expect("function space is closed"));
        }
    }
    out
}

/// `(F(R^k), +)` and `(F(R^k), *)` as monoids on the space's indices.
pub fn function_monoids(ring: &Ring, k: usize, opts: &SpaceOptions) -> Result<(FuncSpace, FiniteMonoid, FiniteMonoid)> {
    let space = enumerate_poly_functions(ring, k, opts)?;
    let n = space.len();
    let add = FiniteMonoid::from_table(format!("(F({}),+)", ring), n, space_table(&space, false))?;
    let mul = FiniteMonoid::from_table(format!("(F({}),*)", ring), n, space_table(&space, true))?;
    Ok((space, add, mul))
}

/// Desk instances for the unit theorem: `(Z/m,+) x| (Z/m,*)`,
/// `(F(R),+) x| (F(R),*)` for `R` in `F2, F3, Z4`, and
/// `(F(Z4),*) x| P(Z4)` acting by `F -> F o s^-1`.
pub fn semidirect_unit_instances(opts: &SpaceOptions) -> Result<Vec<(String, FiniteMonoid, FiniteMonoid, Action)>> {
    let mut out = Vec::new();
    let z4 = Ring::parse("Z4")?;
    {
        let r1 = z4.clone();
        let r2 = z4.clone();
        let r3 = z4.clone();
        let add = FiniteMonoid::new("(Z4,+)", 4, 0, Arc::new(move |a, b| r1.add(a as u32, b as u32) as usize))?;
        let mul = FiniteMonoid::new("(Z4,*)", 4, 1, Arc::new(move |a, b| r2.mul(a as u32, b as u32) as usize))?;
        let act: Action = Arc::new(move |a, d| r3.mul(a as u32, d as u32) as usize);
        out.push(("(Z4,+) x| (Z4,*)".to_string(), add, mul, act));
    }
    for spec in ["F2", "F3", "Z4"] {
        let ring = Ring::parse(spec)?;
        let (space, add, mul) = function_monoids(&ring, 1, opts)?;
        let table = Arc::new(space_table(&space, true));
        let n = space.len();
        let act: Action = Arc::new(move |a, d| table[a * n + d]);
        out.push((format!("(F({spec}),+) x| (F({spec}),*)"), add, mul, act));
    }
    {
        let (space, _, mul) = function_monoids(&z4, 1, opts)?;
        let perms = enumerate_poly_permutations(&z4, opts)?;
        let np = perms.len();
        let mut comp = Vec::with_capacity(np * np);
        for s in perms.tables() {
            for t in perms.tables() {
                let st: Vec<u32> = t.iter().map(|&x| s[x as usize]).collect();
                comp.push(perms.index_of(&st).unwrap());
            }
        }
        let p = FiniteMonoid::from_table("P(Z4)", np, comp)?;
        let mut act_table = vec![0usize; np * space.len()];
        for (si, s) in perms.tables().iter().enumerate() {
            let mut inv = vec![0u32; s.len()];
            for (x, &y) in s.iter().enumerate() {
                inv[y as usize] = x as u32;
            }
            for (fi, f) in space.tables().iter().enumerate() {
                let g: Vec<u32> = inv.iter().map(|&x| f[x as usize]).collect();
                act_table[si * space.len() + fi] = space.index_of(&g).unwrap();
            }
        }
        let nf = space.len();
        let act: Action = Arc::new(move |s, f| act_table[s * nf + f]);
        out.push(("(F(Z4),*) x| P(Z4)".to_string(), mul, p, act));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(n: usize) -> FiniteMonoid {
        FiniteMonoid::new(format!("C{n}"), n, 0, Arc::new(move |a, b| (a + b) % n)).unwrap()
    }

    #[test]
    fn trivial_semidirect() {
        let t = cyclic(1);
        let m = semidirect(&t, &t, Arc::new(|_, d| d)).unwrap();
        assert_eq!(m.order(), 1);
    }

    #[test]
    fn units_of_a_group_is_itself() {
        let g = cyclic(6);
        let u = units_of(&g).unwrap();
        assert_eq!(u.members, (0..6).collect::<Vec<_>>());
    }

    #[test]
    fn bad_structures_are_rejected() {
        let sub = FiniteMonoid::new("sub", 3, 0, Arc::new(|a, b| (a + 3 - b) % 3));
        assert!(sub.is_err());
        let c3 = cyclic(3);
        // x -> x + 1 is not an endomorphism
        assert!(semidirect(&c3, &c3, Arc::new(|_, d| (d + 1) % 3)).is_err());
    }

    #[test]
    fn function_space_semidirect_orders() {
        let f2 = Ring::parse("F2").unwrap();
        let (space, add, mul) = function_monoids(&f2, 1, &SpaceOptions::default()).unwrap();
        let fu = space.unit_valued();
        assert_eq!(space.len() * fu.len(), 4);
        let table = Arc::new(space_table(&space, true));
        let m = semidirect(&add, &mul, Arc::new(move |a, d| table[a * 4 + d])).unwrap();
        assert_eq!(m.order(), 16);
        assert_eq!(units_of(&m).unwrap().members.len(), 4);
    }

    #[test]
    fn unit_theorem_on_small_instances() {
        let z4 = Ring::parse("Z4").unwrap();
        let (r1, r2, r3) = (z4.clone(), z4.clone(), z4.clone());
        let add = FiniteMonoid::new("(Z4,+)", 4, 0, Arc::new(move |a, b| r1.add(a as u32, b as u32) as usize)).unwrap();
        let mul = FiniteMonoid::new("(Z4,*)", 4, 1, Arc::new(move |a, b| r2.mul(a as u32, b as u32) as usize)).unwrap();
        let rep = verify_semidirect_units("z4", &add, &mul, Arc::new(move |a, d| r3.mul(a as u32, d as u32) as usize)).unwrap();
        assert!(rep.ok(), "{rep:?}");
        assert_eq!(rep.lhs_order, 8);
    }
}
