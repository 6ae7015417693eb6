//! Random low-degree polynomials and triangular elements for property checks.

use rand::Rng;

use crate::poly::{is_permutation_poly, is_unit_valued, MultiPoly};
use crate::ring::{Idx, Ring};
use crate::tri::{Level, TriElem};

const REJECTION_TRIES: usize = 64;

fn exponents(nvars: usize, max_deg: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..nvars {
        let mut next = Vec::new();
        for e in &out {
            let used: u32 = e.iter().sum();
            for k in 0..=max_deg - used {
                let mut e2 = e.clone();
                e2.push(k);
                next.push(e2);
            }
        }
        out = next;
    }
    out
}

fn pick<R: Rng + ?Sized>(rng: &mut R, from: &[Idx]) -> Idx {
    from[rng.gen_range(0..from.len())]
}

/// Polynomial of total degree at most `max_deg`, each monomial present with
/// probability one half and a uniform coefficient.
pub fn random_poly<R: Rng + ?Sized>(rng: &mut R, ring: &Ring, nvars: usize, max_deg: u32) -> MultiPoly {
    let mut terms = Vec::new();
    for e in exponents(nvars, max_deg) {
        if rng.gen_bool(0.5) {
            terms.push((e, rng.gen_range(0..ring.size()) as Idx));
        }
    }
    MultiPoly::from_terms(ring, nvars, terms).unwrap()
}

/// Unit constant plus nilpotent coefficients elsewhere.
pub fn random_unit_poly<R: Rng + ?Sized>(rng: &mut R, ring: &Ring, nvars: usize, max_deg: u32) -> MultiPoly {
    let units = ring.units();
    let nil = ring.nilpotents();
    let mut terms = Vec::new();
    for e in exponents(nvars, max_deg) {
        let c = if e.iter().all(|&k| k == 0) { pick(rng, &units) } else { pick(rng, &nil) };
        terms.push((e, c));
    }
    MultiPoly::from_terms(ring, nvars, terms).unwrap()
}

/// Unit-valued polynomial; rejection sampling with a unit-polynomial fallback.
pub fn random_unit_valued<R: Rng + ?Sized>(rng: &mut R, ring: &Ring, nvars: usize, max_deg: u32) -> MultiPoly {
    for _ in 0..REJECTION_TRIES {
        let f = random_poly(rng, ring, nvars, max_deg);
        if is_unit_valued(&f, None).unwrap_or(false) {
            return f;
        }
    }
    random_unit_poly(rng, ring, nvars, max_deg)
}

/// `a0 + a1 x + (nilpotent higher terms)` with `a1` a unit.
pub fn random_automorphism<R: Rng + ?Sized>(rng: &mut R, ring: &Ring, max_deg: u32) -> MultiPoly {
    let units = ring.units();
    let nil = ring.nilpotents();
    let mut coeffs = vec![rng.gen_range(0..ring.size()) as Idx, pick(rng, &units)];
    for _ in 2..=max_deg {
        coeffs.push(pick(rng, &nil));
    }
    MultiPoly::univariate(ring, &coeffs)
}

/// One-variable permutation polynomial; rejection sampling with an
/// automorphism fallback.
pub fn random_perm_poly<R: Rng + ?Sized>(rng: &mut R, ring: &Ring, max_deg: u32) -> MultiPoly {
    for _ in 0..REJECTION_TRIES {
        let f = random_poly(rng, ring, 1, max_deg);
        if is_permutation_poly(&f).unwrap_or(false) {
            return f;
        }
    }
    random_automorphism(rng, ring, max_deg)
}

/// Random member of `MT_n`.
pub fn random_mt<R: Rng + ?Sized>(rng: &mut R, ring: &Ring, n: usize, max_deg: u32) -> TriElem {
    let f1 = random_perm_poly(rng, ring, max_deg);
    let levels = (1..n)
        .map(|k| Level { f: random_poly(rng, ring, k, max_deg), u: random_unit_valued(rng, ring, k, max_deg) })
        .collect();
    TriElem::trusted(f1, levels)
}

/// Random member of `TR_n`.
pub fn random_tr<R: Rng + ?Sized>(rng: &mut R, ring: &Ring, n: usize, max_deg: u32) -> TriElem {
    let f1 = random_automorphism(rng, ring, max_deg);
    let levels = (1..n)
        .map(|k| Level { f: random_poly(rng, ring, k, max_deg), u: random_unit_poly(rng, ring, k, max_deg) })
        .collect();
    TriElem::trusted(f1, levels)
}

/// Random point of `R^n`.
pub fn random_point<R: Rng + ?Sized>(rng: &mut R, ring: &Ring, n: usize) -> Vec<Idx> {
    (0..n).map(|_| rng.gen_range(0..ring.size()) as Idx).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tri::is_unit_tri;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samples_are_members() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let r = Ring::parse("Z4").unwrap();
        for _ in 0..20 {
            random_mt(&mut rng, &r, 3, 3).validate(None).unwrap();
            assert!(is_unit_tri(&random_tr(&mut rng, &r, 3, 3)));
        }
        assert_eq!(exponents(2, 2).len(), 6);
    }
}
