//! Named verification checks, each producing a pass flag and a JSON detail.
//! `criteria` runs the fixed desk-scale list; `ring_bundle` runs what applies
//! to one ring.

use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::dual::{dual_cross_check, dual_eval, embed_phi_check, embed_psi, is_perm_dual, DualPoly};
use crate::error::Result;
use crate::funcspace::{enumerate_poly_functions, enumerate_poly_permutations, order_report, ratio_report, tr_vs_mt_report, SpaceOptions};
use crate::poly::{compositional_inverse, is_automorphism, is_permutation_poly_brute, nobauer_test, MultiPoly};
use crate::ring::{Idx, Ring};
use crate::sample::{random_automorphism, random_mt, random_perm_poly, random_point, random_poly, random_tr};
use crate::structure::{
    group_props, normality_report, poly_permutation_group, semidirect_unit_instances, verify_decomposition, verify_semidirect_units,
    DecompositionLevel,
};
use crate::tri::{compose_tri, invert_tri, make_tri, TriElem};

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub id: String,
    pub name: String,
    pub passed: bool,
    pub seconds: f64,
    pub detail: Value,
}

impl Check {
    pub fn line(&self) -> String {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        format!("{tag} {} {} ({:.2}s)", self.id, self.name, self.seconds)
    }
}

fn run(id: &str, name: &str, body: impl FnOnce() -> Result<(bool, Value)>) -> Check {
    let start = Instant::now();
    let (passed, detail) = match body() {
        Ok(x) => x,
        Err(e) => (false, json!({"error": e.to_string()})),
    };
    Check { id: id.into(), name: name.into(), passed, seconds: start.elapsed().as_secs_f64(), detail }
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn ring(spec: &str) -> Result<Ring> {
    Ring::parse(spec)
}

fn timed<T>(f: impl FnOnce() -> Result<T>) -> Result<(T, Duration)> {
    let start = Instant::now();
    let v = f()?;
    Ok((v, start.elapsed()))
}

fn counts_check(spec: &str, k: usize, opts: &SpaceOptions) -> Result<(bool, Value)> {
    let r = ring(spec)?;
    let ((f, p), took) = timed(|| {
        let f = enumerate_poly_functions(&r, k, opts)?;
        let p = if k == 1 { Some(enumerate_poly_permutations(&r, opts)?.len()) } else { None };
        Ok((f, p))
    })?;
    let fu = f.unit_valued().len();
    let q = r.local().map(|l| l.residue_size() as u128).unwrap_or(r.size() as u128);
    let mut ok = took < Duration::from_secs(10);
    let mut detail = json!({"ring": spec, "k": k, "F": f.len(), "FU": fu, "P": p, "seconds": took.as_secs_f64()});
    if r.is_field() {
        let qk = q.pow(k as u32) as u32;
        ok &= f.len() as u128 == q.pow(qk) && fu as u128 == (q - 1).pow(qk);
        detail["expected"] = json!({"F": q.pow(qk).to_string(), "FU": (q - 1).pow(qk).to_string()});
    }
    Ok((ok, detail))
}

/// Exact counts of polynomial functions over small fields and `Z4`.
pub fn check_counts(opts: &SpaceOptions) -> Check {
    run("1", "function counts", || {
        let mut ok = true;
        let mut rows = Vec::new();
        for (spec, k) in [("F2", 1), ("F2", 2), ("F3", 1)] {
            let (p, d) = counts_check(spec, k, opts)?;
            ok &= p;
            rows.push(d);
        }
        let (p, d) = counts_check("Z4", 1, opts)?;
        ok &= p && d["F"] == 64 && d["FU"] == 16 && d["P"] == 8;
        rows.push(d);
        Ok((ok, Value::Array(rows)))
    })
}

/// Unit-valued share of polynomial functions.
pub fn check_unit_ratio(opts: &SpaceOptions) -> Check {
    run("2", "unit-valued ratio", || {
        let mut ok = true;
        let mut rows = Vec::new();
        for (spec, k) in [("Z4", 1), ("F2[t]/t^2", 1), ("Z9", 1), ("Z4", 2)] {
            let rep = ratio_report(&ring(spec)?, k, opts)?;
            ok &= rep.matched;
            rows.push(to_json(&rep));
        }
        Ok((ok, Value::Array(rows)))
    })
}

/// Materialized order of `pi_2(MT_2)` against the product formula.
pub fn check_orders(opts: &SpaceOptions) -> Check {
    run("3", "induced group orders", || {
        let mut ok = true;
        let mut rows = Vec::new();
        for (spec, expected) in [("F2", 8u64), ("F3", 1296), ("Z4", 8192)] {
            let (rep, took) = timed(|| order_report(&ring(spec)?, 2, opts))?;
            ok &= rep.matched && rep.counts["materialized_order"] == expected && took < Duration::from_secs(60);
            let mut v = to_json(&rep);
            v["seconds"] = json!(took.as_secs_f64());
            rows.push(v);
        }
        Ok((ok, Value::Array(rows)))
    })
}

/// `pi_2(TR_2)` against `pi_2(MT_2)`.
pub fn check_tr_vs_mt(opts: &SpaceOptions) -> Check {
    run("4", "TR versus MT", || {
        let mut ok = true;
        let mut rows = Vec::new();
        for spec in ["F2", "Z4", "F3"] {
            let rep = tr_vs_mt_report(&ring(spec)?, 2, opts)?;
            ok &= rep.matched && (spec == "F2" || !rep.witnesses.is_empty());
            rows.push(to_json(&rep));
        }
        Ok((ok, Value::Array(rows)))
    })
}

/// `(x1, x1 + x2)` and `(x1 + 1, x1 + x2)` over `F2` do not commute.
pub fn f2_noncommuting_pair() -> Result<(bool, Value)> {
    let f2 = ring("F2")?;
    let x = MultiPoly::var(&f2, 1, 0);
    let one = MultiPoly::one(&f2, 1);
    let a = make_tri(x.clone(), vec![(x.clone(), one.clone())])?;
    let b = make_tri(x.add(&one), vec![(x.clone(), one)])?;
    let ab = compose_tri(&a, &b)?.perm_table(None)?;
    let ba = compose_tri(&b, &a)?.perm_table(None)?;
    Ok((ab != ba, json!({"a": a.to_string(), "b": b.to_string(), "ab": ab, "ba": ba})))
}

/// Abelian, solvable and nilpotent properties of the induced groups.
pub fn check_group_props(opts: &SpaceOptions) -> Check {
    run("5", "induced group properties", || {
        let f2 = group_props(&ring("F2")?, 2, opts)?;
        let z4 = group_props(&ring("Z4")?, 2, opts)?;
        let f3 = group_props(&ring("F3")?, 2, opts)?;
        let p5 = poly_permutation_group(&ring("F5")?, opts)?;
        let derived: Vec<usize> = p5.derived_series()?.iter().map(|g| g.order()).collect();
        let (pair_ok, pair) = f2_noncommuting_pair()?;
        let ok = f2.nilpotent
            && f2.p_group == Some(true)
            && z4.nilpotent
            && z4.p_group == Some(true)
            && f3.solvable
            && !f3.nilpotent
            && !f3.abelian
            && derived == [120, 60]
            && pair_ok
            && !f2.abelian;
        Ok((ok, json!({"F2": f2, "Z4": z4, "F3": f3, "P(F5)_derived_orders": derived, "F2_pair": pair})))
    })
}

/// Round trips of `invert_tri` on `TR_3` and of `solve_preimage` on `MT_3`.
pub fn round_trips(r: &Ring, n: usize, samples: usize, points: usize, seed: u64) -> Result<(bool, Value)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let id = TriElem::identity(r, n);
    let mut invert_fail = 0;
    for _ in 0..samples {
        let t = random_tr(&mut rng, r, n, 3);
        let inv = invert_tri(&t)?;
        if compose_tri(&t, &inv)? != id || compose_tri(&inv, &t)? != id {
            invert_fail += 1;
        }
    }
    let mut solve_fail = 0;
    for _ in 0..samples {
        let t = random_mt(&mut rng, r, n, 3);
        for _ in 0..points {
            let p = random_point(&mut rng, r, n);
            if t.solve_preimage(&t.apply(&p)?)? != p {
                solve_fail += 1;
            }
        }
    }
    Ok((
        invert_fail == 0 && solve_fail == 0,
        json!({"ring": r.name(), "n": n, "samples": samples, "points": points, "invert_failures": invert_fail, "solve_failures": solve_fail}),
    ))
}

pub fn check_round_trips(seed: u64) -> Check {
    run("6", "inverse round trips", || round_trips(&ring("Z4")?, 3, 1000, 100, seed))
}

fn normality_rows(r: &Ring, opts: &SpaceOptions) -> Result<(bool, Vec<Value>)> {
    let mut ok = true;
    let mut rows = Vec::new();
    for (n, k, expect) in [(2, 2, true), (3, 3, true), (3, 2, false)] {
        let rep = normality_report(r, n, k, opts)?;
        ok &= rep.normal == expect;
        if !expect {
            ok &= rep.witness.as_ref().is_some_and(|w| w["in_subgroup"] == false);
        }
        rows.push(to_json(&rep));
    }
    Ok((ok, rows))
}

/// Split-extension maps at induced level plus normality of the level subgroups.
pub fn check_decomposition(opts: &SpaceOptions) -> Check {
    run("7", "decomposition and normality", || {
        let mut ok = true;
        let mut rows = Vec::new();
        for spec in ["F2", "F3", "Z4"] {
            let rep = verify_decomposition(&ring(spec)?, 2, DecompositionLevel::Induced, opts, 0, 0)?;
            ok &= rep.ok();
            rows.push(to_json(&rep));
        }
        let (nok, nrows) = normality_rows(&ring("F2")?, opts)?;
        ok &= nok;
        rows.extend(nrows);
        Ok((ok, Value::Array(rows)))
    })
}

/// Units of a semidirect product against the semidirect product of units.
pub fn check_semidirect_units(opts: &SpaceOptions) -> Check {
    run("8", "units of semidirect products", || {
        let mut rows = Vec::new();
        let mut passed = 0;
        for (name, b, a, act) in semidirect_unit_instances(opts)? {
            let rep = verify_semidirect_units(&name, &b, &a, act)?;
            passed += rep.ok() as usize;
            rows.push(to_json(&rep));
        }
        Ok((passed >= 3 && passed == rows.len(), Value::Array(rows)))
    })
}

fn random_perm_dual(rng: &mut ChaCha8Rng, r: &Ring, n: usize) -> Result<DualPoly> {
    let mut f0 = random_perm_poly(rng, r, 3);
    if !crate::poly::is_unit_valued(&f0.derivative(0)?, None)? {
        f0 = random_automorphism(rng, r, 3);
    }
    let mut comps = vec![f0];
    comps.extend((0..n).map(|_| random_poly(rng, r, 1, 3)));
    let f = DualPoly::new(r, comps)?;
    debug_assert!(is_perm_dual(&f)?);
    Ok(f)
}

/// Exact homomorphism `psi(f(g)) = psi(f) o psi(g)` on random pairs.
pub fn embed_homomorphism(r: &Ring, n: usize, pairs: usize, seed: u64) -> Result<(bool, Value)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    for _ in 0..pairs {
        let f = random_perm_dual(&mut rng, r, n)?;
        let g = random_perm_dual(&mut rng, r, n)?;
        if embed_psi(&dual_eval(&f, &g)?)? != compose_tri(&embed_psi(&f)?, &embed_psi(&g)?)? {
            failures += 1;
        }
    }
    Ok((failures == 0, json!({"ring": r.name(), "n": n, "pairs": pairs, "failures": failures})))
}

pub fn check_dual(opts: &SpaceOptions, seed: u64) -> Check {
    run("9", "dual numbers", || {
        let mut ok = true;
        let mut rows = Vec::new();
        for spec in ["F2", "F3", "Z4"] {
            let c = dual_cross_check(&ring(spec)?, 3)?;
            ok &= c.perm_agree && c.equiv_agree;
            rows.push(to_json(&c));
        }
        for (spec, n, pairs) in [("Z4", 1, 250), ("F3", 2, 250)] {
            let (p, d) = embed_homomorphism(&ring(spec)?, n, pairs, seed)?;
            ok &= p;
            rows.push(d);
        }
        for spec in ["F2", "Z4"] {
            let e = embed_phi_check(&ring(spec)?, opts)?;
            ok &= e.injective && e.corpus_count == e.closure_count;
            rows.push(to_json(&e));
        }
        Ok((ok, Value::Array(rows)))
    })
}

fn all_univariate(r: &Ring, max_deg: u32) -> impl Iterator<Item = MultiPoly> + '_ {
    let q = r.size();
    let len = max_deg as usize + 1;
    (0..q.pow(len as u32)).map(move |mut i| {
        let coeffs: Vec<Idx> = (0..len)
            .map(|_| {
                let c = (i % q) as Idx;
                i /= q;
                c
            })
            .collect();
        MultiPoly::univariate(r, &coeffs)
    })
}

/// Nobauer's test against brute-force bijectivity, all polynomials of degree `<= max_deg`.
pub fn nobauer_cross_check(r: &Ring, max_deg: u32) -> Result<(bool, Value)> {
    let mut total = 0;
    let mut perms = 0;
    let mut disagree = Vec::new();
    for f in all_univariate(r, max_deg) {
        let brute = is_permutation_poly_brute(&f)?;
        total += 1;
        perms += brute as usize;
        if nobauer_test(&f)? != brute && disagree.len() < 5 {
            disagree.push(f.to_string());
        }
    }
    Ok((disagree.is_empty(), json!({"ring": r.name(), "max_degree": max_deg, "polynomials": total, "permutations": perms, "disagreements": disagree})))
}

/// Coefficient test for automorphisms against success of the Newton inverse.
/// A failed Newton run is backed by non-bijectivity on `R` or on `R[a]`.
pub fn automorphism_cross_check(r: &Ring, max_deg: u32) -> Result<(bool, Value)> {
    let mut automorphisms = 0;
    let mut disagree = Vec::new();
    let mut uncertified = Vec::new();
    let mut total = 0;
    for f in all_univariate(r, max_deg) {
        total += 1;
        let auto = is_automorphism(&f)?;
        let inv = compositional_inverse(&f)?;
        automorphisms += auto as usize;
        if auto != inv.is_some() {
            disagree.push(f.to_string());
        }
        if let Some(g) = &inv {
            if f.compose(g) != MultiPoly::var(r, 1, 0) || g.compose(&f) != MultiPoly::var(r, 1, 0) {
                disagree.push(f.to_string());
            }
        } else {
            let dual = DualPoly::new(r, vec![f.clone(), MultiPoly::zero(r, 1)])?;
            if is_permutation_poly_brute(&f)? && is_perm_dual(&dual)? {
                uncertified.push(f.to_string());
            }
        }
    }
    Ok((
        disagree.is_empty() && uncertified.is_empty(),
        json!({"ring": r.name(), "max_degree": max_deg, "polynomials": total, "automorphisms": automorphisms,
               "disagreements": disagree, "uncertified": uncertified}),
    ))
}

pub fn check_criteria() -> Check {
    run("10", "permutation and automorphism criteria", || {
        let mut ok = true;
        let mut rows = Vec::new();
        for spec in ["Z4", "Z8", "Z9", "F2[t]/t^2"] {
            let (p, d) = nobauer_cross_check(&ring(spec)?, 4)?;
            ok &= p;
            rows.push(d);
        }
        let (p, d) = automorphism_cross_check(&ring("Z4")?, 3)?;
        ok &= p;
        rows.push(d);
        Ok((ok, Value::Array(rows)))
    })
}

/// Permutation share `|P|/|F|` against `q!(q-1)^q/q^(2q)`; the reciprocal
/// orientation is reported as a flag.
pub fn check_permutation_ratio(opts: &SpaceOptions) -> Check {
    run("11", "permutation ratio", || {
        let mut ok = true;
        let mut rows = Vec::new();
        for spec in ["Z4", "F2[t]/t^2"] {
            let rep = ratio_report(&ring(spec)?, 1, opts)?;
            ok &= rep.formula["swapped_orientation_holds"] == true;
            rows.push(to_json(&rep));
        }
        Ok((ok, Value::Array(rows)))
    })
}

/// The fixed list of desk-scale checks, in order.
pub fn criteria(opts: &SpaceOptions, seed: u64) -> Vec<Check> {
    vec![
        check_counts(opts),
        check_unit_ratio(opts),
        check_orders(opts),
        check_tr_vs_mt(opts),
        check_group_props(opts),
        check_round_trips(seed),
        check_decomposition(opts),
        check_semidirect_units(opts),
        check_dual(opts, seed),
        check_criteria(),
        check_permutation_ratio(opts),
    ]
}

/// Checks for a single ring at `n` variables; local-ring checks are skipped
/// for rings that are not local.
pub fn ring_bundle(r: &Ring, n: usize, opts: &SpaceOptions, seed: u64) -> Vec<Check> {
    let mut out = Vec::new();
    let local = r.is_local();
    if local {
        out.push(run("ratio", "unit-valued ratio k=1", || {
            let rep = ratio_report(r, 1, opts)?;
            Ok((rep.matched, to_json(&rep)))
        }));
        out.push(run("order", "induced group order", || {
            let rep = order_report(r, n, opts)?;
            Ok((rep.matched, to_json(&rep)))
        }));
    }
    if local && n >= 2 {
        out.push(run("tr-vs-mt", "TR versus MT", || {
            let rep = tr_vs_mt_report(r, n, opts)?;
            Ok((rep.matched, to_json(&rep)))
        }));
        out.push(run("decomposition", "induced decomposition", || {
            let rep = verify_decomposition(r, n, DecompositionLevel::Induced, opts, 0, seed)?;
            Ok((rep.ok(), to_json(&rep)))
        }));
        out.push(run("normality", "last level normal", || {
            let rep = normality_report(r, n, n, opts)?;
            Ok((rep.normal, to_json(&rep)))
        }));
    }
    out.push(run("props", "group properties", || {
        let p = group_props(r, n, opts)?;
        let ok = match r.local() {
            Some(l) => {
                let q = l.residue_size();
                p.solvable == (q <= 4) && p.nilpotent == (q == 2) && p.abelian == (n == 1)
            }
            None => true,
        };
        Ok((ok, to_json(&p)))
    }));
    out.push(run("round-trips", "inverse round trips", || round_trips(r, n.max(2), 100, 20, seed)));
    out.push(run("dual", "dual criteria and embedding", || {
        let c = dual_cross_check(r, 2)?;
        let (h, d) = embed_homomorphism(r, 1, 100, seed)?;
        Ok((c.perm_agree && c.equiv_agree && h, json!({"cross_check": c, "embedding": d})))
    }));
    if local && !r.is_field() {
        out.push(run("nobauer", "Nobauer against brute force", || nobauer_cross_check(r, 3)));
    }
    out
}
