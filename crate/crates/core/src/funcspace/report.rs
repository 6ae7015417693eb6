use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};

use super::{
    enumerate_poly_functions, enumerate_poly_permutations, nonunit_level_witness, Components, SpaceOptions,
};
use crate::error::{Error, Result};
use crate::group::Perm;
use crate::ring::{Idx, Ring};
use crate::tri::table_from_components;

/// Non-negative fraction in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rational {
    num: u128,
    den: u128,
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Rational {
    pub fn new(num: u128, den: u128) -> Rational {
        assert!(den != 0);
        let g = gcd(num, den).max(1);
        Rational { num: num / g, den: den / g }
    }

    pub fn num(&self) -> u128 {
        self.num
    }

    pub fn den(&self) -> u128 {
        self.den
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Machine-readable outcome of a counting check.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub ring: String,
    pub n_or_k: usize,
    pub counts: BTreeMap<String, Value>,
    pub formula: BTreeMap<String, Value>,
    #[serde(rename = "match")]
    pub matched: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<String>,
}

impl Report {
    fn new(ring: &Ring, n_or_k: usize) -> Report {
        Report {
            ring: ring.name().to_string(),
            n_or_k,
            counts: BTreeMap::new(),
            formula: BTreeMap::new(),
            matched: false,
            witnesses: Vec::new(),
        }
    }

    fn count(&mut self, key: &str, v: impl Into<Value>) {
        self.counts.insert(key.to_string(), v.into());
    }

    fn formula(&mut self, key: &str, v: impl Into<Value>) {
        self.formula.insert(key.to_string(), v.into());
    }
}

fn pow(base: u128, e: u128) -> Result<u128> {
    let e = u32::try_from(e).map_err(|_| overflow())?;
    base.checked_pow(e).ok_or_else(overflow)
}

fn overflow() -> Error {
    Error::CapExceeded { what: "exact formula value", size: u128::MAX, cap: u128::MAX }
}

fn residue_size(ring: &Ring) -> Result<u128> {
    Ok(ring.local().ok_or_else(|| Error::NotLocal(ring.name().into()))?.residue_size() as u128)
}

/// Whether `count` is a power of the residue characteristic of the local ring.
pub fn p_group_check(ring: &Ring, count: u128) -> Result<bool> {
    let q = residue_size(ring)?;
    let p = (2..=q).find(|d| q % d == 0).unwrap();
    let mut c = count;
    while c > 1 && c % p == 0 {
        c /= p;
    }
    Ok(c == 1)
}

/// Unit-valued ratio `|FU(R^k)| / |F(R^k)| = (q-1)^(q^k) / q^(q^k)`, plus the
/// permutation ratio against `q! (q-1)^q / q^(2q)` in both orientations for `k = 1`.
pub fn ratio_report(ring: &Ring, k: usize, opts: &SpaceOptions) -> Result<Report> {
    let q = residue_size(ring)?;
    let f = enumerate_poly_functions(ring, k, opts)?;
    let fu = f.unit_valued();
    let (nf, nfu) = (f.len() as u128, fu.len() as u128);
    let qk = pow(q, k as u128)?;
    let expected = Rational::new(pow(q - 1, qk)?, pow(q, qk)?);
    let observed = Rational::new(nfu, nf);
    let mut rep = Report::new(ring, k);
    rep.count("F", nf as u64);
    rep.count("FU", nfu as u64);
    rep.count("FU/F", observed.to_string());
    rep.formula("q", q as u64);
    rep.formula("(q-1)^(q^k)/q^(q^k)", expected.to_string());
    rep.matched = observed == expected;
    if k == 1 {
        let np = enumerate_poly_permutations(ring, opts)?.len() as u128;
        let fact: u128 = (1..=q).product();
        let jiang = Rational::new(fact * pow(q - 1, q)?, pow(q, 2 * q)?);
        let p_over_f = Rational::new(np, nf);
        rep.count("P", np as u64);
        rep.count("P/F", p_over_f.to_string());
        rep.count("F/P", Rational::new(nf, np).to_string());
        rep.formula("q!(q-1)^q/q^(2q)", jiang.to_string());
        rep.formula("printed_orientation_holds", Rational::new(nf, np) == jiang);
        rep.formula("swapped_orientation_holds", p_over_f == jiang);
    }
    Ok(rep)
}

/// Materialized `|pi_n(MT_n)|` (when within the group cap) against the product formula.
pub fn order_report(ring: &Ring, n: usize, opts: &SpaceOptions) -> Result<Report> {
    let comps = Components::mt(ring, n, opts)?;
    let mut rep = Report::new(ring, n);
    rep.count("P", comps.f1().len() as u64);
    let mut terms = vec![comps.f1().len().to_string()];
    for (i, (f, u)) in comps.levels().iter().enumerate() {
        rep.count(&format!("F(R^{})", i + 1), f.len() as u64);
        rep.count(&format!("FU(R^{})", i + 1), u.len() as u64);
        terms.push(format!("{}*{}", f.len(), u.len()));
    }
    let formula = comps.order();
    rep.formula("product", terms.join("*"));
    rep.formula("order", formula.to_string());
    rep.matched = if formula <= opts.group_cap as u128 {
        let g = comps.group(opts.group_cap)?;
        rep.count("materialized_order", g.order() as u64);
        g.order() as u128 == formula
    } else {
        rep.count("materialized_order", Value::Null);
        true
    };
    Ok(rep)
}

/// The map `(x1, .., x(i-1), F(..) + xi U(..), ..)` acting only at level 2.
fn level2_map(ring: &Ring, n: usize, f: &[Idx], u: &[Idx]) -> Perm {
    let size = ring.size();
    let x: Vec<Idx> = (0..size as Idx).collect();
    let zeros: Vec<Vec<Idx>> = (2..=n).map(|i| vec![0; size.pow(i as u32 - 1)]).collect();
    let ones: Vec<Vec<Idx>> = (2..=n).map(|i| vec![1; size.pow(i as u32 - 1)]).collect();
    let mut levels: Vec<(&[Idx], &[Idx])> = zeros.iter().zip(&ones).map(|(a, b)| (&a[..], &b[..])).collect();
    levels[0] = (f, u);
    Perm::new(table_from_components(ring, &x, &levels)).expect("level map is a bijection")
}

/// `pi_n(TR_n)` against `pi_n(MT_n)`; equal exactly when `R = F2`.
pub fn tr_vs_mt_report(ring: &Ring, n: usize, opts: &SpaceOptions) -> Result<Report> {
    if n < 2 {
        return Err(Error::InvalidStructure("n must be at least 2".into()));
    }
    let mt = Components::mt(ring, n, opts)?;
    let tr = Components::tr(ring, n, opts)?;
    let mut rep = Report::new(ring, n);
    rep.count("MT", mt.order().to_string());
    rep.count("TR", tr.order().to_string());
    let is_f2 = ring.size() == 2;
    rep.formula("equal_iff_F2", true);
    let equal = mt.order() == tr.order();
    let mut ok = equal == is_f2;
    let witness: Option<(String, Vec<Idx>)> = if is_f2 {
        None
    } else if ring.is_field() {
        // U(b) = a at b = a, 1 elsewhere, for a unit a != 1
        let a = ring.units().into_iter().find(|&a| a != 1).unwrap();
        let u = ring.elements().map(|b| if b == a { a } else { 1 }).collect();
        Some((format!("(2:U;0) with U(b) = {} at b = {}, 1 elsewhere", ring.format_elem(a), ring.format_elem(a)), u))
    } else if ring.is_local() {
        Some(("(2:x1^q - x1 + 1;0)".to_string(), nonunit_level_witness(ring)?.into_vec()))
    } else {
        None
    };
    if mt.order() <= opts.group_cap as u128 {
        let gm = mt.group(opts.group_cap)?;
        let gt = tr.group(opts.group_cap)?;
        ok &= gt.is_subgroup_of(&gm);
        rep.count("materialized_MT", gm.order() as u64);
        rep.count("materialized_TR", gt.order() as u64);
        if let Some((label, u)) = &witness {
            let zero = vec![0; ring.size()];
            let w = level2_map(ring, n, &zero, u);
            let (in_mt, in_tr) = (gm.contains(&w), gt.contains(&w));
            ok &= in_mt && !in_tr;
            rep.witnesses.push(json!({"element": label, "in_MT": in_mt, "in_TR": in_tr}).to_string());
        }
    } else if let Some((label, _)) = &witness {
        rep.witnesses.push(json!({"element": label, "in_MT": Value::Null, "in_TR": Value::Null}).to_string());
    }
    rep.matched = ok;
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_reports() {
        let z4 = Ring::parse("Z4").unwrap();
        let rep = ratio_report(&z4, 1, &SpaceOptions::default()).unwrap();
        assert!(rep.matched);
        assert_eq!(rep.counts["FU/F"], "1/4");
        assert_eq!(rep.counts["P/F"], "1/8");
        assert_eq!(rep.formula["swapped_orientation_holds"], true);
        assert_eq!(rep.formula["printed_orientation_holds"], false);
        let f3 = Ring::parse("F3").unwrap();
        assert!(ratio_report(&f3, 1, &SpaceOptions::default()).unwrap().matched);
        assert!(ratio_report(&Ring::parse("Z6").unwrap(), 1, &SpaceOptions::default()).is_err());
    }

    #[test]
    fn p_groups() {
        let z4 = Ring::parse("Z4").unwrap();
        assert!(p_group_check(&z4, 64).unwrap());
        assert!(p_group_check(&z4, 16).unwrap());
        assert!(!p_group_check(&z4, 24).unwrap());
        assert!(p_group_check(&Ring::parse("F3").unwrap(), 27).unwrap());
    }

    #[test]
    fn order_and_tr_reports() {
        let f2 = Ring::parse("F2").unwrap();
        assert!(order_report(&f2, 2, &SpaceOptions::default()).unwrap().matched);
        assert!(tr_vs_mt_report(&f2, 2, &SpaceOptions::default()).unwrap().matched);
        let f3 = Ring::parse("F3").unwrap();
        let rep = tr_vs_mt_report(&f3, 2, &SpaceOptions::default()).unwrap();
        assert!(rep.matched, "{rep:?}");
        assert_eq!(rep.witnesses.len(), 1);
    }
}
