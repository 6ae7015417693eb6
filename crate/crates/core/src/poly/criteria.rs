//! One-polynomial predicates: unit polynomials, unit-valued polynomials,
//! permutation polynomials and R-automorphisms of R[x].

use super::{func_of, FuncTable, MultiPoly};
use crate::error::{Error, Result};
use crate::ring::{crt_split, Ring};

const NEWTON_CAP: usize = 64;
const NEWTON_DEGREE_CAP: u32 = 1024;

fn expect_univariate(f: &MultiPoly) -> Result<()> {
    if f.nvars() != 1 {
        return Err(Error::ArityMismatch { expected: 1, found: f.nvars() });
    }
    Ok(())
}

/// Constant term a unit, every other coefficient nilpotent.
pub fn is_unit_poly(f: &MultiPoly) -> bool {
    let r = f.ring();
    r.is_unit(f.constant_term())
        && f.terms().all(|(e, c)| e.iter().all(|&k| k == 0) || r.is_nilpotent(c))
}

pub fn unit_poly_inverse(f: &MultiPoly) -> Result<MultiPoly> {
    if !is_unit_poly(f) {
        return Err(Error::NotAUnit(f.to_string()));
    }
    let r = f.ring();
    let n = f.nvars();
    let a0 = f.constant_term();
    let a0_inv = r.inverse(a0).unwrap();
    // f = a0 (1 + m) with m nilpotent, so f^-1 = a0^-1 sum (-m)^j
    let nil = f.sub(&MultiPoly::constant(r, n, a0));
    let step = nil.scalar_mul(r.neg(a0_inv));
    let mut acc = MultiPoly::one(r, n);
    let mut pw = step.clone();
    while !pw.is_zero() {
        acc = acc.add(&pw);
        pw = pw.mul(&step);
    }
    Ok(acc.scalar_mul(a0_inv))
}

pub fn is_unit_valued(f: &MultiPoly, cap: Option<u128>) -> Result<bool> {
    let r = f.ring();
    Ok(func_of(f, cap)?.values().iter().all(|&v| r.is_unit(v)))
}

/// Bijectivity of the induced map on R, by evaluation at every element.
pub fn is_permutation_poly_brute(f: &MultiPoly) -> Result<bool> {
    expect_univariate(f)?;
    Ok(func_of(f, None)?.is_permutation())
}

/// Two-condition test over a local ring that is not a field: `f` permutes the
/// residue field and `f'(a)` is outside the maximal ideal for every `a`.
pub fn nobauer_test(f: &MultiPoly) -> Result<bool> {
    expect_univariate(f)?;
    let r = f.ring();
    let local = r.local().ok_or_else(|| Error::NotLocal(r.name().into()))?;
    if r.is_field() {
        return Err(Error::IsAField(r.name().into()));
    }
    let mut seen = vec![false; local.residue_size()];
    for &rep in local.residue_representatives() {
        let class = local.residue(f.eval(&[rep])) as usize;
        if std::mem::replace(&mut seen[class], true) {
            return Ok(false);
        }
    }
    let df = f.derivative(0)?;
    Ok(r.elements().all(|a| local.residue(df.eval(&[a])) != 0))
}

/// Permutation test: Nöbauer over local non-fields, factor-wise over CRT
/// products, brute force otherwise.
pub fn is_permutation_poly(f: &MultiPoly) -> Result<bool> {
    expect_univariate(f)?;
    let r = f.ring();
    let fast = if r.is_local() && !r.is_field() {
        nobauer_test(f)?
    } else if r.is_local() {
        is_permutation_poly_brute(f)?
    } else {
        match crt_split(r) {
            Ok(split) => {
                let mut all = true;
                for (i, factor) in split.factors().iter().enumerate() {
                    let fi = f.map_coeffs(factor, |c| split.to_factors(c)[i]);
                    if !is_permutation_poly(&fi)? {
                        all = false;
                        break;
                    }
                }
                all
            }
            Err(_) => is_permutation_poly_brute(f)?,
        }
    };
    debug_assert_eq!(fast, is_permutation_poly_brute(f)?, "fast permutation test disagrees on {f}");
    Ok(fast)
}

/// Coefficient of x a unit and all higher coefficients nilpotent.
pub fn is_automorphism(f: &MultiPoly) -> Result<bool> {
    expect_univariate(f)?;
    let r = f.ring();
    Ok(r.is_unit(f.coeff(&[1])) && f.terms().all(|(e, c)| e[0] < 2 || r.is_nilpotent(c)))
}

/// Newton iteration for a compositional inverse, started at `a1^-1 (x - a0)`.
///
/// Returns `None` when `a1` is not a unit, when `f'(g)` stops being a unit
/// polynomial, or when the iteration has not closed within a fixed budget of
/// steps and degree.
pub fn compositional_inverse(f: &MultiPoly) -> Result<Option<MultiPoly>> {
    expect_univariate(f)?;
    let r = f.ring();
    let Some(a1_inv) = r.inverse(f.coeff(&[1])) else {
        return Ok(None);
    };
    let x = MultiPoly::var(r, 1, 0);
    let df = f.derivative(0)?;
    let mut g = x.sub(&MultiPoly::constant(r, 1, f.constant_term())).scalar_mul(a1_inv);
    for _ in 0..NEWTON_CAP {
        let err = f.compose(&g).sub(&x);
        if err.is_zero() {
            return Ok(Some(g));
        }
        let d = df.compose(&g);
        if !is_unit_poly(&d) {
            return Ok(None);
        }
        g = g.sub(&err.mul(&unit_poly_inverse(&d)?));
        if g.degree().unwrap_or(0) > NEWTON_DEGREE_CAP {
            return Ok(None);
        }
    }
    Ok(None)
}

pub fn automorphism_inverse(f: &MultiPoly) -> Result<MultiPoly> {
    if !is_automorphism(f)? {
        return Err(Error::NotAutomorphism(f.to_string()));
    }
    compositional_inverse(f)?.ok_or_else(|| Error::NotAutomorphism(f.to_string()))
}

/// Interpolates a one-variable table over a field, degree below q.
pub fn lagrange_interpolate(table: &FuncTable) -> Result<MultiPoly> {
    let r: &Ring = table.ring();
    if !r.is_field() {
        return Err(Error::NotAField(r.name().into()));
    }
    if table.arity() != 1 {
        return Err(Error::ArityMismatch { expected: 1, found: table.arity() });
    }
    let q = r.size() as u32;
    let x = MultiPoly::var(r, 1, 0);
    let one = MultiPoly::one(r, 1);
    let mut out = MultiPoly::zero(r, 1);
    // 1 - (x - b)^(q-1) is the indicator of b
    for b in r.elements() {
        let v = table.values()[b as usize];
        if v == 0 {
            continue;
        }
        let shifted = x.sub(&MultiPoly::constant(r, 1, b));
        out = out.add(&one.sub(&shifted.pow(q - 1)).scalar_mul(v));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::func_equiv;

    fn p(ring: &str, s: &str) -> MultiPoly {
        let r = Ring::parse(ring).unwrap();
        MultiPoly::parse(&r, 1, s).unwrap()
    }

    #[test]
    fn unit_polynomial_examples() {
        let f = p("Z4", "1 + 2*x1");
        assert!(is_unit_poly(&f));
        assert_eq!(unit_poly_inverse(&f).unwrap(), f);
        let g = p("Z4", "x1^2 - x1 + 1");
        assert!(!is_unit_poly(&g));
        assert!(is_unit_valued(&g, None).unwrap());
        assert!(matches!(unit_poly_inverse(&g), Err(Error::NotAUnit(_))));
        let c = p("F3", "2");
        assert_eq!(unit_poly_inverse(&c).unwrap(), c);
        assert!(!is_unit_valued(&p("Z4", "x1"), None).unwrap());
        assert!(is_unit_valued(&p("F2", "1"), None).unwrap());
    }

    #[test]
    fn unit_inverse_in_two_variables() {
        let r = Ring::parse("Z8").unwrap();
        let f = MultiPoly::parse(&r, 2, "3 + 2*x1*x2 + 4*x2^3").unwrap();
        let g = unit_poly_inverse(&f).unwrap();
        assert_eq!(f.mul(&g), MultiPoly::one(&r, 2));
    }

    #[test]
    fn permutation_examples() {
        assert!(is_permutation_poly(&p("Z4", "x1 + 2*x1^2")).unwrap());
        assert!(!is_permutation_poly(&p("Z9", "x1^3")).unwrap());
        assert!(!nobauer_test(&p("Z9", "x1^3")).unwrap());
        for ring in ["Z4", "F5", "Z12", "Z4xF3"] {
            assert!(is_permutation_poly(&p(ring, "x1")).unwrap());
        }
        assert!(is_permutation_poly(&p("F3", "x1^3")).unwrap());
        assert!(matches!(nobauer_test(&p("F3", "x1")), Err(Error::IsAField(_))));
        assert!(matches!(nobauer_test(&p("Z6", "x1")), Err(Error::NotLocal(_))));
    }

    #[test]
    fn automorphism_examples() {
        assert!(is_automorphism(&p("Z4", "x1 + 2*x1^2")).unwrap());
        assert!(!is_automorphism(&p("F3", "x1^3")).unwrap());
        assert!(is_automorphism(&p("Z4", "3*x1 + 1")).unwrap());
        let f = p("Z4", "x1 + 2*x1^2");
        assert_eq!(automorphism_inverse(&f).unwrap(), f);
        assert_eq!(automorphism_inverse(&p("Z4", "x1 + 1")).unwrap(), p("Z4", "x1 + 3"));
        assert_eq!(automorphism_inverse(&p("Z4", "3*x1")).unwrap(), p("Z4", "3*x1"));
        assert!(matches!(automorphism_inverse(&p("F3", "x1^3")), Err(Error::NotAutomorphism(_))));
    }

    #[test]
    fn automorphism_inverse_is_two_sided_over_z8() {
        let f = p("Z8", "3*x1 + 5 + 2*x1^2 + 4*x1^3");
        let g = automorphism_inverse(&f).unwrap();
        let x = p("Z8", "x1");
        assert_eq!(f.compose(&g), x);
        assert_eq!(g.compose(&f), x);
    }

    #[test]
    fn lagrange_examples() {
        let f3 = Ring::parse("F3").unwrap();
        let t = FuncTable::from_values(&f3, 1, vec![1, 1, 1]).unwrap();
        assert_eq!(lagrange_interpolate(&t).unwrap(), MultiPoly::one(&f3, 1));
        let t = FuncTable::from_values(&f3, 1, vec![1, 1, 2]).unwrap();
        let g = lagrange_interpolate(&t).unwrap();
        assert_eq!(func_of(&g, None).unwrap(), t);
        assert!(g.degree().unwrap() < 3);
        let f2 = Ring::parse("F2").unwrap();
        let t = FuncTable::from_values(&f2, 1, vec![0, 1]).unwrap();
        assert_eq!(lagrange_interpolate(&t).unwrap(), MultiPoly::var(&f2, 1, 0));
        let z4 = Ring::parse("Z4").unwrap();
        let t = FuncTable::from_values(&z4, 1, vec![0, 1, 2, 3]).unwrap();
        assert!(matches!(lagrange_interpolate(&t), Err(Error::NotAField(_))));
        assert!(func_equiv(&p("F2", "x1^2"), &p("F2", "x1"), None).unwrap());
    }
}
