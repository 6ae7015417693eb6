use super::MultiPoly;
use crate::error::{Error, Result};
use crate::ring::{Idx, Ring};

/// Largest domain `|R|^n` tabulated without an explicit cap.
pub const DEFAULT_DOMAIN_CAP: u128 = 1 << 20;

/// Values of a function `R^n -> R` in row-major order over `R^n`
/// (first coordinate most significant).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FuncTable {
    ring: Ring,
    arity: usize,
    values: Vec<Idx>,
}

impl FuncTable {
    pub fn from_values(ring: &Ring, arity: usize, values: Vec<Idx>) -> Result<FuncTable> {
        let expected = domain_size(ring, arity, u128::MAX)?;
        if values.len() != expected {
            return Err(Error::ArityMismatch { expected, found: values.len() });
        }
        Ok(FuncTable { ring: ring.clone(), arity, values })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn values(&self) -> &[Idx] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Idx> {
        self.values
    }

    pub fn at(&self, point: &[Idx]) -> Idx {
        self.values[point_index(self.ring.size(), point)]
    }

    /// True when the function is a bijection of `R` (arity one).
    pub fn is_permutation(&self) -> bool {
        let mut seen = vec![false; self.ring.size()];
        self.values.len() == self.ring.size()
            && self.values.iter().all(|&v| !std::mem::replace(&mut seen[v as usize], true))
    }
}

pub(crate) fn domain_size(ring: &Ring, arity: usize, cap: u128) -> Result<usize> {
    let mut n: u128 = 1;
    for _ in 0..arity {
        n = n.saturating_mul(ring.size() as u128);
    }
    if n > cap || n > usize::MAX as u128 {
        return Err(Error::CapExceeded { what: "function domain", size: n, cap });
    }
    Ok(n as usize)
}

pub fn point_index(size: usize, point: &[Idx]) -> usize {
    point.iter().fold(0, |acc, &a| acc * size + a as usize)
}

pub fn point_of(size: usize, arity: usize, mut index: usize) -> Vec<Idx> {
    let mut out = vec![0; arity];
    for slot in out.iter_mut().rev() {
        *slot = (index % size) as Idx;
        index /= size;
    }
    out
}

/// Tabulates the function induced by `f` on `R^n`.
pub fn func_of(f: &MultiPoly, cap: Option<u128>) -> Result<FuncTable> {
    let ring = f.ring();
    let n = f.nvars();
    let total = domain_size(ring, n, cap.unwrap_or(DEFAULT_DOMAIN_CAP))?;
    let size = ring.size();
    // pow[a * (d + 1) + e] = a^e
    let d = (0..n).map(|v| f.degree_in(v)).max().unwrap_or(0) as usize;
    let mut pow = vec![0; size * (d + 1)];
    for a in ring.elements() {
        let row = &mut pow[a as usize * (d + 1)..(a as usize + 1) * (d + 1)];
        row[0] = 1;
        for e in 1..=d {
            row[e] = ring.mul(row[e - 1], a);
        }
    }
    let terms: Vec<(&Vec<u32>, Idx)> = f.terms().collect();
    let mut values = Vec::with_capacity(total);
    let mut point = vec![0 as Idx; n];
    for _ in 0..total {
        let mut acc = 0;
        for &(e, c) in &terms {
            let mut t = c;
            for (v, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = ring.mul(t, pow[point[v] as usize * (d + 1) + k as usize]);
                    if t == 0 {
                        break;
                    }
                }
            }
            acc = ring.add(acc, t);
        }
        values.push(acc);
        for slot in point.iter_mut().rev() {
            *slot += 1;
            if (*slot as usize) < size {
                break;
            }
            *slot = 0;
        }
    }
    Ok(FuncTable { ring: ring.clone(), arity: n, values })
}

/// Whether `f` and `g` induce the same function on `R^n`.
pub fn func_equiv(f: &MultiPoly, g: &MultiPoly, cap: Option<u128>) -> Result<bool> {
    f.ring().check_same(g.ring())?;
    if f.nvars() != g.nvars() {
        return Err(Error::ArityMismatch { expected: f.nvars(), found: g.nvars() });
    }
    let diff = f.sub(g);
    if diff.is_zero() {
        return Ok(true);
    }
    Ok(func_of(&diff, cap)?.values.iter().all(|&v| v == 0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_of_examples() {
        let z4 = Ring::parse("Z4").unwrap();
        let sq = MultiPoly::parse(&z4, 1, "x1^2").unwrap();
        assert_eq!(func_of(&sq, None).unwrap().values(), [0, 1, 0, 1]);
        let f2 = Ring::parse("F2").unwrap();
        let f = MultiPoly::parse(&f2, 2, "x1*x2").unwrap();
        assert_eq!(func_of(&f, None).unwrap().values(), [0, 0, 0, 1]);
        let big = MultiPoly::parse(&z4, 3, "x1").unwrap();
        assert!(matches!(func_of(&big, Some(32)), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn equivalence_examples() {
        let f2 = Ring::parse("F2").unwrap();
        let a = MultiPoly::parse(&f2, 1, "x1^2").unwrap();
        let b = MultiPoly::parse(&f2, 1, "x1").unwrap();
        assert!(func_equiv(&a, &b, None).unwrap());
        assert_ne!(a, b);
        let z4 = Ring::parse("Z4").unwrap();
        let c = MultiPoly::parse(&z4, 1, "x1^2").unwrap();
        let d = MultiPoly::parse(&z4, 1, "x1").unwrap();
        assert!(!func_equiv(&c, &d, None).unwrap());
        let e = MultiPoly::parse(&z4, 1, "2*x1^2").unwrap();
        let g = MultiPoly::parse(&z4, 1, "2*x1").unwrap();
        assert!(func_equiv(&e, &g, None).unwrap());
    }

    #[test]
    fn point_indexing_round_trips() {
        for i in 0..64 {
            let p = point_of(4, 3, i);
            assert_eq!(point_index(4, &p), i);
        }
        assert_eq!(point_of(3, 2, 5), [1, 2]);
    }
}
