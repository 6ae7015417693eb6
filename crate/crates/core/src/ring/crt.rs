use super::{factorize, Idx, Ring, RingSpec};
use crate::error::{Error, Result};

/// Decomposition of a ring into local factors with the element-wise isomorphism.
#[derive(Debug, Clone)]
pub struct CrtSplit {
    ring: Ring,
    factors: Vec<Ring>,
    forward: Vec<Idx>,
    strides: Vec<usize>,
    backward: Vec<Idx>,
}

impl CrtSplit {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn factors(&self) -> &[Ring] {
        &self.factors
    }

    /// Components of `a` in the local factors.
    pub fn to_factors(&self, a: Idx) -> &[Idx] {
        let k = self.factors.len();
        &self.forward[a as usize * k..(a as usize + 1) * k]
    }

    pub fn from_factors(&self, parts: &[Idx]) -> Idx {
        let i: usize = parts.iter().zip(&self.strides).map(|(&c, &s)| c as usize * s).sum();
        self.backward[i]
    }
}

/// Splits `ring` into local rings.
///
/// Local rings split trivially. Otherwise the ring must be `Z/m` or a product
/// whose factors split in turn.
pub fn crt_split(ring: &Ring) -> Result<CrtSplit> {
    let (factors, forward_of) = split_parts(ring)?;
    let k = factors.len();
    let mut strides = Vec::with_capacity(k);
    let mut acc = 1usize;
    for f in &factors {
        strides.push(acc);
        acc *= f.size();
    }
    if acc != ring.size() {
        return Err(Error::FactorizationUnavailable(ring.name().into()));
    }
    let mut forward = Vec::with_capacity(ring.size() * k);
    let mut backward = vec![Idx::MAX; acc];
    for a in ring.elements() {
        let parts = forward_of(a);
        let i: usize = parts.iter().zip(&strides).map(|(&c, &s)| c as usize * s).sum();
        if backward[i] != Idx::MAX {
            return Err(Error::FactorizationUnavailable(ring.name().into()));
        }
        backward[i] = a;
        forward.extend_from_slice(&parts);
    }
    Ok(CrtSplit { ring: ring.clone(), factors, forward, strides, backward })
}

type Projection = Box<dyn Fn(Idx) -> Vec<Idx>>;

fn split_parts(ring: &Ring) -> Result<(Vec<Ring>, Projection)> {
    if ring.is_local() {
        return Ok((vec![ring.clone()], Box::new(|a| vec![a])));
    }
    match ring.spec() {
        RingSpec::Zmod(m) => {
            let m = *m;
            let moduli: Vec<u64> = factorize(m).into_iter().map(|(p, e)| p.pow(e)).collect();
            let factors = moduli
                .iter()
                .map(|&q| Ring::new(RingSpec::Zmod(q)))
                .collect::<Result<Vec<_>>>()?;
            Ok((factors, Box::new(move |a| moduli.iter().map(|&q| (a as u64 % q) as Idx).collect())))
        }
        RingSpec::Product(_) => {
            let mut factors = Vec::new();
            let mut projections = Vec::new();
            for f in ring.product_factors() {
                let (fs, proj) = split_parts(f)?;
                factors.extend(fs);
                projections.push(proj);
            }
            let r = ring.clone();
            Ok((
                factors,
                Box::new(move |a| {
                    r.components(a)
                        .unwrap()
                        .into_iter()
                        .zip(&projections)
                        .flat_map(|(c, p)| p(c))
                        .collect()
                }),
            ))
        }
        _ => Err(Error::FactorizationUnavailable(ring.name().into())),
    }
}
