use serde::{Deserialize, Serialize};

use super::{Level, TriElem, VecPoly};
use crate::error::{Error, Result};
use crate::poly::MultiPoly;
use crate::ring::Ring;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelJson {
    pub f: String,
    pub u: String,
}

/// Wire form of a [`TriElem`]; polynomials use the text grammar.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriJson {
    pub ring: String,
    pub n: usize,
    pub f1: String,
    pub levels: Vec<LevelJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VecPolyJson {
    pub ring: String,
    pub n: usize,
    pub components: Vec<String>,
}

impl TriJson {
    pub fn from_tri(t: &TriElem) -> TriJson {
        TriJson {
            ring: t.ring().name().to_string(),
            n: t.n(),
            f1: t.f1().to_string(),
            levels: t
                .levels()
                .iter()
                .map(|l| LevelJson { f: l.f.to_string(), u: l.u.to_string() })
                .collect(),
        }
    }

    /// Parses and validates.
    pub fn to_tri(&self) -> Result<TriElem> {
        let ring = Ring::parse(&self.ring)?;
        if self.levels.len() + 1 != self.n {
            return Err(Error::ArityMismatch { expected: self.n, found: self.levels.len() + 1 });
        }
        let f1 = MultiPoly::parse(&ring, 1, &self.f1)?;
        let levels = self
            .levels
            .iter()
            .enumerate()
            .map(|(k, l)| {
                Ok(Level {
                    f: MultiPoly::parse(&ring, k + 1, &l.f)?,
                    u: MultiPoly::parse(&ring, k + 1, &l.u)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        TriElem::new(f1, levels)
    }
}

impl VecPolyJson {
    pub fn from_vecpoly(v: &VecPoly) -> VecPolyJson {
        VecPolyJson {
            ring: v.ring().name().to_string(),
            n: v.n(),
            components: v.components().iter().map(|c| c.to_string()).collect(),
        }
    }

    pub fn to_vecpoly(&self) -> Result<VecPoly> {
        let ring = Ring::parse(&self.ring)?;
        if self.components.len() != self.n {
            return Err(Error::ArityMismatch { expected: self.n, found: self.components.len() });
        }
        let comps = self
            .components
            .iter()
            .map(|c| MultiPoly::parse(&ring, self.n, c))
            .collect::<Result<Vec<_>>>()?;
        VecPoly::new(&ring, comps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tri_json_round_trip() {
        let r = Ring::parse("Z4").unwrap();
        let t = crate::tri::make_tri(
            MultiPoly::parse(&r, 1, "x1 + 2*x1^2").unwrap(),
            vec![(MultiPoly::parse(&r, 1, "x1").unwrap(), MultiPoly::parse(&r, 1, "1 + 2*x1").unwrap())],
        )
        .unwrap();
        let text = serde_json::to_string(&t.to_json()).unwrap();
        let back: TriJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_tri().unwrap(), t);
        let v = VecPolyJson::from_vecpoly(&t.to_vecpoly());
        let text = serde_json::to_string(&v).unwrap();
        let back: VecPolyJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_vecpoly().unwrap(), t.to_vecpoly());
        assert!(text.contains("\"components\""));
    }
}
