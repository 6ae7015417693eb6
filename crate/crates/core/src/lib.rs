//! Triangular polynomial permutations over finite commutative rings.

pub mod dual;
pub mod error;
pub mod funcspace;
pub mod group;
pub mod poly;
pub mod ring;
pub mod sample;
pub mod structure;
pub mod tri;
pub mod verify;

pub use error::{Error, Result};
pub use poly::{FuncTable, MultiPoly, PolyOp};
pub use tri::{compose_tri, invert_tri, is_unit_tri, make_tri, Level, TriElem, VecPoly};
pub use ring::{Elem, Idx, Ring, RingOp, RingSpec};
