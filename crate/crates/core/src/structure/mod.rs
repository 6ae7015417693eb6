//! Semidirect products, the unit theorem for them, normality, series of the
//! induced groups, and the decomposition of `MT_n` along its last level.

mod decomp;
mod monoid;

use serde::Serialize;
use serde_json::Value;

pub use decomp::{
    group_props, normality_report, fixed_normality_witness, poly_permutation_group, verify_decomposition,
    DecompositionLevel, GroupProps, NormalityReport,
};
pub use monoid::{
    function_monoids, semidirect, units_of, semidirect_unit_instances, verify_semidirect_units, Action, FiniteMonoid, Op,
    UnitGroup,
};

/// Outcome of checking an explicit isomorphism between two constructions.
#[derive(Clone, Debug, Serialize)]
pub struct StructureReport {
    pub claim: String,
    pub instance: String,
    pub lhs_order: u64,
    pub rhs_order: u64,
    pub map_bijective: bool,
    pub map_homomorphic: bool,
    pub witnesses: Vec<Value>,
}

impl StructureReport {
    pub fn ok(&self) -> bool {
        self.map_bijective
            && self.map_homomorphic
            && self.lhs_order == self.rhs_order
            && self.witnesses.iter().all(|w| w.as_object().is_none_or(|o| o.values().all(|v| v != &Value::Bool(false))))
    }
}
