//! (Super)commutators, exact span membership and the relation suites.

mod bracket;
mod span;
mod verify;

pub use bracket::{anticommutator, bracket, commutator};
pub use span::{solve_in_span, ExactMatrix};
pub use verify::{
    a_relations_of, all_pass, asuper_relations_of, bose_relations, interior_selector,
    verify_a_relations, verify_adjointness, verify_asuper_relations, verify_gl_relations,
    verify_lie_closure, verify_para_bose_relations, verify_para_fermi_relations,
    verify_pauli_principle, verify_vacuum_condition, RelationReport, SuiteSummary,
};
