//! Symbolic computation in free groups and their automorphism groups:
//! reduced words, basis automorphisms with inverse witnesses, Nielsen-power
//! detection, the semidirect products M_k(A) = A^k ⋊ Aut(A), collapsed-rose
//! splittings of F_N over a rank-2 vertex factor, and direct-product
//! decompositions of stabilizer subgroups.

pub mod automorphisms;
pub mod families;
pub mod mk_product;
pub mod nielsen;
pub mod sampling;
pub mod splittings;
pub mod words;

pub use automorphisms::{compact_literal, AutError, Automorphism, IntMatrix};
pub use families::{
    bounded_intersection, centralizer_evidence, check_direct_product, conjugate_family,
    depth_table, family_generators, ia3_filter, parse_family_spec, CentralizerEvidence,
    DirectProductReport, FamilyError, FamilyKind, FamilySpec, GeneratedFactor, ProbeBounds,
};
pub use mk_product::{
    centralizer_probe, embed_tuple, extract_tuple, MkElement, MkError, TupleElement,
};
pub use nielsen::{
    commuting_nielsen_check, is_nielsen_power_outer, nielsen_power_witness,
    trace_closure_violations, CommutingReport, NielsenError, NielsenWitness, WitnessOutcome,
};
pub use sampling::{suite_seed, Sampler};
pub use splittings::{
    build_ball, cage_stab_representative, edge_stab_membership, edge_stab_to_mk, fixes_arc,
    mk_to_rose, rose_stab_membership, rose_to_mk, third_case_fixed_element_check,
    twisted_vertex_action, CageSplitting, CosetVertex, RoseSplitting, RoseStabDecomposition,
    SplitError, ThirdCaseReport, TreeBall, WkElement,
};
pub use words::{ball_size, enumerate_ball, subgroup_ball, Basis, Letter, Sign, Word, WordError};
