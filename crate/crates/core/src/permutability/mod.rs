//! Congruence permutability, Mal'tsev and Goursat term search, identity
//! schemas and relation sweeps.

mod perm;
mod schema;
mod search;
mod sweeps;

pub use perm::{
    check_algebra_permutability, check_permutability, monotonicity_failures, PermReport,
    PermWitness, StartsWith,
};
pub use schema::{
    heyting_maltsev_term, implication_quaternary_terms, quasigroup_maltsev_term, verify_identities,
    verify_schema, Identity, Schema, Violation,
};
pub use search::{
    find_maltsev_term, find_quaternary_pair, is_maltsev_table, quaternary_from_maltsev,
    SearchStatus, TermSearchResult,
};
pub use sweeps::{
    difunctional_failure, difunctionality_sweep, equivalence_failure, goursat_image_check,
    goursat_image_sweep, reflexive_subalgebra_sweep, ImageCheck, ImageFailure, ImageSweepReport,
    RelFailure, SweepReport,
};
