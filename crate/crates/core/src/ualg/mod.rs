//! Finite universal algebras given by operation tables.

mod algebra;
mod clone;
pub(crate) mod congruence;
mod subalg;
mod term;

pub use algebra::{for_each_tuple, tuple_at, tuple_index, Algebra, OpSymbol, OpWitness, Signature};
pub use clone::{CloneElement, CloneTable, Generation, DEFAULT_CLONE_BUDGET, MAX_CLONE_CARRIER};
pub use congruence::{Congruence, DEFAULT_CONGRUENCE_BOUND};
pub use subalg::{subalgebras, SubalgebraSearch};
pub use term::Term;
