//! Checkers for diagram lemmas on finite sets: exact forks, Barr–Kock,
//! regular and Goursat pushouts, and the denormalized 3×3 lemma.
//!
//! Hypotheses are always verified. A failed hypothesis is an
//! [`Error::Rejected`](crate::Error::Rejected) input, never a verdict.

mod barr_kock;
mod fork;
mod gen;
mod grid;
mod square;

pub use barr_kock::{check_barr_kock, induced_kernel_map, BarrKockVerdict, ComparisonDefect};
pub use fork::{is_exact_fork, Fork, ForkDefect};
pub use gen::{barr_kock_instance, BarrKockInstance};
pub use grid::{verify_3x3, Grid3x3, GridMutation, GridVerdict};
pub use square::{
    check_goursat_pushout, check_regular_pushout_comparison, PushoutCheck, SplitSquare,
};
