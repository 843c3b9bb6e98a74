use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("carrier mismatch in {context}: expected size {expected}, found {found}")]
    CarrierMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("value {value} at index {index} is outside a carrier of size {bound}")]
    OutOfRange {
        index: usize,
        value: usize,
        bound: usize,
    },
    #[error("invalid carrier labels: {0}")]
    InvalidLabels(String),
    #[error("alternating composite needs at least one factor")]
    EmptyAlternation,
    #[error("permutability level must be at least 2, got {0}")]
    InvalidLevel(usize),
    #[error("unknown operation `{0}`")]
    UnknownOp(String),
    #[error("duplicate operation `{0}` in signature")]
    DuplicateOp(String),
    #[error("operation `{op}` has arity {expected} but was given {found} arguments")]
    ArityMismatch {
        op: String,
        expected: usize,
        found: usize,
    },
    #[error("variable x{index} used with only {vars} variables bound")]
    VariableOutOfRange { index: usize, vars: usize },
    #[error("table of `{op}` has length {found}, expected {expected}")]
    TableLength {
        op: String,
        expected: usize,
        found: usize,
    },
    #[error("table of `{op}` has entry {value} at index {index}, outside the carrier")]
    TableEntry {
        op: String,
        index: usize,
        value: usize,
    },
    #[error("constant operation `{0}` on an empty carrier")]
    ConstantOnEmptyCarrier(String),
    #[error("signatures differ")]
    SignatureMismatch,
    #[error("carrier of size {size} exceeds the bound {bound}")]
    CarrierTooLarge { size: usize, bound: usize },
    #[error("partition is not compatible with operation `{op}`")]
    NotACongruence { op: String },
    #[error("map is not a homomorphism: `{op}` fails")]
    NotAHomomorphism { op: String },
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// A diagram hypothesis (commutativity, surjectivity, pullback, ...) does
    /// not hold; distinct from a failed conclusion.
    #[error("diagram rejected: {0}")]
    Rejected(String),
    #[error("subalgebra enumeration exceeded {0} subalgebras")]
    EnumerationBound(usize),
    #[error("axiom `{axiom}` fails at {assignment:?}")]
    AxiomViolation {
        axiom: String,
        assignment: alloc::vec::Vec<usize>,
    },
    #[error("term syntax error at byte {pos}: {msg}")]
    TermSyntax { pos: usize, msg: String },
}
