use std::fmt;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Why a form instantiation was turned down. These are computed outcomes,
/// not usage errors: the parameters were well-formed but do not produce a
/// valid set of the requested family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rejection {
    /// A side constraint failed; carries the constraint as written, e.g. `ord(x1)=20`.
    Constraint(&'static str),
    /// The constructed elements are not pairwise distinct.
    DuplicateElements,
    /// The constructed set is not zero-sum free.
    NotZeroSumFree,
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rejection::Constraint(name) => write!(f, "constraint {name} failed"),
            Rejection::DuplicateElements => write!(f, "constructed elements are not pairwise distinct"),
            Rejection::NotZeroSumFree => write!(f, "constructed set is not zero-sum free"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed group spec `{text}`: {reason}")]
    MalformedGroupSpec { text: String, reason: String },

    #[error("modulus {0} out of range: every cyclic factor needs order at least 2")]
    ModulusTooSmall(u128),

    #[error("group order {order} exceeds the configured maximum of {limit}")]
    OrderExceedsLimit { order: u128, limit: u64 },

    #[error("flat index {index} out of range for a group of order {order}")]
    ElementOutOfRange { index: usize, order: usize },

    #[error("residue vector has {got} entries, expected {expected}")]
    ResidueArity { expected: usize, got: usize },

    #[error("malformed element `{0}`")]
    MalformedElement(String),

    #[error("malformed sequence `{0}`")]
    MalformedSequence(String),

    #[error("empty sequence has no subset sums")]
    EmptySequence,

    #[error("sequence is not a subset: element {0} occurs more than once")]
    NotASubset(String),

    #[error("subset of size {size} exceeds the class-partition cap of {cap}")]
    PartitionTooLarge { size: usize, cap: usize },

    #[error("sum {0} is not realized by any nonempty subset")]
    SumNotRealized(String),

    #[error("not a subgroup: {0}")]
    InvalidSubgroup(String),

    #[error("k={k} out of range [1,{max}]")]
    KOutOfRange { k: usize, max: usize },

    #[error("form {form} takes {expected} parameter(s), got {got}")]
    FormArity { form: &'static str, expected: usize, got: usize },

    #[error("{form} is a class shape, not a set family")]
    NotASetFamily { form: &'static str },

    #[error("family {form} describes sets of size {family}, but the subset has size {subset}")]
    FamilySizeMismatch { form: &'static str, family: usize, subset: usize },

    #[error("form instantiation rejected: {0}")]
    FormRejected(Rejection),

    #[error("class has size {0}; shape matching covers sizes 4 and 5 only")]
    ShapeClassSize(usize),

    #[error("subset contains element {0} of order below 3")]
    ShapeOrderTooSmall(String),

    #[error("shape matching precondition violated: {0}")]
    ShapePrecondition(&'static str),

    #[error("classification supports (k, target) in {{(6,19), (5,13), (4,8)}}, got ({k}, {target})")]
    UnsupportedClassification { k: usize, target: usize },

    #[error("multiplicity check needs an odd modulus in [9,21], got {0}")]
    MultiplicityRange(usize),

    #[error("unit-multiplier reduction applies to single-factor cyclic groups only")]
    FastModeNotCyclic,
}
