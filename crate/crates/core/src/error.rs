use thiserror::Error;

/// Everything that can go wrong while building or checking a model.
///
/// Condition *violations* are never errors: they are reported through
/// [`crate::report::CheckReport`]. Errors are reserved for malformed input
/// and unmet preconditions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown point `{0}`")]
    UnknownPoint(String),
    #[error("point index {0} is outside the causal site")]
    PointOutOfRange(usize),
    #[error("duplicate identifier `{0}`")]
    Duplicate(String),
    #[error("precedence relation is not antisymmetric: `{0}` and `{1}` precede each other")]
    NotAntisymmetric(String, String),
    #[error("spacelike relation is undefined for the empty region")]
    EmptyRegion,
    #[error("regions {0} and {1} are not spacelike separated")]
    NotSpacelike(String, String),
    #[error("point `{0}` of the earlier region is not in the causal past of the later region")]
    NotInPast(String),
    #[error("regions overlap at point `{0}`")]
    Overlap(String),
    #[error("slice boundary is not an antichain: `{0}` and `{1}` are causally related")]
    NotAntichain(String, String),
    #[error("unknown region `{0}`")]
    UnknownRegion(String),
    #[error("unknown slice `{0}`")]
    UnknownSlice(String),
    #[error("unknown history `{0}`")]
    UnknownHistory(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("history space is empty")]
    EmptyHistorySpace,
    #[error("measure must be nonnegative; history `{0}` has {1}")]
    NegativeMeasure(String, String),
    #[error("measure sums to {0}, not 1")]
    MeasureNotNormalized(String),
    #[error("invalid rational literal `{0}`")]
    BadRational(String),
    #[error("conditioning on an event of probability zero")]
    NullConditioning,
    #[error("event is not in the global event algebra")]
    NotInAlgebra,
    #[error("event `{event}` is not associated to wing region {wing}")]
    NotLocalised { event: String, wing: String },
    #[error("behavior table: {0}")]
    BadBehavior(String),
    #[error("setting pair ({0}, {1}) has probability zero")]
    NullSettingPair(usize, usize),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("model file: {0}")]
    Format(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
