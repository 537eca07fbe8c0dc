use thiserror::Error;

/// Errors raised by the semigroup, poset, cone and gluing operations.
///
/// The `Display` form always starts with the variant name so that the
/// command-line front end can surface it verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("EmptyGenerators: at least one generator is required")]
    EmptyGenerators,
    #[error("NonPositiveGenerator: generator {0} is not positive")]
    NonPositiveGenerator(i64),
    #[error("NotCofinite: gcd of generators is {0}")]
    NotCofinite(i64),
    #[error("NotAnElement: {0} is not an element of the semigroup")]
    NotAnElement(i64),
    #[error("NoGaps: the semigroup is all of the non-negative integers")]
    NoGaps,
    #[error("Overflow: 64-bit arithmetic overflow in {0}")]
    Overflow(&'static str),
    #[error("TooLarge: {0}")]
    TooLarge(String),
    #[error("InvalidTuple: {0}")]
    InvalidTuple(String),
    #[error("NotInPolyhedron: {0}")]
    NotInPolyhedron(String),
    #[error("NotInCone: {0}")]
    NotInCone(String),
    #[error("NotAPartialOrder: {0}")]
    NotAPartialOrder(String),
    #[error("NotGraded: {0}")]
    NotGraded(String),
    #[error("InvalidFace: {0}")]
    InvalidFace(String),
    #[error("InconsistentFace: {0}")]
    InconsistentFace(String),
    #[error("NotAUnit: {unit} is not a unit modulo {modulus}")]
    NotAUnit { unit: i64, modulus: usize },
    #[error("InvalidParams: {0}")]
    InvalidParams(String),
    #[error("OutOfRegime: rays are only described for 1 < k < a - 2 (a = {a}, k = {k})")]
    OutOfRegime { a: i64, k: i64 },
    #[error("AlphaIsGenerator: {0} is a minimal generator of the base semigroup")]
    AlphaIsGenerator(i64),
    #[error("AlphaNotInS: {0} is not an element of the base semigroup")]
    AlphaNotInS(i64),
    #[error("NotCoprime: gcd({alpha}, {beta}) = {gcd}")]
    NotCoprime { alpha: i64, beta: i64, gcd: i64 },
    #[error("InvalidEmbedding: {0}")]
    InvalidEmbedding(String),
    #[error("InvalidQuotient: {0}")]
    InvalidQuotient(String),
    #[error("SampleNotInterior: {0}")]
    SampleNotInterior(String),
}

pub type Result<T> = std::result::Result<T, Error>;
