use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{n} exceeds the supported range")]
    FieldTooLarge { p: u64, n: usize },
    #[error("modulus polynomial is not monic irreducible of degree {n} over Z_{p}")]
    NotIrreducible { p: u64, n: usize },
    #[error("element {0:?} is not a primitive element")]
    NotPrimitive(Vec<u64>),
    #[error("inversion of zero")]
    ZeroInverse,
    #[error("coordinate vector {coords:?} out of range for {context}")]
    BadCoordinates { coords: Vec<u64>, context: String },

    #[error("group must have at least one cyclic factor")]
    EmptyGroup,
    #[error("cyclic factor orders must be at least 1")]
    ZeroOrder,
    #[error("group mismatch: {left:?} vs {right:?}")]
    GroupMismatch { left: Vec<u64>, right: Vec<u64> },
    #[error("cyclotomic orders differ: {0} vs {1}")]
    OrderMismatch(u64, u64),
    #[error("character sums do not describe an integer element at index {index}")]
    NonIntegerCoefficient { index: usize },
    #[error("expected {expected} character sums, got {got}")]
    MissingCharacters { expected: usize, got: usize },

    #[error("positive and negative parts share element {0}")]
    Overlap(usize),
    #[error("element index {index} out of range for group of order {v}")]
    IndexOutOfRange { index: usize, v: usize },

    #[error("not an SDS: coefficient of element {first} is {first_value}, of element {second} is {second_value}")]
    NonConstant {
        first: usize,
        first_value: i64,
        second: usize,
        second_value: i64,
    },
    #[error("not a signed set: element {element} has coefficient {coefficient}")]
    NotStrict { element: usize, coefficient: i64 },
    #[error("identity element belongs to the candidate set")]
    IdentityInSet,
    #[error("not a PDS: coefficient {found} at element {element}, expected {expected}")]
    PdsMismatch {
        element: usize,
        found: i64,
        expected: i64,
    },
    #[error("PDS is not regular")]
    NotRegular,
    #[error("PDS has lambda - mu = {0}, expected -1")]
    WrongLambdaMinusMu(i64),
    #[error("verified parameters {found:?} differ from predicted {predicted:?}")]
    ParamsMismatch {
        predicted: (usize, i64, i64),
        found: (usize, i64, i64),
    },
    #[error("even order {0} has no Paley structure")]
    EvenOrder(u64),
    #[error("q = {0} is not congruent to 1 mod 4")]
    NotOneModFour(u64),

    #[error("Golay construction failed: {0}")]
    Golay(String),

    #[error("invalid product construction: {0}")]
    Product3(String),
    #[error("character {params:?} gives |chi(D)|^2 = {found}, expected {expected}")]
    CharacterCheck {
        params: Vec<u64>,
        found: String,
        expected: i64,
    },

    #[error("invalid cyclotomic case: {0}")]
    InvalidCase(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("sequence requires a cyclic group, got orders {0:?}")]
    NotCyclic(Vec<u64>),
    #[error("shift {tau} out of range for period {v}")]
    ShiftOutOfRange { tau: usize, v: usize },
    #[error("weighing matrix requires lambda = 0, got {0}")]
    NonZeroLambda(i64),
    #[error("W W^T differs from k I at ({row}, {col}): {value}")]
    WeighingCheck { row: usize, col: usize, value: i64 },

    #[error("document error: {0}")]
    Document(String),
}
