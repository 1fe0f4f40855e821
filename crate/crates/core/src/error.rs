use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("undeclared generator `{name}` at line {line}, column {column}")]
    UndeclaredGenerator {
        name: String,
        line: usize,
        column: usize,
    },
    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),
    #[error("generator index {index} out of range for {rank} generators")]
    GeneratorOutOfRange { index: usize, rank: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("relator {relator} is trivial (freely reduces to the identity)")]
    TrivialRelator { relator: usize },
    #[error("the identity word has no initial form")]
    IdentityWord,
    #[error("word weight exceeds the cap {cap}")]
    WordWeightExceedsCap { cap: usize },
    #[error("relator {relator} has weight exceeding the cap {cap}")]
    WeightExceedsCap { relator: usize, cap: usize },
    #[error("relator {relator} is not a commutator relator (nonzero exponent sum)")]
    NotCommutatorRelator { relator: usize },
    #[error("tensor is not primitive (not the image of a Lie element)")]
    NonPrimitive,
    #[error("degree {degree} exceeds the truncation degree {max}")]
    DegreeOverflow { degree: usize, max: usize },
    #[error("expected an integer matrix entry, found {0}")]
    NotInteger(String),
    #[error("{table} disagree at degree {degree}: formula {formula}, linear algebra {computed}")]
    RankMismatch {
        table: String,
        degree: usize,
        formula: String,
        computed: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
