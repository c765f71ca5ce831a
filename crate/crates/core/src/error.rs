use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alphabet degree must be at least 2 and at most 65536, got {0}")]
    InvalidDegree(usize),

    #[error("letter {letter} out of range for degree {degree}")]
    LetterOutOfRange { letter: usize, degree: usize },

    #[error("vertex word has length {actual}, expected {expected}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("letter {0} repeated in cycle notation")]
    RepeatedLetter(usize),

    #[error("bad cycle notation: {0}")]
    BadCycles(String),

    #[error("permutation images do not form a bijection")]
    NotABijection,

    #[error("permutation is over {actual} letters, expected {expected}")]
    DegreeMismatch { expected: usize, actual: usize },

    #[error("undefined symbol `{0}`")]
    UndefinedSymbol(String),

    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),

    #[error("invalid generator name `{0}`")]
    InvalidName(String),

    #[error("generator `{name}` has {actual} sections, expected {expected}")]
    SectionCount {
        name: String,
        expected: usize,
        actual: usize,
    },

    #[error("bad word syntax: {0}")]
    BadWord(String),

    #[error("bad vertex word `{0}`")]
    BadVertexWord(String),

    #[error("line {line}, column {col}: {message}")]
    Parse {
        line: usize,
        col: usize,
        message: String,
    },

    #[error("work budget exceeded: {needed} units needed, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },

    #[error("level must be at least 1")]
    ZeroLevel,

    #[error("cyclic substitution through `{0}`")]
    CyclicSubstitution(String),

    #[error("multicurve must contain at least one curve")]
    EmptyCurveList,

    #[error("lift step {step}: root permutation {perm} does not cycle letter {start} through the whole alphabet")]
    NotFullCycle {
        step: usize,
        start: usize,
        perm: String,
    },

    #[error("unknown catalog entry `{0}`")]
    UnknownCatalogEntry(String),
}
