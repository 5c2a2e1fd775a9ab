use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("word needs at least {min} letters, got {len}")]
    LengthTooShort { len: usize, min: usize },
    #[error("degree {degree} out of range 1..={len}")]
    DegreeOutOfRange { degree: usize, len: usize },
    #[error("level {level} out of range 1..={max}")]
    LevelOutOfRange { level: usize, max: usize },
    #[error("chords need a nonrepetitive word of at least 5 letters")]
    WordTooShortOrRepetitive,
    #[error("maxlevel needs a word of at least 5 letters, got {0}")]
    WordTooShort(usize),
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("chord is not a degree of the tonality")]
    NotADegree,
    #[error("search would visit {needed} candidates, budget is {budget}")]
    SearchBudgetExceeded { needed: u128, budget: u128 },
    #[error("lattice sum would visit {needed} index vectors, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("malformed piece: {0}")]
    MalformedPiece(String),
    #[error("context must be nonempty and free of duplicates")]
    InvalidContext,
    #[error("{0} has a prime factor outside {{2, 3, 5}}")]
    NotFiveLimit(String),
    #[error("value must be positive")]
    NonPositive,
    #[error("frequency must be positive")]
    NonPositiveFrequency,
    #[error("bichord notes must be just-tuned rationals")]
    NotJustTuned,
    #[error("index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("cannot lower letter {0} below cycle 0")]
    CycleUnderflow(usize),
    #[error("list is empty or too short")]
    EmptyList,
    #[error("pure oscillator index must be nonzero")]
    ZeroIndex,
    #[error("piece has no events")]
    EmptyPiece,
    #[error("exact mode needs exact pulsations; pass eps > 0 for real inputs")]
    InexactPulsation,
    #[error("cannot parse `{0}`")]
    Parse(String),
    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
