use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("letter '{letter}' is outside rank {rank}")]
    LetterOutOfRange { letter: char, rank: usize },
    #[error("generator {gen} is outside rank {rank}")]
    GeneratorOutOfRange { gen: usize, rank: usize },
    #[error("rank {0} exceeds the 26 available letters")]
    RankTooLarge(usize),
    #[error("invalid character {0:?} in word")]
    InvalidCharacter(char),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph is not folded")]
    NotFolded,
    #[error("graph is not a covering of the bouquet: {0}")]
    NotCovering(String),
    #[error("permutation action is not transitive")]
    NotTransitive,
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("generators do not generate the group ({found} of {expected} elements reached)")]
    NotGenerating { expected: usize, found: usize },
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),
    #[error("critical points are not simple (distance {0:e})")]
    DegenerateCriticalPoints(f64),
    #[error("path passes within {distance:e} of puncture {puncture} (clearance {clearance:e})")]
    ClearanceViolation {
        puncture: String,
        distance: f64,
        clearance: f64,
    },
    #[error("continuation step underflow at segment {segment}, t = {t}")]
    StepUnderflow { segment: usize, t: f64 },
    #[error("continuation failed: {0}")]
    Continuation(String),
}
