use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("letter {letter} is out of range for {strands} strands")]
    InvalidLetter { letter: i32, strands: usize },
    #[error("strand counts differ: {0} vs {1}")]
    StrandMismatch(usize, usize),
    #[error("plat closure needs an even number of strands, got {0}")]
    OddPlatStrands(usize),
    #[error("{crossings} crossings exceed the limit of {limit}")]
    CrossingLimit { crossings: usize, limit: usize },
    #[error("matrix dimensions do not match")]
    DimensionMismatch,
    #[error("matrix is not unitary (deviation {0:e})")]
    NotUnitary(f64),
    #[error("qubit position {pos} is invalid for a {qubits}-qubit register")]
    BadPosition { pos: usize, qubits: usize },
    #[error("register of {0} qubits exceeds the supported maximum")]
    TooManyQubits(usize),
    #[error("word is not a weave: {0}")]
    NotAWeave(String),
    #[error("no compiled gate for {0}")]
    MissingGate(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}
