use thiserror::Error;

#[derive(Debug, Error)]
pub enum P3cError {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("invalid cycle: {0}")]
    InvalidCycle(String),
    #[error("triple does not separate: {0:?}")]
    NotACutset([usize; 3]),
    #[error("cycle set is not pairwise laminar: {0}")]
    NotLaminar(String),
}

impl P3cError {
    pub fn parse(line: usize, msg: String) -> Self {
        P3cError::Parse { line, msg }
    }
}
