use thiserror::Error;

/// Errors raised by misuse of the library surface. Every variant is a usage
/// error: the computations themselves are total on valid input.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("arity {0} is outside the supported range 0..=6")]
    ArityOutOfRange(usize),
    #[error("expected {expected} input bits, got {got}")]
    InputLength { expected: usize, got: usize },
    #[error("expected {expected} observables, got {got}")]
    ObservableCount { expected: usize, got: usize },
    #[error("qubit count {0} is outside the supported range 1..=3")]
    QubitCount(usize),
    #[error("state is not normalized (squared norm {0})")]
    NotNormalized(f64),
    #[error("shot count must be at least 1")]
    ZeroShots,
    #[error("input {0} violates the promise of {1}")]
    PromiseViolation(String, String),
    #[error("input {0} does not carry the fields required by {1}")]
    MalformedInput(String, String),
    #[error("strategy has {got} tables for {expected} parties")]
    PartyCount { expected: usize, got: usize },
    #[error("table for {party} has arity {got}, expected {expected}")]
    ArityMismatch {
        party: String,
        expected: usize,
        got: usize,
    },
    #[error("no observable assigned to {party} for view {view}")]
    MissingView { party: String, view: String },
    #[error("unknown {kind} `{name}`")]
    UnknownName { kind: &'static str, name: String },
    #[error("channel configuration ({0}, {1}) is not supported for {2}")]
    UnsupportedConfig(usize, usize, String),
    #[error("decoder input of {0} bits exceeds the supported maximum of 16")]
    DecoderTooWide(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
