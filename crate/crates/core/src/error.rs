use crate::syntax::{NameKind, ParseError};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("undeclared {0} name `{1}`")]
    Undeclared(NameKind, String),
    #[error(
        "the interpretation space needs {bits} bits, over the budget of {budget} \
         (raise it with --bit-budget)"
    )]
    SizeLimit { bits: u64, budget: u32 },
    #[error("interpretation index {0} is out of range")]
    IndexOutOfRange(u64),
    #[error("invalid interpretation: {0}")]
    InvalidInterpretation(String),
    #[error("invalid ranking: {0}")]
    InvalidRanking(String),
    #[error("defeasible inclusions cannot be evaluated in a single interpretation")]
    DefeasibleStatement,
    #[error("the strict part (TBox and ABox) has no Herbrand model")]
    UnsatisfiableStrictPart,
    #[error("the ABox has finite-weight assertions; apply the strict ABox translation first")]
    NonStrictAbox,
    #[error("finite-weight role assertion `{0}` has no strict ABox translation")]
    WeakRoleAssertion(String),
    #[error("weak GCI `{0}` occurs more than once; the DBox would contain duplicates")]
    DuplicateWeakGci(String),
    #[error("expected {expected} impact factors (one per DBox entry), got {got}")]
    EtaLength { expected: usize, got: usize },
    #[error("impact factors must be positive (zero is only allowed when explicitly enabled)")]
    ZeroEta,
    #[error("kappa0 = {given} does not normalize the ranking; the forced value is {expected}")]
    NormalizationMismatch { given: i64, expected: i64 },
    #[error("{0}")]
    Usage(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Process exit code for the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::SizeLimit { .. } => 3,
            Error::Internal(_) => 4,
            _ => 2,
        }
    }
}

impl From<(NameKind, String)> for Error {
    fn from((kind, name): (NameKind, String)) -> Self {
        Error::Undeclared(kind, name)
    }
}
