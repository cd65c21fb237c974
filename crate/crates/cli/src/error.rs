use levelzero_core::Error;

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Invalid(String),
    Core(Error),
    /// `check` found failing invariants.
    ChecksFailed(usize),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "config: {m}"),
            CliError::Invalid(m) => write!(f, "invalid job: {m}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::ChecksFailed(k) => write!(f, "{k} checks failed"),
        }
    }
}

impl CliError {
    /// Exit code; 2 is left to argument parsing.
    pub fn code(&self) -> i32 {
        match self {
            CliError::Config(_) => 3,
            CliError::Invalid(_) => 4,
            CliError::ChecksFailed(_) => 5,
            CliError::Core(e) => match e {
                Error::UnsupportedSpec(_) => 10,
                Error::InvalidDatum(_) => 11,
                Error::TooLarge { .. } => 12,
                Error::BoundTooLarge(_) => 13,
                Error::BoundNotCoprime { .. } => 14,
                Error::TwistedUnsupported => 15,
                Error::BadVertex(_) => 16,
                Error::Parse(_) => 17,
                Error::NotAFace { .. } => 18,
                Error::IncompatiblePair => 19,
                Error::SingularMatrix => 20,
                Error::NotStable => 21,
                Error::NotThetaStable => 22,
            },
        }
    }
}
