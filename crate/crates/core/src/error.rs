use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("endomorphism does not preserve the sublattice")]
    NotStable,
    #[error("unsupported group spec: {0}")]
    UnsupportedSpec(String),
    #[error("invalid root datum: {0}")]
    InvalidDatum(String),
    #[error("subset is not theta-stable")]
    NotThetaStable,
    #[error("Weyl group has {size} elements, above the bound {bound}")]
    TooLarge { size: usize, bound: usize },
    #[error("order bound {0} gives too many torsion points")]
    BoundTooLarge(u64),
    #[error("order bound {bound} is not coprime to excluded prime {prime}")]
    BoundNotCoprime { bound: u64, prime: u64 },
    #[error("twisted data have no alcove model here")]
    TwistedUnsupported,
    #[error("facet {face} is not a face of facet {facet}")]
    NotAFace { face: usize, facet: usize },
    #[error("pair (s, w) does not satisfy s = wF(s)")]
    IncompatiblePair,
    #[error("bad vertex index {0}")]
    BadVertex(usize),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
