use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: u32, right: u32 },

    #[error("truncation mismatch: {left} vs {right}")]
    TruncationMismatch { left: u32, right: u32 },

    #[error("alphabet mismatch: {left} vs {right}")]
    AlphabetMismatch { left: u32, right: u32 },

    #[error("degree {degree} out of range 0..={max}")]
    DegreeOutOfRange { degree: u32, max: u32 },

    #[error("index violation: {0}")]
    IndexViolation(String),

    /// A word claimed to lie in stage `expected` of the lower central series
    /// has a nonzero Magnus component in a lower degree.
    #[error("word is not in stage {expected} of the lower central series (nonzero component in degree {found})")]
    NotInStage { expected: u32, found: u32 },

    /// Triangular extraction left a nonzero residual; the input tensor is not
    /// the expansion of any Lie element.
    #[error("not a Lie element: nonzero residual on monomial {0}")]
    NotALieElement(String),

    #[error("series is not homogeneous of degree {expected}: found a term of degree {found}")]
    NotHomogeneous { expected: u32, found: u32 },

    #[error("endomorphism is not in IA_n: the image of x{0} is not a conjugate-like word in homology")]
    NotIA(u32),

    #[error("below filtration depth: Johnson degree is smaller than the requested {requested}")]
    BelowFiltrationDepth { requested: u32 },

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
