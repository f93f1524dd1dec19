use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank certification mismatch: fraction-free route gave {primary}, shuffled route gave {shuffled}")]
    CertificationMismatch { primary: usize, shuffled: usize },
    #[error("dimension mismatch: expected length {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("polynomials live over different variable sequences")]
    VariableMismatch,
    #[error("input is not homogeneous")]
    InhomogeneousInput,
    #[error("denominator vanishes at the point while the numerator does not")]
    Pole,
    #[error("numerator and denominator both vanish at the point")]
    Indeterminate,
    #[error("point does not lie on the cone xz = y^2")]
    OffCone,
    #[error("denominator is zero on the cone")]
    ZeroDenominator,
    #[error("the point is the cone vertex [1:0:0:0]")]
    AtVertex,
    #[error("index sequence violates the gap constraint: {0}")]
    ConstraintViolation(String),
    #[error("line L_{line} is contained in the hyperplane cut")]
    LineContained { line: i64 },
    #[error("rational function is not a global section of the twisted line bundle")]
    NotASection,
    #[error("least-squares window has {points} sample points, need at least 4")]
    WindowTooSmall { points: usize },
    #[error("spaces are not available to the requested depth: {0}")]
    InsufficientDepth(String),
    #[error("twist mismatch: {0}")]
    TwistMismatch(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
}

pub type Result<T> = std::result::Result<T, Error>;
