use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("input is not real-valued (coefficient symmetry defect {defect:e})")]
    NotReal { defect: f64 },
    #[error("input is not nonnegative (grid minimum {min:e})")]
    NotNonnegative { min: f64 },
    #[error("boundary roots could not be paired: {detail}")]
    OddBoundaryCluster { detail: String },
    #[error("leading coefficient {magnitude:e} is numerically zero")]
    DegenerateLeadingCoeff { magnitude: f64 },
    #[error("all coefficients are zero")]
    AllCoefficientsZero,
    #[error("inner factor has {zeros} Blaschke zero(s) and is not a polynomial")]
    NonpolynomialInner { zeros: usize },
    #[error("ladder stage {stage} has nonpositive grid minimum {min:e}")]
    NonpositiveStage { stage: usize, min: f64 },
    #[error("grid too coarse: Nyquist energy ratio {ratio:e}")]
    GridTooCoarse { ratio: f64 },
    #[error("log w is singular on the quadrature grid")]
    LogSingular,
    #[error("Toeplitz section is singular at order {order} (|reflection| = {reflection})")]
    SingularToeplitz { order: usize, reflection: f64 },
    #[error("function is identically zero")]
    ZeroFunction,
    #[error("spectrum is not contained in [0, inf): lowest frequency {lowest}")]
    SpectrumNotOneSided { lowest: f64 },
    #[error("spectrum is not symmetric: inf {inf}, sup {sup}")]
    SpectrumAsymmetric { inf: f64, sup: f64 },
    #[error("function is too small on the contour (min {min:e})")]
    ZeroOnContour { min: f64 },
    #[error("order collision: {a:?} and {b:?} map to frequencies {gap:e} apart")]
    OrderCollision {
        a: (i64, i64),
        b: (i64, i64),
        gap: f64,
    },
    #[error("eigenvalue iteration did not converge for degree {degree}")]
    RootFinding { degree: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("{failures} of {total} verification cases failed")]
    VerificationFailed { failures: usize, total: usize },
    #[error("i/o: {0}")]
    Io(String),
}

impl Error {
    /// Stable name used in reports and exit-code mapping.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NotReal { .. } => "NotReal",
            Error::NotNonnegative { .. } => "NotNonnegative",
            Error::OddBoundaryCluster { .. } => "OddBoundaryCluster",
            Error::DegenerateLeadingCoeff { .. } => "DegenerateLeadingCoeff",
            Error::AllCoefficientsZero => "AllCoefficientsZero",
            Error::NonpolynomialInner { .. } => "NonpolynomialInner",
            Error::NonpositiveStage { .. } => "NonpositiveStage",
            Error::GridTooCoarse { .. } => "GridTooCoarse",
            Error::LogSingular => "LogSingular",
            Error::SingularToeplitz { .. } => "SingularToeplitz",
            Error::ZeroFunction => "ZeroFunction",
            Error::SpectrumNotOneSided { .. } => "SpectrumNotOneSided",
            Error::SpectrumAsymmetric { .. } => "SpectrumAsymmetric",
            Error::ZeroOnContour { .. } => "ZeroOnContour",
            Error::OrderCollision { .. } => "OrderCollision",
            Error::RootFinding { .. } => "RootFinding",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::VerificationFailed { .. } => "VerificationFailed",
            Error::Io(_) => "Io",
        }
    }

    /// Errors caused by inputs that violate a precondition, as opposed to
    /// numerical breakdown during a computation.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::NotReal { .. }
                | Error::NotNonnegative { .. }
                | Error::AllCoefficientsZero
                | Error::ZeroFunction
                | Error::SpectrumNotOneSided { .. }
                | Error::SpectrumAsymmetric { .. }
                | Error::InvalidArgument(_)
        )
    }
}
