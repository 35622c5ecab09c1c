//! Exit-code contract: 0 success, 2 input error, 3 semantic invariant
//! violation, 4 mathematical refusal or verification failure.

use inversive::Error as CoreError;

#[derive(Debug)]
pub enum CliError {
    /// Unreadable or malformed input (exit 2).
    Input(String),
    /// Well-formed input violating a semantic invariant (exit 3).
    Invariant(String),
    /// The mathematics refuses: mismatched invariants, degeneracy, or a
    /// failed verification (exit 4).
    Refusal(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Invariant(_) => 3,
            CliError::Refusal(_) => 4,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Invariant(m) | CliError::Refusal(m) => m,
        }
    }
}

pub fn error_name(e: &CoreError) -> &'static str {
    match e {
        CoreError::DimensionMismatch { .. } => "DimensionMismatch",
        CoreError::AllZero => "AllZero",
        CoreError::RankAmbiguous { .. } => "RankAmbiguous",
        CoreError::DegenerateSpan => "DegenerateSpan",
        CoreError::FullSpace => "FullSpace",
        CoreError::NotOnSheet => "NotOnSheet",
        CoreError::NotSpaceLike => "NotSpaceLike",
        CoreError::NotLightLike => "NotLightLike",
        CoreError::NotPositive => "NotPositive",
        CoreError::DuplicatePoints => "DuplicatePoints",
        CoreError::DuplicateRays => "DuplicateRays",
        CoreError::SameBoundary => "SameBoundary",
        CoreError::OnOrOutsideBoundary => "OnOrOutsideBoundary",
        CoreError::GramMismatch { .. } => "GramMismatch",
        CoreError::CommonBoundaryPoint => "CommonBoundaryPoint",
        CoreError::CrossRatioMismatch { .. } => "CrossRatioMismatch",
        CoreError::EmptyConfiguration => "EmptyConfiguration",
        CoreError::DuplicateLabel(_) => "DuplicateLabel",
        CoreError::WrongKind => "WrongKind",
        CoreError::InvalidInput(_) => "InvalidInput",
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        let msg = format!("{}: {e}", error_name(&e));
        match e {
            CoreError::InvalidInput(_)
            | CoreError::DimensionMismatch { .. }
            | CoreError::WrongKind => CliError::Input(msg),
            CoreError::EmptyConfiguration
            | CoreError::DuplicateLabel(_)
            | CoreError::DuplicatePoints
            | CoreError::DuplicateRays
            | CoreError::AllZero => CliError::Invariant(msg),
            _ => CliError::Refusal(msg),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
