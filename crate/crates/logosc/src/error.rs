//! Crate-wide error type.

/// Errors shared by all modules.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Families with a 1/t coefficient singularity only accept t > 0.
    #[error("time must be positive for this family, got t = {t}")]
    NonPositiveTime { t: f64 },

    /// Requested a closed form that this family does not ship.
    #[error("no closed form for family {family}")]
    UnsupportedFamily { family: &'static str },

    /// 4·omega0²·t0² − 1 must be positive for the square-mass and
    /// inverse-square-stiffness families.
    #[error("discriminant 4*omega0^2*t0^2 - 1 = {value} is not positive")]
    NonPositiveDiscriminant { value: f64 },

    /// The auxiliary-equation solution collapsed towards rho = 0, where the
    /// 1/rho^3 term diverges.
    #[error("solution blew up (rho -> 0); last valid t = {last_t}")]
    BlowUp { last_t: f64 },

    /// The adaptive step controller could not meet the tolerance.
    #[error("step-size controller failed at t = {t} (h = {h:.3e})")]
    StepFailure { t: f64, h: f64 },

    /// Evaluation time outside the validity domain of a solution.
    #[error("t = {t} outside solution domain [{start}, {end}]")]
    OutOfDomain { t: f64, start: f64, end: f64 },

    /// Hermite order beyond the double-precision recurrence cap.
    #[error("order {n} exceeds the supported maximum {max}")]
    OrderTooLarge { n: usize, max: usize },

    /// The adaptive quadrature could not reach the requested tolerance.
    #[error("quadrature failed to converge (error estimate {estimate:.3e}, target {target:.3e})")]
    QuadratureFailure { estimate: f64, target: f64 },

    /// Closed-form trajectories are shipped only for the release-from-rest
    /// initial conditions.
    #[error("closed-form trajectory requires q0 = 1 and v0 = 0, got q0 = {q0}, v0 = {v0}")]
    UnsupportedInitialConditions { q0: f64, v0: f64 },

    /// Envelope fitting needs at least two oscillation peaks in the window.
    #[error("found {found} oscillation peaks, need at least {need}")]
    TooFewPeaks { found: usize, need: usize },

    /// Invalid constructor or configuration parameter.
    #[error("invalid {name}: {message}")]
    InvalidParameter { name: &'static str, message: String },

    /// Malformed run configuration (file or flags).
    #[error("config: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Stable machine-readable tag, used by the CLI JSON error output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NonPositiveTime { .. } => "NonPositiveTime",
            Error::UnsupportedFamily { .. } => "UnsupportedFamily",
            Error::NonPositiveDiscriminant { .. } => "NonPositiveDiscriminant",
            Error::BlowUp { .. } => "BlowUp",
            Error::StepFailure { .. } => "StepFailure",
            Error::OutOfDomain { .. } => "OutOfDomain",
            Error::OrderTooLarge { .. } => "OrderTooLarge",
            Error::QuadratureFailure { .. } => "QuadratureFailure",
            Error::UnsupportedInitialConditions { .. } => "UnsupportedInitialConditions",
            Error::TooFewPeaks { .. } => "TooFewPeaks",
            Error::InvalidParameter { .. } => "InvalidParameter",
            Error::Config(_) => "Config",
            Error::Io(_) => "Io",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
