use crate::flow::Trajectory;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Input outside the domain of an operation (non-positive factors,
    /// ordering violations, parameters out of range).
    #[error("domain error: {0}")]
    Domain(String),

    /// Shape on the excluded edge `a = 0` of the shape triangle.
    #[error("degenerate shape: {0}")]
    Degenerate(String),

    /// The isotropic closed form was evaluated at or past its collapse time.
    #[error("collapse reached: t = {t} >= collapse time {collapse_time}")]
    CollapseReached { t: f64, collapse_time: f64 },

    /// Slope of the flow-line ODE is undefined (vanishing denominator).
    #[error("singular slope at ({x}, {y})")]
    SingularSlope { x: f64, y: f64 },

    /// The eigenvalue-ratio map is undefined at the corner `y = 1`.
    #[error("singular ratio map at ({x}, {y})")]
    SingularMap { x: f64, y: f64 },

    /// A computed quantity that would be emitted is NaN or infinite.
    #[error("non-finite value for {0}")]
    NonFinite(String),

    /// Step size underflow or non-finite state. Carries what was computed
    /// before the failure.
    #[error("integration failed at t = {t}: {reason}")]
    Integration {
        t: f64,
        reason: String,
        partial: Box<Trajectory>,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
