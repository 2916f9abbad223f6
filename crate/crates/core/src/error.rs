use thiserror::Error;

use crate::expr::ExprError;
use crate::numerics::NumericsError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error("no polar period up to {max_n}π")]
    UnknownPeriod { max_n: u32 },
    #[error("identical curves: the two polar graphs coincide")]
    IdenticalCurves,
    #[error("curve is not regular at t = {t}: |α'(t)| = {speed}")]
    NotRegular { t: f64, speed: f64 },
    #[error("parameter {t} lies outside the curve domain [{start}, {end}]")]
    OutOfDomain { t: f64, start: f64, end: f64 },
    #[error("boundary is negative at θ = {theta}: {value}")]
    NegativeBoundary { theta: f64, value: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// True for failures caused by the input text rather than the mathematics.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Expr(ExprError::Syntax { .. } | ExprError::UnknownIdentifier(_) | ExprError::UnboundParameter(_))
                | Error::InvalidArgument(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
