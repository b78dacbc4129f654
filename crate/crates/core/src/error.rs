use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument outside the domain: {0}")]
    Domain(String),
    #[error("function undefined: {0}")]
    Undefined(String),
    #[error("pole at {0}")]
    Pole(f64),
    #[error("no convergence: {0}")]
    Convergence(String),
    #[error("singular point of the potential at u = {0}")]
    SingularPoint(f64),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("recurrence not closed: residual {residual:e}")]
    Consistency { residual: f64 },
    #[error("backward recurrence did not settle on the minimal solution (tail ratio {ratio})")]
    MinimalSolution { ratio: f64 },
    #[error("no sign change of the characteristic function in [{lo}, {hi}]")]
    NoRoot { lo: f64, hi: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
