use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid field parameters: {0}")]
    InvalidField(String),
    #[error("field parameters differ between operands")]
    ParamsMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("no square root in K: {0}")]
    NoRoot(String),
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("Möbius map is degenerate (ad - bc = 0 at working precision)")]
    DegenerateMap,
    #[error("transformation is not hyperbolic: {0}")]
    NotHyperbolic(String),
    #[error("transformation is parabolic (double fixed point)")]
    Parabolic,
    #[error("window mismatch: {0}")]
    WindowMismatch(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("core map left the unit polydisk at {0}")]
    EscapesPolydisk(String),
    #[error("invalid symbol: {0}")]
    InvalidSymbol(String),
    #[error("tail bound {bound:e} exceeds tolerance {tolerance:e}")]
    TailBoundExceeded { bound: f64, tolerance: f64 },
    #[error("inadmissible wavelet index: {0}")]
    InadmissibleIndex(String),
    #[error("norm of the image is not constant on the Fourier support: {0}")]
    NotConstant(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("size guard exceeded: {0}")]
    SizeGuard(String),
    #[error("invalid tuple: {0}")]
    InvalidTuple(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
