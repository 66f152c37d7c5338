use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("matrix is not symmetric: max asymmetry {max_asymmetry:.3e} exceeds {bound:.3e}")]
    NotSymmetric { max_asymmetry: f64, bound: f64 },

    #[error("matrix is not antisymmetric: ‖A + Aᵀ‖ = {residual:.3e} exceeds {bound:.3e}")]
    NotAntisymmetric { residual: f64, bound: f64 },

    #[error("matrix is not positive semi-definite: min eigenvalue {min_eigenvalue:.6e}")]
    NotPositiveSemidefinite { min_eigenvalue: f64 },

    #[error("matrix is not positive definite: min eigenvalue {min_eigenvalue:.6e}")]
    NotPositiveDefinite { min_eigenvalue: f64 },

    #[error("matrix is not unitary: ‖UU† - 1‖ = {residual:.3e} exceeds {bound:.3e}")]
    NotUnitary { residual: f64, bound: f64 },

    #[error("matrix is not symplectic: ‖SΩSᵀ - Ω‖ = {residual:.3e} exceeds {bound:.3e}")]
    NotSymplectic { residual: f64, bound: f64 },

    #[error("symplectic matrix has determinant {det:.6e}, expected +1")]
    Determinant { det: f64 },

    #[error("matrix is not orthogonal-symplectic: {condition} residual {residual:.3e} exceeds {bound:.3e}")]
    NotOrthoSymplectic {
        condition: &'static str,
        residual: f64,
        bound: f64,
    },

    #[error("degenerate pivot {value:.3e} at index {index}")]
    Degenerate { index: usize, value: f64 },

    #[error("{0} did not converge")]
    NoConvergence(&'static str),

    #[error("output check failed: {invariant} residual {residual:.3e} exceeds {bound:.3e}")]
    OutputCheck {
        invariant: &'static str,
        residual: f64,
        bound: f64,
    },

    #[error("format error at line {line}: {message}")]
    Format { line: usize, message: String },

    #[error("schema error in field `{field}`: {message}")]
    Schema { field: &'static str, message: String },
}

impl Error {
    pub(crate) fn dim(msg: impl Into<String>) -> Self {
        Error::Dimension(msg.into())
    }

    /// True for errors produced while reading a matrix file rather than
    /// while checking a mathematical property.
    pub fn is_parse_error(&self) -> bool {
        matches!(self, Error::Format { .. } | Error::Schema { .. })
    }
}
