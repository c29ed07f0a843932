use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("derivative of a degree-0 polynomial is the zero polynomial")]
    ZeroPolynomial,
    #[error("root multiset is not closed under conjugation")]
    NotConjugateClosed,
    #[error("coefficients carry imaginary parts of relative size {0:e}")]
    NonRealCoefficients(f64),
    #[error("root finder did not converge after {iterations} iterations (best residual {residual:e})")]
    RootsNotConverged { iterations: usize, residual: f64 },
    #[error("derivative modulus is unbounded at a unimodular root with exponent {exponent} < 1")]
    UnboundedDerivative { exponent: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("exponent {0} is not a rational number with denominator <= 64")]
    IrrationalExponent(f64),
    #[error("singular reference system (pivot ratio {pivot_ratio:e})")]
    SingularSystem { pivot_ratio: f64 },
    #[error("Remez exchange did not converge after {iterations} exchanges (defect {defect:e})")]
    RemezNotConverged { iterations: usize, defect: f64 },
    #[error("interval minimiser has a root at {0} outside (-1, 1)")]
    RootOutsideInterval(f64),
    #[error("norm cross-check failed: {expected} vs {found} (relative gap {gap:e})")]
    NormMismatch { expected: f64, found: f64, gap: f64 },
    #[error("quadrature of the smooth weight factor failed")]
    QuadratureFailed,
    #[error("search-space guard: {0}")]
    Guard(String),
    #[error("direct minimax solver stagnated at {value} (no certified optimum)")]
    Stagnation { value: f64 },
}

impl Error {
    /// True for errors caused by invalid inputs rather than numerical failure.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::InvalidArgument(_)
                | Error::Precondition(_)
                | Error::IrrationalExponent(_)
                | Error::Guard(_)
                | Error::UnboundedDerivative { .. }
                | Error::NotConjugateClosed
        )
    }
}
