use thiserror::Error;

/// Failure modes of the model-family constructors and checks.
///
/// Degenerate parameter values produce errors only where a formula genuinely
/// loses meaning (a vanishing denominator); everywhere else the constructors
/// return values together with warning flags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ModelError {
    /// A parameter sits on a denominator of the requested closed form.
    #[error("degenerate parameter: {0}")]
    DegenerateParameter(&'static str),

    /// b^2 = c^2 within the relative guard; the C operator diverges there.
    #[error("exceptional point: c^2 - b^2 is numerically zero")]
    ExceptionalPoint,

    /// A residual was requested against the zero vector.
    #[error("zero vector has no eigen-residual")]
    ZeroVector,

    /// The completeness sum is not invertible.
    #[error("singular completeness sum")]
    SingularSum,

    /// A matrix that must be inverted has zero determinant.
    #[error("singular matrix")]
    SingularMatrix,
}
