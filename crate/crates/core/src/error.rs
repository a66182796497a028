use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("integrand is not finite at x = {at}")]
    NonFiniteIntegrand { at: f64 },

    #[error("no sign change on [{lower}, {upper}] (g = {g_lower:e}, {g_upper:e})")]
    Bracket {
        lower: f64,
        upper: f64,
        g_lower: f64,
        g_upper: f64,
    },

    #[error("singular system: {near_null} near-null direction(s)")]
    Singular { near_null: usize },

    #[error("matrix is not symmetric: max |G - Gᵀ| = {max_asymmetry:e}")]
    NotSymmetric { max_asymmetry: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("mode {index}: root solve failed in bracket ({lower}, {upper}): {source}")]
    ModeSolve {
        index: usize,
        lower: f64,
        upper: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("position {x} outside [{lower}, {upper}]")]
    Domain { x: f64, lower: f64, upper: f64 },

    #[error("field is not Hermitian: max deviation {deviation:e}")]
    Symmetry { deviation: f64 },

    #[error("grid cannot resolve {what}")]
    Resolution { what: String },

    #[error("operation not supported for potential `{kind}`: {hint}")]
    Unsupported { kind: &'static str, hint: &'static str },

    #[error("derivative of order {order} unavailable for potential `{kind}`")]
    Derivative { kind: &'static str, order: usize },

    #[error("mollifier derivative order {0} unsupported (max 4)")]
    MollifierOrder(usize),

    #[error("index {index} out of range (modes 0..={max})")]
    Index { index: usize, max: usize },

    #[error("density is identically zero")]
    ZeroDensity,

    #[error("field is not separable: rank-one residual {residual:e} > {threshold:e}")]
    NotSeparable { residual: f64, threshold: f64 },

    #[error("need at least {needed} time samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    #[error("shape mismatch: {0}")]
    Shape(String),
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
