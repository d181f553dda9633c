use crate::field::Field;
use crate::poly::Poly;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("division by zero")]
    DivisionByZero,

    #[error("domain error: {0}")]
    Domain(String),

    /// Squarefree decomposition in characteristic p left a factor with zero
    /// derivative (a polynomial in z^p).
    #[error("inseparable part {inseparable} remains after extracting {} separable factors", separable.len())]
    Inseparable {
        separable: Vec<(Poly, usize)>,
        inseparable: Poly,
    },

    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("point is not on the curve")]
    OffCurve,

    #[error("singular curve (discriminant is zero)")]
    SingularCurve,

    #[error("torsion point: {0} * P is the identity")]
    Torsion(u64),

    #[error("model is not minimal (v(c4) >= 4 and v(delta) >= 12); minimalize first")]
    NotMinimal,

    #[error("valuations ({v_c4}, {v_c6}, {v_delta}) match no Kodaira type")]
    InconsistentValuations {
        v_c4: String,
        v_c6: String,
        v_delta: u32,
    },

    #[error("not a rational elliptic surface: sum of v(delta) is {0}, expected 12")]
    NotRationalSurface(u32),

    /// `unit` names what is counted, e.g. "candidates" or "terms".
    #[error("budget exceeded: {required} {unit} required, limit {limit}")]
    Budget {
        required: String,
        unit: &'static str,
        limit: u64,
    },

    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }
}
