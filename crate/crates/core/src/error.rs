use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown parameter `{0}`")]
    UnknownParameter(String),
    #[error("parameter `{0}` has no binding")]
    UnboundParameter(String),
    #[error("parameter `{0}` is bound to a floating value where an exact one is required")]
    InexactBinding(String),
    #[error("unknown phase space `{0}`")]
    UnknownSpace(String),
    #[error("polynomials live on different phase spaces ({0} vs {1})")]
    SpaceMismatch(String, String),
    #[error("operators live in different algebras ({0} vs {1})")]
    AlgebraMismatch(String, String),
    #[error("operators act on different coefficient rings ({0} vs {1})")]
    RingMismatch(String, String),
    #[error("basis is not closed under the bracket: {{{0}, {1}}} leaves the span")]
    NotASubalgebra(String, String),
    #[error("basis element `{0}` carries formal parameters")]
    ParameterInBasis(String),
    #[error("truncation {got} is too small (need at least {min})")]
    TruncationTooSmall { got: usize, min: usize },
    #[error("grid size {got} is too small (need at least {min})")]
    GridTooSmall { got: usize, min: usize },
    #[error("linear system does not determine the interior entries: {0}")]
    SingularSystem(String),
    #[error("generator `{0}` has no assigned matrix")]
    UnassignedGenerator(String),
    #[error("no image assigned to monomial `{0}`")]
    UnassignedMonomial(String),
    #[error("`{0}` is not divisible by {1}")]
    NotDivisible(String, String),
    #[error("preset `{0}` does not apply to space `{1}`")]
    IncompatiblePreset(String, String),
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
