use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("composition is not associative: ({h}.{g}).{f} != {h}.({g}.{f})")]
    NotAssociative { f: String, g: String, h: String },

    #[error("missing identity: {detail}")]
    MissingIdentity { detail: String },

    #[error("ill-typed composite {g}.{f}: {detail}")]
    IllTypedComposite { g: String, f: String, detail: String },

    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),

    #[error("unknown object `{0}`")]
    UnknownObject(String),

    #[error("unknown edge `{0}`")]
    UnknownEdge(String),

    #[error("search budget {budget} exceeded (estimated search space {estimate:.3e})")]
    BudgetExceeded { budget: u64, estimate: f64 },

    #[error("arity mismatch: {0}")]
    ArityMismatch(String),

    #[error("arity bound {bound} too small: {detail}")]
    BoundTooSmall { bound: usize, detail: String },

    #[error("incompatible chains: {0}")]
    IncompatibleChains(String),

    #[error("invalid forest: {0}")]
    InvalidForest(String),

    #[error("invalid operad: {0}")]
    InvalidOperad(String),

    #[error("invalid functor: {0}")]
    InvalidFunctor(String),

    #[error("{line}:{column}: parse error: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("{line}: unresolved name `{name}`")]
    UnresolvedName { line: usize, name: String },

    #[error("{line}: duplicate name `{name}`")]
    DuplicateName { line: usize, name: String },

    #[error("{0}")]
    Usage(String),
}
