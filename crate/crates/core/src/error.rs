use thiserror::Error;

/// Errors raised while building ground sets, parsing preferences, or
/// constructing rules.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ground set needs at least 3 alternatives, got {0}")]
    GroundTooSmall(usize),
    #[error("ground set of size {size} exceeds the supported maximum of {max}")]
    GroundTooLarge { size: usize, max: usize },
    #[error("duplicate label `{0}` in ground set")]
    DuplicateGroundLabel(String),
    #[error("invalid label `{0}`")]
    InvalidLabel(String),
    #[error("empty agenda")]
    EmptyAgenda,
    #[error("agenda is not a subset of the ambient set")]
    AgendaOutsideGround,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("profile error: {0}")]
    Profile(String),
    #[error("rule parameter error: {0}")]
    Parameter(String),
    #[error("ill-formed filter family: meet of the selected bipartitions is undefined at profile [{0}]")]
    IllFormedFamily(String),
    #[error("restriction family undefined: rule `{rule}` violates independence on agenda {{{agenda}}}")]
    FamilyUndefined { rule: String, agenda: String },
    #[error("quantification domain too large: {0}")]
    DomainTooLarge(String),
    #[error("internal structure violation: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
