use thiserror::Error;

/// Everything that can go wrong across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid specification: {0}")]
    InvalidSpecification(String),
    #[error("invalid element: {0}")]
    InvalidElement(String),
    #[error("element is not a member of the monoid: {0}")]
    NotAMember(String),
    #[error("factorizations do not factor the same element")]
    IncomparableFactorizations,
    #[error("factorization enumeration truncated after {cap} factorizations")]
    Truncated { cap: usize },
    #[error("internal consistency violated: {0}")]
    InternalConsistency(String),
    #[error("progressions do not cover Z/{modulus}Z: residue {residue} is missed")]
    NotACovering { modulus: u32, residue: u32 },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invalid genus step: {0}")]
    InvalidStep(String),
    #[error("condition F1 violated: faithful tower `{tower}` is not trivial")]
    F1Violation { tower: String },
    #[error("lattice validation failed: {0}")]
    Lattice(#[from] LatticeError),
    #[error("not found: {0}")]
    NotFound(String),
    #[error("malformed document: {0}")]
    Document(String),
}

/// Named failures of ideal-lattice validation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("duplicate node `{0}`")]
    DuplicateNode(String),
    #[error("unknown simple label `{0}`")]
    UnknownLabel(String),
    #[error("cover `{upper}` > `{lower}` carries no label")]
    EmptyLabel { upper: String, lower: String },
    #[error("covers contain a cycle through `{0}`")]
    Cycle(String),
    #[error("multiple maximal nodes: {0:?}")]
    MultipleTops(Vec<String>),
    #[error("multiple minimal nodes: {0:?}")]
    MultipleBottoms(Vec<String>),
    #[error("declared top `{declared}` is not the unique maximal node `{actual}`")]
    TopMismatch { declared: String, actual: String },
    #[error("declared bottom `{declared}` is not the unique minimal node `{actual}`")]
    BottomMismatch { declared: String, actual: String },
    #[error("top `{0}` is not principal")]
    NonPrincipalTop(String),
    #[error("bottom `{0}` is not principal")]
    NonPrincipalBottom(String),
    #[error("paths from `{upper}` to `{lower}` carry different label multisets")]
    LabelMultisetMismatch { upper: String, lower: String },
}

pub type Result<T> = std::result::Result<T, Error>;
