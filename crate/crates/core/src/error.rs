use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed group spec `{0}`")]
    MalformedSpec(String),

    #[error("inconsistent presentation: {0}")]
    InconsistentPresentation(String),

    #[error("group of order {order} exceeds the limit of {limit} for {what}")]
    SizeLimit {
        what: &'static str,
        order: usize,
        limit: usize,
    },

    #[error("element index {index} out of range for a group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },

    #[error("action is not a homomorphism: {0}")]
    NotAHomomorphism(String),

    #[error("action does not map the point set into itself")]
    ActionNotClosed,

    #[error("orbit count {direct} disagrees with the Burnside count {burnside}")]
    BurnsideMismatch { direct: usize, burnside: String },

    #[error("automorphism set is not closed under composition")]
    AutNotClosed,

    #[error("subgroup is not regular: {0}")]
    NotRegular(String),

    #[error("character is not compatible with the brace: {0}")]
    NotABraceCharacter(String),

    #[error("double semidirect condition fails at a={a}, b1={b1}, b2={b2}")]
    DsdpCondition { a: usize, b1: usize, b2: usize },

    #[error("prime {p} divides {n}")]
    PrimeDividesOrder { p: u64, n: u64 },

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("invalid prime spec: {0}")]
    InvalidPrimeSpec(String),

    #[error("hypothesis not established for n={n}, p={p} and not overridden")]
    HypothesisUnknown { n: u64, p: u64 },

    #[error("no group catalog for order {0}")]
    NoCatalog(usize),

    #[error("group not found in the catalog of order {0}")]
    NotInCatalog(usize),

    #[error("closed-form count disagrees with enumeration: {0}")]
    FormulaMismatch(String),

    #[error("incompatible reports: {0}")]
    IncompatibleReports(String),

    #[error("search budget exceeded after {nodes} nodes ({found} regular subgroups found)")]
    BudgetExceeded { nodes: u64, found: u64 },

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
