use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element cap exceeded: {what} would exceed {cap}")]
    CapExceeded { what: String, cap: usize },

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("empty generator list")]
    EmptyGenerators,

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("element lies outside the group")]
    ElementOutsideGroup,

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("index is {0}, expected 2")]
    IndexNotTwo(usize),

    #[error("order {0} is not a power of 2")]
    NotTwoGroup(usize),

    #[error("not a nontrivial cyclic 2-group")]
    NotCyclicTwoGroup,

    #[error("not a generalized quaternion group")]
    NotQuaternion,

    #[error("action does not define a homomorphism into Aut(N): {0}")]
    ActionInvalid(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("modulus is reducible")]
    Reducible,

    #[error("bad parameters: {0}")]
    BadParameters(String),

    #[error("row condition violated: {0}")]
    ConditionViolated(String),

    #[error("search failed: {0}")]
    SearchFailed(String),

    #[error("bad tag: {0}")]
    BadTag(String),

    #[error("search budget of {0} nodes exhausted")]
    BudgetExhausted(u64),

    #[error("invalid transversal: {0}")]
    InvalidTransversal(String),

    #[error("product HK is not a group")]
    ProductNotGroup,

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("not a complement: {0}")]
    NotComplement(String),

    #[error("bad decomposition: {0}")]
    BadDecomposition(String),

    #[error("set is not contained in the vertex set")]
    BadSubset,
}
