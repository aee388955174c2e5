use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("entry is not integral: {0}")]
    Integrality(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("matrix is singular")]
    Singular,
    #[error("operation requires a field, got {0}")]
    NotAField(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid ring descriptor: {0}")]
    InvalidRing(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is beyond the deterministic primality bound")]
    PrimeOutOfRange(u64),
    #[error("extension modulus is not irreducible over F_{0}")]
    ReducibleModulus(u64),
    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),
    #[error("relation {index} does not evaluate to the identity")]
    RelationViolated { index: usize },
    #[error("lattice saturation did not stabilize within {rounds} rounds")]
    BudgetExceeded { rounds: usize },
    #[error("no free lattice of the supported form: {0}")]
    UnsupportedLattice(String),
    #[error("bad prime {prime}: generator {generator} is not invertible in the residue field")]
    BadPrime { prime: String, generator: usize },
    #[error("prime {prime} does not apply to ring {ring}")]
    PrimeRingMismatch { prime: String, ring: String },
    #[error("lattice is not contained in the ambient lattice")]
    NotSublattice,
    #[error("nonzero ideal generator required")]
    ZeroIdeal,
    #[error("absolute irreducibility undecided: the MeatAxe returned Inconclusive")]
    AbsIrredUndecided,
    #[error("size bound exceeded: {0}")]
    SizeBound(String),
    #[error("generated group exceeds {bound} elements")]
    GroupTooLarge { bound: usize },
    #[error("module does not match the group: {0}")]
    ModuleMismatch(String),
    #[error("certificate version {found} does not match toolkit version {expected}")]
    VersionMismatch { found: String, expected: String },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
