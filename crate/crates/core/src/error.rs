use thiserror::Error;

/// Errors reported by the library.
///
/// Domain errors (bad lengths, inconsistent quantum numbers, bases that are
/// not closed under the relevant symmetry) are distinguished from
/// verification failures (an algebraic identity that should hold exactly but
/// does not), so callers can map them to different exit codes.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("chain length {0} unsupported: length must be even and within 4..=32")]
    InvalidChainLength(u32),
    #[error("state 0b{state:b} has bits outside the {l}-site chain")]
    InvalidState { state: u32, l: u32 },
    #[error("cannot parse {0:?} as a basis state of length {1}")]
    ParseState(String, u32),
    #[error("sector key (m={m}, n_dw={n_dw}) is inconsistent with L={l}")]
    InconsistentKey { m: i32, n_dw: u32, l: u32 },
    #[error("magnetization {m} is out of range or parity-inconsistent with L={l}")]
    InvalidMagnetization { m: i32, l: u32 },
    #[error("basis is not closed under the model moves: {state} maps outside it")]
    ClosureViolation { state: String },
    #[error("basis is not closed under charge conjugation: conjugate of {state} is missing")]
    NotFlipClosed { state: String },
    #[error("sector list is not closed under translation: image of {state} is missing")]
    NotTranslationClosed { state: String },
    #[error("sector list mixes different sector keys")]
    MixedKeys,
    #[error("operation requires the m=0 block, got m={0}")]
    NonZeroMagnetization(i32),
    #[error("sectors are not exchanged by charge conjugation")]
    NotConjugationPair,
    #[error("sector member {state} is missing from the operator basis")]
    MemberOutsideBasis { state: String },
    #[error("operator entries are not exact integers; exact verification impossible")]
    NonIntegerEntries,
    #[error("operator basis must be strictly ascending")]
    UnsortedBasis,
    #[error("dimension {dim} exceeds the dense-solver cap of {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("algebra relation {relation} violated: max integer residual {residual}")]
    AlgebraViolation {
        relation: &'static str,
        residual: i64,
    },
    #[error("symmetry fragment sum rule violated: max integer residual {0}")]
    SumRuleViolation(i64),
    #[error("fragment does not commute with the Hamiltonian: max residual {0:e}")]
    FragmentCommutatorViolation(f64),
    #[error("paired spectra disagree: max sorted-eigenvalue mismatch {0:e}")]
    DegeneracyViolation(f64),
    #[error("state {state} is not frozen")]
    NotFrozen { state: String },
    #[error("cat construction produced the zero vector")]
    ZeroVector,
    #[error("state vector lives on a different basis than the operator")]
    BasisMismatch,
    #[error("entanglement cut {cut} must satisfy 0 < cut < {l}")]
    InvalidCut { cut: u32, l: u32 },
    #[error("series of length {len} too short for window fraction {window}")]
    SeriesTooShort { len: usize, window: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
