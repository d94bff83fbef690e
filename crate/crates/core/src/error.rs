use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("symbol {symbol} is outside the alphabet of size {alphabet_size}")]
    SymbolOutOfRange { symbol: u32, alphabet_size: u32 },
    #[error("symbol {0} occurs more than once in a multiplicity-free word")]
    DuplicateSymbol(u32),
    #[error("not a permutation of 1..{0}")]
    NotAPermutation(usize),
    #[error("deletion position {position} is outside 1..={len}")]
    PositionOutOfRange { position: usize, len: usize },
    #[error("deletion pattern is for length {pattern}, but the word has length {word}")]
    LengthMismatch { pattern: usize, word: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("Newton inversion of {count} power sums needs count < p = {modulus}")]
    TooManyPowerSums { count: usize, modulus: u64 },
    #[error("word of weight {weight} cannot come from weight {target} with at most {budget} flips")]
    WeightTooLow { weight: usize, target: usize, budget: usize },
    #[error("no codeword within the error budget")]
    NoSolution,
    #[error("enumeration of {required} items exceeds the scale guard of {limit}")]
    ScaleGuardExceeded { required: u128, limit: u128 },
    #[error("received word is not in the deletion ball of any codeword")]
    NotFound,
    #[error("received word lies in the deletion balls of {0} codewords")]
    Ambiguous(usize),
    #[error("received length {len} is outside the decodable range {min}..={max}")]
    ReceivedLength { len: usize, min: usize, max: usize },
    #[error("set decoding failed: {0}")]
    SetDecodeFailed(Box<Error>),
    #[error("permutation decoding failed: {0}")]
    PermDecodeFailed(Box<Error>),
    #[error("received symbol {0} is not in the recovered set")]
    SymbolNotInSet(u32),
    #[error("index {index} is out of range for a code of size {size}")]
    IndexOutOfRange { index: u128, size: u128 },
}

impl Error {
    /// Short machine-readable tag, used by the CLI's structured error output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::SymbolOutOfRange { .. } => "symbol_out_of_range",
            Error::DuplicateSymbol(_) => "duplicate_symbol",
            Error::NotAPermutation(_) => "not_a_permutation",
            Error::PositionOutOfRange { .. } => "position_out_of_range",
            Error::LengthMismatch { .. } => "length_mismatch",
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::NotPrime(_) => "not_prime",
            Error::TooManyPowerSums { .. } => "too_many_power_sums",
            Error::WeightTooLow { .. } => "weight_too_low",
            Error::NoSolution => "no_solution",
            Error::ScaleGuardExceeded { .. } => "scale_guard_exceeded",
            Error::NotFound => "not_found",
            Error::Ambiguous(_) => "ambiguous",
            Error::ReceivedLength { .. } => "received_length",
            Error::SetDecodeFailed(_) => "set_decode_failed",
            Error::PermDecodeFailed(_) => "perm_decode_failed",
            Error::SymbolNotInSet(_) => "symbol_not_in_set",
            Error::IndexOutOfRange { .. } => "index_out_of_range",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
