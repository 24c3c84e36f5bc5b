use thiserror::Error;

/// Errors shared by every module of the crate.
///
/// Distinct conditions get distinct variants so callers (and the CLI exit-code
/// mapping) can tell a resource cap from a domain violation from a genuine
/// construction failure.
#[derive(Debug, Error)]
pub enum Error {
    /// The alphabet size `a` must be at least 1; `a = 0` generates no
    /// length-1 words and degenerates every recurrence seed.
    #[error("alphabet size a must be at least 1")]
    ZeroAlphabet,

    /// A letter exceeds the alphabet bound `a`.
    #[error("letter {letter} out of range for alphabet size {a}")]
    LetterOutOfRange { letter: u32, a: u32 },

    /// The top letter `a` occurs without an immediately preceding 0.
    #[error("letter {a} at position {position} is not preceded by 0")]
    MisplacedTopLetter { a: u32, position: usize },

    /// Words of different lengths where equal lengths are required.
    #[error("word length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    /// Words over different alphabets where one alphabet is required.
    #[error("alphabet mismatch: a = {left} vs a = {right}")]
    AlphabetMismatch { left: u32, right: u32 },

    /// Rank/unrank index outside `0..count`.
    #[error("index {index} out of range ({count} words)")]
    IndexOutOfRange { index: u64, count: u64 },

    /// A count exceeded the configured resource cap.
    #[error("{needed} vertices exceed the cap of {cap}")]
    CapExceeded { needed: u64, cap: u64 },

    /// A count does not fit the machine word used for ranking.
    #[error("word count for a = {a}, n = {n} overflows u64")]
    CountOverflow { a: u32, n: usize },

    /// A word that is not a vertex of the graph at hand.
    #[error("vertex {0} is not in the graph")]
    VertexNotInGraph(String),

    /// Unparseable word text.
    #[error("cannot parse {text:?} as a word over 0..={a}")]
    ParseWord { text: String, a: u32 },

    /// Unknown export format name.
    #[error("unknown format {0:?} (expected dot, json or edgelist)")]
    UnknownFormat(String),

    /// A precondition on numeric parameters does not hold.
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),

    /// The operation is not defined for this alphabet size.
    #[error("{operation} is not supported for a = {a}")]
    UnsupportedAlphabet { a: u32, operation: &'static str },

    /// Hamiltonian cycles exist only for even alphabets; odd `a` is signaled
    /// apart from a construction failure.
    #[error("Hamiltonian cycle construction requires even a, got a = {a}")]
    UnsupportedParity { a: u32 },

    /// A constructor produced an object that failed revalidation.
    #[error("construction failure: {0}")]
    ConstructionFailure(String),

    /// An internal invariant that the theory guarantees was violated.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
