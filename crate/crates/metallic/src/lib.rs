//! Metallic cubes: a two-parameter family of graphs `Π^a_n` generalizing
//! Fibonacci cubes (`a = 1`) and, in spirit, Pell graphs (`a = 2`).
//!
//! Vertices are words of length `n` over the alphabet `{0, …, a}` in which the
//! top letter `a` may only occur immediately after a `0`. Two words are
//! adjacent when they differ in a single position by exactly one. The crate
//! builds these graphs explicitly and implements their enumerative, structural,
//! metric and Hamiltonicity theory as executable, cross-checked operations:
//!
//! - [`strings`]: the word language, lexicographic enumeration, rank/unrank,
//!   primitive-block decomposition.
//! - [`graph`]: explicit immutable graphs with BFS and export (dot, json,
//!   edge list).
//! - [`counting`]: exact vertex/edge counts (recurrence and closed form) and
//!   the degree distribution via three independent routes.
//! - [`structure`]: canonical and grid decompositions, the quotient onto a
//!   Fibonacci cube, the embedding into Fibonacci cubes, medians.
//! - [`metrics`]: eccentricities, radius, diameter, center and periphery,
//!   each paired with its closed form.
//! - [`hamilton`]: constructive Hamiltonian paths, cycles and near-cycles,
//!   with independent witness validation.
//! - [`verify`]: the formula-vs-oracle check suite used by the CLI.

pub mod counting;
mod error;
pub mod graph;
pub mod hamilton;
pub mod metrics;
pub mod strings;
pub mod structure;
pub mod verify;

pub use error::Error;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;

/// Default ceiling on the number of vertices any operation will materialize.
pub const DEFAULT_VERTEX_CAP: u64 = 5_000_000;

/// Default ceiling on `|V|` for all-pairs computations (metric reports).
pub const DEFAULT_ALLPAIRS_CAP: u64 = 25_000;
