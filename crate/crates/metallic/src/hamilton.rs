//! Constructive Hamiltonicity: spanning paths for every `(a, n)`, spanning
//! cycles for even `a` and odd `n`, near-cycles (all vertices but one) for
//! even `a` and even `n`, and matchings read off the path.
//!
//! Constructions mirror the cubes' recursive structure. The path through
//! `Π^a_n` concatenates a path through the `0a`-prefixed copy of `Π^a_{n−2}`
//! with alternatingly reversed paths through the `a` letter-prefixed copies
//! of `Π^a_{n−1}`. Cycles pair up the letter copies, splice each pair with an
//! edge exchange, chain the pairs together, and absorb the `0a` copy last.
//! Every constructor revalidates its output against the graph before
//! returning; a validation failure is reported as an error, never as a
//! silently wrong witness.

use crate::graph::MetallicCube;
use crate::strings::{self, Letter, MetallicString};
use crate::{Error, Result};
use std::collections::HashMap;

/// What a witness claims to be.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessKind {
    /// Spanning path: a permutation of the vertices, consecutive ones
    /// adjacent.
    Path,
    /// Spanning cycle: as above, plus last adjacent to first.
    Cycle,
    /// Cycle covering all vertices except exactly `missed`.
    NearCycle,
}

impl std::fmt::Display for WitnessKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            WitnessKind::Path => "path",
            WitnessKind::Cycle => "cycle",
            WitnessKind::NearCycle => "near_cycle",
        })
    }
}

/// A claimed Hamiltonian path/cycle/near-cycle over vertex ranks, plus the
/// verdict of its revalidation.
#[derive(Debug, Clone)]
pub struct PathWitness {
    pub kind: WitnessKind,
    /// Vertex ranks in visiting order.
    pub sequence: Vec<u32>,
    /// The one uncovered vertex (near-cycles only).
    pub missed: Option<u32>,
    pub valid: bool,
}

impl PathWitness {
    /// The visited vertices as words.
    pub fn vertices(&self, g: &MetallicCube) -> Vec<MetallicString> {
        self.sequence
            .iter()
            .map(|&r| g.vertex(r as usize))
            .collect()
    }
}

/// Why a witness failed validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessViolation {
    RankOutOfRange {
        position: usize,
    },
    DuplicateVertex {
        position: usize,
    },
    /// `sequence[position]` and its successor (cyclically, for cycles) are
    /// not adjacent.
    NotAdjacent {
        position: usize,
    },
    CoverageWrong {
        covered: usize,
        expected: usize,
    },
    MissedVertexInSequence,
    MissedVertexNotSet,
    MissedVertexSpurious,
}

impl std::fmt::Display for WitnessViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            WitnessViolation::RankOutOfRange { position } => {
                write!(f, "rank at position {position} is out of range")
            }
            WitnessViolation::DuplicateVertex { position } => {
                write!(f, "vertex at position {position} repeats an earlier one")
            }
            WitnessViolation::NotAdjacent { position } => {
                write!(
                    f,
                    "vertices at positions {position} and {} are not adjacent",
                    position + 1
                )
            }
            WitnessViolation::CoverageWrong { covered, expected } => {
                write!(f, "sequence covers {covered} vertices, expected {expected}")
            }
            WitnessViolation::MissedVertexInSequence => {
                write!(f, "the declared missed vertex occurs in the sequence")
            }
            WitnessViolation::MissedVertexNotSet => {
                write!(f, "near-cycle without a declared missed vertex")
            }
            WitnessViolation::MissedVertexSpurious => {
                write!(f, "missed vertex declared on a spanning witness")
            }
        }
    }
}

/// Outcome of validating a witness against a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessReport {
    pub valid: bool,
    /// The first violation found, if any.
    pub violation: Option<WitnessViolation>,
}

/// Checks a witness structurally: ranks in range, no repeats, coverage
/// matching its kind, consecutive adjacency, and closure for (near-)cycles.
/// Independent of the constructors, so externally supplied witnesses can be
/// checked too.
pub fn validate_witness(g: &MetallicCube, witness: &PathWitness) -> WitnessReport {
    let fail = |violation| WitnessReport {
        valid: false,
        violation: Some(violation),
    };
    let count = g.vertex_count();
    let mut seen = vec![false; count];
    for (position, &rank) in witness.sequence.iter().enumerate() {
        let Ok(rank) = usize::try_from(rank) else {
            return fail(WitnessViolation::RankOutOfRange { position });
        };
        if rank >= count {
            return fail(WitnessViolation::RankOutOfRange { position });
        }
        if seen[rank] {
            return fail(WitnessViolation::DuplicateVertex { position });
        }
        seen[rank] = true;
    }

    let expected = match witness.kind {
        WitnessKind::Path | WitnessKind::Cycle => {
            if witness.missed.is_some() {
                return fail(WitnessViolation::MissedVertexSpurious);
            }
            count
        }
        WitnessKind::NearCycle => {
            let Some(missed) = witness.missed else {
                return fail(WitnessViolation::MissedVertexNotSet);
            };
            if missed as usize >= count {
                return fail(WitnessViolation::RankOutOfRange {
                    position: witness.sequence.len(),
                });
            }
            if seen[missed as usize] {
                return fail(WitnessViolation::MissedVertexInSequence);
            }
            count - 1
        }
    };
    if witness.sequence.len() != expected {
        return fail(WitnessViolation::CoverageWrong {
            covered: witness.sequence.len(),
            expected,
        });
    }

    let adjacent = |u: u32, v: u32| g.neighbors(u as usize).binary_search(&v).is_ok();
    for position in 0..witness.sequence.len().saturating_sub(1) {
        if !adjacent(witness.sequence[position], witness.sequence[position + 1]) {
            return fail(WitnessViolation::NotAdjacent { position });
        }
    }
    if matches!(witness.kind, WitnessKind::Cycle | WitnessKind::NearCycle)
        && witness.sequence.len() > 1
    {
        let last = witness.sequence.len() - 1;
        if !adjacent(witness.sequence[last], witness.sequence[0]) {
            return fail(WitnessViolation::NotAdjacent { position: last });
        }
    }
    WitnessReport {
        valid: true,
        violation: None,
    }
}

// ---------------------------------------------------------------------------
// Hamiltonian paths
// ---------------------------------------------------------------------------

/// Endpoint pattern of the constructed path: for even `a`, from
/// `0a0a…0a(0)` to `(a−1)^n`; for odd `a`, from the length-`n` prefix of
/// `(0, a, a−1)^ω` to the length-`n` prefix of `(a−1, 0, a)^ω`.
pub fn path_start_word(a: u32, n: usize) -> Vec<Letter> {
    if a.is_multiple_of(2) {
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(if i % 2 == 0 { 0 } else { a });
        }
        out
    } else {
        cyclic_prefix(&[0, a, a - 1], n)
    }
}

/// See [`path_start_word`].
pub fn path_end_word(a: u32, n: usize) -> Vec<Letter> {
    if a.is_multiple_of(2) {
        vec![a - 1; n]
    } else {
        cyclic_prefix(&[a - 1, 0, a], n)
    }
}

fn cyclic_prefix(pattern: &[Letter], n: usize) -> Vec<Letter> {
    (0..n).map(|i| pattern[i % pattern.len()]).collect()
}

/// The recursive spanning-path construction over words.
fn path_words(a: u32, n: usize) -> Vec<Vec<Letter>> {
    let mut two_back: Vec<Vec<Letter>> = vec![vec![]];
    if n == 0 {
        return two_back;
    }
    let mut one_back: Vec<Vec<Letter>> = (0..a).map(|j| vec![j]).collect();
    for _ in 2..=n {
        let mut level = Vec::with_capacity(two_back.len() + (a as usize) * one_back.len());
        // The 0a-prefixed copy comes first: forward for even a, reversed for
        // odd a (so the junction into the 0-prefixed copy lines up).
        let extend_with = |level: &mut Vec<Vec<Letter>>,
                           prefix: &[Letter],
                           source: &[Vec<Letter>],
                           reversed: bool| {
            let indices: Box<dyn Iterator<Item = usize>> = if reversed {
                Box::new((0..source.len()).rev())
            } else {
                Box::new(0..source.len())
            };
            for i in indices {
                let mut word = Vec::with_capacity(prefix.len() + source[i].len());
                word.extend_from_slice(prefix);
                word.extend_from_slice(&source[i]);
                level.push(word);
            }
        };
        extend_with(&mut level, &[0, a], &two_back, a % 2 == 1);
        for j in 0..a {
            extend_with(&mut level, &[j], &one_back, j % 2 == 0);
        }
        two_back = one_back;
        one_back = level;
    }
    one_back
}

/// A Hamiltonian path through `g`, revalidated before it is returned.
pub fn hamiltonian_path(g: &MetallicCube) -> Result<PathWitness> {
    let words = path_words(g.a(), g.n());
    let witness = witness_from_words(g, WitnessKind::Path, &words, None)?;
    finish_validated(g, witness, "Hamiltonian path")
}

// ---------------------------------------------------------------------------
// Hamiltonian cycles
// ---------------------------------------------------------------------------

/// A cycle over words plus the one word it misses (for even levels).
struct CycleLevel {
    words: Vec<Vec<Letter>>,
    missed: Option<Vec<Letter>>,
}

/// A Hamiltonian cycle of `g` for odd `n`, or a near-cycle missing exactly
/// one vertex for even `n`. Only even alphabets admit either (odd `a` is a
/// distinct error from a construction failure).
pub fn hamiltonian_cycle(g: &MetallicCube) -> Result<PathWitness> {
    let (a, n) = (g.a(), g.n());
    if a % 2 == 1 {
        return Err(Error::UnsupportedParity { a });
    }
    if n < 2 {
        return Err(Error::InvalidParameter(
            "cycle construction requires n >= 2",
        ));
    }
    let mut level = grid_cycle_level(a);
    for m in 3..=n {
        level = extend_cycle_level(a, m, level)?;
    }
    let kind = if level.missed.is_some() {
        WitnessKind::NearCycle
    } else {
        WitnessKind::Cycle
    };
    let witness = witness_from_words(g, kind, &level.words, level.missed.as_deref())?;
    finish_validated(g, witness, "Hamiltonian cycle")
}

/// Base case `n = 2`: a boustrophedon cycle through the `a × a` grid; the
/// pendant vertex `0a` is the missed one.
fn grid_cycle_level(a: u32) -> CycleLevel {
    let mut words = Vec::with_capacity((a * a) as usize);
    for col in 0..a {
        words.push(vec![0, col]);
    }
    for row in 1..a {
        // odd rows right-to-left, even rows left-to-right, over columns >= 1
        let cols: Vec<u32> = if row % 2 == 1 {
            (1..a).rev().collect()
        } else {
            (1..a).collect()
        };
        for col in cols {
            words.push(vec![row, col]);
        }
    }
    for row in (1..a).rev() {
        words.push(vec![row, 0]);
    }
    CycleLevel {
        words,
        missed: Some(vec![0, a]),
    }
}

/// One inductive step: from the level `m−1` cycle (and the level `m−2` one,
/// rebuilt on demand) to the level `m` cycle.
fn extend_cycle_level(a: u32, m: usize, sub: CycleLevel) -> Result<CycleLevel> {
    let half = (a / 2) as usize;

    // Step 1: pair up the letter copies 2i, 2i+1 into one cycle each.
    let mut pairs: Vec<Vec<Vec<Letter>>> = Vec::with_capacity(half);
    if let Some(alpha) = &sub.missed {
        // Copies carry near-cycles; thread both missing vertices into the
        // pair cycle through a neighbor of the missed word.
        let beta = least_neighbor(a, alpha)?;
        let gamma = least_cycle_neighbor(&sub.words, &beta)?;
        let cut = edge_index(&sub.words, &beta, &gamma)
            .ok_or_else(|| construction_bug("missed-vertex neighbor edge not in cycle"))?;
        let mut path = open_cycle_at(&sub.words, cut);
        if path.last() != Some(&beta) {
            path.reverse();
        }
        debug_assert_eq!(path.first(), Some(&gamma));
        for i in 0..half {
            let (k, k1) = (2 * i as u32, 2 * i as u32 + 1);
            let mut cycle = Vec::with_capacity(2 * path.len() + 2);
            cycle.extend(path.iter().map(|w| prefixed(k, w)));
            cycle.push(prefixed(k, alpha));
            cycle.push(prefixed(k1, alpha));
            cycle.extend(path.iter().rev().map(|w| prefixed(k1, w)));
            pairs.push(cycle);
        }
    } else {
        // Copies carry full cycles; exchange one edge per pair.
        let cut = least_cycle_edge(&sub.words);
        let path = open_cycle_at(&sub.words, cut);
        for i in 0..half {
            let (k, k1) = (2 * i as u32, 2 * i as u32 + 1);
            let mut cycle = Vec::with_capacity(2 * path.len());
            cycle.extend(path.iter().map(|w| prefixed(k, w)));
            cycle.extend(path.iter().rev().map(|w| prefixed(k1, w)));
            pairs.push(cycle);
        }
    }

    // Step 2: chain the pair cycles together across copies 2i+1 | 2i+2.
    let mut big = pairs.remove(0);
    for (i, pair) in pairs.into_iter().enumerate() {
        let left_copy = (2 * i + 1) as u32;
        big = merge_cycles_across(big, pair, left_copy, left_copy + 1)?;
    }

    // Step 3: absorb the 0a-prefixed copy.
    if m == 3 {
        // The 0a copy is a path graph on a vertices; zig-zag through it from
        // the 0(a−1)* row of copy 0, two vertices per detour.
        let positions = position_map(&big);
        let mut insertions: Vec<(usize, [Vec<Letter>; 2])> = Vec::new();
        for j in (0..a).step_by(2) {
            let u = vec![0, a - 1, j];
            let v = vec![0, a - 1, j + 1];
            let (iu, iv) = (
                *positions
                    .get(&u)
                    .ok_or_else(|| construction_bug("zig-zag anchor missing"))?,
                *positions
                    .get(&v)
                    .ok_or_else(|| construction_bug("zig-zag anchor missing"))?,
            );
            let len = big.len();
            if (iu + 1) % len == iv {
                insertions.push((iu + 1, [vec![0, a, j], vec![0, a, j + 1]]));
            } else if (iv + 1) % len == iu {
                insertions.push((iv + 1, [vec![0, a, j + 1], vec![0, a, j]]));
            } else {
                return Err(construction_bug("zig-zag anchors are not adjacent"));
            }
        }
        insertions.sort_by_key(|x| std::cmp::Reverse(x.0));
        for (at, detour) in insertions {
            let [first, second] = detour;
            big.insert(at, second);
            big.insert(at, first);
        }
        return Ok(CycleLevel {
            words: big,
            missed: None,
        });
    }

    // m >= 4: the 0a copy carries the level m−2 cycle. Find an edge of it
    // whose shadow in copy 0 (replace 0a by 0(a−1)) is an edge of the big
    // cycle, and exchange.
    let mut block_level = grid_cycle_level(a);
    for level in 3..=(m - 2) {
        block_level = extend_cycle_level(a, level, block_level)?;
    }
    let block_cycle: Vec<Vec<Letter>> = block_level
        .words
        .iter()
        .map(|w| {
            let mut word = Vec::with_capacity(w.len() + 2);
            word.extend_from_slice(&[0, a]);
            word.extend_from_slice(w);
            word
        })
        .collect();
    let shadow = |word: &[Letter]| {
        let mut s = word.to_vec();
        s[1] = a - 1;
        s
    };
    let positions = position_map(&big);
    let len = big.len();
    let mut anchor = None;
    for i in 0..block_cycle.len() {
        let x = &block_cycle[i];
        let y = &block_cycle[(i + 1) % block_cycle.len()];
        if let (Some(&px), Some(&py)) = (positions.get(&shadow(x)), positions.get(&shadow(y))) {
            if (px + 1) % len == py || (py + 1) % len == px {
                anchor = Some(i);
                break;
            }
        }
    }
    let anchor = anchor.ok_or_else(|| construction_bug("no spliceable edge into the 0a copy"))?;
    // Open the block cycle at the anchor edge and the big cycle at its
    // shadow, then stitch: …→shadow(x) → x →…→ y → shadow(y)→…
    let block_path = open_cycle_at(&block_cycle, anchor); // y … x
    let x = &block_cycle[anchor];
    let sx = shadow(x);
    let shadow_cut = {
        let px = positions[&sx];
        let py = positions[&shadow(&block_cycle[(anchor + 1) % block_cycle.len()])];
        if (px + 1) % len == py {
            px
        } else {
            py
        }
    };
    let mut big_path = open_cycle_at(&big, shadow_cut);
    if big_path.last() != Some(&sx) {
        big_path.reverse();
    }
    let mut merged = big_path;
    let mut tail = block_path;
    if tail.first() != Some(x) {
        tail.reverse();
    }
    merged.extend(tail);
    let missed = block_level.missed.map(|w| {
        let mut out = vec![0, a];
        out.extend_from_slice(&w);
        out
    });
    Ok(CycleLevel {
        words: merged,
        missed,
    })
}

/// Merges `left` and `right` (cycles over words) via corresponding edges in
/// the given copies: an edge `(p, q)` inside `left_copy` whose counterpart
/// `(p', q')` inside `right_copy` is an edge of `right`.
fn merge_cycles_across(
    left: Vec<Vec<Letter>>,
    right: Vec<Vec<Letter>>,
    left_copy: u32,
    right_copy: u32,
) -> Result<Vec<Vec<Letter>>> {
    let right_positions = position_map(&right);
    let rlen = right.len();
    let llen = left.len();
    for i in 0..llen {
        let p = &left[i];
        let q = &left[(i + 1) % llen];
        if p[0] != left_copy || q[0] != left_copy {
            continue;
        }
        let mut p_mirror = p.clone();
        p_mirror[0] = right_copy;
        let mut q_mirror = q.clone();
        q_mirror[0] = right_copy;
        let (Some(&pp), Some(&pq)) = (
            right_positions.get(&p_mirror),
            right_positions.get(&q_mirror),
        ) else {
            continue;
        };
        if (pp + 1) % rlen != pq && (pq + 1) % rlen != pp {
            continue;
        }
        // left opened to end at p, right opened to run p' … q'.
        let mut left_path = open_cycle_at(&left, i); // q … p
        debug_assert_eq!(left_path.last(), Some(p));
        let right_cut = if (pp + 1) % rlen == pq { pp } else { pq };
        let mut right_path = open_cycle_at(&right, right_cut);
        if right_path.first() != Some(&p_mirror) {
            right_path.reverse();
        }
        debug_assert_eq!(right_path.first(), Some(&p_mirror));
        debug_assert_eq!(right_path.last(), Some(&q_mirror));
        left_path.extend(right_path);
        return Ok(left_path);
    }
    Err(construction_bug(
        "no corresponding edge pair between neighboring copies",
    ))
}

fn construction_bug(what: &str) -> Error {
    Error::ConstructionFailure(format!("cycle construction: {what}"))
}

fn prefixed(letter: u32, word: &[Letter]) -> Vec<Letter> {
    let mut out = Vec::with_capacity(word.len() + 1);
    out.push(letter);
    out.extend_from_slice(word);
    out
}

fn position_map(cycle: &[Vec<Letter>]) -> HashMap<Vec<Letter>, usize> {
    cycle
        .iter()
        .enumerate()
        .map(|(i, w)| (w.clone(), i))
        .collect()
}

/// The cycle as a path that starts at `cycle[i+1]` and ends at `cycle[i]`
/// (the edge between them is the one cut).
fn open_cycle_at(cycle: &[Vec<Letter>], i: usize) -> Vec<Vec<Letter>> {
    let mut path = Vec::with_capacity(cycle.len());
    path.extend_from_slice(&cycle[i + 1..]);
    path.extend_from_slice(&cycle[..=i]);
    path
}

/// Index `i` such that `(cycle[i], cycle[i+1])` is the edge `{x, y}`.
fn edge_index(cycle: &[Vec<Letter>], x: &[Letter], y: &[Letter]) -> Option<usize> {
    let len = cycle.len();
    (0..len).find(|&i| {
        let j = (i + 1) % len;
        (cycle[i] == x && cycle[j] == y) || (cycle[i] == y && cycle[j] == x)
    })
}

/// Lexicographically least valid neighbor of `word` in `Π^a_{|word|}`.
fn least_neighbor(a: u32, word: &[Letter]) -> Result<Vec<Letter>> {
    let mut best: Option<Vec<Letter>> = None;
    let mut candidate = word.to_vec();
    for i in 0..word.len() {
        for delta in [-1i64, 1] {
            let raw = i64::from(word[i]) + delta;
            if raw < 0 || raw > i64::from(a) {
                continue;
            }
            candidate[i] = raw as u32;
            if strings::word_is_valid(a, &candidate) && best.as_ref().is_none_or(|b| candidate < *b)
            {
                best = Some(candidate.clone());
            }
            candidate[i] = word[i];
        }
    }
    best.ok_or_else(|| construction_bug("missed vertex has no neighbors"))
}

/// Lexicographically least of the two cycle-neighbors of `word`.
fn least_cycle_neighbor(cycle: &[Vec<Letter>], word: &[Letter]) -> Result<Vec<Letter>> {
    let len = cycle.len();
    let at = cycle
        .iter()
        .position(|w| w == word)
        .ok_or_else(|| construction_bug("word not on the cycle"))?;
    let before = &cycle[(at + len - 1) % len];
    let after = &cycle[(at + 1) % len];
    Ok(before.min(after).clone())
}

/// Cut position of the lexicographically least edge of the cycle.
fn least_cycle_edge(cycle: &[Vec<Letter>]) -> usize {
    let len = cycle.len();
    (0..len)
        .min_by_key(|&i| {
            let j = (i + 1) % len;
            let (x, y) = (&cycle[i], &cycle[j]);
            if x < y {
                (x.clone(), y.clone())
            } else {
                (y.clone(), x.clone())
            }
        })
        .expect("cycle is nonempty")
}

fn witness_from_words(
    g: &MetallicCube,
    kind: WitnessKind,
    words: &[Vec<Letter>],
    missed: Option<&[Letter]>,
) -> Result<PathWitness> {
    let rank_of = |letters: &[Letter]| -> Result<u32> {
        let word = MetallicString::new(g.a(), letters.to_vec())?;
        Ok(g.rank_of(&word)? as u32)
    };
    let sequence = words.iter().map(|w| rank_of(w)).collect::<Result<_>>()?;
    let missed = missed.map(rank_of).transpose()?;
    Ok(PathWitness {
        kind,
        sequence,
        missed,
        valid: false,
    })
}

fn finish_validated(g: &MetallicCube, mut witness: PathWitness, what: &str) -> Result<PathWitness> {
    let report = validate_witness(g, &witness);
    if !report.valid {
        return Err(Error::ConstructionFailure(format!(
            "{what} for a = {}, n = {} failed revalidation: {}",
            g.a(),
            g.n(),
            report
                .violation
                .map_or_else(|| "unknown".to_owned(), |v| v.to_string())
        )));
    }
    witness.valid = true;
    Ok(witness)
}

// ---------------------------------------------------------------------------
// Matchings
// ---------------------------------------------------------------------------

/// A matching harvested from the Hamiltonian path.
#[derive(Debug, Clone)]
pub struct Matching {
    /// Disjoint edges as rank pairs, in path order.
    pub edges: Vec<(u32, u32)>,
    /// The one vertex left unmatched when `s^a_n` is odd.
    pub exposed: Option<u32>,
}

impl Matching {
    pub fn is_perfect(&self) -> bool {
        self.exposed.is_none()
    }
}

/// Pairs consecutive path vertices (1st–2nd, 3rd–4th, …): a perfect matching
/// when the vertex count is even, otherwise one vertex stays exposed.
pub fn matching_from_path(g: &MetallicCube) -> Result<Matching> {
    let path = hamiltonian_path(g)?;
    let mut edges = Vec::with_capacity(path.sequence.len() / 2);
    for pair in path.sequence.chunks_exact(2) {
        edges.push((pair[0], pair[1]));
    }
    let exposed = if path.sequence.len() % 2 == 1 {
        path.sequence.last().copied()
    } else {
        None
    };
    Ok(Matching { edges, exposed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting;
    use num_bigint::BigInt;
    use num_traits::Zero;

    fn path_texts(a: u32, n: usize) -> Vec<String> {
        let g = MetallicCube::build(a, n).unwrap();
        let witness = hamiltonian_path(&g).unwrap();
        witness
            .vertices(&g)
            .iter()
            .map(MetallicString::to_text)
            .collect()
    }

    #[test]
    fn printed_paths_reproduce() {
        assert_eq!(
            path_texts(3, 2),
            ["03", "02", "01", "00", "10", "11", "12", "22", "21", "20"]
        );
        assert_eq!(path_texts(2, 2), ["02", "01", "00", "10", "11"]);
    }

    #[test]
    fn paths_are_valid_with_stated_endpoints() {
        for a in 1..=5u32 {
            for n in 1..=5usize {
                let g = MetallicCube::build(a, n).unwrap();
                let witness = hamiltonian_path(&g).unwrap();
                assert!(witness.valid);
                assert_eq!(witness.sequence.len(), g.vertex_count());
                let first = g.vertex_letters(witness.sequence[0] as usize);
                let last = g.vertex_letters(*witness.sequence.last().unwrap() as usize);
                assert_eq!(first, path_start_word(a, n), "start for a = {a}, n = {n}");
                assert_eq!(last, path_end_word(a, n), "end for a = {a}, n = {n}");
            }
        }
    }

    #[test]
    fn path_of_length_72() {
        let g = MetallicCube::build(4, 3).unwrap();
        let witness = hamiltonian_path(&g).unwrap();
        assert_eq!(witness.sequence.len(), 72);
        assert!(witness.valid);
    }

    #[test]
    fn printed_cycle_validates() {
        let g = MetallicCube::build(2, 3).unwrap();
        let printed = [
            "111", "110", "100", "101", "102", "002", "001", "000", "010", "020", "021", "011",
        ];
        let sequence: Vec<u32> = printed
            .iter()
            .map(|t| g.rank_of(&MetallicString::parse(2, t).unwrap()).unwrap() as u32)
            .collect();
        let witness = PathWitness {
            kind: WitnessKind::Cycle,
            sequence,
            missed: None,
            valid: false,
        };
        assert!(validate_witness(&g, &witness).valid);
    }

    #[test]
    fn constructed_cycles_and_near_cycles() {
        for (a, n) in [(2u32, 3usize), (2, 5), (4, 3)] {
            let g = MetallicCube::build(a, n).unwrap();
            let witness = hamiltonian_cycle(&g).unwrap();
            assert_eq!(witness.kind, WitnessKind::Cycle, "a = {a}, n = {n}");
            assert!(witness.valid);
            assert_eq!(witness.sequence.len(), g.vertex_count());
        }
        for (a, n) in [(2u32, 2usize), (2, 4), (4, 2), (4, 4)] {
            let g = MetallicCube::build(a, n).unwrap();
            let witness = hamiltonian_cycle(&g).unwrap();
            assert_eq!(witness.kind, WitnessKind::NearCycle, "a = {a}, n = {n}");
            assert!(witness.valid);
            assert_eq!(witness.sequence.len(), g.vertex_count() - 1);
            assert!(witness.missed.is_some());
        }
        // n = 2 misses exactly the pendant 0a.
        let g22 = MetallicCube::build(2, 2).unwrap();
        let near = hamiltonian_cycle(&g22).unwrap();
        assert_eq!(g22.vertex_text(near.missed.unwrap() as usize), "02");
    }

    #[test]
    fn odd_alphabet_cycles_are_rejected_distinctly() {
        let g = MetallicCube::build(3, 3).unwrap();
        assert!(matches!(
            hamiltonian_cycle(&g),
            Err(Error::UnsupportedParity { a: 3 })
        ));
        let small = MetallicCube::build(2, 1).unwrap();
        assert!(matches!(
            hamiltonian_cycle(&small),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn matching_examples() {
        let g23 = MetallicCube::build(2, 3).unwrap();
        let m = matching_from_path(&g23).unwrap();
        assert_eq!(m.edges.len(), 6);
        assert!(m.is_perfect());

        let g33 = MetallicCube::build(3, 3).unwrap();
        let m33 = matching_from_path(&g33).unwrap();
        assert_eq!(m33.edges.len(), 16);
        assert!(!m33.is_perfect());

        for a in 1..=6u32 {
            let g = MetallicCube::build(a, 1).unwrap();
            let m1 = matching_from_path(&g).unwrap();
            assert_eq!(m1.edges.len(), (a / 2) as usize);
        }
    }

    #[test]
    fn matchings_cover_and_are_disjoint() {
        for a in 1..=4u32 {
            for n in 1..=4usize {
                let g = MetallicCube::build(a, n).unwrap();
                let m = matching_from_path(&g).unwrap();
                let mut covered = vec![false; g.vertex_count()];
                for &(u, v) in &m.edges {
                    assert!(g.neighbors(u as usize).binary_search(&v).is_ok());
                    assert!(!covered[u as usize] && !covered[v as usize]);
                    covered[u as usize] = true;
                    covered[v as usize] = true;
                }
                let uncovered = covered.iter().filter(|&&c| !c).count();
                let expected = g.vertex_count() % 2;
                assert_eq!(uncovered, expected, "a = {a}, n = {n}");
                assert_eq!(m.is_perfect(), expected == 0);
            }
        }
    }

    #[test]
    fn vertex_count_parities() {
        // Even a: odd-step counts even, even-step counts odd. Odd a: counts
        // follow the Fibonacci parity pattern, even exactly at n ≡ 2 (mod 3).
        for a in [2u32, 4] {
            for n in 0..=8usize {
                let s = counting::vertex_count(a, n).unwrap();
                let even = (&s % BigInt::from(2)).is_zero();
                assert_eq!(even, n % 2 == 1, "a = {a}, n = {n}");
            }
        }
        for a in [1u32, 3, 5] {
            for n in 0..=8usize {
                let s = counting::vertex_count(a, n).unwrap();
                let even = (&s % BigInt::from(2)).is_zero();
                assert_eq!(even, n % 3 == 2, "a = {a}, n = {n}");
            }
        }
    }

    #[test]
    fn validator_pinpoints_violations() {
        let g = MetallicCube::build(2, 3).unwrap();
        let good = hamiltonian_path(&g).unwrap();
        assert!(validate_witness(&g, &good).valid);

        let mut swapped = good.clone();
        swapped.sequence.swap(3, 7);
        let report = validate_witness(&g, &swapped);
        assert!(!report.valid);
        assert!(matches!(
            report.violation,
            Some(WitnessViolation::NotAdjacent { .. })
        ));

        let mut short = good.clone();
        short.sequence.pop();
        let report = validate_witness(&g, &short);
        assert_eq!(
            report.violation,
            Some(WitnessViolation::CoverageWrong {
                covered: 11,
                expected: 12
            })
        );

        let mut dup = good;
        dup.sequence[1] = dup.sequence[0];
        assert!(matches!(
            validate_witness(&g, &dup).violation,
            Some(WitnessViolation::DuplicateVertex { position: 1 })
        ));
    }
}
