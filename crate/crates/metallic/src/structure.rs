//! Structural theory of the cubes: the canonical decomposition into smaller
//! cubes, the grid decomposition, the quotient onto a Fibonacci cube, the
//! block-substitution embedding into Fibonacci cubes, and medians.
//!
//! Every isomorphism claimed here comes with an explicit map (suffix map,
//! coordinate map, ρ, σ), so verification never needs generic graph
//! isomorphism search: it checks the explicit bijection edge-for-edge.

use crate::graph::MetallicCube;
use crate::strings::{Letter, MetallicString, PrimitiveBlock};
use crate::{Error, Result, DEFAULT_VERTEX_CAP};
use std::collections::{BTreeMap, HashMap};

// ---------------------------------------------------------------------------
// Binary strings and Fibonacci cubes
// ---------------------------------------------------------------------------

/// A binary string; the codomain of the ρ and σ maps and the vertex type of
/// Fibonacci cubes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryString {
    bits: Vec<u8>,
}

impl BinaryString {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::InvalidParameter("binary string bits must be 0 or 1"));
        }
        Ok(Self { bits })
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// No two consecutive ones: membership in the Fibonacci-string language.
    pub fn fibonacci_valid(&self) -> bool {
        self.bits.windows(2).all(|w| w != [1, 1])
    }

    /// Number of positions where the strings differ.
    pub fn hamming(&self, other: &BinaryString) -> Result<u64> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(self
            .bits
            .iter()
            .zip(&other.bits)
            .filter(|(x, y)| x != y)
            .count() as u64)
    }
}

impl std::fmt::Display for BinaryString {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.bits.is_empty() {
            return f.write_str("-");
        }
        for &b in &self.bits {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

/// The Fibonacci cube `Γ_m`: binary strings of length `m` without consecutive
/// ones, adjacent at Hamming distance 1. `|V(Γ_m)| = F_{m+2}`.
#[derive(Debug, Clone)]
pub struct FibonacciCube {
    m: usize,
    strings: Vec<Vec<u8>>,
    ranks: HashMap<Vec<u8>, u32>,
    adjacency: Vec<Vec<u32>>,
}

impl FibonacciCube {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn vertex_count(&self) -> usize {
        self.strings.len()
    }

    pub fn edge_count(&self) -> u64 {
        self.adjacency.iter().map(|n| n.len() as u64).sum::<u64>() / 2
    }

    pub fn vertex(&self, rank: usize) -> BinaryString {
        BinaryString {
            bits: self.strings[rank].clone(),
        }
    }

    pub fn rank_of(&self, s: &BinaryString) -> Option<u32> {
        self.ranks.get(s.bits()).copied()
    }

    pub fn neighbors(&self, rank: usize) -> &[u32] {
        &self.adjacency[rank]
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut degrees: Vec<usize> = self.adjacency.iter().map(Vec::len).collect();
        degrees.sort_unstable();
        degrees
    }

    pub fn are_adjacent(&self, u: u32, v: u32) -> bool {
        self.adjacency[u as usize].binary_search(&v).is_ok()
    }
}

/// Builds `Γ_m` with lexicographically ordered vertices.
pub fn build_fibonacci_cube(m: usize) -> Result<FibonacciCube> {
    build_fibonacci_cube_capped(m, DEFAULT_VERTEX_CAP)
}

pub fn build_fibonacci_cube_capped(m: usize, cap: u64) -> Result<FibonacciCube> {
    let mut strings = Vec::new();
    let mut word = vec![0u8; m];
    gen_fibonacci_strings(m, 0, &mut word, &mut strings, cap)?;
    let ranks: HashMap<Vec<u8>, u32> = strings
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), i as u32))
        .collect();
    let mut adjacency = vec![Vec::new(); strings.len()];
    for (i, s) in strings.iter().enumerate() {
        let mut flipped = s.clone();
        for pos in 0..m {
            flipped[pos] ^= 1;
            if let Some(&j) = ranks.get(&flipped) {
                adjacency[i].push(j);
            }
            flipped[pos] ^= 1;
        }
        adjacency[i].sort_unstable();
    }
    Ok(FibonacciCube {
        m,
        strings,
        ranks,
        adjacency,
    })
}

fn gen_fibonacci_strings(
    m: usize,
    depth: usize,
    word: &mut Vec<u8>,
    out: &mut Vec<Vec<u8>>,
    cap: u64,
) -> Result<()> {
    if out.len() as u64 >= cap {
        return Err(Error::CapExceeded {
            needed: cap + 1,
            cap,
        });
    }
    if depth == m {
        out.push(word.clone());
        return Ok(());
    }
    word[depth] = 0;
    gen_fibonacci_strings(m, depth + 1, word, out, cap)?;
    if depth == 0 || word[depth - 1] == 0 {
        word[depth] = 1;
        gen_fibonacci_strings(m, depth + 1, word, out, cap)?;
        word[depth] = 0;
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Canonical decomposition
// ---------------------------------------------------------------------------

/// The canonical decomposition of `Π^a_n`: `a` parts holding an embedded
/// `Π^a_{n−1}` each (vertices starting with letter `j`, not counting the `0a`
/// prefix) and one part holding a `Π^a_{n−2}` (vertices starting with `0a`).
#[derive(Debug, Clone)]
pub struct CanonicalDecomposition {
    /// Vertex ranks per leading letter `0..a`; the `0a`-prefixed vertices are
    /// carried separately in `block_part`.
    pub letter_parts: Vec<Vec<u32>>,
    pub block_part: Vec<u32>,
    /// Edges joining different parts; equals `s^a_n − s^a_{n−1}`.
    pub cross_edge_count: u64,
    pub sizes_ok: bool,
    pub cross_edges_ok: bool,
    /// `Some(true)` when the induced-subgraph isomorphisms onto the smaller
    /// cubes were checked via the suffix map; `None` when skipped.
    pub parts_isomorphic: Option<bool>,
}

impl CanonicalDecomposition {
    pub fn all_ok(&self) -> bool {
        self.sizes_ok && self.cross_edges_ok && self.parts_isomorphic.unwrap_or(true)
    }
}

/// Classifies every vertex by its leading primitive block and verifies the
/// decomposition. With `deep`, also verifies that each part induces a graph
/// isomorphic to the freshly built smaller cube under prefix stripping.
pub fn canonical_decomposition(g: &MetallicCube, deep: bool) -> Result<CanonicalDecomposition> {
    let (a, n) = (g.a(), g.n());
    if n < 2 {
        return Err(Error::InvalidParameter(
            "canonical decomposition requires n >= 2",
        ));
    }
    let a_usize = a as usize;
    let mut letter_parts: Vec<Vec<u32>> = vec![Vec::new(); a_usize];
    let mut block_part: Vec<u32> = Vec::new();
    // part id = leading letter, or a for the 0a part
    let mut part_of = vec![0u32; g.vertex_count()];
    for (rank, part) in part_of.iter_mut().enumerate() {
        let letters = g.vertex_letters(rank);
        if letters[0] == 0 && letters[1] == a {
            block_part.push(rank as u32);
            *part = a;
        } else {
            letter_parts[letters[0] as usize].push(rank as u32);
            *part = letters[0];
        }
    }

    let counts = g.count_table();
    let sizes_ok = letter_parts
        .iter()
        .all(|part| part.len() as u64 == counts[n - 1])
        && block_part.len() as u64 == counts[n - 2];

    let mut cross_edge_count = 0u64;
    for (u, v) in g.edges() {
        if part_of[u as usize] != part_of[v as usize] {
            cross_edge_count += 1;
        }
    }
    let cross_edges_ok = cross_edge_count == counts[n] - counts[n - 1];

    let parts_isomorphic = if deep {
        let sub1 = MetallicCube::build_capped(a, n - 1, counts[n])?;
        let sub2 = MetallicCube::build_capped(a, n - 2, counts[n])?;
        let mut ok = true;
        for part in &letter_parts {
            ok &= induced_part_matches(g, part, &part_of, &sub1, 1)?;
        }
        ok &= induced_part_matches(g, &block_part, &part_of, &sub2, 2)?;
        Some(ok)
    } else {
        None
    };

    Ok(CanonicalDecomposition {
        letter_parts,
        block_part,
        cross_edge_count,
        sizes_ok,
        cross_edges_ok,
        parts_isomorphic,
    })
}

/// Checks that stripping `skip` leading letters maps the part bijectively
/// onto `sub`'s vertex set and carries within-part edges exactly onto
/// `sub`'s edges.
fn induced_part_matches(
    g: &MetallicCube,
    part: &[u32],
    part_of: &[u32],
    sub: &MetallicCube,
    skip: usize,
) -> Result<bool> {
    if part.len() != sub.vertex_count() {
        return Ok(false);
    }
    let mut seen = vec![false; sub.vertex_count()];
    let mut sub_rank_of = HashMap::with_capacity(part.len());
    for &rank in part {
        let suffix = MetallicString::new(g.a(), g.vertex_letters(rank as usize)[skip..].to_vec())?;
        let sub_rank = sub.rank_of(&suffix)?;
        if seen[sub_rank] {
            return Ok(false);
        }
        seen[sub_rank] = true;
        sub_rank_of.insert(rank, sub_rank as u32);
    }
    // One direction edge-by-edge plus an edge count settles the iff.
    let mut within_edges = 0u64;
    for &rank in part {
        let my_part = part_of[rank as usize];
        for &nb in g.neighbors(rank as usize) {
            if part_of[nb as usize] != my_part {
                continue;
            }
            within_edges += 1;
            let (su, sv) = (sub_rank_of[&rank], sub_rank_of[&nb]);
            if !sub.neighbors(su as usize).contains(&sv) {
                return Ok(false);
            }
        }
    }
    Ok(within_edges / 2 == sub.edge_count())
}

// ---------------------------------------------------------------------------
// Grid decomposition
// ---------------------------------------------------------------------------

/// One class of the grid decomposition: all vertices whose `0a` blocks sit at
/// exactly `block_positions` (start indices). A class with `k` blocks induces
/// the grid `P_a^{n−2k}` on its `a^{n−2k}` vertices.
#[derive(Debug, Clone)]
pub struct GridClass {
    pub block_positions: Vec<usize>,
    pub members: Vec<u32>,
}

/// The grid decomposition: classes keyed by `0a`-block position sets.
/// The number of classes is `F_{n+1}` and class sizes re-derive
/// `s^a_n = Σ_k C(n−k, k) a^{n−2k}`.
#[derive(Debug, Clone)]
pub struct GridDecomposition {
    pub classes: Vec<GridClass>,
    pub sizes_ok: bool,
    pub class_count_ok: bool,
    /// `Some(true)` when every class was verified to induce its grid via the
    /// coordinate map; `None` when skipped.
    pub grids_verified: Option<bool>,
}

impl GridDecomposition {
    pub fn all_ok(&self) -> bool {
        self.sizes_ok && self.class_count_ok && self.grids_verified.unwrap_or(true)
    }
}

pub fn grid_decomposition(g: &MetallicCube, deep: bool) -> Result<GridDecomposition> {
    let (a, n) = (g.a(), g.n());
    let mut classes: BTreeMap<Vec<usize>, Vec<u32>> = BTreeMap::new();
    for rank in 0..g.vertex_count() {
        classes
            .entry(block_positions(a, g.vertex_letters(rank)))
            .or_default()
            .push(rank as u32);
    }

    let fib_expected = crate::counting::fibonacci(n + 1);
    let class_count_ok = num_bigint::BigInt::from(classes.len()) == fib_expected;

    let mut sizes_ok = true;
    for (positions, members) in &classes {
        let free = n - 2 * positions.len();
        let expected = (u64::from(a)).pow(free as u32);
        sizes_ok &= members.len() as u64 == expected;
    }

    let class_list: Vec<GridClass> = classes
        .into_iter()
        .map(|(block_positions, members)| GridClass {
            block_positions,
            members,
        })
        .collect();

    let grids_verified = if deep {
        let mut class_of: HashMap<u32, usize> = HashMap::with_capacity(g.vertex_count());
        for (idx, class) in class_list.iter().enumerate() {
            for &rank in &class.members {
                class_of.insert(rank, idx);
            }
        }
        let mut ok = true;
        for (idx, class) in class_list.iter().enumerate() {
            ok &= class_induces_grid(g, class, idx, &class_of);
        }
        Some(ok)
    } else {
        None
    };

    Ok(GridDecomposition {
        classes: class_list,
        sizes_ok,
        class_count_ok,
        grids_verified,
    })
}

/// Start indices of the `0a` blocks in `letters`.
fn block_positions(a: u32, letters: &[Letter]) -> Vec<usize> {
    let mut positions = Vec::new();
    let mut i = 0;
    while i < letters.len() {
        if letters[i] == 0 && i + 1 < letters.len() && letters[i + 1] == a {
            positions.push(i);
            i += 2;
        } else {
            i += 1;
        }
    }
    positions
}

/// Coordinates of a class member: its letters at the non-block positions.
fn grid_coordinates(letters: &[Letter], blocks: &[usize]) -> Vec<Letter> {
    let mut in_block = vec![false; letters.len()];
    for &p in blocks {
        in_block[p] = true;
        in_block[p + 1] = true;
    }
    letters
        .iter()
        .zip(&in_block)
        .filter(|(_, &b)| !b)
        .map(|(&l, _)| l)
        .collect()
}

fn class_induces_grid(
    g: &MetallicCube,
    class: &GridClass,
    class_idx: usize,
    class_of: &HashMap<u32, usize>,
) -> bool {
    let a = g.a();
    for &rank in &class.members {
        let coords = grid_coordinates(g.vertex_letters(rank as usize), &class.block_positions);
        // Expected within-class degree: one move per coordinate direction
        // not at a boundary of the path factor.
        let expected: usize = coords
            .iter()
            .map(|&c| usize::from(c > 0) + usize::from(c + 1 < a))
            .sum();
        let mut within = 0usize;
        for &nb in g.neighbors(rank as usize) {
            if class_of.get(&nb) != Some(&class_idx) {
                continue;
            }
            within += 1;
            let nb_coords = grid_coordinates(g.vertex_letters(nb as usize), &class.block_positions);
            let diff: u64 = coords
                .iter()
                .zip(&nb_coords)
                .map(|(&x, &y)| u64::from(x.abs_diff(y)))
                .sum();
            if diff != 1 {
                return false;
            }
        }
        if within != expected {
            return false;
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Quotient onto the Fibonacci cube
// ---------------------------------------------------------------------------

/// Collapses letters `0..a−1` to `0` and the top letter to `1`.
///
/// Two vertices share a ρ-image exactly when their `0a` blocks sit at the
/// same positions, so ρ-classes are the grid classes.
pub fn rho_project(word: &MetallicString) -> BinaryString {
    let a = word.alphabet();
    BinaryString {
        bits: word.letters().iter().map(|&l| u8::from(l == a)).collect(),
    }
}

/// The quotient of `Π^a_n` by ρ, together with an explicit isomorphism onto
/// the independently built Fibonacci cube `Γ_{n−1}` and its verdict.
#[derive(Debug, Clone)]
pub struct QuotientGraph {
    /// Grid classes in key order; quotient vertex `i` is class `i`.
    pub classes: Vec<GridClass>,
    /// Sorted neighbor lists over class indices.
    pub adjacency: Vec<Vec<u32>>,
    /// Class `i` maps to vertex `fibonacci_image[i]` of `Γ_{n−1}` (drop the
    /// leading bit of the ρ-image, which is always 0).
    pub fibonacci_image: Vec<u32>,
    pub isomorphism_ok: bool,
}

impl QuotientGraph {
    pub fn vertex_count(&self) -> usize {
        self.classes.len()
    }

    pub fn edge_count(&self) -> u64 {
        self.adjacency.iter().map(|n| n.len() as u64).sum::<u64>() / 2
    }
}

pub fn quotient_graph(g: &MetallicCube) -> Result<QuotientGraph> {
    let n = g.n();
    if n < 1 {
        return Err(Error::InvalidParameter("quotient requires n >= 1"));
    }
    let grid = grid_decomposition(g, false)?;
    let classes = grid.classes;
    let mut class_of = vec![0u32; g.vertex_count()];
    for (idx, class) in classes.iter().enumerate() {
        for &rank in &class.members {
            class_of[rank as usize] = idx as u32;
        }
    }

    let mut adjacency: Vec<Vec<u32>> = vec![Vec::new(); classes.len()];
    for (u, v) in g.edges() {
        let (cu, cv) = (class_of[u as usize], class_of[v as usize]);
        if cu != cv {
            adjacency[cu as usize].push(cv);
            adjacency[cv as usize].push(cu);
        }
    }
    for list in &mut adjacency {
        list.sort_unstable();
        list.dedup();
    }

    // Explicit isomorphism: class -> ρ-image with the leading 0 dropped.
    let gamma = build_fibonacci_cube(n - 1)?;
    let mut isomorphism_ok = classes.len() == gamma.vertex_count();
    let mut fibonacci_image = Vec::with_capacity(classes.len());
    let mut hit = vec![false; gamma.vertex_count()];
    for class in &classes {
        let mut bits = vec![0u8; n];
        for &p in &class.block_positions {
            bits[p + 1] = 1;
        }
        debug_assert_eq!(bits[0], 0, "a vertex cannot start with the top letter");
        let image = BinaryString {
            bits: bits[1..].to_vec(),
        };
        match gamma.rank_of(&image) {
            Some(rank) => {
                if hit[rank as usize] {
                    isomorphism_ok = false;
                }
                hit[rank as usize] = true;
                fibonacci_image.push(rank);
            }
            None => {
                isomorphism_ok = false;
                fibonacci_image.push(u32::MAX);
            }
        }
    }
    if isomorphism_ok {
        // Adjacency must carry over exactly; equal edge counts close the iff.
        let mut edges = 0u64;
        'outer: for (idx, nbs) in adjacency.iter().enumerate() {
            for &nb in nbs {
                edges += 1;
                if !gamma.are_adjacent(fibonacci_image[idx], fibonacci_image[nb as usize]) {
                    isomorphism_ok = false;
                    break 'outer;
                }
            }
        }
        isomorphism_ok &= edges / 2 == gamma.edge_count();
    }

    Ok(QuotientGraph {
        classes,
        adjacency,
        fibonacci_image,
        isomorphism_ok,
    })
}

// ---------------------------------------------------------------------------
// σ: embedding into Fibonacci cubes
// ---------------------------------------------------------------------------

/// σ on a single-letter block for `a >= 3`: `j` pairs of `00` followed by
/// `a−1−j` pairs of `01` (length `2a−2`).
fn sigma_single(a: u32, j: Letter, out: &mut Vec<u8>) {
    if a == 2 {
        // σ(0) = 001, σ(1) = 000
        out.extend_from_slice(if j == 0 { &[0, 0, 1] } else { &[0, 0, 0] });
        return;
    }
    for _ in 0..j {
        out.extend_from_slice(&[0, 0]);
    }
    for _ in j..(a - 1) {
        out.extend_from_slice(&[0, 1]);
    }
}

/// σ on the `0a` block: `σ(0)` followed by `001` padded with zeros to the
/// width of one letter block (total length `4a−4`; `001010` for `a = 2`).
fn sigma_zero_top(a: u32, out: &mut Vec<u8>) {
    if a == 2 {
        out.extend_from_slice(&[0, 0, 1, 0, 1, 0]);
        return;
    }
    sigma_single(a, 0, out);
    out.extend_from_slice(&[0, 0, 1]);
    out.resize(out.len() + (2 * a as usize - 2) - 3, 0);
}

/// Width in bits of one letter block under σ.
fn sigma_block_len(a: u32) -> usize {
    if a == 2 {
        3
    } else {
        2 * a as usize - 2
    }
}

/// Blockwise embedding of a word into the Fibonacci-string language: image
/// length `3n` for `a = 2` and `(2a−2)n` for `a >= 3`. Adjacency is preserved
/// in both directions, making `Π^a_n` an induced subgraph of a Fibonacci
/// cube. `a = 1` needs no embedding (those words are already binary).
pub fn sigma_embed(word: &MetallicString) -> Result<BinaryString> {
    let a = word.alphabet();
    if a < 2 {
        return Err(Error::UnsupportedAlphabet {
            a,
            operation: "sigma embedding (a = 1 words are already binary)",
        });
    }
    let mut bits = Vec::with_capacity(sigma_block_len(a) * word.len());
    for block in word.primitive_blocks().blocks() {
        match block {
            PrimitiveBlock::Single(j) => sigma_single(a, *j, &mut bits),
            PrimitiveBlock::ZeroTop => sigma_zero_top(a, &mut bits),
        }
    }
    Ok(BinaryString { bits })
}

/// Inverse of [`sigma_embed`]: `None` when `bits` is not a σ-image.
pub fn sigma_preimage(a: u32, bits: &BinaryString) -> Result<Option<MetallicString>> {
    if a < 2 {
        return Err(Error::UnsupportedAlphabet {
            a,
            operation: "sigma preimage",
        });
    }
    let width = sigma_block_len(a);
    let bits = bits.bits();
    if !bits.len().is_multiple_of(width) {
        return Ok(None);
    }
    let mut zero_top_tail = Vec::new();
    if a == 2 {
        zero_top_tail.extend_from_slice(&[0, 1, 0]);
    } else {
        zero_top_tail.extend_from_slice(&[0, 0, 1]);
        zero_top_tail.resize(width, 0);
    }

    let mut letters = Vec::new();
    let mut chunk = 0;
    let total_chunks = bits.len() / width;
    while chunk < total_chunks {
        let slice = &bits[chunk * width..(chunk + 1) * width];
        let letter = match decode_sigma_letter(a, slice) {
            Some(letter) => letter,
            None => return Ok(None),
        };
        // σ(0) is also the first half of σ(0a); the tail pattern is not a
        // letter image, so one chunk of lookahead disambiguates.
        if letter == 0
            && chunk + 1 < total_chunks
            && bits[(chunk + 1) * width..(chunk + 2) * width] == zero_top_tail[..]
        {
            letters.push(0);
            letters.push(a);
            chunk += 2;
        } else {
            letters.push(letter);
            chunk += 1;
        }
    }
    match MetallicString::new(a, letters) {
        Ok(word) => Ok(Some(word)),
        Err(_) => Ok(None),
    }
}

fn decode_sigma_letter(a: u32, slice: &[u8]) -> Option<Letter> {
    if a == 2 {
        return match slice {
            [0, 0, 1] => Some(0),
            [0, 0, 0] => Some(1),
            _ => None,
        };
    }
    // Count leading 00 pairs, then require 01 pairs to the end.
    let mut j = 0u32;
    let mut pairs = slice.chunks_exact(2);
    for pair in pairs.by_ref() {
        match pair {
            [0, 0] => j += 1,
            [0, 1] => {
                break;
            }
            _ => return None,
        }
    }
    if j == a - 1 {
        return Some(a - 1);
    }
    // We consumed one 01 pair in the loop; the rest must all be 01.
    for pair in pairs {
        if pair != [0, 1] {
            return None;
        }
    }
    Some(j)
}

// ---------------------------------------------------------------------------
// Medians
// ---------------------------------------------------------------------------

/// The unique vertex lying on shortest paths between each pair of `u, v, w`,
/// computed by bitwise majority in σ-image space (majority on the letters for
/// `a = 1`, whose words are binary).
///
/// A failed preimage or an invalid result would falsify the median theorem
/// and surfaces as [`Error::Inconsistency`]; it must never happen.
pub fn median(
    g: &MetallicCube,
    u: &MetallicString,
    v: &MetallicString,
    w: &MetallicString,
) -> Result<MetallicString> {
    g.rank_of(u)?;
    g.rank_of(v)?;
    g.rank_of(w)?;
    let a = g.a();
    let result = if a == 1 {
        let letters: Vec<Letter> = majority(u.letters(), v.letters(), w.letters());
        MetallicString::new(a, letters)
            .map_err(|e| Error::Inconsistency(format!("letter majority left the language: {e}")))?
    } else {
        let (su, sv, sw) = (sigma_embed(u)?, sigma_embed(v)?, sigma_embed(w)?);
        let bits = majority(su.bits(), sv.bits(), sw.bits());
        let image = BinaryString { bits };
        sigma_preimage(a, &image)?.ok_or_else(|| {
            Error::Inconsistency(format!(
                "majority of sigma images of {u}, {v}, {w} is not a sigma image"
            ))
        })?
    };
    g.rank_of(&result)
        .map_err(|_| Error::Inconsistency(format!("median {result} is not a vertex")))?;
    Ok(result)
}

fn majority<T: Copy + Ord>(x: &[T], y: &[T], z: &[T]) -> Vec<T> {
    x.iter()
        .zip(y)
        .zip(z)
        .map(|((&a, &b), &c)| {
            if a == b || a == c {
                a
            } else {
                debug_assert!(b == c, "majority undefined");
                b
            }
        })
        .collect()
}

/// BFS-based median oracle: scans all vertices for the betweenness
/// conditions. Errors if the median is not unique (which would falsify the
/// median-graph theorem).
pub fn median_brute(
    g: &MetallicCube,
    u: &MetallicString,
    v: &MetallicString,
    w: &MetallicString,
) -> Result<MetallicString> {
    let (ru, rv, rw) = (g.rank_of(u)?, g.rank_of(v)?, g.rank_of(w)?);
    let du = g.bfs_distances(ru);
    let dv = g.bfs_distances(rv);
    let dw = g.bfs_distances(rw);
    let (duv, dvw, duw) = (du[rv], dv[rw], du[rw]);
    let mut found = Vec::new();
    for x in 0..g.vertex_count() {
        if du[x] + dv[x] == duv && dv[x] + dw[x] == dvw && du[x] + dw[x] == duw {
            found.push(x);
        }
    }
    match found.as_slice() {
        [unique] => Ok(g.vertex(*unique)),
        other => Err(Error::Inconsistency(format!(
            "{} medians found for ({u}, {v}, {w})",
            other.len()
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting;
    use crate::strings::enumerate;
    use num_bigint::BigInt;

    fn word(a: u32, text: &str) -> MetallicString {
        MetallicString::parse(a, text).unwrap()
    }

    #[test]
    fn canonical_part_sizes() {
        let g = MetallicCube::build(3, 3).unwrap();
        let dec = canonical_decomposition(&g, true).unwrap();
        let sizes: Vec<usize> = dec.letter_parts.iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![10, 10, 10]);
        assert_eq!(dec.block_part.len(), 3);
        assert!(dec.all_ok());

        let g22 = MetallicCube::build(2, 2).unwrap();
        let dec22 = canonical_decomposition(&g22, true).unwrap();
        let sizes: Vec<usize> = dec22.letter_parts.iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![2, 2]);
        let block: Vec<String> = dec22
            .block_part
            .iter()
            .map(|&r| g22.vertex_text(r as usize))
            .collect();
        assert_eq!(block, vec!["02"]);
        assert!(dec22.all_ok());
    }

    #[test]
    fn canonical_cross_edges_match_count_difference() {
        for a in 1..=4u32 {
            for n in 2..=6usize {
                let g = MetallicCube::build(a, n).unwrap();
                let dec = canonical_decomposition(&g, n <= 5).unwrap();
                assert!(dec.sizes_ok, "sizes a = {a}, n = {n}");
                assert!(dec.cross_edges_ok, "cross edges a = {a}, n = {n}");
                assert!(dec.all_ok(), "a = {a}, n = {n}");
            }
        }
        let small = MetallicCube::build(3, 1).unwrap();
        assert!(matches!(
            canonical_decomposition(&small, false),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn grid_class_sizes() {
        let g = MetallicCube::build(2, 4).unwrap();
        let dec = grid_decomposition(&g, true).unwrap();
        let mut sizes: Vec<usize> = dec.classes.iter().map(|c| c.members.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 4, 4, 4, 16]);
        assert!(dec.all_ok());

        for a in 2..=3u32 {
            let g3 = MetallicCube::build(a, 3).unwrap();
            let dec3 = grid_decomposition(&g3, true).unwrap();
            assert_eq!(dec3.classes.len(), 3, "F_4 classes for a = {a}");
        }

        // n even: the fully blocked class has a single vertex.
        let g24 = MetallicCube::build(3, 4).unwrap();
        let dec24 = grid_decomposition(&g24, false).unwrap();
        let full = dec24
            .classes
            .iter()
            .find(|c| c.block_positions.len() == 2)
            .unwrap();
        assert_eq!(full.members.len(), 1);
    }

    #[test]
    fn grid_decomposition_counts_fibonacci_classes() {
        for a in 1..=4u32 {
            for n in 0..=7usize {
                let g = MetallicCube::build(a, n).unwrap();
                let dec = grid_decomposition(&g, n <= 5).unwrap();
                assert!(dec.class_count_ok, "a = {a}, n = {n}");
                assert!(dec.sizes_ok, "a = {a}, n = {n}");
                assert!(dec.all_ok(), "a = {a}, n = {n}");
                let total: usize = dec.classes.iter().map(|c| c.members.len()).sum();
                assert_eq!(BigInt::from(total), counting::vertex_count(a, n).unwrap());
            }
        }
    }

    #[test]
    fn rho_examples() {
        assert_eq!(rho_project(&word(3, "0030")).to_string(), "0010");
        assert_eq!(rho_project(&word(3, "22")).to_string(), "00");
    }

    #[test]
    fn fibonacci_cube_small() {
        let gamma2 = build_fibonacci_cube(2).unwrap();
        assert_eq!(gamma2.vertex_count(), 3);
        assert_eq!(gamma2.edge_count(), 2);
        let labels: Vec<String> = (0..3).map(|i| gamma2.vertex(i).to_string()).collect();
        assert_eq!(labels, vec!["00", "01", "10"]);

        assert_eq!(build_fibonacci_cube(4).unwrap().vertex_count(), 8);
    }

    #[test]
    fn fibonacci_cube_matches_alphabet_one_cube() {
        // Explicit bijection: prepend 0 to a Fibonacci string of length m to
        // get a vertex of Π^1_{m+1}.
        for m in 0..=6usize {
            let gamma = build_fibonacci_cube(m).unwrap();
            let pi = MetallicCube::build(1, m + 1).unwrap();
            assert_eq!(gamma.vertex_count(), pi.vertex_count());
            let mut edge_hits = 0u64;
            for i in 0..gamma.vertex_count() {
                let mut letters = vec![0u32];
                letters.extend(gamma.vertex(i).bits().iter().map(|&b| u32::from(b)));
                let lifted = MetallicString::new(1, letters).unwrap();
                let rank = pi.rank_of(&lifted).unwrap();
                for &j in gamma.neighbors(i) {
                    let mut nb_letters = vec![0u32];
                    nb_letters.extend(
                        gamma
                            .vertex(j as usize)
                            .bits()
                            .iter()
                            .map(|&b| u32::from(b)),
                    );
                    let nb = MetallicString::new(1, nb_letters).unwrap();
                    assert!(pi
                        .neighbors(rank)
                        .contains(&(pi.rank_of(&nb).unwrap() as u32)));
                    edge_hits += 1;
                }
            }
            assert_eq!(edge_hits / 2, pi.edge_count(), "m = {m}");
        }
    }

    #[test]
    fn quotient_is_fibonacci_cube() {
        let g = MetallicCube::build(3, 3).unwrap();
        let q = quotient_graph(&g).unwrap();
        assert_eq!(q.vertex_count(), 3);
        assert_eq!(q.edge_count(), 2);
        assert!(q.isomorphism_ok);

        for a in 1..=4u32 {
            for n in 1..=6usize {
                let g = MetallicCube::build(a, n).unwrap();
                let q = quotient_graph(&g).unwrap();
                assert!(q.isomorphism_ok, "a = {a}, n = {n}");
                assert_eq!(
                    BigInt::from(q.vertex_count()),
                    counting::fibonacci(n + 1),
                    "a = {a}, n = {n}"
                );
            }
        }
        // and |V(quotient)| = F_{n+1} through n = 7 for small alphabets
        for a in 1..=4u32 {
            let g = MetallicCube::build(a, 7).unwrap();
            let q = quotient_graph(&g).unwrap();
            assert_eq!(BigInt::from(q.vertex_count()), counting::fibonacci(8));
            assert!(q.isomorphism_ok);
        }
    }

    #[test]
    fn sigma_block_images() {
        assert_eq!(sigma_embed(&word(2, "1")).unwrap().to_string(), "000");
        assert_eq!(sigma_embed(&word(2, "02")).unwrap().to_string(), "001010");
        assert_eq!(sigma_embed(&word(3, "0")).unwrap().to_string(), "0101");
        assert_eq!(sigma_embed(&word(3, "2")).unwrap().to_string(), "0000");
        assert_eq!(sigma_embed(&word(3, "03")).unwrap().to_string(), "01010010");
        assert!(matches!(
            sigma_embed(&word(1, "0")),
            Err(Error::UnsupportedAlphabet { a: 1, .. })
        ));
    }

    #[test]
    fn sigma_images_are_fibonacci_valid_and_injective() {
        for a in 2..=4u32 {
            for n in 0..=5usize {
                let words = enumerate(a, n).unwrap();
                let mut images = std::collections::HashSet::new();
                for w in &words {
                    let image = sigma_embed(w).unwrap();
                    assert!(image.fibonacci_valid(), "sigma({w}) has consecutive ones");
                    let expected_len = sigma_block_len(a) * n;
                    assert_eq!(image.len(), expected_len, "length of sigma({w})");
                    assert_eq!(sigma_preimage(a, &image).unwrap().as_ref(), Some(w));
                    images.insert(image);
                }
                assert_eq!(images.len(), words.len(), "a = {a}, n = {n}");
            }
        }
    }

    #[test]
    fn sigma_preserves_adjacency_exactly() {
        for a in 2..=4u32 {
            for n in 1..=4usize {
                let g = MetallicCube::build(a, n).unwrap();
                let words = enumerate(a, n).unwrap();
                let images: Vec<BinaryString> =
                    words.iter().map(|w| sigma_embed(w).unwrap()).collect();
                for i in 0..words.len() {
                    for j in i + 1..words.len() {
                        let adjacent = g.are_adjacent(&words[i], &words[j]).unwrap();
                        let hamming = images[i].hamming(&images[j]).unwrap();
                        assert_eq!(
                            adjacent,
                            hamming == 1,
                            "a = {a}, n = {n}: {} vs {}",
                            words[i],
                            words[j]
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn sigma_preimage_rejects_non_images() {
        // wrong length
        let stray = BinaryString::new(vec![0, 1]).unwrap();
        assert_eq!(sigma_preimage(3, &stray).unwrap(), None);
        // not a block image at all
        let bad = BinaryString::new(vec![1, 0, 0, 0]).unwrap();
        assert_eq!(sigma_preimage(3, &bad).unwrap(), None);
    }

    #[test]
    fn median_printed_example() {
        let g = MetallicCube::build(3, 2).unwrap();
        let m = median(&g, &word(3, "10"), &word(3, "22"), &word(3, "03")).unwrap();
        assert_eq!(m.to_text(), "12");
        assert_eq!(
            median_brute(&g, &word(3, "10"), &word(3, "22"), &word(3, "03"))
                .unwrap()
                .to_text(),
            "12"
        );
    }

    #[test]
    fn median_degenerate_triples() {
        let g = MetallicCube::build(3, 2).unwrap();
        let u = word(3, "03");
        let v = word(3, "21");
        assert_eq!(median(&g, &u, &u, &v).unwrap(), u);
        assert_eq!(median(&g, &u, &v, &u).unwrap(), u);
    }

    #[test]
    fn every_triple_has_unique_median_in_small_cubes() {
        for (a, n) in [(2u32, 3usize), (3, 2), (1, 4)] {
            let g = MetallicCube::build(a, n).unwrap();
            let words = enumerate(a, n).unwrap();
            for i in 0..words.len() {
                for j in i..words.len() {
                    for k in j..words.len() {
                        let brute = median_brute(&g, &words[i], &words[j], &words[k]).unwrap();
                        let fast = median(&g, &words[i], &words[j], &words[k]).unwrap();
                        assert_eq!(fast, brute, "triple ({i}, {j}, {k}) in a = {a}, n = {n}");
                    }
                }
            }
        }
    }

    #[test]
    fn majority_closure_sampled_on_a_larger_cube() {
        use rand::{Rng, SeedableRng};
        let words = enumerate(4, 4).unwrap();
        let images: Vec<BinaryString> = words.iter().map(|w| sigma_embed(w).unwrap()).collect();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10_000 {
            let x = &images[rng.gen_range(0..images.len())];
            let y = &images[rng.gen_range(0..images.len())];
            let z = &images[rng.gen_range(0..images.len())];
            let maj = BinaryString {
                bits: majority(x.bits(), y.bits(), z.bits()),
            };
            assert!(sigma_preimage(4, &maj).unwrap().is_some());
        }
    }

    #[test]
    fn majority_of_images_stays_in_image_set() {
        for a in 2..=3u32 {
            for n in 1..=3usize {
                let words = enumerate(a, n).unwrap();
                let images: Vec<BinaryString> =
                    words.iter().map(|w| sigma_embed(w).unwrap()).collect();
                for x in &images {
                    for y in &images {
                        for z in &images {
                            let maj = BinaryString {
                                bits: majority(x.bits(), y.bits(), z.bits()),
                            };
                            assert!(
                                sigma_preimage(a, &maj).unwrap().is_some(),
                                "majority left the image set (a = {a}, n = {n})"
                            );
                        }
                    }
                }
            }
        }
    }
}
