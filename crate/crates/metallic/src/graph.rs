//! Explicit construction of the metallic cube `Π^a_n` as an immutable graph.
//!
//! Vertices are the words of `strings::enumerate(a, n)` in lexicographic
//! order; the rank in that order is the vertex id used everywhere. Edges join
//! words whose modified Hamming distance is exactly one, i.e. words differing
//! in one position by one.
//!
//! Edges are synthesized per vertex (each position, try `±1`, check the block
//! rule) rather than by an all-pairs scan: the rank of a neighbor differs
//! from the rank of the vertex by a closed-form amount, so each candidate
//! costs `O(1)`. The all-pairs scan survives as a test-only oracle.

use crate::strings::{self, Letter, MetallicString};
use crate::{Error, Result, DEFAULT_VERTEX_CAP};
use std::collections::VecDeque;

/// Modified Hamming distance: the sum of absolute letter differences.
///
/// Words must have equal length and alphabet. Adjacency in the cube is
/// exactly `hbar(u, v) == 1`.
pub fn hbar(u: &MetallicString, v: &MetallicString) -> Result<u64> {
    if u.alphabet() != v.alphabet() {
        return Err(Error::AlphabetMismatch {
            left: u.alphabet(),
            right: v.alphabet(),
        });
    }
    if u.len() != v.len() {
        return Err(Error::LengthMismatch {
            left: u.len(),
            right: v.len(),
        });
    }
    Ok(u.letters()
        .iter()
        .zip(v.letters())
        .map(|(&x, &y)| u64::from(x.abs_diff(y)))
        .sum())
}

/// The graph `Π^a_n`: lexicographic vertex list plus CSR adjacency.
#[derive(Debug, Clone)]
pub struct MetallicCube {
    a: u32,
    n: usize,
    counts: Vec<u64>,
    letters: Vec<Letter>,
    neighbors: Vec<u32>,
    offsets: Vec<usize>,
}

impl MetallicCube {
    /// Builds `Π^a_n` under the default vertex cap.
    pub fn build(a: u32, n: usize) -> Result<Self> {
        Self::build_capped(a, n, DEFAULT_VERTEX_CAP)
    }

    /// Builds `Π^a_n`, failing fast if `s^a_n` exceeds `cap`.
    pub fn build_capped(a: u32, n: usize, cap: u64) -> Result<Self> {
        let counts = strings::count_table(a, n)?;
        let total = counts[n];
        if total > cap {
            return Err(Error::CapExceeded { needed: total, cap });
        }
        let vertex_count = usize::try_from(total).expect("cap fits usize");

        let mut letters = Vec::with_capacity(vertex_count * n);
        strings::for_each_word(a, n, cap, |word| letters.extend_from_slice(word))?;

        // Ranks of the two endpoints of an "increment position i" edge differ
        // by a closed-form delta, so adjacency needs no lookups at all. Pass 1
        // counts degrees, pass 2 fills the CSR.
        let mut degrees = vec![0u32; vertex_count];
        for_each_increment_edge(a, n, &counts, &letters, |u, v| {
            degrees[u as usize] += 1;
            degrees[v as usize] += 1;
        });
        let mut offsets = Vec::with_capacity(vertex_count + 1);
        let mut acc = 0usize;
        offsets.push(0);
        for &d in &degrees {
            acc += d as usize;
            offsets.push(acc);
        }
        let mut cursor: Vec<usize> = offsets[..vertex_count].to_vec();
        let mut neighbors = vec![0u32; acc];
        for_each_increment_edge(a, n, &counts, &letters, |u, v| {
            neighbors[cursor[u as usize]] = v;
            cursor[u as usize] += 1;
            neighbors[cursor[v as usize]] = u;
            cursor[v as usize] += 1;
        });
        for i in 0..vertex_count {
            neighbors[offsets[i]..offsets[i + 1]].sort_unstable();
        }

        Ok(Self {
            a,
            n,
            counts,
            letters,
            neighbors,
            offsets,
        })
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> u64 {
        (self.neighbors.len() / 2) as u64
    }

    /// Letters of vertex `rank` (zero-copy).
    pub fn vertex_letters(&self, rank: usize) -> &[Letter] {
        &self.letters[rank * self.n..(rank + 1) * self.n]
    }

    /// Vertex `rank` as an owned word.
    pub fn vertex(&self, rank: usize) -> MetallicString {
        MetallicString::new(self.a, self.vertex_letters(rank).to_vec())
            .expect("stored vertices are valid")
    }

    /// Textual form of vertex `rank`.
    pub fn vertex_text(&self, rank: usize) -> String {
        self.vertex(rank).to_text()
    }

    /// Rank of `word` in this graph's vertex order.
    pub fn rank_of(&self, word: &MetallicString) -> Result<usize> {
        if word.alphabet() != self.a {
            return Err(Error::AlphabetMismatch {
                left: word.alphabet(),
                right: self.a,
            });
        }
        if word.len() != self.n {
            return Err(Error::VertexNotInGraph(word.to_text()));
        }
        let rank = strings::rank(word)?;
        Ok(usize::try_from(rank).expect("rank below cap"))
    }

    /// Sorted neighbor ranks of vertex `rank`.
    pub fn neighbors(&self, rank: usize) -> &[u32] {
        &self.neighbors[self.offsets[rank]..self.offsets[rank + 1]]
    }

    pub fn degree(&self, rank: usize) -> usize {
        self.offsets[rank + 1] - self.offsets[rank]
    }

    /// All edges as rank pairs `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.vertex_count()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| (u as u32) < v)
                .map(move |v| (u as u32, v))
        })
    }

    /// Whether two vertices of this graph are adjacent.
    pub fn are_adjacent(&self, u: &MetallicString, v: &MetallicString) -> Result<bool> {
        self.rank_of(u)?;
        self.rank_of(v)?;
        Ok(hbar(u, v)? == 1)
    }

    /// Exact shortest-path distances from `source` to every vertex.
    ///
    /// Metallic cubes are connected, and this asserts it: a missing vertex
    /// would falsify the canonical decomposition.
    pub fn bfs_distances(&self, source: usize) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.vertex_count()];
        let mut queue = VecDeque::new();
        self.bfs_into(source, &mut dist, &mut queue);
        assert!(
            dist.iter().all(|&d| d != u32::MAX),
            "Π^{}_{} is not connected from vertex {source}",
            self.a,
            self.n
        );
        dist
    }

    /// BFS reusing caller-provided scratch buffers; returns the eccentricity
    /// of `source`. `dist` must have length `vertex_count()`.
    pub(crate) fn bfs_into(
        &self,
        source: usize,
        dist: &mut [u32],
        queue: &mut VecDeque<u32>,
    ) -> u32 {
        dist.fill(u32::MAX);
        queue.clear();
        dist[source] = 0;
        queue.push_back(source as u32);
        let mut max_seen = 0;
        while let Some(u) = queue.pop_front() {
            let du = dist[u as usize];
            max_seen = du;
            for &v in self.neighbors(u as usize) {
                if dist[v as usize] == u32::MAX {
                    dist[v as usize] = du + 1;
                    queue.push_back(v);
                }
            }
        }
        max_seen
    }

    /// Serializes the graph in the given format. Output is deterministic:
    /// vertices in rank order, edges with lower rank first, sorted.
    pub fn export(&self, format: ExportFormat) -> String {
        match format {
            ExportFormat::Dot => self.export_dot(),
            ExportFormat::Json => self.export_json(),
            ExportFormat::EdgeList => self.export_edgelist(),
        }
    }

    fn export_dot(&self) -> String {
        let mut out = String::from("graph {\n");
        for rank in 0..self.vertex_count() {
            if self.degree(rank) == 0 {
                out.push_str(&format!("  \"{}\";\n", self.vertex_text(rank)));
            }
        }
        for (u, v) in self.edges() {
            out.push_str(&format!(
                "  \"{}\" -- \"{}\";\n",
                self.vertex_text(u as usize),
                self.vertex_text(v as usize)
            ));
        }
        out.push_str("}\n");
        out
    }

    fn export_edgelist(&self) -> String {
        let mut out = String::new();
        for (u, v) in self.edges() {
            out.push_str(&format!(
                "{} {}\n",
                self.vertex_text(u as usize),
                self.vertex_text(v as usize)
            ));
        }
        out
    }

    fn export_json(&self) -> String {
        // Vertex texts are digits, dots and dashes, so no JSON escaping is
        // ever needed.
        let mut out = format!("{{\"a\":{},\"n\":{},\"vertices\":[", self.a, self.n);
        for rank in 0..self.vertex_count() {
            if rank > 0 {
                out.push(',');
            }
            out.push('"');
            out.push_str(&self.vertex_text(rank));
            out.push('"');
        }
        out.push_str("],\"edges\":[");
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(&format!("[{u},{v}]"));
        }
        out.push_str("]}\n");
        out
    }

    /// Word-count table `s_0..s_n` this graph was built from.
    pub(crate) fn count_table(&self) -> &[u64] {
        &self.counts
    }
}

/// Calls `emit(u, v)` for every edge, where `v` is obtained from `u` by
/// incrementing one letter (hence `u < v` in rank order).
fn for_each_increment_edge<F>(a: u32, n: usize, counts: &[u64], letters: &[Letter], mut emit: F)
where
    F: FnMut(u32, u32),
{
    let vertex_count = counts[n] as usize;
    let below = |m: usize| if m == 0 { 0 } else { counts[m - 1] };
    for u in 0..vertex_count {
        let word = &letters[u * n..(u + 1) * n];
        for pos in 0..n {
            let c = word[pos];
            if c == a {
                continue;
            }
            // Raising to the top letter requires a preceding 0; raising a 0
            // breaks a following 0a block.
            if c + 1 == a && (pos == 0 || word[pos - 1] != 0) {
                continue;
            }
            if c == 0 && pos + 1 < n && word[pos + 1] == a {
                continue;
            }
            let m = n - pos - 1;
            let delta = if c == 0 {
                counts[m] + below(m)
            } else {
                counts[m]
            };
            let v = u as u64 + delta;
            debug_assert!(v < vertex_count as u64);
            emit(u as u32, v as u32);
        }
    }
}

/// Export formats understood by [`MetallicCube::export`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Json,
    EdgeList,
}

impl std::str::FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dot" => Ok(ExportFormat::Dot),
            "json" => Ok(ExportFormat::Json),
            "edgelist" => Ok(ExportFormat::EdgeList),
            other => Err(Error::UnknownFormat(other.to_owned())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strings::enumerate;

    fn word(a: u32, text: &str) -> MetallicString {
        MetallicString::parse(a, text).unwrap()
    }

    /// Test-only oracle: adjacency by scanning all pairs with `hbar`.
    fn all_pairs_edges(a: u32, n: usize) -> Vec<(u32, u32)> {
        let words = enumerate(a, n).unwrap();
        assert!(words.len() <= 2_000, "oracle reserved for small graphs");
        let mut edges = Vec::new();
        for i in 0..words.len() {
            for j in i + 1..words.len() {
                if hbar(&words[i], &words[j]).unwrap() == 1 {
                    edges.push((i as u32, j as u32));
                }
            }
        }
        edges
    }

    #[test]
    fn hbar_examples() {
        assert_eq!(hbar(&word(3, "10"), &word(3, "22")).unwrap(), 3);
        let w = word(3, "030");
        assert_eq!(hbar(&w, &w).unwrap(), 0);
        assert_eq!(hbar(&word(3, "03"), &word(3, "20")).unwrap(), 5);
        assert!(matches!(
            hbar(&word(3, "0"), &word(3, "00")),
            Err(Error::LengthMismatch { left: 1, right: 2 })
        ));
    }

    #[test]
    fn small_path_graph() {
        let g = MetallicCube::build(3, 1).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn synthesis_matches_all_pairs_oracle() {
        for (a, n) in [
            (1, 4),
            (1, 6),
            (2, 2),
            (2, 3),
            (2, 4),
            (3, 2),
            (3, 3),
            (4, 2),
            (5, 2),
        ] {
            let g = MetallicCube::build(a, n).unwrap();
            assert_eq!(
                g.edges().collect::<Vec<_>>(),
                all_pairs_edges(a, n),
                "a = {a}, n = {n}"
            );
        }
    }

    #[test]
    fn known_sizes() {
        let g = MetallicCube::build(2, 3).unwrap();
        assert_eq!(g.vertex_count(), 12);
        assert_eq!(g.edge_count(), 18);

        let fib = MetallicCube::build(1, 4).unwrap();
        assert_eq!(fib.vertex_count(), 5);
        assert_eq!(fib.edge_count(), 5);

        let single = MetallicCube::build(4, 0).unwrap();
        assert_eq!(single.vertex_count(), 1);
        assert_eq!(single.edge_count(), 0);
    }

    #[test]
    fn adjacency_examples() {
        let g = MetallicCube::build(3, 2).unwrap();
        assert!(g.are_adjacent(&word(3, "02"), &word(3, "03")).unwrap());
        assert!(!g.are_adjacent(&word(3, "10"), &word(3, "22")).unwrap());
        assert!(matches!(
            g.are_adjacent(&word(3, "222"), &word(3, "02")),
            Err(Error::VertexNotInGraph(_))
        ));

        let g3 = MetallicCube::build(3, 3).unwrap();
        assert!(g3.are_adjacent(&word(3, "020"), &word(3, "030")).unwrap());
    }

    #[test]
    fn bfs_distance_examples() {
        let g = MetallicCube::build(3, 2).unwrap();
        let from_10 = g.bfs_distances(g.rank_of(&word(3, "10")).unwrap());
        assert_eq!(from_10[g.rank_of(&word(3, "03")).unwrap()], 4);
        assert_eq!(from_10[g.rank_of(&word(3, "10")).unwrap()], 0);
        assert_eq!(from_10[g.rank_of(&word(3, "12")).unwrap()], 2);
    }

    #[test]
    fn connectivity_across_parameter_grid() {
        for a in 1..=5u32 {
            for n in 0..=6usize {
                let g = MetallicCube::build(a, n).unwrap();
                let dist = g.bfs_distances(0);
                assert_eq!(dist.len(), g.vertex_count());
            }
        }
    }

    #[test]
    fn letter_sum_parity_is_proper_coloring() {
        for a in 1..=4u32 {
            for n in 0..=5usize {
                let g = MetallicCube::build(a, n).unwrap();
                for (u, v) in g.edges() {
                    let su: u64 = g
                        .vertex_letters(u as usize)
                        .iter()
                        .map(|&l| u64::from(l))
                        .sum();
                    let sv: u64 = g
                        .vertex_letters(v as usize)
                        .iter()
                        .map(|&l| u64::from(l))
                        .sum();
                    assert_ne!(su % 2, sv % 2, "edge ({u}, {v}) in a = {a}, n = {n}");
                }
            }
        }
    }

    #[test]
    fn export_edgelist_path() {
        let g = MetallicCube::build(3, 1).unwrap();
        assert_eq!(g.export(ExportFormat::EdgeList), "0 1\n1 2\n");
    }

    #[test]
    fn export_json_small_grid() {
        let g = MetallicCube::build(2, 2).unwrap();
        let json = g.export(ExportFormat::Json);
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(value["a"], 2);
        assert_eq!(value["vertices"].as_array().unwrap().len(), 5);
        assert_eq!(value["edges"].as_array().unwrap().len(), 5);
    }

    /// Minimal reader for the subset of dot syntax the exporter emits.
    fn parse_dot(text: &str) -> (Vec<String>, Vec<(String, String)>) {
        let mut nodes = Vec::new();
        let mut edges = Vec::new();
        for line in text.lines() {
            let line = line.trim().trim_end_matches(';');
            if line == "graph {" || line == "}" || line.is_empty() {
                continue;
            }
            let labels: Vec<String> = line
                .split("--")
                .map(|part| part.trim().trim_matches('"').to_owned())
                .collect();
            match labels.as_slice() {
                [node] => nodes.push(node.clone()),
                [u, v] => edges.push((u.clone(), v.clone())),
                other => panic!("unexpected dot line: {other:?}"),
            }
        }
        (nodes, edges)
    }

    #[test]
    fn export_dot_round_trips() {
        let g = MetallicCube::build(3, 2).unwrap();
        let (nodes, edges) = parse_dot(&g.export(ExportFormat::Dot));
        assert!(nodes.is_empty());
        let expected: Vec<(String, String)> = g
            .edges()
            .map(|(u, v)| (g.vertex_text(u as usize), g.vertex_text(v as usize)))
            .collect();
        assert_eq!(edges, expected);

        let lonely = MetallicCube::build(3, 0).unwrap();
        let (nodes, edges) = parse_dot(&lonely.export(ExportFormat::Dot));
        assert_eq!(nodes, vec!["-".to_owned()]);
        assert!(edges.is_empty());
    }

    #[test]
    fn format_parsing() {
        assert_eq!("dot".parse::<ExportFormat>().unwrap(), ExportFormat::Dot);
        assert!(matches!(
            "gml".parse::<ExportFormat>(),
            Err(Error::UnknownFormat(_))
        ));
    }

    #[test]
    fn cap_exceeded_is_distinct() {
        assert!(matches!(
            MetallicCube::build_capped(3, 5, 100),
            Err(Error::CapExceeded {
                needed: 360,
                cap: 100
            })
        ));
    }
}
