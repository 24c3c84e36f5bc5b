//! Exact enumeration: vertex counts, edge counts, the Fibonacci identity and
//! the degree distribution, each through independent routes that the test
//! suite plays against one another.
//!
//! Everything here is exact big-integer arithmetic; no floating point. The
//! brute-force tallies over explicitly built graphs are the ground truth the
//! closed forms are checked against.

use crate::graph::MetallicCube;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// Fibonacci numbers with `F_0 = 0, F_1 = F_2 = 1`: the single indexing
/// convention used across the crate (`|V(Γ_m)| = F_{m+2}`).
pub fn fibonacci(k: usize) -> BigInt {
    let (mut prev, mut cur) = (BigInt::zero(), BigInt::one());
    if k == 0 {
        return prev;
    }
    for _ in 1..k {
        let next = &prev + &cur;
        prev = cur;
        cur = next;
    }
    cur
}

/// Binomial coefficient with the zero convention: out-of-range or negative
/// arguments give 0, so unrestricted sums terminate naturally.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut result = BigInt::one();
    for i in 0..k {
        result = result * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    result
}

fn check_alphabet(a: u32) -> Result<()> {
    if a == 0 {
        Err(Error::ZeroAlphabet)
    } else {
        Ok(())
    }
}

/// `s^a_n` from the recurrence `s_n = a·s_{n−1} + s_{n−2}`, `s_0 = 1`,
/// `s_1 = a`.
pub fn vertex_count(a: u32, n: usize) -> Result<BigInt> {
    check_alphabet(a)?;
    let (mut prev, mut cur) = (BigInt::one(), BigInt::from(a));
    if n == 0 {
        return Ok(prev);
    }
    for _ in 1..n {
        let next = a * &cur + &prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// `s^a_n = Σ_k C(n−k, k) a^{n−2k}`: the closed form the grid decomposition
/// re-derives combinatorially.
pub fn vertex_count_closed(a: u32, n: usize) -> Result<BigInt> {
    check_alphabet(a)?;
    let n_i = n as i64;
    let mut total = BigInt::zero();
    for k in 0..=(n / 2) as i64 {
        total += binomial(n_i - k, k) * BigInt::from(a).pow((n_i - 2 * k) as u32);
    }
    Ok(total)
}

/// Coefficients `c_0..c_n` of the edge-count polynomial
/// `e^a_n = Σ_k c_k a^k`, where
/// `c_k = (−1)^{n+k} ⌈(n+k)/2⌉ C(⌊(n+k)/2⌋, k)`.
pub fn edge_count_poly(n: usize) -> Vec<BigInt> {
    let n_i = n as i64;
    (0..=n_i)
        .map(|k| {
            let sign = if (n_i + k) % 2 == 0 { 1 } else { -1 };
            let ceil_half = (n_i + k + 1) / 2;
            let floor_half = (n_i + k) / 2;
            sign * ceil_half * binomial(floor_half, k)
        })
        .collect()
}

/// `e^a_n` from the explicit alternating sum.
pub fn edge_count_formula(a: u32, n: usize) -> Result<BigInt> {
    check_alphabet(a)?;
    let mut total = BigInt::zero();
    for (k, coeff) in edge_count_poly(n).into_iter().enumerate() {
        total += coeff * BigInt::from(a).pow(k as u32);
    }
    debug_assert!(!total.is_negative());
    Ok(total)
}

/// `e^a_n` from the recurrence `e_n = a·e_{n−1} + e_{n−2} + s_n − s_{n−1}`
/// with `e_0 = 0`, `e_1 = a − 1`.
pub fn edge_count_recurrence(a: u32, n: usize) -> Result<BigInt> {
    check_alphabet(a)?;
    let (mut e_prev, mut e_cur) = (BigInt::zero(), BigInt::from(a) - 1);
    if n == 0 {
        return Ok(e_prev);
    }
    let (mut s_prev, mut s_cur) = (BigInt::one(), BigInt::from(a));
    for _ in 1..n {
        let s_next = a * &s_cur + &s_prev;
        let e_next = a * &e_cur + &e_prev + &s_next - &s_cur;
        s_prev = s_cur;
        s_cur = s_next;
        e_prev = e_cur;
        e_cur = e_next;
    }
    Ok(e_cur)
}

/// Both sides of the identity
/// `Σ_k (−1)^{n+k} ⌈(n+k)/2⌉ C(⌊(n+k)/2⌋, k) = Σ_k F_k F_{n−k}`
/// (the `a = 1` edge count against the Fibonacci convolution). Returned as a
/// pair so tests assert the equality rather than trusting it.
pub fn fibonacci_identity_check(n: usize) -> (BigInt, BigInt) {
    let lhs = edge_count_poly(n).into_iter().sum();
    let rhs = (0..=n).map(|k| fibonacci(k) * fibonacci(n - k)).sum();
    (lhs, rhs)
}

/// How a degree table was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegreeMethod {
    /// Tally of adjacency-list lengths on the built graph.
    Brute,
    /// Closed-form block counting with inclusion–exclusion.
    Closed,
    /// Coefficient extraction from the bivariate generating function.
    GeneratingFunction,
}

impl std::fmt::Display for DegreeMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            DegreeMethod::Brute => "brute",
            DegreeMethod::Closed => "closed",
            DegreeMethod::GeneratingFunction => "gf",
        })
    }
}

/// Degree distribution of one `Π^a_n`: degree `k` → number of vertices of
/// degree `k`, tagged with the route that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeTable {
    a: u32,
    n: usize,
    method: DegreeMethod,
    counts: BTreeMap<u32, BigInt>,
}

impl DegreeTable {
    fn new(a: u32, n: usize, method: DegreeMethod, counts: BTreeMap<u32, BigInt>) -> Self {
        let mut counts = counts;
        counts.retain(|_, v| !v.is_zero());
        Self {
            a,
            n,
            method,
            counts,
        }
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn method(&self) -> DegreeMethod {
        self.method
    }

    /// Nonzero entries, ascending by degree.
    pub fn counts(&self) -> &BTreeMap<u32, BigInt> {
        &self.counts
    }

    pub fn count_for(&self, degree: u32) -> BigInt {
        self.counts
            .get(&degree)
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    /// `Σ_k Δ_{n,k}`; must equal `s^a_n`.
    pub fn total_vertices(&self) -> BigInt {
        self.counts.values().sum()
    }

    /// `Σ_k k·Δ_{n,k}`; must equal `2·e^a_n`.
    pub fn total_degree(&self) -> BigInt {
        self.counts.iter().map(|(&k, v)| BigInt::from(k) * v).sum()
    }

    /// True when two tables agree entry-for-entry (methods may differ).
    pub fn same_counts(&self, other: &DegreeTable) -> bool {
        self.a == other.a && self.n == other.n && self.counts == other.counts
    }
}

/// Exact tally of adjacency-list lengths: the ground-truth route.
pub fn degree_distribution_brute(g: &MetallicCube) -> DegreeTable {
    let mut counts: BTreeMap<u32, BigInt> = BTreeMap::new();
    for rank in 0..g.vertex_count() {
        *counts.entry(g.degree(rank) as u32).or_default() += 1;
    }
    DegreeTable::new(g.a(), g.n(), DegreeMethod::Brute, counts)
}

/// Core of the closed-form degree count, valid for `a >= 2`.
///
/// In a vertex of `Π^a_n`, the deficit from the maximum degree `2n` is
/// `3·(number of 0a blocks) + (number of 0(a−1) blocks) + (number of loose
/// extremal letters)`, where a loose extremal letter is a `0` or `a−1` not
/// accounted to one of those blocks. `q` counts placements where the
/// `0(a−1)`-block count is only a lower bound (loose letters may collide into
/// additional blocks); `p` makes it exact by inclusion–exclusion over those
/// collisions. For `a = 2` the middle-letter factor `(a−2)^…` collapses to
/// `0^0` on exactly the placements where every position is extremal, which is
/// the reduced formula that case needs.
fn q_raw(a: u32, n: usize, za: usize, low: usize, loose: usize) -> BigInt {
    if 2 * za + 2 * low + loose > n {
        return BigInt::zero();
    }
    let (n_i, za_i, low_i, loose_i) = (n as i64, za as i64, low as i64, loose as i64);
    let placements = binomial(n_i - low_i - za_i, low_i)
        * binomial(n_i - 2 * low_i - za_i, za_i)
        * binomial(n_i - 2 * low_i - 2 * za_i, loose_i);
    let fill = BigInt::from(2).pow(loose as u32)
        * BigInt::from(a - 2).pow((n - 2 * za - 2 * low - loose) as u32);
    placements * fill
}

fn p_raw(a: u32, n: usize, za: usize, low: usize, loose: usize) -> BigInt {
    let mut total = BigInt::zero();
    for j in 0..=(loose / 2) {
        let term = binomial((low + j) as i64, j as i64) * q_raw(a, n, za, low + j, loose - 2 * j);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// `q(n, l, h, k) = C(n−h−l, h) C(n−2h−l, l) C(n−2h−2l, k) 2^k (a−2)^{n−2h−2l−k}`:
/// vertices with `l` 0a-blocks and at least `h` 0(a−1)-blocks, the remaining
/// `k` chosen positions holding a `0` or an `a−1`.
pub fn q_value(a: u32, n: usize, l: usize, h: usize, k: usize) -> Result<BigInt> {
    check_degree_domain(a, n, l, h, k)?;
    Ok(q_raw(a, n, l, h, k))
}

/// Inclusion–exclusion over accidental 0(a−1) blocks formed by the `k` loose
/// letters: the number of vertices with exactly `l` 0a-blocks, exactly `h`
/// 0(a−1)-blocks and `k` loose extremal letters.
pub fn p_value(a: u32, n: usize, l: usize, h: usize, k: usize) -> Result<BigInt> {
    check_degree_domain(a, n, l, h, k)?;
    Ok(p_raw(a, n, l, h, k))
}

fn check_degree_domain(a: u32, n: usize, l: usize, h: usize, k: usize) -> Result<()> {
    if a < 3 {
        return Err(Error::UnsupportedAlphabet {
            a,
            operation: "block-statistic counts q/p",
        });
    }
    if 2 * h + 2 * l + k > n {
        return Err(Error::InvalidParameter("q/p require 2h + 2l + k <= n"));
    }
    Ok(())
}

/// Closed-form degree distribution for `a >= 2`:
/// `Δ_{n,2n−m} = Σ_{3·za + low + loose = m} p(n, za, low, loose)`.
///
/// `a = 1` is not covered by this route (its alphabet has no middle letters
/// and no loose/low split); callers fall back to the brute tally.
pub fn degree_distribution_closed(a: u32, n: usize) -> Result<DegreeTable> {
    check_alphabet(a)?;
    if a < 2 {
        return Err(Error::UnsupportedAlphabet {
            a,
            operation: "closed-form degree distribution",
        });
    }
    let mut counts: BTreeMap<u32, BigInt> = BTreeMap::new();
    for za in 0..=(n / 2) {
        for low in 0..=((n - 2 * za) / 2) {
            for loose in 0..=(n - 2 * za - 2 * low) {
                let value = p_raw(a, n, za, low, loose);
                if value.is_zero() {
                    continue;
                }
                debug_assert!(!value.is_negative(), "p(n,{za},{low},{loose}) negative");
                let deficit = 3 * za + low + loose;
                let degree = (2 * n - deficit) as u32;
                *counts.entry(degree).or_default() += value;
            }
        }
    }
    Ok(DegreeTable::new(a, n, DegreeMethod::Closed, counts))
}

/// Truncated expansion of the bivariate series
/// `Δ(x, y) = 1 / (1 − (2y + (a−2)y²)x − (y − y² + y³)x²)`:
/// `rows[n][k] = Δ_{n,k}`, the number of length-`n` vertices of degree `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesTable {
    a: u32,
    rows: Vec<Vec<BigInt>>,
}

impl SeriesTable {
    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    /// Row `n` repackaged as a degree table.
    pub fn degree_table(&self, n: usize) -> DegreeTable {
        let mut counts = BTreeMap::new();
        for (k, value) in self.rows[n].iter().enumerate() {
            if !value.is_zero() {
                counts.insert(k as u32, value.clone());
            }
        }
        DegreeTable::new(self.a, n, DegreeMethod::GeneratingFunction, counts)
    }
}

fn poly_add_scaled(acc: &mut Vec<BigInt>, poly: &[BigInt], factor: &[(usize, BigInt)]) {
    for (shift, coeff) in factor {
        if acc.len() < poly.len() + shift {
            acc.resize(poly.len() + shift, BigInt::zero());
        }
        for (i, value) in poly.iter().enumerate() {
            let term = value * coeff;
            acc[i + shift] += term;
        }
    }
}

/// Expands the generating function to `x^{n_max}` via the row recurrence
/// `row_n = (2y + (a−2)y²)·row_{n−1} + (y − y² + y³)·row_{n−2}`, `row_0 = 1`.
pub fn degree_gf(a: u32, n_max: usize) -> Result<SeriesTable> {
    check_alphabet(a)?;
    if a < 2 {
        return Err(Error::UnsupportedAlphabet {
            a,
            operation: "degree generating function",
        });
    }
    let linear: Vec<(usize, BigInt)> = vec![(1, BigInt::from(2)), (2, BigInt::from(a - 2))];
    let quadratic: Vec<(usize, BigInt)> = vec![
        (1, BigInt::one()),
        (2, BigInt::from(-1)),
        (3, BigInt::one()),
    ];
    let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for n in 1..=n_max {
        let mut row = Vec::new();
        poly_add_scaled(&mut row, &rows[n - 1], &linear);
        if n >= 2 {
            poly_add_scaled(&mut row, &rows[n - 2], &quadratic);
        }
        while row.last().is_some_and(Zero::is_zero) {
            row.pop();
        }
        rows.push(row);
    }
    Ok(SeriesTable { a, rows })
}

// ---------------------------------------------------------------------------
// CSV emitters
// ---------------------------------------------------------------------------

/// Vertex-count table as CSV: rows `a = 1..=max_a`, columns `n = 1..=max_n`.
pub fn vertex_table_csv(max_a: u32, max_n: usize) -> Result<String> {
    let mut out = header_row(max_n);
    for a in 1..=max_a {
        let mut cells = vec![a.to_string()];
        for n in 1..=max_n {
            cells.push(vertex_count(a, n)?.to_string());
        }
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    Ok(out)
}

/// Edge-count table as CSV: rows `a = 1..=max_a`, columns `n = 1..=max_n`.
pub fn edge_table_csv(max_a: u32, max_n: usize) -> Result<String> {
    let mut out = header_row(max_n);
    for a in 1..=max_a {
        let mut cells = vec![a.to_string()];
        for n in 1..=max_n {
            cells.push(edge_count_formula(a, n)?.to_string());
        }
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    Ok(out)
}

/// Edge-count polynomials as CSV: row `n` holds the coefficients of
/// `a^0..a^{max_n}` (padded with zeros).
pub fn edge_poly_csv(max_n: usize) -> String {
    let mut cells: Vec<String> = vec!["n".to_owned()];
    cells.extend((0..=max_n).map(|k| format!("a^{k}")));
    let mut out = cells.join(",");
    out.push('\n');
    for n in 1..=max_n {
        let mut coeffs = edge_count_poly(n);
        coeffs.resize(max_n + 1, BigInt::zero());
        let mut cells = vec![n.to_string()];
        cells.extend(coeffs.iter().map(BigInt::to_string));
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// Degree distribution table for one `a` as CSV: rows `n = 1..=max_n`,
/// columns `k = 1..=2·max_n`. Uses the closed form for `a >= 2` and the
/// brute tally for `a = 1`.
pub fn degree_table_csv(a: u32, max_n: usize, vertex_cap: u64) -> Result<String> {
    let k_max = 2 * max_n;
    let mut cells: Vec<String> = vec!["n".to_owned()];
    cells.extend((1..=k_max).map(|k| k.to_string()));
    let mut out = cells.join(",");
    out.push('\n');
    for n in 1..=max_n {
        let table = degree_distribution_auto(a, n, vertex_cap)?;
        let mut cells = vec![n.to_string()];
        cells.extend((1..=k_max).map(|k| table.count_for(k as u32).to_string()));
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    Ok(out)
}

/// Closed form where supported, brute force for `a = 1`.
pub fn degree_distribution_auto(a: u32, n: usize, vertex_cap: u64) -> Result<DegreeTable> {
    match degree_distribution_closed(a, n) {
        Ok(table) => Ok(table),
        Err(Error::UnsupportedAlphabet { .. }) => {
            let g = MetallicCube::build_capped(a, n, vertex_cap)?;
            Ok(degree_distribution_brute(&g))
        }
        Err(e) => Err(e),
    }
}

fn header_row(max_n: usize) -> String {
    let mut cells: Vec<String> = vec!["a".to_owned()];
    cells.extend((1..=max_n).map(|n| n.to_string()));
    let mut out = cells.join(",");
    out.push('\n');
    out
}
