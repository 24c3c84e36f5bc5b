//! Metric invariants: eccentricities by parallel BFS, with radius, diameter,
//! center and periphery each paired against its closed form.
//!
//! The closed forms (with `ε = ⌊a/2⌋`):
//! - radius `⌊a/2⌋⌈n/2⌉ + ⌈a/2⌉⌊n/2⌋`, attained at `ε̂ = εε…ε`;
//! - diameter `an − 1`, attained exactly at the two periphery words built
//!   from alternating `0a` blocks;
//! - center: `{ε̂}` for `a, n` odd; the one-letter perturbations of `ε̂`
//!   (`ε+1` at even positions, `ε−1` at odd positions) for `a` odd, `n`
//!   even; the words `(ε−1)^i ε^{n−i}` for `a` even.
//!
//! Each closed form is stated only after the BFS oracle confirmed it on
//! every graph in reach: the graph distance equals the modified Hamming
//! distance, and an `ε` directly before an `ε−1` lets the `ε−1` climb to
//! the top letter behind a freshly written 0, pushing the eccentricity
//! past the radius. Hence the even-`a` center keeps every `ε−1` strictly
//! before every `ε`.

use crate::graph::MetallicCube;
use crate::strings::{Letter, MetallicString};
use crate::{Error, Result, DEFAULT_ALLPAIRS_CAP};
use num_bigint::BigInt;
use rayon::prelude::*;
use std::collections::VecDeque;

/// `r(Π^a_n) = ⌊a/2⌋⌈n/2⌉ + ⌈a/2⌉⌊n/2⌋` for `a, n >= 1`.
pub fn radius_formula(a: u32, n: usize) -> Result<u64> {
    check_params(a, n)?;
    let (a, n) = (u64::from(a), n as u64);
    Ok((a / 2) * n.div_ceil(2) + a.div_ceil(2) * (n / 2))
}

/// `d(Π^a_n) = an − 1` for `a, n >= 1`.
pub fn diameter_formula(a: u32, n: usize) -> Result<u64> {
    check_params(a, n)?;
    Ok(u64::from(a) * n as u64 - 1)
}

/// The two diametral words: `(0a)^{n/2}` and `(a−1)(0a)^{(n−2)/2}0` for even
/// `n`; `(0a)^{(n−1)/2}0` and `(a−1)(0a)^{(n−1)/2}` for odd `n`. At
/// `(a, n) = (1, 1)` the two coincide and the set degenerates to one vertex.
pub fn periphery_formula(a: u32, n: usize) -> Result<Vec<MetallicString>> {
    check_params(a, n)?;
    let mut first = Vec::with_capacity(n);
    while first.len() + 2 <= n {
        first.push(0);
        first.push(a);
    }
    if first.len() < n {
        first.push(0);
    }
    let mut second = Vec::with_capacity(n);
    second.push(a - 1);
    while second.len() + 2 <= n {
        second.push(0);
        second.push(a);
    }
    if second.len() < n {
        second.push(0);
    }
    let first = MetallicString::new(a, first)?;
    let second = MetallicString::new(a, second)?;
    let mut vertices = vec![first];
    if second != vertices[0] {
        vertices.push(second);
    }
    Ok(vertices)
}

/// Membership in the closed-form center of `Π^a_n`.
pub fn center_membership(a: u32, n: usize, v: &MetallicString) -> Result<bool> {
    check_params(a, n)?;
    if v.alphabet() != a {
        return Err(Error::AlphabetMismatch {
            left: v.alphabet(),
            right: a,
        });
    }
    if v.len() != n {
        return Err(Error::LengthMismatch {
            left: v.len(),
            right: n,
        });
    }
    let eps = a / 2;
    let letters = v.letters();
    if a % 2 == 1 {
        if n % 2 == 1 {
            // a, n odd: the single vertex ε̂.
            return Ok(letters.iter().all(|&l| l == eps));
        }
        // a odd, n even: at most one perturbed position; ε+1 only on even
        // positions, ε−1 only on odd positions (1-indexed).
        let diffs: Vec<usize> = (0..n).filter(|&i| letters[i] != eps).collect();
        return Ok(match diffs.as_slice() {
            [] => true,
            [i] => {
                let position = i + 1;
                if letters[*i] == eps + 1 {
                    position % 2 == 0
                } else {
                    eps >= 1 && letters[*i] == eps - 1 && position % 2 == 1
                }
            }
            _ => false,
        });
    }
    // a even: letters in {ε, ε−1}, with every ε−1 before every ε. An ε−1
    // right after an ε is fatal: send that ε to 0 (still worth a/2) and the
    // ε−1 reaches the top letter for a/2 + 1, beating the radius.
    let mut seen_eps = false;
    for &l in letters {
        if l == eps {
            seen_eps = true;
        } else if l + 1 == eps {
            if seen_eps {
                return Ok(false);
            }
        } else {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `|Z(Π^a_n)|`: 1 for `a, n` odd; otherwise `n + 1`, except that for the
/// degenerate `a = 1` alphabet (no `ε − 1` letter exists) only the
/// `1 + n/2` upward perturbations remain.
pub fn center_size_formula(a: u32, n: usize) -> Result<BigInt> {
    check_params(a, n)?;
    if a == 1 {
        return Ok(if n % 2 == 1 {
            BigInt::from(1)
        } else {
            BigInt::from(n / 2 + 1)
        });
    }
    if a % 2 == 1 && n % 2 == 1 {
        Ok(BigInt::from(1))
    } else {
        Ok(BigInt::from(n + 1))
    }
}

/// A word at maximal distance from `v`, so `d(v, result) = e(v)`.
///
/// Since the graph distance equals the modified Hamming distance, an
/// eccentricity witness only ever uses target letters `0`, `a−1` and — right
/// behind a written `0` — the top letter `a`. A two-state scan (does the
/// previous target letter equal 0?) maximizes the total displacement
/// exactly; ties break toward the letter-rewrite rule (drop letters above
/// `ε` to 0, raise letters below `ε` to `a−1` or to `a` behind a 0, send
/// `ε` itself to 0 or to `a` behind a 0), which for odd `a` is already
/// optimal on its own.
pub fn farthest_vertex(v: &MetallicString) -> Result<MetallicString> {
    let a = v.alphabet();
    let n = v.len();
    let letters = v.letters();
    // best[i][s]: maximal displacement of the suffix from position i when
    // the previous target letter is 0 (s = 1) or not (s = 0).
    let mut best = vec![[0u64; 2]; n + 1];
    for i in (0..n).rev() {
        for s in 0..2 {
            best[i][s] = candidate_targets(a, s == 1)
                .into_iter()
                .map(|t| gain(letters[i], t) + best[i + 1][usize::from(t == 0)])
                .max()
                .expect("at least two candidate letters");
        }
    }
    let mut out: Vec<Letter> = Vec::with_capacity(n);
    let mut after_zero = false;
    for (i, &l) in letters.iter().enumerate() {
        let target = candidate_targets(a, after_zero)
            .into_iter()
            .find(|&t| {
                gain(l, t) + best[i + 1][usize::from(t == 0)] == best[i][usize::from(after_zero)]
            })
            .expect("reconstruction follows the table");
        after_zero = target == 0;
        out.push(target);
    }
    MetallicString::new(a, out)
}

/// Candidate target letters in tie-break preference order.
fn candidate_targets(a: u32, after_zero: bool) -> Vec<Letter> {
    if after_zero {
        vec![a, 0, a - 1]
    } else {
        vec![0, a - 1]
    }
}

fn gain(from: Letter, to: Letter) -> u64 {
    u64::from(from.abs_diff(to))
}

/// Verdicts comparing the BFS-measured invariants to the closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MetricVerdicts {
    pub radius_ok: bool,
    pub diameter_ok: bool,
    pub center_ok: bool,
    pub center_size_ok: bool,
    pub periphery_ok: bool,
}

impl MetricVerdicts {
    pub fn all_ok(&self) -> bool {
        self.radius_ok
            && self.diameter_ok
            && self.center_ok
            && self.center_size_ok
            && self.periphery_ok
    }
}

/// Exact metric survey of one cube: the eccentricity vector with everything
/// derived from it, side by side with the closed-form predictions.
#[derive(Debug, Clone)]
pub struct MetricReport {
    pub a: u32,
    pub n: usize,
    pub eccentricities: Vec<u32>,
    pub radius: u32,
    pub diameter: u32,
    /// Ranks with eccentricity equal to the radius.
    pub center: Vec<u32>,
    /// Ranks with eccentricity equal to the diameter.
    pub periphery: Vec<u32>,
    pub formula_radius: u64,
    pub formula_diameter: u64,
    pub center_predicate_set: Vec<u32>,
    pub periphery_formula_set: Vec<u32>,
    pub formula_center_size: BigInt,
    pub verdicts: MetricVerdicts,
}

/// Runs [`metric_report_capped`] under the default all-pairs cap.
pub fn metric_report(g: &MetallicCube) -> Result<MetricReport> {
    metric_report_capped(g, DEFAULT_ALLPAIRS_CAP)
}

/// Computes every eccentricity (one BFS per vertex, in parallel) and compares
/// radius, diameter, center and periphery to their closed forms.
pub fn metric_report_capped(g: &MetallicCube, allpairs_cap: u64) -> Result<MetricReport> {
    let count = g.vertex_count();
    if count as u64 > allpairs_cap {
        return Err(Error::CapExceeded {
            needed: count as u64,
            cap: allpairs_cap,
        });
    }
    let (a, n) = (g.a(), g.n());
    if n == 0 {
        // Single vertex: every invariant is trivial and the n >= 1 formulas
        // do not apply.
        return Ok(MetricReport {
            a,
            n,
            eccentricities: vec![0],
            radius: 0,
            diameter: 0,
            center: vec![0],
            periphery: vec![0],
            formula_radius: 0,
            formula_diameter: 0,
            center_predicate_set: vec![0],
            periphery_formula_set: vec![0],
            formula_center_size: BigInt::from(1),
            verdicts: MetricVerdicts {
                radius_ok: true,
                diameter_ok: true,
                center_ok: true,
                center_size_ok: true,
                periphery_ok: true,
            },
        });
    }

    // One sequential BFS first: it asserts connectivity.
    let _ = g.bfs_distances(0);
    let eccentricities: Vec<u32> = (0..count)
        .into_par_iter()
        .map_init(
            || (vec![0u32; count], VecDeque::new()),
            |(dist, queue), source| g.bfs_into(source, dist, queue),
        )
        .collect();

    let radius = *eccentricities.iter().min().expect("nonempty");
    let diameter = *eccentricities.iter().max().expect("nonempty");
    let center: Vec<u32> = collect_ranks(&eccentricities, radius);
    let periphery: Vec<u32> = collect_ranks(&eccentricities, diameter);

    let formula_radius = radius_formula(a, n)?;
    let formula_diameter = diameter_formula(a, n)?;
    let mut center_predicate_set = Vec::new();
    for rank in 0..count {
        if center_membership(a, n, &g.vertex(rank))? {
            center_predicate_set.push(rank as u32);
        }
    }
    let mut periphery_formula_set = Vec::new();
    for word in periphery_formula(a, n)? {
        periphery_formula_set.push(g.rank_of(&word)? as u32);
    }
    periphery_formula_set.sort_unstable();
    let formula_center_size = center_size_formula(a, n)?;

    let verdicts = MetricVerdicts {
        radius_ok: u64::from(radius) == formula_radius,
        diameter_ok: u64::from(diameter) == formula_diameter,
        center_ok: center == center_predicate_set,
        center_size_ok: BigInt::from(center.len()) == formula_center_size,
        periphery_ok: periphery == periphery_formula_set,
    };

    Ok(MetricReport {
        a,
        n,
        eccentricities,
        radius,
        diameter,
        center,
        periphery,
        formula_radius,
        formula_diameter,
        center_predicate_set,
        periphery_formula_set,
        formula_center_size,
        verdicts,
    })
}

fn collect_ranks(eccentricities: &[u32], value: u32) -> Vec<u32> {
    eccentricities
        .iter()
        .enumerate()
        .filter(|(_, &e)| e == value)
        .map(|(rank, _)| rank as u32)
        .collect()
}

fn check_params(a: u32, n: usize) -> Result<()> {
    if a == 0 {
        return Err(Error::ZeroAlphabet);
    }
    if n == 0 {
        return Err(Error::InvalidParameter("metric formulas require n >= 1"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(a: u32, text: &str) -> MetallicString {
        MetallicString::parse(a, text).unwrap()
    }

    fn texts(g: &MetallicCube, ranks: &[u32]) -> Vec<String> {
        ranks.iter().map(|&r| g.vertex_text(r as usize)).collect()
    }

    #[test]
    fn radius_formula_examples() {
        assert_eq!(radius_formula(3, 3).unwrap(), 4);
        for a in 1..=7u32 {
            assert_eq!(radius_formula(a, 1).unwrap(), u64::from(a / 2));
        }
        assert_eq!(radius_formula(5, 6).unwrap(), 15);
    }

    #[test]
    fn diameter_and_periphery_examples() {
        assert_eq!(diameter_formula(3, 3).unwrap(), 8);
        let p33: Vec<String> = periphery_formula(3, 3)
            .unwrap()
            .iter()
            .map(MetallicString::to_text)
            .collect();
        assert_eq!(p33, vec!["030", "203"]);

        assert_eq!(diameter_formula(2, 2).unwrap(), 3);
        let p22: Vec<String> = periphery_formula(2, 2)
            .unwrap()
            .iter()
            .map(MetallicString::to_text)
            .collect();
        assert_eq!(p22, vec!["02", "10"]);

        for a in 2..=5u32 {
            let p: Vec<String> = periphery_formula(a, 1)
                .unwrap()
                .iter()
                .map(MetallicString::to_text)
                .collect();
            assert_eq!(p, vec!["0".to_owned(), (a - 1).to_string()]);
        }
        // Degenerate single-vertex graph: the two formula words coincide.
        assert_eq!(periphery_formula(1, 1).unwrap().len(), 1);
    }

    #[test]
    fn printed_center_sets() {
        let g56 = MetallicCube::build(5, 6).unwrap();
        let mut predicate = Vec::new();
        for rank in 0..g56.vertex_count() {
            if center_membership(5, 6, &g56.vertex(rank)).unwrap() {
                predicate.push(g56.vertex_text(rank));
            }
        }
        assert_eq!(
            predicate,
            ["122222", "221222", "222212", "222222", "222223", "222322", "232222"]
        );

        assert!(center_membership(5, 7, &word(5, "2222222")).unwrap());
        assert!(!center_membership(5, 7, &word(5, "2222212")).unwrap());

        // For a = 4, n = 4 the BFS oracle pins the center to the five
        // staircase words; 1221, 2211 and 2212 all see 0043-style words at
        // modified Hamming distance 9 > 8.
        let g44 = MetallicCube::build(4, 4).unwrap();
        let report = metric_report(&g44).unwrap();
        let center: Vec<String> = report
            .center
            .iter()
            .map(|&r| g44.vertex_text(r as usize))
            .collect();
        assert_eq!(center, ["1111", "1112", "1122", "1222", "2222"]);
        for text in ["1221", "2211", "2212"] {
            let rank = g44.rank_of(&word(4, text)).unwrap();
            assert!(
                report.eccentricities[rank] > report.radius,
                "{text} is not central"
            );
            assert!(!center_membership(4, 4, &word(4, text)).unwrap());
        }
        for text in &center {
            assert!(center_membership(4, 4, &word(4, text)).unwrap());
        }
    }

    #[test]
    fn center_size_examples() {
        assert_eq!(center_size_formula(5, 6).unwrap(), BigInt::from(7));
        assert_eq!(center_size_formula(4, 4).unwrap(), BigInt::from(5));
        assert_eq!(center_size_formula(2, 3).unwrap(), BigInt::from(4));
        assert_eq!(center_size_formula(3, 5).unwrap(), BigInt::from(1));
        // Degenerate odd alphabet: no ε−1 letters exist for a = 1.
        assert_eq!(center_size_formula(1, 4).unwrap(), BigInt::from(3));
    }

    #[test]
    fn report_on_small_cubes() {
        let g = MetallicCube::build(3, 3).unwrap();
        let report = metric_report(&g).unwrap();
        assert_eq!(report.radius, 4);
        assert_eq!(report.diameter, 8);
        assert!(report.verdicts.all_ok());
        assert_eq!(texts(&g, &report.periphery), vec!["030", "203"]);

        let single = MetallicCube::build(4, 0).unwrap();
        let report0 = metric_report(&single).unwrap();
        assert_eq!((report0.radius, report0.diameter), (0, 0));
        assert!(report0.verdicts.all_ok());

        let g23 = MetallicCube::build(2, 3).unwrap();
        let report23 = metric_report(&g23).unwrap();
        assert!(report23.verdicts.all_ok());
    }

    #[test]
    fn formulas_hold_on_a_parameter_sweep() {
        for a in 1..=4u32 {
            for n in 1..=5usize {
                let g = MetallicCube::build(a, n).unwrap();
                let report = metric_report(&g).unwrap();
                assert!(
                    report.verdicts.all_ok(),
                    "verdicts failed for a = {a}, n = {n}: {:?}",
                    report.verdicts
                );
                assert!(report.radius <= report.diameter);
                assert!(report.diameter <= 2 * report.radius);
                // The radius witness ε̂ is central.
                let eps_hat = MetallicString::new(a, vec![a / 2; n]).unwrap();
                let rank = g.rank_of(&eps_hat).unwrap();
                assert_eq!(
                    u64::from(report.eccentricities[rank]),
                    report.formula_radius,
                    "e(ε̂) for a = {a}, n = {n}"
                );
            }
        }
    }

    #[test]
    fn farthest_vertex_examples() {
        let g = MetallicCube::build(3, 3).unwrap();
        let report = metric_report(&g).unwrap();
        let center_word = word(3, "111");
        let far = farthest_vertex(&center_word).unwrap();
        assert_eq!(far.to_text(), "030");
        let rank = g.rank_of(&center_word).unwrap();
        let dist = g.bfs_distances(rank);
        assert_eq!(dist[g.rank_of(&far).unwrap()], 4);
        assert_eq!(report.eccentricities[rank], 4);

        // e(030) = 8: the rewrite from a periphery vertex reaches a diametral
        // partner.
        let v030 = word(3, "030");
        let far030 = farthest_vertex(&v030).unwrap();
        let d030 = g.bfs_distances(g.rank_of(&v030).unwrap());
        assert_eq!(d030[g.rank_of(&far030).unwrap()], 8);
    }

    #[test]
    fn farthest_vertex_attains_eccentricity_everywhere() {
        for a in 1..=5u32 {
            for n in 1..=4usize {
                let g = MetallicCube::build(a, n).unwrap();
                if g.vertex_count() > 2_000 {
                    continue;
                }
                let report = metric_report(&g).unwrap();
                for rank in 0..g.vertex_count() {
                    let v = g.vertex(rank);
                    let far = farthest_vertex(&v).unwrap();
                    let dist = g.bfs_distances(rank);
                    assert_eq!(
                        dist[g.rank_of(&far).unwrap()],
                        report.eccentricities[rank],
                        "v = {v} in a = {a}, n = {n}"
                    );
                }
            }
        }
    }

    #[test]
    fn parameter_preconditions() {
        assert!(matches!(radius_formula(0, 3), Err(Error::ZeroAlphabet)));
        assert!(matches!(
            diameter_formula(3, 0),
            Err(Error::InvalidParameter(_))
        ));
        let g = MetallicCube::build(2, 3).unwrap();
        assert!(matches!(
            metric_report_capped(&g, 5),
            Err(Error::CapExceeded { needed: 12, cap: 5 })
        ));
    }
}
