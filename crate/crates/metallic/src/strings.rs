//! The vertex language: words of length `n` over `{0, …, a}` in which the top
//! letter `a` appears only in the two-letter block `0a`.
//!
//! Everything downstream identifies vertices by their position in the strict
//! lexicographic enumeration of this language, so ranking and unranking are
//! the central primitives here. Both run in `O(n)` using the word-count table
//! `s_m` (`s_m = a·s_{m−1} + s_{m−2}`, `s_0 = 1`, `s_1 = a`).

use crate::{Error, Result, DEFAULT_VERTEX_CAP};

/// A single letter of a word. Stored numerically so alphabets with `a > 9`
/// work uniformly.
pub type Letter = u32;

/// A word of the language: the vertex type of every metallic cube.
///
/// Invariants (enforced at construction):
/// - every letter lies in `0..=a`,
/// - every occurrence of the top letter `a` is immediately preceded by `0`,
/// - `a >= 1`.
///
/// The empty word `ε` (length 0) is valid and is the single vertex of the
/// one-vertex cube.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MetallicString {
    a: u32,
    letters: Vec<Letter>,
}

impl MetallicString {
    /// Builds a word after checking all invariants.
    pub fn new(a: u32, letters: Vec<Letter>) -> Result<Self> {
        check_alphabet(a)?;
        for (position, &letter) in letters.iter().enumerate() {
            if letter > a {
                return Err(Error::LetterOutOfRange { letter, a });
            }
            if letter == a && (position == 0 || letters[position - 1] != 0) {
                return Err(Error::MisplacedTopLetter { a, position });
            }
        }
        Ok(Self { a, letters })
    }

    /// The empty word `ε`.
    pub fn empty(a: u32) -> Result<Self> {
        Self::new(a, Vec::new())
    }

    /// Alphabet size `a`.
    pub fn alphabet(&self) -> u32 {
        self.a
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// Sum of the letters; its parity is a proper 2-coloring of the cube.
    pub fn letter_sum(&self) -> u64 {
        self.letters.iter().map(|&l| u64::from(l)).sum()
    }

    /// Textual form: digits for `a <= 9` (e.g. `"030"`), dot-separated decimal
    /// letters for `a >= 10` (e.g. `"0.10.0"`), `"-"` for the empty word.
    pub fn to_text(&self) -> String {
        if self.letters.is_empty() {
            return "-".to_owned();
        }
        if self.a <= 9 {
            self.letters.iter().map(|l| l.to_string()).collect()
        } else {
            self.letters
                .iter()
                .map(|l| l.to_string())
                .collect::<Vec<_>>()
                .join(".")
        }
    }

    /// Parses the textual form produced by [`MetallicString::to_text`].
    pub fn parse(a: u32, text: &str) -> Result<Self> {
        check_alphabet(a)?;
        let bad = || Error::ParseWord {
            text: text.to_owned(),
            a,
        };
        if text == "-" {
            return Self::empty(a);
        }
        let letters = if a <= 9 {
            text.chars()
                .map(|c| c.to_digit(10).ok_or_else(bad))
                .collect::<Result<Vec<_>>>()?
        } else {
            text.split('.')
                .map(|part| part.parse::<u32>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?
        };
        Self::new(a, letters)
    }

    /// Splits the word into its unique primitive-block decomposition.
    pub fn primitive_blocks(&self) -> PrimitiveBlockSeq {
        let mut blocks = Vec::new();
        let mut i = 0;
        while i < self.letters.len() {
            if self.letters[i] == 0 && i + 1 < self.letters.len() && self.letters[i + 1] == self.a {
                blocks.push(PrimitiveBlock::ZeroTop);
                i += 2;
            } else {
                debug_assert!(self.letters[i] < self.a || self.a == 0);
                blocks.push(PrimitiveBlock::Single(self.letters[i]));
                i += 1;
            }
        }
        PrimitiveBlockSeq { a: self.a, blocks }
    }
}

impl std::fmt::Display for MetallicString {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn check_alphabet(a: u32) -> Result<()> {
    if a == 0 {
        Err(Error::ZeroAlphabet)
    } else {
        Ok(())
    }
}

/// One primitive block: a single letter in `0..a` or the pair `0a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrimitiveBlock {
    Single(Letter),
    ZeroTop,
}

impl PrimitiveBlock {
    /// Number of letters the block spans.
    pub fn width(&self) -> usize {
        match self {
            PrimitiveBlock::Single(_) => 1,
            PrimitiveBlock::ZeroTop => 2,
        }
    }
}

/// The unique primitive-block decomposition of a word. Concatenating the
/// blocks reproduces the original letters exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimitiveBlockSeq {
    a: u32,
    blocks: Vec<PrimitiveBlock>,
}

impl PrimitiveBlockSeq {
    pub fn alphabet(&self) -> u32 {
        self.a
    }

    pub fn blocks(&self) -> &[PrimitiveBlock] {
        &self.blocks
    }

    /// Number of `0a` blocks.
    pub fn zero_top_count(&self) -> usize {
        self.blocks
            .iter()
            .filter(|b| matches!(b, PrimitiveBlock::ZeroTop))
            .count()
    }

    /// Rebuilds the word the decomposition came from.
    pub fn concat(&self) -> MetallicString {
        let mut letters = Vec::new();
        for block in &self.blocks {
            match block {
                PrimitiveBlock::Single(l) => letters.push(*l),
                PrimitiveBlock::ZeroTop => {
                    letters.push(0);
                    letters.push(self.a);
                }
            }
        }
        MetallicString { a: self.a, letters }
    }
}

/// Checks whether `letters` spells a word of the language over `{0, …, a}`.
///
/// Returns `Ok(false)` only for a misplaced top letter; letters beyond `a`
/// and `a = 0` are rejected with a distinct error rather than `false`.
pub fn is_valid(a: u32, letters: &[Letter]) -> Result<bool> {
    check_alphabet(a)?;
    for &letter in letters {
        if letter > a {
            return Err(Error::LetterOutOfRange { letter, a });
        }
    }
    Ok(word_is_valid(a, letters))
}

/// The 0a-block rule alone, assuming letters are already in `0..=a`.
pub(crate) fn word_is_valid(a: u32, letters: &[Letter]) -> bool {
    letters
        .iter()
        .enumerate()
        .all(|(i, &l)| l != a || (i > 0 && letters[i - 1] == 0))
}

/// Word counts `s_0, …, s_n` for alphabet size `a`, with overflow detection.
pub(crate) fn count_table(a: u32, n: usize) -> Result<Vec<u64>> {
    check_alphabet(a)?;
    let mut counts = Vec::with_capacity(n + 1);
    counts.push(1u64);
    if n >= 1 {
        counts.push(u64::from(a));
    }
    for m in 2..=n {
        let next = u64::from(a)
            .checked_mul(counts[m - 1])
            .and_then(|x| x.checked_add(counts[m - 2]))
            .ok_or(Error::CountOverflow { a, n })?;
        counts.push(next);
    }
    Ok(counts)
}

/// `s_n = |S^a_n|` as a machine word (see `counting` for the exact
/// big-integer versions).
pub fn word_count(a: u32, n: usize) -> Result<u64> {
    Ok(*count_table(a, n)?.last().expect("table is nonempty"))
}

/// Calls `visit` once per word of length `n`, in strict lexicographic order,
/// and returns how many words were visited. Errors out before visiting
/// anything if the count exceeds `cap`.
pub fn for_each_word<F>(a: u32, n: usize, cap: u64, mut visit: F) -> Result<u64>
where
    F: FnMut(&[Letter]),
{
    let total = word_count(a, n)?;
    if total > cap {
        return Err(Error::CapExceeded { needed: total, cap });
    }
    let mut letters = vec![0u32; n];
    descend(a, n, 0, &mut letters, &mut visit);
    Ok(total)
}

fn descend<F>(a: u32, n: usize, depth: usize, letters: &mut Vec<Letter>, visit: &mut F)
where
    F: FnMut(&[Letter]),
{
    if depth == n {
        visit(letters);
        return;
    }
    let prev_is_zero = depth > 0 && letters[depth - 1] == 0;
    for letter in 0..=a {
        if letter == a && !prev_is_zero {
            break;
        }
        letters[depth] = letter;
        descend(a, n, depth + 1, letters, visit);
    }
    letters[depth] = 0;
}

/// All words of length `n` in lexicographic order, under the default cap.
pub fn enumerate(a: u32, n: usize) -> Result<Vec<MetallicString>> {
    enumerate_capped(a, n, DEFAULT_VERTEX_CAP)
}

/// As [`enumerate`], with an explicit cap on the number of words.
pub fn enumerate_capped(a: u32, n: usize, cap: u64) -> Result<Vec<MetallicString>> {
    let mut words = Vec::new();
    for_each_word(a, n, cap, |letters| {
        words.push(MetallicString {
            a,
            letters: letters.to_vec(),
        });
    })?;
    Ok(words)
}

/// Index of `word` in the lexicographic enumeration of its length class.
///
/// Runs in `O(n)`: at each position, all admissible smaller letters are
/// accounted for through the count table (placing `0` leaves `s_m + s_{m−1}`
/// completions because the next letter may be the top letter; any other
/// letter leaves `s_m`).
pub fn rank(word: &MetallicString) -> Result<u64> {
    let n = word.len();
    let counts = count_table(word.a, n)?;
    let below = |m: usize| if m == 0 { 0 } else { counts[m - 1] };
    let mut index = 0u64;
    for (i, &letter) in word.letters.iter().enumerate() {
        let m = n - i - 1;
        if letter > 0 {
            // letter 0 first, then 1..a-1, then (possibly) a.
            index += counts[m] + below(m) + (u64::from(letter) - 1) * counts[m];
        }
    }
    Ok(index)
}

/// Inverse of [`rank`]: the `index`-th word of length `n` over `{0, …, a}`.
pub fn unrank(a: u32, n: usize, index: u64) -> Result<MetallicString> {
    let counts = count_table(a, n)?;
    let total = counts[n];
    if index >= total {
        return Err(Error::IndexOutOfRange {
            index,
            count: total,
        });
    }
    let below = |m: usize| if m == 0 { 0 } else { counts[m - 1] };
    let mut rest = index;
    let mut letters = Vec::with_capacity(n);
    for i in 0..n {
        let m = n - i - 1;
        let zero_span = counts[m] + below(m);
        let letter = if rest < zero_span {
            0
        } else {
            let offset = rest - zero_span;
            let step = offset / counts[m];
            rest -= zero_span + step * counts[m];
            let letter = 1 + u32::try_from(step).expect("letter fits u32");
            debug_assert!(
                letter < a || (letter == a && i > 0 && letters[i - 1] == 0),
                "unrank arithmetic placed an inadmissible letter"
            );
            letter
        };
        letters.push(letter);
    }
    Ok(MetallicString { a, letters })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn text_word(a: u32, text: &str) -> MetallicString {
        MetallicString::parse(a, text).unwrap()
    }

    #[test]
    fn validity_examples() {
        assert!(is_valid(3, &[0, 2, 0]).unwrap());
        assert!(is_valid(3, &[]).unwrap());
        assert!(!is_valid(3, &[3, 0]).unwrap());
        assert!(is_valid(3, &[0, 3]).unwrap());
    }

    #[test]
    fn validity_rejections_are_errors_not_false() {
        assert!(matches!(
            is_valid(3, &[4]),
            Err(Error::LetterOutOfRange { letter: 4, a: 3 })
        ));
        assert!(matches!(is_valid(0, &[]), Err(Error::ZeroAlphabet)));
        assert!(matches!(
            MetallicString::new(3, vec![1, 3]),
            Err(Error::MisplacedTopLetter { position: 1, .. })
        ));
    }

    #[test]
    fn enumerate_matches_small_tables() {
        assert_eq!(enumerate(2, 3).unwrap().len(), 12);
        let single = enumerate(3, 0).unwrap();
        assert_eq!(single, vec![MetallicString::empty(3).unwrap()]);

        let words: Vec<String> = enumerate(3, 2)
            .unwrap()
            .iter()
            .map(MetallicString::to_text)
            .collect();
        assert_eq!(
            words,
            ["00", "01", "02", "03", "10", "11", "12", "20", "21", "22"]
        );
    }

    /// Advances `word` to the next word over `0..=a` in lexicographic order.
    fn odometer(word: &mut [u32], a: u32) -> bool {
        for i in (0..word.len()).rev() {
            if word[i] < a {
                word[i] += 1;
                word[i + 1..].fill(0);
                return true;
            }
        }
        false
    }

    #[test]
    fn enumerate_agrees_with_filtering_all_words() {
        // Independent oracle: filter the full (a+1)^n cube by the 0a rule.
        for a in 1..=3u32 {
            for n in 0..=5usize {
                let mut expected = Vec::new();
                let mut word = vec![0u32; n];
                loop {
                    if word_is_valid(a, &word) {
                        expected.push(word.clone());
                    }
                    if !odometer(&mut word, a) {
                        break;
                    }
                }
                let got: Vec<Vec<u32>> = enumerate(a, n)
                    .unwrap()
                    .iter()
                    .map(|w| w.letters().to_vec())
                    .collect();
                assert_eq!(got, expected, "a = {a}, n = {n}");
            }
        }
    }

    #[test]
    fn enumeration_satisfies_vertex_recurrence() {
        for a in 1..=6u32 {
            let mut sizes = Vec::new();
            for n in 0..=8usize {
                sizes.push(word_count(a, n).unwrap());
            }
            for n in 2..=8usize {
                assert_eq!(
                    sizes[n],
                    u64::from(a) * sizes[n - 1] + sizes[n - 2],
                    "a = {a}, n = {n}"
                );
            }
        }
        // Spot check against enumeration itself.
        for a in 1..=4u32 {
            for n in 0..=6usize {
                assert_eq!(
                    enumerate(a, n).unwrap().len() as u64,
                    word_count(a, n).unwrap()
                );
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            enumerate_capped(3, 5, 100),
            Err(Error::CapExceeded {
                needed: 360,
                cap: 100
            })
        ));
    }

    #[test]
    fn rank_and_unrank_examples() {
        assert_eq!(rank(&text_word(3, "00")).unwrap(), 0);
        assert_eq!(unrank(3, 2, 9).unwrap().to_text(), "22");
        let w = unrank(2, 4, 17).unwrap();
        assert_eq!(rank(&w).unwrap(), 17);
        assert!(matches!(
            unrank(3, 2, 10),
            Err(Error::IndexOutOfRange {
                index: 10,
                count: 10
            })
        ));
    }

    #[test]
    fn rank_is_the_enumeration_index() {
        for a in 1..=4u32 {
            for n in 0..=5usize {
                for (i, w) in enumerate(a, n).unwrap().iter().enumerate() {
                    assert_eq!(rank(w).unwrap(), i as u64);
                    assert_eq!(&unrank(a, n, i as u64).unwrap(), w);
                }
            }
        }
    }

    #[test]
    fn primitive_block_examples() {
        use PrimitiveBlock::*;
        assert_eq!(
            text_word(3, "030").primitive_blocks().blocks(),
            &[ZeroTop, Single(0)]
        );
        assert_eq!(
            text_word(3, "0030").primitive_blocks().blocks(),
            &[Single(0), ZeroTop, Single(0)]
        );
        assert_eq!(
            text_word(3, "22").primitive_blocks().blocks(),
            &[Single(2), Single(2)]
        );
    }

    #[test]
    fn primitive_blocks_round_trip() {
        for a in 1..=4u32 {
            for n in 0..=6usize {
                for w in enumerate(a, n).unwrap() {
                    assert_eq!(w.primitive_blocks().concat(), w);
                }
            }
        }
    }

    #[test]
    fn text_round_trip_and_wide_alphabets() {
        assert_eq!(text_word(3, "030").to_text(), "030");
        assert_eq!(MetallicString::empty(5).unwrap().to_text(), "-");
        let wide = MetallicString::new(10, vec![0, 10, 0]).unwrap();
        assert_eq!(wide.to_text(), "0.10.0");
        assert_eq!(MetallicString::parse(10, "0.10.0").unwrap(), wide);
        assert!(MetallicString::parse(3, "0x1").is_err());
    }

    proptest! {
        #[test]
        fn unrank_rank_round_trip(a in 1u32..=5, n in 0usize..=7, seed in 0u64..1 << 30) {
            let total = word_count(a, n).unwrap();
            let index = seed % total;
            let word = unrank(a, n, index).unwrap();
            prop_assert_eq!(word.len(), n);
            prop_assert_eq!(rank(&word).unwrap(), index);
        }

        #[test]
        fn blocks_concat_round_trip(a in 1u32..=5, n in 0usize..=7, seed in 0u64..1 << 30) {
            let total = word_count(a, n).unwrap();
            let word = unrank(a, n, seed % total).unwrap();
            prop_assert_eq!(word.primitive_blocks().concat(), word);
        }
    }
}
