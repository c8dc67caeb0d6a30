//! Words over `{1, 2}`, the Kolakoski word, run lengths and factor search.
//!
//! Letters are stored as the bytes `1`, `2` (and `3` for the one-letter root
//! of the avoided-word tree), not as ASCII digits.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use aho_corasick::AhoCorasick;

use crate::error::{Error, Result};

/// A finite word. Every letter is 1 or 2, except the single-letter word `3`.
///
/// Ordering is by length first, then lexicographic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new(letters: Vec<u8>) -> Result<Self> {
        if letters == [3] {
            return Ok(Word(letters));
        }
        if let Some(&bad) = letters.iter().find(|&&l| l != 1 && l != 2) {
            return Err(Error::InvalidWord(format!("letter {bad} not in {{1,2}}")));
        }
        Ok(Word(letters))
    }

    /// Caller guarantees the letters are valid.
    pub(crate) fn from_vec_unchecked(letters: Vec<u8>) -> Self {
        debug_assert!(letters == [3] || letters.iter().all(|&l| l == 1 || l == 2));
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of occurrences of `letter`.
    pub fn count(&self, letter: u8) -> usize {
        self.0.iter().filter(|&&l| l == letter).count()
    }

    pub fn ones(&self) -> usize {
        self.count(1)
    }

    pub fn twos(&self) -> usize {
        self.count(2)
    }

    /// Exchange the letters 1 and 2.
    pub fn swapped(&self) -> Word {
        Word(self.0.iter().map(|&l| swap_letter(l)).collect())
    }

    /// True if `self` occurs as a contiguous block of `other`.
    pub fn is_factor_of(&self, other: &Word) -> bool {
        if self.is_empty() {
            return true;
        }
        other.0.windows(self.len()).any(|w| w == self.0.as_slice())
    }

    pub fn into_vec(self) -> Vec<u8> {
        self.0
    }
}

pub(crate) fn swap_letter(l: u8) -> u8 {
    match l {
        1 => 2,
        2 => 1,
        other => other,
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .chars()
            .map(|c| match c {
                '1' => Ok(1),
                '2' => Ok(2),
                '3' => Ok(3),
                _ => Err(Error::InvalidWord(format!("unexpected character {c:?}"))),
            })
            .collect::<Result<Vec<u8>>>()?;
        Word::new(letters)
    }
}

/// Length and number of ones of a prefix of the Kolakoski word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrefixStats {
    pub n: usize,
    pub ones: usize,
}

impl PrefixStats {
    pub fn of(word: &Word) -> Self {
        PrefixStats { n: word.len(), ones: word.ones() }
    }

    /// `ones / n` as a float, for display only.
    pub fn ratio(&self) -> f64 {
        if self.n == 0 {
            0.0
        } else {
            self.ones as f64 / self.n as f64
        }
    }
}

/// First `n` letters of the word starting with `first_letter` that equals its
/// own run-length sequence. `first_letter = 2` gives K, `1` gives 1K.
///
/// Panics if `first_letter` is not 1 or 2.
pub fn kolakoski_prefix(n: usize, first_letter: u8) -> Word {
    assert!(first_letter == 1 || first_letter == 2, "first letter must be 1 or 2");
    let mut out: Vec<u8> = Vec::with_capacity(n + 1);
    let mut symbol = first_letter;
    let mut read = 0;
    while out.len() < n {
        // When the reader catches up with the writer the run length is the
        // symbol being written (self-reference at the start of the word).
        let run = if read < out.len() { out[read] } else { symbol };
        for _ in 0..run {
            out.push(symbol);
        }
        symbol = swap_letter(symbol);
        read += 1;
    }
    out.truncate(n);
    Word(out)
}

/// Lengths of the maximal runs of equal letters, in order. A truncated final
/// run is reported as-is.
pub fn run_lengths(letters: &[u8]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut iter = letters.iter().peekable();
    while let Some(&l) = iter.next() {
        let mut len = 1;
        while iter.next_if(|&&m| m == l).is_some() {
            len += 1;
        }
        out.push(len);
    }
    out
}

/// Multi-pattern factor search backed by Aho-Corasick.
pub struct FactorMatcher {
    inner: Option<AhoCorasick>,
}

impl FactorMatcher {
    pub fn new<'a, I>(words: I) -> Self
    where
        I: IntoIterator<Item = &'a Word>,
    {
        let patterns: Vec<&[u8]> = words.into_iter().map(|w| w.letters()).collect();
        if patterns.is_empty() {
            return FactorMatcher { inner: None };
        }
        let ac = AhoCorasick::new(patterns).expect("pattern set within automaton limits");
        FactorMatcher { inner: Some(ac) }
    }

    pub fn matches(&self, letters: &[u8]) -> bool {
        match &self.inner {
            Some(ac) => ac.is_match(letters),
            None => false,
        }
    }
}

/// True iff some word of `set` occurs as a factor of `w`.
pub fn contains_any_factor<'a, I>(w: &Word, set: I) -> bool
where
    I: IntoIterator<Item = &'a Word>,
{
    FactorMatcher::new(set).matches(w.letters())
}

/// Parse the word-set text format: one word per line over `1`/`2`, lines
/// starting with `#` are comments, blank lines are ignored.
pub fn parse_word_set(text: &str) -> Result<Vec<Word>> {
    let mut words = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let word: Word = line.parse().map_err(|e: Error| Error::Parse { line: i + 1, msg: e.to_string() })?;
        if word.letters() == [3] {
            return Err(Error::Parse { line: i + 1, msg: "letter 3 not allowed in word sets".into() });
        }
        words.push(word);
    }
    Ok(words)
}

pub fn format_word_set<'a, I>(words: I) -> String
where
    I: IntoIterator<Item = &'a Word>,
{
    let mut out = String::new();
    for w in words {
        out.push_str(&w.to_string());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn kolakoski_first_twenty() {
        assert_eq!(kolakoski_prefix(20, 2), w("22112122122112112212"));
    }

    #[test]
    fn kolakoski_empty_and_one_k() {
        assert!(kolakoski_prefix(0, 2).is_empty());
        assert_eq!(kolakoski_prefix(5, 1), w("12211"));
        // 1K is 1 followed by K
        let one_k = kolakoski_prefix(101, 1);
        assert_eq!(&one_k.letters()[1..], kolakoski_prefix(100, 2).letters());
    }

    #[test]
    fn run_lengths_examples() {
        assert_eq!(run_lengths(&[1, 1, 2, 2]), vec![2, 2]);
        assert_eq!(run_lengths(&[2, 2, 1, 1, 2]), vec![2, 2, 1]);
        assert!(run_lengths(&[]).is_empty());
    }

    #[test]
    fn kolakoski_is_its_own_run_length_sequence() {
        let k = kolakoski_prefix(50, 2);
        let runs = run_lengths(k.letters());
        // last run may be cut short
        for (i, &r) in runs[..runs.len() - 1].iter().enumerate() {
            assert_eq!(r, k.letters()[i] as usize, "run {i}");
        }
    }

    #[test]
    fn factor_search() {
        assert!(contains_any_factor(&w("121"), &[w("121")]));
        assert!(!contains_any_factor(&w("121"), &[]));
        let k = kolakoski_prefix(1_000_000, 2);
        assert!(!contains_any_factor(&k, &[w("111"), w("222")]));
        assert!(contains_any_factor(&k, &[w("2112")]));
    }

    #[test]
    fn word_validation() {
        assert!(Word::new(vec![1, 3]).is_err());
        assert!(Word::new(vec![3]).is_ok());
        assert!("12a".parse::<Word>().is_err());
        assert!(Word::new(vec![0]).is_err());
    }

    #[test]
    fn word_set_format() {
        let text = "# comment\n111\n\n222\n";
        let set = parse_word_set(text).unwrap();
        assert_eq!(set, vec![w("111"), w("222")]);
        assert_eq!(format_word_set(&set), "111\n222\n");
        assert!(matches!(parse_word_set("11x\n"), Err(Error::Parse { line: 1, .. })));
        assert!(parse_word_set("3\n").is_err());
    }

    #[test]
    fn ordering_is_length_then_lex() {
        let mut v = vec![w("21212"), w("222"), w("111"), w("112211")];
        v.sort();
        assert_eq!(v, vec![w("111"), w("222"), w("21212"), w("112211")]);
    }
}
