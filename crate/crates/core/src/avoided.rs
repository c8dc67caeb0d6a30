//! The tree of words avoided by the Kolakoski word.
//!
//! The root is the run-length word `3`. Each word `w` of one level yields two
//! children on the next level, `expand(w, 1)` and `expand(w, 2)`: the words
//! whose run-length sequence is `w`, padded on either side when `w` starts or
//! ends with a run of length 1 so that the run is forced.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::word::{swap_letter, Word};

/// Words in levels `1..=depth` of the avoided-word tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AvoidSet {
    depth: usize,
    words: Vec<Word>,
    levels: BTreeMap<usize, Vec<Word>>,
}

impl AvoidSet {
    pub fn depth(&self) -> usize {
        self.depth
    }

    /// All words, sorted by length then lexicographically.
    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn level(&self, k: usize) -> Option<&[Word]> {
        self.levels.get(&k).map(Vec::as_slice)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

/// Build the word whose run-length sequence is `runs`, starting with `start`,
/// padding with the opposite letter on a side whose boundary run is 1.
pub fn expand(runs: &[u8], start: u8) -> Result<Word> {
    if runs.is_empty() {
        return Err(Error::EmptyRunLengths);
    }
    if let Some(&bad) = runs.iter().find(|&&r| !(1..=3).contains(&r)) {
        return Err(Error::InvalidRunLength(bad));
    }
    assert!(start == 1 || start == 2, "start letter must be 1 or 2");

    let total: usize = runs.iter().map(|&r| r as usize).sum();
    let mut out = Vec::with_capacity(total + 2);
    if runs[0] == 1 {
        out.push(swap_letter(start));
    }
    let mut symbol = start;
    for &r in runs {
        out.extend(std::iter::repeat_n(symbol, r as usize));
        symbol = swap_letter(symbol);
    }
    if runs[runs.len() - 1] == 1 {
        // `symbol` is already the letter opposite to the last block.
        out.push(symbol);
    }
    Ok(Word::from_vec_unchecked(out))
}

/// Levels `1..=d` of the avoided-word tree. Fails if two distinct
/// (parent, start) pairs produce the same word.
pub fn avoided_set(d: usize) -> Result<AvoidSet> {
    if d == 0 {
        return Err(Error::InvalidDepth);
    }
    let mut levels = BTreeMap::new();
    let mut seen: BTreeSet<Word> = BTreeSet::new();
    let mut current: Vec<Vec<u8>> = vec![vec![3]];

    for level in 1..=d {
        let children: Vec<Word> = current
            .par_iter()
            .flat_map_iter(|parent| [expand(parent, 1), expand(parent, 2)])
            .collect::<Result<Vec<_>>>()?;
        for child in &children {
            if !seen.insert(child.clone()) {
                return Err(Error::Collision { word: child.clone(), level });
            }
        }
        current = children.iter().map(|w| w.letters().to_vec()).collect();
        let mut sorted = children;
        sorted.sort();
        levels.insert(level, sorted);
    }

    Ok(AvoidSet { depth: d, words: seen.into_iter().collect(), levels })
}

/// Check that no word of `set` is a factor of another. Returns the first
/// offending `(factor, container)` pair in set order.
pub fn verify_factor_free(set: &[Word]) -> std::result::Result<(), (Word, Word)> {
    for (i, u) in set.iter().enumerate() {
        for (j, v) in set.iter().enumerate() {
            if i != j && u.len() <= v.len() && u.is_factor_of(v) {
                return Err((u.clone(), v.clone()));
            }
        }
    }
    Ok(())
}

/// Same check, as an [`Error`], also rejecting the empty word.
pub(crate) fn require_factor_free(set: &[Word]) -> Result<()> {
    if set.iter().any(Word::is_empty) {
        return Err(Error::EmptyWordInSet);
    }
    verify_factor_free(set).map_err(|(u, v)| Error::NotFactorFree(u, v))
}
