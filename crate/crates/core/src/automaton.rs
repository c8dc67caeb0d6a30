//! Factor-avoidance automaton and the dynamic programs run over it.
//!
//! The automaton is the Aho–Corasick trie of the taboo set with failure links
//! compiled into a complete DFA over `{1, 2}`. A state is dead when it, or any
//! state on its failure chain, ends a taboo word. Dead and unreachable states
//! are dropped; the remaining live states are numbered in BFS order from the
//! start state.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::avoided::require_factor_free;
use crate::error::{Error, Result};
use crate::poly::WeightPoly;
use crate::word::{FactorMatcher, Word};

const LETTERS: [u8; 2] = [1, 2];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AvoidanceAutomaton {
    /// `transitions[s][i]` is the successor of live state `s` on letter
    /// `LETTERS[i]`, or `None` for the dead sink.
    transitions: Vec<[Option<u32>; 2]>,
}

impl AvoidanceAutomaton {
    pub fn num_states(&self) -> usize {
        self.transitions.len()
    }

    pub fn start(&self) -> usize {
        0
    }

    /// Successor of `state` on `letter` (1 or 2), `None` if the walk dies.
    pub fn next(&self, state: usize, letter: u8) -> Option<usize> {
        let i = match letter {
            1 => 0,
            2 => 1,
            _ => return None,
        };
        self.transitions[state][i].map(|s| s as usize)
    }

    /// True iff `word` avoids every taboo word.
    pub fn accepts(&self, word: &[u8]) -> bool {
        let mut state = self.start();
        for &l in word {
            match self.next(state, l) {
                Some(s) => state = s,
                None => return false,
            }
        }
        true
    }
}

struct TrieNode {
    children: [Option<usize>; 2],
    fail: usize,
    dead: bool,
}

/// Build the avoidance DFA for a factor-free set.
pub fn build_automaton(set: &[Word]) -> Result<AvoidanceAutomaton> {
    require_factor_free(set)?;

    let mut nodes = vec![TrieNode { children: [None, None], fail: 0, dead: false }];
    for w in set {
        let mut cur = 0;
        for &l in w.letters() {
            let i = (l - 1) as usize;
            cur = match nodes[cur].children[i] {
                Some(c) => c,
                None => {
                    nodes.push(TrieNode { children: [None, None], fail: 0, dead: false });
                    let id = nodes.len() - 1;
                    nodes[cur].children[i] = Some(id);
                    id
                }
            };
        }
        nodes[cur].dead = true;
    }

    // Complete goto function by BFS over the trie.
    let mut delta = vec![[0usize; 2]; nodes.len()];
    let mut queue = VecDeque::new();
    for (i, child) in nodes[0].children.into_iter().enumerate() {
        match child {
            Some(c) => {
                delta[0][i] = c;
                queue.push_back(c);
            }
            None => delta[0][i] = 0,
        }
    }
    while let Some(u) = queue.pop_front() {
        let f = nodes[u].fail;
        if nodes[f].dead {
            nodes[u].dead = true;
        }
        for (i, child) in nodes[u].children.into_iter().enumerate() {
            match child {
                Some(c) => {
                    nodes[c].fail = if u == 0 { 0 } else { delta[f][i] };
                    delta[u][i] = c;
                    queue.push_back(c);
                }
                None => delta[u][i] = delta[f][i],
            }
        }
    }

    // Renumber reachable live states in BFS order.
    let mut index = vec![u32::MAX; nodes.len()];
    let mut order = Vec::new();
    if !nodes[0].dead {
        index[0] = 0;
        order.push(0);
        let mut head = 0;
        while head < order.len() {
            let u = order[head];
            head += 1;
            for v in delta[u] {
                if !nodes[v].dead && index[v] == u32::MAX {
                    index[v] = order.len() as u32;
                    order.push(v);
                }
            }
        }
    }
    let transitions = order.iter().map(|&u| delta[u].map(|v| (!nodes[v].dead).then_some(index[v]))).collect();
    Ok(AvoidanceAutomaton { transitions })
}

/// Per-length extremes of the number of ones over the words avoiding a set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeProfile {
    #[serde(rename = "N")]
    pub terms: usize,
    pub min_ones: Vec<usize>,
    pub max_ones: Vec<usize>,
}

impl DegreeProfile {
    /// Validate the shape and per-step invariants of a profile read from
    /// elsewhere.
    pub fn new(terms: usize, min_ones: Vec<usize>, max_ones: Vec<usize>) -> Result<Self> {
        let invalid = |msg: String| Error::Parse { line: 0, msg };
        if min_ones.len() != terms + 1 || max_ones.len() != terms + 1 {
            return Err(invalid(format!("expected {} entries per sequence", terms + 1)));
        }
        for n in 0..=terms {
            if min_ones[n] > max_ones[n] || max_ones[n] > n {
                return Err(Error::InvalidCounts { min: min_ones[n], max: max_ones[n], n });
            }
        }
        Ok(DegreeProfile { terms, min_ones, max_ones })
    }

    /// Profile read off a series' nonzero coefficients.
    pub fn from_series(series: &crate::cluster::Series) -> Result<Self> {
        let terms = series.order();
        let mut min_ones = Vec::with_capacity(terms + 1);
        let mut max_ones = Vec::with_capacity(terms + 1);
        for n in 0..=terms {
            min_ones.push(series.min_ones(n).ok_or(Error::NoWordsOfLength(n))?);
            max_ones.push(series.max_ones(n).ok_or(Error::NoWordsOfLength(n))?);
        }
        Ok(DegreeProfile { terms, min_ones, max_ones })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,min_ones,max_ones\n");
        for n in 0..=self.terms {
            out.push_str(&format!("{n},{},{}\n", self.min_ones[n], self.max_ones[n]));
        }
        out
    }
}

/// Min-plus and max-plus DP over the automaton for lengths `0..=terms`.
pub fn degree_profile(set: &[Word], terms: usize) -> Result<DegreeProfile> {
    let dfa = build_automaton(set)?;
    profile_of(&dfa, terms)
}

pub fn profile_of(dfa: &AvoidanceAutomaton, terms: usize) -> Result<DegreeProfile> {
    const NONE: u32 = u32::MAX;
    let states = dfa.num_states();
    if states == 0 {
        return Err(Error::NoWordsOfLength(0));
    }
    let mut lo = vec![NONE; states];
    let mut hi = vec![NONE; states];
    lo[0] = 0;
    hi[0] = 0;
    let mut min_ones = vec![0];
    let mut max_ones = vec![0];
    let mut next_lo = vec![NONE; states];
    let mut next_hi = vec![NONE; states];

    for n in 1..=terms {
        next_lo.fill(NONE);
        next_hi.fill(NONE);
        for s in 0..states {
            if lo[s] == NONE {
                continue;
            }
            for (i, &letter) in LETTERS.iter().enumerate() {
                let Some(t) = dfa.transitions[s][i] else { continue };
                let t = t as usize;
                let add = u32::from(letter == 1);
                let (l, h) = (lo[s] + add, hi[s] + add);
                if next_lo[t] == NONE || l < next_lo[t] {
                    next_lo[t] = l;
                }
                if next_hi[t] == NONE || h > next_hi[t] {
                    next_hi[t] = h;
                }
            }
        }
        std::mem::swap(&mut lo, &mut next_lo);
        std::mem::swap(&mut hi, &mut next_hi);
        let m = lo.iter().copied().filter(|&v| v != NONE).min().ok_or(Error::NoWordsOfLength(n))?;
        let big_m = hi.iter().copied().filter(|&v| v != NONE).max().unwrap();
        min_ones.push(m as usize);
        max_ones.push(big_m as usize);
    }
    Ok(DegreeProfile { terms, min_ones, max_ones })
}

/// `p_n` by a counting DP over the automaton, one coefficient vector (indexed
/// by the number of ones) per live state, double-buffered.
pub fn weight_poly_dp(set: &[Word], n: usize) -> Result<WeightPoly> {
    let dfa = build_automaton(set)?;
    Ok(count_words(&dfa, n))
}

pub fn count_words(dfa: &AvoidanceAutomaton, n: usize) -> WeightPoly {
    let states = dfa.num_states();
    if states == 0 {
        return WeightPoly::zero();
    }
    let mut cur: Vec<Vec<BigInt>> = vec![Vec::new(); states];
    cur[0] = vec![BigInt::from(1)];
    for len in 1..=n {
        let mut next: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); len + 1]; states];
        for (s, coeffs) in cur.iter().enumerate() {
            if coeffs.iter().all(Zero::is_zero) {
                continue;
            }
            for (i, &letter) in LETTERS.iter().enumerate() {
                let Some(t) = dfa.transitions[s][i] else { continue };
                let shift = usize::from(letter == 1);
                let target = &mut next[t as usize];
                for (a, c) in coeffs.iter().enumerate() {
                    if !c.is_zero() {
                        target[a + shift] += c;
                    }
                }
            }
        }
        cur = next;
    }
    let mut total = vec![BigInt::zero(); n + 1];
    for coeffs in &cur {
        for (a, c) in coeffs.iter().enumerate() {
            total[a] += c;
        }
    }
    WeightPoly::from_slice(n, &total)
}

pub const BRUTE_FORCE_LIMIT: usize = 24;

/// `p_n` by checking all `2^n` words against the set.
pub fn enumerate_brute(set: &[Word], n: usize) -> Result<WeightPoly> {
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge(n));
    }
    let matcher = FactorMatcher::new(set);
    let counts = (0u64..1 << n)
        .into_par_iter()
        .fold(
            || vec![0u64; n + 1],
            |mut acc, bits| {
                let word: Vec<u8> = (0..n).map(|i| if bits >> i & 1 == 1 { 1 } else { 2 }).collect();
                if !matcher.matches(&word) {
                    acc[bits.count_ones() as usize] += 1;
                }
                acc
            },
        )
        .reduce(
            || vec![0u64; n + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    let slice: Vec<BigInt> = counts.into_iter().map(BigInt::from).collect();
    Ok(WeightPoly::from_slice(n, &slice))
}
