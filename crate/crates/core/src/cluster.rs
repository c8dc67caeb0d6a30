//! Goulden–Jackson cluster method with letter-tracking weights.
//!
//! For a factor-free set `S` of taboo words, the cluster generating functions
//! `C_v` (clusters ending in `v`) satisfy
//!
//! ```text
//! C_v = -weight(v) - sum_{u in S} sum_{L in overlap(u, v)} weight(tail_L(v)) * C_u
//! ```
//!
//! and the words avoiding `S` have generating function
//! `W = 1 / (1 - (x1 + x2) t - sum_v C_v)`.
//!
//! [`weight_gf`] solves the system exactly over `Q(x1, x2)`. [`weight_series`]
//! never forms a rational function: with `F_v = C_v * W` the system becomes
//! `F_v = -weight(v) W - sum weight(tail) F_u` and `W = 1 + (x1 + x2) t W +
//! sum_v F_v`, which is triangular in the degree because every tail is
//! nonempty.

use std::collections::VecDeque;
use std::sync::atomic::{AtomicBool, Ordering};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::avoided::require_factor_free;
use crate::error::{Error, Result};
use crate::poly::{Bivariate, WeightPoly};
use crate::word::Word;

/// All `L` with `1 <= L <= min(|u|, |v|) - 1` such that the length-`L` suffix
/// of `u` equals the length-`L` prefix of `v`.
pub fn overlap_suffix_lengths(u: &Word, v: &Word) -> Vec<usize> {
    let (u, v) = (u.letters(), v.letters());
    let max = u.len().min(v.len()).saturating_sub(1);
    (1..=max).filter(|&l| u[u.len() - l..] == v[..l]).collect()
}

/// An overlap of `u` into `v`: the letters of `v` left after the overlap.
#[derive(Debug, Clone, Copy)]
struct Link {
    from: usize,
    tail_len: usize,
    tail_ones: usize,
}

/// For every `v`, the overlaps `(u, L)` with the weight of `tail_L(v)`.
fn links(set: &[Word]) -> Vec<Vec<Link>> {
    set.iter()
        .map(|v| {
            let mut out = Vec::new();
            for (ui, u) in set.iter().enumerate() {
                for l in overlap_suffix_lengths(u, v) {
                    let tail = &v.letters()[l..];
                    out.push(Link {
                        from: ui,
                        tail_len: tail.len(),
                        tail_ones: tail.iter().filter(|&&x| x == 1).count(),
                    });
                }
            }
            out
        })
        .collect()
}

/// `numerator / denominator` with the denominator's constant term equal to 1,
/// no common factor and integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalGF {
    numerator: WeightPoly,
    denominator: WeightPoly,
}

impl RationalGF {
    /// Reduce `numerator / denominator` to canonical form. The denominator
    /// must have constant term `±1` after removing common factors.
    pub fn new(numerator: WeightPoly, denominator: WeightPoly) -> Self {
        assert!(!denominator.is_zero(), "zero denominator");
        let num = numerator.to_bivariate();
        let den = denominator.to_bivariate();
        let g = num.gcd(&den);
        let mut num = WeightPoly::from_bivariate(&num.div_exact(&g).expect("gcd divides numerator"));
        let mut den = WeightPoly::from_bivariate(&den.div_exact(&g).expect("gcd divides denominator"));
        let c0 = den.constant_term();
        if c0.is_negative() {
            num = num.neg();
            den = den.neg();
        }
        assert!(
            den.constant_term().is_one(),
            "denominator constant term is {c0} after reduction, expected ±1"
        );
        RationalGF { numerator: num, denominator: den }
    }

    pub fn numerator(&self) -> &WeightPoly {
        &self.numerator
    }

    pub fn denominator(&self) -> &WeightPoly {
        &self.denominator
    }

    /// `D` in `N / (1 - D)`.
    pub fn d_part(&self) -> WeightPoly {
        WeightPoly::one().sub(&self.denominator)
    }

    /// Order to which two reduced forms must agree as series to be identical.
    pub fn comparison_order(&self, other: &RationalGF) -> usize {
        let deg = |p: &WeightPoly| p.total_degree().unwrap_or(0) as usize;
        deg(&self.numerator).max(deg(&other.numerator))
            + deg(&self.denominator).max(deg(&other.denominator))
            + 5
    }
}

/// Homogeneous slices `p_0 .. p_N` of a generating function. `slices[n][a]` is
/// the coefficient of `x1^a x2^(n-a) t^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    slices: Vec<Vec<BigInt>>,
}

#[derive(Serialize)]
struct SeriesJson(Vec<Vec<(usize, usize, String)>>);

impl Series {
    pub fn from_slices(slices: Vec<Vec<BigInt>>) -> Self {
        debug_assert!(slices.iter().enumerate().all(|(n, s)| s.len() == n + 1));
        Series { slices }
    }

    /// Truncation order `N`.
    pub fn order(&self) -> usize {
        self.slices.len() - 1
    }

    pub fn slice(&self, n: usize) -> &[BigInt] {
        &self.slices[n]
    }

    pub fn slices(&self) -> &[Vec<BigInt>] {
        &self.slices
    }

    pub fn term(&self, n: usize) -> WeightPoly {
        WeightPoly::from_slice(n, &self.slices[n])
    }

    /// Smallest number of ones with a nonzero coefficient in `p_n`.
    pub fn min_ones(&self, n: usize) -> Option<usize> {
        self.slices[n].iter().position(|c| !c.is_zero())
    }

    pub fn max_ones(&self, n: usize) -> Option<usize> {
        self.slices[n].iter().rposition(|c| !c.is_zero())
    }

    /// Sum of all terms as one polynomial.
    pub fn to_poly(&self) -> WeightPoly {
        (0..self.slices.len()).fold(WeightPoly::zero(), |acc, n| acc.add(&self.term(n)))
    }

    pub fn truncate(&self, n: usize) -> Series {
        Series { slices: self.slices[..=n].to_vec() }
    }

    /// JSON array of slices, each an array of `[a, b, "coefficient"]`.
    pub fn to_json(&self) -> String {
        let out = self
            .slices
            .iter()
            .enumerate()
            .map(|(n, s)| {
                s.iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(a, c)| (a, n - a, c.to_string()))
                    .collect()
            })
            .collect();
        serde_json::to_string(&SeriesJson(out)).expect("series serializes")
    }
}

/// Hooks for long computations.
#[derive(Default, Clone, Copy)]
pub struct Control<'a> {
    /// Called with `(n, N)` after slice `n` is complete.
    pub progress: Option<&'a (dyn Fn(usize, usize) + Sync)>,
    pub cancel: Option<&'a AtomicBool>,
}

impl Control<'_> {
    fn check(&self) -> Result<()> {
        match self.cancel {
            Some(flag) if flag.load(Ordering::Relaxed) => Err(Error::Cancelled),
            _ => Ok(()),
        }
    }

    fn report(&self, n: usize, total: usize) {
        if let Some(f) = self.progress {
            f(n, total);
        }
    }
}

/// Weight enumerator of the words avoiding `set`, as a reduced rational function.
pub fn weight_gf(set: &[Word]) -> Result<RationalGF> {
    require_factor_free(set)?;
    let x1_plus_x2 = WeightPoly::from_terms([(1, 0, 1), (0, 1, 1)]);
    if set.is_empty() {
        return Ok(RationalGF::new(WeightPoly::one(), WeightPoly::one().sub(&x1_plus_x2)));
    }

    let n = set.len();
    let links = links(set);
    // Row v: C_v + sum_u A[v][u] C_u = -weight(v)
    let mut rows: Vec<Vec<WeightPoly>> = vec![vec![WeightPoly::zero(); n + 1]; n];
    for (v, word) in set.iter().enumerate() {
        rows[v][v] = WeightPoly::one();
        for link in &links[v] {
            let twos = link.tail_len - link.tail_ones;
            rows[v][link.from].add_term(link.tail_ones as u32, twos as u32, BigInt::one());
        }
        rows[v][n] = WeightPoly::of_word(word).neg();
    }
    let matrix: Vec<Vec<Bivariate>> =
        rows.iter().map(|r| r.iter().map(WeightPoly::to_bivariate).collect()).collect();

    let (det, scaled) = solve_fraction_free(matrix);
    // sum_v C_v = total / det
    let total = scaled.iter().fold(Bivariate::zero(), |acc, y| acc.add(y));
    let one_minus = WeightPoly::one().sub(&x1_plus_x2).to_bivariate();
    let denominator = det.mul(&one_minus).sub(&total);
    Ok(RationalGF::new(WeightPoly::from_bivariate(&det), WeightPoly::from_bivariate(&denominator)))
}

/// Fraction-free (Bareiss) elimination of the augmented system `[A | b]`.
/// Returns `(det A, det A * x)`.
fn solve_fraction_free(mut m: Vec<Vec<Bivariate>>) -> (Bivariate, Vec<Bivariate>) {
    let n = m.len();
    let mut prev = Bivariate::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let swap = (k + 1..n).find(|&i| !m[i][k].is_zero()).expect("nonsingular cluster system");
            m.swap(k, swap);
        }
        let (top, bottom) = m.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pivot = &pivot_row[k];
        bottom.par_iter_mut().for_each(|row| {
            let factor = std::mem::replace(&mut row[k], Bivariate::zero());
            for j in k + 1..=n {
                let mut v = pivot.mul(&row[j]);
                if !factor.is_zero() && !pivot_row[j].is_zero() {
                    v.sub_assign(&factor.mul(&pivot_row[j]));
                }
                row[j] = v.div_exact(&prev).expect("Bareiss division is exact");
            }
        });
        prev = m[k][k].clone();
    }
    // Row swaps only reorder equations: the last pivot is det up to sign,
    // and the same sign multiplies every scaled unknown.
    let mut det = m[n - 1][n - 1].clone();
    let mut y = vec![Bivariate::zero(); n];
    for i in (0..n).rev() {
        let mut acc = det.mul(&m[i][n]);
        for j in i + 1..n {
            if !m[i][j].is_zero() {
                acc.sub_assign(&m[i][j].mul(&y[j]));
            }
        }
        y[i] = acc.div_exact(&m[i][i]).expect("Cramer numerators are polynomials");
    }
    if det.leading_negative() {
        det = det.neg();
        y.iter_mut().for_each(|v| *v = v.neg());
    }
    (det, y)
}

/// Slices `p_0 .. p_N` of the weight enumerator of the words avoiding `set`.
pub fn weight_series(set: &[Word], terms: usize) -> Result<Series> {
    weight_series_with(set, terms, Control::default())
}

pub fn weight_series_with(set: &[Word], terms: usize, control: Control<'_>) -> Result<Series> {
    require_factor_free(set)?;
    let links = links(set);
    let lens: Vec<usize> = set.iter().map(Word::len).collect();
    let ones: Vec<usize> = set.iter().map(Word::ones).collect();
    let history = links.iter().flatten().map(|l| l.tail_len).max().unwrap_or(0);

    let mut w: Vec<Vec<BigInt>> = Vec::with_capacity(terms + 1);
    w.push(vec![BigInt::one()]);
    // f_hist[k][v] is F_v at degree n - 1 - k for the current n.
    let mut f_hist: VecDeque<Vec<Vec<BigInt>>> = VecDeque::with_capacity(history + 1);
    control.report(0, terms);

    for n in 1..=terms {
        control.check()?;
        let f_now: Vec<Vec<BigInt>> = (0..set.len())
            .into_par_iter()
            .map(|v| {
                let mut out = vec![BigInt::zero(); n + 1];
                if n >= lens[v] {
                    // -weight(v) * W[n - |v|]
                    for (a, c) in w[n - lens[v]].iter().enumerate() {
                        if !c.is_zero() {
                            out[a + ones[v]] -= c;
                        }
                    }
                }
                for link in &links[v] {
                    if link.tail_len > n {
                        continue;
                    }
                    let Some(prev) = f_hist.get(link.tail_len - 1) else { continue };
                    for (a, c) in prev[link.from].iter().enumerate() {
                        if !c.is_zero() {
                            out[a + link.tail_ones] -= c;
                        }
                    }
                }
                out
            })
            .collect();

        let mut next = vec![BigInt::zero(); n + 1];
        for (a, c) in w[n - 1].iter().enumerate() {
            next[a] += c;
            next[a + 1] += c;
        }
        for f in &f_now {
            for (acc, c) in next.iter_mut().zip(f) {
                *acc += c;
            }
        }
        w.push(next);

        f_hist.push_front(f_now);
        if f_hist.len() > history {
            f_hist.pop_back();
        }
        control.report(n, terms);
    }
    Ok(Series { slices: w })
}

/// Expand `N / (1 - D)` to order `terms`.
pub fn series_from_gf(gf: &RationalGF, terms: usize) -> Series {
    let den = gf.denominator();
    let num = gf.numerator();
    let den_deg = den.total_degree().unwrap_or(0) as usize;
    let den_slices: Vec<(usize, Vec<BigInt>)> =
        (1..=den_deg).map(|k| (k, den.slice(k))).filter(|(_, s)| s.iter().any(|c| !c.is_zero())).collect();

    let mut w: Vec<Vec<BigInt>> = Vec::with_capacity(terms + 1);
    for n in 0..=terms {
        let mut cur = num.slice(n);
        for (k, ds) in &den_slices {
            if *k > n {
                break;
            }
            let prev = &w[n - k];
            for (i, d) in ds.iter().enumerate() {
                if d.is_zero() {
                    continue;
                }
                for (j, c) in prev.iter().enumerate() {
                    if !c.is_zero() {
                        cur[i + j] -= d * c;
                    }
                }
            }
        }
        w.push(cur);
    }
    Series { slices: w }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn s1() -> Vec<Word> {
        vec![w("111"), w("222")]
    }

    #[test]
    fn overlaps() {
        assert_eq!(overlap_suffix_lengths(&w("111"), &w("111")), vec![1, 2]);
        assert!(overlap_suffix_lengths(&w("111"), &w("222")).is_empty());
        assert_eq!(overlap_suffix_lengths(&w("12121"), &w("21212")), vec![2, 4]);
        assert!(overlap_suffix_lengths(&w("1"), &w("1")).is_empty());
    }

    #[test]
    fn empty_set_gf() {
        let gf = weight_gf(&[]).unwrap();
        assert_eq!(gf.numerator(), &WeightPoly::one());
        assert_eq!(gf.denominator(), &WeightPoly::from_terms([(0, 0, 1), (1, 0, -1), (0, 1, -1)]));
        let s = series_from_gf(&gf, 3);
        let x = WeightPoly::from_terms([(1, 0, 1), (0, 1, 1)]);
        assert_eq!(s.term(3), x.pow(3));
    }

    #[test]
    fn s1_gf_matches_closed_form() {
        let gf = weight_gf(&s1()).unwrap();
        let num = WeightPoly::from_terms([(2, 0, 1), (1, 0, 1), (0, 0, 1)]).mul(&WeightPoly::from_terms([
            (0, 2, 1),
            (0, 1, 1),
            (0, 0, 1),
        ]));
        let den = WeightPoly::from_terms([(0, 0, 1), (2, 2, -1), (2, 1, -1), (1, 2, -1), (1, 1, -1)]);
        assert_eq!(gf, RationalGF::new(num, den));
    }

    #[test]
    fn s3_denominator() {
        let s3 = crate::avoided::avoided_set(3).unwrap();
        let gf = weight_gf(s3.words()).unwrap();
        let expected = WeightPoly::from_terms([
            (0, 0, 1),
            (18, 18, 1),
            (16, 17, -1),
            (17, 16, -1),
            (15, 15, -1),
            (12, 12, 3),
            (10, 11, 1),
            (11, 10, 1),
            (8, 10, 1),
            (9, 9, 1),
            (10, 8, 1),
            (7, 8, -1),
            (8, 7, -1),
            (6, 6, -2),
            (5, 5, -1),
            (4, 5, -2),
            (5, 4, -2),
            (4, 4, -1),
        ]);
        assert_eq!(expected.len(), 18);
        assert_eq!(gf.denominator(), &expected);
    }

    #[test]
    fn s1_series_first_terms() {
        let s = weight_series(&s1(), 5).unwrap();
        assert_eq!(s.term(3), WeightPoly::from_terms([(2, 1, 3), (1, 2, 3)]));
        assert_eq!(s.term(5), WeightPoly::from_terms([(4, 1, 1), (3, 2, 7), (2, 3, 7), (1, 4, 1)]));
        assert_eq!(series_from_gf(&weight_gf(&s1()).unwrap(), 5), s);
    }

    #[test]
    fn zero_terms_is_one() {
        let s = weight_series(&s1(), 0).unwrap();
        assert_eq!(s.order(), 0);
        assert_eq!(s.term(0), WeightPoly::one());
    }

    #[test]
    fn rejects_bad_sets() {
        assert!(matches!(weight_gf(&[w("111"), w("2111")]), Err(Error::NotFactorFree(..))));
        assert!(matches!(weight_series(&[Word::empty()], 3), Err(Error::EmptyWordInSet)));
    }

    #[test]
    fn single_letter_taboo() {
        // only 2^n survives
        let s = weight_series(&[w("1")], 6).unwrap();
        for n in 0..=6 {
            assert_eq!(s.term(n), WeightPoly::from_terms([(0, n as u32, 1)]));
        }
        let gf = weight_gf(&[w("1")]).unwrap();
        assert_eq!(gf.denominator(), &WeightPoly::from_terms([(0, 0, 1), (0, 1, -1)]));
    }

    #[test]
    fn cancellation() {
        let flag = AtomicBool::new(true);
        let control = Control { progress: None, cancel: Some(&flag) };
        assert_eq!(weight_series_with(&s1(), 10, control), Err(Error::Cancelled));
    }
}
