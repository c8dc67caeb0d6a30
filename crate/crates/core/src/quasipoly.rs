//! Eventual linear quasi-polynomials in min-ones sequences.

use num_rational::Rational64;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{fraction, Bound, Provenance, Rigor};
use crate::error::{Error, Result};

/// `m_n = c * (n - i) / M + k_i` for `n = i (mod M)` and `onset <= n <= window`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiPolyFit {
    pub modulus: usize,
    pub slope: i64,
    pub constants: Vec<i64>,
    pub onset: usize,
    pub window: usize,
    /// First `n >= 1` with `m_n / n = c / M`, if any.
    pub attained_at: Option<usize>,
}

impl QuasiPolyFit {
    pub fn limit(&self) -> Rational64 {
        Rational64::new(self.slope, self.modulus as i64)
    }

    pub fn predict(&self, n: usize) -> i64 {
        let i = n % self.modulus;
        self.slope * ((n - i) / self.modulus) as i64 + self.constants[i]
    }
}

fn onset_for(m: &[usize], modulus: usize) -> Option<(i64, usize)> {
    let n_max = m.len() - 1;
    let c = m[n_max] as i64 - m[n_max - modulus] as i64;
    let holds = |n: usize| m[n + modulus] as i64 - m[n] as i64 == c;
    let last_bad = (1..=n_max - modulus).rev().find(|&n| !holds(n));
    let onset = last_bad.map_or(1, |n| n + 1);
    (onset <= n_max / 2).then_some((c, onset))
}

/// Smallest modulus `M <= max_modulus` with `m_{n+M} = m_n + c` for every
/// `n` from some onset `<= N/2` up to `N - M`. `m[n]` is indexed by length,
/// so `N = m.len() - 1`.
pub fn fit_quasipoly(m: &[usize], max_modulus: usize) -> Result<QuasiPolyFit> {
    let n_max = m.len().saturating_sub(1);
    if max_modulus == 0 || n_max < 4 * max_modulus {
        return Err(Error::SequenceTooShort { len: n_max, max_modulus });
    }
    let (modulus, (slope, onset)) = (1..=max_modulus)
        .into_par_iter()
        .find_map_first(|modulus| onset_for(m, modulus).map(|found| (modulus, found)))
        .ok_or(Error::NoFitFound(max_modulus))?;

    let constants: Vec<i64> = (0..modulus)
        .map(|i| {
            let n = n_max - ((n_max - i) % modulus);
            m[n] as i64 - slope * ((n - i) / modulus) as i64
        })
        .collect();
    let fit = QuasiPolyFit {
        modulus,
        slope,
        constants,
        onset,
        window: n_max,
        attained_at: (1..=n_max).find(|&n| m[n] as i64 * modulus as i64 == slope * n as i64),
    };
    if (onset..=n_max).any(|n| fit.predict(n) != m[n] as i64) {
        return Err(Error::NoFitFound(max_modulus));
    }
    Ok(fit)
}

/// Default search bound `N / 4`.
pub fn default_max_modulus(m: &[usize]) -> usize {
    m.len().saturating_sub(1) / 4
}

/// Records of `m_n / n` and their eventual closed form
/// `(c m + u) / (M m + v)` at `n = M m + v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaximaReport {
    pub records: Vec<(usize, Rational64)>,
    pub residue: usize,
    pub numerator_offset: i64,
    pub denominator_offset: usize,
    /// Smallest `m` from which every `n = M m + v` in the window is a record.
    pub m_start: usize,
    pub attained: bool,
}

impl MaximaReport {
    pub fn formula(&self, fit: &QuasiPolyFit) -> String {
        format!(
            "({} m + {})/({} m + {})",
            fit.slope, self.numerator_offset, fit.modulus, self.denominator_offset
        )
    }

    pub fn value_at(&self, fit: &QuasiPolyFit, m: usize) -> Rational64 {
        Rational64::new(
            fit.slope * m as i64 + self.numerator_offset,
            (fit.modulus * m + self.denominator_offset) as i64,
        )
    }
}

/// Strictly increasing records of `m_n / n`, earliest `n` on ties, with the
/// residue class of the final run of records.
pub fn successive_maxima(m: &[usize], fit: &QuasiPolyFit) -> MaximaReport {
    let mut records: Vec<(usize, Rational64)> = Vec::new();
    for (n, &ones) in m.iter().enumerate().skip(1) {
        let r = Rational64::new(ones as i64, n as i64);
        if records.last().is_none_or(|&(_, best)| r > best) {
            records.push((n, r));
        }
    }
    let modulus = fit.modulus;
    let residue = records.last().map_or(0, |&(n, _)| n % modulus);

    let mut m_start = records.last().map_or(0, |&(n, _)| n / modulus);
    for pair in records.windows(2).rev() {
        let (prev, cur) = (pair[0].0, pair[1].0);
        if prev % modulus == residue && prev + modulus == cur {
            m_start = prev / modulus;
        } else {
            break;
        }
    }
    let limit = fit.limit();
    MaximaReport {
        attained: records.iter().any(|&(_, r)| r == limit),
        records,
        residue,
        numerator_offset: fit.constants[residue],
        denominator_offset: residue,
        m_start,
    }
}

/// `epsilon = 1/2 - c/M`. Rigorous when the limit is attained at a finite
/// length, semi-rigorous otherwise.
pub fn semi_rigorous_bound(fit: &QuasiPolyFit) -> Bound {
    let half = Rational64::new(1, 2);
    let epsilon = half - fit.limit();
    match fit.attained_at {
        Some(n) => Bound::from_epsilon(epsilon, Provenance::SeriesTerm { n }, Rigor::Rigorous),
        None => Bound::from_epsilon(
            epsilon,
            Provenance::SemiRigorousLimit {
                modulus: fit.modulus,
                slope: fit.slope,
                onset: fit.onset,
                window: fit.window,
            },
            Rigor::SemiRigorous,
        ),
    }
}

/// JSON shape of the `quasifit` command.
#[derive(Debug, Clone, Serialize)]
pub struct FitSummary {
    pub modulus: usize,
    pub slope: i64,
    pub constants: Vec<i64>,
    pub onset: usize,
    pub limit: String,
    pub epsilon: String,
    pub maxima_formula: String,
    pub attained: bool,
}

impl FitSummary {
    pub fn new(fit: &QuasiPolyFit, maxima: &MaximaReport) -> Self {
        FitSummary {
            modulus: fit.modulus,
            slope: fit.slope,
            constants: fit.constants.clone(),
            onset: fit.onset,
            limit: format!("{}/{}", fit.slope, fit.modulus),
            epsilon: fraction(&(Rational64::new(1, 2) - fit.limit())),
            maxima_formula: maxima.formula(fit),
            attained: maxima.attained,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn floor_thirds(n: usize) -> Vec<usize> {
        (0..=n).map(|k| k / 3).collect()
    }

    #[test]
    fn fits_floor_n_over_3() {
        let m = floor_thirds(200);
        let fit = fit_quasipoly(&m, 50).unwrap();
        assert_eq!((fit.modulus, fit.slope, fit.constants.clone()), (3, 1, vec![0, 0, 0]));
        assert_eq!(fit.attained_at, Some(3));
        let rep = successive_maxima(&m, &fit);
        assert!(rep.attained);
        assert_eq!(rep.records.last().unwrap().0, 3);
        let b = semi_rigorous_bound(&fit);
        assert_eq!(b.epsilon, Rational64::new(1, 6));
        assert_eq!(b.rigor, Rigor::Rigorous);
    }

    #[test]
    fn late_onset_is_found() {
        // floor(2n/5) with a perturbation at n = 7
        let mut m: Vec<usize> = (0..=100).map(|k| 2 * k / 5).collect();
        m[7] += 1;
        let fit = fit_quasipoly(&m, 25).unwrap();
        assert_eq!((fit.modulus, fit.slope), (5, 2));
        assert_eq!(fit.onset, 8);
        assert_eq!(fit.predict(7), 2);
    }

    #[test]
    fn too_short_and_no_fit() {
        assert!(matches!(fit_quasipoly(&floor_thirds(10), 3), Err(Error::SequenceTooShort { .. })));
        assert!(fit_quasipoly(&floor_thirds(100), 0).is_err());
        // squares of indices are not quasi-linear
        let m: Vec<usize> = (0..=100).map(|k| k * k / 50).collect();
        assert_eq!(fit_quasipoly(&m, 25), Err(Error::NoFitFound(25)));
    }

    #[test]
    fn unattained_limit_is_semi_rigorous() {
        // m_n = floor((n - 1) / 3) approaches 1/3 from below
        let m: Vec<usize> = (0..=120usize).map(|k| k.saturating_sub(1) / 3).collect();
        let fit = fit_quasipoly(&m, 30).unwrap();
        assert_eq!(fit.attained_at, None);
        let rep = successive_maxima(&m, &fit);
        assert!(!rep.attained);
        assert_eq!(rep.residue, 1);
        assert_eq!(rep.formula(&fit), "(1 m + 0)/(3 m + 1)");
        let b = semi_rigorous_bound(&fit);
        assert_eq!(b.rigor, Rigor::SemiRigorous);
        assert!(matches!(b.provenance, Provenance::SemiRigorousLimit { modulus: 3, .. }));
        let json = serde_json::to_value(FitSummary::new(&fit, &rep)).unwrap();
        assert_eq!(json["limit"], "1/3");
        assert_eq!(json["epsilon"], "1/6");
    }
}
