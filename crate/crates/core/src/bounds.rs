//! Rigorous and semi-rigorous bounds on the frequency of 1 in K.
//!
//! Every bound is two-sided around 1/2 and holds only if the limiting
//! frequency exists.

use std::fmt;

use num_rational::Rational64;
use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;

use crate::automaton::DegreeProfile;
use crate::cluster::RationalGF;
use crate::error::{Error, Result};
use crate::poly::WeightPoly;

/// Fixed hypothesis attached to every rendered bound.
pub const CAVEAT: &str = "assuming the limiting frequency of 1 exists";

/// Terms `c * x1^ones * x2^(len-ones) * t^len` with `len >= 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialList {
    entries: Vec<Monomial>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monomial {
    pub coeff: num_bigint::BigInt,
    pub ones: u32,
    pub len: u32,
}

impl MonomialList {
    pub fn new(entries: Vec<Monomial>) -> Result<Self> {
        for m in &entries {
            if m.len == 0 || m.ones > m.len {
                return Err(Error::InvalidCounts {
                    min: m.ones as usize,
                    max: m.ones as usize,
                    n: m.len as usize,
                });
            }
        }
        Ok(MonomialList { entries })
    }

    /// Non-constant terms of `p`.
    pub fn from_poly(p: &WeightPoly) -> Self {
        let entries = p
            .terms()
            .filter(|(&(a, b), _)| a + b > 0)
            .map(|(&(a, b), c)| Monomial { coeff: c.clone(), ones: a, len: a + b })
            .collect();
        MonomialList { entries }
    }

    pub fn entries(&self) -> &[Monomial] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn ratios(&self) -> impl Iterator<Item = Rational64> + '_ {
        self.entries.iter().map(|m| Rational64::new(m.ones.into(), m.len.into()))
    }
}

/// Smallest `ones / len` over the terms; coefficients are ignored.
pub fn minratio(m: &MonomialList) -> Result<Rational64> {
    m.ratios().min().ok_or(Error::EmptyList)
}

/// Largest `ones / len` over the terms.
pub fn maxratio(m: &MonomialList) -> Result<Rational64> {
    m.ratios().max().ok_or(Error::EmptyList)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rigor {
    Rigorous,
    SemiRigorous,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Provenance {
    /// Extreme ones-counts of the length-`n` words.
    SeriesTerm { n: usize },
    /// Extreme ratios of the generating function's denominator.
    Denominator,
    /// Limit of a fitted quasi-polynomial, observed on `onset..=window`.
    SemiRigorousLimit { modulus: usize, slope: i64, onset: usize, window: usize },
}

/// `|freq_1(K) - 1/2| <= epsilon`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bound {
    pub epsilon: Rational64,
    pub lower: Rational64,
    pub upper: Rational64,
    pub provenance: Provenance,
    pub rigor: Rigor,
}

impl Bound {
    pub(crate) fn from_epsilon(epsilon: Rational64, provenance: Provenance, rigor: Rigor) -> Self {
        let half = Rational64::new(1, 2);
        debug_assert!(!epsilon.is_negative() && epsilon <= half);
        Bound { epsilon, lower: half - epsilon, upper: half + epsilon, provenance, rigor }
    }

    /// Epsilon as a 7-decimal string, e.g. `0.0223097`.
    pub fn epsilon_decimal(&self) -> String {
        decimal(&self.epsilon, 7)
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|freq_1(K) - 1/2| <= {} ~ {}", self.epsilon, self.epsilon_decimal())?;
        let rigor = match self.rigor {
            Rigor::Rigorous => "rigorous",
            Rigor::SemiRigorous => "semi-rigorous",
        };
        let source = match &self.provenance {
            Provenance::SeriesTerm { n } => format!("from the length-{n} words"),
            Provenance::Denominator => "from the generating function denominator".to_string(),
            Provenance::SemiRigorousLimit { modulus, slope, onset, window } => {
                format!("from the quasi-polynomial limit {slope}/{modulus} observed on n = {onset}..{window}")
            }
        };
        write!(f, " ({rigor}, {source}; {CAVEAT})")
    }
}

/// Round a non-negative rational half-up to `places` decimals.
pub fn decimal(r: &Rational64, places: u32) -> String {
    let scale = 10i128.pow(places);
    let num = *r.numer() as i128;
    let den = *r.denom() as i128;
    let neg = (num < 0) != (den < 0);
    let (num, den) = (num.abs(), den.abs());
    let scaled = (2 * num * scale + den) / (2 * den);
    let int = scaled / scale;
    let frac = scaled % scale;
    let sign = if neg && scaled != 0 { "-" } else { "" };
    format!("{sign}{int}.{frac:0width$}", width = places as usize)
}

fn epsilon_of(lo: Rational64, hi: Rational64) -> Rational64 {
    let half = Rational64::new(1, 2);
    (half - lo).max(hi - half)
}

/// If every length-`n` factor of K has between `min_ones` and `max_ones`
/// ones, the frequency lies in `[min_ones/n, max_ones/n]`.
pub fn bound_from_term(min_ones: usize, max_ones: usize, n: usize) -> Result<Bound> {
    if n == 0 || min_ones > max_ones || max_ones > n {
        return Err(Error::InvalidCounts { min: min_ones, max: max_ones, n });
    }
    let n64 = n as i64;
    let eps = epsilon_of(Rational64::new(min_ones as i64, n64), Rational64::new(max_ones as i64, n64));
    Ok(Bound::from_epsilon(eps, Provenance::SeriesTerm { n }, Rigor::Rigorous))
}

/// Asymptotic bound from the extreme ratios of `D` in `N / (1 - D)`.
pub fn bound_from_denominator(gf: &RationalGF) -> Result<Bound> {
    let d = MonomialList::from_poly(&gf.d_part());
    if d.is_empty() {
        return Err(Error::DegenerateDenominator);
    }
    let eps = epsilon_of(minratio(&d)?, maxratio(&d)?);
    Ok(Bound::from_epsilon(eps, Provenance::Denominator, Rigor::Rigorous))
}

/// The length `n` in `1..=N` giving the smallest epsilon, earliest on ties.
pub fn best_bound(profile: &DegreeProfile) -> Result<(usize, Bound)> {
    let mut best: Option<(usize, Bound)> = None;
    for n in 1..=profile.terms {
        let b = bound_from_term(profile.min_ones[n], profile.max_ones[n], n)?;
        if best.as_ref().is_none_or(|(_, cur)| b.epsilon < cur.epsilon) {
            best = Some((n, b));
        }
    }
    best.ok_or(Error::EmptyProfile)
}

/// `ε` as a plain fraction string, e.g. `17/762`; integers print bare.
pub fn fraction(r: &Rational64) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Float value for display only.
pub fn approx(r: &Rational64) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::degree_profile;
    use crate::avoided::avoided_set;
    use crate::cluster::weight_gf;

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn minratio_examples() {
        let s1 = weight_gf(avoided_set(1).unwrap().words()).unwrap();
        let d1 = MonomialList::from_poly(&s1.d_part());
        assert_eq!(minratio(&d1).unwrap(), r(1, 3));
        assert_eq!(maxratio(&d1).unwrap(), r(2, 3));
        let single = MonomialList::new(vec![Monomial { coeff: 5.into(), ones: 2, len: 3 }]).unwrap();
        assert_eq!(minratio(&single).unwrap(), r(2, 3));
        assert_eq!(minratio(&MonomialList::new(vec![]).unwrap()), Err(Error::EmptyList));
        assert!(MonomialList::new(vec![Monomial { coeff: 1.into(), ones: 0, len: 0 }]).is_err());
    }

    #[test]
    fn term_bounds() {
        assert_eq!(bound_from_term(1, 2, 3).unwrap().epsilon, r(1, 6));
        let b = bound_from_term(364, 398, 762).unwrap();
        assert_eq!(b.epsilon, r(17, 762));
        assert_eq!(b.lower, r(364, 762));
        assert_eq!(b.upper, r(398, 762));
        assert_eq!(bound_from_term(0, 10, 10).unwrap().epsilon, r(1, 2));
        assert!(bound_from_term(3, 2, 5).is_err());
        assert!(bound_from_term(0, 0, 0).is_err());
        assert!(bound_from_term(1, 6, 5).is_err());
    }

    #[test]
    fn asymmetric_term_bound_uses_both_sides() {
        // ones between 2 and 4 of 5: the upper side dominates
        assert_eq!(bound_from_term(2, 4, 5).unwrap().epsilon, r(3, 10));
    }

    #[test]
    fn denominator_bounds() {
        for (d, eps) in [(1, r(1, 6)), (2, r(1, 6)), (3, r(1, 18))] {
            let gf = weight_gf(avoided_set(d).unwrap().words()).unwrap();
            assert_eq!(bound_from_denominator(&gf).unwrap().epsilon, eps, "d = {d}");
        }
        let empty = weight_gf(&[]).unwrap();
        // 1 - x1 - x2: ratios 1 and 0
        assert_eq!(bound_from_denominator(&empty).unwrap().epsilon, r(1, 2));
        let constant = RationalGF::new(WeightPoly::one(), WeightPoly::one());
        assert_eq!(bound_from_denominator(&constant), Err(Error::DegenerateDenominator));
    }

    #[test]
    fn best_bound_small_sets() {
        let p1 = degree_profile(avoided_set(1).unwrap().words(), 200).unwrap();
        let (n, b) = best_bound(&p1).unwrap();
        assert_eq!((n, b.epsilon), (3, r(1, 6)));
        let p3 = degree_profile(avoided_set(3).unwrap().words(), 200).unwrap();
        let (n, b) = best_bound(&p3).unwrap();
        assert_eq!((n, b.epsilon), (9, r(1, 18)));
        let p0 = degree_profile(avoided_set(1).unwrap().words(), 0).unwrap();
        assert_eq!(best_bound(&p0).unwrap_err(), Error::EmptyProfile);
    }

    #[test]
    fn minratio_of_powers() {
        for d in 1..=3 {
            let dp = weight_gf(avoided_set(d).unwrap().words()).unwrap().d_part();
            let base = MonomialList::from_poly(&dp);
            for k in 2..=3 {
                let pk = MonomialList::from_poly(&dp.pow(k));
                assert_eq!(minratio(&pk).unwrap(), minratio(&base).unwrap(), "d = {d}, k = {k}");
                assert_eq!(maxratio(&pk).unwrap(), maxratio(&base).unwrap(), "d = {d}, k = {k}");
            }
        }
    }

    proptest::proptest! {
        #[test]
        fn mediant_lies_between(o1 in 0u32..50, e1 in 0u32..50, o2 in 0u32..50, e2 in 0u32..50) {
            proptest::prop_assume!(o1 + e1 > 0 && o2 + e2 > 0);
            let mono = |ones, len| Monomial { coeff: 1.into(), ones, len };
            let pair = MonomialList::new(vec![mono(o1, o1 + e1), mono(o2, o2 + e2)]).unwrap();
            let product = MonomialList::new(vec![mono(o1 + o2, o1 + e1 + o2 + e2)]).unwrap();
            let m = minratio(&product).unwrap();
            proptest::prop_assert!(m >= minratio(&pair).unwrap());
            proptest::prop_assert!(m <= maxratio(&pair).unwrap());
        }
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(decimal(&r(17, 762), 7), "0.0223097");
        assert_eq!(decimal(&r(1, 46), 7), "0.0217391");
        assert_eq!(decimal(&r(35, 41754), 7), "0.0008382");
        assert_eq!(decimal(&r(1, 6), 7), "0.1666667");
        assert_eq!(decimal(&r(1, 2), 7), "0.5000000");
    }

    #[test]
    fn display_carries_caveat() {
        let s = bound_from_term(364, 398, 762).unwrap().to_string();
        assert!(s.contains("17/762"));
        assert!(s.contains("0.0223097"));
        assert!(s.contains(CAVEAT));
    }
}
