//! Integer polynomials in the letter-counting variables `x1`, `x2`.
//!
//! The length variable `t` is never stored: a monomial `x1^a x2^b` always
//! carries `t^(a+b)`, so the pair `(a, b)` determines it.

pub mod upoly;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::word::Word;
pub use upoly::UPoly;

/// `Z[x2][x1]`: outer variable `x1`, inner `x2`.
pub type Bivariate = UPoly<UPoly<BigInt>>;

/// Sparse polynomial in `x1`, `x2` with arbitrary-precision coefficients,
/// keyed by `(ones, twos)` exponents. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct WeightPoly {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl WeightPoly {
    pub fn zero() -> Self {
        WeightPoly::default()
    }

    pub fn one() -> Self {
        WeightPoly::monomial(BigInt::one(), 0, 0)
    }

    pub fn monomial(c: BigInt, ones: u32, twos: u32) -> Self {
        let mut p = WeightPoly::zero();
        p.add_term(ones, twos, c);
        p
    }

    /// `x1^|w|_1 x2^|w|_2`
    pub fn of_word(w: &Word) -> Self {
        WeightPoly::monomial(BigInt::one(), w.ones() as u32, w.twos() as u32)
    }

    /// Build from `(ones, twos, coefficient)` triples; repeated exponents add up.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (u32, u32, C)>,
        C: Into<BigInt>,
    {
        let mut p = WeightPoly::zero();
        for (a, b, c) in terms {
            p.add_term(a, b, c.into());
        }
        p
    }

    /// The homogeneous polynomial of degree `n` with `slice[a]` as the
    /// coefficient of `x1^a x2^(n-a)`.
    pub fn from_slice(n: usize, slice: &[BigInt]) -> Self {
        let mut p = WeightPoly::zero();
        for (a, c) in slice.iter().enumerate() {
            p.add_term(a as u32, (n - a) as u32, c.clone());
        }
        p
    }

    pub fn add_term(&mut self, ones: u32, twos: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((ones, twos)).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(ones, twos));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, ones: u32, twos: u32) -> BigInt {
        self.terms.get(&(ones, twos)).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0, 0)
    }

    /// `((ones, twos), coefficient)` in exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigInt)> {
        self.terms.iter()
    }

    /// Terms ordered by total degree, then by ascending `ones`.
    pub fn terms_by_degree(&self) -> Vec<(u32, u32, BigInt)> {
        let mut v: Vec<_> = self.terms.iter().map(|(&(a, b), c)| (a, b, c.clone())).collect();
        v.sort_by_key(|&(a, b, _)| (a + b, a));
        v
    }

    /// Largest `ones + twos` over the terms.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(a, b)| a + b).max()
    }

    pub fn is_homogeneous(&self, n: u32) -> bool {
        self.terms.keys().all(|&(a, b)| a + b == n)
    }

    /// Dense coefficients of the degree-`n` part, indexed by `ones`.
    pub fn slice(&self, n: usize) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); n + 1];
        for (&(a, b), c) in &self.terms {
            if (a + b) as usize == n {
                out[a as usize] = c.clone();
            }
        }
        out
    }

    /// Exchange `x1` and `x2`.
    pub fn swapped(&self) -> Self {
        WeightPoly { terms: self.terms.iter().map(|(&(a, b), c)| ((b, a), c.clone())).collect() }
    }

    pub fn neg(&self) -> Self {
        WeightPoly { terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(a, b), c) in &other.terms {
            out.add_term(a, b, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = WeightPoly::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &other.terms {
                out.add_term(a1 + a2, b1 + b2, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(WeightPoly::one(), |acc, _| acc.mul(self))
    }

    pub fn all_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    pub fn to_bivariate(&self) -> Bivariate {
        let Some(max_a) = self.terms.keys().map(|&(a, _)| a).max() else {
            return Bivariate::zero();
        };
        let mut rows: Vec<Vec<BigInt>> = vec![Vec::new(); max_a as usize + 1];
        for (&(a, b), c) in &self.terms {
            let row = &mut rows[a as usize];
            if row.len() <= b as usize {
                row.resize(b as usize + 1, BigInt::zero());
            }
            row[b as usize] = c.clone();
        }
        UPoly::new(rows.into_iter().map(UPoly::new).collect())
    }

    pub fn from_bivariate(p: &Bivariate) -> Self {
        let mut out = WeightPoly::zero();
        for (a, row) in p.coeffs().iter().enumerate() {
            for (b, c) in row.coeffs().iter().enumerate() {
                out.add_term(a as u32, b as u32, c.clone());
            }
        }
        out
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, a: u32, b: u32) -> fmt::Result {
    let mut parts = Vec::new();
    for (name, e) in [("x1", a), ("x2", b), ("t", a + b)] {
        match e {
            0 => {}
            1 => parts.push(name.to_string()),
            _ => parts.push(format!("{name}^{e}")),
        }
    }
    write!(f, "{}", parts.join("*"))
}

/// Renders with the implied `t`, e.g. `1 + x1*t + 3*x1^2*x2*t^3`.
impl fmt::Display for WeightPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms_by_degree();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (a, b, c)) in terms.iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit = mag.is_one();
            if a + b == 0 {
                write!(f, "{mag}")?;
            } else {
                if !unit {
                    write!(f, "{mag}*")?;
                }
                write_monomial(f, *a, *b)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for WeightPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeightPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_display() {
        let x1 = WeightPoly::monomial(1.into(), 1, 0);
        let x2 = WeightPoly::monomial(1.into(), 0, 1);
        let s = x1.add(&x2);
        let sq = s.mul(&s);
        assert_eq!(sq, WeightPoly::from_terms([(2, 0, 1), (1, 1, 2), (0, 2, 1)]));
        assert_eq!(sq.to_string(), "x2^2*t^2 + 2*x1*x2*t^2 + x1^2*t^2");
        assert_eq!(WeightPoly::one().sub(&x1).to_string(), "1 - x1*t");
        assert!(s.sub(&s).is_zero());
        assert!(sq.is_homogeneous(2));
        assert_eq!(sq.slice(2), vec![1.into(), 2.into(), 1.into()]);
        assert_eq!(WeightPoly::from_slice(2, &sq.slice(2)), sq);
    }

    #[test]
    fn bivariate_round_trip() {
        let p = WeightPoly::from_terms([(0, 0, 1), (3, 1, -2), (0, 5, 7), (2, 2, 4)]);
        assert_eq!(WeightPoly::from_bivariate(&p.to_bivariate()), p);
        assert!(WeightPoly::zero().to_bivariate().is_zero());
    }
}
