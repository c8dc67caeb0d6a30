//! Dense univariate polynomials over a GCD domain.
//!
//! Nesting gives multivariate arithmetic: `UPoly<UPoly<BigInt>>` is `Z[y][x]`.
//! Only what exact rational-function elimination needs is provided: ring
//! operations, exact division and gcd.
//!
//! Gcd first tries the heuristic method (evaluate the main variable at a large
//! integer, take the gcd of the images, read the result back in balanced base
//! and confirm by trial division) and falls back to the primitive
//! pseudo-remainder sequence.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub trait GcdDomain: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;

    /// `self / other` when `other` divides `self`, `None` otherwise.
    fn div_exact(&self, other: &Self) -> Option<Self>;

    /// Greatest common divisor, normalized to a non-negative leading sign.
    fn gcd(&self, other: &Self) -> Self;

    /// Whether the leading coefficient (recursively) is negative.
    fn leading_negative(&self) -> bool;

    /// Gcd of all integer coefficients (non-negative).
    fn int_content(&self) -> BigInt;

    /// Largest absolute value of an integer coefficient.
    fn max_norm(&self) -> BigInt;

    fn scale_int(&self, k: &BigInt) -> Self;

    /// Divide every integer coefficient by `k`, which must divide it.
    fn div_int(&self, k: &BigInt) -> Self;

    /// Coefficient-wise symmetric remainder modulo `m`, in `(-m/2, m/2]`.
    fn sym_mod(&self, m: &BigInt) -> Self;

    fn add_assign(&mut self, other: &Self) {
        *self = GcdDomain::add(self, other);
    }

    fn sub_assign(&mut self, other: &Self) {
        *self = GcdDomain::sub(self, other);
    }

    /// `self += a * b`
    fn add_mul(&mut self, a: &Self, b: &Self) {
        let p = GcdDomain::mul(a, b);
        self.add_assign(&p);
    }

    fn normalized(self) -> Self {
        if self.leading_negative() {
            GcdDomain::neg(&self)
        } else {
            self
        }
    }
}

impl GcdDomain for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, other: &Self) -> Option<Self> {
        if Zero::is_zero(other) {
            return None;
        }
        let (q, r) = self.div_rem(other);
        Zero::is_zero(&r).then_some(q)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn leading_negative(&self) -> bool {
        self.is_negative()
    }
    fn int_content(&self) -> BigInt {
        self.abs()
    }
    fn max_norm(&self) -> BigInt {
        self.abs()
    }
    fn scale_int(&self, k: &BigInt) -> Self {
        self * k
    }
    fn div_int(&self, k: &BigInt) -> Self {
        self / k
    }
    fn sym_mod(&self, m: &BigInt) -> Self {
        let r = self.mod_floor(m);
        if &r + &r > *m {
            r - m
        } else {
            r
        }
    }
    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
    fn sub_assign(&mut self, other: &Self) {
        *self -= other;
    }
    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
}

/// Coefficients from degree 0 upward; no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UPoly<R> {
    coeffs: Vec<R>,
}

impl<R: GcdDomain> UPoly<R> {
    pub fn new(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(GcdDomain::is_zero) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn constant(c: R) -> Self {
        UPoly::new(vec![c])
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&R> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> R {
        self.coeffs.get(i).cloned().unwrap_or_else(R::zero)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(GcdDomain::is_zero) {
            self.coeffs.pop();
        }
    }

    /// Multiply every coefficient by `c`.
    pub fn scale(&self, c: &R) -> Self {
        if c.is_zero() {
            return UPoly { coeffs: Vec::new() };
        }
        UPoly::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// Divide every coefficient exactly by `c`.
    pub fn div_scalar(&self, c: &R) -> Option<Self> {
        let coeffs = self.coeffs.iter().map(|a| a.div_exact(c)).collect::<Option<Vec<_>>>()?;
        Some(UPoly::new(coeffs))
    }

    /// Gcd of the coefficients.
    pub fn content(&self) -> R {
        let mut g = R::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g == R::one() {
                break;
            }
        }
        g
    }

    pub fn primitive_part(&self) -> Self {
        if self.coeffs.is_empty() {
            return self.clone();
        }
        let c = self.content();
        self.div_scalar(&c).expect("content divides every coefficient")
    }

    /// Substitute the integer `x` for the main variable.
    fn eval_int(&self, x: &BigInt) -> R {
        let mut acc = R::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.scale_int(x);
            acc.add_assign(c);
        }
        acc
    }

    /// Read `value` in balanced base `x`, the inverse of [`Self::eval_int`]
    /// for polynomials whose coefficients are below `x / 2` in size.
    fn from_balanced_digits(mut value: R, x: &BigInt) -> Self {
        let mut coeffs = Vec::new();
        while !value.is_zero() {
            let digit = value.sym_mod(x);
            value = value.sub(&digit).div_int(x);
            coeffs.push(digit);
        }
        UPoly::new(coeffs)
    }

    /// Heuristic gcd of two polynomials with unit integer content. `None`
    /// when no evaluation point produced a candidate that divides both.
    fn heuristic_gcd(&self, other: &Self) -> Option<Self> {
        let bound = self.max_norm().min(other.max_norm());
        let mut x: BigInt = bound * 2u32 + 29u32;
        for _ in 0..6 {
            let (ha, hb) = (self.eval_int(&x), other.eval_int(&x));
            if !ha.is_zero() && !hb.is_zero() {
                let h = ha.gcd(&hb);
                let g = UPoly::from_balanced_digits(h, &x);
                if !g.is_zero() {
                    let g = g.div_int(&g.int_content());
                    if GcdDomain::div_exact(self, &g).is_some() && GcdDomain::div_exact(other, &g).is_some() {
                        return Some(g.normalized());
                    }
                }
            }
            x = x * 73794u32 / 27011u32;
        }
        None
    }

    /// Gcd by the primitive pseudo-remainder sequence.
    fn prs_gcd(&self, other: &Self) -> Self {
        let content = self.content().gcd(&other.content());
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        let g = loop {
            if b.degree() == Some(0) {
                break <Self as GcdDomain>::one();
            }
            let r = a.pseudo_rem(&b);
            if r.is_zero() {
                break b;
            }
            a = b;
            b = r.primitive_part();
        };
        g.scale(&content).normalized()
    }

    /// Pseudo-remainder of `self` by `divisor`, up to a factor from `R`.
    fn pseudo_rem(&self, divisor: &Self) -> Self {
        let db = divisor.degree().expect("nonzero divisor");
        let lb = divisor.leading().unwrap().clone();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.coeffs[dr].clone();
            let shift = dr - db;
            let mut next: Vec<R> = r.coeffs.iter().map(|c| c.mul(&lb)).collect();
            for (i, b) in divisor.coeffs.iter().enumerate() {
                next[i + shift].sub_assign(&lr.mul(b));
            }
            r = UPoly::new(next);
            if r.coeffs.len() > 1 {
                r = r.primitive_part();
            }
        }
        r
    }
}

// Inherent forwards so callers need not import the trait, which would make
// `is_zero` and `gcd` ambiguous on `BigInt`.
impl<R: GcdDomain> UPoly<R> {
    pub fn zero() -> Self {
        <Self as GcdDomain>::zero()
    }
    pub fn one() -> Self {
        <Self as GcdDomain>::one()
    }
    pub fn is_zero(&self) -> bool {
        <Self as GcdDomain>::is_zero(self)
    }
    pub fn add(&self, other: &Self) -> Self {
        <Self as GcdDomain>::add(self, other)
    }
    pub fn sub(&self, other: &Self) -> Self {
        <Self as GcdDomain>::sub(self, other)
    }
    pub fn mul(&self, other: &Self) -> Self {
        <Self as GcdDomain>::mul(self, other)
    }
    pub fn neg(&self) -> Self {
        <Self as GcdDomain>::neg(self)
    }
    pub fn sub_assign(&mut self, other: &Self) {
        <Self as GcdDomain>::sub_assign(self, other)
    }
    pub fn div_exact(&self, other: &Self) -> Option<Self> {
        <Self as GcdDomain>::div_exact(self, other)
    }
    pub fn gcd(&self, other: &Self) -> Self {
        <Self as GcdDomain>::gcd(self, other)
    }
    pub fn leading_negative(&self) -> bool {
        <Self as GcdDomain>::leading_negative(self)
    }
}

impl<R: GcdDomain> GcdDomain for UPoly<R> {
    fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    fn one() -> Self {
        UPoly { coeffs: vec![R::one()] }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        GcdDomain::add_assign(&mut out, other);
        out
    }

    fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        GcdDomain::sub_assign(&mut out, other);
        out
    }

    fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return <Self as GcdDomain>::zero();
        }
        let mut out = vec![R::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j].add_mul(a, b);
                }
            }
        }
        UPoly::new(out)
    }

    fn neg(&self) -> Self {
        UPoly { coeffs: self.coeffs.iter().map(GcdDomain::neg).collect() }
    }

    fn div_exact(&self, other: &Self) -> Option<Self> {
        let db = other.degree()?;
        if self.coeffs.is_empty() {
            return Some(<Self as GcdDomain>::zero());
        }
        let da = self.coeffs.len() - 1;
        if da < db {
            return None;
        }
        let lb = other.leading().unwrap();
        let mut r = self.coeffs.clone();
        let mut q = vec![R::zero(); da - db + 1];
        for k in (0..=da - db).rev() {
            let top = &r[k + db];
            if top.is_zero() {
                continue;
            }
            let qk = top.div_exact(lb)?;
            for (i, b) in other.coeffs.iter().enumerate() {
                r[k + i].sub_assign(&qk.mul(b));
            }
            q[k] = qk;
        }
        r.iter().all(GcdDomain::is_zero).then(|| UPoly::new(q))
    }

    fn gcd(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() {
            return other.clone().normalized();
        }
        if other.coeffs.is_empty() {
            return self.clone().normalized();
        }
        let (ca, cb) = (self.int_content(), other.int_content());
        let c = Integer::gcd(&ca, &cb);
        let (a, b) = (self.div_int(&ca), other.div_int(&cb));
        let g = a.heuristic_gcd(&b).unwrap_or_else(|| a.prs_gcd(&b));
        g.scale_int(&c).normalized()
    }

    fn leading_negative(&self) -> bool {
        self.leading().is_some_and(GcdDomain::leading_negative)
    }

    fn int_content(&self) -> BigInt {
        let mut g = <BigInt as Zero>::zero();
        for c in &self.coeffs {
            g = Integer::gcd(&g, &c.int_content());
            if g.is_one() {
                break;
            }
        }
        g
    }

    fn max_norm(&self) -> BigInt {
        self.coeffs.iter().map(GcdDomain::max_norm).max().unwrap_or_default()
    }

    fn scale_int(&self, k: &BigInt) -> Self {
        UPoly::new(self.coeffs.iter().map(|c| c.scale_int(k)).collect())
    }

    fn div_int(&self, k: &BigInt) -> Self {
        UPoly { coeffs: self.coeffs.iter().map(|c| c.div_int(k)).collect() }
    }

    fn sym_mod(&self, m: &BigInt) -> Self {
        UPoly::new(self.coeffs.iter().map(|c| c.sym_mod(m)).collect())
    }

    fn add_assign(&mut self, other: &Self) {
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), R::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            a.add_assign(b);
        }
        self.trim();
    }

    fn sub_assign(&mut self, other: &Self) {
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), R::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            a.sub_assign(b);
        }
        self.trim();
    }
}

impl<R: fmt::Debug> fmt::Debug for UPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.coeffs).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type Z = BigInt;
    type P = UPoly<Z>;
    type P2 = UPoly<P>;

    fn p(c: &[i64]) -> P {
        UPoly::new(c.iter().map(|&x| Z::from(x)).collect())
    }

    #[test]
    fn univariate_ring_ops() {
        let a = p(&[1, 1]); // 1 + x
        let b = p(&[-1, 1]); // -1 + x
        assert_eq!(a.mul(&b), p(&[-1, 0, 1]));
        assert_eq!(p(&[-1, 0, 1]).div_exact(&a), Some(b.clone()));
        assert_eq!(p(&[1, 0, 1]).div_exact(&a), None);
        assert_eq!(a.sub(&a), P::zero());
    }

    #[test]
    fn univariate_gcd() {
        // (x+1)(x+2) and (x+1)(x-3) * 2
        let f = p(&[2, 3, 1]);
        let g = p(&[-6, -4, 2]);
        assert_eq!(f.gcd(&g), p(&[1, 1]));
        assert_eq!(p(&[6, 6]).gcd(&p(&[4, 4])), p(&[2, 2]));
        assert_eq!(p(&[-3]).gcd(&P::zero()), p(&[3]));
        assert_eq!(p(&[1, 0, 1]).gcd(&p(&[1, 1])), p(&[1]));
    }

    #[test]
    fn heuristic_and_prs_agree() {
        let f = p(&[3, -7, 0, 12, 5]).mul(&p(&[-2, 1, 1]));
        let g = p(&[-2, 1, 1]).mul(&p(&[1, 0, 0, -9]));
        assert_eq!(f.heuristic_gcd(&g), Some(p(&[-2, 1, 1])));
        assert_eq!(f.prs_gcd(&g), p(&[-2, 1, 1]));
    }

    #[test]
    fn bivariate_gcd() {
        // f = (x + y)(x - y + 1), g = (x + y)(x + 2)
        let x_plus_y = P2::new(vec![p(&[0, 1]), p(&[1])]);
        let f = x_plus_y.mul(&P2::new(vec![p(&[1, -1]), p(&[1])]));
        let g = x_plus_y.mul(&P2::new(vec![p(&[2]), p(&[1])]));
        assert_eq!(f.gcd(&g), x_plus_y);
        assert_eq!(f.prs_gcd(&g), x_plus_y);
        assert_eq!(f.div_exact(&x_plus_y).unwrap().mul(&x_plus_y), f);
        // content in the inner variable: (y + 1) x and (y + 1)
        let yp1 = P2::new(vec![p(&[1, 1])]);
        let h = P2::new(vec![P::zero(), p(&[1, 1])]);
        assert_eq!(h.gcd(&yp1), yp1);
    }
}
