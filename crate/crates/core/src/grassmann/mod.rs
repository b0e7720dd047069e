//! Exact arithmetic in the Grassmann algebra on `N` anticommuting generators.
//!
//! An element is stored as a sparse map from basis monomials to nonzero
//! rational coefficients. A monomial `θi.θj...` (indices ascending) is encoded
//! as a bit mask with bit `i - 1` set for generator `θi`.

mod annihilator;
mod text;

pub use annihilator::{alpha_equal, annihilator_even, AnnihilatorBasis};
pub use text::TermJson;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exact rational coefficient.
pub type Rational = BigRational;

pub const MAX_GENERATORS: usize = 12;

pub fn rational(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
    Mixed,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
            Parity::Mixed => "mixed",
        })
    }
}

/// Sign picked up when the ascending monomials `a` and `b` are concatenated
/// and sorted: `(-1)^inversions`. Callers must check `a & b == 0` first.
#[inline]
pub(crate) fn merge_sign(a: u32, b: u32) -> bool {
    let mut inversions = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        inversions += (a >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    inversions % 2 == 1
}

/// Element of the Grassmann algebra over the rationals.
///
/// Always canonical: no stored coefficient is zero and every mask uses only
/// bits below `n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GrassmannElement {
    n: usize,
    terms: BTreeMap<u32, Rational>,
}

impl GrassmannElement {
    pub fn zero(n: usize) -> Self {
        assert!(n <= MAX_GENERATORS, "at most {MAX_GENERATORS} generators");
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::scalar(n, Rational::one())
    }

    pub fn scalar(n: usize, c: Rational) -> Self {
        let mut x = Self::zero(n);
        x.insert(0, c);
        x
    }

    pub fn integer(n: usize, c: i64) -> Self {
        Self::scalar(n, rational(c))
    }

    /// The generator `θi`, with `i` counted from 1.
    pub fn theta(n: usize, i: usize) -> Result<Self> {
        Self::monomial(n, &[i], Rational::one())
    }

    /// `coeff * θi1.θi2...` for 1-based indices in any order. The sign of the
    /// reordering is applied, and a repeated index gives zero.
    pub fn monomial(n: usize, indices: &[usize], coeff: Rational) -> Result<Self> {
        if n > MAX_GENERATORS {
            return Err(Error::TooManyGenerators(n));
        }
        let mut acc = Self::scalar(n, coeff);
        for &i in indices {
            if i == 0 || i > n {
                return Err(Error::GeneratorOutOfRange { index: i, n });
            }
            acc = &acc * &Self::from_mask(n, 1 << (i - 1), Rational::one());
        }
        Ok(acc)
    }

    pub(crate) fn from_mask(n: usize, mask: u32, coeff: Rational) -> Self {
        debug_assert!(mask >> n == 0);
        let mut x = Self::zero(n);
        x.insert(mask, coeff);
        x
    }

    /// Builds an element from `(mask, coefficient)` pairs, summing duplicates.
    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (u32, Rational)>) -> Result<Self> {
        if n > MAX_GENERATORS {
            return Err(Error::TooManyGenerators(n));
        }
        let mut x = Self::zero(n);
        for (mask, c) in terms {
            if mask >> n != 0 {
                let index = (32 - mask.leading_zeros()) as usize;
                return Err(Error::GeneratorOutOfRange { index, n });
            }
            x.insert(mask, c);
        }
        Ok(x)
    }

    fn insert(&mut self, mask: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(mask).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&mask);
        }
    }

    pub fn n_generators(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Rational)> + '_ {
        self.terms.iter().map(|(&m, c)| (m, c))
    }

    pub fn coeff(&self, mask: u32) -> Rational {
        self.terms
            .get(&mask)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn parity(&self) -> Parity {
        let mut even = false;
        let mut odd = false;
        for &mask in self.terms.keys() {
            if mask.count_ones() % 2 == 0 {
                even = true;
            } else {
                odd = true;
            }
        }
        match (even, odd) {
            (_, false) => Parity::Even,
            (false, true) => Parity::Odd,
            (true, true) => Parity::Mixed,
        }
    }

    pub fn is_even(&self) -> bool {
        self.parity() == Parity::Even
    }

    /// True for nonzero purely odd elements and for zero.
    pub fn is_odd_or_zero(&self) -> bool {
        self.is_zero() || self.parity() == Parity::Odd
    }

    pub fn body(&self) -> Rational {
        self.coeff(0)
    }

    pub fn soul(&self) -> Self {
        let mut s = self.clone();
        s.terms.remove(&0);
        s
    }

    /// Keeps only the terms of the given parity.
    pub fn part(&self, parity: Parity) -> Self {
        let keep_even = match parity {
            Parity::Even => true,
            Parity::Odd => false,
            Parity::Mixed => return self.clone(),
        };
        Self {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| (m.count_ones() % 2 == 0) == keep_even)
                .map(|(&m, c)| (m, c.clone()))
                .collect(),
        }
    }

    fn check_dims(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        Ok(self.add_unchecked(other, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        Ok(self.add_unchecked(other, true))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn add_unchecked(&self, other: &Self, negate: bool) -> Self {
        let mut out = self.clone();
        for (&m, c) in &other.terms {
            out.insert(m, if negate { -c.clone() } else { c.clone() });
        }
        out
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.n);
        for (&a, x) in &self.terms {
            for (&b, y) in &other.terms {
                if a & b != 0 {
                    continue;
                }
                let c = x * y;
                out.insert(a | b, if merge_sign(a, b) { -c } else { c });
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        Self {
            n: self.n,
            terms: self.terms.iter().map(|(&m, x)| (m, x * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.n);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Exact inverse `(c + s)^-1 = c^-1 * sum_k (-s/c)^k`, which terminates
    /// because the soul `s` is nilpotent.
    pub fn inverse(&self) -> Result<Self> {
        let c = self.body();
        if c.is_zero() {
            return Err(Error::NonInvertibleBody);
        }
        let c_inv = c.recip();
        let step = self.soul().scale(&-c_inv.clone());
        let mut sum = Self::one(self.n);
        let mut power = Self::one(self.n);
        loop {
            power = &power * &step;
            if power.is_zero() {
                break;
            }
            sum = &sum + &power;
        }
        Ok(sum.scale(&c_inv))
    }

    /// Coefficient vector over the even monomials, in ascending mask order.
    pub(crate) fn even_coords(&self) -> Vec<Rational> {
        even_masks(self.n).map(|m| self.coeff(m)).collect()
    }
}

/// Even monomial masks of `∧(n)` in ascending order.
pub fn even_masks(n: usize) -> impl Iterator<Item = u32> {
    (0..1u32 << n).filter(|m| m.count_ones() % 2 == 0)
}

/// Odd monomial masks of `∧(n)` in ascending order.
pub fn odd_masks(n: usize) -> impl Iterator<Item = u32> {
    (0..1u32 << n).filter(|m| m.count_ones() % 2 == 1)
}

impl<'a> Add<&'a GrassmannElement> for &'a GrassmannElement {
    type Output = GrassmannElement;

    fn add(self, rhs: &'a GrassmannElement) -> GrassmannElement {
        self.checked_add(rhs).expect("generator count mismatch")
    }
}

impl<'a> Sub<&'a GrassmannElement> for &'a GrassmannElement {
    type Output = GrassmannElement;

    fn sub(self, rhs: &'a GrassmannElement) -> GrassmannElement {
        self.checked_sub(rhs).expect("generator count mismatch")
    }
}

impl<'a> Mul<&'a GrassmannElement> for &'a GrassmannElement {
    type Output = GrassmannElement;

    fn mul(self, rhs: &'a GrassmannElement) -> GrassmannElement {
        self.checked_mul(rhs).expect("generator count mismatch")
    }
}

impl Neg for &GrassmannElement {
    type Output = GrassmannElement;

    fn neg(self) -> GrassmannElement {
        self.scale(&-Rational::one())
    }
}

impl Neg for GrassmannElement {
    type Output = GrassmannElement;

    fn neg(self) -> GrassmannElement {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn th(n: usize, i: usize) -> GrassmannElement {
        GrassmannElement::theta(n, i).unwrap()
    }

    #[test]
    fn additive_inverse_cancels() {
        let t1 = th(3, 1);
        assert!((&t1 + &(-&t1)).is_zero());
    }

    #[test]
    fn sum_cancels_soul() {
        let t12 = &th(3, 1) * &th(3, 2);
        let x = &GrassmannElement::one(3) + &t12;
        let y = &GrassmannElement::integer(3, 2) - &t12;
        assert_eq!(&x + &y, GrassmannElement::integer(3, 3));
    }

    #[test]
    fn homogeneous_sum_is_odd() {
        let s = &th(3, 1) + &th(3, 2);
        assert_eq!(s.parity(), Parity::Odd);
        assert_eq!(s.terms().count(), 2);
    }

    #[test]
    fn generator_squares_to_zero() {
        assert!((&th(4, 1) * &th(4, 1)).is_zero());
    }

    #[test]
    fn generators_anticommute() {
        let t12 = &th(3, 1) * &th(3, 2);
        assert_eq!(&th(3, 2) * &th(3, 1), -t12);
    }

    #[test]
    fn one_plus_theta_times_one_minus_theta() {
        let one = GrassmannElement::one(2);
        let x = &one + &th(2, 1);
        let y = &one - &th(2, 1);
        assert_eq!(&x * &y, one);
    }

    #[test]
    fn parity_classification() {
        let t12 = &th(3, 1) * &th(3, 2);
        assert_eq!((&GrassmannElement::one(3) + &t12).parity(), Parity::Even);
        assert_eq!(th(3, 1).parity(), Parity::Odd);
        assert_eq!(
            (&GrassmannElement::one(3) + &th(3, 1)).parity(),
            Parity::Mixed
        );
        assert_eq!(GrassmannElement::zero(3).parity(), Parity::Even);
    }

    #[test]
    fn body_and_soul() {
        let t12 = &th(3, 1) * &th(3, 2);
        let x = &GrassmannElement::integer(3, 3) + &t12.scale(&rational(2));
        assert_eq!(x.body(), rational(3));
        assert_eq!(x.soul(), t12.scale(&rational(2)));
        let t123 = &t12 * &th(3, 3);
        assert_eq!(t123.body(), rational(0));
    }

    #[test]
    fn mismatched_generator_counts_are_rejected() {
        let err = th(2, 1).checked_add(&th(3, 1)).unwrap_err();
        assert_eq!(err, Error::DimensionMismatch { left: 2, right: 3 });
        assert!(th(2, 1).checked_mul(&th(3, 1)).is_err());
    }

    #[test]
    fn monomial_reorders_with_sign() {
        let x = GrassmannElement::monomial(3, &[3, 1], rational(1)).unwrap();
        assert_eq!(x, -(&th(3, 1) * &th(3, 3)));
        assert!(GrassmannElement::monomial(3, &[2, 2], rational(1))
            .unwrap()
            .is_zero());
        assert!(GrassmannElement::monomial(3, &[4], rational(1)).is_err());
        assert!(GrassmannElement::monomial(3, &[0], rational(1)).is_err());
    }

    #[test]
    fn inverse_of_unit() {
        let t12 = &th(3, 1) * &th(3, 2);
        let x = &GrassmannElement::integer(3, 2) + &t12;
        let inv = x.inverse().unwrap();
        assert_eq!(&x * &inv, GrassmannElement::one(3));
        assert_eq!(t12.inverse().unwrap_err(), Error::NonInvertibleBody);
    }

    #[test]
    fn merge_sign_counts_inversions() {
        // θ2 · θ1 needs one swap, θ3 · θ1θ2 needs two.
        assert!(merge_sign(0b10, 0b01));
        assert!(!merge_sign(0b100, 0b011));
        assert!(!merge_sign(0b001, 0b110));
    }
}
