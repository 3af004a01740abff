//! Exact Laurent polynomials in `q^{1/2}` with arbitrary-precision integer
//! coefficients.
//!
//! Exponents are stored as integer counts of `q^{1/2}`: the key `e` stands for
//! `q^{e/2}`. Membership in `Z[q^{±1}]` is then "all keys even", with no
//! rational arithmetic anywhere.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element of `Z[q^{±1/2}]` in canonical form: no stored zero
/// coefficients, so structural equality is ring equality.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentHalf {
    terms: BTreeMap<i64, BigInt>,
}

/// Which of the distinguished subrings an element lies in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SubringFlags {
    /// `Z[q]`: every exponent is an even, non-negative number of half units.
    pub in_zq: bool,
    /// `Z[q^{±1}]`: every exponent is even.
    pub in_zq_inv: bool,
    /// `Z[q^{-1/2}]`: every exponent is non-positive.
    pub in_z_half_neg: bool,
}

impl LaurentHalf {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(0, c)
    }

    /// `c · q^{half_exp/2}`.
    pub fn monomial(half_exp: i64, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(half_exp, c);
        }
        LaurentHalf { terms }
    }

    /// `q^k` for an integer power `k`.
    pub fn q_pow(k: i64) -> Self {
        Self::monomial(2 * k, 1)
    }

    /// `q^{e/2}`.
    pub fn half_pow(e: i64) -> Self {
        Self::monomial(e, 1)
    }

    /// Builds a canonical value from arbitrary `(half exponent, coefficient)`
    /// pairs; repeated exponents are summed.
    pub fn from_terms<I, C>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut out = LaurentHalf::zero();
        for (e, c) in pairs {
            out.add_term(e, c.into());
        }
        out
    }

    /// Polynomial in `q` from integer coefficients `[c_0, c_1, ...]`.
    pub fn from_q_coeffs(coeffs: &[i64]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().map(|(k, &c)| (2 * k as i64, c)))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of `q^{half_exp/2}`.
    pub fn coeff(&self, half_exp: i64) -> BigInt {
        self.terms.get(&half_exp).cloned().unwrap_or_default()
    }

    pub fn min_half_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_half_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// If this is a single monomial `c q^{e/2}`, returns `(e, c)`.
    pub fn as_monomial(&self) -> Option<(i64, &BigInt)> {
        if self.terms.len() == 1 {
            self.terms().next()
        } else {
            None
        }
    }

    fn add_term(&mut self, e: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    /// The involution `q^{1/2} ↦ q^{-1/2}`.
    pub fn bar(&self) -> Self {
        LaurentHalf {
            terms: self.terms.iter().map(|(&e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Multiplies by `q^{half_exp/2}`.
    pub fn shift_half(&self, half_exp: i64) -> Self {
        LaurentHalf {
            terms: self
                .terms
                .iter()
                .map(|(&e, c)| (e + half_exp, c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentHalf {
            terms: self.terms.iter().map(|(&e, x)| (e, x * c)).collect(),
        }
    }

    pub fn subring(&self) -> SubringFlags {
        SubringFlags {
            in_zq: self.terms.keys().all(|&e| e >= 0 && e % 2 == 0),
            in_zq_inv: self.terms.keys().all(|&e| e % 2 == 0),
            in_z_half_neg: self.terms.keys().all(|&e| e <= 0),
        }
    }

    pub fn is_in_zq(&self) -> bool {
        self.subring().in_zq
    }

    pub fn is_in_zq_inv(&self) -> bool {
        self.subring().in_zq_inv
    }

    /// `true` when every coefficient is non-negative.
    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Exact division in `Z[q^{±1/2}]`. Fails unless `divisor` divides `self`.
    pub fn exact_div(&self, divisor: &LaurentHalf) -> Result<LaurentHalf> {
        if divisor.is_zero() {
            return Err(Error::NotDivisible("division by zero".into()));
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        // Units are ±q^{k/2}; after factoring out the lowest powers both sides
        // are honest polynomials in t = q^{1/2} with non-zero constant terms,
        // and the quotient has to be one as well.
        let a0 = self.min_half_exp().unwrap();
        let d0 = divisor.min_half_exp().unwrap();
        let mut rem: BTreeMap<i64, BigInt> = self.terms.iter().map(|(&e, c)| (e - a0, c.clone())).collect();
        let div: Vec<(i64, BigInt)> = divisor.terms.iter().map(|(&e, c)| (e - d0, c.clone())).collect();
        let (d_top, d_lead) = div.last().cloned().unwrap();
        let mut quot = LaurentHalf::zero();
        while let Some((&top, lead)) = rem.iter().next_back() {
            if top < d_top {
                return Err(Error::NotDivisible(format!("{self} by {divisor}")));
            }
            let (q, r) = lead.div_rem(&d_lead);
            if !r.is_zero() {
                return Err(Error::NotDivisible(format!("{self} by {divisor}")));
            }
            let shift = top - d_top;
            for (e, c) in &div {
                let slot = rem.entry(e + shift).or_default();
                *slot -= c * &q;
                if slot.is_zero() {
                    rem.remove(&(e + shift));
                }
            }
            quot.add_term(shift, q);
        }
        Ok(quot.shift_half(a0 - d0))
    }
}

impl fmt::Display for LaurentHalf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (&e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let unit = abs.is_one();
            if e == 0 {
                write!(f, "{abs}")?;
                continue;
            }
            if !unit {
                write!(f, "{abs}")?;
            }
            match (e % 2 == 0, e / 2) {
                (true, 1) => write!(f, "q")?,
                (true, p) => write!(f, "q^{p}")?,
                (false, _) => write!(f, "q^({e}/2)")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentHalf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentHalf({self})")
    }
}

impl Serialize for LaurentHalf {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            seq.serialize_element(&(e, c.to_string()))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for LaurentHalf {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let pairs: Vec<(i64, String)> = Vec::deserialize(d)?;
        let mut out = LaurentHalf::zero();
        for (e, c) in pairs {
            let c: BigInt = c.parse().map_err(de::Error::custom)?;
            out.add_term(e, c);
        }
        Ok(out)
    }
}

impl From<i64> for LaurentHalf {
    fn from(c: i64) -> Self {
        LaurentHalf::constant(c)
    }
}

impl From<BigInt> for LaurentHalf {
    fn from(c: BigInt) -> Self {
        LaurentHalf::constant(c)
    }
}

impl AddAssign<&LaurentHalf> for LaurentHalf {
    fn add_assign(&mut self, rhs: &LaurentHalf) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, c.clone());
        }
    }
}

impl SubAssign<&LaurentHalf> for LaurentHalf {
    fn sub_assign(&mut self, rhs: &LaurentHalf) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, -c);
        }
    }
}

impl Add for &LaurentHalf {
    type Output = LaurentHalf;
    fn add(self, rhs: &LaurentHalf) -> LaurentHalf {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &LaurentHalf {
    type Output = LaurentHalf;
    fn sub(self, rhs: &LaurentHalf) -> LaurentHalf {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &LaurentHalf {
    type Output = LaurentHalf;
    fn mul(self, rhs: &LaurentHalf) -> LaurentHalf {
        let mut out = LaurentHalf::zero();
        for (&ea, ca) in &self.terms {
            for (&eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl Neg for &LaurentHalf {
    type Output = LaurentHalf;
    fn neg(self) -> LaurentHalf {
        LaurentHalf {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentHalf {
            type Output = LaurentHalf;
            fn $m(self, rhs: LaurentHalf) -> LaurentHalf {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LaurentHalf> for LaurentHalf {
            type Output = LaurentHalf;
            fn $m(self, rhs: &LaurentHalf) -> LaurentHalf {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentHalf {
    type Output = LaurentHalf;
    fn neg(self) -> LaurentHalf {
        -&self
    }
}

impl AddAssign for LaurentHalf {
    fn add_assign(&mut self, rhs: LaurentHalf) {
        *self += &rhs;
    }
}

impl SubAssign for LaurentHalf {
    fn sub_assign(&mut self, rhs: LaurentHalf) {
        *self -= &rhs;
    }
}

impl std::iter::Sum for LaurentHalf {
    fn sum<I: Iterator<Item = LaurentHalf>>(iter: I) -> Self {
        iter.fold(LaurentHalf::zero(), |acc, x| acc + x)
    }
}
