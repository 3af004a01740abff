//! The Hecke algebra of `W` over `ℤ[q^{±1/2}]` in the standard basis `T_w`
//! and the normalised Kazhdan–Lusztig basis `Ñ_w = Σ_y P_{y,w} T_y`.

mod kl;

pub use kl::KlCache;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::coeff::LaurentHalf;
use crate::error::{Error, Result};
use crate::weyl::AffinePerm;

pub type TermMap = BTreeMap<AffinePerm, LaurentHalf>;

pub(crate) fn add_term(map: &mut TermMap, w: AffinePerm, c: LaurentHalf) {
    if c.is_zero() {
        return;
    }
    match map.entry(w) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

pub(crate) fn add_scaled(map: &mut TermMap, other: &TermMap, c: &LaurentHalf) {
    for (w, d) in other {
        add_term(map, w.clone(), d * c);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Basis {
    #[serde(rename = "T")]
    T,
    #[serde(rename = "N")]
    N,
}

impl Basis {
    fn name(self) -> &'static str {
        match self {
            Basis::T => "T",
            Basis::N => "N",
        }
    }
}

/// A finite linear combination of `T_w` or of `Ñ_w`.
#[derive(Clone, PartialEq, Eq)]
pub struct HeckeElt {
    n: usize,
    basis: Basis,
    terms: TermMap,
}

impl HeckeElt {
    pub fn zero(n: usize, basis: Basis) -> Self {
        HeckeElt {
            n,
            basis,
            terms: TermMap::new(),
        }
    }

    pub fn basis_element(basis: Basis, w: &AffinePerm) -> Self {
        let mut terms = TermMap::new();
        terms.insert(w.clone(), LaurentHalf::one());
        HeckeElt {
            n: w.rank(),
            basis,
            terms,
        }
    }

    /// `T_w`.
    pub fn t(w: &AffinePerm) -> Self {
        Self::basis_element(Basis::T, w)
    }

    /// `Ñ_w`, as a formal basis element.
    pub fn nt(w: &AffinePerm) -> Self {
        Self::basis_element(Basis::N, w)
    }

    pub fn from_terms<I>(n: usize, basis: Basis, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (AffinePerm, LaurentHalf)>,
    {
        let mut map = TermMap::new();
        for (w, c) in terms {
            if w.rank() != n {
                return Err(Error::RankMismatch(n, w.rank()));
            }
            add_term(&mut map, w, c);
        }
        Ok(HeckeElt {
            n,
            basis,
            terms: map,
        })
    }

    pub(crate) fn from_map(n: usize, basis: Basis, terms: TermMap) -> Self {
        debug_assert!(terms.values().all(|c| !c.is_zero()));
        HeckeElt { n, basis, terms }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn terms(&self) -> &TermMap {
        &self.terms
    }

    pub fn into_terms(self) -> TermMap {
        self.terms
    }

    pub fn coeff(&self, w: &AffinePerm) -> LaurentHalf {
        self.terms.get(w).cloned().unwrap_or_default()
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

    pub fn scale(&self, c: &LaurentHalf) -> Self {
        let mut out = Self::zero(self.n, self.basis);
        add_scaled(&mut out.terms, &self.terms, c);
        out
    }

    pub(crate) fn expect_basis(&self, basis: Basis) -> Result<()> {
        if self.basis != basis {
            return Err(Error::BasisMismatch {
                expected: basis.name(),
                found: self.basis.name(),
            });
        }
        Ok(())
    }

    fn check_compatible(&self, other: &HeckeElt) -> Result<()> {
        if self.n != other.n {
            return Err(Error::RankMismatch(self.n, other.n));
        }
        other.expect_basis(self.basis)
    }

    pub fn checked_add(&self, other: &HeckeElt) -> Result<HeckeElt> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        add_scaled(&mut out.terms, &other.terms, &LaurentHalf::one());
        Ok(out)
    }

    /// `a · T_{s_i}` in the T-basis.
    pub fn right_mul_t_simple(&self, i: usize) -> HeckeElt {
        let mut out = TermMap::new();
        let q = LaurentHalf::q_pow(1);
        let qm1 = &q - &LaurentHalf::one();
        for (w, c) in &self.terms {
            let ws = w.right_mul_simple(i);
            if w.has_right_descent(i) {
                add_term(&mut out, w.clone(), c * &qm1);
                add_term(&mut out, ws, c * &q);
            } else {
                add_term(&mut out, ws, c.clone());
            }
        }
        HeckeElt::from_map(self.n, self.basis, out)
    }

    /// `a · T_{s_i}^{-1} = q^{-1} a T_{s_i} + (q^{-1} - 1) a`.
    fn right_mul_t_simple_inv(&self, i: usize) -> HeckeElt {
        let qinv = LaurentHalf::q_pow(-1);
        let mut out = self.right_mul_t_simple(i).scale(&qinv);
        add_scaled(&mut out.terms, &self.terms, &(&qinv - &LaurentHalf::one()));
        out
    }

    /// Right multiplication by `ω^k`; valid in both bases since
    /// `T_{wω^k} = T_w ω^k` and `Ñ_{wω^k} = Ñ_w ω^k`.
    pub fn right_mul_omega(&self, k: i64) -> HeckeElt {
        let terms = self.terms.iter().map(|(w, c)| (w.right_mul_omega(k), c.clone())).collect();
        HeckeElt::from_map(self.n, self.basis, terms)
    }

    /// Left multiplication by `ω^k`.
    pub fn left_mul_omega(&self, k: i64) -> HeckeElt {
        let terms = self.terms.iter().map(|(w, c)| (w.left_mul_omega(k), c.clone())).collect();
        HeckeElt::from_map(self.n, self.basis, terms)
    }

    /// Product of two T-basis elements.
    pub fn t_mul(&self, other: &HeckeElt) -> Result<HeckeElt> {
        self.check_compatible(other)?;
        self.expect_basis(Basis::T)?;
        let mut out = HeckeElt::zero(self.n, Basis::T);
        for (w, c) in &other.terms {
            let (word, k) = w.reduced_word();
            let mut x = self.clone();
            for i in word {
                x = x.right_mul_t_simple(i);
            }
            x = x.right_mul_omega(k);
            add_scaled(&mut out.terms, &x.terms, c);
        }
        Ok(out)
    }

    /// The bar involution: `q^{1/2} ↦ q^{-1/2}`, `T_w ↦ T_{w^{-1}}^{-1}`.
    pub fn bar(&self) -> Result<HeckeElt> {
        self.expect_basis(Basis::T)?;
        let mut out = HeckeElt::zero(self.n, Basis::T);
        for (w, c) in &self.terms {
            // T_{w^{-1}}^{-1} = T_{s_1}^{-1} ··· T_{s_l}^{-1} T_{ω^k} for w = s_1 ··· s_l ω^k.
            let (word, k) = w.reduced_word();
            let mut x = HeckeElt::t(&AffinePerm::identity(self.n));
            for i in word {
                x = x.right_mul_t_simple_inv(i);
            }
            x = x.right_mul_omega(k);
            add_scaled(&mut out.terms, &x.terms, &c.bar());
        }
        Ok(out)
    }

    /// `ι: Ñ_w ↦ Ñ_{w^{-1}}`, extended linearly.
    pub fn iota(&self) -> Result<HeckeElt> {
        self.expect_basis(Basis::N)?;
        let terms = self.terms.iter().map(|(w, c)| (w.inverse(), c.clone())).collect();
        Ok(HeckeElt::from_map(self.n, Basis::N, terms))
    }

    /// Applies `bar` to every coefficient, leaving basis indices alone.
    pub fn bar_coeffs(&self) -> HeckeElt {
        let terms = self.terms.iter().map(|(w, c)| (w.clone(), c.bar())).collect();
        HeckeElt::from_map(self.n, self.basis, terms)
    }

    /// Multiplies every coefficient by `q^{e/2}`.
    pub fn shift_half(&self, e: i64) -> HeckeElt {
        let terms = self.terms.iter().map(|(w, c)| (w.clone(), c.shift_half(e))).collect();
        HeckeElt::from_map(self.n, self.basis, terms)
    }
}

impl Add for &HeckeElt {
    type Output = HeckeElt;
    fn add(self, rhs: &HeckeElt) -> HeckeElt {
        self.checked_add(rhs).expect("incompatible Hecke elements")
    }
}

impl Sub for &HeckeElt {
    type Output = HeckeElt;
    fn sub(self, rhs: &HeckeElt) -> HeckeElt {
        self.checked_add(&-rhs).expect("incompatible Hecke elements")
    }
}

impl Neg for &HeckeElt {
    type Output = HeckeElt;
    fn neg(self) -> HeckeElt {
        self.scale(&LaurentHalf::constant(-1))
    }
}

impl fmt::Display for HeckeElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let sym = match self.basis {
            Basis::T => "T",
            Basis::N => "N",
        };
        for (k, (w, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "{sym}{w}")?;
            } else {
                write!(f, "({c}){sym}{w}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for HeckeElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    window: Vec<i64>,
    coeff: LaurentHalf,
}

#[derive(Serialize, Deserialize)]
struct HeckeJson {
    basis: Basis,
    n: usize,
    terms: Vec<TermJson>,
}

impl Serialize for HeckeElt {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        HeckeJson {
            basis: self.basis,
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| TermJson {
                    window: w.window().to_vec(),
                    coeff: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for HeckeElt {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = HeckeJson::deserialize(d)?;
        let terms = j
            .terms
            .into_iter()
            .map(|t| AffinePerm::from_window(j.n, t.window).map(|w| (w, t.coeff)))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        HeckeElt::from_terms(j.n, j.basis, terms).map_err(serde::de::Error::custom)
    }
}
