use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_traits::Zero;

use super::{add_scaled, add_term, Basis, HeckeElt, TermMap};
use crate::coeff::LaurentHalf;
use crate::error::{Error, Result};
use crate::weyl::AffinePerm;

/// T-expansion of `Ñ_w` for an element `w` of `W_aff`, together with the
/// nonzero `μ(y, w)` for `y < w`.
struct Entry {
    expansion: TermMap,
    mu_below: Vec<(AffinePerm, BigInt)>,
}

type Product = Arc<TermMap>;

/// Memoised Kazhdan–Lusztig data and `Ñ`-basis structure constants for one
/// rank, confined to elements of length at most `max_len`.
///
/// Only elements of `W_aff` are stored; everything else follows from
/// `P_{yω^k, wω^k} = P_{y,w}` and `Ñ_{wω^k} = Ñ_w ω^k`.
pub struct KlCache {
    n: usize,
    max_len: usize,
    entries: RwLock<HashMap<AffinePerm, Arc<Entry>>>,
    products: RwLock<HashMap<(AffinePerm, AffinePerm), Product>>,
}

impl KlCache {
    pub fn new(n: usize, max_len: usize) -> Self {
        KlCache {
            n,
            max_len,
            entries: RwLock::new(HashMap::new()),
            products: RwLock::new(HashMap::new()),
        }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    fn check_rank(&self, w: &AffinePerm) -> Result<()> {
        if w.rank() != self.n {
            return Err(Error::RankMismatch(self.n, w.rank()));
        }
        Ok(())
    }

    fn entry(&self, w: &AffinePerm) -> Result<Arc<Entry>> {
        debug_assert_eq!(w.omega_shift(), 0);
        if let Some(e) = self.entries.read().unwrap().get(w) {
            return Ok(e.clone());
        }
        let len = w.length();
        if len > self.max_len {
            return Err(Error::TruncationExceeded {
                length: len,
                bound: self.max_len,
            });
        }
        let expansion = if len == 0 {
            let mut m = TermMap::new();
            m.insert(w.clone(), LaurentHalf::one());
            m
        } else {
            // Ñ_v Ñ_s = Ñ_w + Σ_{z < v, zs < z} μ(z, v) q^{(l(w) - l(z))/2} Ñ_z with v = ws < w.
            let s = w.right_descents().iter().next().unwrap();
            let v = w.right_mul_simple(s);
            let ev = self.entry(&v)?;
            let nv = HeckeElt::from_map(self.n, Basis::T, ev.expansion.clone());
            let mut x = (&nv + &nv.right_mul_t_simple(s)).into_terms();
            for (z, mu) in &ev.mu_below {
                if z.has_right_descent(s) {
                    let ez = self.entry(z)?;
                    let c = LaurentHalf::monomial((len - z.length()) as i64, -mu);
                    add_scaled(&mut x, &ez.expansion, &c);
                }
            }
            x
        };
        let mu_below = expansion
            .iter()
            .filter_map(|(y, p)| {
                let d = (len - y.length()) as i64;
                if d % 2 == 1 {
                    let m = p.coeff(d - 1);
                    (!m.is_zero()).then(|| (y.clone(), m))
                } else {
                    None
                }
            })
            .collect();
        let entry = Arc::new(Entry {
            expansion,
            mu_below,
        });
        let mut table = self.entries.write().unwrap();
        Ok(table.entry(w.clone()).or_insert(entry).clone())
    }

    /// `P_{y,w}`; zero unless `y ≤ w`.
    pub fn kl_poly(&self, y: &AffinePerm, w: &AffinePerm) -> Result<LaurentHalf> {
        self.check_rank(y)?;
        self.check_rank(w)?;
        let k = w.omega_shift();
        if y.omega_shift() != k {
            return Ok(LaurentHalf::zero());
        }
        let e = self.entry(&w.right_mul_omega(-k))?;
        Ok(e.expansion.get(&y.right_mul_omega(-k)).cloned().unwrap_or_default())
    }

    /// `μ(y, w)`: the coefficient of `q^{(l(w) - l(y) - 1)/2}` in `P_{y,w}`.
    pub fn mu(&self, y: &AffinePerm, w: &AffinePerm) -> Result<BigInt> {
        let (ly, lw) = (y.length(), w.length());
        if ly >= lw || (lw - ly) % 2 == 0 {
            return Ok(BigInt::zero());
        }
        Ok(self.kl_poly(y, w)?.coeff((lw - ly - 1) as i64))
    }

    /// All `y < w` with `μ(y, w) ≠ 0`.
    pub fn mu_below(&self, w: &AffinePerm) -> Result<Vec<(AffinePerm, BigInt)>> {
        self.check_rank(w)?;
        let (wa, k) = w.omega_decompose();
        let e = self.entry(&wa)?;
        Ok(e.mu_below
            .iter()
            .map(|(y, m)| (y.right_mul_omega(k), m.clone()))
            .collect())
    }

    /// `Ñ_w = Σ_{y ≤ w} P_{y,w} T_y`.
    pub fn ntilde(&self, w: &AffinePerm) -> Result<HeckeElt> {
        self.check_rank(w)?;
        let (wa, k) = w.omega_decompose();
        let e = self.entry(&wa)?;
        Ok(HeckeElt::from_map(self.n, Basis::T, e.expansion.clone()).right_mul_omega(k))
    }

    /// T-basis to Ñ-basis, eliminating the longest remaining term each step.
    pub fn to_ntilde(&self, a: &HeckeElt) -> Result<HeckeElt> {
        a.expect_basis(Basis::T)?;
        self.check_rank_elt(a)?;
        let mut rest = a.terms().clone();
        let mut out = TermMap::new();
        while let Some(top) = rest.keys().max_by_key(|w| (w.length(), (*w).clone())).cloned() {
            let c = rest[&top].clone();
            let nw = self.ntilde(&top)?;
            add_scaled(&mut rest, nw.terms(), &-&c);
            add_term(&mut out, top, c);
        }
        Ok(HeckeElt::from_map(self.n, Basis::N, out))
    }

    /// Ñ-basis to T-basis.
    pub fn to_t(&self, a: &HeckeElt) -> Result<HeckeElt> {
        a.expect_basis(Basis::N)?;
        self.check_rank_elt(a)?;
        let mut out = TermMap::new();
        for (w, c) in a.terms() {
            add_scaled(&mut out, self.ntilde(w)?.terms(), c);
        }
        Ok(HeckeElt::from_map(self.n, Basis::T, out))
    }

    fn check_rank_elt(&self, a: &HeckeElt) -> Result<()> {
        if a.rank() != self.n {
            return Err(Error::RankMismatch(self.n, a.rank()));
        }
        Ok(())
    }

    /// `Ñ_{s_i} Ñ_y` in the Ñ-basis:
    /// `(1 + q) Ñ_y` if `s_i y < y`, otherwise
    /// `Ñ_{s_i y} + Σ_{x < y, s_i x < x} μ(x, y) q^{(1 + l(y) - l(x))/2} Ñ_x`.
    pub fn left_simple_action(&self, i: usize, y: &AffinePerm) -> Result<TermMap> {
        self.check_rank(y)?;
        let mut out = TermMap::new();
        if y.has_left_descent(i) {
            out.insert(y.clone(), LaurentHalf::from_q_coeffs(&[1, 1]));
            return Ok(out);
        }
        out.insert(y.left_mul_simple(i), LaurentHalf::one());
        let ly = y.length();
        for (x, mu) in self.mu_below(y)? {
            if x.has_left_descent(i) {
                let c = LaurentHalf::monomial((1 + ly - x.length()) as i64, mu);
                add_term(&mut out, x, c);
            }
        }
        Ok(out)
    }

    /// `Ñ_y Ñ_{s_i}` in the Ñ-basis (mirror image of
    /// [`left_simple_action`](Self::left_simple_action)).
    pub fn right_simple_action(&self, y: &AffinePerm, i: usize) -> Result<TermMap> {
        self.check_rank(y)?;
        let mut out = TermMap::new();
        if y.has_right_descent(i) {
            out.insert(y.clone(), LaurentHalf::from_q_coeffs(&[1, 1]));
            return Ok(out);
        }
        out.insert(y.right_mul_simple(i), LaurentHalf::one());
        let ly = y.length();
        for (x, mu) in self.mu_below(y)? {
            if x.has_right_descent(i) {
                let c = LaurentHalf::monomial((1 + ly - x.length()) as i64, mu);
                add_term(&mut out, x, c);
            }
        }
        Ok(out)
    }

    /// `Ñ_u Ñ_v` for `u` in `W_aff`, by induction on `l(u)`:
    /// with `s ∈ L(u)` and `u = s u'`,
    /// `Ñ_u Ñ_v = Ñ_s (Ñ_{u'} Ñ_v) - Σ_{z < u', sz < z} μ(z, u') q^{(l(u) - l(z))/2} Ñ_z Ñ_v`.
    fn product_affine(&self, u: &AffinePerm, v: &AffinePerm) -> Result<Product> {
        if u.is_identity() {
            let mut m = TermMap::new();
            m.insert(v.clone(), LaurentHalf::one());
            return Ok(Arc::new(m));
        }
        let key = (u.clone(), v.clone());
        if let Some(p) = self.products.read().unwrap().get(&key) {
            return Ok(p.clone());
        }
        let s = u.left_descents().iter().next().unwrap();
        let u2 = u.left_mul_simple(s);
        let base = self.product_affine(&u2, v)?;
        let mut out = TermMap::new();
        for (x, c) in base.iter() {
            add_scaled(&mut out, &self.left_simple_action(s, x)?, c);
        }
        let lu = u.length();
        for (z, mu) in self.mu_below(&u2)? {
            if z.has_left_descent(s) {
                let c = LaurentHalf::monomial((lu - z.length()) as i64, -mu);
                add_scaled(&mut out, &*self.product_affine(&z, v)?, &c);
            }
        }
        let out = Arc::new(out);
        let mut table = self.products.write().unwrap();
        Ok(table.entry(key).or_insert(out).clone())
    }

    /// `f̃_{u,v}^w` for all `w`: the coefficients of `Ñ_u Ñ_v` in the Ñ-basis.
    pub fn f_struct(&self, u: &AffinePerm, v: &AffinePerm) -> Result<TermMap> {
        self.check_rank(u)?;
        self.check_rank(v)?;
        let (ua, i) = u.omega_decompose();
        // Ñ_{u'ω^i} Ñ_v = Ñ_{u'} Ñ_{ω^i v}
        Ok((*self.product_affine(&ua, &v.left_mul_omega(i))?).clone())
    }

    /// `h_{u,v}^w = q^{-(l(u) + l(v) - l(w))/2} f̃_{u,v}^w`.
    pub fn h_struct(&self, u: &AffinePerm, v: &AffinePerm) -> Result<TermMap> {
        let total = (u.length() + v.length()) as i64;
        Ok(self
            .f_struct(u, v)?
            .into_iter()
            .map(|(w, f)| {
                let e = w.length() as i64 - total;
                (w, f.shift_half(e))
            })
            .collect())
    }

    /// Product of two Ñ-basis elements.
    pub fn n_mul(&self, a: &HeckeElt, b: &HeckeElt) -> Result<HeckeElt> {
        a.expect_basis(Basis::N)?;
        b.expect_basis(Basis::N)?;
        self.check_rank_elt(a)?;
        self.check_rank_elt(b)?;
        let mut out = TermMap::new();
        for (u, c) in a.terms() {
            for (v, d) in b.terms() {
                add_scaled(&mut out, &self.f_struct(u, v)?, &(c * d));
            }
        }
        Ok(HeckeElt::from_map(self.n, Basis::N, out))
    }

    /// Product in whichever basis both factors use.
    pub fn mul(&self, a: &HeckeElt, b: &HeckeElt) -> Result<HeckeElt> {
        match a.basis() {
            Basis::T => a.t_mul(b),
            Basis::N => self.n_mul(a, b),
        }
    }

    /// Number of memoised KL entries and products.
    pub fn stats(&self) -> (usize, usize) {
        (
            self.entries.read().unwrap().len(),
            self.products.read().unwrap().len(),
        )
    }
}
