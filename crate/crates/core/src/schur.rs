//! The affine q-Schur algebra on the Kazhdan–Lusztig basis `Ñ^w_{QP}`,
//! computed through its action on `x_P H`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cells::CellAtlas;
use crate::coeff::LaurentHalf;
use crate::error::{Error, Result};
use crate::hecke::{Basis, HeckeElt, KlCache, TermMap};
use crate::weyl::{
    dominance_leq, double_coset, is_max_rep, longest_element, poincare_poly, AffinePerm, GenSet, Partition,
};

/// `(Q, P, w)` with `w` the longest element of `W_Q w W_P`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SchurKey {
    #[serde(rename = "Q")]
    pub q: GenSet,
    #[serde(rename = "P")]
    pub p: GenSet,
    pub w: AffinePerm,
}

impl SchurKey {
    pub fn new(q: GenSet, p: GenSet, w: AffinePerm) -> Result<Self> {
        if !is_max_rep(q, &w, p) {
            return Err(Error::NotMaxRep { element: w.to_string() });
        }
        Ok(SchurKey { q, p, w })
    }
}

impl fmt::Display for SchurKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:?}{:?}", self.w, self.q, self.p)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SchurElt {
    pub n: usize,
    pub basis: Basis,
    pub terms: BTreeMap<SchurKey, LaurentHalf>,
}

impl SchurElt {
    pub fn zero(n: usize, basis: Basis) -> Self {
        SchurElt {
            n,
            basis,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis_element(basis: Basis, key: SchurKey) -> Self {
        SchurElt {
            n: key.w.rank(),
            basis,
            terms: BTreeMap::from([(key, LaurentHalf::one())]),
        }
    }

    pub fn coeff(&self, key: &SchurKey) -> LaurentHalf {
        self.terms.get(key).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, key: SchurKey, c: LaurentHalf) {
        let e = self.terms.entry(key.clone()).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }
}

/// `Ñ^w_{QP}`.
pub fn schur_ntilde(q: GenSet, p: GenSet, w: &AffinePerm) -> Result<SchurElt> {
    Ok(SchurElt::basis_element(Basis::N, SchurKey::new(q, p, w.clone())?))
}

/// `T^w_{QP}`: the map `x_P h ↦ Σ_{y ∈ W_Q w W_P} T_y h`.
pub fn schur_t(q: GenSet, p: GenSet, w: &AffinePerm) -> Result<SchurElt> {
    Ok(SchurElt::basis_element(Basis::T, SchurKey::new(q, p, w.clone())?))
}

/// The image of `x_P` under each basis map, summed, in the T-basis of `H`.
pub fn realize_on_hecke(cache: &KlCache, a: &SchurElt) -> Result<HeckeElt> {
    let mut out = HeckeElt::zero(a.n, Basis::T);
    for (key, c) in &a.terms {
        let image = match a.basis {
            Basis::N => cache.ntilde(&key.w)?,
            Basis::T => HeckeElt::from_terms(
                a.n,
                Basis::T,
                double_coset(key.q, &key.w, key.p)
                    .into_iter()
                    .map(|y| (y, LaurentHalf::one())),
            )?,
        };
        out = out.checked_add(&image.scale(c))?;
    }
    Ok(out)
}

/// `T_s Ñ_w = q Ñ_w` for `s ∈ Q` and `Ñ_w T_t = q Ñ_w` for `t ∈ P`.
pub fn eigen_check(cache: &KlCache, key: &SchurKey) -> Result<bool> {
    let nw = cache.ntilde(&key.w)?;
    let q = LaurentHalf::q_pow(1);
    let target = nw.scale(&q);
    let n = key.w.rank();
    for s in key.q.iter() {
        if HeckeElt::t(&AffinePerm::simple(n, s)?).t_mul(&nw)? != target {
            return Ok(false);
        }
    }
    for t in key.p.iter() {
        if nw.right_mul_t_simple(t) != target {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `f̃_{uRv}^{QwP} = p_R^{-1} f̃_{u,v}^w` for all `w`.
pub fn schur_structure(cache: &KlCache, a: &SchurKey, b: &SchurKey) -> Result<TermMap> {
    if a.p != b.q {
        return Ok(TermMap::new());
    }
    let n = a.w.rank();
    let p_r = poincare_poly(n, a.p);
    let mut out = TermMap::new();
    for (w, c) in cache.f_struct(&a.w, &b.w)? {
        if !is_max_rep(a.q, &w, b.p) {
            return Err(Error::NotMaxRep {
                element: format!("{w} in the product of {a} and {b}"),
            });
        }
        out.insert(w, c.exact_div(&p_r)?);
    }
    Ok(out)
}

/// `h_{uRv}^{QwP} = p_R^{-1} q^{l(w_R)/2} h_{u,v}^w`.
pub fn schur_h(cache: &KlCache, a: &SchurKey, b: &SchurKey) -> Result<TermMap> {
    if a.p != b.q {
        return Ok(TermMap::new());
    }
    let n = a.w.rank();
    let p_r = poincare_poly(n, a.p);
    let lr = longest_element(n, a.p).length() as i64;
    let mut out = TermMap::new();
    for (w, c) in cache.h_struct(&a.w, &b.w)? {
        out.insert(w, c.shift_half(lr).exact_div(&p_r)?);
    }
    Ok(out)
}

/// Composition `a ∘ b` in the Ñ-basis.
pub fn schur_mul(cache: &KlCache, a: &SchurElt, b: &SchurElt) -> Result<SchurElt> {
    for x in [a, b] {
        if x.basis != Basis::N {
            return Err(Error::BasisMismatch {
                expected: "N",
                found: "T",
            });
        }
    }
    if a.n != b.n {
        return Err(Error::RankMismatch(a.n, b.n));
    }
    let mut out = SchurElt::zero(a.n, Basis::N);
    for (ka, ca) in &a.terms {
        for (kb, cb) in &b.terms {
            let c = ca * cb;
            for (w, f) in schur_structure(cache, ka, kb)? {
                out.add_term(
                    SchurKey {
                        q: ka.q,
                        p: kb.p,
                        w,
                    },
                    &f * &c,
                );
            }
        }
    }
    Ok(out)
}

/// `Ñ^w_{QP} ↦ Ñ^{w^{-1}}_{PQ}`.
pub fn iota_schur(a: &SchurElt) -> SchurElt {
    SchurElt {
        n: a.n,
        basis: a.basis,
        terms: a
            .terms
            .iter()
            .map(|(k, c)| {
                (
                    SchurKey {
                        q: k.p,
                        p: k.q,
                        w: k.w.inverse(),
                    },
                    c.clone(),
                )
            })
            .collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdempotentReport {
    #[serde(rename = "P")]
    pub p: GenSet,
    pub p_poly: LaurentHalf,
    /// `Ñ_{w_P}^2 = p_P Ñ_{w_P}`.
    pub square: bool,
    /// `Ñ^{w_P}_{PP}` is idempotent.
    pub idempotent: bool,
    /// `Ñ^{w_P}_{P∅} Ñ_{w_P} Ñ^{w_P}_{∅P} = p_P^2 Ñ^{w_P}_{PP}`.
    pub factorization: bool,
}

impl IdempotentReport {
    pub fn ok(&self) -> bool {
        self.square && self.idempotent && self.factorization
    }
}

pub fn hecke_idempotent_check(cache: &KlCache, p: GenSet) -> Result<IdempotentReport> {
    let n = cache.rank();
    let wp = longest_element(n, p);
    let pp = poincare_poly(n, p);
    let nw = HeckeElt::nt(&wp);
    let square = cache.n_mul(&nw, &nw)? == nw.scale(&pp);

    let e = schur_ntilde(p, p, &wp)?;
    let idempotent = schur_mul(cache, &e, &e)? == e;

    let empty = GenSet::EMPTY;
    let left = schur_ntilde(p, empty, &wp)?;
    let mid = schur_ntilde(empty, empty, &wp)?;
    let right = schur_ntilde(empty, p, &wp)?;
    let prod = schur_mul(cache, &schur_mul(cache, &left, &mid)?, &right)?;
    let mut expected = e.clone();
    for c in expected.terms.values_mut() {
        *c = &pp * &pp;
    }
    let factorization = prod == expected;
    Ok(IdempotentReport {
        p,
        p_poly: pp,
        square,
        idempotent,
        factorization,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factorization {
    pub target: SchurKey,
    pub u: AffinePerm,
    pub v: AffinePerm,
    /// The product is `coeff · Ñ^w_{QP}` modulo higher cells.
    pub coeff: LaurentHalf,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CellGenReport {
    pub lambda: Vec<usize>,
    pub checked: usize,
    pub factored: Vec<Factorization>,
    /// Elements whose factors or product terms could not be certified at
    /// this truncation.
    pub unverified: Vec<String>,
    /// Products whose coefficient on the target is not a unit or which
    /// leave terms in a cell not above `λ`.
    pub failures: Vec<String>,
}

impl CellGenReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Writes each certified `Ñ^w_{QP}` in the cell of `λ` (with `l(w) <= bound`)
/// as `Ñ^u_{QP_λ} Ñ^{w_λ}_{P_λP_λ} Ñ^v_{P_λP}` modulo cells strictly above `λ`
/// in dominance. The factors come from the cell coordinates of `w`: `v` is
/// the preimage of `w_λ` in the left cell of `w` and `u` the preimage, under
/// the left-handed map of the right cell of `w`, of the diagonal coordinate
/// of `w`.
pub fn cell_generation_check(
    cache: &KlCache,
    atlas: &CellAtlas,
    lambda: &Partition,
    bound: usize,
    subsets: &[GenSet],
) -> Result<CellGenReport> {
    let mut report = CellGenReport {
        lambda: lambda.parts().to_vec(),
        ..Default::default()
    };
    let Some(cells) = atlas.cells_for(lambda) else {
        report.unverified.push(format!("no certified cell for {lambda}"));
        return Ok(report);
    };
    let pl = cells.data.p_lambda;
    let wl = cells.data.w_lambda.clone();
    let idem = schur_ntilde(pl, pl, &wl)?;
    for w in cells.members.iter().filter(|w| w.length() <= bound) {
        for &q in subsets {
            for &p in subsets {
                if !is_max_rep(q, w, p) {
                    continue;
                }
                report.checked += 1;
                let target = SchurKey::new(q, p, w.clone())?;
                let Some((i, _, diag, j)) = cells.coordinates(w)? else {
                    report.unverified.push(format!("{target}: no cell coordinates"));
                    continue;
                };
                let (Some(mi), Some(mj)) = (&cells.maps[i], &cells.maps[j]) else {
                    report.unverified.push(format!("{target}: missing cell map"));
                    continue;
                };
                let v = mj.apply_inverse(&wl)?;
                let u = mi.iota_conjugate().apply_inverse(&diag)?;
                let left = schur_ntilde(q, pl, &u)?;
                let right = schur_ntilde(pl, p, &v)?;
                let prod = match schur_mul(cache, &left, &idem).and_then(|x| schur_mul(cache, &x, &right)) {
                    Ok(prod) => prod,
                    Err(Error::TruncationExceeded { .. }) => {
                        report.unverified.push(format!("{target}: factors {u}, {v} exceed the cache"));
                        continue;
                    }
                    Err(e) => return Err(e),
                };
                let coeff = prod.coeff(&target);
                let unit = coeff
                    .as_monomial()
                    .is_some_and(|(e, c)| e % 2 == 0 && (c == &1.into() || c == &(-1).into()));
                if !unit {
                    report.failures.push(format!("{target}: coefficient {coeff} from {u}, {v}"));
                    continue;
                }
                let mut clean = true;
                for key in prod.terms.keys().filter(|k| *k != &target) {
                    match atlas.cell_of(&key.w) {
                        Some(c) if c.lambda() != lambda && dominance_leq(lambda, c.lambda()) => {}
                        Some(c) => {
                            clean = false;
                            report.failures.push(format!("{target}: stray term {key} in cell {}", c.lambda()));
                        }
                        None => {
                            clean = false;
                            report.unverified.push(format!("{target}: uncertified term {key}"));
                        }
                    }
                }
                if clean {
                    report.factored.push(Factorization { target, u, v, coeff });
                }
            }
        }
    }
    Ok(report)
}
