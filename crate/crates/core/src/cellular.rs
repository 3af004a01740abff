//! The chain of two-sided ideals of the affine Schur algebra and checks of
//! its cellular structure on samples.

use num_bigint::BigUint;
use serde::Serialize;

use crate::asymptotic::{a_value, gamma_tilde_product, lattice_to_weyl, DominantTuple, Generator, LatticeTable};
use crate::cells::{CellAtlas, LambdaCells};
use crate::coeff::LaurentHalf;
use crate::error::{Error, Result};
use crate::hecke::KlCache;
use crate::schur::{schur_structure, SchurKey};
use crate::weyl::{partitions, AffinePerm, Block, GenSet, PartitionData};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorInfo {
    pub generator: Generator,
    pub tuple: DominantTuple,
    pub element: AffinePerm,
}

/// One layer of the chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellDatum {
    pub lambda: Vec<usize>,
    pub v_rank: BigUint,
    pub u_rank: BigUint,
    pub a_value: usize,
    pub w_lambda: AffinePerm,
    pub p_lambda: GenSet,
    pub blocks: Vec<Block>,
    /// `Ñ_{w(y_{ij})}` and the inverses of `Ñ_{w(y_{i m_i})}`.
    pub generators: Vec<GeneratorInfo>,
    /// The idempotent `Ñ^{w_λ}_{P_λ P_λ}` generating the layer.
    pub idempotent: SchurKey,
}

/// Partitions of `n` in an order extending reverse dominance, so that the
/// ideal spanned by the first `k` layers is two-sided for each `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellChain {
    pub n: usize,
    pub order: Vec<CellDatum>,
}

pub fn build_chain(n: usize) -> Result<CellChain> {
    if n == 0 {
        return Err(Error::InvalidPartition(Vec::new()));
    }
    let mut order = Vec::new();
    for lambda in partitions(n) {
        let data = PartitionData::new(&lambda);
        let mut generators = Vec::new();
        for g in Generator::all(&data) {
            if g == Generator::Identity {
                continue;
            }
            let tuple = g.tuple(&data)?;
            let element = lattice_to_weyl(&data, &tuple)?;
            generators.push(GeneratorInfo {
                generator: g,
                tuple,
                element,
            });
        }
        order.push(CellDatum {
            lambda: lambda.parts().to_vec(),
            v_rank: data.n_cells(),
            u_rank: data.m_cells(),
            a_value: a_value(&data),
            w_lambda: data.w_lambda.clone(),
            p_lambda: data.p_lambda,
            blocks: data.blocks.clone(),
            generators,
            idempotent: SchurKey::new(data.p_lambda, data.p_lambda, data.w_lambda.clone())?,
        });
    }
    Ok(CellChain { n, order })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct InvolutionReport {
    pub lambda: Vec<usize>,
    pub checked: usize,
    pub skipped: usize,
    pub violations: Vec<String>,
}

impl InvolutionReport {
    pub fn no_coverage(&self) -> bool {
        self.checked == 0
    }
}

/// For each sample `w ∈ Γ_j ∩ ι(Γ_i)` with coordinates `(i, q^{e/2} t_d, j)`,
/// checks that `w^{-1}` has coordinates `(j, q^{e/2} σ(t_d), i)`, both computed
/// from scratch.
pub fn check_involution_compat(
    cells: &LambdaCells,
    table: &LatticeTable,
    samples: &[AffinePerm],
) -> Result<InvolutionReport> {
    let mut report = InvolutionReport {
        lambda: cells.lambda().parts().to_vec(),
        ..Default::default()
    };
    for w in samples {
        let inv = w.inverse();
        let (Some((i, e, d, j)), Some((i2, e2, d2, j2))) = (cells.coordinates(w)?, cells.coordinates(&inv)?) else {
            report.skipped += 1;
            continue;
        };
        let Some(x) = table.tuple_of(&d) else {
            report.skipped += 1;
            continue;
        };
        let sigma = match table.sigma_asym(x) {
            Ok(s) => s,
            Err(Error::NotInTable(_)) => {
                report.skipped += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        report.checked += 1;
        let expected = table.weyl(&sigma).cloned();
        if (i2, j2) != (j, i) || e2 != e || expected.as_ref() != Some(&d2) {
            report.violations.push(format!(
                "{w}: coordinates ({i}, q^({e}/2) {d}, {j}) but the inverse gives ({i2}, q^({e2}/2) {d2}, {j2})"
            ));
        }
    }
    Ok(report)
}

/// A sample `(u, v, y, w)` for the commutation of the two actions: `u`
/// indexes `Ñ^u_{QP}`, `v` indexes `Ñ^v_{P∅}`, `y` indexes `Ñ^y_{Q∅}`, and
/// `w` is a generator of the diagonal algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Quadruple {
    #[serde(rename = "Q")]
    pub q: GenSet,
    #[serde(rename = "P")]
    pub p: GenSet,
    pub u: AffinePerm,
    pub v: AffinePerm,
    pub y: AffinePerm,
    pub generator: Generator,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BimoduleViolation {
    pub sample: Quadruple,
    pub lhs: LaurentHalf,
    pub rhs: LaurentHalf,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BimoduleReport {
    pub lambda: Vec<usize>,
    pub checked: usize,
    /// Checked samples where the two sides are not both zero.
    pub nonzero: usize,
    pub unverified: usize,
    pub violations: Vec<BimoduleViolation>,
}

enum Side<T> {
    Value(T),
    Unverified,
}

use Side::{Unverified, Value};

fn gamma_tilde(data: &PartitionData, table: &LatticeTable, a: &AffinePerm, gen: Generator, c: &AffinePerm) -> Result<Side<LaurentHalf>> {
    let (Some(x), Some(z)) = (table.tuple_of(a), table.tuple_of(c)) else {
        return Ok(Unverified);
    };
    Ok(Value(
        gamma_tilde_product(data, x, gen)?.remove(z).unwrap_or_default(),
    ))
}

fn lhs(
    cache: &KlCache,
    atlas: &CellAtlas,
    cells: &LambdaCells,
    table: &LatticeTable,
    s: &Quadruple,
    j: usize,
) -> Result<Side<LaurentHalf>> {
    let data = &cells.data;
    let Some((_, yj)) = cells.phi_iota(j, &s.y)? else {
        return Ok(Unverified);
    };
    let a = SchurKey::new(s.q, s.p, s.u.clone())?;
    let b = SchurKey::new(s.p, GenSet::EMPTY, s.v.clone())?;
    let rw = data.w_lambda.right_descents();
    let mut sum = LaurentHalf::zero();
    for (x, f) in schur_structure(cache, &a, &b)? {
        if x.right_descents() != rw {
            continue;
        }
        match (cells.left_index(&x), cells.right_index(&x)) {
            (Some(0), Some(k)) if k == j => {}
            (Some(_), Some(_)) => continue,
            _ => {
                // Positively certified in another two-sided cell.
                if atlas.cell_of(&x).is_some_and(|c| c.lambda() != cells.lambda()) {
                    continue;
                }
                return Ok(Unverified);
            }
        }
        let Some((_, xj)) = cells.phi_iota(j, &x)? else {
            return Ok(Unverified);
        };
        match gamma_tilde(data, table, &xj, s.generator, &yj)? {
            Value(g) => sum += &f * &g,
            Unverified => return Ok(Unverified),
        }
    }
    Ok(Value(sum))
}

fn rhs(
    cache: &KlCache,
    cells: &LambdaCells,
    table: &LatticeTable,
    s: &Quadruple,
    i: usize,
) -> Result<Side<LaurentHalf>> {
    let data = &cells.data;
    let (Some((_, vi)), Some(seq)) = (cells.phi_iota(i, &s.v)?, cells.maps.get(i).cloned().flatten()) else {
        return Ok(Unverified);
    };
    let Some(xv) = table.tuple_of(&vi) else {
        return Ok(Unverified);
    };
    let left = seq.iota_conjugate();
    let a = SchurKey::new(s.q, s.p, s.u.clone())?;
    let mut sum = LaurentHalf::zero();
    for (z, g) in gamma_tilde_product(data, xv, s.generator)? {
        let xi = lattice_to_weyl(data, &z)?;
        let x = left.apply_inverse(&xi)?;
        if cells.members.contains(&x) && (cells.left_index(&x) != Some(0) || cells.right_index(&x) != Some(i)) {
            return Err(Error::Lattice(format!("{x} does not lie in the expected cells")));
        }
        let b = SchurKey::new(s.p, GenSet::EMPTY, x)?;
        let f = schur_structure(cache, &a, &b)?.remove(&s.y).unwrap_or_default();
        sum += &f * &g;
    }
    Ok(Value(sum))
}

/// Compares `Σ_x f̃_{uPv}^{Qx∅} γ̃_{x_j,w}^{y_j}` over `x ∈ Ψ^λ ∩ ι(Ψ_j)` with
/// `Σ_x f̃_{uPx}^{Qy∅} γ̃_{v_i,w}^{x_i}` over `x ∈ Ψ^λ ∩ ι(Ψ_i)`, where `y` lies in
/// `ι(Ψ_j)`, `v` in `ι(Ψ_i)`, and `x_k` is the diagonal image of `x` under the
/// left-handed cell map of `ι(Ψ_k)`. Structure constants come from the Hecke
/// algebra, γ̃ from the Pieri rule on the lattice. The right-hand sum runs
/// over the finitely many `x` with `γ̃_{v_i,w}^{x_i} ≠ 0`, found by inverting
/// the cell map on the Pieri terms.
pub fn check_bimodule_commute(
    cache: &KlCache,
    atlas: &CellAtlas,
    cells: &LambdaCells,
    table: &LatticeTable,
    samples: &[Quadruple],
) -> Result<BimoduleReport> {
    let mut report = BimoduleReport {
        lambda: cells.lambda().parts().to_vec(),
        ..Default::default()
    };
    for s in samples {
        let (Some(i), Some(j)) = (cells.right_index(&s.v), cells.right_index(&s.y)) else {
            report.unverified += 1;
            continue;
        };
        if !cells.in_base_left_cell(&s.v) || !cells.in_base_left_cell(&s.y) {
            report.unverified += 1;
            continue;
        }
        let l = lhs(cache, atlas, cells, table, s, j);
        let r = rhs(cache, cells, table, s, i);
        let (l, r) = match (l, r) {
            (Err(Error::TruncationExceeded { .. }), _) | (_, Err(Error::TruncationExceeded { .. })) => {
                report.unverified += 1;
                continue;
            }
            (l, r) => (l?, r?),
        };
        match (l, r) {
            (Value(l), Value(r)) => {
                report.checked += 1;
                if !l.is_zero() || !r.is_zero() {
                    report.nonzero += 1;
                }
                if l != r {
                    report.violations.push(BimoduleViolation {
                        sample: s.clone(),
                        lhs: l,
                        rhs: r,
                    });
                }
            }
            _ => report.unverified += 1,
        }
    }
    Ok(report)
}

/// Samples for [`check_bimodule_commute`]: every `u` of length at most
/// `u_len` that is a maximal `(Q, P)` representative, every pair `v, y` of
/// certified members of `Γ^λ` of length at most `vy_len` with `P ⊆ L(v)` and
/// `Q ⊆ L(y)`, and every generator.
pub fn sample_quadruples(
    atlas: &CellAtlas,
    cells: &LambdaCells,
    q: GenSet,
    p: GenSet,
    u_len: usize,
    vy_len: usize,
) -> Vec<Quadruple> {
    let base: Vec<&AffinePerm> = cells
        .left_cells
        .first()
        .map(|c| c.iter().filter(|w| w.length() <= vy_len).collect())
        .unwrap_or_default();
    let us: Vec<&AffinePerm> = atlas
        .elements()
        .iter()
        .filter(|u| u.length() <= u_len && q.is_subset(u.left_descents()) && p.is_subset(u.right_descents()))
        .collect();
    let mut out = Vec::new();
    for u in &us {
        for v in base.iter().filter(|v| p.is_subset(v.left_descents())) {
            for y in base.iter().filter(|y| q.is_subset(y.left_descents())) {
                for g in Generator::all(&cells.data) {
                    out.push(Quadruple {
                        q,
                        p,
                        u: (*u).clone(),
                        v: (*v).clone(),
                        y: (*y).clone(),
                        generator: g,
                    });
                }
            }
        }
    }
    out
}
