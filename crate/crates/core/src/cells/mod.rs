//! Star operations, certified cell membership and the normalised maps
//! between left cells.

mod atlas;
mod check;

pub use atlas::{CellAtlas, LambdaCells};
pub use check::{check_star_identity, StarReport, StarViolation};

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hecke::{add_term, Basis, HeckeElt, TermMap};
use crate::weyl::AffinePerm;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    fn flip(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }
}

fn require_rank(w: &AffinePerm) -> Result<usize> {
    let n = w.rank();
    if n < 3 {
        return Err(Error::UnsupportedRank(n));
    }
    Ok(n)
}

/// `w ∈ D_R(s_i)`: exactly one of `s_i, s_{i+1}` is a right descent.
pub fn in_dr(w: &AffinePerm, i: usize) -> Result<bool> {
    let n = require_rank(w)?;
    Ok(w.has_right_descent(i % n) != w.has_right_descent((i + 1) % n))
}

/// `w ∈ D_L(s_i)`.
pub fn in_dl(w: &AffinePerm, i: usize) -> Result<bool> {
    let n = require_rank(w)?;
    let inv = w.inverse();
    Ok(inv.has_right_descent(i % n) != inv.has_right_descent((i + 1) % n))
}

pub fn in_domain(w: &AffinePerm, side: Side, i: usize) -> Result<bool> {
    match side {
        Side::Left => in_dl(w, i),
        Side::Right => in_dr(w, i),
    }
}

/// The right star operation `w ↦ w*` on `D_R(s_i)`.
pub fn right_star(w: &AffinePerm, i: usize) -> Result<AffinePerm> {
    let n = require_rank(w)?;
    if !in_dr(w, i)? {
        return Err(Error::StarDomain {
            element: w.to_string(),
            side: "right",
            index: i,
        });
    }
    let a = w.right_mul_simple(i % n);
    if in_dr(&a, i)? {
        Ok(a)
    } else {
        Ok(w.right_mul_simple((i + 1) % n))
    }
}

/// The left star operation `w ↦ *w` on `D_L(s_i)`.
pub fn left_star(w: &AffinePerm, i: usize) -> Result<AffinePerm> {
    let n = require_rank(w)?;
    if !in_dl(w, i)? {
        return Err(Error::StarDomain {
            element: w.to_string(),
            side: "left",
            index: i,
        });
    }
    let a = w.left_mul_simple(i % n);
    if in_dl(&a, i)? {
        Ok(a)
    } else {
        Ok(w.left_mul_simple((i + 1) % n))
    }
}

pub fn star(w: &AffinePerm, side: Side, i: usize) -> Result<AffinePerm> {
    match side {
        Side::Left => left_star(w, i),
        Side::Right => right_star(w, i),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StarOp {
    pub side: Side,
    pub index: usize,
}

/// A fixed sequence of star operations followed by a power of `ω`.
///
/// For right-handed sequences the image of `w` is `w** ω^{-i_gamma}`; the
/// left-handed mirror (see [`StarSequence::iota_conjugate`]) sends `w` to
/// `ω^{i_gamma} **w`. `j_gamma` counts the star operations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StarSequence {
    pub ops: Vec<StarOp>,
    pub i_gamma: i64,
    pub j_gamma: usize,
    pub omega_side: Side,
}

impl Default for StarSequence {
    fn default() -> Self {
        StarSequence {
            ops: Vec::new(),
            i_gamma: 0,
            j_gamma: 0,
            omega_side: Side::Right,
        }
    }
}

impl StarSequence {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn right(indices: &[usize], i_gamma: i64) -> Self {
        StarSequence {
            ops: indices
                .iter()
                .map(|&index| StarOp {
                    side: Side::Right,
                    index,
                })
                .collect(),
            i_gamma,
            j_gamma: indices.len(),
            omega_side: Side::Right,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.ops.is_empty() && self.i_gamma == 0
    }

    pub fn push(&mut self, op: StarOp) {
        self.ops.push(op);
        self.j_gamma = self.ops.len();
    }

    /// The sequence implementing `ι ∘ φ ∘ ι`: every operation changes side.
    pub fn iota_conjugate(&self) -> Self {
        StarSequence {
            ops: self
                .ops
                .iter()
                .map(|op| StarOp {
                    side: op.side.flip(),
                    index: op.index,
                })
                .collect(),
            i_gamma: self.i_gamma,
            j_gamma: self.j_gamma,
            omega_side: self.omega_side.flip(),
        }
    }

    /// `w**`: the star operations only.
    pub fn apply_stars(&self, w: &AffinePerm) -> Result<AffinePerm> {
        let mut x = w.clone();
        for op in &self.ops {
            x = star(&x, op.side, op.index)?;
        }
        Ok(x)
    }

    fn apply_omega(&self, w: &AffinePerm, sign: i64) -> AffinePerm {
        match self.omega_side {
            Side::Right => w.right_mul_omega(-sign * self.i_gamma),
            Side::Left => w.left_mul_omega(sign * self.i_gamma),
        }
    }

    /// The basis index of the image of `Ñ_w`.
    pub fn apply(&self, w: &AffinePerm) -> Result<AffinePerm> {
        Ok(self.apply_omega(&self.apply_stars(w)?, 1))
    }

    /// Undoes [`apply`](Self::apply): each star is an involution on its domain.
    pub fn apply_inverse(&self, w: &AffinePerm) -> Result<AffinePerm> {
        let mut x = self.apply_omega(w, -1);
        for op in self.ops.iter().rev() {
            x = star(&x, op.side, op.index)?;
        }
        Ok(x)
    }

    /// `φ(Ñ_w) = q^{e/2} Ñ_{w'}` with `e = l(w) - l(w**) + j_gamma`; returns `(e, w')`.
    pub fn phi(&self, w: &AffinePerm) -> Result<(i64, AffinePerm)> {
        let stars = self.apply_stars(w)?;
        let e = w.length() as i64 - stars.length() as i64 + self.j_gamma as i64;
        Ok((e, self.apply_omega(&stars, 1)))
    }

    /// The map `φ` on an Ñ-basis element.
    pub fn apply_phi(&self, a: &HeckeElt) -> Result<HeckeElt> {
        if a.basis() != Basis::N {
            return Err(Error::BasisMismatch {
                expected: "N",
                found: "T",
            });
        }
        let mut out = TermMap::new();
        for (w, c) in a.terms() {
            let (e, img) = self.phi(w)?;
            add_term(&mut out, img, c.shift_half(e));
        }
        HeckeElt::from_terms(a.rank(), Basis::N, out)
    }
}

impl fmt::Display for StarSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, op) in self.ops.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}:{}", op.side.name(), op.index)?;
        }
        write!(f, "] i={} j={}", self.i_gamma, self.j_gamma)
    }
}

/// Closure of `w` under star operations on one side, restricted to length at
/// most `bound`, each member with a witness sequence from `w`.
///
/// Right stars preserve the right cell and left stars the left cell, so the
/// members of a right orbit are certified right-cell equivalent to `w` and
/// those of a left orbit left-cell equivalent.
pub fn star_orbit(w: &AffinePerm, side: Side, bound: usize) -> Result<Vec<(AffinePerm, StarSequence)>> {
    let n = require_rank(w)?;
    let mut seen = BTreeSet::new();
    seen.insert(w.clone());
    let mut out = vec![(w.clone(), StarSequence {
        omega_side: side,
        ..StarSequence::default()
    })];
    let mut queue = VecDeque::from([0usize]);
    while let Some(k) = queue.pop_front() {
        let (x, seq) = out[k].clone();
        for i in 0..n {
            if !in_domain(&x, side, i)? {
                continue;
            }
            let y = star(&x, side, i)?;
            if y.length() > bound || !seen.insert(y.clone()) {
                continue;
            }
            let mut s = seq.clone();
            s.push(StarOp { side, index: i });
            out.push((y, s));
            queue.push_back(out.len() - 1);
        }
    }
    Ok(out)
}

pub fn right_star_orbit(w: &AffinePerm, bound: usize) -> Result<Vec<(AffinePerm, StarSequence)>> {
    star_orbit(w, Side::Right, bound)
}

pub fn left_star_orbit(w: &AffinePerm, bound: usize) -> Result<Vec<(AffinePerm, StarSequence)>> {
    star_orbit(w, Side::Left, bound)
}

/// Searches for a sequence of right star operations followed by `ω^{-i}`,
/// `0 <= i < n`, carrying `source` into `target`.
///
/// Images longer than every element of `target`, or with an ω-shift outside
/// its range, fall outside the truncation and are not tested; at least one image must be tested. The search is
/// breadth first with operations tried in increasing index order, so the
/// shortest, lexicographically first sequence is returned.
pub fn find_cell_map(
    source: &BTreeSet<AffinePerm>,
    target: &BTreeSet<AffinePerm>,
    max_ops: usize,
) -> Option<StarSequence> {
    let first = source.iter().next()?;
    let n = first.rank() as i64;
    let top = target.iter().map(|w| w.length()).max()?;
    let lo = target.iter().map(|w| w.omega_shift()).min()?;
    let hi = target.iter().map(|w| w.omega_shift()).max()?;
    let fits = |images: &[AffinePerm], i: i64| {
        let mut tested = 0;
        for x in images {
            let y = x.right_mul_omega(-i);
            if y.length() > top || y.omega_shift() < lo || y.omega_shift() > hi {
                continue;
            }
            if !target.contains(&y) {
                return false;
            }
            tested += 1;
        }
        tested > 0
    };
    let start: Vec<AffinePerm> = source.iter().cloned().collect();
    let mut seen = BTreeSet::new();
    seen.insert(start.clone());
    let mut queue = VecDeque::from([(start, Vec::<usize>::new())]);
    while let Some((images, ops)) = queue.pop_front() {
        for i in 0..n {
            if fits(&images, i) {
                return Some(StarSequence::right(&ops, i));
            }
        }
        if ops.len() >= max_ops || n < 3 {
            continue;
        }
        for idx in 0..n as usize {
            let all = images.iter().all(|x| in_dr(x, idx).unwrap_or(false));
            if !all {
                continue;
            }
            let next: Vec<AffinePerm> = images.iter().map(|x| right_star(x, idx).unwrap()).collect();
            let key: Vec<AffinePerm> = {
                let mut k = next.clone();
                k.sort();
                k
            };
            if seen.insert(key) {
                let mut o = ops.clone();
                o.push(idx);
                queue.push_back((next, o));
            }
        }
    }
    None
}
