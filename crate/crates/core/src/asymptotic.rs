//! The a-function, γ coefficients, the dominant lattice of a partition and
//! the Pieri product on the diagonal cell.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::coeff::LaurentHalf;
use crate::error::{Error, Result};
use crate::hecke::KlCache;
use crate::weyl::{AffinePerm, PartitionData};

/// `a` on the two-sided cell of `λ`: the length of `w_λ`.
pub fn a_value(data: &PartitionData) -> usize {
    data.w_lambda.length()
}

/// The coefficient of `q^{a/2}` in `h_{u,v}^w`.
pub fn gamma_from_h(cache: &KlCache, u: &AffinePerm, v: &AffinePerm, w: &AffinePerm, a: usize) -> Result<BigInt> {
    let h = cache.h_struct(u, v)?;
    Ok(h.get(w).map(|c| c.coeff(a as i64)).unwrap_or_default())
}

/// A point of the dominant lattice: one weakly decreasing tuple per block.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DominantTuple(pub Vec<Vec<i64>>);

impl DominantTuple {
    pub fn new(data: &PartitionData, blocks: Vec<Vec<i64>>) -> Result<Self> {
        let t = DominantTuple(blocks);
        t.validate(data)?;
        Ok(t)
    }

    pub fn zero(data: &PartitionData) -> Self {
        DominantTuple(data.blocks.iter().map(|b| vec![0; b.m]).collect())
    }

    /// `y_{ij}`: ones in the first `j` entries of block `i` (1-based).
    pub fn generator(data: &PartitionData, i: usize, j: usize) -> Result<Self> {
        let mut t = Self::zero(data);
        let block = i
            .checked_sub(1)
            .and_then(|k| t.0.get_mut(k))
            .ok_or_else(|| Error::InvalidTuple(format!("no block {i}")))?;
        if j == 0 || j > block.len() {
            return Err(Error::InvalidTuple(format!("generator ({i},{j}) out of range")));
        }
        for e in block.iter_mut().take(j) {
            *e = 1;
        }
        Ok(t)
    }

    pub fn validate(&self, data: &PartitionData) -> Result<()> {
        if self.0.len() != data.blocks.len() {
            return Err(Error::InvalidTuple(format!(
                "{} blocks given, {} expected",
                self.0.len(),
                data.blocks.len()
            )));
        }
        for (block, shape) in self.0.iter().zip(&data.blocks) {
            if block.len() != shape.m {
                return Err(Error::InvalidTuple(format!("block {block:?} should have {} entries", shape.m)));
            }
            if block.windows(2).any(|p| p[0] < p[1]) {
                return Err(Error::InvalidTuple(format!("block {block:?} is not non-increasing")));
            }
        }
        Ok(())
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|b| b.windows(2).all(|p| p[0] >= p[1]))
    }

    pub fn add(&self, other: &DominantTuple) -> DominantTuple {
        DominantTuple(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
                .collect(),
        )
    }

    pub fn neg(&self) -> DominantTuple {
        DominantTuple(self.0.iter().map(|b| b.iter().rev().map(|x| -x).collect()).collect())
    }

    pub fn min_entry(&self) -> Option<i64> {
        self.0.iter().flatten().copied().min()
    }

    /// Adds `k r_i` to every entry of block `i`.
    pub fn omega_n_shift(&self, data: &PartitionData, k: i64) -> DominantTuple {
        DominantTuple(
            self.0
                .iter()
                .zip(&data.blocks)
                .map(|(b, shape)| b.iter().map(|x| x + k * shape.r as i64).collect())
                .collect(),
        )
    }
}

impl fmt::Display for DominantTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", serde_json::to_string(&self.0).map_err(|_| fmt::Error)?)
    }
}

/// One step of the recursion: `w(x)` from `w(x - e_{ij})` for `x ≥ 0`.
fn peel_step(data: &PartitionData, prev: &AffinePerm, block: usize, j: usize) -> Result<AffinePerm> {
    let n = data.n() as i64;
    let r = data.blocks[block].r;
    let row_len = |k: usize| data.lambda.part(k);
    // j_k for k = r down to 1.
    let mut js = vec![0usize; r + 1];
    js[r] = j;
    for k in (1..r).rev() {
        let val = prev.apply(data.e(k + 1, js[k + 1]));
        let pos = (1..=row_len(k)).find(|&l| prev.apply(data.e(k, l)) < val);
        let Some(l) = pos else {
            return Err(Error::Lattice(format!("no insertion point in row {k} of {prev}")));
        };
        if l > 1 && prev.apply(data.e(k, l - 1)) <= val {
            return Err(Error::Lattice(format!("row {k} of {prev} is not decreasing")));
        }
        js[k] = l;
    }
    let mut window = prev.window().to_vec();
    let mut set = |pos: i64, value: i64| window[(pos - 1) as usize] = value;
    for k in 1..r {
        set(data.e(k, js[k]), prev.apply(data.e(k + 1, js[k + 1])));
    }
    set(data.e(r, j), prev.apply(data.e(1, js[1])) + n);
    AffinePerm::from_window(data.n(), window)
}

fn lattice_to_weyl_nonneg(data: &PartitionData, x: &DominantTuple) -> Result<AffinePerm> {
    let mut x = x.clone();
    let mut steps = Vec::new();
    while let Some(i) = (0..x.0.len()).rev().find(|&i| x.0[i].iter().any(|&e| e > 0)) {
        let j = (0..x.0[i].len()).rev().find(|&j| x.0[i][j] > 0).unwrap();
        x.0[i][j] -= 1;
        steps.push((i, j + 1));
    }
    let mut w = data.w_lambda.clone();
    for &(i, j) in steps.iter().rev() {
        w = peel_step(data, &w, i, j)?;
    }
    Ok(w)
}

/// The bijection `x ↦ w(x)` from the dominant lattice onto the diagonal cell.
pub fn lattice_to_weyl(data: &PartitionData, x: &DominantTuple) -> Result<AffinePerm> {
    x.validate(data)?;
    let k = x
        .0
        .iter()
        .zip(&data.blocks)
        .filter_map(|(b, shape)| {
            let m = *b.iter().min()?;
            Some(if m < 0 { (-m + shape.r as i64 - 1) / shape.r as i64 } else { 0 })
        })
        .max()
        .unwrap_or(0);
    let w = lattice_to_weyl_nonneg(data, &x.omega_n_shift(data, k))?;
    Ok(w.left_mul_omega(-k * data.n() as i64))
}

/// `l(w(x)) ≡ l(w_λ) + Σ x_{ij}(n + r_i) (mod 2)` for `x ≥ 0`.
pub fn length_parity_check(data: &PartitionData, x: &DominantTuple) -> Result<bool> {
    let w = lattice_to_weyl(data, x)?;
    let n = data.n() as i64;
    let sum: i64 = x
        .0
        .iter()
        .zip(&data.blocks)
        .map(|(b, shape)| b.iter().sum::<i64>() * (n + shape.r as i64))
        .sum();
    Ok((w.length() as i64 - data.w_lambda.length() as i64 - sum).rem_euclid(2) == 0)
}

/// A generator of the diagonal algebra: `t_{w(y_{ij})}`, the inverse of
/// `t_{w(y_{i m_i})}`, or the identity `t_{w_λ}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Generator {
    Identity,
    Pos(usize, usize),
    Inv(usize),
}

impl Generator {
    pub fn all(data: &PartitionData) -> Vec<Generator> {
        let mut out = vec![Generator::Identity];
        for (k, b) in data.blocks.iter().enumerate() {
            out.extend((1..=b.m).map(|j| Generator::Pos(k + 1, j)));
            out.push(Generator::Inv(k + 1));
        }
        out
    }

    pub fn tuple(self, data: &PartitionData) -> Result<DominantTuple> {
        match self {
            Generator::Identity => Ok(DominantTuple::zero(data)),
            Generator::Pos(i, j) => DominantTuple::generator(data, i, j),
            Generator::Inv(i) => {
                let m = data
                    .blocks
                    .get(i.wrapping_sub(1))
                    .ok_or_else(|| Error::InvalidTuple(format!("no block {i}")))?
                    .m;
                Ok(DominantTuple::generator(data, i, m)?.neg())
            }
        }
    }
}

fn combinations(m: usize, j: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, m: usize, j: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == j {
            out.push(cur.clone());
            return;
        }
        for p in start..m {
            cur.push(p);
            go(p + 1, m, j, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, m, j, &mut Vec::new(), &mut out);
    out
}

/// `t_{w(x)} t_{w(y)}` for a generator `y`: the tuples `τ + x`, each with
/// multiplicity one.
pub fn pieri_product(data: &PartitionData, x: &DominantTuple, gen: Generator) -> Result<Vec<DominantTuple>> {
    x.validate(data)?;
    match gen {
        Generator::Identity => Ok(vec![x.clone()]),
        Generator::Inv(_) => Ok(vec![x.add(&gen.tuple(data)?)]),
        Generator::Pos(i, j) => {
            let m = gen.tuple(data)?.0[i - 1].len();
            let mut out = Vec::new();
            for ones in combinations(m, j) {
                let mut t = x.clone();
                for p in ones {
                    t.0[i - 1][p] += 1;
                }
                if t.is_dominant() {
                    out.push(t);
                }
            }
            out.sort();
            Ok(out)
        }
    }
}

/// Pieri product in the renormalised basis: each term carries
/// `q^{(l(w(x)) + l(w(y)) - l(w(τ+x)) - l(w_λ))/2}`.
pub fn gamma_tilde_product(
    data: &PartitionData,
    x: &DominantTuple,
    gen: Generator,
) -> Result<BTreeMap<DominantTuple, LaurentHalf>> {
    let lx = lattice_to_weyl(data, x)?.length() as i64;
    let ly = lattice_to_weyl(data, &gen.tuple(data)?)?.length() as i64;
    let la = a_value(data) as i64;
    let mut out = BTreeMap::new();
    for t in pieri_product(data, x, gen)? {
        let lt = lattice_to_weyl(data, &t)?.length() as i64;
        out.insert(t, LaurentHalf::half_pow(lx + ly - lt - la));
    }
    Ok(out)
}

/// `w(x)` for every dominant `x` with entries in `[-radius, radius]`, and the
/// inverse lookup.
#[derive(Clone, Debug)]
pub struct LatticeTable {
    pub data: PartitionData,
    pub radius: i64,
    by_tuple: BTreeMap<DominantTuple, AffinePerm>,
    by_elem: HashMap<AffinePerm, DominantTuple>,
}

impl LatticeTable {
    pub fn build(data: &PartitionData, radius: i64) -> Result<Self> {
        let mut tuples = vec![Vec::<Vec<i64>>::new()];
        for shape in &data.blocks {
            let mut blocks = vec![Vec::<i64>::new()];
            for _ in 0..shape.m {
                blocks = blocks
                    .into_iter()
                    .flat_map(|b| {
                        let hi = b.last().copied().unwrap_or(radius);
                        (-radius..=hi).map(move |e| {
                            let mut c = b.clone();
                            c.push(e);
                            c
                        })
                    })
                    .collect();
            }
            tuples = tuples
                .into_iter()
                .flat_map(|t| {
                    blocks.iter().map(move |b| {
                        let mut c = t.clone();
                        c.push(b.clone());
                        c
                    })
                })
                .collect();
        }
        let mut by_tuple = BTreeMap::new();
        let mut by_elem = HashMap::new();
        for blocks in tuples {
            let x = DominantTuple(blocks);
            let w = lattice_to_weyl(data, &x)?;
            if let Some(prev) = by_elem.insert(w.clone(), x.clone()) {
                return Err(Error::Lattice(format!("{prev} and {x} both map to {w}")));
            }
            by_tuple.insert(x, w);
        }
        Ok(LatticeTable {
            data: data.clone(),
            radius,
            by_tuple,
            by_elem,
        })
    }

    pub fn len(&self) -> usize {
        self.by_tuple.len()
    }

    pub fn is_empty(&self) -> bool {
        self.by_tuple.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&DominantTuple, &AffinePerm)> {
        self.by_tuple.iter()
    }

    pub fn weyl(&self, x: &DominantTuple) -> Option<&AffinePerm> {
        self.by_tuple.get(x)
    }

    pub fn tuple_of(&self, w: &AffinePerm) -> Option<&DominantTuple> {
        self.by_elem.get(w)
    }

    /// `x'` with `w(x') = w(x)^{-1}`.
    pub fn sigma_asym(&self, x: &DominantTuple) -> Result<DominantTuple> {
        let w = match self.weyl(x) {
            Some(w) => w.clone(),
            None => lattice_to_weyl(&self.data, x)?,
        };
        let inv = w.inverse();
        self.tuple_of(&inv)
            .cloned()
            .ok_or_else(|| Error::NotInTable(format!("{inv} (inverse of w({x}))")))
    }
}

/// Normalisation of an [`AsymElt`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AsymNorm {
    #[serde(rename = "t")]
    T,
    #[serde(rename = "Ntilde_asym")]
    Ntilde,
}

/// An element of the diagonal algebra, indexed by lattice points, in either
/// the `t` basis or `Ñ_w = q^{(l(w)-l(w_λ))/2} t_w`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AsymElt {
    pub norm: AsymNorm,
    pub terms: BTreeMap<DominantTuple, LaurentHalf>,
}

impl AsymElt {
    pub fn basis(norm: AsymNorm, x: DominantTuple) -> Self {
        AsymElt {
            norm,
            terms: BTreeMap::from([(x, LaurentHalf::one())]),
        }
    }

    /// Right multiplication by a generator in the same normalisation.
    pub fn mul_generator(&self, data: &PartitionData, gen: Generator) -> Result<AsymElt> {
        let mut terms: BTreeMap<DominantTuple, LaurentHalf> = BTreeMap::new();
        for (x, c) in &self.terms {
            let prod = match self.norm {
                AsymNorm::T => pieri_product(data, x, gen)?
                    .into_iter()
                    .map(|t| (t, LaurentHalf::one()))
                    .collect(),
                AsymNorm::Ntilde => gamma_tilde_product(data, x, gen)?,
            };
            for (t, d) in prod {
                let e = terms.entry(t).or_default();
                *e += c * &d;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(AsymElt { norm: self.norm, terms })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data(parts: &[usize]) -> PartitionData {
        PartitionData::from_parts(parts).unwrap()
    }

    fn tup(d: &PartitionData, blocks: &[&[i64]]) -> DominantTuple {
        DominantTuple::new(d, blocks.iter().map(|b| b.to_vec()).collect()).unwrap()
    }

    fn win(n: usize, w: &[i64]) -> AffinePerm {
        AffinePerm::from_window(n, w.to_vec()).unwrap()
    }

    #[test]
    fn a_values() {
        assert_eq!(a_value(&data(&[1, 1])), 0);
        assert_eq!(a_value(&data(&[2])), 1);
        assert_eq!(a_value(&data(&[3])), 3);
    }

    #[test]
    fn rank_two_lattice() {
        let d = data(&[2]);
        assert_eq!(lattice_to_weyl(&d, &DominantTuple::zero(&d)).unwrap(), d.w_lambda);
        let w10 = lattice_to_weyl(&d, &tup(&d, &[&[1, 0]])).unwrap();
        assert_eq!(w10, win(2, &[4, 1]));
        assert_eq!(w10.length(), 2);
        let w11 = lattice_to_weyl(&d, &tup(&d, &[&[1, 1]])).unwrap();
        assert_eq!(w11, win(2, &[4, 3]));
        assert_eq!(w11.length(), 1);
        assert!(DominantTuple::new(&d, vec![vec![0, 1]]).is_err());
    }

    #[test]
    fn hook_lattice_examples() {
        let d = data(&[2, 1]);
        assert_eq!(lattice_to_weyl(&d, &tup(&d, &[&[0], &[1]])).unwrap(), win(3, &[3, 1, 5]));
        assert_eq!(lattice_to_weyl(&d, &tup(&d, &[&[1], &[1]])).unwrap(), win(3, &[5, 3, 4]));
        let shifted = tup(&d, &[&[1], &[2]]);
        assert_eq!(lattice_to_weyl(&d, &shifted).unwrap(), d.w_lambda.left_mul_omega(3));
    }

    #[test]
    fn bottom_cell_is_omega_powers() {
        let d = data(&[1, 1]);
        for k in -3..=3 {
            assert_eq!(lattice_to_weyl(&d, &tup(&d, &[&[k]])).unwrap(), AffinePerm::omega_pow(2, k));
        }
        let table = LatticeTable::build(&d, 3).unwrap();
        assert_eq!(table.sigma_asym(&tup(&d, &[&[2]])).unwrap(), tup(&d, &[&[-2]]));
    }

    #[test]
    fn pieri_examples() {
        let d = data(&[2]);
        let x = tup(&d, &[&[1, 0]]);
        assert_eq!(
            pieri_product(&d, &x, Generator::Pos(1, 1)).unwrap(),
            vec![tup(&d, &[&[1, 1]]), tup(&d, &[&[2, 0]])]
        );
        assert_eq!(
            pieri_product(&d, &DominantTuple::zero(&d), Generator::Pos(1, 1)).unwrap(),
            vec![tup(&d, &[&[1, 0]])]
        );
        assert_eq!(
            pieri_product(&d, &x, Generator::Pos(1, 2)).unwrap(),
            vec![tup(&d, &[&[2, 1]])]
        );
    }

    #[test]
    fn gamma_tilde_examples() {
        let d = data(&[2]);
        let x = tup(&d, &[&[1, 0]]);
        let g = gamma_tilde_product(&d, &x, Generator::Pos(1, 1)).unwrap();
        // Lengths 2 + 2 - 1 - 1: the coefficient is q^{+1}.
        assert_eq!(g[&tup(&d, &[&[1, 1]])], LaurentHalf::q_pow(1));
        for gen in Generator::all(&d) {
            let g = gamma_tilde_product(&d, &DominantTuple::zero(&d), gen).unwrap();
            assert_eq!(g.len(), 1);
            assert!(g.values().next().unwrap().is_one());
        }
        let b = data(&[1, 1]);
        for gen in Generator::all(&b) {
            for (_, c) in gamma_tilde_product(&b, &tup(&b, &[&[2]]), gen).unwrap() {
                assert!(c.is_one());
            }
        }
    }

    #[test]
    fn parity_on_boxes() {
        let d = data(&[2]);
        assert!(length_parity_check(&d, &tup(&d, &[&[1, 0]])).unwrap());
        let d = data(&[2, 1]);
        for a in 0..=2 {
            for b in 0..=2 {
                assert!(length_parity_check(&d, &tup(&d, &[&[a], &[b]])).unwrap());
            }
        }
    }

    #[test]
    fn gamma_from_h_examples() {
        let cache = KlCache::new(2, 4);
        let s1 = AffinePerm::simple(2, 1).unwrap();
        assert_eq!(gamma_from_h(&cache, &s1, &s1, &s1, 1).unwrap(), BigInt::from(1));
        let e = AffinePerm::identity(2);
        assert_eq!(gamma_from_h(&cache, &e, &s1, &s1, 0).unwrap(), BigInt::from(1));
        assert_eq!(gamma_from_h(&cache, &e, &s1, &s1, 1).unwrap(), BigInt::from(0));
    }

    #[test]
    fn asym_elt_squares() {
        let d = data(&[2]);
        let y = Generator::Pos(1, 1);
        let a = AsymElt::basis(AsymNorm::T, DominantTuple::generator(&d, 1, 1).unwrap());
        let sq = a.mul_generator(&d, y).unwrap();
        assert_eq!(sq.terms.len(), 2);
        let b = AsymElt::basis(AsymNorm::Ntilde, DominantTuple::generator(&d, 1, 1).unwrap());
        let sq = b.mul_generator(&d, y).unwrap();
        assert_eq!(sq.terms[&tup(&d, &[&[1, 1]])], LaurentHalf::q_pow(1));
    }
}
