//! The extended affine Weyl group of type `Ã_{n-1}` realised as periodic
//! permutations of the integers, stored in window notation.

mod bruhat;
mod enumerate;
mod parabolic;
mod partition;

pub use bruhat::{bruhat_leq, BruhatCache};
pub use enumerate::{enumerate, enumerate_affine, Truncation};
pub use parabolic::{
    double_coset, is_max_rep, longest_element, max_double_coset_rep, parabolic_elements,
    poincare_poly,
};
pub use partition::{dominance_leq, m_cells, n_cells, partitions, Block, Partition, PartitionData};

use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A set of generator indices, stored as a bitmask. Index `i` stands for
/// `s_i`; indices are read modulo `n`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenSet(pub u64);

impl GenSet {
    pub const EMPTY: GenSet = GenSet(0);

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        GenSet(it.into_iter().fold(0, |acc, i| acc | (1u64 << i)))
    }

    /// `S_fin = {s_1, ..., s_{n-1}}`.
    pub fn finite(n: usize) -> Self {
        Self::from_indices(1..n)
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 & (1 << i) != 0
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_subset(self, other: GenSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersect(self, other: GenSet) -> GenSet {
        GenSet(self.0 & other.0)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&i| self.contains(i))
    }

    /// All subsets of `S_fin` for rank `n`, in increasing bitmask order.
    pub fn all_finite_subsets(n: usize) -> Vec<GenSet> {
        let full = Self::finite(n).0;
        let mut out = Vec::new();
        let mut sub = 0u64;
        loop {
            out.push(GenSet(sub));
            if sub == full {
                break;
            }
            sub = (sub.wrapping_sub(full)) & full;
        }
        out.sort();
        out
    }
}

impl fmt::Debug for GenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "s{i}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for GenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Serialize for GenSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for GenSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<usize> = Vec::deserialize(d)?;
        Ok(GenSet::from_indices(v))
    }
}

/// An element of `W` given by its window `[w(1), ..., w(n)]`; the rest of the
/// bijection follows from `w(i + n) = w(i) + n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffinePerm {
    window: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct AffinePermJson {
    n: usize,
    window: Vec<i64>,
}

impl AffinePerm {
    /// Validates a window: residues modulo `n` must be pairwise distinct and
    /// `Σ (w(i) - i)` must be divisible by `n`.
    pub fn from_window(n: usize, window: Vec<i64>) -> Result<Self> {
        let bad = |reason: &str| Error::InvalidWindow {
            window: window.clone(),
            reason: reason.to_string(),
        };
        if n == 0 {
            return Err(bad("rank must be positive"));
        }
        if window.len() != n {
            return Err(bad("window length differs from the rank"));
        }
        let m = n as i64;
        let mut seen = vec![false; n];
        for &v in &window {
            let r = v.rem_euclid(m) as usize;
            if seen[r] {
                return Err(bad("residues modulo n are not distinct"));
            }
            seen[r] = true;
        }
        let shift: i64 = window.iter().enumerate().map(|(i, &v)| v - (i as i64 + 1)).sum();
        if shift.rem_euclid(m) != 0 {
            return Err(bad("sum of w(i) - i is not divisible by n"));
        }
        Ok(AffinePerm { window })
    }

    pub fn identity(n: usize) -> Self {
        AffinePerm {
            window: (1..=n as i64).collect(),
        }
    }

    /// `s_i` for `0 <= i < n`, `n >= 2`.
    pub fn simple(n: usize, i: usize) -> Result<Self> {
        if n < 2 || i >= n {
            return Err(Error::InvalidGenerator { n, index: i });
        }
        Ok(Self::identity(n).right_mul_simple(i))
    }

    /// `ω^k`, the shift `j ↦ j + k`.
    pub fn omega_pow(n: usize, k: i64) -> Self {
        AffinePerm {
            window: (1..=n as i64).map(|j| j + k).collect(),
        }
    }

    pub fn omega(n: usize) -> Self {
        Self::omega_pow(n, 1)
    }

    /// `s_{i_1} ··· s_{i_l} · ω^k`.
    pub fn from_word(n: usize, word: &[usize], k: i64) -> Result<Self> {
        let mut w = Self::identity(n);
        for &i in word {
            if n < 2 || i >= n {
                return Err(Error::InvalidGenerator { n, index: i });
            }
            w = w.right_mul_simple(i);
        }
        Ok(w.right_mul_omega(k))
    }

    pub fn rank(&self) -> usize {
        self.window.len()
    }

    pub fn window(&self) -> &[i64] {
        &self.window
    }

    pub fn is_identity(&self) -> bool {
        self.window.iter().enumerate().all(|(i, &v)| v == i as i64 + 1)
    }

    /// `w(i)` for any integer `i`.
    pub fn apply(&self, i: i64) -> i64 {
        let n = self.rank() as i64;
        let idx = (i - 1).rem_euclid(n);
        let k = (i - 1).div_euclid(n);
        self.window[idx as usize] + k * n
    }

    /// The product `uv`, i.e. `j ↦ u(v(j))`.
    pub fn compose(&self, other: &AffinePerm) -> Result<AffinePerm> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch(self.rank(), other.rank()));
        }
        Ok(AffinePerm {
            window: other.window.iter().map(|&v| self.apply(v)).collect(),
        })
    }

    pub fn inverse(&self) -> AffinePerm {
        let n = self.rank() as i64;
        let mut window = vec![0; self.rank()];
        for (j, &v) in self.window.iter().enumerate() {
            let r = (v - 1).rem_euclid(n);
            let k = (v - 1).div_euclid(n);
            window[r as usize] = j as i64 + 1 - k * n;
        }
        AffinePerm { window }
    }

    /// `k` in the factorisation `w = w'ω^k` with `w'` in the non-extended
    /// affine Weyl group.
    pub fn omega_shift(&self) -> i64 {
        let s: i64 = self.window.iter().enumerate().map(|(i, &v)| v - (i as i64 + 1)).sum();
        s / self.rank() as i64
    }

    /// `(w', k)` with `w = w'ω^k` and `omega_shift(w') = 0`.
    pub fn omega_decompose(&self) -> (AffinePerm, i64) {
        let k = self.omega_shift();
        (self.right_mul_omega(-k), k)
    }

    /// `l(w) = Σ_{i<j} |⌊(w(j) - w(i)) / n⌋|`.
    pub fn length(&self) -> usize {
        let n = self.rank() as i64;
        let mut total = 0i64;
        for i in 0..self.window.len() {
            for j in i + 1..self.window.len() {
                total += (self.window[j] - self.window[i]).div_euclid(n).abs();
            }
        }
        total as usize
    }

    /// `w · s_i`: swaps the values at positions `i` and `i + 1`.
    pub fn right_mul_simple(&self, i: usize) -> AffinePerm {
        let n = self.rank();
        let mut window = self.window.clone();
        if i == 0 {
            let m = n as i64;
            let first = window[0];
            window[0] = window[n - 1] - m;
            window[n - 1] = first + m;
        } else {
            window.swap(i - 1, i);
        }
        AffinePerm { window }
    }

    /// `s_i · w`: applies `s_i` to every value.
    pub fn left_mul_simple(&self, i: usize) -> AffinePerm {
        let n = self.rank() as i64;
        let i = i as i64;
        let window = self
            .window
            .iter()
            .map(|&v| {
                let r = v.rem_euclid(n);
                if r == i.rem_euclid(n) {
                    v + 1
                } else if r == (i + 1).rem_euclid(n) {
                    v - 1
                } else {
                    v
                }
            })
            .collect();
        AffinePerm { window }
    }

    /// `w · ω^k`, i.e. `j ↦ w(j + k)`.
    pub fn right_mul_omega(&self, k: i64) -> AffinePerm {
        if k == 0 {
            return self.clone();
        }
        let n = self.rank() as i64;
        AffinePerm {
            window: (1..=n).map(|j| self.apply(j + k)).collect(),
        }
    }

    /// `ω^k · w`, i.e. `j ↦ w(j) + k`.
    pub fn left_mul_omega(&self, k: i64) -> AffinePerm {
        AffinePerm {
            window: self.window.iter().map(|&v| v + k).collect(),
        }
    }

    /// `s_i ∈ R(w)`, using `w(i) > w(i+1)` with `w(0) = w(n) - n`.
    pub fn has_right_descent(&self, i: usize) -> bool {
        let n = self.rank();
        if n < 2 {
            return false;
        }
        let i = i % n;
        if i == 0 {
            self.window[n - 1] - n as i64 > self.window[0]
        } else {
            self.window[i - 1] > self.window[i]
        }
    }

    /// `s_i ∈ L(w)`, i.e. `w^{-1}(i) > w^{-1}(i+1)`.
    pub fn has_left_descent(&self, i: usize) -> bool {
        let n = self.rank();
        if n < 2 {
            return false;
        }
        let inv = self.inverse();
        inv.has_right_descent(i)
    }

    pub fn right_descents(&self) -> GenSet {
        let n = self.rank();
        if n < 2 {
            return GenSet::EMPTY;
        }
        GenSet::from_indices((0..n).filter(|&i| self.has_right_descent(i)))
    }

    pub fn left_descents(&self) -> GenSet {
        self.inverse().right_descents()
    }

    /// A reduced word for the affine part and the residual power of `ω`:
    /// `w = s_{i_1} ··· s_{i_l} ω^k`. Right descents are stripped greedily,
    /// smallest index first.
    pub fn reduced_word(&self) -> (Vec<usize>, i64) {
        let (mut w, k) = self.omega_decompose();
        let mut word = Vec::with_capacity(w.length());
        while let Some(i) = w.right_descents().iter().next() {
            word.push(i);
            w = w.right_mul_simple(i);
        }
        word.reverse();
        (word, k)
    }

    /// Number of simple reflections (`0` for `n = 1`, where `S` is empty).
    pub fn num_generators(&self) -> usize {
        if self.rank() >= 2 {
            self.rank()
        } else {
            0
        }
    }
}

impl Mul for &AffinePerm {
    type Output = AffinePerm;

    /// Panics on a rank mismatch; use [`AffinePerm::compose`] for a checked
    /// product.
    fn mul(self, rhs: &AffinePerm) -> AffinePerm {
        self.compose(rhs).expect("rank mismatch in AffinePerm product")
    }
}

impl fmt::Display for AffinePerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w[")?;
        for (k, v) in self.window.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for AffinePerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for AffinePerm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        AffinePermJson {
            n: self.rank(),
            window: self.window.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for AffinePerm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = AffinePermJson::deserialize(d)?;
        AffinePerm::from_window(j.n, j.window).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: usize, v: &[i64]) -> AffinePerm {
        AffinePerm::from_window(n, v.to_vec()).unwrap()
    }

    #[test]
    fn from_window_examples() {
        assert_eq!(w(2, &[2, 1]), AffinePerm::simple(2, 1).unwrap());
        assert_eq!(w(2, &[2, 3]), AffinePerm::omega(2));
        assert!(AffinePerm::from_window(2, vec![1, 3]).is_err());
        assert!(AffinePerm::from_window(3, vec![1, 2, 4]).is_err());
        assert!(AffinePerm::from_window(2, vec![1]).is_err());
    }

    #[test]
    fn simple_windows() {
        assert_eq!(AffinePerm::simple(2, 0).unwrap().window(), &[0, 3]);
        assert_eq!(AffinePerm::simple(3, 0).unwrap().window(), &[0, 2, 4]);
        assert_eq!(AffinePerm::simple(3, 2).unwrap().window(), &[1, 3, 2]);
        assert!(AffinePerm::simple(1, 0).is_err());
    }

    #[test]
    fn compose_and_apply() {
        let s0 = AffinePerm::simple(2, 0).unwrap();
        let s1 = AffinePerm::simple(2, 1).unwrap();
        // (uv)(j) = u(v(j))
        assert_eq!(s1.compose(&s0).unwrap().window(), &[-1, 4]);
        assert_eq!(s0.compose(&s1).unwrap().window(), &[3, 0]);
        let x = w(3, &[5, -3, 4]);
        assert!(x.compose(&x.inverse()).unwrap().is_identity());
        assert!(x.inverse().compose(&x).unwrap().is_identity());
        assert_eq!(AffinePerm::omega(2).apply(5), 6);
        assert!(s0.compose(&AffinePerm::identity(3)).is_err());
    }

    #[test]
    fn simple_multiplication_matches_compose() {
        let x = w(3, &[5, -3, 4]);
        for i in 0..3 {
            let s = AffinePerm::simple(3, i).unwrap();
            assert_eq!(x.right_mul_simple(i), &x * &s);
            assert_eq!(x.left_mul_simple(i), &s * &x);
        }
        for k in -3..=3 {
            let om = AffinePerm::omega_pow(3, k);
            assert_eq!(x.right_mul_omega(k), &x * &om);
            assert_eq!(x.left_mul_omega(k), &om * &x);
        }
    }

    #[test]
    fn length_examples() {
        assert_eq!(AffinePerm::identity(4).length(), 0);
        assert_eq!(w(2, &[-1, 4]).length(), 2);
        for k in -4..=4 {
            assert_eq!(AffinePerm::omega_pow(3, k).length(), 0);
        }
    }

    #[test]
    fn descent_examples() {
        let s1 = AffinePerm::simple(2, 1).unwrap();
        assert_eq!(s1.right_descents(), GenSet::from_indices([1]));
        assert!(AffinePerm::identity(3).right_descents().is_empty());
        let x = w(2, &[4, 1]);
        assert_eq!(x.right_descents(), GenSet::from_indices([1]));
        assert_eq!(x.left_descents(), GenSet::from_indices([1]));
    }

    #[test]
    fn reduced_word_examples() {
        let (word, k) = w(2, &[-1, 4]).reduced_word();
        assert_eq!((word, k), (vec![1, 0], 0));
        let (word, k) = w(2, &[4, 3]).reduced_word();
        assert_eq!((word, k), (vec![1], 2));
        let (word, k) = AffinePerm::identity(3).reduced_word();
        assert_eq!((word, k), (vec![], 0));
        let x = w(3, &[5, -3, 4]);
        let (word, k) = x.reduced_word();
        assert_eq!(word.len(), x.length());
        assert_eq!(AffinePerm::from_word(3, &word, k).unwrap(), x);
    }

    #[test]
    fn omega_decompose_examples() {
        let (a, k) = w(2, &[4, 3]).omega_decompose();
        assert_eq!((a.window(), k), (&[2, 1][..], 2));
        let (a, k) = AffinePerm::omega(2).omega_decompose();
        assert!(a.is_identity());
        assert_eq!(k, 1);
        let s0 = AffinePerm::simple(2, 0).unwrap();
        assert_eq!(s0.omega_decompose(), (s0.clone(), 0));
    }

    #[test]
    fn omega_relations() {
        // ω s_i = s_{i+1} ω
        for n in 2..5 {
            let om = AffinePerm::omega(n);
            for i in 0..n {
                let lhs = &om * &AffinePerm::simple(n, i).unwrap();
                let rhs = &AffinePerm::simple(n, (i + 1) % n).unwrap() * &om;
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn genset_subsets() {
        let subs = GenSet::all_finite_subsets(3);
        assert_eq!(subs.len(), 4);
        assert!(subs.contains(&GenSet::from_indices([1, 2])));
        assert_eq!(GenSet::all_finite_subsets(1), vec![GenSet::EMPTY]);
    }

    #[test]
    fn json_roundtrip() {
        let x = w(2, &[-1, 4]);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"n":2,"window":[-1,4]}"#);
        assert_eq!(serde_json::from_str::<AffinePerm>(&s).unwrap(), x);
        assert!(serde_json::from_str::<AffinePerm>(r#"{"n":2,"window":[1,3]}"#).is_err());
    }
}
