//! Independent reference implementations used to cross-check the library.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use affcell::{AffinePerm, LaurentHalf};

/// Word length in the simple reflections by breadth-first search from the
/// identity, using only window swaps.
pub fn bfs_lengths(n: usize, max_len: usize) -> HashMap<AffinePerm, usize> {
    let mut dist = HashMap::new();
    let e = AffinePerm::identity(n);
    dist.insert(e.clone(), 0);
    let mut queue = VecDeque::from([e]);
    while let Some(w) = queue.pop_front() {
        let d = dist[&w];
        if d == max_len {
            continue;
        }
        for i in 0..n {
            let x = w.right_mul_simple(i);
            if !dist.contains_key(&x) {
                dist.insert(x.clone(), d + 1);
                queue.push_back(x);
            }
        }
    }
    dist
}

/// A reduced word for the affine part of `w` found by searching downwards
/// with the BFS distances, and the ω-power.
pub fn oracle_word(w: &AffinePerm, lengths: &HashMap<AffinePerm, usize>) -> (Vec<usize>, i64) {
    let k = w.omega_shift();
    let mut x = w.right_mul_omega(-k);
    let mut word = Vec::new();
    while let Some(&d) = lengths.get(&x).filter(|&&d| d > 0) {
        let i = (0..w.rank())
            .find(|&i| lengths.get(&x.right_mul_simple(i)) == Some(&(d - 1)))
            .expect("distance decreases along some generator");
        word.push(i);
        x = x.right_mul_simple(i);
    }
    word.reverse();
    (word, k)
}

/// Everything below `w` in Bruhat order: products of subwords of a reduced
/// word, with the same ω-power.
pub fn subword_ideal(w: &AffinePerm, lengths: &HashMap<AffinePerm, usize>) -> HashSet<AffinePerm> {
    let (word, k) = oracle_word(w, lengths);
    let n = w.rank();
    let mut current: HashSet<AffinePerm> = HashSet::from([AffinePerm::identity(n)]);
    for &i in &word {
        let next: Vec<AffinePerm> = current.iter().map(|x| x.right_mul_simple(i)).collect();
        current.extend(next);
    }
    current.into_iter().map(|x| x.right_mul_omega(k)).collect()
}

/// Kazhdan–Lusztig polynomials through R-polynomials: `R_{x,w}` by the
/// right descent recursion, then `P_{x,w}` as the part of degree below
/// `(l(w) - l(x))/2` of `-Σ_{x<z<=w} R_{x,z} P_{z,w}`.
pub struct KlOracle {
    lengths: HashMap<AffinePerm, usize>,
    r: HashMap<(AffinePerm, AffinePerm), LaurentHalf>,
    ideals: HashMap<AffinePerm, HashSet<AffinePerm>>,
}

impl KlOracle {
    pub fn new(n: usize, max_len: usize) -> Self {
        KlOracle {
            lengths: bfs_lengths(n, max_len),
            r: HashMap::new(),
            ideals: HashMap::new(),
        }
    }

    fn len_opt(&self, w: &AffinePerm) -> Option<usize> {
        self.lengths.get(&w.right_mul_omega(-w.omega_shift())).copied()
    }

    fn len(&self, w: &AffinePerm) -> usize {
        self.len_opt(w).expect("within the BFS radius")
    }

    fn ensure_ideal(&mut self, w: &AffinePerm) {
        if !self.ideals.contains_key(w) {
            let s = subword_ideal(w, &self.lengths);
            self.ideals.insert(w.clone(), s);
        }
    }

    pub fn below(&mut self, w: &AffinePerm) -> Vec<AffinePerm> {
        self.ensure_ideal(w);
        self.ideals[w].iter().cloned().collect()
    }

    pub fn leq(&mut self, x: &AffinePerm, w: &AffinePerm) -> bool {
        self.ensure_ideal(w);
        self.ideals[w].contains(x)
    }

    pub fn r_poly(&mut self, x: &AffinePerm, w: &AffinePerm) -> LaurentHalf {
        if x == w {
            return LaurentHalf::one();
        }
        if x.omega_shift() != w.omega_shift() || !self.leq(x, w) {
            return LaurentHalf::zero();
        }
        let key = (x.clone(), w.clone());
        if let Some(v) = self.r.get(&key) {
            return v.clone();
        }
        let lw = self.len(w);
        let i = (0..w.rank())
            .find(|&i| self.len_opt(&w.right_mul_simple(i)).is_some_and(|d| d < lw))
            .unwrap();
        let ws = w.right_mul_simple(i);
        let xs = x.right_mul_simple(i);
        let val = if self.len(&xs) < self.len(x) {
            self.r_poly(&xs, &ws)
        } else {
            let a = self.r_poly(x, &ws);
            let b = self.r_poly(&xs, &ws);
            &(&LaurentHalf::from_q_coeffs(&[-1, 1]) * &a) + &(&LaurentHalf::q_pow(1) * &b)
        };
        self.r.insert(key, val.clone());
        val
    }

    /// `P_{x,w}` for every `x <= w`.
    pub fn kl_column(&mut self, w: &AffinePerm) -> HashMap<AffinePerm, LaurentHalf> {
        let mut below = self.below(w);
        below.sort_by_key(|x| std::cmp::Reverse(self.len(x)));
        let lw = self.len(w) as i64;
        let mut p: HashMap<AffinePerm, LaurentHalf> = HashMap::new();
        for x in below {
            if &x == w {
                p.insert(x, LaurentHalf::one());
                continue;
            }
            let mut sum = LaurentHalf::zero();
            let zs: Vec<AffinePerm> = p.keys().cloned().collect();
            for z in zs {
                if z != x && self.leq(&x, &z) {
                    sum += &self.r_poly(&x, &z) * &p[&z];
                }
            }
            let d = lw - self.len(&x) as i64;
            // Half-exponents: degree < d/2 in q means half-exponent < d.
            let low: Vec<(i64, num_bigint::BigInt)> = sum
                .terms()
                .filter(|(e, _)| *e < d)
                .map(|(e, c)| (e, -c.clone()))
                .collect();
            p.insert(x, LaurentHalf::from_terms(low));
        }
        p.retain(|_, c| !c.is_zero());
        p
    }
}

/// Sorted windows, handy for comparing sets in assertions.
pub fn windows(set: impl IntoIterator<Item = AffinePerm>) -> BTreeSet<Vec<i64>> {
    set.into_iter().map(|w| w.window().to_vec()).collect()
}

/// Random elements as products of up to `max_word` simple reflections and
/// a power of ω in `-k..=k`.
pub fn arb_perm(n: usize, max_word: usize, k: i64) -> impl proptest::strategy::Strategy<Value = AffinePerm> {
    use proptest::prelude::*;
    (proptest::collection::vec(0..n, 0..=max_word), -k..=k)
        .prop_map(move |(word, k)| AffinePerm::from_word(n, &word, k).unwrap())
}
