use std::collections::BTreeSet;

use super::{AffinePerm, GenSet};
use crate::coeff::LaurentHalf;

/// All elements of the finite parabolic subgroup `W_P`.
pub fn parabolic_elements(n: usize, p: GenSet) -> Vec<AffinePerm> {
    let mut seen = BTreeSet::new();
    let mut stack = vec![AffinePerm::identity(n)];
    while let Some(w) = stack.pop() {
        if !seen.insert(w.clone()) {
            continue;
        }
        for i in p.iter() {
            let ws = w.right_mul_simple(i);
            if !seen.contains(&ws) {
                stack.push(ws);
            }
        }
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort_by_cached_key(|w| (w.length(), w.clone()));
    out
}

/// `w_P`, the longest element of `W_P`.
pub fn longest_element(n: usize, p: GenSet) -> AffinePerm {
    // Greedy ascent: multiply by any generator of P that is not yet a descent.
    let mut w = AffinePerm::identity(n);
    while let Some(i) = p.iter().find(|&i| !w.has_right_descent(i)) {
        w = w.right_mul_simple(i);
    }
    w
}

/// `p_P = Σ_{w ∈ W_P} q^{l(w)}`.
pub fn poincare_poly(n: usize, p: GenSet) -> LaurentHalf {
    parabolic_elements(n, p)
        .iter()
        .map(|w| LaurentHalf::q_pow(w.length() as i64))
        .sum()
}

/// The set `W_Q w W_P`.
pub fn double_coset(q: GenSet, w: &AffinePerm, p: GenSet) -> Vec<AffinePerm> {
    let n = w.rank();
    let left = parabolic_elements(n, q);
    let right = parabolic_elements(n, p);
    let mut out = BTreeSet::new();
    for u in &left {
        let uw = u * w;
        for v in &right {
            out.insert(&uw * v);
        }
    }
    out.into_iter().collect()
}

/// The unique longest element of `W_Q w W_P`.
pub fn max_double_coset_rep(q: GenSet, w: &AffinePerm, p: GenSet) -> AffinePerm {
    double_coset(q, w, p)
        .into_iter()
        .max_by_key(|x| x.length())
        .expect("double coset is non-empty")
}

/// `sw < w` for every `s ∈ Q` and `ws < w` for every `s ∈ P`.
pub fn is_max_rep(q: GenSet, w: &AffinePerm, p: GenSet) -> bool {
    q.is_subset(w.left_descents()) && p.is_subset(w.right_descents())
}
