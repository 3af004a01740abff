use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::AffinePerm;

/// The desk-scale truncation: elements of length at most `max_len`, times
/// `ω^k` with `|k| <= omega_range`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Truncation {
    pub max_len: usize,
    pub omega_range: i64,
}

impl Truncation {
    pub fn new(max_len: usize, omega_range: i64) -> Self {
        Truncation {
            max_len,
            omega_range,
        }
    }
}

/// All elements of `W_aff` with length at most `max_len`, sorted by length
/// and then by window.
pub fn enumerate_affine(n: usize, max_len: usize) -> Vec<AffinePerm> {
    let id = AffinePerm::identity(n);
    let mut out = vec![id.clone()];
    if n < 2 {
        return out;
    }
    let mut layer = vec![id];
    for _ in 0..max_len {
        let mut next: HashSet<AffinePerm> = HashSet::new();
        for w in &layer {
            for i in 0..n {
                if !w.has_right_descent(i) {
                    next.insert(w.right_mul_simple(i));
                }
            }
        }
        let mut next: Vec<_> = next.into_iter().collect();
        next.sort();
        out.extend(next.iter().cloned());
        layer = next;
        if layer.is_empty() {
            break;
        }
    }
    out
}

/// The truncation `{w ω^k : w ∈ W_aff, l(w) <= L, |k| <= K}`, sorted by
/// length, then ω-shift, then window.
pub fn enumerate(n: usize, trunc: Truncation) -> Vec<AffinePerm> {
    let base = enumerate_affine(n, trunc.max_len);
    let mut out: Vec<AffinePerm> = base
        .iter()
        .flat_map(|w| (-trunc.omega_range..=trunc.omega_range).map(move |k| w.right_mul_omega(k)))
        .collect();
    out.sort_by_cached_key(|w| (w.length(), w.omega_shift(), w.clone()));
    out
}
