use std::collections::HashMap;
use std::sync::RwLock;

use super::AffinePerm;

/// Bruhat order. Elements with different ω-shifts are incomparable; within a
/// component the lifting property is used: for `ws < w`,
/// `v ≤ w ⇔ min(v, vs) ≤ ws`.
pub fn bruhat_leq(v: &AffinePerm, w: &AffinePerm) -> bool {
    BruhatCache::new().leq(v, w)
}

/// Memo table for [`bruhat_leq`]. Shared between threads; every entry is a
/// pure function of its key, so insertion order does not matter.
#[derive(Default)]
pub struct BruhatCache {
    table: RwLock<HashMap<(AffinePerm, AffinePerm), bool>>,
}

impl BruhatCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn leq(&self, v: &AffinePerm, w: &AffinePerm) -> bool {
        assert_eq!(v.rank(), w.rank(), "rank mismatch in Bruhat comparison");
        if v.omega_shift() != w.omega_shift() {
            return false;
        }
        let (v, _) = v.omega_decompose();
        let (w, _) = w.omega_decompose();
        self.leq_affine(v, w)
    }

    fn leq_affine(&self, v: AffinePerm, w: AffinePerm) -> bool {
        let (lv, lw) = (v.length(), w.length());
        if lv > lw {
            return false;
        }
        if lv == lw {
            return v == w;
        }
        if lv == 0 {
            return true;
        }
        let key = (v, w);
        if let Some(&b) = self.table.read().unwrap().get(&key) {
            return b;
        }
        let (v, w) = &key;
        let s = w.right_descents().iter().next().expect("non-identity element has a descent");
        let ws = w.right_mul_simple(s);
        let result = if v.has_right_descent(s) {
            self.leq_affine(v.right_mul_simple(s), ws)
        } else {
            self.leq_affine(v.clone(), ws)
        };
        self.table.write().unwrap().insert(key, result);
        result
    }

    pub fn len(&self) -> usize {
        self.table.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
