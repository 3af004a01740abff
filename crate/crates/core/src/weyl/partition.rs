use std::fmt;

use num_bigint::BigUint;
use num_integer::binomial;
use serde::{Deserialize, Serialize};

use super::{longest_element, AffinePerm, GenSet};
use crate::error::{Error, Result};

/// A partition of `n`: non-increasing positive parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) || parts.windows(2).any(|p| p[0] < p[1]) {
            return Err(Error::InvalidPartition(parts));
        }
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// `λ_i` with 1-based index, zero past the end.
    pub fn part(&self, i: usize) -> usize {
        if i == 0 {
            return usize::MAX;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    /// `μ_i = #{j : λ_j >= i}`.
    pub fn dual(&self) -> Partition {
        let top = self.0[0];
        Partition((1..=top).map(|i| self.0.iter().filter(|&&l| l >= i).count()).collect())
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, p) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All partitions of `n` in reverse lexicographic order, e.g. `(3), (2,1),
/// (1,1,1)`. This is a linear extension of reverse dominance order.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        go(n, n, &mut Vec::new(), &mut out);
    }
    out
}

/// `λ ⊴ μ`: every partial sum of `λ` is at most the matching partial sum of `μ`.
pub fn dominance_leq(lambda: &Partition, mu: &Partition) -> bool {
    let len = lambda.0.len().max(mu.0.len());
    let (mut a, mut b) = (0, 0);
    for i in 1..=len {
        a += lambda.part(i);
        b += mu.part(i);
        if a > b {
            return false;
        }
    }
    true
}

/// `n_λ = n! / Π μ_i!` where `μ` is the dual partition.
pub fn n_cells(lambda: &Partition) -> BigUint {
    let fact = |k: usize| (1..=k).fold(BigUint::from(1u32), |acc, i| acc * BigUint::from(i));
    let denom = lambda.dual().0.iter().fold(BigUint::from(1u32), |acc, &m| acc * fact(m));
    fact(lambda.size()) / denom
}

/// `m_λ = Π_{i=1}^{n-1} C(n, i)^{λ_i - λ_{i+1}}`.
pub fn m_cells(lambda: &Partition) -> BigUint {
    let n = lambda.size();
    (1..n).fold(BigUint::from(1u32), |acc, i| {
        let e = lambda.part(i) - lambda.part(i + 1);
        acc * binomial(BigUint::from(n), BigUint::from(i)).pow(e as u32)
    })
}

/// One block `(r_i, m_i)` of the dominant lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub r: usize,
    pub m: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionData {
    pub lambda: Partition,
    pub dual: Partition,
    pub p_lambda: GenSet,
    pub w_lambda: AffinePerm,
    pub blocks: Vec<Block>,
    /// `e_table[k-1][l-1] = e_{k,l}`.
    pub e_table: Vec<Vec<i64>>,
}

impl PartitionData {
    pub fn new(lambda: &Partition) -> Self {
        let n = lambda.size();
        let parts = lambda.parts();
        let mut partial = Vec::new();
        let mut acc = 0;
        for &p in parts {
            acc += p;
            partial.push(acc);
        }
        let p_lambda = GenSet::from_indices((1..n).filter(|i| !partial.contains(i)));
        let w_lambda = longest_element(n, p_lambda);

        let mut e_table = Vec::new();
        let mut offset = 0i64;
        for &p in parts {
            e_table.push((1..=p as i64).map(|l| l + offset).collect());
            offset += p as i64;
        }

        let k = parts.len();
        let rs: Vec<usize> = (1..=k).filter(|&i| i == k || parts[i - 1] != parts[i]).collect();
        let blocks = rs
            .iter()
            .enumerate()
            .map(|(idx, &r)| {
                let next = rs.get(idx + 1).map_or(0, |&r2| lambda.part(r2));
                Block {
                    r,
                    m: lambda.part(r) - next,
                }
            })
            .collect();

        PartitionData {
            lambda: lambda.clone(),
            dual: lambda.dual(),
            p_lambda,
            w_lambda,
            blocks,
            e_table,
        }
    }

    pub fn from_parts(parts: &[usize]) -> Result<Self> {
        Ok(Self::new(&Partition::new(parts.to_vec())?))
    }

    pub fn n(&self) -> usize {
        self.lambda.size()
    }

    /// `e_{k,l} = l + Σ_{k' < k} λ_{k'}` (1-based `k`, `l`).
    pub fn e(&self, k: usize, l: usize) -> i64 {
        self.e_table[k - 1][l - 1]
    }

    pub fn n_cells(&self) -> BigUint {
        n_cells(&self.lambda)
    }

    pub fn m_cells(&self) -> BigUint {
        m_cells(&self.lambda)
    }
}
