use std::collections::{BTreeMap, BTreeSet, HashMap};

use petgraph::algo::tarjan_scc;
use num_traits::ToPrimitive;
use petgraph::graph::{DiGraph, NodeIndex};

use super::{find_cell_map, in_dl, in_dr, left_star, right_star, StarSequence};
use crate::error::Result;
use crate::hecke::KlCache;
use crate::weyl::{enumerate, partitions, AffinePerm, Partition, PartitionData, Truncation};

/// Cell certificates over a truncation of `W`.
///
/// Left cells are read off as strongly connected components of the left
/// W-graph (edges `z → y` whenever `Ñ_y` occurs in `Ñ_s Ñ_z`) augmented by
/// `z ↔ ωz` and `z ↔ *z`; right cells likewise on the right, two-sided cells
/// from the union. A component only ever merges genuinely equivalent
/// elements, but a cell may split into several components when the cycles
/// joining it leave the truncation. Elements whose component is not the one
/// of a distinguished element are treated as uncertified.
#[derive(Debug)]
pub struct CellAtlas {
    n: usize,
    trunc: Truncation,
    elements: Vec<AffinePerm>,
    index: HashMap<AffinePerm, usize>,
    left: Vec<usize>,
    right: Vec<usize>,
    two: Vec<usize>,
    cells: Vec<LambdaCells>,
}

/// The certified part of the two-sided cell of one partition.
#[derive(Clone, Debug)]
pub struct LambdaCells {
    pub data: PartitionData,
    pub members: BTreeSet<AffinePerm>,
    /// `left_cells[0]` contains `w_λ`; the rest are ordered by their least
    /// member. Members of the two-sided cell outside these are uncertified
    /// as to their left cell.
    pub left_cells: Vec<BTreeSet<AffinePerm>>,
    /// `maps[k]` carries `left_cells[k]` into `left_cells[0] ω^{i}` by right
    /// stars, if such a sequence was found.
    pub maps: Vec<Option<StarSequence>>,
    member_left: HashMap<AffinePerm, usize>,
}

fn components(n_nodes: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let mut g = DiGraph::<(), ()>::with_capacity(n_nodes, edges.len());
    for _ in 0..n_nodes {
        g.add_node(());
    }
    for &(a, b) in edges {
        g.add_edge(NodeIndex::new(a), NodeIndex::new(b), ());
    }
    let mut comp = vec![0; n_nodes];
    for (c, scc) in tarjan_scc(&g).into_iter().enumerate() {
        for v in scc {
            comp[v.index()] = c;
        }
    }
    comp
}

impl CellAtlas {
    /// `max_ops` bounds the length of the star sequences searched for
    /// between left cells.
    pub fn build(cache: &KlCache, trunc: Truncation, max_ops: usize) -> Result<Self> {
        let n = cache.rank();
        let elements = enumerate(n, trunc);
        let index: HashMap<AffinePerm, usize> =
            elements.iter().enumerate().map(|(k, w)| (w.clone(), k)).collect();

        let mut left_edges = Vec::new();
        let mut right_edges = Vec::new();
        let link = |edges: &mut Vec<(usize, usize)>, a: usize, b: &AffinePerm| {
            if let Some(&kb) = index.get(b) {
                if kb != a {
                    edges.push((a, kb));
                }
            }
        };
        for (k, z) in elements.iter().enumerate() {
            for i in 0..n {
                for y in cache.left_simple_action(i, z)?.keys() {
                    link(&mut left_edges, k, y);
                }
                for y in cache.right_simple_action(z, i)?.keys() {
                    link(&mut right_edges, k, y);
                }
                if n >= 3 {
                    if in_dl(z, i)? {
                        link(&mut left_edges, k, &left_star(z, i)?);
                    }
                    if in_dr(z, i)? {
                        link(&mut right_edges, k, &right_star(z, i)?);
                    }
                }
            }
            for s in [-1, 1] {
                link(&mut left_edges, k, &z.left_mul_omega(s));
                link(&mut right_edges, k, &z.right_mul_omega(s));
            }
        }
        let left = components(elements.len(), &left_edges);
        let right = components(elements.len(), &right_edges);
        let mut both = left_edges;
        both.extend(right_edges);
        let two = components(elements.len(), &both);

        let mut atlas = CellAtlas {
            n,
            trunc,
            elements,
            index,
            left,
            right,
            two,
            cells: Vec::new(),
        };
        for lambda in partitions(n) {
            let cells = atlas.lambda_cells_for(&lambda, max_ops);
            atlas.cells.push(cells);
        }
        Ok(atlas)
    }

    fn lambda_cells_for(&self, lambda: &Partition, max_ops: usize) -> LambdaCells {
        let data = PartitionData::new(lambda);
        let mut members = BTreeSet::new();
        let mut by_left: BTreeMap<usize, BTreeSet<AffinePerm>> = BTreeMap::new();
        if let Some(&kw) = self.index.get(&data.w_lambda) {
            let comp = self.two[kw];
            for (k, w) in self.elements.iter().enumerate() {
                if self.two[k] == comp {
                    members.insert(w.clone());
                    by_left.entry(self.left[k]).or_default().insert(w.clone());
                }
            }
        }
        let first = self.index.get(&data.w_lambda).map(|&k| self.left[k]);
        let mut left_cells: Vec<BTreeSet<AffinePerm>> = Vec::new();
        if let Some(c) = first {
            left_cells.push(by_left.remove(&c).unwrap_or_default());
        }
        // Components cut off at the top of the truncation show up as small
        // extra pieces; only the n_λ largest are taken as left cells.
        let mut rest: Vec<BTreeSet<AffinePerm>> = by_left.into_values().collect();
        rest.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.iter().next().cmp(&b.iter().next())));
        let want = data.n_cells().to_usize().unwrap_or(usize::MAX);
        rest.truncate(want.saturating_sub(left_cells.len()));
        rest.sort_by(|a, b| a.iter().next().cmp(&b.iter().next()));
        left_cells.extend(rest);

        let maps = match left_cells.first() {
            Some(target) => left_cells
                .iter()
                .enumerate()
                .map(|(k, src)| {
                    if k == 0 {
                        Some(StarSequence::identity())
                    } else {
                        find_cell_map(src, target, max_ops)
                    }
                })
                .collect(),
            None => Vec::new(),
        };
        let member_left = left_cells
            .iter()
            .enumerate()
            .flat_map(|(k, c)| c.iter().map(move |w| (w.clone(), k)))
            .collect();
        LambdaCells {
            data,
            members,
            left_cells,
            maps,
            member_left,
        }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn truncation(&self) -> Truncation {
        self.trunc
    }

    pub fn elements(&self) -> &[AffinePerm] {
        &self.elements
    }

    pub fn contains(&self, w: &AffinePerm) -> bool {
        self.index.contains_key(w)
    }

    fn same(&self, comp: &[usize], a: &AffinePerm, b: &AffinePerm) -> bool {
        match (self.index.get(a), self.index.get(b)) {
            (Some(&x), Some(&y)) => comp[x] == comp[y],
            _ => false,
        }
    }

    /// Certified `a ∼_L b`.
    pub fn left_equiv(&self, a: &AffinePerm, b: &AffinePerm) -> bool {
        self.same(&self.left, a, b)
    }

    pub fn right_equiv(&self, a: &AffinePerm, b: &AffinePerm) -> bool {
        self.same(&self.right, a, b)
    }

    pub fn two_sided_equiv(&self, a: &AffinePerm, b: &AffinePerm) -> bool {
        self.same(&self.two, a, b)
    }

    pub fn lambda_cells(&self) -> &[LambdaCells] {
        &self.cells
    }

    pub fn cells_for(&self, lambda: &Partition) -> Option<&LambdaCells> {
        self.cells.iter().find(|c| &c.data.lambda == lambda)
    }

    /// The partition whose two-sided cell certifiably contains `w`.
    pub fn cell_of(&self, w: &AffinePerm) -> Option<&LambdaCells> {
        self.cells.iter().find(|c| c.members.contains(w))
    }
}

impl LambdaCells {
    pub fn lambda(&self) -> &Partition {
        &self.data.lambda
    }

    /// `k` with `w ∈ Γ_k`.
    pub fn left_index(&self, w: &AffinePerm) -> Option<usize> {
        self.member_left.get(w).copied()
    }

    /// `k` with `w ∈ ι(Γ_k)`.
    pub fn right_index(&self, w: &AffinePerm) -> Option<usize> {
        self.left_index(&w.inverse())
    }

    pub fn in_base_left_cell(&self, w: &AffinePerm) -> bool {
        self.left_index(w) == Some(0)
    }

    pub fn all_maps_found(&self) -> bool {
        !self.maps.is_empty() && self.maps.iter().all(Option::is_some)
    }

    /// `φ_{ι(Γ_k)}(Ñ_w) = q^{e/2} Ñ_{w'}`: left stars and `ω^{i}` on the left.
    pub fn phi_iota(&self, k: usize, w: &AffinePerm) -> Result<Option<(i64, AffinePerm)>> {
        match self.maps.get(k) {
            Some(Some(seq)) => seq.iota_conjugate().phi(w).map(Some),
            _ => Ok(None),
        }
    }

    /// `φ_{Γ_k}(Ñ_w)`.
    pub fn phi_left_cell(&self, k: usize, w: &AffinePerm) -> Result<Option<(i64, AffinePerm)>> {
        match self.maps.get(k) {
            Some(Some(seq)) => seq.phi(w).map(Some),
            _ => Ok(None),
        }
    }

    /// `φ_{Γ_j ∩ ι(Γ_i)} = φ_{Γ_j} φ_{ι(Γ_i)}` applied to `Ñ_w` where
    /// `w ∈ Γ_j ∩ ι(Γ_i)`; returns `(i, e, w', j)` with image `q^{e/2} Ñ_{w'}`.
    pub fn coordinates(&self, w: &AffinePerm) -> Result<Option<(usize, i64, AffinePerm, usize)>> {
        let (Some(j), Some(i)) = (self.left_index(w), self.right_index(w)) else {
            return Ok(None);
        };
        let Some((e1, x)) = self.phi_iota(i, w)? else {
            return Ok(None);
        };
        let Some((e2, y)) = self.phi_left_cell(j, &x)? else {
            return Ok(None);
        };
        Ok(Some((i, e1 + e2, y, j)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_two_cells() {
        let cache = KlCache::new(2, 6);
        let atlas = CellAtlas::build(&cache, Truncation::new(6, 2), 0).unwrap();
        let top = atlas.cells_for(&Partition::new(vec![2]).unwrap()).unwrap();
        assert_eq!(top.left_cells.len(), 2);
        assert!(top.all_maps_found());
        let s1 = AffinePerm::simple(2, 1).unwrap();
        let s0 = AffinePerm::simple(2, 0).unwrap();
        assert!(top.in_base_left_cell(&s1));
        assert!(atlas.left_equiv(&s1, &(&s0 * &s1)));
        assert!(!atlas.left_equiv(&s1, &s0));
        let bottom = atlas.cells_for(&Partition::new(vec![1, 1]).unwrap()).unwrap();
        assert_eq!(bottom.left_cells.len(), 1);
        assert!(bottom.members.contains(&AffinePerm::omega(2)));
    }

    #[test]
    fn rank_three_left_cell_counts() {
        let cache = KlCache::new(3, 8);
        let atlas = CellAtlas::build(&cache, Truncation::new(8, 2), 6).unwrap();
        for cells in atlas.lambda_cells() {
            let expected = cells.data.n_cells().to_usize().unwrap();
            assert_eq!(cells.left_cells.len(), expected, "{}", cells.lambda());
            assert!(cells.all_maps_found(), "{}", cells.lambda());
        }
    }
}
