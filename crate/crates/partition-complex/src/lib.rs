//! Set-partition posets and the partition complexes `T_K`.
//!
//! `T_K` is the pointed simplicial object with a single point in level 0,
//! `∗₊` in level 1, and in level `p ≥ 2` the `(p−2)`-simplices of the nerve
//! of the partition poset `Π_K` plus a disjoint basepoint; concretely, level
//! `p` holds the weak chains of `p−1` partitions of the ground set. The
//! group action is the one induced on partitions.
//!
//! Storage is normalized: levels keep only strict chains, the weak chains
//! with repeats being the images of the repeat degeneracies. The two outer
//! faces of every level collapse to the basepoint, and a strict chain counts
//! as degenerate exactly when it passes through both the discrete and the
//! indiscrete partition. Under that convention the non-degenerate chain
//! complex of `T_k` has homology of rank `(k−1)!` concentrated in degree
//! `k` (checked for `k ≤ 5` in the test suite), which is the signature that
//! pins down the structure maps the simplex sets alone leave open.

use chain_cube::{scalar, ChainComplex, Matrix, Scalar};
use group_core::{catalog, Elem, Subgroup};
use gset::{GSet, Point};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use thiserror::Error;

/// Partition of the ground set: disjoint blocks covering it, each block
/// sorted, blocks ordered by least element.
pub type Partition = Vec<Vec<Point>>;

/// Ground sets above this size are refused (Bell-number growth).
pub const MAX_GROUND: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("ground set has {0} points; partition complexes stop at {MAX_GROUND}")]
    TooLarge(usize),
    #[error("k = {0} is outside the supported range {1}..={2}")]
    OutOfRange(usize, usize, usize),
}

fn canonical(mut blocks: Vec<Vec<Point>>) -> Partition {
    for b in &mut blocks {
        b.sort_unstable();
    }
    blocks.sort();
    blocks
}

/// All set partitions of `0..n` via restricted-growth strings.
fn enumerate_partitions(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut assign = vec![0usize; n];
    fn rec(i: usize, used: usize, assign: &mut Vec<usize>, out: &mut Vec<Partition>) {
        let n = assign.len();
        if i == n {
            let mut blocks = vec![Vec::new(); used];
            for (x, &b) in assign.iter().enumerate() {
                blocks[b].push(x);
            }
            out.push(canonical(blocks));
            return;
        }
        for b in 0..=used.min(i) {
            assign[i] = b;
            rec(i + 1, used.max(b + 1), assign, out);
        }
    }
    if n == 0 {
        return vec![Vec::new()];
    }
    rec(0, 0, &mut assign, &mut out);
    out.sort();
    out
}

/// The poset `Π_K` of set partitions of the points of a G-set, ordered by
/// refinement (`a ≤ b` iff every block of `a` lies inside a block of `b`),
/// with the action induced from the ground set.
#[derive(Debug, Clone)]
pub struct PartitionPoset {
    gset: GSet,
    partitions: Vec<Partition>,
    index: BTreeMap<Partition, usize>,
    leq: Vec<Vec<bool>>,
    above: Vec<Vec<usize>>,
    action: Vec<Vec<usize>>,
}

impl PartitionPoset {
    pub fn new(ground: &GSet) -> Result<Self, PartitionError> {
        let n = ground.size();
        if n > MAX_GROUND {
            return Err(PartitionError::TooLarge(n));
        }
        let partitions = enumerate_partitions(n);
        let index: BTreeMap<Partition, usize> =
            partitions.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let m = partitions.len();
        let fits = |a: &Partition, b: &Partition| {
            a.iter().all(|blk| b.iter().any(|c| blk.iter().all(|x| c.contains(x))))
        };
        let mut leq = vec![vec![false; m]; m];
        let mut above = vec![Vec::new(); m];
        for i in 0..m {
            for j in 0..m {
                if fits(&partitions[i], &partitions[j]) {
                    leq[i][j] = true;
                    if i != j {
                        above[i].push(j);
                    }
                }
            }
        }
        let action = ground
            .group()
            .elements()
            .map(|g| {
                partitions
                    .iter()
                    .map(|p| {
                        let moved = canonical(
                            p.iter()
                                .map(|b| b.iter().map(|&x| ground.act(g, x)).collect())
                                .collect(),
                        );
                        index[&moved]
                    })
                    .collect()
            })
            .collect();
        Ok(PartitionPoset { gset: ground.clone(), partitions, index, leq, above, action })
    }

    pub fn ground(&self) -> &GSet {
        &self.gset
    }

    pub fn len(&self) -> usize {
        self.partitions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.partitions.is_empty()
    }

    pub fn partition(&self, i: usize) -> &Partition {
        &self.partitions[i]
    }

    pub fn position(&self, p: &Partition) -> Option<usize> {
        self.index.get(&canonical(p.clone())).copied()
    }

    /// `a ≤ b` in the refinement order.
    pub fn refines(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    /// The discrete partition, the minimum.
    pub fn bottom(&self) -> usize {
        0
    }

    /// The indiscrete partition, the maximum.
    pub fn top(&self) -> usize {
        self.index[&canonical(vec![self.gset.points().collect()])]
    }

    pub fn block_count(&self, i: usize) -> usize {
        self.partitions[i].len()
    }

    /// Neither discrete nor indiscrete.
    pub fn is_proper(&self, i: usize) -> bool {
        i != self.bottom() && i != self.top()
    }

    pub fn act(&self, g: Elem, i: usize) -> usize {
        self.action[g as usize][i]
    }

    /// Elements strictly coarser than `i`.
    pub fn strictly_above(&self, i: usize) -> &[usize] {
        &self.above[i]
    }

    /// Strict chains grouped by length, `out[l]` holding the chains of
    /// `l + 1` elements, restricted to the elements accepted by `allowed`.
    fn strict_chains(&self, allowed: impl Fn(usize) -> bool) -> Vec<Vec<Vec<usize>>> {
        let mut by_len: Vec<Vec<Vec<usize>>> =
            vec![(0..self.len()).filter(|&i| allowed(i)).map(|i| vec![i]).collect()];
        loop {
            let mut next = Vec::new();
            for chain in by_len.last().expect("seeded with singletons") {
                let last = *chain.last().expect("chains are nonempty");
                for &j in &self.above[last] {
                    if allowed(j) {
                        let mut longer = chain.clone();
                        longer.push(j);
                        next.push(longer);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            by_len.push(next);
        }
        by_len
    }
}

/// One stored simplex: a strict chain of partition indices. `degenerate`
/// marks the chains through both extremes, which die in the normalized
/// complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TSimplex {
    pub chain: Vec<usize>,
    pub degenerate: bool,
}

/// The partition complex of a ground G-set, stored levelwise in normalized
/// form. Level `m ≥ 1` holds the strict chains of `m − 1` partitions (level
/// 1 the empty chain, the non-basepoint of `∗₊`); level 0 has only the
/// basepoint.
#[derive(Debug, Clone)]
pub struct TComplex {
    poset: PartitionPoset,
    levels: Vec<Vec<TSimplex>>,
    index: Vec<BTreeMap<Vec<usize>, usize>>,
}

impl TComplex {
    fn from_levels(poset: PartitionPoset, chains: Vec<Vec<Vec<usize>>>) -> Self {
        let bottom = poset.bottom();
        let top = poset.top();
        let mut levels: Vec<Vec<TSimplex>> = vec![Vec::new(), vec![TSimplex {
            chain: Vec::new(),
            degenerate: false,
        }]];
        for group in chains {
            levels.push(
                group
                    .into_iter()
                    .map(|chain| {
                        let degenerate =
                            chain.contains(&bottom) && chain.contains(&top);
                        TSimplex { chain, degenerate }
                    })
                    .collect(),
            );
        }
        let index = levels
            .iter()
            .map(|lvl| {
                lvl.iter().enumerate().map(|(i, s)| (s.chain.clone(), i)).collect()
            })
            .collect();
        TComplex { poset, levels, index }
    }

    pub fn poset(&self) -> &PartitionPoset {
        &self.poset
    }

    /// Largest level with stored simplices is `max_level() − 1` at worst;
    /// all higher levels consist of repeat degeneracies only.
    pub fn max_level(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, m: usize) -> &[TSimplex] {
        self.levels.get(m).map(Vec::as_slice).unwrap_or(&[])
    }

    /// `i`-th face of simplex `s` in level `m`; `None` is the basepoint.
    /// The outer faces `i = 0` and `i = m` always collapse.
    pub fn face(&self, m: usize, s: usize, i: usize) -> Option<usize> {
        assert!(i <= m, "face index {i} out of range for level {m}");
        if i == 0 || i == m {
            return None;
        }
        let mut chain = self.levels[m][s].chain.clone();
        chain.remove(i - 1);
        Some(self.index[m - 1][&chain])
    }

    /// Induced action on level `m`.
    pub fn act(&self, g: Elem, m: usize, s: usize) -> usize {
        let moved: Vec<usize> =
            self.levels[m][s].chain.iter().map(|&i| self.poset.act(g, i)).collect();
        self.index[m][&moved]
    }

    /// Chain complex on the non-degenerate simplices; `∂` is the alternating
    /// face sum, outer faces contributing nothing.
    pub fn nondegenerate_chain_complex(&self) -> ChainComplex<Scalar> {
        let positions: Vec<Vec<Option<usize>>> = self
            .levels
            .iter()
            .map(|lvl| {
                let mut next = 0;
                lvl.iter()
                    .map(|s| {
                        if s.degenerate {
                            None
                        } else {
                            next += 1;
                            Some(next - 1)
                        }
                    })
                    .collect()
            })
            .collect();
        let mut dims = BTreeMap::new();
        let mut d = BTreeMap::new();
        for (m, lvl) in self.levels.iter().enumerate() {
            let count = lvl.iter().filter(|s| !s.degenerate).count();
            if count > 0 {
                dims.insert(m as i64, count);
            }
        }
        for m in 2..self.levels.len() {
            let (rows, cols) = (self.level(m - 1).len(), self.level(m).len());
            if rows == 0 || cols == 0 {
                continue;
            }
            let mut mat = Matrix::zero(
                dims.get(&(m as i64 - 1)).copied().unwrap_or(0),
                dims.get(&(m as i64)).copied().unwrap_or(0),
            );
            for s in 0..self.levels[m].len() {
                let Some(col) = positions[m][s] else { continue };
                for i in 1..m {
                    let t = self.face(m, s, i).expect("inner faces are simplices");
                    let row = positions[m - 1][t]
                        .expect("faces of non-degenerate chains avoid the extremes");
                    mat.add_to(row, col, scalar(if i % 2 == 0 { 1 } else { -1 }));
                }
            }
            if mat.rows() > 0 && mat.cols() > 0 {
                d.insert(m as i64, mat);
            }
        }
        ChainComplex::new(dims, d).expect("face identities make ∂² = 0")
    }

    /// Levelwise simplex lists with face and degeneracy tables. Faces are
    /// indices into the previous level (`null` = basepoint); degeneracies
    /// are written as the weak chains they produce, the outer two being the
    /// collapsed partners of the outer faces.
    pub fn to_json(&self) -> Value {
        let levels: Vec<Value> = self
            .levels
            .iter()
            .enumerate()
            .map(|(m, lvl)| {
                let simplices: Vec<Value> = lvl
                    .iter()
                    .enumerate()
                    .map(|(s, simplex)| {
                        let faces: Vec<Value> = (0..=m)
                            .map(|i| match self.face(m, s, i) {
                                Some(t) => json!(t),
                                None => Value::Null,
                            })
                            .collect();
                        let degeneracies: Vec<Value> = (0..=m)
                            .map(|i| {
                                if i == 0 || i == m {
                                    Value::Null
                                } else {
                                    let mut weak = simplex.chain.clone();
                                    weak.insert(i - 1, simplex.chain[i - 1]);
                                    json!(weak)
                                }
                            })
                            .collect();
                        json!({
                            "chain": simplex.chain,
                            "faces": faces,
                            "degeneracies": degeneracies,
                            "degenerate": simplex.degenerate,
                        })
                    })
                    .collect();
                json!(simplices)
            })
            .collect();
        json!({
            "ground": {
                "group": self.poset.gset.group().name(),
                "points": self.poset.gset.size(),
            },
            "partitions": self.poset.partitions,
            "levels": levels,
        })
    }
}

/// The partition complex of a ground G-set.
pub fn build_t(ground: &GSet) -> Result<TComplex, PartitionError> {
    let poset = PartitionPoset::new(ground)?;
    let chains = poset.strict_chains(|_| true);
    Ok(TComplex::from_levels(poset, chains))
}

/// Non-basepoint non-degenerate `m`-simplices.
pub fn nondegenerate_counts(t: &TComplex, m: usize) -> usize {
    t.level(m).iter().filter(|s| !s.degenerate).count()
}

/// Levelwise fixed points of a subgroup of the acting group; closed under
/// faces, so again a partition complex in normalized form.
pub fn fixed_subcomplex(t: &TComplex, l: &Subgroup) -> TComplex {
    l.validate(t.poset.gset.group()).expect("L must be a subgroup of the acting group");
    let fixed: Vec<bool> = (0..t.poset.len())
        .map(|i| l.members().iter().all(|&g| t.poset.act(g, i) == i))
        .collect();
    let levels: Vec<Vec<TSimplex>> = t
        .levels
        .iter()
        .map(|lvl| {
            lvl.iter()
                .filter(|s| s.chain.iter().all(|&i| fixed[i]))
                .cloned()
                .collect()
        })
        .collect();
    let index = levels
        .iter()
        .map(|lvl: &Vec<TSimplex>| {
            lvl.iter().enumerate().map(|(i, s)| (s.chain.clone(), i)).collect()
        })
        .collect();
    TComplex { poset: t.poset.clone(), levels, index }
}

/// Reduced homology ranks of the realization, from the non-degenerate
/// chain complex.
pub fn t_homology(ground: &GSet) -> Result<BTreeMap<i64, usize>, PartitionError> {
    Ok(build_t(ground)?.nondegenerate_chain_complex().homology_ranks())
}

/// Reduced homology of the nerve of the proper part of `Π_k` (discrete and
/// indiscrete partitions removed), computed from the augmented chain complex
/// of strict chains. For `k = 2` the proper part is empty and the reduced
/// homology is rank 1 in degree −1.
pub fn proper_partition_nerve_homology(k: usize) -> Result<BTreeMap<i64, usize>, PartitionError> {
    if !(2..=MAX_GROUND).contains(&k) {
        return Err(PartitionError::OutOfRange(k, 2, MAX_GROUND));
    }
    let trivial = catalog("C1").expect("catalog has the trivial group");
    let ground = GSet::new(
        trivial,
        vec![(0..k).collect()],
        (0..k).map(|x| x.to_string()).collect(),
        None,
    )
    .expect("identity action is valid");
    let poset = PartitionPoset::new(&ground)?;
    let chains = poset.strict_chains(|i| poset.is_proper(i));
    // Degree p holds the chains of p + 1 proper partitions, degree −1 the
    // empty chain; every face is a genuine drop here.
    let mut dims = BTreeMap::new();
    dims.insert(-1, 1);
    let mut index: Vec<BTreeMap<&[usize], usize>> = Vec::new();
    for (l, group) in chains.iter().enumerate() {
        if group.is_empty() {
            break;
        }
        dims.insert(l as i64, group.len());
        index.push(group.iter().enumerate().map(|(i, c)| (c.as_slice(), i)).collect());
    }
    let mut d = BTreeMap::new();
    for p in 0..index.len() {
        let cols = chains[p].len();
        let rows = if p == 0 { 1 } else { chains[p - 1].len() };
        let mut mat = Matrix::zero(rows, cols);
        for (col, chain) in chains[p].iter().enumerate() {
            for i in 0..=p {
                let sign = scalar(if i % 2 == 0 { 1 } else { -1 });
                if p == 0 {
                    mat.add_to(0, col, sign);
                } else {
                    let mut dropped = chain.clone();
                    dropped.remove(i);
                    mat.add_to(index[p - 1][dropped.as_slice()], col, sign);
                }
            }
        }
        d.insert(p as i64, mat);
    }
    let complex = ChainComplex::new(dims, d).expect("nerve differential squares to zero");
    Ok(complex.homology_ranks())
}

/// Both sides of the Snaith index count: multisets of positive integers
/// summing to `k`, counted by coin-change DP, and integer partitions of
/// `k`, counted by the pentagonal-number recurrence. The two must agree.
pub fn snaith_index_count(k: usize) -> (u64, u64) {
    assert!(k <= 40, "Snaith index counting is specified for k ≤ 40");
    let mut dp = vec![0u64; k + 1];
    dp[0] = 1;
    for part in 1..=k {
        for s in part..=k {
            dp[s] += dp[s - part];
        }
    }
    let mut p = vec![0i64; k + 1];
    p[0] = 1;
    for n in 1..=k as i64 {
        let mut total = 0i64;
        let mut j = 1i64;
        loop {
            let (g1, g2) = (j * (3 * j - 1) / 2, j * (3 * j + 1) / 2);
            if g1 > n {
                break;
            }
            let sign = if j % 2 == 0 { -1 } else { 1 };
            total += sign * p[(n - g1) as usize];
            if g2 <= n {
                total += sign * p[(n - g2) as usize];
            }
            j += 1;
        }
        p[n as usize] = total;
    }
    (dp[k], p[k] as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trivial_ground(k: usize) -> GSet {
        let c1 = catalog("C1").unwrap();
        GSet::new(c1, vec![(0..k).collect()], (0..k).map(|x| x.to_string()).collect(), None)
            .unwrap()
    }

    #[test]
    fn partitions_of_three() {
        let poset = PartitionPoset::new(&trivial_ground(3)).unwrap();
        assert_eq!(poset.len(), 5);
        assert_eq!(poset.partition(poset.bottom()), &vec![vec![0], vec![1], vec![2]]);
        assert_eq!(poset.partition(poset.top()), &vec![vec![0, 1, 2]]);
        assert!(poset.refines(poset.bottom(), poset.top()));
        assert!(!poset.refines(poset.top(), poset.bottom()));
    }

    #[test]
    fn level_shape_of_t_three() {
        let t = build_t(&trivial_ground(3)).unwrap();
        let sizes: Vec<usize> = (0..=t.max_level()).map(|m| t.level(m).len()).collect();
        assert_eq!(sizes, vec![0, 1, 5, 7, 3]);
        assert_eq!(nondegenerate_counts(&t, 3), 6);
    }

    #[test]
    fn outer_faces_collapse() {
        let t = build_t(&trivial_ground(2)).unwrap();
        assert_eq!(t.face(2, 0, 0), None);
        assert_eq!(t.face(2, 0, 2), None);
        assert_eq!(t.face(2, 0, 1), Some(0));
    }

    #[test]
    fn snaith_small() {
        assert_eq!(snaith_index_count(1), (1, 1));
        assert_eq!(snaith_index_count(4), (5, 5));
    }
}
