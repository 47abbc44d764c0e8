//! Finite G-sets with explicit point actions.
//!
//! A [`GSet`] stores the whole action table `g -> (x -> g.x)`, an optional
//! basepoint (required to be fixed by every element), and human-readable
//! point names so downstream DOT/JSON output is stable. Construction always
//! validates the action axioms.
//!
//! The comparison [`tree_leq`] is the order of the tree of finite G-sets:
//! `K <= J` when some equivariant map `K -> J` induces an injection on orbit
//! sets. It is decided by matching orbits along stabilizer subconjugacy.

mod parse;

pub use parse::parse_gset_file;

use group_core::{Elem, FiniteGroup, GroupError, Subgroup};
use itertools::Itertools;
use thiserror::Error;

pub type Point = usize;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GSetError {
    #[error("action table has {rows} rows, group has order {order}")]
    ActionShape { rows: usize, order: usize },
    #[error("element {g} does not act as a permutation")]
    NotPermutation { g: Elem },
    #[error("identity does not act trivially")]
    IdentityActs,
    #[error("action is not associative at g={g}, h={h}, x={x}")]
    NotAction { g: Elem, h: Elem, x: Point },
    #[error("basepoint {0} is not fixed by the whole group")]
    BasepointMoves(Point),
    #[error("point {0} is out of range")]
    PointRange(Point),
    #[error("map is not equivariant at g={g}, x={x}")]
    NotEquivariant { g: Elem, x: Point },
    #[error("map does not preserve the basepoint")]
    BasepointNotPreserved,
    #[error("domain and codomain live over different groups")]
    GroupMismatch,
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("cannot parse gset file: {0}")]
    Parse(String),
}

#[derive(Clone, PartialEq, Eq)]
pub struct GSet {
    group: FiniteGroup,
    /// `action[g][x] = g.x`
    action: Vec<Vec<Point>>,
    names: Vec<String>,
    basepoint: Option<Point>,
}

impl std::fmt::Debug for GSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "GSet({} points over {}{})",
            self.size(),
            self.group.name(),
            if self.basepoint.is_some() { ", pointed" } else { "" }
        )
    }
}

impl GSet {
    pub fn new(
        group: FiniteGroup,
        action: Vec<Vec<Point>>,
        names: Vec<String>,
        basepoint: Option<Point>,
    ) -> Result<Self, GSetError> {
        let order = group.order();
        if action.len() != order {
            return Err(GSetError::ActionShape { rows: action.len(), order });
        }
        let n = names.len();
        for (g, row) in action.iter().enumerate() {
            if row.len() != n || {
                let mut s = row.clone();
                s.sort_unstable();
                s != (0..n).collect_vec()
            } {
                return Err(GSetError::NotPermutation { g: g as Elem });
            }
        }
        if n > 0 && action[0] != (0..n).collect_vec() {
            return Err(GSetError::IdentityActs);
        }
        for g in group.elements() {
            for h in group.elements() {
                let gh = group.mul(g, h);
                for x in 0..n {
                    if action[g as usize][action[h as usize][x]] != action[gh as usize][x] {
                        return Err(GSetError::NotAction { g, h, x });
                    }
                }
            }
        }
        if let Some(b) = basepoint {
            if b >= n {
                return Err(GSetError::PointRange(b));
            }
            if !group.elements().all(|g| action[g as usize][b] == b) {
                return Err(GSetError::BasepointMoves(b));
            }
        }
        Ok(GSet { group, action, names, basepoint })
    }

    /// Empty G-set.
    pub fn empty(group: FiniteGroup) -> Self {
        let order = group.order();
        GSet { group, action: vec![Vec::new(); order], names: Vec::new(), basepoint: None }
    }

    /// Disjoint union of coset spaces `G/H` for the listed stabilizers.
    /// Within each orbit, points are the cosets in order of their least
    /// representative, named `"<orbit>:<rep>"`.
    pub fn from_orbits(group: &FiniteGroup, stabilizers: &[Subgroup]) -> Result<Self, GSetError> {
        let order = group.order();
        let mut action: Vec<Vec<Point>> = vec![Vec::new(); order];
        let mut names: Vec<String> = Vec::new();
        for (oi, h) in stabilizers.iter().enumerate() {
            h.validate(group)?;
            let mut coset_of = vec![usize::MAX; order];
            let mut reps: Vec<Elem> = Vec::new();
            for a in group.elements() {
                if coset_of[a as usize] != usize::MAX {
                    continue;
                }
                for &m in h.members() {
                    coset_of[group.mul(a, m) as usize] = reps.len();
                }
                reps.push(a);
            }
            let base = names.len();
            for &r in &reps {
                names.push(format!("{oi}:{}", group.elem_name(r)));
            }
            for g in group.elements() {
                for &r in &reps {
                    action[g as usize].push(base + coset_of[group.mul(g, r) as usize]);
                }
            }
        }
        GSet::new(group.clone(), action, names, None)
    }

    /// Adds a disjoint fixed basepoint, named `+`, as the last point.
    pub fn with_added_basepoint(&self) -> Self {
        assert!(self.basepoint.is_none(), "already pointed");
        let n = self.size();
        let mut action = self.action.clone();
        for row in &mut action {
            row.push(n);
        }
        let mut names = self.names.clone();
        names.push("+".to_string());
        GSet { group: self.group.clone(), action, names, basepoint: Some(n) }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn points(&self) -> std::ops::Range<Point> {
        0..self.size()
    }

    pub fn basepoint(&self) -> Option<Point> {
        self.basepoint
    }

    pub fn point_name(&self, x: Point) -> &str {
        &self.names[x]
    }

    pub fn act(&self, g: Elem, x: Point) -> Point {
        self.action[g as usize][x]
    }

    /// Orbits under the full group, sorted by least point, each sorted.
    pub fn orbit_decomposition(&self) -> Vec<Vec<Point>> {
        self.orbits_under_members(&self.group.elements().collect_vec())
    }

    /// Orbits under a subgroup of the acting group.
    pub fn orbits_under(&self, h: &Subgroup) -> Vec<Vec<Point>> {
        self.orbits_under_members(h.members())
    }

    fn orbits_under_members(&self, members: &[Elem]) -> Vec<Vec<Point>> {
        let mut seen = vec![false; self.size()];
        let mut orbits = Vec::new();
        for x in self.points() {
            if seen[x] {
                continue;
            }
            let orbit: std::collections::BTreeSet<Point> =
                members.iter().map(|&g| self.act(g, x)).collect();
            for &y in &orbit {
                seen[y] = true;
            }
            orbits.push(orbit.into_iter().collect_vec());
        }
        orbits
    }

    pub fn orbit_of(&self, x: Point) -> Vec<Point> {
        self.group.elements().map(|g| self.act(g, x)).sorted().dedup().collect()
    }

    pub fn stabilizer(&self, x: Point) -> Subgroup {
        let members: Vec<Elem> =
            self.group.elements().filter(|&g| self.act(g, x) == x).collect();
        Subgroup::new(&self.group, &members).expect("stabilizers are subgroups")
    }

    /// Points fixed by every member of `h`.
    pub fn fixed_points(&self, h: &Subgroup) -> Vec<Point> {
        self.points()
            .filter(|&x| h.members().iter().all(|&g| self.act(g, x) == x))
            .collect()
    }

    /// Quotient by a normal subgroup: the H-orbit set with its G/H action,
    /// plus the point projection. The basepoint (if any) carries over.
    pub fn quotient_gset(&self, h: &Subgroup) -> Result<(GSet, Vec<Point>), GSetError> {
        let (q, coset_of) = self.group.quotient_with_projection(h)?;
        let h_orbits = self.orbits_under(h);
        let mut class_of = vec![usize::MAX; self.size()];
        for (c, orbit) in h_orbits.iter().enumerate() {
            for &x in orbit {
                class_of[x] = c;
            }
        }
        // rep of each quotient element: least group element in the coset
        let mut rep = vec![Elem::MAX; q.order()];
        for g in self.group.elements() {
            let c = coset_of[g as usize] as usize;
            if rep[c] == Elem::MAX {
                rep[c] = g;
            }
        }
        let action: Vec<Vec<Point>> = (0..q.order())
            .map(|c| h_orbits.iter().map(|orbit| class_of[self.act(rep[c], orbit[0])]).collect())
            .collect();
        let names = h_orbits.iter().map(|orbit| self.names[orbit[0]].clone()).collect();
        let basepoint = self.basepoint.map(|b| class_of[b]);
        let qset = GSet::new(q, action, names, basepoint)?;
        Ok((qset, class_of))
    }

    /// Multiset of transitive types: the sorted list of subgroup-class
    /// indices (into [`FiniteGroup::subgroup_conjugacy_classes`]) of the
    /// orbit stabilizers. Two G-sets over the same group are isomorphic
    /// exactly when their keys agree.
    pub fn iso_class_key(&self) -> Vec<usize> {
        let classes = self.group.subgroup_conjugacy_classes();
        self.orbit_decomposition()
            .iter()
            .map(|orbit| {
                let stab = self.stabilizer(orbit[0]);
                classes
                    .iter()
                    .position(|c| c.contains(&stab))
                    .expect("stabilizer appears in the subgroup lattice")
            })
            .sorted()
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivariantMap {
    values: Vec<Point>,
}

impl EquivariantMap {
    pub fn new(dom: &GSet, cod: &GSet, values: Vec<Point>) -> Result<Self, GSetError> {
        if dom.group != cod.group {
            return Err(GSetError::GroupMismatch);
        }
        if values.len() != dom.size() {
            return Err(GSetError::PointRange(values.len()));
        }
        for &v in &values {
            if v >= cod.size() {
                return Err(GSetError::PointRange(v));
            }
        }
        for g in dom.group.elements() {
            for x in dom.points() {
                if values[dom.act(g, x)] != cod.act(g, values[x]) {
                    return Err(GSetError::NotEquivariant { g, x });
                }
            }
        }
        if let (Some(bd), Some(bc)) = (dom.basepoint, cod.basepoint) {
            if values[bd] != bc {
                return Err(GSetError::BasepointNotPreserved);
            }
        }
        Ok(EquivariantMap { values })
    }

    pub fn apply(&self, x: Point) -> Point {
        self.values[x]
    }

    pub fn values(&self) -> &[Point] {
        &self.values
    }

    /// Does the induced map on orbit sets have no collisions?
    pub fn is_injective_on_orbits(&self, dom: &GSet, cod: &GSet) -> bool {
        let cod_orbits = cod.orbit_decomposition();
        let orbit_index = |y: Point| cod_orbits.iter().position(|o| o.contains(&y)).unwrap();
        let images: Vec<usize> =
            dom.orbit_decomposition().iter().map(|o| orbit_index(self.values[o[0]])).collect();
        images.iter().unique().count() == images.len()
    }
}

/// The tree order on finite G-sets: `K <= J` when an equivariant map
/// `K -> J` injective on orbits exists. Decided orbit-wise: an orbit with
/// stabilizer `H` admits a map into one with stabilizer `L` exactly when `H`
/// is subconjugate to `L`, so the question is a bipartite matching.
pub fn tree_leq(k: &GSet, j: &GSet) -> bool {
    assert_eq!(k.group(), j.group(), "tree order compares G-sets over one group");
    let g = k.group();
    let k_stabs: Vec<Subgroup> =
        k.orbit_decomposition().iter().map(|o| k.stabilizer(o[0])).collect();
    let j_stabs: Vec<Subgroup> =
        j.orbit_decomposition().iter().map(|o| j.stabilizer(o[0])).collect();
    if k_stabs.len() > j_stabs.len() {
        return false;
    }
    let admissible: Vec<Vec<usize>> = k_stabs
        .iter()
        .map(|h| {
            j_stabs
                .iter()
                .enumerate()
                .filter(|(_, l)| g.is_subconjugate(h, l))
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    // augmenting-path matching, K orbits into J orbits
    let mut matched_to: Vec<Option<usize>> = vec![None; j_stabs.len()];
    fn augment(
        u: usize,
        admissible: &[Vec<usize>],
        matched_to: &mut Vec<Option<usize>>,
        visited: &mut Vec<bool>,
    ) -> bool {
        for &v in &admissible[u] {
            if visited[v] {
                continue;
            }
            visited[v] = true;
            if matched_to[v].is_none()
                || augment(matched_to[v].unwrap(), admissible, matched_to, visited)
            {
                matched_to[v] = Some(u);
                return true;
            }
        }
        false
    }
    (0..k_stabs.len()).all(|u| {
        let mut visited = vec![false; j_stabs.len()];
        augment(u, &admissible, &mut matched_to, &mut visited)
    })
}

/// Canonical representatives of the transitive G-sets: one subgroup per
/// conjugacy class, paired with the orbit size `[G:H]`.
pub fn transitive_types(g: &FiniteGroup) -> Vec<(Subgroup, usize)> {
    g.subgroup_conjugacy_classes()
        .into_iter()
        .map(|class| {
            let size = g.order() / class[0].order();
            (class.into_iter().next().unwrap(), size)
        })
        .collect()
}

/// All isomorphism classes of G-sets with at most `max_size` points,
/// including the empty one, as representative G-sets. Sorted by size and
/// then by iso key.
pub fn enumerate_gset_iso_classes(g: &FiniteGroup, max_size: usize) -> Vec<GSet> {
    let types = transitive_types(g);
    let mut picks: Vec<Vec<usize>> = Vec::new();
    // multisets of type indices, nondecreasing, total size bounded
    fn rec(
        types: &[(Subgroup, usize)],
        from: usize,
        budget: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        out.push(cur.clone());
        for i in from..types.len() {
            if types[i].1 <= budget {
                cur.push(i);
                rec(types, i, budget - types[i].1, cur, out);
                cur.pop();
            }
        }
    }
    rec(&types, 0, max_size, &mut Vec::new(), &mut picks);
    picks.sort_by_key(|p| (p.iter().map(|&i| types[i].1).sum::<usize>(), p.clone()));
    picks
        .into_iter()
        .map(|p| {
            let stabs: Vec<Subgroup> = p.iter().map(|&i| types[i].0.clone()).collect();
            GSet::from_orbits(g, &stabs).expect("orbit construction is valid")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use group_core::catalog;

    #[test]
    fn from_orbits_builds_expected_sizes() {
        let s3 = catalog("S3").unwrap();
        let free = GSet::from_orbits(&s3, &[s3.trivial_subgroup()]).unwrap();
        assert_eq!(free.size(), 6);
        assert_eq!(free.orbit_decomposition().len(), 1);
        let pt = GSet::from_orbits(&s3, &[s3.full_subgroup()]).unwrap();
        assert_eq!(pt.size(), 1);
        assert_eq!(pt.stabilizer(0).order(), 6);
    }

    #[test]
    fn basepoint_is_fixed_and_last() {
        let c2 = catalog("C2").unwrap();
        let j = GSet::from_orbits(&c2, &[c2.trivial_subgroup()]).unwrap();
        let jp = j.with_added_basepoint();
        assert_eq!(jp.size(), 3);
        assert_eq!(jp.basepoint(), Some(2));
        assert_eq!(jp.point_name(2), "+");
        assert_eq!(jp.act(1, 2), 2);
        assert_eq!(jp.act(1, 0), 1);
    }

    #[test]
    fn rejects_non_action() {
        let c2 = catalog("C2").unwrap();
        // "action" where the generator acts by a non-involution
        let bad = GSet::new(
            c2,
            vec![vec![0, 1, 2], vec![1, 2, 0]],
            vec!["a".into(), "b".into(), "c".into()],
            None,
        );
        assert!(matches!(bad, Err(GSetError::NotAction { .. })));
    }
}
