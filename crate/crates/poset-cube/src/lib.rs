//! Posets with group action: power posets of G-sets, star categories, and
//! the vertex classification of the join cubes built from them.
//!
//! Objects of a [`GPoset`] are opaque ids with stable labels; the order is a
//! full boolean matrix (every poset in sight has at most a thousand or so
//! objects). Posets derived from a G-set carry their subsets alongside in a
//! [`SubsetPoset`] so diagram layers can be indexed by actual subsets.

mod cover;

pub use cover::{
    delooping_cover, star_orbit_cover, validate_equivariant_cover, DeloopingCover,
    EquivariantCover,
};

use group_core::{Elem, FiniteGroup, Subgroup};
use gset::{GSet, Point};
use itertools::Itertools;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

pub type Subset = BTreeSet<Point>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PosetError {
    #[error("order relation is not reflexive at {0}")]
    NotReflexive(usize),
    #[error("order relation is not antisymmetric at ({0}, {1})")]
    NotAntisymmetric(usize, usize),
    #[error("order relation is not transitive at ({0}, {1}, {2})")]
    NotTransitive(usize, usize, usize),
    #[error("action of {g} is not an order-preserving bijection")]
    ActionNotMonotone { g: Elem },
    #[error("action does not compose along the group at ({g}, {h})")]
    ActionNotFunctorial { g: Elem, h: Elem },
    #[error("action table shape does not match the group")]
    ActionShape,
    #[error("classification needs a G-set with at least one non-basepoint orbit")]
    EmptyGSet,
    #[error("poset would have {0} objects, over the supported bound {MAX_OBJECTS}")]
    TooLarge(usize),
    #[error(transparent)]
    GSet(#[from] gset::GSetError),
}

/// Hard cap on constructed poset sizes; the library is meant for exhaustive
/// scans, which stop being exhaustive-in-seconds past this.
pub const MAX_OBJECTS: usize = 20_000;

#[derive(Clone, PartialEq, Eq)]
pub struct GPoset {
    group: FiniteGroup,
    labels: Vec<String>,
    /// `leq[i][j]` means object `i` is below object `j`.
    leq: Vec<Vec<bool>>,
    /// `action[g][i]`, a monotone permutation per group element.
    action: Vec<Vec<usize>>,
}

impl std::fmt::Debug for GPoset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GPoset({} objects over {})", self.len(), self.group.name())
    }
}

impl GPoset {
    /// Full validation: order axioms, and the action being monotone and a
    /// group homomorphism. Quadratic-to-cubic in the object count, so meant
    /// for construction sites that are not already correct by shape.
    pub fn new(
        group: FiniteGroup,
        labels: Vec<String>,
        leq: Vec<Vec<bool>>,
        action: Vec<Vec<usize>>,
    ) -> Result<Self, PosetError> {
        let p = GPoset { group, labels, leq, action };
        p.validate()?;
        Ok(p)
    }

    /// For constructors whose output is ordered correctly by construction
    /// (power posets, products, full subposets of valid posets).
    fn from_parts(
        group: FiniteGroup,
        labels: Vec<String>,
        leq: Vec<Vec<bool>>,
        action: Vec<Vec<usize>>,
    ) -> Self {
        let p = GPoset { group, labels, leq, action };
        debug_assert_eq!(p.validate(), Ok(()));
        p
    }

    pub fn validate(&self) -> Result<(), PosetError> {
        let n = self.len();
        if self.labels.len() != n || self.leq.iter().any(|r| r.len() != n) {
            return Err(PosetError::ActionShape);
        }
        for i in 0..n {
            if !self.leq[i][i] {
                return Err(PosetError::NotReflexive(i));
            }
            for j in 0..n {
                if i != j && self.leq[i][j] && self.leq[j][i] {
                    return Err(PosetError::NotAntisymmetric(i, j));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if !self.leq[i][j] {
                    continue;
                }
                for k in 0..n {
                    if self.leq[j][k] && !self.leq[i][k] {
                        return Err(PosetError::NotTransitive(i, j, k));
                    }
                }
            }
        }
        if self.action.len() != self.group.order() {
            return Err(PosetError::ActionShape);
        }
        for g in self.group.elements() {
            let a = &self.action[g as usize];
            if a.len() != n || {
                let mut s = a.clone();
                s.sort_unstable();
                s != (0..n).collect_vec()
            } {
                return Err(PosetError::ActionNotMonotone { g });
            }
            for i in 0..n {
                for j in 0..n {
                    if self.leq[i][j] && !self.leq[a[i]][a[j]] {
                        return Err(PosetError::ActionNotMonotone { g });
                    }
                }
            }
        }
        for g in self.group.elements() {
            for h in self.group.elements() {
                let gh = self.group.mul(g, h) as usize;
                for i in 0..n {
                    if self.action[g as usize][self.action[h as usize][i]]
                        != self.action[gh][i]
                    {
                        return Err(PosetError::ActionNotFunctorial { g, h });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn objects(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq[i][j]
    }

    pub fn act(&self, g: Elem, i: usize) -> usize {
        self.action[g as usize][i]
    }

    /// Hasse covering relation: `i < j` with nothing strictly between.
    pub fn covers(&self, i: usize, j: usize) -> bool {
        self.lt(i, j) && !self.objects().any(|k| self.lt(i, k) && self.lt(k, j))
    }

    pub fn fixed_objects(&self, h: &Subgroup) -> Vec<usize> {
        self.objects()
            .filter(|&i| h.members().iter().all(|&g| self.act(g, i) == i))
            .collect()
    }

    /// Restriction to a subset of objects (a full subposet). The action is
    /// inherited when the subset is setwise invariant and dropped to the
    /// trivial group otherwise. Returns the new poset and, per new id, the
    /// old id.
    pub fn full_subposet(&self, ids: &[usize]) -> (GPoset, Vec<usize>) {
        let ids: Vec<usize> = ids.iter().copied().sorted().dedup().collect();
        let pos: BTreeMap<usize, usize> =
            ids.iter().enumerate().map(|(new, &old)| (old, new)).collect();
        let n = ids.len();
        let labels = ids.iter().map(|&i| self.labels[i].clone()).collect();
        let leq = (0..n).map(|a| (0..n).map(|b| self.leq[ids[a]][ids[b]]).collect()).collect();
        let invariant = self
            .group
            .elements()
            .all(|g| ids.iter().all(|&i| pos.contains_key(&self.act(g, i))));
        let (group, action) = if invariant {
            let action = self
                .group
                .elements()
                .map(|g| ids.iter().map(|&i| pos[&self.act(g, i)]).collect())
                .collect();
            (self.group.clone(), action)
        } else {
            (group_core::catalog("C1").unwrap(), vec![(0..n).collect()])
        };
        (GPoset::from_parts(group, labels, leq, action), ids)
    }

    /// Product of two posets over the same group, diagonal action.
    /// Object `(i, j)` gets id `i * b.len() + j`.
    pub fn product(a: &GPoset, b: &GPoset) -> Result<(GPoset, Vec<(usize, usize)>), PosetError> {
        assert_eq!(a.group, b.group, "product needs one ambient group");
        let n = a.len().checked_mul(b.len()).expect("product size fits");
        if n > MAX_OBJECTS {
            return Err(PosetError::TooLarge(n));
        }
        let pairs: Vec<(usize, usize)> =
            (0..a.len()).cartesian_product(0..b.len()).collect();
        let labels = pairs
            .iter()
            .map(|&(i, j)| format!("({}|{})", a.labels[i], b.labels[j]))
            .collect();
        let leq = pairs
            .iter()
            .map(|&(i, j)| {
                pairs.iter().map(|&(k, l)| a.leq[i][k] && b.leq[j][l]).collect()
            })
            .collect();
        let action = a
            .group
            .elements()
            .map(|g| {
                pairs
                    .iter()
                    .map(|&(i, j)| a.act(g, i) * b.len() + b.act(g, j))
                    .collect()
            })
            .collect();
        Ok((GPoset::from_parts(a.group.clone(), labels, leq, action), pairs))
    }

    /// The unique initial object, provided it is fixed by `h`. Initial in
    /// the whole poset forces initial in every fixed subposet it belongs to,
    /// which is the shape of invariance arguments over these categories.
    pub fn has_invariant_initial(&self, h: &Subgroup) -> Option<usize> {
        let initial = self.objects().find(|&i| self.objects().all(|j| self.leq[i][j]))?;
        let fixed = h.members().iter().all(|&g| self.act(g, initial) == initial);
        if fixed {
            debug_assert!(self
                .fixed_objects(h)
                .iter()
                .all(|&j| self.leq[initial][j]));
            Some(initial)
        } else {
            None
        }
    }

    /// All maximal strictly increasing chains are irrelevant here; linear
    /// extension order: a permutation listing objects so that below comes
    /// first. Ties broken by id, so the output is deterministic.
    pub fn linear_extension(&self) -> Vec<usize> {
        let n = self.len();
        let mut remaining: BTreeSet<usize> = (0..n).collect();
        let mut out = Vec::with_capacity(n);
        while !remaining.is_empty() {
            let next = *remaining
                .iter()
                .find(|&&i| remaining.iter().all(|&j| j == i || !self.lt(j, i)))
                .expect("a finite poset always has a minimal element");
            remaining.remove(&next);
            out.push(next);
        }
        out
    }

    /// Hasse diagram in DOT format with deterministic node order and labels.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = format!("digraph \"{name}\" {{\n  rankdir=BT;\n");
        for i in self.objects() {
            s.push_str(&format!("  n{i} [label=\"{}\"];\n", self.labels[i]));
        }
        for i in self.objects() {
            for j in self.objects() {
                if self.covers(i, j) {
                    s.push_str(&format!("  n{i} -> n{j};\n"));
                }
            }
        }
        s.push_str("}\n");
        s
    }
}

/// A poset whose objects are subsets of a pointed G-set's points, with the
/// subset stored per object id.
#[derive(Clone, Debug)]
pub struct SubsetPoset {
    /// The pointed G-set the subsets live in.
    pub ambient: GSet,
    pub poset: GPoset,
    pub subsets: Vec<Subset>,
}

impl SubsetPoset {
    pub fn object_of(&self, s: &Subset) -> Option<usize> {
        self.subsets.iter().position(|t| t == s)
    }
}

pub(crate) fn subset_sort_key(s: &Subset) -> (usize, Vec<Point>) {
    (s.len(), s.iter().copied().collect())
}

pub(crate) fn subset_label(j: &GSet, s: &Subset) -> String {
    if s.is_empty() {
        "{}".to_string()
    } else {
        format!("{{{}}}", s.iter().map(|&p| j.point_name(p)).join(","))
    }
}

/// Builds the poset on a canonical list of subsets of `j`'s points, ordered
/// by inclusion, with G acting by image when the family is closed under it
/// (callers pass closed families; this is asserted).
fn subsets_as_poset(j: &GSet, mut subsets: Vec<Subset>) -> SubsetPoset {
    subsets.sort_by_key(subset_sort_key);
    subsets.dedup();
    let index: BTreeMap<&Subset, usize> =
        subsets.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let labels = subsets.iter().map(|s| subset_label(j, s)).collect();
    let leq = subsets
        .iter()
        .map(|a| subsets.iter().map(|b| a.is_subset(b)).collect())
        .collect();
    let action: Vec<Vec<usize>> = j
        .group()
        .elements()
        .map(|g| {
            subsets
                .iter()
                .map(|s| {
                    let image: Subset = s.iter().map(|&p| j.act(g, p)).collect();
                    *index.get(&image).expect("subset family closed under the action")
                })
                .collect()
        })
        .collect();
    let poset = GPoset::from_parts(j.group().clone(), labels, leq, action);
    SubsetPoset { ambient: j.clone(), poset, subsets }
}

fn ensure_based(j: &GSet) -> GSet {
    if j.basepoint().is_some() {
        j.clone()
    } else {
        j.with_added_basepoint()
    }
}

/// The poset of all subsets of `j`'s points (of `j₊` when `based`), ordered
/// by inclusion, with G acting by image.
pub fn power_poset(j: &GSet, based: bool) -> Result<SubsetPoset, PosetError> {
    let j_eff = if based { ensure_based(j) } else { j.clone() };
    let n = j_eff.size();
    if n >= usize::BITS as usize || (1usize << n) > MAX_OBJECTS {
        return Err(PosetError::TooLarge(1usize << n.min(30)));
    }
    let subsets: Vec<Subset> = (0..(1usize << n))
        .map(|mask| (0..n).filter(|&p| mask >> p & 1 == 1).collect())
        .collect();
    Ok(subsets_as_poset(&j_eff, subsets))
}

/// Star category of a subset `u` of `j₊`: the union over orbits `o` of the
/// subsets of `o₊ ∩ u`, leaving out each full `o₊`. `None` means `u = j₊`.
/// Carries the G-action when `u` is invariant; otherwise the returned poset
/// is over the trivial group (the action only maps `St(u)` into `St(gu)`).
pub fn star_category(j: &GSet, u: Option<&Subset>) -> SubsetPoset {
    let jp = ensure_based(j);
    let all: Subset = jp.points().collect();
    let u: Subset = match u {
        None => all,
        Some(s) => s.clone(),
    };
    let mut family: BTreeSet<Subset> = BTreeSet::new();
    for (o_plus, _) in orbit_plus_list(&jp) {
        let cap: Vec<Point> = o_plus.intersection(&u).copied().collect();
        for mask in 0..(1usize << cap.len()) {
            let v: Subset =
                (0..cap.len()).filter(|&i| mask >> i & 1 == 1).map(|i| cap[i]).collect();
            if v != o_plus {
                family.insert(v);
            }
        }
    }
    let invariant = jp
        .group()
        .elements()
        .all(|g| u.iter().map(|&p| jp.act(g, p)).collect::<Subset>() == u);
    if invariant {
        subsets_as_poset(&jp, family.into_iter().collect())
    } else {
        let subsets: Vec<Subset> = family.into_iter().collect();
        let plain = jp_with_trivial_group(&jp);
        subsets_as_poset(&plain, subsets)
    }
}

/// Each orbit of the underlying unpointed set, with the basepoint adjoined,
/// paired with the orbit id. Ordered by least point.
pub fn orbit_plus_list(jp: &GSet) -> Vec<(Subset, usize)> {
    let bp = jp.basepoint().expect("pointed G-set");
    jp.orbit_decomposition()
        .into_iter()
        .filter(|o| !o.contains(&bp))
        .enumerate()
        .map(|(idx, o)| {
            let mut s: Subset = o.into_iter().collect();
            s.insert(bp);
            (s, idx)
        })
        .collect()
}

fn jp_with_trivial_group(jp: &GSet) -> GSet {
    let c1 = group_core::catalog("C1").unwrap();
    let names: Vec<String> =
        jp.points().map(|p| jp.point_name(p).to_string()).collect();
    GSet::new(c1, vec![(0..jp.size()).collect()], names, jp.basepoint())
        .expect("identity action is valid")
}

/// All subsets of `j₊` outside the star category, in (size, lex) order.
/// These are the subsets over which strong cocartesianness is quantified.
pub fn outside_star(j: &GSet) -> Result<Vec<Subset>, PosetError> {
    let jp = ensure_based(j);
    let star = star_category(j, None);
    let inside: BTreeSet<&Subset> = star.subsets.iter().collect();
    let n = jp.size();
    if n >= usize::BITS as usize || (1usize << n) > MAX_OBJECTS {
        return Err(PosetError::TooLarge(1usize << n.min(30)));
    }
    let mut out: Vec<Subset> = (0..(1usize << n))
        .map(|mask| (0..n).filter(|&p| mask >> p & 1 == 1).collect::<Subset>())
        .filter(|s| !inside.contains(s))
        .collect();
    out.sort_by_key(subset_sort_key);
    Ok(out)
}

/// Symbolic homotopy type of a vertex of the join cube on `c`: what the
/// gluing of cones and suspensions collapses to.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub enum HomotopyTypeExpr {
    Contractible,
    /// Join of `c` with a discrete set of the given size; `0` is `c` itself.
    JoinWithPoints(usize),
    /// Wedge over the listed orbit ids of the suspension of `c` by that
    /// orbit's permutation representation.
    WedgeOfOrbitSuspensions(Vec<usize>),
}

impl HomotopyTypeExpr {
    /// Reduced homology predicted for the expression applied to a base
    /// object with reduced homology `base` (degree -> rank), given the sizes
    /// of the orbits of `j`. Join with m points multiplies a suspension by
    /// m - 1; suspension by an orbit shifts by the orbit size.
    pub fn predicted_homology(
        &self,
        base: &BTreeMap<i64, usize>,
        orbit_sizes: &[usize],
    ) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        match self {
            HomotopyTypeExpr::Contractible => {}
            HomotopyTypeExpr::JoinWithPoints(0) => {
                out = base.clone();
            }
            HomotopyTypeExpr::JoinWithPoints(m) => {
                for (&q, &r) in base {
                    if r > 0 && *m > 1 {
                        out.insert(q + 1, r * (m - 1));
                    }
                }
            }
            HomotopyTypeExpr::WedgeOfOrbitSuspensions(orbits) => {
                for &o in orbits {
                    for (&q, &r) in base {
                        if r > 0 {
                            *out.entry(q + orbit_sizes[o] as i64).or_insert(0) += r;
                        }
                    }
                }
            }
        }
        out
    }

    /// Connectivity of the expression on a base of connectivity `conn`
    /// (`None` = contractible).
    pub fn connectivity(&self, conn: Option<i64>, orbit_sizes: &[usize]) -> Option<i64> {
        match self {
            HomotopyTypeExpr::Contractible => None,
            HomotopyTypeExpr::JoinWithPoints(0) => conn,
            HomotopyTypeExpr::JoinWithPoints(1) => None,
            HomotopyTypeExpr::JoinWithPoints(_) => conn.map(|c| c + 1),
            HomotopyTypeExpr::WedgeOfOrbitSuspensions(orbits) => {
                if orbits.is_empty() {
                    None
                } else {
                    conn.map(|c| {
                        orbits.iter().map(|&o| c + orbit_sizes[o] as i64).min().unwrap()
                    })
                }
            }
        }
    }
}

/// Classifies the `u`-vertex of the join cube on a G-set `j` with at least
/// one orbit: a join with points when `u` misses the basepoint, contractible
/// when it has the basepoint but swallows no full `o₊`, and a wedge of orbit
/// suspensions otherwise.
pub fn lambda_classify(j: &GSet, u: &Subset) -> Result<HomotopyTypeExpr, PosetError> {
    let jp = ensure_based(j);
    let orbits = orbit_plus_list(&jp);
    if orbits.is_empty() {
        return Err(PosetError::EmptyGSet);
    }
    let bp = jp.basepoint().unwrap();
    if !u.contains(&bp) {
        let meeting = orbits
            .iter()
            .filter(|(o_plus, _)| o_plus.intersection(u).any(|p| *p != bp))
            .count();
        return Ok(HomotopyTypeExpr::JoinWithPoints(meeting));
    }
    let swallowed: Vec<usize> = orbits
        .iter()
        .filter(|(o_plus, _)| o_plus.is_subset(u))
        .map(|(_, idx)| *idx)
        .collect();
    if swallowed.is_empty() {
        Ok(HomotopyTypeExpr::Contractible)
    } else {
        Ok(HomotopyTypeExpr::WedgeOfOrbitSuspensions(swallowed))
    }
}
