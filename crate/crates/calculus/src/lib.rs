//! Index-level equivariant calculus: the Goodwillie tree of excision
//! degrees, restriction-formula index data, triviality and connectivity
//! predicates for symmetric-power truncations, family towers, and the
//! splitting summand enumerations (classical, normal-subgroup, higher).
//!
//! Everything here is combinatorial. An "equivalence of functors" is
//! represented by the data that indexes it: families of graph subgroups,
//! homology ranks of partition complexes, auxiliary quotient and Weyl
//! groups. No space or spectrum is modelled, and symbols like P_J, D_J or
//! Q_G appear only in documentation.

use std::collections::BTreeMap;

use families::{
    family_fk_n, family_q_n, handy_index, layer_family, truncate_family, FamiliesError,
    FamilySet, GraphSubgroup,
};
use gset::{enumerate_gset_iso_classes, tree_leq, GSet, Point};
use group_core::{FiniteGroup, GroupError, Subgroup};
use itertools::Itertools;
use partition_complex::{t_homology, PartitionError};
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CalculusError {
    #[error("the normal-subgroup splitting needs every subgroup of {0} normal")]
    NotAllNormal(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Families(#[from] FamiliesError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
}

/// The tree of excision degrees: nonempty finite G-sets up to isomorphism
/// within the enumeration bounds, ordered by K ≤ J when some equivariant
/// map K → J is injective on orbits. Nodes are sorted by size and then by
/// iso-class key; `edges` holds the covering pairs (lower, upper) of the
/// induced partial order.
#[derive(Clone, Debug)]
pub struct TreeDiagram {
    group: FiniteGroup,
    nodes: Vec<GSet>,
    keys: Vec<Vec<usize>>,
    leq: Vec<Vec<bool>>,
    edges: Vec<(usize, usize)>,
}

impl TreeDiagram {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn nodes(&self) -> &[GSet] {
        &self.nodes
    }

    /// Multiset of orbit stabilizer classes, the node's isomorphism key.
    pub fn node_key(&self, i: usize) -> &[usize] {
        &self.keys[i]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    /// Node index of the iso class of `j`, if it lies within the bounds.
    pub fn find(&self, j: &GSet) -> Option<usize> {
        assert_eq!(j.group(), &self.group, "the tree orders G-sets over one group");
        let key = j.iso_class_key();
        self.keys.iter().position(|k| *k == key)
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph goodwillie_tree {\n  rankdir=BT;\n");
        for (i, key) in self.keys.iter().enumerate() {
            out.push_str(&format!("  n{} [label=\"[{}]\"];\n", i, key.iter().join(",")));
        }
        for &(a, b) in &self.edges {
            out.push_str(&format!("  n{} -> n{};\n", a, b));
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "group": self.group.name(),
            "nodes": self
                .nodes
                .iter()
                .zip(&self.keys)
                .map(|(node, key)| json!({
                    "key": key,
                    "size": node.size(),
                    "orbits": node.orbit_decomposition().len(),
                }))
                .collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|&(a, b)| json!([a, b])).collect::<Vec<_>>(),
        })
    }
}

/// Builds the tree over all iso classes with at most `max_orbits` orbits
/// and at most `max_size` points. The empty G-set is not a node: excision
/// over the empty set carries no content.
pub fn goodwillie_tree(g: &FiniteGroup, max_orbits: usize, max_size: usize) -> TreeDiagram {
    let nodes: Vec<GSet> = enumerate_gset_iso_classes(g, max_size)
        .into_iter()
        .filter(|j| {
            let orbits = j.orbit_decomposition().len();
            orbits >= 1 && orbits <= max_orbits
        })
        .collect();
    let keys: Vec<Vec<usize>> = nodes.iter().map(GSet::iso_class_key).collect();
    let n = nodes.len();
    let mut leq = vec![vec![false; n]; n];
    for a in 0..n {
        for b in 0..n {
            leq[a][b] = tree_leq(&nodes[a], &nodes[b]);
        }
    }
    let mut edges = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a == b || !leq[a][b] {
                continue;
            }
            debug_assert!(!leq[b][a], "the order on iso classes is antisymmetric");
            let covered = (0..n).any(|c| c != a && c != b && leq[a][c] && leq[c][b]);
            if !covered {
                edges.push((a, b));
            }
        }
    }
    TreeDiagram { group: g.clone(), nodes, keys, leq, edges }
}

/// Index data of the restriction formula: restricting a J-excisive functor
/// to H ≤ G yields an iterated truncation over the choices w of one
/// H-orbit per G-orbit of J, with the H-set ⨿w governing each stage.
#[derive(Clone, Debug)]
pub struct RestrictionIndex {
    /// Per G-orbit of J, its H-orbits (as point sets of J).
    pub orbit_menu: Vec<Vec<Vec<Point>>>,
    /// Every choice of one H-orbit per G-orbit, lexicographic in the menu.
    pub choices: Vec<Vec<Vec<Point>>>,
    /// ⨿w for the matching choice, as a set over H viewed abstractly.
    pub h_sets: Vec<GSet>,
}

pub fn restriction_index(j: &GSet, h: &Subgroup) -> Result<RestrictionIndex, CalculusError> {
    let g = j.group();
    h.validate(g)?;
    let (h_group, embed) = g.subgroup_as_group(h);
    let g_orbits = j.orbit_decomposition();
    let mut owner = vec![usize::MAX; j.size()];
    for (i, orbit) in g_orbits.iter().enumerate() {
        for &x in orbit {
            owner[x] = i;
        }
    }
    let mut orbit_menu: Vec<Vec<Vec<Point>>> = vec![Vec::new(); g_orbits.len()];
    for h_orbit in j.orbits_under(h) {
        orbit_menu[owner[h_orbit[0]]].push(h_orbit);
    }
    let choices: Vec<Vec<Vec<Point>>> = if orbit_menu.is_empty() {
        vec![Vec::new()]
    } else {
        orbit_menu.iter().multi_cartesian_product().map(|w| w.into_iter().cloned().collect()).collect()
    };
    let h_sets = choices
        .iter()
        .map(|w| {
            let points: Vec<Point> = w.iter().flatten().copied().sorted().collect();
            let local = |x: Point| points.binary_search(&x).expect("orbits are closed under H");
            let action = embed
                .iter()
                .map(|&e| points.iter().map(|&x| local(j.act(e, x))).collect())
                .collect();
            let names = points.iter().map(|&x| j.point_name(x).to_string()).collect();
            GSet::new(h_group.clone(), action, names, None)
                .expect("restricting an action gives an action")
        })
        .collect();
    Ok(RestrictionIndex { orbit_menu, choices, h_sets })
}

/// Whether the H-geometric fixed points of the nG-truncation of the
/// K-indexed symmetric power are trivial: n < |K| and n ≤ |K/H|.
pub fn png_triviality(g: &FiniteGroup, k_set: &GSet, h: &Subgroup, n: usize) -> bool {
    assert_eq!(k_set.group(), g, "K lives over G");
    h.validate(g).expect("H lives inside G");
    n < k_set.size() && n <= k_set.orbits_under(h).len()
}

/// Connectivity gained by m rounds of the truncation comparison: m times
/// the minimum over nonempty U ⊆ (n)₊ of p(U) − |U| + 1, where p(U) = |K|
/// when the basepoint coordinate lies in U and |K/G| otherwise. The tower
/// diverges exactly when the single-round minimum is positive.
pub fn connectivity_estimate(g: &FiniteGroup, k_set: &GSet, n: usize, m: usize) -> i64 {
    assert_eq!(k_set.group(), g, "K lives over G");
    let size = k_set.size() as i64;
    let orbits = k_set.orbit_decomposition().len() as i64;
    let mut best = i64::MAX;
    // Only |U| and basepoint membership enter p(U) − |U| + 1.
    for with_base in [false, true] {
        let p = if with_base { size } else { orbits };
        for picked in 0..=n as i64 {
            let u = picked + i64::from(with_base);
            if u > 0 {
                best = best.min(p - u + 1);
            }
        }
    }
    m as i64 * best
}

/// The symmetric-power tower of a family R in G × Σ_k: for each stage
/// 1 ≤ n ≤ k, the truncation R(<n) and the layer R(n). The truncations
/// stabilize at R once n exceeds every member's orbit count.
pub fn symmetric_power_tower(
    g: &FiniteGroup,
    k: usize,
    r: &FamilySet,
) -> BTreeMap<usize, (FamilySet, FamilySet)> {
    assert_eq!(r.group(), g, "R lives over G");
    assert_eq!(r.k(), k, "R is a family in G × Σ_k");
    (1..=k).map(|n| (n, (truncate_family(r, n), layer_family(r, n)))).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplittingVariant {
    Classical,
    NormalSubgroup,
    Higher,
}

impl SplittingVariant {
    pub fn as_str(self) -> &'static str {
        match self {
            SplittingVariant::Classical => "classical",
            SplittingVariant::NormalSubgroup => "normal-subgroup",
            SplittingVariant::Higher => "higher",
        }
    }
}

/// One wedge summand: the indexing subgroup, the symmetric-power degree
/// and family class count (higher variant only), and the auxiliary group
/// acting on the summand (a quotient G/H or a Weyl group W(H)).
#[derive(Clone, Debug)]
pub struct Summand {
    pub subgroup: Subgroup,
    pub k: Option<usize>,
    pub class_count: Option<usize>,
    pub aux: FiniteGroup,
}

#[derive(Clone, Debug)]
pub struct SplittingDescriptor {
    pub group: FiniteGroup,
    pub variant: SplittingVariant,
    pub summands: Vec<Summand>,
}

impl SplittingDescriptor {
    pub fn to_json(&self) -> Value {
        json!({
            "group": self.group.name(),
            "variant": self.variant.as_str(),
            "summands": self
                .summands
                .iter()
                .map(|s| json!({
                    "subgroup": s.subgroup.members(),
                    "k": s.k,
                    "classes": s.class_count,
                    "aux": { "name": s.aux.name(), "order": s.aux.order() },
                }))
                .collect::<Vec<_>>(),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TomDieckMode {
    AbelianNormal,
    Conjugacy,
}

/// The classical splitting of suspension spectra as summand index data.
/// Normal mode lists one summand per subgroup H with the quotient G/H
/// attached and requires every subgroup normal; conjugacy mode lists one
/// summand per conjugacy class (H) with the Weyl group W(H).
pub fn tomdieck_summands(
    g: &FiniteGroup,
    mode: TomDieckMode,
) -> Result<SplittingDescriptor, CalculusError> {
    match mode {
        TomDieckMode::AbelianNormal => {
            let subs = g.subgroups();
            if subs.iter().any(|h| !g.is_normal(h)) {
                return Err(CalculusError::NotAllNormal(g.name().to_string()));
            }
            let summands = subs
                .into_iter()
                .map(|h| {
                    let aux = g.quotient(&h).expect("normality was checked");
                    Summand { subgroup: h, k: None, class_count: None, aux }
                })
                .collect();
            Ok(SplittingDescriptor {
                group: g.clone(),
                variant: SplittingVariant::NormalSubgroup,
                summands,
            })
        }
        TomDieckMode::Conjugacy => {
            let summands = g
                .subgroup_conjugacy_classes()
                .into_iter()
                .map(|class| {
                    let h = class.iter().min().expect("classes are nonempty").clone();
                    let aux = g.weyl_group(&h);
                    Summand { subgroup: h, k: None, class_count: None, aux }
                })
                .collect();
            Ok(SplittingDescriptor {
                group: g.clone(),
                variant: SplittingVariant::Classical,
                summands,
            })
        }
    }
}

/// The splitting of the G-fixed points of the n-th truncation of the
/// identity: one summand per normal H ⊴ G and degree k ∈ [n, n|G|] with
/// Q_{k,H}(n) nonempty, recording the class count and the quotient G/H.
/// Pairs with empty families are omitted; they index no summand.
pub fn higher_tomdieck_summands(
    g: &FiniteGroup,
    n: usize,
) -> Result<SplittingDescriptor, CalculusError> {
    assert!(n >= 1, "towers are indexed from 1");
    let mut summands = Vec::new();
    for h in g.normal_subgroups() {
        let aux = g.quotient(&h)?;
        for k in n..=n * g.order() {
            let q = family_q_n(g, k, &h, n)?;
            if q.is_empty() {
                continue;
            }
            summands.push(Summand {
                subgroup: h.clone(),
                k: Some(k),
                class_count: Some(q.len()),
                aux: aux.clone(),
            });
        }
    }
    Ok(SplittingDescriptor { group: g.clone(), variant: SplittingVariant::Higher, summands })
}

/// One degree of the identity tower: the layer family F_k(n), the reduced
/// homology ranks of T_k when the ground set fits the size bound, and per
/// subgroup class the wedge index over the family with automorphism
/// orders.
#[derive(Clone, Debug)]
pub struct LayerEntry {
    pub k: usize,
    pub family: FamilySet,
    pub empty: bool,
    /// None exactly when k > [`HOMOLOGY_GROUND`].
    pub t_homology: Option<BTreeMap<i64, usize>>,
    pub handy: Vec<(Subgroup, Vec<(GraphSubgroup, u64)>)>,
}

#[derive(Clone, Debug)]
pub struct LayerDescriptor {
    pub group: FiniteGroup,
    pub n: usize,
    /// One entry per k in [n, n|G|], empty families included and flagged.
    pub entries: Vec<LayerEntry>,
    /// True when some homology column was skipped for exceeding the
    /// partition size bound; the rest of the data is still complete.
    pub partial: bool,
}

impl LayerDescriptor {
    pub fn to_json(&self) -> Value {
        json!({
            "group": self.group.name(),
            "n": self.n,
            "partial": self.partial,
            "entries": self
                .entries
                .iter()
                .map(|e| json!({
                    "k": e.k,
                    "empty": e.empty,
                    "family": e.family.to_json(),
                    "t_homology": e.t_homology.as_ref().map(|h| {
                        h.iter().map(|(d, r)| json!([d, r])).collect::<Vec<_>>()
                    }),
                    "handy": e
                        .handy
                        .iter()
                        .map(|(h, idx)| json!({
                            "subgroup": h.members(),
                            "classes": idx
                                .iter()
                                .map(|(gamma, aut)| json!({
                                    "class": gamma.to_json(),
                                    "aut_order": aut,
                                }))
                                .collect::<Vec<_>>(),
                        }))
                        .collect::<Vec<_>>(),
                }))
                .collect::<Vec<_>>(),
        })
    }
}

/// Largest ground size whose partition homology the layer descriptor
/// computes. The complex itself builds at 7, but Π_7 has over a million
/// strict chains and exact ranks there are out of reach; everything else
/// in the descriptor still covers the full k range.
pub const HOMOLOGY_GROUND: usize = 6;

fn trivial_ground(k: usize) -> GSet {
    let g = group_core::catalog("C1").expect("the catalog holds the trivial group");
    let names = (0..k).map(|i| i.to_string()).collect();
    GSet::new(g, vec![(0..k).collect()], names, None).expect("the identity row is an action")
}

/// The full index data of the identity-functor layers at stage n: every
/// k in [n, n|G|] with its family, partition homology, and wedge indices.
/// Degrees past the partition size bound keep their family and index data
/// but drop the homology column, and the descriptor is marked partial.
pub fn identity_layer_descriptor(g: &FiniteGroup, n: usize) -> LayerDescriptor {
    assert!(n >= 1, "towers are indexed from 1");
    let reps: Vec<Subgroup> = g
        .subgroup_conjugacy_classes()
        .into_iter()
        .map(|class| class.into_iter().min().expect("classes are nonempty"))
        .collect();
    let mut partial = false;
    let mut entries = Vec::new();
    for k in n..=n * g.order() {
        let family = family_fk_n(g, k, n);
        let hom = if k <= HOMOLOGY_GROUND {
            Some(t_homology(&trivial_ground(k)).expect("the bound was just checked"))
        } else {
            partial = true;
            None
        };
        let handy = reps.iter().map(|h| (h.clone(), handy_index(g, h, k, &family))).collect();
        entries.push(LayerEntry { k, empty: family.is_empty(), family, t_homology: hom, handy });
    }
    LayerDescriptor { group: g.clone(), n, entries, partial }
}
