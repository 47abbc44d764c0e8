//! Graph subgroups of G × Σ_k and the families of them indexing splitting
//! summands. A subgroup of G × Σ_k meeting 1 × Σ_k trivially is the graph
//! of a homomorphism ρ: H → Σ_k for a unique H ≤ G, and ρ is determined up
//! to Σ_k-conjugacy by the iso class of its H-set. Everything here stores
//! that H-set form: orbit stabilizer classes with multiplicities.

use std::collections::BTreeMap;

use group_core::{Elem, FiniteGroup, GroupError, Subgroup};
use gset::GSet;
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum FamiliesError {
    #[error("subgroup {0:?} is not normal")]
    NotNormal(Vec<Elem>),
    #[error("graph subgroup does not live over the family's group and k")]
    AmbientMismatch,
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// The graph Γ_ρ of a homomorphism ρ: H → Σ_k, recorded by the iso class
/// of the H-set ρ∗k. Stabilizer representatives are canonical within their
/// H-conjugacy class, the list is sorted, and multiplicities are merged, so
/// equal values mean Σ_k-conjugate homomorphisms over the same H.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphSubgroup {
    group: FiniteGroup,
    domain: Subgroup,
    k: usize,
    orbit_types: Vec<(Subgroup, usize)>,
}

/// Canonical representative of the H-conjugacy class of `l` inside
/// `domain`: the member-list minimum over conjugation by `domain`.
fn class_rep_in(group: &FiniteGroup, domain: &Subgroup, l: &Subgroup) -> Subgroup {
    domain
        .members()
        .iter()
        .map(|&h| group.conjugate_subgroup(h, l))
        .min()
        .expect("a subgroup has at least the identity")
}

impl GraphSubgroup {
    pub fn new(
        group: &FiniteGroup,
        domain: Subgroup,
        k: usize,
        orbit_types: Vec<(Subgroup, usize)>,
    ) -> Result<Self, FamiliesError> {
        domain.validate(group)?;
        let mut merged: BTreeMap<Subgroup, usize> = BTreeMap::new();
        let mut size = 0;
        for (l, m) in orbit_types {
            l.validate(group)?;
            if !l.members().iter().all(|&x| domain.contains(x)) {
                return Err(FamiliesError::Group(GroupError::NotSubgroup(
                    "stabilizer is not inside the domain".into(),
                )));
            }
            if m == 0 {
                continue;
            }
            size += m * (domain.order() / l.order());
            *merged.entry(class_rep_in(group, &domain, &l)).or_insert(0) += m;
        }
        if size != k {
            return Err(FamiliesError::Group(GroupError::NotSubgroup(format!(
                "orbit sizes sum to {size}, not {k}"
            ))));
        }
        Ok(GraphSubgroup {
            group: group.clone(),
            domain,
            k,
            orbit_types: merged.into_iter().collect(),
        })
    }

    /// The graph of the trivial homomorphism: k fixed points.
    pub fn trivial(group: &FiniteGroup, domain: Subgroup, k: usize) -> Self {
        let types = vec![(domain.clone(), k)];
        GraphSubgroup::new(group, domain, k, types).expect("the trivial action is valid")
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn domain(&self) -> &Subgroup {
        &self.domain
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn orbit_types(&self) -> &[(Subgroup, usize)] {
        &self.orbit_types
    }

    pub fn orbit_count(&self) -> usize {
        self.orbit_types.iter().map(|&(_, m)| m).sum()
    }

    pub fn is_trivial_action(&self) -> bool {
        self.orbit_types.iter().all(|(l, _)| *l == self.domain)
    }

    /// Kernel of ρ: the elements of the domain fixing every coset of every
    /// stabilizer, i.e. the intersection of the cores.
    pub fn kernel(&self) -> Subgroup {
        let g = &self.group;
        let members: Vec<Elem> = self
            .domain
            .members()
            .iter()
            .copied()
            .filter(|&h| {
                self.orbit_types.iter().all(|(l, _)| {
                    self.domain
                        .members()
                        .iter()
                        .all(|&a| l.contains(g.mul(g.mul(g.inv(a), h), a)))
                })
            })
            .collect();
        Subgroup::new(g, &members).expect("a kernel is a subgroup")
    }

    /// The explicit ρ: per element of the domain (in member order), the
    /// permutation of {0..k} acting on the cosets of the stabilizers. The
    /// graph {(h, ρ(h))} meets 1 × Σ_k only at the identity because ρ is a
    /// map out of H; this checks ρ is in fact a homomorphism.
    pub fn permutation_action(&self) -> Vec<Vec<usize>> {
        let g = &self.group;
        // Points: cosets aL listed orbit type by orbit type, copy by copy.
        let mut cosets: Vec<(Vec<Elem>, &Subgroup)> = Vec::new();
        for (l, m) in &self.orbit_types {
            let mut reps: Vec<Elem> = Vec::new();
            let mut seen = vec![false; g.order()];
            for &a in self.domain.members() {
                if seen[a as usize] {
                    continue;
                }
                reps.push(a);
                for &x in l.members() {
                    seen[g.mul(a, x) as usize] = true;
                }
            }
            for _ in 0..*m {
                cosets.push((reps.clone(), l));
            }
        }
        let coset_index = |reps: &[Elem], l: &Subgroup, y: Elem| -> usize {
            reps.iter()
                .position(|&a| l.contains(g.mul(g.inv(a), y)))
                .expect("cosets partition the domain")
        };
        let perms: Vec<Vec<usize>> = self
            .domain
            .members()
            .iter()
            .map(|&h| {
                let mut perm = Vec::with_capacity(self.k);
                let mut offset = 0;
                for (reps, l) in &cosets {
                    for &a in reps {
                        perm.push(offset + coset_index(reps, l, g.mul(h, a)));
                    }
                    offset += reps.len();
                }
                perm
            })
            .collect();
        // Homomorphism check: ρ(h₁h₂) = ρ(h₁)ρ(h₂).
        for (i, &h1) in self.domain.members().iter().enumerate() {
            for (j, &h2) in self.domain.members().iter().enumerate() {
                let prod = g.mul(h1, h2);
                let pos = self.domain.members().binary_search(&prod).unwrap();
                let composite: Vec<usize> =
                    (0..self.k).map(|p| perms[i][perms[j][p]]).collect();
                assert_eq!(composite, perms[pos], "the orbit data defines an action");
            }
        }
        perms
    }

    /// The graph subgroup conjugated by (g, id) inside G × Σ_k.
    pub fn conjugated(&self, g: Elem) -> GraphSubgroup {
        let domain = self.group.conjugate_subgroup(g, &self.domain);
        let types: Vec<(Subgroup, usize)> = self
            .orbit_types
            .iter()
            .map(|(l, m)| (self.group.conjugate_subgroup(g, l), *m))
            .collect();
        GraphSubgroup::new(&self.group, domain, self.k, types)
            .expect("conjugation preserves the orbit data")
    }

    /// Key minimized over conjugation by G: equal keys exactly when the two
    /// graph subgroups are conjugate in G × Σ_k.
    pub fn canonical_key(&self) -> GraphKey {
        self.group
            .elements()
            .map(|g| {
                let c = self.conjugated(g);
                (
                    c.domain.members().to_vec(),
                    c.orbit_types
                        .iter()
                        .map(|(l, m)| (l.members().to_vec(), *m))
                        .collect(),
                )
            })
            .min()
            .expect("a group has at least the identity")
    }

    /// The conjugate whose data realizes the canonical key.
    pub fn canonicalized(&self) -> GraphSubgroup {
        self.group
            .elements()
            .map(|g| self.conjugated(g))
            .min_by_key(|c| {
                (
                    c.domain.members().to_vec(),
                    c.orbit_types
                        .iter()
                        .map(|(l, m)| (l.members().to_vec(), *m))
                        .collect::<Vec<_>>(),
                )
            })
            .expect("a group has at least the identity")
    }

    pub fn to_json(&self) -> Value {
        json!({
            "domain": self.domain.members(),
            "k": self.k,
            "orbit_types": self
                .orbit_types
                .iter()
                .map(|(l, m)| json!({ "stabilizer": l.members(), "multiplicity": m }))
                .collect::<Vec<_>>(),
        })
    }
}

pub type GraphKey = (Vec<Elem>, Vec<(Vec<Elem>, usize)>);

/// A conjugation-closed collection of graph subgroups of G × Σ_k, stored as
/// canonical class representatives.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilySet {
    group: FiniteGroup,
    k: usize,
    members: Vec<GraphSubgroup>,
    closed_by_conjugation: bool,
}

impl FamilySet {
    pub fn from_members<I: IntoIterator<Item = GraphSubgroup>>(
        group: &FiniteGroup,
        k: usize,
        members: I,
    ) -> Self {
        let mut canon: Vec<(GraphKey, GraphSubgroup)> = members
            .into_iter()
            .map(|m| {
                assert_eq!(m.k, k, "family members share one k");
                let c = m.canonicalized();
                (c.canonical_key(), c)
            })
            .collect();
        canon.sort_by(|a, b| a.0.cmp(&b.0));
        canon.dedup_by(|a, b| a.0 == b.0);
        FamilySet {
            group: group.clone(),
            k,
            members: canon.into_iter().map(|(_, m)| m).collect(),
            closed_by_conjugation: true,
        }
    }

    pub fn empty(group: &FiniteGroup, k: usize) -> Self {
        FamilySet::from_members(group, k, [])
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn members(&self) -> &[GraphSubgroup] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_closed_by_conjugation(&self) -> bool {
        self.closed_by_conjugation
    }

    /// Membership up to conjugation in G × Σ_k.
    pub fn contains(&self, gamma: &GraphSubgroup) -> bool {
        let key = gamma.canonical_key();
        self.members.binary_search_by(|m| m.canonical_key().cmp(&key)).is_ok()
    }

    pub fn union(&self, other: &FamilySet) -> FamilySet {
        assert_eq!(self.k, other.k, "families share one k");
        FamilySet::from_members(
            &self.group,
            self.k,
            self.members.iter().chain(other.members.iter()).cloned(),
        )
    }

    pub fn to_json(&self) -> Value {
        json!({
            "group": self.group.name(),
            "k": self.k,
            "closed_by_conjugation": self.closed_by_conjugation,
            "members": self.members.iter().map(GraphSubgroup::to_json).collect::<Vec<_>>(),
        })
    }
}

/// The transitive H-set types: one canonical stabilizer per H-conjugacy
/// class of subgroups of the domain, with the orbit size, sorted by size
/// and then by representative.
pub fn transitive_types(group: &FiniteGroup, domain: &Subgroup) -> Vec<(Subgroup, usize)> {
    let mut reps: Vec<Subgroup> = group
        .subgroups()
        .into_iter()
        .filter(|l| l.members().iter().all(|&x| domain.contains(x)))
        .map(|l| class_rep_in(group, domain, &l))
        .collect();
    reps.sort();
    reps.dedup();
    let mut out: Vec<(Subgroup, usize)> =
        reps.into_iter().map(|l| (l.clone(), domain.order() / l.order())).collect();
    out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    out
}

/// One representative per Σ_k-conjugacy class of homomorphisms ρ: H → Σ_k,
/// i.e. per iso class of H-sets with k elements: multisets of transitive
/// types with sizes summing to k, in lexicographic order of multiplicity
/// vectors.
pub fn enumerate_hom_classes(
    group: &FiniteGroup,
    domain: &Subgroup,
    k: usize,
) -> Vec<GraphSubgroup> {
    let types = transitive_types(group, domain);
    let mut out = Vec::new();
    let mut mults = vec![0usize; types.len()];
    fn go(
        group: &FiniteGroup,
        domain: &Subgroup,
        k: usize,
        types: &[(Subgroup, usize)],
        mults: &mut Vec<usize>,
        at: usize,
        remaining: usize,
        out: &mut Vec<GraphSubgroup>,
    ) {
        if at == types.len() {
            if remaining == 0 {
                let data: Vec<(Subgroup, usize)> = types
                    .iter()
                    .zip(mults.iter())
                    .filter(|&(_, &m)| m > 0)
                    .map(|((l, _), &m)| (l.clone(), m))
                    .collect();
                out.push(
                    GraphSubgroup::new(group, domain.clone(), k, data)
                        .expect("enumerated orbit data is valid"),
                );
            }
            return;
        }
        let size = types[at].1;
        for m in 0..=(remaining / size) {
            mults[at] = m;
            go(group, domain, k, types, mults, at + 1, remaining - m * size, out);
        }
        mults[at] = 0;
    }
    go(group, domain, k, &types, &mut mults, 0, k, &mut out);
    out
}

/// All graph subgroups of G × Σ_k up to conjugacy: the union of the hom
/// classes over one domain per subgroup conjugacy class of G.
pub fn family_fk(group: &FiniteGroup, k: usize) -> FamilySet {
    let mut members = Vec::new();
    for class in group.subgroup_conjugacy_classes() {
        let rep = class.into_iter().min().expect("classes are nonempty");
        members.extend(enumerate_hom_classes(group, &rep, k));
    }
    FamilySet::from_members(group, k, members)
}

/// The k range in which F_k(n) can be nonempty: n orbits of sizes between
/// 1 and |G| each.
pub fn fk_n_bounds(group: &FiniteGroup, n: usize) -> (usize, usize) {
    (n, n * group.order())
}

/// F_k(n): the members of F_k whose H-set has exactly n − 1 orbits, plus
/// every trivial homomorphism when k = n. Outside [n, n|G|] the family is
/// empty; callers surface the range warning.
pub fn family_fk_n(group: &FiniteGroup, k: usize, n: usize) -> FamilySet {
    assert!(n >= 1, "layers are indexed from 1");
    let (lo, hi) = fk_n_bounds(group, n);
    if k < lo || k > hi {
        return FamilySet::empty(group, k);
    }
    let members = family_fk(group, k)
        .members()
        .iter()
        .filter(|m| m.orbit_count() == n - 1 || (k == n && m.is_trivial_action()))
        .cloned()
        .collect::<Vec<_>>();
    FamilySet::from_members(group, k, members)
}

/// R_K: all subgroups of the graph of the action map ρ_K: G → Σ_k, i.e. the
/// graphs of the restricted actions over every subgroup of G.
pub fn family_rk(k_set: &GSet) -> FamilySet {
    let group = k_set.group().clone();
    let k = k_set.size();
    let mut members = Vec::new();
    for class in group.subgroup_conjugacy_classes() {
        let domain = class.into_iter().min().expect("classes are nonempty");
        let mut types: Vec<(Subgroup, usize)> = Vec::new();
        for orbit in k_set.orbits_under(&domain) {
            let x = orbit[0];
            let stab: Vec<Elem> = domain
                .members()
                .iter()
                .copied()
                .filter(|&h| k_set.act(h, x) == x)
                .collect();
            types.push((
                Subgroup::new(&group, &stab).expect("stabilizers are subgroups"),
                1,
            ));
        }
        members.push(
            GraphSubgroup::new(&group, domain, k, types)
                .expect("a restricted action is valid orbit data"),
        );
    }
    FamilySet::from_members(&group, k, members)
}

/// R(<n): the members whose H-set has fewer than n orbits.
pub fn truncate_family(r: &FamilySet, n: usize) -> FamilySet {
    FamilySet::from_members(
        &r.group,
        r.k,
        r.members.iter().filter(|m| m.orbit_count() < n).cloned().collect::<Vec<_>>(),
    )
}

/// R(n): the members with exactly n − 1 orbits, plus the trivial members
/// when k = n.
pub fn layer_family(r: &FamilySet, n: usize) -> FamilySet {
    assert!(n >= 1, "layers are indexed from 1");
    FamilySet::from_members(
        &r.group,
        r.k,
        r.members
            .iter()
            .filter(|m| m.orbit_count() == n - 1 || (r.k == n && m.is_trivial_action()))
            .cloned()
            .collect::<Vec<_>>(),
    )
}

/// The largest subgroup of the domain normal in G on which ρ is trivial:
/// the join of the normal subgroups of G inside the kernel.
pub fn maximal_normal_in_kernel(group: &FiniteGroup, gamma: &GraphSubgroup) -> Subgroup {
    let kernel = gamma.kernel();
    let inside: Vec<Subgroup> = group
        .normal_subgroups()
        .into_iter()
        .filter(|n| n.members().iter().all(|&x| kernel.contains(x)))
        .collect();
    let best = inside
        .iter()
        .max_by_key(|n| n.order())
        .expect("the trivial subgroup is always inside")
        .clone();
    debug_assert!(
        inside.iter().all(|n| n.members().iter().all(|&x| best.contains(x))),
        "normal subgroups inside a kernel are joined below a unique maximum"
    );
    best
}

/// Q_{k,H} for H ⊴ G: the members of F_k whose maximal trivially-acting
/// normal subgroup is exactly H.
pub fn family_q(
    group: &FiniteGroup,
    k: usize,
    h: &Subgroup,
) -> Result<FamilySet, FamiliesError> {
    h.validate(group)?;
    if !group.is_normal(h) {
        return Err(FamiliesError::NotNormal(h.members().to_vec()));
    }
    let members: Vec<GraphSubgroup> = family_fk(group, k)
        .members()
        .iter()
        .filter(|m| maximal_normal_in_kernel(group, m) == *h)
        .cloned()
        .collect();
    Ok(FamilySet::from_members(group, k, members))
}

/// Q_{k,H}(n): Q_{k,H} with the F_k(n) orbit filter applied on top.
pub fn family_q_n(
    group: &FiniteGroup,
    k: usize,
    h: &Subgroup,
    n: usize,
) -> Result<FamilySet, FamiliesError> {
    let q = family_q(group, k, h)?;
    Ok(layer_family(&q, n))
}

/// Fixed points of the universal space of a family at a graph subgroup.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum UniversalFixedPoint {
    S0,
    Point,
}

/// E̅R^Γ: S⁰ exactly when Γ is conjugate to a member of R.
pub fn universal_fixed_oracle(
    r: &FamilySet,
    gamma: &GraphSubgroup,
) -> Result<UniversalFixedPoint, FamiliesError> {
    if gamma.group() != r.group() || gamma.k() != r.k() {
        return Err(FamiliesError::AmbientMismatch);
    }
    Ok(if r.contains(gamma) { UniversalFixedPoint::S0 } else { UniversalFixedPoint::Point })
}

/// |Aut_H(X)| for the H-set of the graph subgroup: per orbit class with
/// multiplicity m, the Weyl order |N_H(L)/L| to the m-th power times m!.
pub fn aut_order(gamma: &GraphSubgroup) -> u64 {
    let g = gamma.group();
    let h = gamma.domain();
    let mut total: u64 = 1;
    for (l, m) in gamma.orbit_types() {
        let normalizer_in_domain = h
            .members()
            .iter()
            .filter(|&&x| g.conjugate_subgroup(x, l) == *l)
            .count() as u64;
        let weyl = normalizer_in_domain / l.order() as u64;
        total *= weyl.pow(*m as u32);
        for i in 1..=*m as u64 {
            total *= i;
        }
    }
    total
}

/// The wedge index at a fixed H ≤ G: the Σ_k-classes of ρ: H → Σ_k whose
/// graph lies in R, each with its automorphism group order.
pub fn handy_index(
    group: &FiniteGroup,
    domain: &Subgroup,
    k: usize,
    r: &FamilySet,
) -> Vec<(GraphSubgroup, u64)> {
    enumerate_hom_classes(group, domain, k)
        .into_iter()
        .filter(|gamma| r.contains(gamma))
        .map(|gamma| {
            let order = aut_order(&gamma);
            (gamma, order)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c2() -> FiniteGroup {
        group_core::catalog("C2").unwrap()
    }

    #[test]
    fn trivial_domain_has_one_class() {
        let g = c2();
        for k in 1..=5 {
            assert_eq!(enumerate_hom_classes(&g, &g.trivial_subgroup(), k).len(), 1);
        }
    }

    #[test]
    fn canonical_keys_identify_conjugates() {
        let s3 = group_core::catalog("S3").unwrap();
        let classes = s3.subgroup_conjugacy_classes();
        let order2: Vec<Subgroup> =
            classes.into_iter().find(|c| c[0].order() == 2).unwrap();
        assert_eq!(order2.len(), 3);
        let keys: Vec<GraphKey> = order2
            .iter()
            .map(|h| GraphSubgroup::trivial(&s3, h.clone(), 2).canonical_key())
            .collect();
        assert!(keys.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn permutation_action_is_a_homomorphism() {
        let s3 = group_core::catalog("S3").unwrap();
        for gamma in enumerate_hom_classes(&s3, &s3.full_subgroup(), 4) {
            let perms = gamma.permutation_action();
            assert_eq!(perms.len(), 6);
            assert!(perms.iter().all(|p| p.len() == 4));
        }
    }

    #[test]
    fn kernel_of_free_action_is_trivial() {
        let g = c2();
        let free = GraphSubgroup::new(
            &g,
            g.full_subgroup(),
            2,
            vec![(g.trivial_subgroup(), 1)],
        )
        .unwrap();
        assert!(free.kernel().is_trivial());
        let trivial = GraphSubgroup::trivial(&g, g.full_subgroup(), 2);
        assert_eq!(trivial.kernel(), g.full_subgroup());
    }
}
