//! Finite groups as explicit multiplication tables.
//!
//! Groups are stored fully expanded: element `0` is always the identity and
//! every operation is a table scan. Sizes stay tiny (the enumeration bound is
//! [`MAX_ORDER`]), so nothing here tries to be clever; the goal is that every
//! derived structure (subgroup lattice, conjugacy classes, quotients, Weyl
//! groups) is canonical and reproducible run to run.

mod catalog;
mod parse;

pub use catalog::{catalog, catalog_names};
pub use parse::parse_group_file;

use itertools::Itertools;
use serde::Serialize;
use thiserror::Error;

/// Element id: an index into the multiplication table.
pub type Elem = u16;

/// Largest group order accepted by the table validator and the subgroup
/// enumerator. Everything downstream assumes full-lattice scans are cheap.
pub const MAX_ORDER: usize = 24;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("multiplication table is not square: row {row} has length {len}, expected {order}")]
    TableShape { row: usize, len: usize, order: usize },
    #[error("group order {0} exceeds the supported bound {MAX_ORDER}")]
    TooLarge(usize),
    #[error("element names are not distinct")]
    DuplicateNames,
    #[error("associativity fails at ({a}*{b})*{c}")]
    NotAssociative { a: Elem, b: Elem, c: Elem },
    #[error("element 0 is not a two-sided identity")]
    NoIdentity,
    #[error("element {0} has no inverse")]
    NoInverse(Elem),
    #[error("entry {0} is out of range")]
    EntryRange(Elem),
    #[error("subset is not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("unknown catalog group `{0}`")]
    UnknownCatalog(String),
    #[error("cannot parse group file: {0}")]
    Parse(String),
}

/// A finite group given by its full multiplication table.
///
/// Invariants (checked by [`FiniteGroup::from_table`]): the table is a square
/// of in-range entries, element `0` is a two-sided identity, multiplication is
/// associative and every element has an inverse.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    elem_names: Vec<String>,
    mult: Vec<Vec<Elem>>,
    inv: Vec<Elem>,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.name, self.order())
    }
}

/// A subgroup, stored as the sorted list of its members.
///
/// The parent group is passed to each operation rather than stored; a
/// `Subgroup` is only meaningful together with the group it was produced
/// from, and [`Subgroup::validate`] re-checks closure against any group.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Subgroup {
    members: Vec<Elem>,
}

impl Subgroup {
    /// Builds a subgroup from an arbitrary member list after validating
    /// closure in `g`.
    pub fn new(g: &FiniteGroup, members: &[Elem]) -> Result<Self, GroupError> {
        let mut m: Vec<Elem> = members.to_vec();
        m.sort_unstable();
        m.dedup();
        let s = Subgroup { members: m };
        s.validate(g)?;
        Ok(s)
    }

    fn from_sorted(members: Vec<Elem>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        Subgroup { members }
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, e: Elem) -> bool {
        self.members.binary_search(&e).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.members == [0]
    }

    pub fn validate(&self, g: &FiniteGroup) -> Result<(), GroupError> {
        if !self.contains(0) {
            return Err(GroupError::NotSubgroup("missing identity".into()));
        }
        for &a in &self.members {
            if a as usize >= g.order() {
                return Err(GroupError::NotSubgroup(format!("element {a} out of range")));
            }
            if !self.contains(g.inv(a)) {
                return Err(GroupError::NotSubgroup(format!(
                    "not closed under inverse at {}",
                    g.elem_name(a)
                )));
            }
            for &b in &self.members {
                if !self.contains(g.mul(a, b)) {
                    return Err(GroupError::NotSubgroup(format!(
                        "not closed under product at {}*{}",
                        g.elem_name(a),
                        g.elem_name(b)
                    )));
                }
            }
        }
        Ok(())
    }
}

impl FiniteGroup {
    /// Validates the table axioms and normalizes nothing: callers must put
    /// the identity at index 0 (the named constructors all do).
    pub fn from_table(
        name: &str,
        elem_names: Vec<String>,
        mult: Vec<Vec<Elem>>,
    ) -> Result<Self, GroupError> {
        let n = mult.len();
        if n == 0 || n != elem_names.len() {
            return Err(GroupError::TableShape { row: 0, len: elem_names.len(), order: n });
        }
        if n > MAX_ORDER {
            return Err(GroupError::TooLarge(n));
        }
        if elem_names.iter().unique().count() != n {
            return Err(GroupError::DuplicateNames);
        }
        for (i, row) in mult.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::TableShape { row: i, len: row.len(), order: n });
            }
            for &e in row {
                if e as usize >= n {
                    return Err(GroupError::EntryRange(e));
                }
            }
        }
        for a in 0..n as Elem {
            if mult[0][a as usize] != a || mult[a as usize][0] != a {
                return Err(GroupError::NoIdentity);
            }
        }
        for a in 0..n as Elem {
            for b in 0..n as Elem {
                for c in 0..n as Elem {
                    let ab_c = mult[mult[a as usize][b as usize] as usize][c as usize];
                    let a_bc = mult[a as usize][mult[b as usize][c as usize] as usize];
                    if ab_c != a_bc {
                        return Err(GroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        let mut inv = vec![Elem::MAX; n];
        for a in 0..n {
            match (0..n).find(|&b| mult[a][b] == 0 && mult[b][a] == 0) {
                Some(b) => inv[a] = b as Elem,
                None => return Err(GroupError::NoInverse(a as Elem)),
            }
        }
        Ok(FiniteGroup { name: name.to_string(), elem_names, mult, inv })
    }

    /// Expands a permutation group from generators in one-line image form
    /// (each generator maps point `i` to `gen[i]`, points `0..degree`).
    ///
    /// Elements are ordered with the identity first, then by the
    /// lexicographic order of their one-line form, so the table is canonical
    /// for a given generating set.
    pub fn from_permutations(
        name: &str,
        degree: usize,
        gens: &[Vec<usize>],
    ) -> Result<Self, GroupError> {
        let id: Vec<usize> = (0..degree).collect();
        for g in gens {
            if g.len() != degree || {
                let mut s = g.clone();
                s.sort_unstable();
                s != id
            } {
                return Err(GroupError::Parse(format!("not a permutation of 0..{degree}: {g:?}")));
            }
        }
        let mut elems: std::collections::BTreeSet<Vec<usize>> = std::collections::BTreeSet::new();
        elems.insert(id.clone());
        let mut frontier = vec![id.clone()];
        while let Some(p) = frontier.pop() {
            for g in gens {
                // compose: (g ∘ p)(i) = g[p[i]]
                let q: Vec<usize> = p.iter().map(|&i| g[i]).collect();
                if elems.insert(q.clone()) {
                    if elems.len() > MAX_ORDER {
                        return Err(GroupError::TooLarge(elems.len()));
                    }
                    frontier.push(q);
                }
            }
        }
        let mut ordered: Vec<Vec<usize>> = elems.into_iter().collect();
        ordered.sort();
        let id_pos = ordered.iter().position(|p| *p == id).unwrap();
        ordered.swap(0, id_pos);
        ordered[1..].sort();
        let index_of = |p: &Vec<usize>| ordered.iter().position(|q| q == p).unwrap() as Elem;
        let n = ordered.len();
        let mut mult = vec![vec![0 as Elem; n]; n];
        for (a, pa) in ordered.iter().enumerate() {
            for (b, pb) in ordered.iter().enumerate() {
                // table entry a*b acts as "first b, then a" on points
                let prod: Vec<usize> = pb.iter().map(|&i| pa[i]).collect();
                mult[a][b] = index_of(&prod);
            }
        }
        let elem_names = ordered.iter().map(|p| cycle_notation(p)).collect();
        FiniteGroup::from_table(name, elem_names, mult)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.mult.len()
    }

    pub fn identity(&self) -> Elem {
        0
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order() as Elem
    }

    pub fn elem_name(&self, e: Elem) -> &str {
        &self.elem_names[e as usize]
    }

    pub fn elem_names(&self) -> &[String] {
        &self.elem_names
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mult[a as usize][b as usize]
    }

    pub fn inv(&self, a: Elem) -> Elem {
        self.inv[a as usize]
    }

    /// g a g^{-1}
    pub fn conj(&self, g: Elem, a: Elem) -> Elem {
        self.mul(self.mul(g, a), self.inv(g))
    }

    pub fn elem_order(&self, a: Elem) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != 0 {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    /// Smallest subgroup containing `gens`.
    pub fn closure(&self, gens: &[Elem]) -> Subgroup {
        let mut members = vec![false; self.order()];
        members[0] = true;
        let mut frontier: Vec<Elem> = vec![0];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                for y in [self.mul(x, g), self.mul(g, x)] {
                    if !members[y as usize] {
                        members[y as usize] = true;
                        frontier.push(y);
                    }
                }
            }
        }
        Subgroup::from_sorted(
            (0..self.order() as Elem).filter(|&e| members[e as usize]).collect(),
        )
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::from_sorted(vec![0])
    }

    pub fn full_subgroup(&self) -> Subgroup {
        Subgroup::from_sorted((0..self.order() as Elem).collect())
    }

    /// All subgroups, sorted by order and then lexicographically by member
    /// list. Complete by construction: every subgroup arises from the
    /// trivial one by repeatedly adjoining a single generator.
    pub fn subgroups(&self) -> Vec<Subgroup> {
        let mut seen: std::collections::BTreeSet<Vec<Elem>> = std::collections::BTreeSet::new();
        seen.insert(vec![0]);
        let mut frontier: Vec<Subgroup> = vec![self.trivial_subgroup()];
        while let Some(s) = frontier.pop() {
            for g in self.elements() {
                if s.contains(g) {
                    continue;
                }
                let mut gens: Vec<Elem> = s.members().to_vec();
                gens.push(g);
                let bigger = self.closure(&gens);
                if seen.insert(bigger.members().to_vec()) {
                    frontier.push(bigger);
                }
            }
        }
        let mut out: Vec<Subgroup> =
            seen.into_iter().map(Subgroup::from_sorted).collect();
        out.sort_by(|a, b| (a.order(), a.members()).cmp(&(b.order(), b.members())));
        out
    }

    pub fn conjugate_subgroup(&self, g: Elem, s: &Subgroup) -> Subgroup {
        let mut m: Vec<Elem> = s.members().iter().map(|&a| self.conj(g, a)).collect();
        m.sort_unstable();
        Subgroup::from_sorted(m)
    }

    /// Partition of [`FiniteGroup::subgroups`] into conjugacy classes.
    /// Classes are sorted by their canonical representative (the least
    /// member in the subgroup order); within a class the conjugates are
    /// sorted the same way.
    pub fn subgroup_conjugacy_classes(&self) -> Vec<Vec<Subgroup>> {
        let all = self.subgroups();
        let mut assigned = vec![false; all.len()];
        let mut classes: Vec<Vec<Subgroup>> = Vec::new();
        for (i, s) in all.iter().enumerate() {
            if assigned[i] {
                continue;
            }
            let mut class: std::collections::BTreeSet<Subgroup> = std::collections::BTreeSet::new();
            for g in self.elements() {
                class.insert(self.conjugate_subgroup(g, s));
            }
            for (j, t) in all.iter().enumerate() {
                if class.contains(t) {
                    assigned[j] = true;
                }
            }
            classes.push(class.into_iter().collect());
        }
        classes.sort_by(|a, b| (a[0].order(), a[0].members()).cmp(&(b[0].order(), b[0].members())));
        classes
    }

    pub fn is_normal(&self, s: &Subgroup) -> bool {
        self.elements().all(|g| &self.conjugate_subgroup(g, s) == s)
    }

    pub fn normal_subgroups(&self) -> Vec<Subgroup> {
        self.subgroups().into_iter().filter(|s| self.is_normal(s)).collect()
    }

    pub fn normalizer(&self, s: &Subgroup) -> Subgroup {
        Subgroup::from_sorted(
            self.elements().filter(|&g| self.conjugate_subgroup(g, s) == *s).collect(),
        )
    }

    pub fn centralizer(&self, s: &Subgroup) -> Subgroup {
        Subgroup::from_sorted(
            self.elements()
                .filter(|&g| s.members().iter().all(|&a| self.mul(g, a) == self.mul(a, g)))
                .collect(),
        )
    }

    /// Is `h` conjugate to a subgroup of `l`?
    pub fn is_subconjugate(&self, h: &Subgroup, l: &Subgroup) -> bool {
        self.elements()
            .any(|g| self.conjugate_subgroup(g, h).members().iter().all(|&a| l.contains(a)))
    }

    /// The subgroup `s` as a group in its own right, together with the list
    /// sending each new element id to the old one.
    pub fn subgroup_as_group(&self, s: &Subgroup) -> (FiniteGroup, Vec<Elem>) {
        let embed: Vec<Elem> = s.members().to_vec();
        debug_assert_eq!(embed[0], 0);
        let pos = |e: Elem| embed.binary_search(&e).unwrap() as Elem;
        let n = embed.len();
        let mut mult = vec![vec![0 as Elem; n]; n];
        for a in 0..n {
            for b in 0..n {
                mult[a][b] = pos(self.mul(embed[a], embed[b]));
            }
        }
        let names = embed.iter().map(|&e| self.elem_name(e).to_string()).collect();
        let g = FiniteGroup::from_table(&format!("{}|sub{}", self.name, s.order()), names, mult)
            .expect("subgroup table inherits the group axioms");
        (g, embed)
    }

    /// Quotient by a normal subgroup. Coset 0 is the one containing the
    /// identity; the rest are sorted by their least element, and each coset
    /// is named after its least element.
    pub fn quotient(&self, n: &Subgroup) -> Result<FiniteGroup, GroupError> {
        Ok(self.quotient_with_projection(n)?.0)
    }

    /// Quotient together with the element-to-coset projection.
    pub fn quotient_with_projection(
        &self,
        n: &Subgroup,
    ) -> Result<(FiniteGroup, Vec<Elem>), GroupError> {
        n.validate(self)?;
        if !self.is_normal(n) {
            return Err(GroupError::NotNormal);
        }
        let mut coset_of = vec![Elem::MAX; self.order()];
        let mut reps: Vec<Elem> = Vec::new();
        for a in self.elements() {
            if coset_of[a as usize] != Elem::MAX {
                continue;
            }
            let c = reps.len() as Elem;
            for &h in n.members() {
                coset_of[self.mul(a, h) as usize] = c;
            }
            reps.push(a);
        }
        let m = reps.len();
        let mut mult = vec![vec![0 as Elem; m]; m];
        for a in 0..m {
            for b in 0..m {
                mult[a][b] = coset_of[self.mul(reps[a], reps[b]) as usize];
            }
        }
        let names = reps.iter().map(|&r| format!("[{}]", self.elem_name(r))).collect();
        let q = FiniteGroup::from_table(&format!("{}/{}", self.name, subgroup_label(self, n)), names, mult)?;
        Ok((q, coset_of))
    }

    /// Weyl group N_G(H)/H.
    pub fn weyl_group(&self, h: &Subgroup) -> FiniteGroup {
        let norm = self.normalizer(h);
        let (ng, embed) = self.subgroup_as_group(&norm);
        let h_inside = Subgroup::from_sorted(
            (0..embed.len() as Elem).filter(|&i| h.contains(embed[i as usize])).collect(),
        );
        ng.quotient(&h_inside).expect("H is normal in its normalizer")
    }

    /// Multiset of element orders; equal multisets are a cheap isomorphism
    /// sanity check for the tiny groups handled here.
    pub fn element_order_profile(&self) -> Vec<usize> {
        self.elements().map(|e| self.elem_order(e)).sorted().collect()
    }
}

fn subgroup_label(g: &FiniteGroup, s: &Subgroup) -> String {
    if s.order() == g.order() {
        "G".to_string()
    } else if s.is_trivial() {
        "1".to_string()
    } else {
        format!("<{}>", s.members().iter().skip(1).map(|&e| g.elem_name(e)).join(","))
    }
}

/// One-line permutation to cycle notation, points printed 1-based.
fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            seen[start] = true;
            continue;
        }
        let mut cyc = vec![start];
        seen[start] = true;
        let mut x = p[start];
        while x != start {
            seen[x] = true;
            cyc.push(x);
            x = p[x];
        }
        out.push('(');
        out.push_str(&cyc.iter().map(|i| (i + 1).to_string()).join(" "));
        out.push(')');
    }
    if out.is_empty() {
        out.push('e');
    }
    out
}
