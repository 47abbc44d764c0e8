//! Equivariant covers of posets: a family of subposets indexed by a pointed
//! G-set, compatible with the action. Includes the concrete covers used for
//! delooping arguments.

use crate::{orbit_plus_list, star_category, GPoset, PosetError, Subset, SubsetPoset, MAX_OBJECTS};
use gset::{GSet, Point};
use itertools::Itertools;
use std::collections::BTreeSet;

/// A cover of a poset's objects by subsets, one per point of an index G-set.
#[derive(Clone, Debug)]
pub struct EquivariantCover {
    pub index: GSet,
    /// `parts[p]` = sorted object ids belonging to the subposet at point `p`.
    pub parts: Vec<Vec<usize>>,
}

impl EquivariantCover {
    /// Object ids in the intersection of the parts at the given points.
    pub fn intersection(&self, points: &[Point]) -> Vec<usize> {
        let mut iter = points.iter();
        let first = match iter.next() {
            Some(&p) => self.parts[p].clone(),
            None => return Vec::new(),
        };
        iter.fold(first, |acc, &p| {
            let part: BTreeSet<usize> = self.parts[p].iter().copied().collect();
            acc.into_iter().filter(|id| part.contains(id)).collect()
        })
    }
}

/// A cover is equivariant over `i` when its parts exhaust the objects and
/// the action permutes them along the index: `g * parts[p] ⊆ parts[g * p]`.
pub fn validate_equivariant_cover(i: &GPoset, cover: &EquivariantCover) -> bool {
    if cover.index.group() != i.group() || cover.parts.len() != cover.index.size() {
        return false;
    }
    let mut covered = vec![false; i.len()];
    for part in &cover.parts {
        for &id in part {
            if id >= i.len() {
                return false;
            }
            covered[id] = true;
        }
    }
    if !covered.iter().all(|&c| c) {
        return false;
    }
    for g in i.group().elements() {
        for p in cover.index.points() {
            let target: BTreeSet<usize> =
                cover.parts[cover.index.act(g, p)].iter().copied().collect();
            if !cover.parts[p].iter().all(|&id| target.contains(&i.act(g, id))) {
                return false;
            }
        }
    }
    true
}

/// The star category `St(J₊)` together with its cover by the punctured
/// cubes `P₁(o₊)`, indexed by the orbit set with its trivial action.
pub fn star_orbit_cover(j: &GSet) -> (SubsetPoset, EquivariantCover) {
    let star = star_category(j, None);
    let orbits = orbit_plus_list(&star.ambient);
    let group = star.ambient.group().clone();
    let names = orbits.iter().map(|(_, idx)| format!("o{idx}")).collect();
    let action = vec![(0..orbits.len()).collect(); group.order()];
    let index = GSet::new(group, action, names, None).expect("trivial action is valid");
    let parts = orbits
        .iter()
        .map(|(o_plus, _)| {
            star.subsets
                .iter()
                .enumerate()
                .filter(|(_, v)| v.is_subset(o_plus) && *v != o_plus)
                .map(|(id, _)| id)
                .collect()
        })
        .collect();
    (star, EquivariantCover { index, parts })
}

/// The k-fold product of the nonempty-subsets poset of `j₊`, its objects as
/// subset tuples, and the delooping cover of it indexed by `o₊`.
#[derive(Clone, Debug)]
pub struct DeloopingCover {
    pub ambient: GPoset,
    pub tuples: Vec<Vec<Subset>>,
    pub cover: EquivariantCover,
}

/// Cover of `P₀(j₊)^k` indexed by `o₊` for an orbit `o` of `j`: at a point
/// `x` of the orbit, the tuples with a component containing `x`; at the
/// basepoint, the tuples none of whose components sit inside `o`.
pub fn delooping_cover(j: &GSet, orbit: usize, k: usize) -> Result<DeloopingCover, PosetError> {
    assert!(k >= 1, "cover of a zero-fold product is degenerate");
    let jp = if j.basepoint().is_some() { j.clone() } else { j.with_added_basepoint() };
    let bp = jp.basepoint().unwrap();
    let orbits = orbit_plus_list(&jp);
    let (o_plus, _) = orbits.get(orbit).ok_or(PosetError::EmptyGSet)?.clone();
    let o: Subset = o_plus.iter().copied().filter(|&p| p != bp).collect();

    let n = jp.size();
    let singles = (1usize << n) - 1;
    let total = singles.checked_pow(k as u32).filter(|&t| t <= MAX_OBJECTS);
    let Some(total) = total else {
        return Err(PosetError::TooLarge(MAX_OBJECTS + 1));
    };

    let nonempty: Vec<Subset> = (1usize..(1 << n))
        .map(|mask| (0..n).filter(|&p| mask >> p & 1 == 1).collect::<Subset>())
        .sorted_by_key(crate::subset_sort_key)
        .collect();
    let tuples: Vec<Vec<Subset>> = (0..k)
        .map(|_| nonempty.iter().cloned())
        .multi_cartesian_product()
        .collect();
    debug_assert_eq!(tuples.len(), total);

    let labels = tuples
        .iter()
        .map(|t| format!("({})", t.iter().map(|s| crate::subset_label(&jp, s)).join("|")))
        .collect();
    let leq = tuples
        .iter()
        .map(|a| {
            tuples
                .iter()
                .map(|b| a.iter().zip(b).all(|(x, y)| x.is_subset(y)))
                .collect()
        })
        .collect();
    let tuple_index: std::collections::BTreeMap<&Vec<Subset>, usize> =
        tuples.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let action = jp
        .group()
        .elements()
        .map(|g| {
            tuples
                .iter()
                .map(|t| {
                    let image: Vec<Subset> = t
                        .iter()
                        .map(|s| s.iter().map(|&p| jp.act(g, p)).collect())
                        .collect();
                    tuple_index[&image]
                })
                .collect()
        })
        .collect();
    let ambient = GPoset::from_parts(jp.group().clone(), labels, leq, action);

    // index G-set: the orbit's points in ambient order, basepoint last
    let o_points: Vec<Point> = o.iter().copied().collect();
    let names = o_points
        .iter()
        .map(|&p| jp.point_name(p).to_string())
        .chain(["+".to_string()])
        .collect();
    let index_action = jp
        .group()
        .elements()
        .map(|g| {
            o_points
                .iter()
                .map(|&p| o_points.iter().position(|&q| q == jp.act(g, p)).unwrap())
                .chain([o_points.len()])
                .collect()
        })
        .collect();
    let index = GSet::new(jp.group().clone(), index_action, names, Some(o_points.len()))?;

    let mut parts: Vec<Vec<usize>> = o_points
        .iter()
        .map(|&x| {
            tuples
                .iter()
                .enumerate()
                .filter(|(_, t)| t.iter().any(|s| s.contains(&x)))
                .map(|(id, _)| id)
                .collect()
        })
        .collect();
    parts.push(
        tuples
            .iter()
            .enumerate()
            .filter(|(_, t)| t.iter().all(|s| !s.is_subset(&o)))
            .map(|(id, _)| id)
            .collect(),
    );
    Ok(DeloopingCover { ambient, tuples, cover: EquivariantCover { index, parts } })
}

#[cfg(test)]
mod tests {
    use super::*;
    use group_core::catalog;

    #[test]
    fn singleton_cover_is_valid() {
        let c2 = catalog("C2").unwrap();
        let j = GSet::from_orbits(&c2, &[c2.trivial_subgroup()]).unwrap();
        let p = crate::power_poset(&j, true).unwrap();
        let pt = GSet::from_orbits(&c2, &[c2.full_subgroup()]).unwrap();
        let cover =
            EquivariantCover { index: pt, parts: vec![p.poset.objects().collect()] };
        assert!(validate_equivariant_cover(&p.poset, &cover));
    }

    #[test]
    fn missing_object_fails_validation() {
        let c2 = catalog("C2").unwrap();
        let j = GSet::from_orbits(&c2, &[c2.trivial_subgroup()]).unwrap();
        let p = crate::power_poset(&j, true).unwrap();
        let pt = GSet::from_orbits(&c2, &[c2.full_subgroup()]).unwrap();
        let all_but_one: Vec<usize> = p.poset.objects().skip(1).collect();
        let cover = EquivariantCover { index: pt, parts: vec![all_but_one] };
        assert!(!validate_equivariant_cover(&p.poset, &cover));
    }
}
