use group_core::{catalog, Subgroup};
use gset::{enumerate_gset_iso_classes, transitive_types, tree_leq, EquivariantMap, GSet};
use itertools::Itertools;

/// Independent oracle for the tree order: try every function K -> J.
fn tree_leq_by_map_search(k: &GSet, j: &GSet) -> bool {
    if k.size() == 0 {
        return true;
    }
    if j.size() == 0 {
        return false;
    }
    (0..k.size())
        .map(|_| 0..j.size())
        .multi_cartesian_product()
        .any(|values| match EquivariantMap::new(k, j, values) {
            Ok(m) => m.is_injective_on_orbits(k, j),
            Err(_) => false,
        })
}

#[test]
fn tree_leq_matches_exhaustive_map_search() {
    for name in ["C2", "C3", "V4", "S3"] {
        let g = catalog(name).unwrap();
        let classes = enumerate_gset_iso_classes(&g, 4);
        for k in &classes {
            for j in &classes {
                assert_eq!(
                    tree_leq(k, j),
                    tree_leq_by_map_search(k, j),
                    "{name}: {:?} vs {:?}",
                    k.iso_class_key(),
                    j.iso_class_key()
                );
            }
        }
    }
}

#[test]
fn tree_order_examples_over_c2() {
    let c2 = catalog("C2").unwrap();
    let free = GSet::from_orbits(&c2, &[c2.trivial_subgroup()]).unwrap();
    let pt = GSet::from_orbits(&c2, &[c2.full_subgroup()]).unwrap();
    let two_free =
        GSet::from_orbits(&c2, &[c2.trivial_subgroup(), c2.trivial_subgroup()]).unwrap();
    let free_plus_pt =
        GSet::from_orbits(&c2, &[c2.trivial_subgroup(), c2.full_subgroup()]).unwrap();
    assert!(tree_leq(&free, &pt));
    assert!(!tree_leq(&pt, &free));
    assert!(tree_leq(&two_free, &free_plus_pt));
    assert!(!tree_leq(&free_plus_pt, &two_free));
}

#[test]
fn tree_order_is_a_partial_order_on_iso_classes() {
    for name in ["C2", "C3", "V4", "S3"] {
        let g = catalog(name).unwrap();
        let classes = enumerate_gset_iso_classes(&g, 4);
        for a in &classes {
            assert!(tree_leq(a, a));
            for b in &classes {
                for c in &classes {
                    if tree_leq(a, b) && tree_leq(b, c) {
                        assert!(tree_leq(a, c), "{name}: transitivity");
                    }
                }
                if tree_leq(a, b) && tree_leq(b, a) {
                    assert_eq!(a.iso_class_key(), b.iso_class_key(), "{name}: antisymmetry");
                }
            }
        }
    }
}

#[test]
fn iso_class_counts() {
    let c2 = catalog("C2").unwrap();
    assert_eq!(enumerate_gset_iso_classes(&c2, 2).len(), 4);
    let s3 = catalog("S3").unwrap();
    let transitive = enumerate_gset_iso_classes(&s3, 6)
        .into_iter()
        .filter(|x| x.orbit_decomposition().len() == 1)
        .count();
    assert_eq!(transitive, 4);
}

#[test]
fn iso_keys_separate_and_merge_correctly() {
    let v4 = catalog("V4").unwrap();
    let classes = enumerate_gset_iso_classes(&v4, 4);
    let keys: Vec<Vec<usize>> = classes.iter().map(|x| x.iso_class_key()).collect();
    assert_eq!(keys.iter().unique().count(), keys.len(), "keys are distinct across classes");
    // two different subgroups in one conjugacy class give isomorphic orbits
    let s3 = catalog("S3").unwrap();
    let twos: Vec<Subgroup> =
        s3.subgroups().into_iter().filter(|s| s.order() == 2).collect();
    assert_eq!(twos.len(), 3);
    let a = GSet::from_orbits(&s3, &[twos[0].clone()]).unwrap();
    let b = GSet::from_orbits(&s3, &[twos[1].clone()]).unwrap();
    assert_eq!(a.iso_class_key(), b.iso_class_key());
}

#[test]
fn burnside_orbit_count() {
    for name in ["C2", "C4", "V4", "S3", "D4"] {
        let g = catalog(name).unwrap();
        for x in enumerate_gset_iso_classes(&g, 5) {
            let total_fixed: usize = g
                .elements()
                .map(|e| x.points().filter(|&p| x.act(e, p) == p).count())
                .sum();
            assert_eq!(
                x.orbit_decomposition().len() * g.order(),
                total_fixed,
                "{name}: orbit counting"
            );
        }
    }
}

#[test]
fn stabilizers_along_an_orbit_are_conjugate() {
    let s3 = catalog("S3").unwrap();
    let two = s3.subgroups().into_iter().find(|s| s.order() == 2).unwrap();
    let x = GSet::from_orbits(&s3, &[two]).unwrap();
    let stabs: Vec<Subgroup> = x.points().map(|p| x.stabilizer(p)).collect();
    for s in &stabs {
        assert_eq!(s.order(), 2);
        assert!(s3.elements().any(|g| &s3.conjugate_subgroup(g, &stabs[0]) == s));
    }
}

#[test]
fn fixed_points_match_generator_computation() {
    let d4 = catalog("D4").unwrap();
    for x in enumerate_gset_iso_classes(&d4, 4) {
        for h in d4.subgroups() {
            let by_members = x.fixed_points(&h);
            // fixing a generating set is enough
            let gens: Vec<u16> = h.members().iter().copied().filter(|&e| e != 0).collect();
            let by_gens: Vec<usize> = x
                .points()
                .filter(|&p| gens.iter().all(|&g| x.act(g, p) == p))
                .collect();
            assert_eq!(by_members, by_gens);
        }
    }
}

#[test]
fn quotient_by_normal_subgroup() {
    let s3 = catalog("S3").unwrap();
    let a3 = s3.subgroups().into_iter().find(|s| s.order() == 3).unwrap();
    let free = GSet::from_orbits(&s3, &[s3.trivial_subgroup()]).unwrap();
    let (q, proj) = free.quotient_gset(&a3).unwrap();
    assert_eq!(q.group().order(), 2);
    assert_eq!(q.size(), 2);
    // projection intertwines the actions through the coset map
    let (_, coset_of) = s3.quotient_with_projection(&a3).unwrap();
    for g in s3.elements() {
        for x in free.points() {
            assert_eq!(proj[free.act(g, x)], q.act(coset_of[g as usize], proj[x]));
        }
    }
    // orbit sets correspond
    assert_eq!(q.orbit_decomposition().len(), free.orbit_decomposition().len());
}

#[test]
fn quotient_preserves_orbit_count_across_catalog() {
    for name in ["C4", "V4", "S3", "D4"] {
        let g = catalog(name).unwrap();
        for x in enumerate_gset_iso_classes(&g, 4) {
            for n in g.normal_subgroups() {
                let (q, _) = x.quotient_gset(&n).unwrap();
                assert_eq!(
                    q.orbit_decomposition().len(),
                    x.orbit_decomposition().len(),
                    "{name}"
                );
            }
        }
    }
}

#[test]
fn quotient_rejects_non_normal() {
    let s3 = catalog("S3").unwrap();
    let two = s3.subgroups().into_iter().find(|s| s.order() == 2).unwrap();
    let free = GSet::from_orbits(&s3, &[s3.trivial_subgroup()]).unwrap();
    assert!(free.quotient_gset(&two).is_err());
}

#[test]
fn transitive_types_cover_the_subgroup_classes() {
    for name in ["C2", "V4", "S3", "D4", "Q8"] {
        let g = catalog(name).unwrap();
        let types = transitive_types(&g);
        assert_eq!(types.len(), g.subgroup_conjugacy_classes().len());
        for (h, size) in &types {
            assert_eq!(h.order() * size, g.order());
        }
    }
}

mod properties {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn equivariant_maps_respect_orbits(
            pick in 0usize..4,
            seed_orbit in prop::collection::vec(0usize..4, 1..3),
        ) {
            let g = catalog(["C2", "C3", "V4", "S3"][pick]).unwrap();
            let types = transitive_types(&g);
            let stabs: Vec<Subgroup> =
                seed_orbit.iter().map(|&i| types[i % types.len()].0.clone()).collect();
            let x = GSet::from_orbits(&g, &stabs).unwrap();
            // collapsing everything to a fixed point is always equivariant
            let pt = GSet::from_orbits(&g, &[g.full_subgroup()]).unwrap();
            let collapse = EquivariantMap::new(&x, &pt, vec![0; x.size()]).unwrap();
            prop_assert_eq!(
                collapse.is_injective_on_orbits(&x, &pt),
                x.orbit_decomposition().len() <= 1
            );
        }
    }
}
