use group_core::{catalog, Subgroup};
use gset::GSet;
use partition_complex::{
    build_t, fixed_subcomplex, nondegenerate_counts, proper_partition_nerve_homology,
    snaith_index_count, t_homology, PartitionError, PartitionPoset, MAX_GROUND,
};
use std::collections::{BTreeMap, BTreeSet};

fn trivial_ground(k: usize) -> GSet {
    let c1 = catalog("C1").unwrap();
    GSet::new(c1, vec![(0..k).collect()], (0..k).map(|x| x.to_string()).collect(), None)
        .unwrap()
}

fn free_c2_set(orbits: usize) -> GSet {
    let c2 = catalog("C2").unwrap();
    let trivial = Subgroup::new(&c2, &[0]).unwrap();
    GSet::from_orbits(&c2, &vec![trivial; orbits]).unwrap()
}

/// Bell numbers by the Bell-triangle recurrence.
fn bell_numbers(up_to: usize) -> Vec<u64> {
    let mut bells = vec![1u64];
    let mut row = vec![1u64];
    for _ in 0..up_to {
        let mut next = vec![*row.last().unwrap()];
        for &x in &row {
            next.push(next.last().unwrap() + x);
        }
        bells.push(next[0]);
        row = next;
    }
    bells
}

/// Partition enumeration by recursive insertion, independent of the
/// restricted-growth strings the library uses.
fn brute_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    fn rec(x: usize, n: usize, current: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if x == n {
            let mut p: Vec<Vec<usize>> = current.clone();
            for b in &mut p {
                b.sort_unstable();
            }
            p.sort();
            out.push(p);
            return;
        }
        for i in 0..current.len() {
            current[i].push(x);
            rec(x + 1, n, current, out);
            current[i].pop();
        }
        current.push(vec![x]);
        rec(x + 1, n, current, out);
        current.pop();
    }
    let mut out = Vec::new();
    if n == 0 {
        return vec![Vec::new()];
    }
    rec(0, n, &mut Vec::new(), &mut out);
    out.sort();
    out
}

fn blocks_fit(a: &[Vec<usize>], b: &[Vec<usize>]) -> bool {
    a.iter().all(|blk| b.iter().any(|c| blk.iter().all(|x| c.contains(x))))
}

/// Strict chains of `len` partitions avoiding the two extremes together,
/// counted by dynamic programming over (endpoint, seen-bottom, seen-top).
fn oracle_nondegenerate(k: usize, m: usize) -> usize {
    if m == 0 {
        return 0;
    }
    if m == 1 {
        return 1;
    }
    let len = m - 1;
    let ps = brute_partitions(k);
    let bottom: Vec<Vec<usize>> = (0..k).map(|x| vec![x]).collect();
    let top: Vec<Vec<usize>> = vec![(0..k).collect()];
    let flag = |i: usize| (ps[i] == bottom, ps[i] == top);
    let n = ps.len();
    let mut f = vec![[0usize; 4]; n];
    for (i, state) in f.iter_mut().enumerate() {
        let (b, t) = flag(i);
        state[(b as usize) | ((t as usize) << 1)] = 1;
    }
    for _ in 1..len {
        let mut next = vec![[0usize; 4]; n];
        for i in 0..n {
            for j in 0..n {
                if i != j && blocks_fit(&ps[i], &ps[j]) {
                    let (b, t) = flag(j);
                    let mask = (b as usize) | ((t as usize) << 1);
                    for s in 0..4 {
                        next[j][s | mask] += f[i][s];
                    }
                }
            }
        }
        f = next;
    }
    f.iter().map(|state| state[0] + state[1] + state[2]).sum()
}

#[test]
fn partition_counts_match_bell() {
    let bells = bell_numbers(MAX_GROUND);
    assert_eq!(bells, vec![1, 1, 2, 5, 15, 52, 203, 877]);
    for k in 0..=6 {
        let poset = PartitionPoset::new(&trivial_ground(k)).unwrap();
        assert_eq!(poset.len() as u64, bells[k], "Bell count at k = {k}");
    }
    for k in 1..=5 {
        let t = build_t(&trivial_ground(k)).unwrap();
        assert_eq!(t.level(2).len() as u64, bells[k], "level 2 of T_{k}");
    }
    // With the basepoint: |T_3^2| = 6 and |T_4^2| = 16.
    assert_eq!(build_t(&trivial_ground(3)).unwrap().level(2).len() + 1, 6);
    assert_eq!(build_t(&trivial_ground(4)).unwrap().level(2).len() + 1, 16);
}

#[test]
fn enumeration_matches_the_insertion_oracle() {
    for k in 0..=5 {
        let poset = PartitionPoset::new(&trivial_ground(k)).unwrap();
        let lib: BTreeSet<Vec<Vec<usize>>> =
            (0..poset.len()).map(|i| poset.partition(i).clone()).collect();
        let oracle: BTreeSet<Vec<Vec<usize>>> = brute_partitions(k).into_iter().collect();
        assert_eq!(lib, oracle, "partition sets at k = {k}");
    }
}

#[test]
fn refinement_is_a_partial_order_with_extremes() {
    let poset = PartitionPoset::new(&trivial_ground(4)).unwrap();
    let n = poset.len();
    for a in 0..n {
        assert!(poset.refines(a, a));
        assert!(poset.refines(poset.bottom(), a));
        assert!(poset.refines(a, poset.top()));
        for b in 0..n {
            if poset.refines(a, b) && poset.refines(b, a) {
                assert_eq!(a, b, "antisymmetry");
            }
            for c in 0..n {
                if poset.refines(a, b) && poset.refines(b, c) {
                    assert!(poset.refines(a, c), "transitivity");
                }
            }
        }
    }
    assert!(poset.is_proper(poset.position(&vec![vec![0, 1], vec![2], vec![3]]).unwrap()));
    assert!(!poset.is_proper(poset.bottom()));
    assert!(!poset.is_proper(poset.top()));
}

#[test]
fn action_is_by_poset_automorphisms() {
    let ground = free_c2_set(2);
    let poset = PartitionPoset::new(&ground).unwrap();
    let n = poset.len();
    for g in ground.group().elements() {
        let image: BTreeSet<usize> = (0..n).map(|i| poset.act(g, i)).collect();
        assert_eq!(image.len(), n, "action permutes partitions");
        for a in 0..n {
            for b in 0..n {
                assert_eq!(
                    poset.refines(a, b),
                    poset.refines(poset.act(g, a), poset.act(g, b)),
                    "refinement preserved"
                );
            }
        }
    }
}

#[test]
fn level_shapes_at_small_k() {
    let t1 = build_t(&trivial_ground(1)).unwrap();
    let sizes: Vec<usize> = (0..=t1.max_level()).map(|m| t1.level(m).len()).collect();
    assert_eq!(sizes, vec![0, 1, 1], "k = 1: one weak chain per positive level");
    let t2 = build_t(&trivial_ground(2)).unwrap();
    let sizes: Vec<usize> = (0..=t2.max_level()).map(|m| t2.level(m).len()).collect();
    assert_eq!(sizes, vec![0, 1, 2, 1]);
    let oversized = trivial_ground(MAX_GROUND + 1);
    assert_eq!(build_t(&oversized).unwrap_err(), PartitionError::TooLarge(8));
}

#[test]
fn nondegenerate_counts_match_the_dp_oracle() {
    for k in 1..=5 {
        let t = build_t(&trivial_ground(k)).unwrap();
        for m in 0..=k + 2 {
            assert_eq!(
                nondegenerate_counts(&t, m),
                oracle_nondegenerate(k, m),
                "k = {k}, m = {m}"
            );
        }
    }
    let t2 = build_t(&trivial_ground(2)).unwrap();
    assert_eq!(nondegenerate_counts(&t2, 2), 2, "the two partitions of 2");
    let t3 = build_t(&trivial_ground(3)).unwrap();
    assert_eq!(nondegenerate_counts(&t3, 3), 6);
    for k in 1..=4usize {
        let t = build_t(&trivial_ground(k)).unwrap();
        for m in k + 2..k + 5 {
            assert_eq!(nondegenerate_counts(&t, m), 0, "k < m - 1 leaves the basepoint");
        }
    }
}

#[test]
fn euler_characteristic_is_the_signed_factorial() {
    for k in 1..=5 {
        let t = build_t(&trivial_ground(k)).unwrap();
        let chi: i64 = (0..=t.max_level())
            .map(|m| {
                let c = nondegenerate_counts(&t, m) as i64;
                if m % 2 == 0 { c } else { -c }
            })
            .sum();
        let factorial: i64 = (1..k as i64).product();
        let expected = if k % 2 == 0 { factorial } else { -factorial };
        assert_eq!(chi, expected, "k = {k}");
    }
}

#[test]
fn face_identities_hold() {
    for ground in [trivial_ground(3), free_c2_set(2)] {
        let t = build_t(&ground).unwrap();
        for m in 1..=t.max_level() {
            for s in 0..t.level(m).len() {
                for j in 1..=m {
                    for i in 0..j {
                        let left = t.face(m, s, j).and_then(|u| t.face(m - 1, u, i));
                        let right = t.face(m, s, i).and_then(|u| t.face(m - 1, u, j - 1));
                        assert_eq!(left, right, "d_{i} d_{j} at level {m}");
                    }
                }
            }
        }
    }
}

#[test]
fn action_commutes_with_faces() {
    let ground = free_c2_set(2);
    let t = build_t(&ground).unwrap();
    for g in ground.group().elements() {
        for m in 1..=t.max_level() {
            for s in 0..t.level(m).len() {
                assert_eq!(
                    t.level(m)[s].degenerate,
                    t.level(m)[t.act(g, m, s)].degenerate,
                    "degeneracy is equivariant"
                );
                for i in 0..=m {
                    let then_act = t.face(m, s, i).map(|u| t.act(g, m - 1, u));
                    let act_then = t.face(m, t.act(g, m, s), i);
                    assert_eq!(then_act, act_then, "g = {g}, level {m}, face {i}");
                }
            }
        }
    }
}

#[test]
fn t_homology_is_factorial_concentrated() {
    // The adopted convention concentrates rank (k−1)! in degree k.
    for k in 2..=5usize {
        let factorial: usize = (1..k).product();
        let expected: BTreeMap<i64, usize> = [(k as i64, factorial)].into();
        assert_eq!(t_homology(&trivial_ground(k)).unwrap(), expected, "k = {k}");
    }
    assert_eq!(t_homology(&trivial_ground(1)).unwrap(), [(1, 1)].into());
}

#[test]
fn proper_nerve_homology_matches_the_known_ranks() {
    assert_eq!(proper_partition_nerve_homology(2).unwrap(), [(-1, 1)].into());
    assert_eq!(proper_partition_nerve_homology(3).unwrap(), [(0, 2)].into());
    assert_eq!(proper_partition_nerve_homology(4).unwrap(), [(1, 6)].into());
    assert_eq!(proper_partition_nerve_homology(5).unwrap(), [(2, 24)].into());
    assert_eq!(proper_partition_nerve_homology(6).unwrap(), [(3, 120)].into());
    assert_eq!(
        proper_partition_nerve_homology(1).unwrap_err(),
        PartitionError::OutOfRange(1, 2, MAX_GROUND)
    );
    assert_eq!(
        proper_partition_nerve_homology(8).unwrap_err(),
        PartitionError::OutOfRange(8, 2, MAX_GROUND)
    );
}

#[test]
fn fixed_subcomplex_of_the_regular_orbit_is_everything() {
    let ground = free_c2_set(1);
    let t = build_t(&ground).unwrap();
    let full = Subgroup::new(ground.group(), &[0, 1]).unwrap();
    let fixed = fixed_subcomplex(&t, &full);
    for m in 0..=t.max_level() {
        assert_eq!(fixed.level(m), t.level(m), "swap preserves both partitions of 2");
    }
}

#[test]
fn fixed_partitions_of_the_double_transposition() {
    let ground = free_c2_set(2);
    // Independent recount: partitions of four points fixed by (01)(23).
    let sigma = [1usize, 0, 3, 2];
    let oracle = brute_partitions(4)
        .into_iter()
        .filter(|p| {
            let mut moved: Vec<Vec<usize>> =
                p.iter().map(|b| b.iter().map(|&x| sigma[x]).collect()).collect();
            for b in &mut moved {
                b.sort_unstable();
            }
            moved.sort();
            moved == *p
        })
        .count();
    assert_eq!(oracle, 7);

    let t = build_t(&ground).unwrap();
    let full = Subgroup::new(ground.group(), &[0, 1]).unwrap();
    let fixed = fixed_subcomplex(&t, &full);
    assert_eq!(t.level(2).len(), 15);
    assert_eq!(fixed.level(2).len(), oracle);
    // Faces of fixed chains stay fixed; identities still hold.
    for m in 1..=fixed.max_level() {
        for s in 0..fixed.level(m).len() {
            for j in 1..=m {
                for i in 0..j {
                    let left = fixed.face(m, s, j).and_then(|u| fixed.face(m - 1, u, i));
                    let right = fixed.face(m, s, i).and_then(|u| fixed.face(m - 1, u, j - 1));
                    assert_eq!(left, right);
                }
            }
        }
    }
}

#[test]
fn trivial_actions_fix_everything() {
    let ground = free_c2_set(2);
    let t = build_t(&ground).unwrap();
    let trivial = Subgroup::new(ground.group(), &[0]).unwrap();
    let under_trivial = fixed_subcomplex(&t, &trivial);
    for m in 0..=t.max_level() {
        assert_eq!(under_trivial.level(m), t.level(m), "trivial L is the identity");
    }

    let c2 = catalog("C2").unwrap();
    let full = Subgroup::new(&c2, &[0, 1]).unwrap();
    let three_fixed = GSet::from_orbits(&c2, &vec![full.clone(); 3]).unwrap();
    let t = build_t(&three_fixed).unwrap();
    let fixed = fixed_subcomplex(&t, &full);
    for m in 0..=t.max_level() {
        assert_eq!(fixed.level(m), t.level(m), "L acting trivially on K fixes T_K");
    }
}

#[test]
fn snaith_counts_agree() {
    // Third count: recursive multiset enumeration with a minimum part.
    fn multisets(remaining: usize, min_part: usize) -> u64 {
        if remaining == 0 {
            return 1;
        }
        (min_part..=remaining).map(|part| multisets(remaining - part, part)).sum()
    }
    for k in 0..=40 {
        let (m, p) = snaith_index_count(k);
        assert_eq!(m, p, "the two index counts at k = {k}");
        if k <= 12 {
            assert_eq!(m, multisets(k, 1), "enumeration oracle at k = {k}");
        }
    }
    assert_eq!(snaith_index_count(1), (1, 1));
    assert_eq!(snaith_index_count(4), (5, 5));
    assert_eq!(snaith_index_count(8), (22, 22));
    assert_eq!(snaith_index_count(40).0, 37338);
}

#[test]
fn json_export_is_deterministic() {
    let a = build_t(&trivial_ground(3)).unwrap().to_json().to_string();
    let b = build_t(&trivial_ground(3)).unwrap().to_json().to_string();
    assert_eq!(a, b);

    let tiny = build_t(&trivial_ground(1)).unwrap().to_json().to_string();
    assert_eq!(
        tiny,
        "{\"ground\":{\"group\":\"C1\",\"points\":1},\"levels\":[[],\
         [{\"chain\":[],\"degeneracies\":[null,null],\"degenerate\":false,\
         \"faces\":[null,null]}],[{\"chain\":[0],\"degeneracies\":[null,[0,0],null],\
         \"degenerate\":true,\"faces\":[null,0,null]}]],\"partitions\":[[[0]]]}"
    );
}
