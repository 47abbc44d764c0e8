//! Strong cocartesianness: the join cubes are the positive examples, a
//! zeroed top vertex the negative one, and the one-point case degenerates to
//! the plain pushout square. The iterated-pushout description of the
//! vertices and the symbolic classification are checked against the chain
//! computation.

mod common;

use std::collections::BTreeMap;

use chain_cube::sample::{random_complex, rng};
use chain_cube::{
    is_cocartesian, is_strongly_cocartesian, lambda_cube, orbit_pushout_homology, ChainComplex,
    CubeDiagram, PosetDiagram, Scalar,
};
use common::sub;
use gset::GSet;
use poset_cube::{lambda_classify, orbit_plus_list};

fn free_plus_fixed() -> GSet {
    let c2 = group_core::catalog("C2").unwrap();
    GSet::from_orbits(&c2, &[c2.trivial_subgroup(), c2.full_subgroup()]).unwrap()
}

#[test]
fn join_cubes_are_strongly_cocartesian() {
    let mut r = rng(20);
    let c2 = group_core::catalog("C2").unwrap();
    let c3 = group_core::catalog("C3").unwrap();
    let cases = vec![
        free_plus_fixed(),
        GSet::from_orbits(&c2, &[c2.trivial_subgroup()]).unwrap(),
        GSet::from_orbits(&c3, &[c3.trivial_subgroup()]).unwrap(),
    ];
    for j in cases {
        let c = random_complex(&mut r, 0, 1, 1);
        let cube = lambda_cube(&j, &c).unwrap();
        assert_eq!(is_strongly_cocartesian(&cube, &j), Ok(true), "j of size {}", j.size());
    }
}

#[test]
fn zeroing_the_top_vertex_fails() {
    let j = free_plus_fixed();
    let c = ChainComplex::<Scalar>::concentrated(0, 1);
    let cube = lambda_cube(&j, &c).unwrap();
    let shape = cube.diagram.shape().clone();
    let top = cube.top();
    let values: Vec<ChainComplex<Scalar>> = (0..cube.diagram.len())
        .map(|i| if i == top { ChainComplex::zero() } else { cube.diagram.value(i).clone() })
        .collect();
    let mut maps = BTreeMap::new();
    for i in 0..shape.len() {
        for k in 0..shape.len() {
            if !shape.covers(i, k) {
                continue;
            }
            let block =
                if k == top { BTreeMap::new() } else { cube.diagram.map(i, k).unwrap().clone() };
            maps.insert((i, k), block);
        }
    }
    let zeroed = CubeDiagram::new(
        PosetDiagram::new(shape, values, maps).unwrap(),
        cube.subsets.clone(),
    )
    .unwrap();
    assert_eq!(is_strongly_cocartesian(&zeroed, &j), Ok(false));
}

#[test]
fn one_point_case_is_the_pushout_square() {
    let mut r = rng(21);
    let c1 = group_core::catalog("C1").unwrap();
    let j = GSet::from_orbits(&c1, &[c1.full_subgroup()]).unwrap();
    for degenerate in [false, true] {
        for _ in 0..3 {
            let cube =
                chain_cube::sample::random_cube(&sub(&[0, 1]), &mut r, 2, degenerate);
            assert_eq!(
                is_strongly_cocartesian(&cube, &j).unwrap(),
                is_cocartesian(&cube),
                "degenerate = {degenerate}"
            );
        }
    }
}

#[test]
fn wrong_ground_is_a_shape_error() {
    let mut r = rng(22);
    let j = free_plus_fixed();
    let cube = chain_cube::sample::random_cube(&sub(&[0, 1]), &mut r, 1, false);
    assert!(is_strongly_cocartesian(&cube, &j).is_err());
}

/// Every vertex of a strongly cocartesian cube is the pushout of its orbit
/// pieces under the basepoint piece.
#[test]
fn vertices_are_iterated_pushouts() {
    let mut r = rng(23);
    let c2 = group_core::catalog("C2").unwrap();
    let c3 = group_core::catalog("C3").unwrap();
    let cases = vec![
        free_plus_fixed(),
        GSet::from_orbits(&c3, &[c3.trivial_subgroup()]).unwrap(),
        GSet::from_orbits(&c2, &[c2.trivial_subgroup(), c2.trivial_subgroup()]).unwrap(),
    ];
    for j in cases {
        let c = random_complex(&mut r, 0, 1, 0);
        let cube = lambda_cube(&j, &c).unwrap();
        for (i, u) in cube.subsets.clone().into_iter().enumerate() {
            assert_eq!(
                orbit_pushout_homology(&cube, &j, &u),
                cube.diagram.value(i).homology_ranks(),
                "vertex {u:?} of j of size {}",
                j.size()
            );
        }
    }
}

/// The chain-level vertices match the symbolic classification: join with
/// points away from the basepoint, contractible in the middle, a wedge of
/// orbit suspensions once a full orbit is swallowed.
#[test]
fn vertices_match_the_classification() {
    let mut r = rng(24);
    let c2 = group_core::catalog("C2").unwrap();
    let c3 = group_core::catalog("C3").unwrap();
    let cases = vec![
        free_plus_fixed(),
        GSet::from_orbits(&c2, &[c2.trivial_subgroup(), c2.trivial_subgroup()]).unwrap(),
        GSet::from_orbits(&c3, &[c3.trivial_subgroup()]).unwrap(),
    ];
    for j in cases {
        let c = random_complex(&mut r, 0, 1, 1);
        let base = c.homology_ranks();
        let jp = j.with_added_basepoint();
        let sizes: Vec<usize> =
            orbit_plus_list(&jp).iter().map(|(o_plus, _)| o_plus.len() - 1).collect();
        let cube = lambda_cube(&j, &c).unwrap();
        for (i, u) in cube.subsets.clone().into_iter().enumerate() {
            let expr = lambda_classify(&j, &u).unwrap();
            assert_eq!(
                cube.diagram.value(i).homology_ranks(),
                expr.predicted_homology(&base, &sizes),
                "vertex {u:?} of j of size {} classified {expr:?}",
                j.size()
            );
        }
    }
}
