//! The two diagram-level verifiers: the covering comparison between a holim
//! and the holim of holims over a cover, and the splitting of an initial
//! vertex into homotopy fibers over a split diagram.

mod common;

use std::collections::BTreeMap;

use chain_cube::sample::{random_equivariant_diagram, random_split_diagram, rng};
use chain_cube::{
    scalar, verify_covering_lemma, verify_decomp, ChainComplex, ChainError, GradedMap, Matrix,
    PosetDiagram, Scalar,
};
use common::plain_poset;
use gset::GSet;
use poset_cube::{delooping_cover, star_orbit_cover, EquivariantCover, GPoset};

fn two_free_orbits() -> GSet {
    let c2 = group_core::catalog("C2").unwrap();
    GSet::from_orbits(&c2, &[c2.trivial_subgroup(), c2.trivial_subgroup()]).unwrap()
}

#[test]
fn one_piece_cover_is_a_quasi_iso() {
    let mut r = rng(30);
    let (star, _) = star_orbit_cover(&two_free_orbits());
    let c2 = group_core::catalog("C2").unwrap();
    let index = GSet::new(c2, vec![vec![0], vec![0]], vec!["pt".into()], None).unwrap();
    let cover =
        EquivariantCover { index, parts: vec![(0..star.poset.len()).collect()] };
    let diag = random_equivariant_diagram(&star.poset, &mut r, 2);
    assert_eq!(verify_covering_lemma(&diag, &cover), Ok(true));
}

#[test]
fn star_orbit_cover_is_a_quasi_iso() {
    let mut r = rng(31);
    let (star, cover) = star_orbit_cover(&two_free_orbits());
    for _ in 0..3 {
        let diag = random_equivariant_diagram(&star.poset, &mut r, 2);
        assert_eq!(verify_covering_lemma(&diag, &cover), Ok(true));
    }
}

#[test]
fn delooping_cover_is_a_quasi_iso() {
    let mut r = rng(32);
    let c2 = group_core::catalog("C2").unwrap();
    let j = GSet::from_orbits(&c2, &[c2.trivial_subgroup()]).unwrap();
    let dc = delooping_cover(&j, 0, 1).unwrap();
    // One part per point of o₊, each of four tuples, exhausting the seven.
    assert_eq!(dc.cover.parts.iter().map(Vec::len).collect::<Vec<_>>(), vec![4, 4, 4]);
    assert_eq!(dc.ambient.len(), 7);
    for _ in 0..2 {
        let diag = random_equivariant_diagram(&dc.ambient, &mut r, 2);
        assert_eq!(verify_covering_lemma(&diag, &dc.cover), Ok(true));
    }
}

#[test]
fn two_fold_delooping_cover_is_a_quasi_iso() {
    let mut r = rng(33);
    let c1 = group_core::catalog("C1").unwrap();
    let j = GSet::from_orbits(&c1, &[c1.full_subgroup()]).unwrap();
    let dc = delooping_cover(&j, 0, 2).unwrap();
    assert_eq!(dc.ambient.len(), 9);
    let diag = random_equivariant_diagram(&dc.ambient, &mut r, 2);
    assert_eq!(verify_covering_lemma(&diag, &dc.cover), Ok(true));
}

#[test]
fn broken_cover_is_rejected() {
    let mut r = rng(34);
    let (star, mut cover) = star_orbit_cover(&two_free_orbits());
    // Dropping a singleton below the first orbit leaves it uncovered.
    let victim = *cover.parts[0]
        .iter()
        .find(|&&id| star.subsets[id].len() == 1 && !cover.parts[1].contains(&id))
        .unwrap();
    cover.parts[0].retain(|&id| id != victim);
    let diag = random_equivariant_diagram(&star.poset, &mut r, 1);
    assert_eq!(verify_covering_lemma(&diag, &cover), Err(ChainError::InvalidCover));
}

fn normal_subgroup_poset(name: &str) -> GPoset {
    let g = group_core::catalog(name).unwrap();
    let normals = g.normal_subgroups();
    let n = normals.len();
    let leq: Vec<Vec<bool>> = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| normals[a].members().iter().all(|&m| normals[b].contains(m)))
                .collect()
        })
        .collect();
    let labels = (0..n).map(|i| format!("N{i}")).collect();
    let c1 = group_core::catalog("C1").unwrap();
    GPoset::new(c1, labels, leq, vec![(0..n).collect()]).unwrap()
}

#[test]
fn two_object_chain_decomposes() {
    let shape = plain_poset(&["0", "1"], &[(0, 1)]);
    let values =
        vec![ChainComplex::<Scalar>::concentrated(0, 3), ChainComplex::concentrated(0, 2)];
    let project: GradedMap<Scalar> = [(
        0,
        Matrix::from_dense(&[
            vec![scalar(1), scalar(0), scalar(0)],
            vec![scalar(0), scalar(1), scalar(0)],
        ]),
    )]
    .into();
    let include: GradedMap<Scalar> = [(
        0,
        Matrix::from_dense(&[
            vec![scalar(1), scalar(0)],
            vec![scalar(0), scalar(1)],
            vec![scalar(0), scalar(0)],
        ]),
    )]
    .into();
    let diag =
        PosetDiagram::new(shape, values, [((0, 1), project)].into()).unwrap();
    let (ok, report) = verify_decomp(&diag, &[((0, 1), include)].into()).unwrap();
    assert!(ok);
    assert_eq!(report.initial, [(0, 3)].into());
    assert_eq!(report.fibers, vec![BTreeMap::from([(0, 1)]), BTreeMap::from([(0, 2)])]);
    assert_eq!(report.total, [(0, 3)].into());
}

#[test]
fn random_split_diagrams_decompose() {
    let mut r = rng(35);
    for name in ["S3", "V4", "D4"] {
        let shape = normal_subgroup_poset(name);
        for _ in 0..3 {
            let (diag, sections) = random_split_diagram(&shape, &mut r);
            let (ok, report) = verify_decomp(&diag, &sections).unwrap();
            assert!(ok, "split diagram over the normal poset of {name}");
            assert_eq!(report.initial, report.total);
        }
    }
}

#[test]
fn non_split_map_is_rejected() {
    let shape = plain_poset(&["0", "1"], &[(0, 1)]);
    let values =
        vec![ChainComplex::<Scalar>::concentrated(0, 1), ChainComplex::concentrated(0, 1)];
    let zero: GradedMap<Scalar> = GradedMap::new();
    let identity: GradedMap<Scalar> = [(0, Matrix::identity(1))].into();
    let diag = PosetDiagram::new(shape, values, [((0, 1), zero)].into()).unwrap();
    assert_eq!(
        verify_decomp(&diag, &[((0, 1), identity)].into()).unwrap_err(),
        ChainError::NotSection(0, 1)
    );
}

#[test]
fn missing_section_is_rejected() {
    let shape = plain_poset(&["0", "1"], &[(0, 1)]);
    let values =
        vec![ChainComplex::<Scalar>::concentrated(0, 1), ChainComplex::concentrated(0, 1)];
    let identity: GradedMap<Scalar> = [(0, Matrix::identity(1))].into();
    let diag = PosetDiagram::new(shape, values, [((0, 1), identity)].into()).unwrap();
    assert_eq!(
        verify_decomp(&diag, &BTreeMap::new()).unwrap_err(),
        ChainError::MissingSection(0, 1)
    );
}

#[test]
fn no_initial_object_is_rejected() {
    let shape = plain_poset(&["a", "b"], &[]);
    let values =
        vec![ChainComplex::<Scalar>::concentrated(0, 1), ChainComplex::concentrated(0, 1)];
    let diag = PosetDiagram::new(shape, values, BTreeMap::new()).unwrap();
    assert_eq!(
        verify_decomp(&diag, &BTreeMap::new()).unwrap_err(),
        ChainError::NoInitialObject
    );
}

/// Sections that are split on every edge but differ along the two sides of
/// a diamond are incoherent and must be refused.
#[test]
fn incoherent_sections_are_rejected() {
    let shape = plain_poset(&["0", "1", "2", "3"], &[(0, 1), (0, 2), (1, 3), (2, 3)]);
    let values = vec![
        ChainComplex::<Scalar>::concentrated(0, 2),
        ChainComplex::concentrated(0, 1),
        ChainComplex::concentrated(0, 1),
        ChainComplex::concentrated(0, 1),
    ];
    let first_coord: GradedMap<Scalar> =
        [(0, Matrix::from_dense(&[vec![scalar(1), scalar(0)]]))].into();
    let one: GradedMap<Scalar> = [(0, Matrix::identity(1))].into();
    let maps: BTreeMap<(usize, usize), GradedMap<Scalar>> = [
        ((0, 1), first_coord.clone()),
        ((0, 2), first_coord),
        ((1, 3), one.clone()),
        ((2, 3), one.clone()),
    ]
    .into();
    let diag = PosetDiagram::new(shape, values, maps).unwrap();
    let sections: BTreeMap<(usize, usize), GradedMap<Scalar>> = [
        ((0, 1), [(0, Matrix::from_dense(&[vec![scalar(1)], vec![scalar(0)]]))].into()),
        ((0, 2), [(0, Matrix::from_dense(&[vec![scalar(1)], vec![scalar(1)]]))].into()),
        ((1, 3), one.clone()),
        ((2, 3), one),
    ]
    .into();
    assert!(matches!(
        verify_decomp(&diag, &sections).unwrap_err(),
        ChainError::SectionTriangle(..)
    ));
}
