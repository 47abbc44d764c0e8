//! Homology outputs: rational ranks, integral torsion, the JSON shape, and
//! the rank routine against a dense textbook elimination.

mod common;

use std::collections::BTreeMap;

use chain_cube::sample::{random_complex, rng};
use chain_cube::{
    hocolim, integral_homology, scalar, ChainComplex, ChainError, ChainMap, Matrix,
    PosetDiagram, Scalar,
};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

#[test]
fn circle_has_one_rank_in_each_degree() {
    // Two vertices, two edges, the boundary of the simplicial circle.
    let d1 = Matrix::from_dense(&[
        vec![scalar(1), scalar(-1)],
        vec![scalar(-1), scalar(1)],
    ]);
    let circle =
        ChainComplex::new([(0, 2), (1, 2)].into(), [(1, d1)].into()).unwrap();
    assert_eq!(circle.homology_ranks(), [(0, 1), (1, 1)].into());
}

#[test]
fn cone_of_the_identity_is_acyclic() {
    let mut r = rng(40);
    for _ in 0..5 {
        let c = random_complex(&mut r, -1, 2, 2);
        assert!(ChainMap::identity(&c).cone().is_acyclic());
        assert!(!c.is_zero_complex());
    }
}

#[test]
fn integral_homology_sees_torsion() {
    let two = Matrix::from_dense(&[vec![scalar(2)]]);
    let c = ChainComplex::new([(0, 1), (1, 1)].into(), [(1, two)].into()).unwrap();
    assert!(c.homology_ranks().is_empty(), "rationally acyclic");
    let integral = integral_homology(&c).unwrap();
    assert_eq!(integral.len(), 1);
    assert_eq!(integral[&0].rank, 0);
    assert_eq!(integral[&0].torsion, vec!["2".to_string()]);
}

#[test]
fn fractional_differential_is_rejected_integrally() {
    let half = Matrix::from_dense(&[vec![scalar(1) / scalar(2)]]);
    let c = ChainComplex::new([(0, 1), (1, 1)].into(), [(1, half)].into()).unwrap();
    assert!(matches!(integral_homology(&c), Err(ChainError::NonIntegralEntry(_))));
}

/// Partitions of {0, .., n-1} as block lists, blocks and elements sorted.
fn partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out: Vec<Vec<Vec<usize>>> = vec![vec![]];
    for x in 0..n {
        let mut next = Vec::new();
        for p in out {
            for b in 0..p.len() {
                let mut q = p.clone();
                q[b].push(x);
                next.push(q);
            }
            let mut q = p.clone();
            q.push(vec![x]);
            next.push(q);
        }
        out = next;
    }
    for p in &mut out {
        p.sort();
    }
    out.sort();
    out
}

fn refines(p: &[Vec<usize>], q: &[Vec<usize>]) -> bool {
    p.iter().all(|block| {
        q.iter().any(|big| block.iter().all(|x| big.contains(x)))
    })
}

/// The nerve of the proper partitions of a four element set is a wedge of
/// six circles. Computed twice: as the hocolim of the constant diagram, and
/// from hand-rolled simplicial boundary matrices over the same chains.
#[test]
fn proper_partition_nerve_of_four() {
    let all = partitions(4);
    assert_eq!(all.len(), 15);
    let proper: Vec<_> =
        all.into_iter().filter(|p| p.len() > 1 && p.len() < 4).collect();
    assert_eq!(proper.len(), 13);

    let n = proper.len();
    let leq: Vec<Vec<bool>> =
        (0..n).map(|a| (0..n).map(|b| refines(&proper[a], &proper[b])).collect()).collect();
    let labels = (0..n).map(|i| format!("p{i}")).collect();
    let c1 = group_core::catalog("C1").unwrap();
    let shape =
        poset_cube::GPoset::new(c1, labels, leq.clone(), vec![(0..n).collect()]).unwrap();

    let point = ChainComplex::<Scalar>::concentrated(0, 1);
    let one: BTreeMap<i64, Matrix<Scalar>> = [(0, Matrix::identity(1))].into();
    let mut maps = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            if shape.covers(i, j) {
                maps.insert((i, j), one.clone());
            }
        }
    }
    let diag = PosetDiagram::new(shape, vec![point; n], maps).unwrap();
    let via_hocolim = hocolim(&diag).complex.homology_ranks();

    // Same poset, direct simplicial chains: strict chains by length with the
    // alternating face boundary.
    let mut chains: Vec<Vec<Vec<usize>>> = vec![(0..n).map(|i| vec![i]).collect()];
    loop {
        let last = chains.last().unwrap();
        let mut next = Vec::new();
        for c in last {
            let top = *c.last().unwrap();
            for j in 0..n {
                if j != top && leq[top][j] {
                    let mut d = c.clone();
                    d.push(j);
                    next.push(d);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        chains.push(next);
    }
    let mut betti: BTreeMap<i64, usize> = BTreeMap::new();
    let mut boundary_ranks = vec![0usize];
    for p in 1..chains.len() {
        let lower: BTreeMap<&[usize], usize> =
            chains[p - 1].iter().enumerate().map(|(k, c)| (c.as_slice(), k)).collect();
        let mut m = Matrix::<Scalar>::zero(chains[p - 1].len(), chains[p].len());
        for (col, c) in chains[p].iter().enumerate() {
            for drop in 0..=p {
                let face: Vec<usize> = c
                    .iter()
                    .enumerate()
                    .filter(|&(pos, _)| pos != drop)
                    .map(|(_, &x)| x)
                    .collect();
                if let Some(&row) = lower.get(face.as_slice()) {
                    let sign = if drop % 2 == 0 { scalar(1) } else { scalar(-1) };
                    m.add_to(row, col, sign);
                }
            }
        }
        boundary_ranks.push(m.rank());
    }
    boundary_ranks.push(0);
    for p in 0..chains.len() {
        let b = chains[p].len() - boundary_ranks[p] - boundary_ranks[p + 1];
        if b > 0 {
            betti.insert(p as i64, b);
        }
    }

    let expected: BTreeMap<i64, usize> = [(0, 1), (1, 6)].into();
    assert_eq!(via_hocolim, expected);
    assert_eq!(betti, expected);
}

#[test]
fn json_form_is_stable() {
    let d1 = Matrix::from_dense(&[vec![scalar(1)], vec![scalar(-1)]]);
    let c = ChainComplex::new([(0, 2), (1, 1)].into(), [(1, d1)].into()).unwrap();
    assert_eq!(
        c.to_json().to_string(),
        r#"{"d":{"1":[[1],[-1]]},"dims":{"0":2,"1":1}}"#
    );
    let half = Matrix::from_dense(&[vec![scalar(1) / scalar(2)]]);
    let f = ChainComplex::new([(0, 1), (1, 1)].into(), [(1, half)].into()).unwrap();
    assert_eq!(f.to_json().to_string(), r#"{"d":{"1":[["1/2"]]},"dims":{"0":1,"1":1}}"#);
}

fn dense_rank(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<Scalar>> =
        rows.iter().map(|r| r.iter().map(|&v| scalar(v)).collect()).collect();
    let (nr, nc) = (a.len(), a.first().map_or(0, Vec::len));
    let mut rank = 0;
    for col in 0..nc {
        let Some(pivot) = (rank..nr).find(|&r| !a[r][col].is_zero()) else { continue };
        a.swap(rank, pivot);
        let inv = a[rank][col].clone();
        for r in 0..nr {
            if r != rank && !a[r][col].is_zero() {
                let factor = a[r][col].clone() / inv.clone();
                for c in col..nc {
                    let sub = a[rank][c].clone() * factor.clone();
                    a[r][c] = a[r][c].clone() - sub;
                }
            }
        }
        rank += 1;
        if rank == nr {
            break;
        }
    }
    rank
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sparse_rank_matches_dense_elimination(
        rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 1..=5), 1..=5)
    ) {
        let nc = rows.iter().map(Vec::len).max().unwrap();
        let padded: Vec<Vec<i64>> = rows
            .iter()
            .map(|r| {
                let mut r = r.clone();
                r.resize(nc, 0);
                r
            })
            .collect();
        let dense: Vec<Vec<Scalar>> = padded
            .iter()
            .map(|r| r.iter().map(|&v| scalar(v)).collect())
            .collect();
        let m = Matrix::from_dense(&dense);
        prop_assert_eq!(m.rank(), dense_rank(&padded));

        let mut int = Matrix::<BigInt>::zero(m.rows(), m.cols());
        for (i, j, v) in m.iter() {
            int.set(i, j, v.numer().clone());
        }
        let factors = chain_cube::smith_invariant_factors(&int);
        prop_assert_eq!(factors.len(), m.rank());
        prop_assert!(factors.iter().all(|f| !f.is_zero()));
        for w in factors.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero(), "divisibility chain");
        }
        prop_assert!(factors.iter().all(|f| f.sign() != num_bigint::Sign::Minus || f.is_one()));
    }
}
