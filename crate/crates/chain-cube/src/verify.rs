//! Mechanical verifiers for the two diagram lemmas: the covering comparison
//! into a double homotopy limit, and the wedge decomposition of a split
//! poset diagram.

use crate::complex::{ChainError, ChainMap};
use crate::diagram::{
    compose_graded, graded_identity, holim, holim_comparison, validate_graded_map, GradedMap,
    PosetDiagram, Totalization,
};
use crate::matrix::Matrix;
use crate::Coeff;
use itertools::Itertools;
use poset_cube::{validate_equivariant_cover, EquivariantCover, GPoset};
use serde::Serialize;
use std::collections::BTreeMap;

/// Checks the covering comparison: the homotopy limit of the whole diagram
/// maps quasi-isomorphically to the homotopy limit, over the nonempty
/// subsets `U` of the cover's index points, of the limits over the part
/// intersections `⋂_{u∈U} parts[u]`. The comparison restricts a limit
/// element over each singleton outer chain and is zero on the longer ones.
pub fn verify_covering_lemma<F: Coeff>(
    diag: &PosetDiagram<F>,
    cover: &EquivariantCover,
) -> Result<bool, ChainError> {
    if !validate_equivariant_cover(diag.shape(), cover) {
        return Err(ChainError::InvalidCover);
    }
    let m = cover.index.size();
    let subsets: Vec<Vec<usize>> = (1usize..1 << m)
        .map(|mask| (0..m).filter(|&p| mask >> p & 1 == 1).collect::<Vec<_>>())
        .sorted_by_key(|s: &Vec<usize>| (s.len(), s.clone()))
        .collect();

    struct Inner<F: Coeff> {
        tot: Totalization<F>,
        globals: Vec<usize>,
        local: BTreeMap<usize, usize>,
    }
    let inners: Vec<Inner<F>> = subsets
        .iter()
        .map(|u| {
            let ids = cover.intersection(u);
            let (sub, globals) = diag.restrict(&ids);
            let local = globals.iter().enumerate().map(|(l, &g)| (g, l)).collect();
            Inner { tot: holim(&sub), globals, local }
        })
        .collect();

    // Outer shape: the nonempty index subsets by inclusion. The outer limit
    // does not use the group action, so it lives over the trivial group.
    let labels = subsets.iter().map(|s| format!("{{{}}}", s.iter().join(","))).collect();
    let leq: Vec<Vec<bool>> = subsets
        .iter()
        .map(|a| subsets.iter().map(|b| a.iter().all(|x| b.contains(x))).collect())
        .collect();
    let trivial = group_core::catalog("C1").expect("trivial group is in the catalog");
    let outer_shape =
        GPoset::new(trivial, labels, leq, vec![(0..subsets.len()).collect()])?;

    // For U ⊆ V the intersection shrinks; a limit element restricts by
    // keeping the basis chains that survive inside the smaller subposet.
    let mut maps: BTreeMap<(usize, usize), GradedMap<F>> = BTreeMap::new();
    for a in 0..subsets.len() {
        for b in 0..subsets.len() {
            if !outer_shape.covers(a, b) {
                continue;
            }
            let mut blocks: GradedMap<F> = BTreeMap::new();
            for (&n, basis_a) in &inners[a].tot.basis {
                let mut mat = Matrix::zero(inners[b].tot.complex.dim(n), basis_a.len());
                for (col, (chain, k)) in basis_a.iter().enumerate() {
                    let image: Option<Vec<usize>> = chain
                        .iter()
                        .map(|&x| inners[b].local.get(&inners[a].globals[x]).copied())
                        .collect();
                    if let Some(image) = image {
                        if let Some(row) = inners[b].tot.position(n, &image, *k) {
                            mat.add_to(row, col, F::one());
                        }
                    }
                }
                if !mat.is_zero_matrix() {
                    blocks.insert(n, mat);
                }
            }
            maps.insert((a, b), blocks);
        }
    }
    let outer_values = inners.iter().map(|i| i.tot.complex.clone()).collect();
    let outer = PosetDiagram::new(outer_shape, outer_values, maps)?;
    let outer_tot = holim(&outer);

    let whole = holim(diag);
    let mut blocks: GradedMap<F> = BTreeMap::new();
    for (u_idx, inner) in inners.iter().enumerate() {
        for (&n, basis_in) in &inner.tot.basis {
            for (row_in, (chain, k)) in basis_in.iter().enumerate() {
                let global: Vec<usize> = chain.iter().map(|&x| inner.globals[x]).collect();
                let col = whole
                    .position(n, &global, *k)
                    .expect("chains of a part intersection are chains of the shape");
                let row = outer_tot
                    .position(n, &[u_idx], row_in)
                    .expect("singleton outer chains are present");
                blocks
                    .entry(n)
                    .or_insert_with(|| {
                        Matrix::zero(outer_tot.complex.dim(n), whole.complex.dim(n))
                    })
                    .add_to(row, col, F::one());
            }
        }
    }
    let cmp = ChainMap::new(whole.complex.clone(), outer_tot.complex.clone(), blocks)
        .expect("the covering comparison is a chain map");
    Ok(cmp.is_quasi_iso())
}

/// Graded homology dimensions on both sides of the decomposition.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DecompReport {
    /// Homology of the value at the initial object.
    pub initial: BTreeMap<i64, usize>,
    /// Per object: homology of the fiber of `value(i) → holim over {j > i}`.
    pub fibers: Vec<BTreeMap<i64, usize>>,
    /// Degreewise sum of the fibers.
    pub total: BTreeMap<i64, usize>,
}

/// Checks the wedge decomposition of a split diagram: the homology of the
/// value at the initial object matches, degreewise, the sum over all objects
/// of the homology of the fiber of `value(i) → holim over {j > i}`.
///
/// `sections` holds one section per covering relation, keyed like the
/// diagram's own maps; `S(i⋖j): value(j) → value(i)` must split the diagram
/// map. The sections are closed under composition and must be coherent: the
/// composites along different paths agree, and `M(i,j)∘S(i,k) = S(j,k)` for
/// every `i < j < k`. Any failed hypothesis is an error, not a verdict.
pub fn verify_decomp<F: Coeff>(
    diag: &PosetDiagram<F>,
    sections: &BTreeMap<(usize, usize), GradedMap<F>>,
) -> Result<(bool, DecompReport), ChainError> {
    let shape = diag.shape();
    let n = shape.len();
    let initial = (0..n)
        .find(|&i| (0..n).all(|j| shape.leq(i, j)))
        .ok_or(ChainError::NoInitialObject)?;

    for (i, j) in sections.keys() {
        if !shape.covers(*i, *j) {
            return Err(ChainError::DiagramShape(format!(
                "section given for {i}, {j} which is not a covering relation"
            )));
        }
    }
    // Every covering relation needs a section that is a chain map split by
    // the diagram's own map.
    for j in 0..n {
        for i in 0..n {
            if !shape.covers(i, j) {
                continue;
            }
            let s = sections.get(&(i, j)).ok_or(ChainError::MissingSection(i, j))?;
            validate_graded_map(diag.value(j), diag.value(i), s)?;
            let forward = diag.map(i, j).expect("comparable pair");
            if compose_graded(forward, s) != graded_identity(diag.value(j)) {
                return Err(ChainError::NotSection(i, j));
            }
        }
    }
    let mut table: BTreeMap<(usize, usize), GradedMap<F>> = BTreeMap::new();
    for i in 0..n {
        table.insert((i, i), graded_identity(diag.value(i)));
    }
    for &j in &shape.linear_extension() {
        for i in 0..n {
            if !shape.lt(i, j) {
                continue;
            }
            // Close under composition through every covering predecessor of
            // j above i; all paths must give the same composite.
            let mut composite: Option<GradedMap<F>> = None;
            for k in 0..n {
                if !(shape.leq(i, k) && shape.covers(k, j)) {
                    continue;
                }
                let s_kj = &sections[&(k, j)];
                let candidate = compose_graded(&table[&(i, k)], s_kj);
                match &composite {
                    None => composite = Some(candidate),
                    Some(existing) if *existing != candidate => {
                        return Err(ChainError::SectionTriangle(i, k, j));
                    }
                    Some(_) => {}
                }
            }
            table.insert((i, j), composite.expect("i < j has a covering predecessor"));
        }
    }
    for i in 0..n {
        for j in 0..n {
            if !shape.lt(i, j) {
                continue;
            }
            for k in 0..n {
                if !shape.lt(j, k) {
                    continue;
                }
                let lhs =
                    compose_graded(diag.map(i, j).expect("comparable"), &table[&(i, k)]);
                if lhs != table[&(j, k)] {
                    return Err(ChainError::SectionTriangle(i, j, k));
                }
            }
        }
    }

    let lhs = diag.value(initial).homology_ranks();
    let mut fibers = Vec::with_capacity(n);
    let mut total: BTreeMap<i64, usize> = BTreeMap::new();
    for i in 0..n {
        let above: Vec<usize> = (0..n).filter(|&j| shape.lt(i, j)).collect();
        let (cmp, _) = holim_comparison(diag, i, &above);
        let fiber: BTreeMap<i64, usize> = cmp
            .cone()
            .homology_ranks()
            .into_iter()
            .map(|(deg, r)| (deg - 1, r))
            .collect();
        for (&deg, &r) in &fiber {
            *total.entry(deg).or_default() += r;
        }
        fibers.push(fiber);
    }
    let ok = lhs == total;
    Ok((ok, DecompReport { initial: lhs, fibers, total }))
}
