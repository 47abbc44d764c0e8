//! Poset-indexed diagrams of chain complexes, with functoriality checked at
//! construction, optional group structure, and homotopy limits/colimits
//! computed by totalization over the strict chains of the shape's nerve.

use crate::complex::{ChainComplex, ChainError, ChainMap};
use crate::matrix::Matrix;
use crate::Coeff;
use poset_cube::GPoset;
use std::collections::{BTreeMap, HashMap};

/// Degreewise blocks of a map of complexes; absent degrees are zero. Kept
/// canonical (no zero matrices stored), so `==` is mathematical equality.
pub type GradedMap<F> = BTreeMap<i64, Matrix<F>>;

pub(crate) fn graded_identity<F: Coeff>(c: &ChainComplex<F>) -> GradedMap<F> {
    c.dims().iter().map(|(&n, &dim)| (n, Matrix::identity(dim))).collect()
}

fn drop_zero_blocks<F: Coeff>(map: GradedMap<F>) -> GradedMap<F> {
    map.into_iter().filter(|(_, m)| !m.is_zero_matrix()).collect()
}

/// `g ∘ f` for graded maps, degreewise products of whatever blocks exist.
pub(crate) fn compose_graded<F: Coeff>(g: &GradedMap<F>, f: &GradedMap<F>) -> GradedMap<F> {
    let mut out = GradedMap::new();
    for (n, fb) in f {
        if let Some(gb) = g.get(n) {
            let m = gb.mul(fb);
            if !m.is_zero_matrix() {
                out.insert(*n, m);
            }
        }
    }
    out
}

pub(crate) fn validate_graded_map<F: Coeff>(
    src: &ChainComplex<F>,
    tgt: &ChainComplex<F>,
    map: &GradedMap<F>,
) -> Result<(), ChainError> {
    ChainMap::new(src.clone(), tgt.clone(), map.clone()).map(|_| ())
}

/// A functor from a finite poset to chain complexes: a value per object and
/// a chain map per covering relation. Construction composes the covering
/// maps into a full table over all comparable pairs, rejecting the input if
/// two cover paths between the same objects disagree. An optional group
/// structure makes it a G-diagram: a map `value(i) → value(g·i)` per `g`,
/// the identity for `e`, compositions and naturality all checked.
#[derive(Clone, Debug)]
pub struct PosetDiagram<F> {
    shape: GPoset,
    values: Vec<ChainComplex<F>>,
    table: BTreeMap<(usize, usize), GradedMap<F>>,
    structure: Option<Vec<Vec<GradedMap<F>>>>,
}

impl<F: Coeff> PosetDiagram<F> {
    pub fn new(
        shape: GPoset,
        values: Vec<ChainComplex<F>>,
        maps: BTreeMap<(usize, usize), GradedMap<F>>,
    ) -> Result<Self, ChainError> {
        let n = shape.len();
        if values.len() != n {
            return Err(ChainError::DiagramShape(format!(
                "{} values for {} objects",
                values.len(),
                n
            )));
        }
        let mut cover_preds: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut cover_count = 0;
        for i in 0..n {
            for j in 0..n {
                if i != j && shape.covers(i, j) {
                    cover_preds[j].push(i);
                    cover_count += 1;
                    match maps.get(&(i, j)) {
                        Some(map) => validate_graded_map(&values[i], &values[j], map)?,
                        None => {
                            return Err(ChainError::DiagramShape(format!(
                                "missing map for the covering relation {i} < {j}"
                            )))
                        }
                    }
                }
            }
        }
        if maps.len() != cover_count {
            return Err(ChainError::DiagramShape(
                "maps must be keyed by exactly the covering relations".into(),
            ));
        }
        let maps: BTreeMap<(usize, usize), GradedMap<F>> =
            maps.into_iter().map(|(k, m)| (k, drop_zero_blocks(m))).collect();
        let mut table: BTreeMap<(usize, usize), GradedMap<F>> =
            (0..n).map(|i| ((i, i), graded_identity(&values[i]))).collect();
        for &j in &shape.linear_extension() {
            for i in 0..n {
                if !shape.lt(i, j) {
                    continue;
                }
                let mut candidate: Option<GradedMap<F>> = None;
                for &k in &cover_preds[j] {
                    if !shape.leq(i, k) {
                        continue;
                    }
                    let via = compose_graded(&maps[&(k, j)], &table[&(i, k)]);
                    match &candidate {
                        None => candidate = Some(via),
                        Some(seen) if *seen != via => {
                            return Err(ChainError::Functoriality(i, j))
                        }
                        _ => {}
                    }
                }
                let map = candidate.expect("a lower cover of j above i exists when i < j");
                table.insert((i, j), map);
            }
        }
        Ok(PosetDiagram { shape, values, table, structure: None })
    }

    /// Attaches and validates a group structure: `phi[g][i]` is the map
    /// `value(i) → value(g·i)`.
    pub fn with_group_structure(
        mut self,
        phi: Vec<Vec<GradedMap<F>>>,
    ) -> Result<Self, ChainError> {
        let group = self.shape.group().clone();
        let n = self.shape.len();
        if phi.len() != group.order() || phi.iter().any(|per| per.len() != n) {
            return Err(ChainError::GroupStructure("structure data has the wrong shape".into()));
        }
        let phi: Vec<Vec<GradedMap<F>>> = phi
            .into_iter()
            .map(|per| per.into_iter().map(drop_zero_blocks).collect())
            .collect();
        for g in group.elements() {
            for i in 0..n {
                validate_graded_map(
                    &self.values[i],
                    &self.values[self.shape.act(g, i)],
                    &phi[g as usize][i],
                )?;
            }
        }
        for i in 0..n {
            if phi[0][i] != graded_identity(&self.values[i]) {
                return Err(ChainError::GroupStructure(format!(
                    "identity element does not act as the identity at object {i}"
                )));
            }
        }
        for g in group.elements() {
            for h in group.elements() {
                let gh = group.mul(g, h);
                for i in 0..n {
                    let hi = self.shape.act(h, i);
                    let composite = compose_graded(&phi[g as usize][hi], &phi[h as usize][i]);
                    if composite != phi[gh as usize][i] {
                        return Err(ChainError::GroupStructure(format!(
                            "composition fails at g={g}, h={h}, object {i}"
                        )));
                    }
                }
            }
        }
        for (&(i, j), map) in &self.table {
            for g in group.elements() {
                let gi = self.shape.act(g, i);
                let gj = self.shape.act(g, j);
                let left = compose_graded(&self.table[&(gi, gj)], &phi[g as usize][i]);
                let right = compose_graded(&phi[g as usize][j], map);
                if left != right {
                    return Err(ChainError::GroupStructure(format!(
                        "naturality fails at g={g} over {i} \u{2264} {j}"
                    )));
                }
            }
        }
        self.structure = Some(phi);
        Ok(self)
    }

    pub fn shape(&self) -> &GPoset {
        &self.shape
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value(&self, i: usize) -> &ChainComplex<F> {
        &self.values[i]
    }

    /// The composed map for any comparable pair `i ≤ j`.
    pub fn map(&self, i: usize, j: usize) -> Option<&GradedMap<F>> {
        self.table.get(&(i, j))
    }

    pub fn structure(&self) -> Option<&Vec<Vec<GradedMap<F>>>> {
        self.structure.as_ref()
    }

    /// Full subdiagram on the given objects; returns it with the global id
    /// per new object. The group structure is not carried over.
    pub fn restrict(&self, ids: &[usize]) -> (PosetDiagram<F>, Vec<usize>) {
        let (sub, globals) = self.shape.full_subposet(ids);
        let values: Vec<ChainComplex<F>> =
            globals.iter().map(|&g| self.values[g].clone()).collect();
        let mut maps = BTreeMap::new();
        for a in 0..sub.len() {
            for b in 0..sub.len() {
                if a != b && sub.covers(a, b) {
                    maps.insert((a, b), self.table[&(globals[a], globals[b])].clone());
                }
            }
        }
        let diagram = PosetDiagram::new(sub, values, maps)
            .expect("a full subdiagram of a functorial diagram is functorial");
        (diagram, globals)
    }
}

/// A totalized homotopy (co)limit: the complex plus, per total degree, the
/// ordered basis `(strict chain of shape objects, index into the value's
/// basis in the matching internal degree)`.
#[derive(Clone, Debug)]
pub struct Totalization<F> {
    pub complex: ChainComplex<F>,
    pub basis: BTreeMap<i64, Vec<(Vec<usize>, usize)>>,
    index: BTreeMap<i64, HashMap<(Vec<usize>, usize), usize>>,
}

impl<F: Coeff> Totalization<F> {
    fn from_basis(
        basis: BTreeMap<i64, Vec<(Vec<usize>, usize)>>,
        d: BTreeMap<i64, Matrix<F>>,
    ) -> Self {
        let dims = basis.iter().map(|(&n, b)| (n, b.len())).collect();
        let complex = ChainComplex::new(dims, d)
            .expect("the totalization differential squares to zero");
        let index = basis
            .iter()
            .map(|(&n, b)| {
                (n, b.iter().enumerate().map(|(pos, e)| (e.clone(), pos)).collect())
            })
            .collect();
        Totalization { complex, basis, index }
    }

    /// Position of a basis element inside its total degree.
    pub fn position(&self, n: i64, chain: &[usize], k: usize) -> Option<usize> {
        self.index.get(&n)?.get(&(chain.to_vec(), k)).copied()
    }
}

/// All nonempty strict chains of the poset, ordered by length then
/// lexicographically; each chain lists its objects in increasing order.
pub fn strict_chains(shape: &GPoset) -> Vec<Vec<usize>> {
    fn extend(shape: &GPoset, stack: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(stack.clone());
        let last = *stack.last().expect("stack nonempty");
        for y in shape.objects() {
            if shape.lt(last, y) {
                stack.push(y);
                extend(shape, stack, out);
                stack.pop();
            }
        }
    }
    let mut out = Vec::new();
    let mut stack = Vec::new();
    for x in shape.objects() {
        stack.push(x);
        extend(shape, &mut stack, &mut out);
        stack.pop();
    }
    out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    out
}

/// Where `y` can be inserted into the chain to keep it strict: the unique
/// position, or None.
fn insertion_position(shape: &GPoset, chain: &[usize], y: usize) -> Option<usize> {
    if chain.contains(&y) {
        return None;
    }
    let prefix = chain.iter().take_while(|&&x| shape.lt(x, y)).count();
    if prefix == chain.len() || shape.lt(y, chain[prefix]) {
        Some(prefix)
    } else {
        None
    }
}

/// Homotopy limit: the totalization of the cochain complex of the shape's
/// nerve with coefficients in the diagram. A basis element in total degree
/// `n` is a strict chain `x₀ < … < x_p` together with a basis index of
/// `value(x_p)` in degree `n + p`.
pub fn holim<F: Coeff>(diag: &PosetDiagram<F>) -> Totalization<F> {
    let shape = diag.shape();
    let chains = strict_chains(shape);
    let mut basis: BTreeMap<i64, Vec<(Vec<usize>, usize)>> = BTreeMap::new();
    for c in &chains {
        let p = (c.len() - 1) as i64;
        let v = diag.value(*c.last().expect("chains are nonempty"));
        for (&q, &dim) in v.dims() {
            let slot = basis.entry(q - p).or_default();
            for k in 0..dim {
                slot.push((c.clone(), k));
            }
        }
    }
    let index: BTreeMap<i64, HashMap<(Vec<usize>, usize), usize>> = basis
        .iter()
        .map(|(&n, b)| (n, b.iter().enumerate().map(|(pos, e)| (e.clone(), pos)).collect()))
        .collect();
    let pos = |n: i64, chain: &[usize], k: usize| -> Option<usize> {
        index.get(&n).and_then(|m| m.get(&(chain.to_vec(), k)).copied())
    };
    let mut d: BTreeMap<i64, Matrix<F>> = basis
        .iter()
        .map(|(&n, b)| {
            (n, Matrix::zero(basis.get(&(n - 1)).map_or(0, |t| t.len()), b.len()))
        })
        .collect();
    let sign = |e: i64| if e.rem_euclid(2) == 0 { F::one() } else { -F::one() };
    for c in &chains {
        let p = (c.len() - 1) as i64;
        let last = *c.last().expect("chains are nonempty");
        let v = diag.value(last);
        // Vertical part: (−1)^p d on the value.
        for (&q, &_dim) in v.dims() {
            let n = q - p;
            let m = v.diff(q);
            if !m.is_zero_matrix() {
                let target = d.get_mut(&n).expect("degree present");
                for (j, k, entry) in m.iter() {
                    let col = pos(n, c, k).expect("basis element present");
                    let row = pos(n - 1, c, j).expect("basis element present");
                    target.add_to(row, col, sign(p) * entry.clone());
                }
            }
        }
        // Coface parts: insert an object into the chain.
        for y in shape.objects() {
            let Some(i) = insertion_position(shape, c, y) else { continue };
            let mut longer = c.clone();
            longer.insert(i, y);
            if (i as i64) <= p {
                // Interior or front insertion: the value object is unchanged.
                for (&q, &dim) in v.dims() {
                    let n = q - p;
                    let target = d.get_mut(&n).expect("degree present");
                    for k in 0..dim {
                        let col = pos(n, c, k).expect("basis element present");
                        let row = pos(n - 1, &longer, k).expect("basis element present");
                        target.add_to(row, col, sign(i as i64));
                    }
                }
            } else {
                // Appended at the end: push forward along the diagram map.
                let map = diag.map(last, y).expect("comparable pair in the table");
                for (&q, block) in map {
                    let n = q - p;
                    if basis.get(&n).is_none() {
                        continue;
                    }
                    let target = d.get_mut(&n).expect("degree present");
                    for (j, k, entry) in block.iter() {
                        let col = pos(n, c, k).expect("basis element present");
                        let row = pos(n - 1, &longer, j).expect("basis element present");
                        target.add_to(row, col, sign(p + 1) * entry.clone());
                    }
                }
            }
        }
    }
    Totalization::from_basis(basis, d)
}

/// Comparison map `value(src) → holim` of the restriction to `ids`, given by
/// the restriction maps of the diagram on singleton chains and zero on longer
/// ones. Objects in `ids` not above `src` contribute the zero map.
pub fn holim_comparison<F: Coeff>(
    diag: &PosetDiagram<F>,
    src: usize,
    ids: &[usize],
) -> (ChainMap<F>, Totalization<F>) {
    let (sub, globals) = diag.restrict(ids);
    let tot = holim(&sub);
    let source = diag.value(src).clone();
    let mut blocks: GradedMap<F> = BTreeMap::new();
    for (local, &global) in globals.iter().enumerate() {
        let Some(map) = diag.map(src, global) else { continue };
        for (&n, block) in map {
            for (j, k, v) in block.iter() {
                if let Some(row) = tot.position(n, &[local], j) {
                    blocks
                        .entry(n)
                        .or_insert_with(|| Matrix::zero(tot.complex.dim(n), source.dim(n)))
                        .add_to(row, k, v.clone());
                }
            }
        }
    }
    let cmp = ChainMap::new(source, tot.complex.clone(), blocks)
        .expect("the holim comparison is a chain map");
    (cmp, tot)
}

/// Homotopy colimit: the totalization of the chain complex of the nerve. A
/// basis element in total degree `n` is a strict chain `x₀ < … < x_p` with a
/// basis index of `value(x₀)` in degree `n − p`; the face dropping `x₀`
/// pushes forward along `x₀ → x₁`.
pub fn hocolim<F: Coeff>(diag: &PosetDiagram<F>) -> Totalization<F> {
    let shape = diag.shape();
    let chains = strict_chains(shape);
    let mut basis: BTreeMap<i64, Vec<(Vec<usize>, usize)>> = BTreeMap::new();
    for c in &chains {
        let p = (c.len() - 1) as i64;
        let v = diag.value(c[0]);
        for (&q, &dim) in v.dims() {
            let slot = basis.entry(q + p).or_default();
            for k in 0..dim {
                slot.push((c.clone(), k));
            }
        }
    }
    let index: BTreeMap<i64, HashMap<(Vec<usize>, usize), usize>> = basis
        .iter()
        .map(|(&n, b)| (n, b.iter().enumerate().map(|(pos, e)| (e.clone(), pos)).collect()))
        .collect();
    let pos = |n: i64, chain: &[usize], k: usize| -> Option<usize> {
        index.get(&n).and_then(|m| m.get(&(chain.to_vec(), k)).copied())
    };
    let mut d: BTreeMap<i64, Matrix<F>> = basis
        .iter()
        .map(|(&n, b)| {
            (n, Matrix::zero(basis.get(&(n - 1)).map_or(0, |t| t.len()), b.len()))
        })
        .collect();
    let sign = |e: i64| if e.rem_euclid(2) == 0 { F::one() } else { -F::one() };
    for c in &chains {
        let p = (c.len() - 1) as i64;
        let v = diag.value(c[0]);
        for (&q, &_dim) in v.dims() {
            let n = q + p;
            // Vertical part: (−1)^p d.
            let m = v.diff(q);
            if !m.is_zero_matrix() {
                let target = d.get_mut(&n).expect("degree present");
                for (j, k, entry) in m.iter() {
                    let col = pos(n, c, k).expect("basis element present");
                    let row = pos(n - 1, c, j).expect("basis element present");
                    target.add_to(row, col, sign(p) * entry.clone());
                }
            }
            if p == 0 {
                continue;
            }
            // Face 0 pushes along the first map of the chain.
            let shorter: Vec<usize> = c[1..].to_vec();
            let map = diag.map(c[0], c[1]).expect("comparable pair in the table");
            if let Some(block) = map.get(&q) {
                let target = d.get_mut(&n).expect("degree present");
                for (j, k, entry) in block.iter() {
                    let col = pos(n, c, k).expect("basis element present");
                    let row = pos(n - 1, &shorter, j).expect("basis element present");
                    target.add_to(row, col, entry.clone());
                }
            }
            // Faces 1..=p delete an object, keeping the value.
            for i in 1..=p {
                let mut shorter = c.clone();
                shorter.remove(i as usize);
                let target = d.get_mut(&n).expect("degree present");
                for k in 0..v.dim(q) {
                    let col = pos(n, c, k).expect("basis element present");
                    let row = pos(n - 1, &shorter, k).expect("basis element present");
                    target.add_to(row, col, sign(i));
                }
            }
        }
    }
    Totalization::from_basis(basis, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{scalar, Scalar};
    use group_core::catalog;

    fn chain_poset(n: usize) -> GPoset {
        let labels = (0..n).map(|i| i.to_string()).collect();
        let leq = (0..n).map(|i| (0..n).map(|j| i <= j).collect()).collect();
        GPoset::new(catalog("C1").unwrap(), labels, leq, vec![(0..n).collect()]).unwrap()
    }

    #[test]
    fn chains_of_a_three_chain() {
        let shape = chain_poset(3);
        let chains = strict_chains(&shape);
        assert_eq!(chains.len(), 7);
        assert_eq!(chains[6], vec![0, 1, 2]);
    }

    #[test]
    fn one_object_totalizations_are_the_value() {
        let shape = chain_poset(1);
        let c = ChainComplex::<Scalar>::new(
            [(0, 1), (1, 2)].into(),
            [(1, Matrix::from_dense(&[vec![scalar(1), scalar(-1)]]))].into(),
        )
        .unwrap();
        let diag = PosetDiagram::new(shape, vec![c.clone()], BTreeMap::new()).unwrap();
        assert_eq!(holim(&diag).complex.homology_ranks(), c.homology_ranks());
        assert_eq!(hocolim(&diag).complex.homology_ranks(), c.homology_ranks());
        assert_eq!(holim(&diag).complex.dims(), c.dims());
    }

    #[test]
    fn functoriality_violation_is_rejected() {
        // Square poset 0 < 1, 2 < 3 with inconsistent edge maps.
        let labels = vec!["a".into(), "b".into(), "c".into(), "d".into()];
        let leq = vec![
            vec![true, true, true, true],
            vec![false, true, false, true],
            vec![false, false, true, true],
            vec![false, false, false, true],
        ];
        let shape =
            GPoset::new(catalog("C1").unwrap(), labels, leq, vec![(0..4).collect()]).unwrap();
        let one = ChainComplex::<Scalar>::concentrated(0, 1);
        let ident: GradedMap<Scalar> = [(0, Matrix::identity(1))].into();
        let minus: GradedMap<Scalar> = [(0, Matrix::identity(1).neg())].into();
        let maps: BTreeMap<(usize, usize), GradedMap<Scalar>> = [
            ((0, 1), ident.clone()),
            ((0, 2), ident.clone()),
            ((1, 3), ident.clone()),
            ((2, 3), minus),
        ]
        .into();
        let err = PosetDiagram::new(shape, vec![one; 4], maps).unwrap_err();
        assert_eq!(err, ChainError::Functoriality(0, 3));
    }
}
