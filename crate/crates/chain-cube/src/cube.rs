//! Cubes of chain complexes: diagrams over a full power poset. Provides the
//! cartesian and cocartesian predicates via the comparison maps into/out of
//! the punctured (co)limits, total cofibers, the strongly-cocartesian sweep
//! over subsets outside the star category, and the chain-level Λ cube whose
//! vertices are star-category hocolims.

use crate::complex::{ChainComplex, ChainError, ChainMap};
use crate::diagram::{hocolim, holim_comparison, GradedMap, PosetDiagram, Totalization};
use crate::matrix::Matrix;
use crate::Coeff;
use gset::GSet;
use itertools::Itertools;
use poset_cube::{outside_star, power_poset, star_category, GPoset, PosetError, Subset};
use std::collections::BTreeMap;

/// A diagram whose shape is the full power poset of a finite ground set,
/// with the subset attached to each object.
#[derive(Clone, Debug)]
pub struct CubeDiagram<F> {
    pub diagram: PosetDiagram<F>,
    pub subsets: Vec<Subset>,
    index: BTreeMap<Subset, usize>,
}

impl<F: Coeff> CubeDiagram<F> {
    pub fn new(diagram: PosetDiagram<F>, subsets: Vec<Subset>) -> Result<Self, ChainError> {
        let n = diagram.len();
        if subsets.len() != n {
            return Err(ChainError::CubeShape("one subset per object required".into()));
        }
        let index: BTreeMap<Subset, usize> =
            subsets.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        if index.len() != n {
            return Err(ChainError::CubeShape("subsets repeat".into()));
        }
        let ground: Subset = subsets.iter().flatten().copied().collect();
        if ground.len() > 20 || n != 1usize << ground.len() {
            return Err(ChainError::CubeShape(format!(
                "{} objects do not form the power poset of a {}-point set",
                n,
                ground.len()
            )));
        }
        for i in 0..n {
            for j in 0..n {
                if diagram.shape().leq(i, j) != subsets[i].is_subset(&subsets[j]) {
                    return Err(ChainError::CubeShape(
                        "poset order disagrees with subset inclusion".into(),
                    ));
                }
            }
        }
        Ok(CubeDiagram { diagram, subsets, index })
    }

    pub fn object_of(&self, s: &Subset) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn ground(&self) -> Subset {
        self.subsets.iter().flatten().copied().collect()
    }

    pub fn bottom(&self) -> usize {
        self.index[&Subset::new()]
    }

    pub fn top(&self) -> usize {
        self.index[&self.ground()]
    }

    /// The face cube on the subsets of `s`.
    pub fn sub_cube(&self, s: &Subset) -> CubeDiagram<F> {
        assert!(s.is_subset(&self.ground()), "face must sit inside the ground set");
        let ids: Vec<usize> = (0..self.subsets.len())
            .filter(|&i| self.subsets[i].is_subset(s))
            .collect();
        let (diagram, globals) = self.diagram.restrict(&ids);
        let subsets = globals.iter().map(|&g| self.subsets[g].clone()).collect();
        CubeDiagram::new(diagram, subsets).expect("a face of a cube is a cube")
    }

    /// The translated face `T ↦ X(fixed ∪ T)` for `T ⊆ varying`, as a cube
    /// over `varying`. `fixed` and `varying` must be disjoint.
    pub fn translated_face(&self, fixed: &Subset, varying: &Subset) -> CubeDiagram<F> {
        assert!(fixed.is_disjoint(varying), "face directions overlap");
        let (shape, subs) = plain_power_poset(varying);
        let obj = |t: &Subset| -> usize {
            let u: Subset = fixed.union(t).copied().collect();
            self.index[&u]
        };
        let values: Vec<ChainComplex<F>> =
            subs.iter().map(|t| self.diagram.value(obj(t)).clone()).collect();
        let mut maps = BTreeMap::new();
        for a in 0..subs.len() {
            for b in 0..subs.len() {
                if a != b && shape.covers(a, b) {
                    let map = self
                        .diagram
                        .map(obj(&subs[a]), obj(&subs[b]))
                        .expect("translated pair is comparable")
                        .clone();
                    maps.insert((a, b), map);
                }
            }
        }
        let diagram = PosetDiagram::new(shape, values, maps)
            .expect("translated faces of a functorial cube are functorial");
        CubeDiagram::new(diagram, subs).expect("translated face is a cube")
    }
}

/// The power poset of an arbitrary finite point set over the trivial group.
pub fn plain_power_poset(ground: &Subset) -> (GPoset, Vec<Subset>) {
    let points: Vec<usize> = ground.iter().copied().collect();
    assert!(points.len() <= 20, "power poset too large");
    let mut subs: Vec<Subset> = (0..1usize << points.len())
        .map(|mask| {
            points
                .iter()
                .enumerate()
                .filter(|(b, _)| mask >> b & 1 == 1)
                .map(|(_, &p)| p)
                .collect()
        })
        .collect();
    subs.sort_by_key(|s| (s.len(), s.iter().copied().collect::<Vec<_>>()));
    let labels = subs
        .iter()
        .map(|s| format!("{{{}}}", s.iter().map(|p| p.to_string()).join(",")))
        .collect();
    let leq = subs.iter().map(|a| subs.iter().map(|b| a.is_subset(b)).collect()).collect();
    let group = group_core::catalog("C1").expect("trivial group is in the catalog");
    let shape = GPoset::new(group, labels, leq, vec![(0..subs.len()).collect()])
        .expect("the power poset is a valid poset");
    (shape, subs)
}

/// Comparison map `value(∅) → holim over the punctured cube`; the cube is
/// cartesian exactly when this is a quasi-isomorphism.
pub fn cartesian_comparison<F: Coeff>(
    cube: &CubeDiagram<F>,
) -> (ChainMap<F>, Totalization<F>) {
    let bottom = cube.bottom();
    let ids: Vec<usize> = (0..cube.diagram.len()).filter(|&i| i != bottom).collect();
    holim_comparison(&cube.diagram, bottom, &ids)
}

/// Comparison map `hocolim over the cube minus its top → value(top)`; the
/// cube is cocartesian exactly when this is a quasi-isomorphism.
pub fn cocartesian_comparison<F: Coeff>(
    cube: &CubeDiagram<F>,
) -> (ChainMap<F>, Totalization<F>) {
    let top = cube.top();
    let ids: Vec<usize> = (0..cube.diagram.len()).filter(|&i| i != top).collect();
    let (punctured, globals) = cube.diagram.restrict(&ids);
    let tot = hocolim(&punctured);
    let tgt = cube.diagram.value(top).clone();
    let mut blocks: GradedMap<F> = BTreeMap::new();
    for (local, &global) in globals.iter().enumerate() {
        let Some(map) = cube.diagram.map(global, top) else { continue };
        for (&n, block) in map {
            for (j, k, v) in block.iter() {
                if let Some(col) = tot.position(n, &[local], k) {
                    blocks
                        .entry(n)
                        .or_insert_with(|| {
                            Matrix::zero(tgt.dim(n), tot.complex.dim(n))
                        })
                        .add_to(j, col, v.clone());
                }
            }
        }
    }
    let cmp = ChainMap::new(tot.complex.clone(), tgt, blocks)
        .expect("the hocolim comparison is a chain map");
    (cmp, tot)
}

pub fn is_cartesian<F: Coeff>(cube: &CubeDiagram<F>) -> bool {
    cartesian_comparison(cube).0.is_quasi_iso()
}

pub fn is_cocartesian<F: Coeff>(cube: &CubeDiagram<F>) -> bool {
    cocartesian_comparison(cube).0.is_quasi_iso()
}

/// Total cofiber as one complex: `TC_n = ⊕_U X(U)_{n−m+|U|}` with the
/// Koszul-signed differential. Acyclic exactly when the cube is
/// cocartesian; much smaller than the hocolim comparison cone, so the
/// strongly-cocartesian sweep runs on this one. The agreement of the two
/// routes is itself under test, not assumed silently.
pub fn total_cofiber<F: Coeff>(cube: &CubeDiagram<F>) -> ChainComplex<F> {
    let ground = cube.ground();
    let m = ground.len() as i64;
    // Offsets: position of (object i, value index k) inside total degree n.
    let mut dims: BTreeMap<i64, usize> = BTreeMap::new();
    let mut offset: BTreeMap<(i64, usize), usize> = BTreeMap::new();
    for (i, u) in cube.subsets.iter().enumerate() {
        let v = cube.diagram.value(i);
        for (&q, &dim) in v.dims() {
            let n = q + m - u.len() as i64;
            let at = dims.entry(n).or_default();
            offset.insert((n, i), *at);
            *at += dim;
        }
    }
    let mut d: BTreeMap<i64, Matrix<F>> = dims
        .iter()
        .map(|(&n, &cols)| (n, Matrix::zero(dims.get(&(n - 1)).copied().unwrap_or(0), cols)))
        .collect();
    let sign = |e: i64| if e.rem_euclid(2) == 0 { F::one() } else { -F::one() };
    for (i, u) in cube.subsets.iter().enumerate() {
        let v = cube.diagram.value(i);
        for (&q, _) in v.dims() {
            let n = q + m - u.len() as i64;
            let col0 = offset[&(n, i)];
            // Vertical: (−1)^{|U|} d.
            let vert = v.diff(q);
            if !vert.is_zero_matrix() {
                let row0 = offset[&(n - 1, i)];
                let target = d.get_mut(&n).expect("degree present");
                for (j, k, entry) in vert.iter() {
                    target.add_to(row0 + j, col0 + k, sign(u.len() as i64) * entry.clone());
                }
            }
            // Horizontal: push into U ∪ {x} with the Koszul sign.
            for &x in ground.difference(u) {
                let mut bigger = u.clone();
                bigger.insert(x);
                let j_obj = cube.object_of(&bigger).expect("cube is a full power poset");
                let eps = sign(u.iter().filter(|&&p| p < x).count() as i64);
                let map = cube.diagram.map(i, j_obj).expect("comparable in the cube");
                if let Some(block) = map.get(&q) {
                    let row0 = offset[&(n - 1, j_obj)];
                    let target = d.get_mut(&n).expect("degree present");
                    for (j, k, entry) in block.iter() {
                        target.add_to(row0 + j, col0 + k, eps.clone() * entry.clone());
                    }
                }
            }
        }
    }
    ChainComplex::new(dims, d).expect("the total cofiber differential squares to zero")
}

/// A cube over `P(J₊)` is strongly cocartesian when its restriction to
/// `P(S)` is cocartesian for every subset `S` outside the star category of
/// `J`. Checked by total-cofiber exactness of each face.
pub fn is_strongly_cocartesian<F: Coeff>(
    cube: &CubeDiagram<F>,
    j: &GSet,
) -> Result<bool, ChainError> {
    let jp = ensure_based(j);
    let expected: Subset = jp.points().collect();
    if cube.ground() != expected || cube.subsets.len() != 1usize << expected.len() {
        return Err(ChainError::CubeShape(
            "cube shape does not match the power poset of J\u{208a}".into(),
        ));
    }
    for s in outside_star(j)? {
        if !total_cofiber(&cube.sub_cube(&s)).is_acyclic() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn ensure_based(j: &GSet) -> GSet {
    if j.basepoint().is_some() {
        j.clone()
    } else {
        j.with_added_basepoint()
    }
}

/// The chain linearization of the Λ cube on a base complex `c`: the vertex
/// at `U ⊆ J₊` is the hocolim over `St(U)` of the diagram that is `c` at
/// `∅` and zero elsewhere, and the cube maps are the evident inclusions of
/// star chains. Strongly cocartesian by the structure of the star poset.
pub fn lambda_cube<F: Coeff>(
    j: &GSet,
    c: &ChainComplex<F>,
) -> Result<CubeDiagram<F>, ChainError> {
    if j.size() == 0 {
        return Err(ChainError::Poset(PosetError::EmptyGSet));
    }
    let sp = power_poset(j, true)?;
    let jp = sp.ambient.clone();
    let mut stars = Vec::new();
    let mut tots: Vec<Totalization<F>> = Vec::new();
    for u in &sp.subsets {
        let st = star_category(&jp, Some(u));
        let empty = st
            .subsets
            .iter()
            .position(|s| s.is_empty())
            .expect("the empty subset is in every star category");
        let values: Vec<ChainComplex<F>> = (0..st.poset.len())
            .map(|i| if i == empty { c.clone() } else { ChainComplex::zero() })
            .collect();
        let mut maps = BTreeMap::new();
        for a in 0..st.poset.len() {
            for b in 0..st.poset.len() {
                if a != b && st.poset.covers(a, b) {
                    maps.insert((a, b), GradedMap::new());
                }
            }
        }
        let diag = PosetDiagram::new(st.poset.clone(), values, maps)
            .expect("the star diagram is functorial");
        tots.push(hocolim(&diag));
        stars.push(st);
    }
    let star_index: Vec<BTreeMap<&Subset, usize>> = stars
        .iter()
        .map(|st| st.subsets.iter().enumerate().map(|(i, s)| (s, i)).collect())
        .collect();
    let values: Vec<ChainComplex<F>> = tots.iter().map(|t| t.complex.clone()).collect();
    let mut maps = BTreeMap::new();
    for a in 0..sp.poset.len() {
        for b in 0..sp.poset.len() {
            if a == b || !sp.poset.covers(a, b) {
                continue;
            }
            // Chains of St(U) include into chains of St(V).
            let translate: Vec<usize> = stars[a]
                .subsets
                .iter()
                .map(|s| star_index[b][s])
                .collect();
            let mut blocks: GradedMap<F> = BTreeMap::new();
            for (&n, basis) in &tots[a].basis {
                let mut mat =
                    Matrix::zero(tots[b].complex.dim(n), tots[a].complex.dim(n));
                for (col, (chain, k)) in basis.iter().enumerate() {
                    let image: Vec<usize> = chain.iter().map(|&x| translate[x]).collect();
                    let row = tots[b]
                        .position(n, &image, *k)
                        .expect("star chains persist under enlargement");
                    mat.add_to(row, col, F::one());
                }
                blocks.insert(n, mat);
            }
            maps.insert((a, b), blocks);
        }
    }
    let diagram = PosetDiagram::new(sp.poset.clone(), values, maps)?;
    CubeDiagram::new(diagram, sp.subsets.clone())
}

/// Homology of the iterated homotopy pushout of the vertices
/// `X(U ∩ o₊)` over the central `X(U ∩ {+})`, one arm per orbit, computed
/// as a single hocolim over the star-shaped poset. For strongly cocartesian
/// cubes this matches the homology of `X(U)`.
pub fn orbit_pushout_homology<F: Coeff>(
    cube: &CubeDiagram<F>,
    j: &GSet,
    u: &Subset,
) -> BTreeMap<i64, usize> {
    let jp = ensure_based(j);
    let bp = jp.basepoint().expect("based");
    let orbits: Vec<Subset> = jp
        .orbit_decomposition()
        .into_iter()
        .filter(|o| !o.contains(&bp))
        .map(|o| {
            let mut s: Subset = o.into_iter().collect();
            s.insert(bp);
            s
        })
        .collect();
    let center: Subset = u.iter().copied().filter(|&p| p == bp).collect();
    let arms: Vec<Subset> =
        orbits.iter().map(|o| u.intersection(o).copied().collect()).collect();
    let n = 1 + arms.len();
    // Star-shaped poset: center 0 under every arm.
    let labels = (0..n).map(|i| if i == 0 { "center".into() } else { format!("arm{i}") }).collect();
    let leq: Vec<Vec<bool>> =
        (0..n).map(|a| (0..n).map(|b| a == b || a == 0).collect()).collect();
    let group = group_core::catalog("C1").expect("trivial group is in the catalog");
    let shape = GPoset::new(group, labels, leq, vec![(0..n).collect()])
        .expect("the star shape is a poset");
    let center_obj = cube.object_of(&center).expect("center vertex in the cube");
    let mut values = vec![cube.diagram.value(center_obj).clone()];
    let mut maps = BTreeMap::new();
    for (i, arm) in arms.iter().enumerate() {
        let arm_obj = cube.object_of(arm).expect("arm vertex in the cube");
        values.push(cube.diagram.value(arm_obj).clone());
        maps.insert(
            (0, i + 1),
            cube.diagram.map(center_obj, arm_obj).expect("center maps into each arm").clone(),
        );
    }
    let diag = PosetDiagram::new(shape, values, maps)
        .expect("the pushout star diagram is functorial");
    hocolim(&diag).complex.homology_ranks()
}
