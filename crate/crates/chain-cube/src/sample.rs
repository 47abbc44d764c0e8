//! Seeded builders for the randomized verification suites: complexes with
//! known homology, unitriangular basis scrambles, free functorial diagrams
//! over a poset (plain and G-structured), split diagrams with their
//! sections, and cube instances with controlled cartesianness.

use crate::complex::{ChainComplex, ChainMap};
use crate::cube::{plain_power_poset, CubeDiagram};
use crate::diagram::{compose_graded, GradedMap, PosetDiagram};
use crate::matrix::Matrix;
use crate::{scalar, Scalar};
use poset_cube::{GPoset, Subset};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::collections::BTreeMap;

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Two-term acyclic complex `0 → Q → Q → 0` in degrees `n, n−1`.
pub fn disc(n: i64) -> ChainComplex<Scalar> {
    let dims = BTreeMap::from([(n, 1), (n - 1, 1)]);
    let d = BTreeMap::from([(n, Matrix::identity(1))]);
    ChainComplex::new(dims, d).expect("the disc is a complex")
}

/// Unitriangular change of basis and its inverse. `I + N` with `N` strictly
/// upper and sparse; the inverse is the finite Neumann series.
fn unitriangular(rng: &mut StdRng, dim: usize) -> (Matrix<Scalar>, Matrix<Scalar>) {
    let mut nil = Matrix::zero(dim, dim);
    for i in 0..dim {
        for j in i + 1..dim {
            if rng.gen_bool(0.5) {
                nil.add_to(i, j, scalar(rng.gen_range(-2..=2)));
            }
        }
    }
    let p = Matrix::identity(dim).add(&nil);
    let mut inv = Matrix::identity(dim);
    let mut power = nil.clone();
    let mut subtract = true;
    while !power.is_zero_matrix() {
        inv = if subtract { inv.sub(&power) } else { inv.add(&power) };
        subtract = !subtract;
        power = power.mul(&nil);
    }
    (p, inv)
}

type Transition = BTreeMap<i64, (Matrix<Scalar>, Matrix<Scalar>)>;

fn transition_for(c: &ChainComplex<Scalar>, rng: &mut StdRng) -> Transition {
    c.dims().iter().map(|(&n, &dim)| (n, unitriangular(rng, dim))).collect()
}

/// `d ↦ P_{n−1} d P_n^{-1}`, same homology in a scrambled basis.
fn conjugate_complex(c: &ChainComplex<Scalar>, t: &Transition) -> ChainComplex<Scalar> {
    let mut d = BTreeMap::new();
    for n in c.degrees() {
        let m = c.diff(n);
        if m.is_zero_matrix() {
            continue;
        }
        let out = &t[&(n - 1)].0;
        let inv = &t[&n].1;
        d.insert(n, out.mul(&m).mul(inv));
    }
    ChainComplex::new(c.dims().clone(), d).expect("conjugation preserves the complex")
}

/// `f ↦ P_tgt f P_src^{-1}` degreewise; nonzero blocks only exist where both
/// endpoints have basis, so the transitions are always present.
fn conjugate_map(blocks: &GradedMap<Scalar>, src: &Transition, tgt: &Transition) -> GradedMap<Scalar> {
    let mut out = GradedMap::new();
    for (&n, b) in blocks {
        if b.is_zero_matrix() {
            continue;
        }
        let m = tgt[&n].0.mul(b).mul(&src[&n].1);
        if !m.is_zero_matrix() {
            out.insert(n, m);
        }
    }
    out
}

/// Applies a random change of basis at every vertex and rewrites both map
/// tables accordingly: `forward` keyed `(i, j): value(i) → value(j)`,
/// `backward` keyed `(i, j): value(j) → value(i)`. Every composition
/// identity among the maps is preserved.
pub fn scramble_system(
    rng: &mut StdRng,
    values: Vec<ChainComplex<Scalar>>,
    forward: BTreeMap<(usize, usize), GradedMap<Scalar>>,
    backward: BTreeMap<(usize, usize), GradedMap<Scalar>>,
) -> (
    Vec<ChainComplex<Scalar>>,
    BTreeMap<(usize, usize), GradedMap<Scalar>>,
    BTreeMap<(usize, usize), GradedMap<Scalar>>,
) {
    let transitions: Vec<Transition> =
        values.iter().map(|c| transition_for(c, rng)).collect();
    let new_values =
        values.iter().zip(&transitions).map(|(c, t)| conjugate_complex(c, t)).collect();
    let new_forward = forward
        .iter()
        .map(|(&(i, j), m)| ((i, j), conjugate_map(m, &transitions[i], &transitions[j])))
        .collect();
    let new_backward = backward
        .iter()
        .map(|(&(i, j), m)| ((i, j), conjugate_map(m, &transitions[j], &transitions[i])))
        .collect();
    (new_values, new_forward, new_backward)
}

/// Random complex in the degree window: concentrated pieces and acyclic
/// discs, conjugated. Always carries at least one homology class.
pub fn random_complex(rng: &mut StdRng, lo: i64, hi: i64, width: usize) -> ChainComplex<Scalar> {
    let mut c = ChainComplex::concentrated(rng.gen_range(lo..=hi), 1);
    for n in lo..=hi {
        for _ in 0..rng.gen_range(0..=width) {
            c = c.direct_sum(&ChainComplex::concentrated(n, 1));
        }
        for _ in 0..rng.gen_range(0..=width) {
            c = c.direct_sum(&disc(n));
        }
    }
    let t = transition_for(&c, rng);
    conjugate_complex(&c, &t)
}

/// One generator of a functorial diagram: a complex living either on the
/// whole up-set of an object (identity transition maps) or on that single
/// object alone (zero maps in and out).
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Summand {
    Up(usize),
    Point(usize),
}

impl Summand {
    fn lives_at(self, shape: &GPoset, i: usize) -> bool {
        match self {
            Summand::Up(o) => shape.leq(o, i),
            Summand::Point(o) => o == i,
        }
    }
}

/// Assembles the direct sum of the generators into diagram data: per object
/// the sum of the complexes living there, with the identity between shared
/// summands over every covering relation.
pub fn diagram_data(
    shape: &GPoset,
    gens: &[(Summand, ChainComplex<Scalar>)],
) -> (Vec<ChainComplex<Scalar>>, BTreeMap<(usize, usize), GradedMap<Scalar>>) {
    let contributors: Vec<Vec<usize>> = shape
        .objects()
        .map(|i| {
            gens.iter()
                .enumerate()
                .filter(|(_, (s, _))| s.lives_at(shape, i))
                .map(|(idx, _)| idx)
                .collect()
        })
        .collect();
    let values: Vec<ChainComplex<Scalar>> = contributors
        .iter()
        .map(|list| {
            list.iter().fold(ChainComplex::zero(), |acc, &s| acc.direct_sum(&gens[s].1))
        })
        .collect();
    let offset = |list: &[usize], s: usize, n: i64| -> usize {
        list.iter().take_while(|&&x| x != s).map(|&x| gens[x].1.dim(n)).sum()
    };
    let mut maps = BTreeMap::new();
    for i in shape.objects() {
        for j in shape.objects() {
            if !shape.covers(i, j) {
                continue;
            }
            let mut blocks: GradedMap<Scalar> = GradedMap::new();
            for &s in &contributors[i] {
                if !contributors[j].contains(&s) {
                    continue;
                }
                for (&n, &dim) in gens[s].1.dims() {
                    let block = blocks.entry(n).or_insert_with(|| {
                        Matrix::zero(values[j].dim(n), values[i].dim(n))
                    });
                    let r0 = offset(&contributors[j], s, n);
                    let c0 = offset(&contributors[i], s, n);
                    for t in 0..dim {
                        block.add_to(r0 + t, c0 + t, scalar(1));
                    }
                }
            }
            maps.insert((i, j), blocks);
        }
    }
    (values, maps)
}

/// Random functorial diagram: up-set summands on random objects carrying
/// random complexes, scrambled at every vertex.
pub fn random_diagram(shape: &GPoset, rng: &mut StdRng, summands: usize) -> PosetDiagram<Scalar> {
    let gens: Vec<(Summand, ChainComplex<Scalar>)> = (0..summands)
        .map(|_| (Summand::Up(rng.gen_range(0..shape.len())), random_complex(rng, 0, 2, 1)))
        .collect();
    let (values, maps) = diagram_data(shape, &gens);
    let (values, maps, _) = scramble_system(rng, values, maps, BTreeMap::new());
    PosetDiagram::new(shape.clone(), values, maps).expect("generated diagrams are functorial")
}

/// Random G-diagram: each generator contributes one summand per point of
/// the orbit of a random object, all carrying the same complex, and the
/// group structure permutes the summands. No scrambling, to keep the
/// structure maps exactly equivariant.
pub fn random_equivariant_diagram(
    shape: &GPoset,
    rng: &mut StdRng,
    gens: usize,
) -> PosetDiagram<Scalar> {
    let group = shape.group().clone();
    let chosen: Vec<(Vec<usize>, ChainComplex<Scalar>)> = (0..gens)
        .map(|_| {
            let o = rng.gen_range(0..shape.len());
            let mut orbit: Vec<usize> = group.elements().map(|g| shape.act(g, o)).collect();
            orbit.sort_unstable();
            orbit.dedup();
            (orbit, random_complex(rng, 0, 2, 1))
        })
        .collect();
    let slots: Vec<Vec<(usize, usize)>> = shape
        .objects()
        .map(|i| {
            chosen
                .iter()
                .enumerate()
                .flat_map(|(s, (orbit, _))| {
                    orbit.iter().filter(|&&x| shape.leq(x, i)).map(move |&x| (s, x))
                })
                .collect()
        })
        .collect();
    let values: Vec<ChainComplex<Scalar>> = slots
        .iter()
        .map(|list| {
            list.iter().fold(ChainComplex::zero(), |acc, &(s, _)| acc.direct_sum(&chosen[s].1))
        })
        .collect();
    let slot_offset = |obj: usize, slot: (usize, usize), n: i64| -> usize {
        slots[obj].iter().take_while(|&&t| t != slot).map(|&(s, _)| chosen[s].1.dim(n)).sum()
    };
    let place = |blocks: &mut GradedMap<Scalar>,
                 tgt_obj: usize,
                 tgt_slot: (usize, usize),
                 src_obj: usize,
                 src_slot: (usize, usize)| {
        for (&n, &dim) in chosen[src_slot.0].1.dims() {
            let block = blocks.entry(n).or_insert_with(|| {
                Matrix::zero(values[tgt_obj].dim(n), values[src_obj].dim(n))
            });
            let r0 = slot_offset(tgt_obj, tgt_slot, n);
            let c0 = slot_offset(src_obj, src_slot, n);
            for t in 0..dim {
                block.add_to(r0 + t, c0 + t, scalar(1));
            }
        }
    };
    let mut maps = BTreeMap::new();
    for i in shape.objects() {
        for j in shape.objects() {
            if !shape.covers(i, j) {
                continue;
            }
            let mut blocks = GradedMap::new();
            for &slot in &slots[i] {
                place(&mut blocks, j, slot, i, slot);
            }
            maps.insert((i, j), blocks);
        }
    }
    let diag = PosetDiagram::new(shape.clone(), values.clone(), maps)
        .expect("free diagrams are functorial");
    let structure: Vec<Vec<GradedMap<Scalar>>> = group
        .elements()
        .map(|g| {
            shape
                .objects()
                .map(|i| {
                    let gi = shape.act(g, i);
                    let mut blocks = GradedMap::new();
                    for &(s, x) in &slots[i] {
                        place(&mut blocks, gi, (s, shape.act(g, x)), i, (s, x));
                    }
                    blocks
                })
                .collect()
        })
        .collect();
    diag.with_group_structure(structure).expect("free diagrams are equivariant")
}

/// Split diagram over the shape: `value(i) = ⊕_{l ≥ i} W_l` with projection
/// maps and inclusion sections, scrambled at every vertex. Returned with the
/// sections keyed by covering relation.
pub fn random_split_diagram(
    shape: &GPoset,
    rng: &mut StdRng,
) -> (PosetDiagram<Scalar>, BTreeMap<(usize, usize), GradedMap<Scalar>>) {
    let w: Vec<ChainComplex<Scalar>> =
        shape.objects().map(|_| random_complex(rng, 0, 2, 1)).collect();
    let ups: Vec<Vec<usize>> = shape
        .objects()
        .map(|i| shape.objects().filter(|&l| shape.leq(i, l)).collect())
        .collect();
    let values: Vec<ChainComplex<Scalar>> = ups
        .iter()
        .map(|list| list.iter().fold(ChainComplex::zero(), |acc, &l| acc.direct_sum(&w[l])))
        .collect();
    let offset = |obj: usize, l: usize, n: i64| -> usize {
        ups[obj].iter().take_while(|&&x| x != l).map(|&x| w[x].dim(n)).sum()
    };
    let mut maps = BTreeMap::new();
    let mut sections = BTreeMap::new();
    for i in shape.objects() {
        for j in shape.objects() {
            if !shape.covers(i, j) {
                continue;
            }
            let mut proj: GradedMap<Scalar> = GradedMap::new();
            let mut incl: GradedMap<Scalar> = GradedMap::new();
            for &l in &ups[j] {
                for (&n, &dim) in w[l].dims() {
                    let r0 = offset(j, l, n);
                    let c0 = offset(i, l, n);
                    let p = proj.entry(n).or_insert_with(|| {
                        Matrix::zero(values[j].dim(n), values[i].dim(n))
                    });
                    for t in 0..dim {
                        p.add_to(r0 + t, c0 + t, scalar(1));
                    }
                    let s = incl.entry(n).or_insert_with(|| {
                        Matrix::zero(values[i].dim(n), values[j].dim(n))
                    });
                    for t in 0..dim {
                        s.add_to(c0 + t, r0 + t, scalar(1));
                    }
                }
            }
            maps.insert((i, j), proj);
            sections.insert((i, j), incl);
        }
    }
    let (values, maps, sections) = scramble_system(rng, values, maps, sections);
    let diag =
        PosetDiagram::new(shape.clone(), values, maps).expect("split diagrams are functorial");
    (diag, sections)
}

fn subset_from_mask(points: &[usize], mask: u32) -> Subset {
    points
        .iter()
        .enumerate()
        .filter(|(b, _)| mask >> *b & 1 == 1)
        .map(|(_, &p)| p)
        .collect()
}

fn cube_from_gens(
    shape: GPoset,
    subsets: Vec<Subset>,
    gens: &[(Summand, ChainComplex<Scalar>)],
    rng: &mut StdRng,
) -> CubeDiagram<Scalar> {
    let (values, maps) = diagram_data(&shape, gens);
    let (values, maps, _) = scramble_system(rng, values, maps, BTreeMap::new());
    let diag = PosetDiagram::new(shape, values, maps).expect("generated cubes are functorial");
    CubeDiagram::new(diag, subsets).expect("the power poset is a cube shape")
}

/// Random cube on the ground set: up-set summands on proper subsets give a
/// cube that is both cartesian and cocartesian; with `degenerate` one
/// summand sits on the full subset, breaking both at once.
pub fn random_cube(
    ground: &Subset,
    rng: &mut StdRng,
    summands: usize,
    degenerate: bool,
) -> CubeDiagram<Scalar> {
    let (shape, subsets) = plain_power_poset(ground);
    let points: Vec<usize> = ground.iter().copied().collect();
    let mut gens: Vec<(Summand, ChainComplex<Scalar>)> = (0..summands)
        .map(|_| {
            let mask = rng.gen_range(0..(1u32 << points.len()) - 1);
            let s0 = subset_from_mask(&points, mask);
            let obj = subsets.iter().position(|s| *s == s0).expect("subset of the ground");
            (Summand::Up(obj), random_complex(rng, 0, 2, 1))
        })
        .collect();
    if degenerate {
        let top = subsets.iter().position(|s| s == ground).expect("ground present");
        gens.push((Summand::Up(top), random_complex(rng, 0, 1, 1)));
    }
    cube_from_gens(shape, subsets, &gens, rng)
}

/// Cube over `I ⊔ J` whose translated faces over every nonempty `U ⊆ J` are
/// cartesian: up-set summands with `S₀ ∩ I ≠ I`. With `flip` one summand is
/// placed on exactly `I`, which keeps the premise but makes the ∅-face and
/// the whole cube fail together.
pub fn cube_of_cubes_instance(
    i_part: &Subset,
    j_part: &Subset,
    rng: &mut StdRng,
    summands: usize,
    flip: bool,
) -> CubeDiagram<Scalar> {
    assert!(
        !i_part.is_empty() && !j_part.is_empty() && i_part.is_disjoint(j_part),
        "the two directions must be nonempty and disjoint"
    );
    let ground: Subset = i_part.union(j_part).copied().collect();
    let (shape, subsets) = plain_power_poset(&ground);
    let points: Vec<usize> = ground.iter().copied().collect();
    let mut gens = Vec::new();
    for _ in 0..summands {
        let s0 = loop {
            let mask = rng.gen_range(0..1u32 << points.len());
            let s0 = subset_from_mask(&points, mask);
            if !i_part.is_subset(&s0) {
                break s0;
            }
        };
        let obj = subsets.iter().position(|s| *s == s0).expect("subset of the ground");
        gens.push((Summand::Up(obj), random_complex(rng, 0, 2, 1)));
    }
    if flip {
        let obj = subsets.iter().position(|s| s == i_part).expect("subset of the ground");
        gens.push((Summand::Point(obj), random_complex(rng, 0, 1, 1)));
    }
    cube_from_gens(shape, subsets, &gens, rng)
}

/// Replaces `value(v)` by the cylinder of its identity, rerouting incoming
/// maps through the far end and outgoing maps through the projection. The
/// result is objectwise quasi-isomorphic to the input, with the same
/// composites up to the cylinder's own deformation.
pub fn thicken_vertex(diag: &PosetDiagram<Scalar>, v: usize) -> PosetDiagram<Scalar> {
    let shape = diag.shape().clone();
    let cyl = ChainMap::identity(diag.value(v)).cylinder();
    let values: Vec<ChainComplex<Scalar>> = shape
        .objects()
        .map(|i| if i == v { cyl.complex.clone() } else { diag.value(i).clone() })
        .collect();
    let mut maps = BTreeMap::new();
    for i in shape.objects() {
        for j in shape.objects() {
            if !shape.covers(i, j) {
                continue;
            }
            let original = diag.map(i, j).expect("cover pair").clone();
            let rerouted = if j == v {
                compose_graded(cyl.incl_target.blocks(), &original)
            } else if i == v {
                compose_graded(&original, cyl.project.blocks())
            } else {
                original
            };
            maps.insert((i, j), rerouted);
        }
    }
    PosetDiagram::new(shape, values, maps)
        .expect("rerouting through the cylinder preserves functoriality")
}
