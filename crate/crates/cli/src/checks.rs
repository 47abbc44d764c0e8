//! The verifier suites behind `gcalc check`. Each suite runs a batch of
//! cases and reports one pass/fail row per case, with the counterexample
//! data in the failing row.

use chain_cube::sample::{
    random_complex, random_equivariant_diagram, random_split_diagram, rng,
};
use chain_cube::{is_strongly_cocartesian, lambda_cube, verify_covering_lemma, verify_decomp};
use families::{family_fk, family_q, truncate_family, universal_fixed_oracle, UniversalFixedPoint};
use group_core::{catalog, catalog_names, FiniteGroup, Subgroup};
use gset::{enumerate_gset_iso_classes, GSet, Point};
use partition_complex::{build_t, fixed_subcomplex, snaith_index_count, TComplex};
use poset_cube::{delooping_cover, star_orbit_cover, GPoset};
use serde_json::{json, Value};

pub struct Case {
    pub name: String,
    pub pass: bool,
    pub detail: Value,
}

pub struct Suite {
    pub lemma: &'static str,
    pub seed: Option<u64>,
    pub cases: Vec<Case>,
}

impl Suite {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> Value {
        let results: Vec<Value> = self
            .cases
            .iter()
            .map(|c| {
                json!({
                    "case": c.name,
                    "detail": c.detail,
                    "pass": c.pass,
                })
            })
            .collect();
        let mut top = json!({
            "cases": self.cases.len(),
            "failed": self.cases.iter().filter(|c| !c.pass).count(),
            "lemma": self.lemma,
            "pass": self.passed(),
            "results": results,
        });
        if let Some(seed) = self.seed {
            top["seed"] = json!(seed);
        }
        top
    }
}

fn case(name: String, pass: bool, detail: Value) -> Case {
    Case { name, pass, detail }
}

/// Every Λ^J(c) cube on a random complex is strongly cocartesian.
pub fn strongly_cocartesian(
    seed: u64,
    groups: &[String],
    max_size: usize,
) -> Result<Suite, String> {
    let mut r = rng(seed);
    let mut cases = Vec::new();
    for name in groups {
        let g = catalog(name).map_err(|e| e.to_string())?;
        for j in enumerate_gset_iso_classes(&g, max_size) {
            if j.size() == 0 {
                continue;
            }
            let c = random_complex(&mut r, 0, 1, 1);
            let cube = lambda_cube(&j, &c).map_err(|e| e.to_string())?;
            let ok = is_strongly_cocartesian(&cube, &j).map_err(|e| e.to_string())?;
            cases.push(case(
                format!("{name} J={:?}", j.iso_class_key()),
                ok,
                json!({ "orbits": j.orbit_decomposition().len(), "size": j.size() }),
            ));
        }
    }
    Ok(Suite { lemma: "strongly-cocartesian", seed: Some(seed), cases })
}

/// The covering comparison over star orbit covers and delooping covers:
/// fifty random diagram instances in total.
pub fn covering(seed: u64) -> Result<Suite, String> {
    let mut r = rng(seed);
    let c2 = catalog("C2").map_err(|e| e.to_string())?;
    let c3 = catalog("C3").map_err(|e| e.to_string())?;
    let c1 = catalog("C1").map_err(|e| e.to_string())?;
    let free2 = |g: &FiniteGroup| g.trivial_subgroup();
    let fixed = |g: &FiniteGroup| g.full_subgroup();

    let star_grounds: Vec<(String, GSet)> = vec![
        (
            "St of two free C2-orbits".into(),
            GSet::from_orbits(&c2, &[free2(&c2), free2(&c2)]).map_err(|e| e.to_string())?,
        ),
        (
            "St of a free and a fixed C2-orbit".into(),
            GSet::from_orbits(&c2, &[free2(&c2), fixed(&c2)]).map_err(|e| e.to_string())?,
        ),
        (
            "St of a free and a fixed C3-orbit".into(),
            GSet::from_orbits(&c3, &[free2(&c3), fixed(&c3)]).map_err(|e| e.to_string())?,
        ),
    ];

    let mut cases = Vec::new();
    for (label, j) in &star_grounds {
        let (star, cover) = star_orbit_cover(j);
        for i in 0..12 {
            let diag = random_equivariant_diagram(&star.poset, &mut r, 2);
            let ok = verify_covering_lemma(&diag, &cover).map_err(|e| e.to_string())?;
            cases.push(case(
                format!("{label} #{i}"),
                ok,
                json!({ "objects": star.poset.len(), "parts": cover.parts.len() }),
            ));
        }
    }

    let j = GSet::from_orbits(&c2, &[free2(&c2)]).map_err(|e| e.to_string())?;
    let dc = delooping_cover(&j, 0, 1).map_err(|e| e.to_string())?;
    for i in 0..10 {
        let diag = random_equivariant_diagram(&dc.ambient, &mut r, 2);
        let ok = verify_covering_lemma(&diag, &dc.cover).map_err(|e| e.to_string())?;
        cases.push(case(
            format!("delooping A^1 of a free C2-orbit #{i}"),
            ok,
            json!({ "objects": dc.ambient.len(), "parts": dc.cover.parts.len() }),
        ));
    }

    let pt = GSet::from_orbits(&c1, &[fixed(&c1)]).map_err(|e| e.to_string())?;
    let dc = delooping_cover(&pt, 0, 2).map_err(|e| e.to_string())?;
    for i in 0..4 {
        let diag = random_equivariant_diagram(&dc.ambient, &mut r, 2);
        let ok = verify_covering_lemma(&diag, &dc.cover).map_err(|e| e.to_string())?;
        cases.push(case(
            format!("delooping A^2 of a point #{i}"),
            ok,
            json!({ "objects": dc.ambient.len(), "parts": dc.cover.parts.len() }),
        ));
    }

    Ok(Suite { lemma: "covering", seed: Some(seed), cases })
}

fn normal_subgroup_poset(g: &FiniteGroup) -> Result<GPoset, String> {
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
    let c1 = catalog("C1").map_err(|e| e.to_string())?;
    GPoset::new(c1, labels, leq, vec![(0..n).collect()]).map_err(|e| e.to_string())
}

/// Split diagrams over normal-subgroup posets: the initial vertex carries
/// the homology of the fibers, one hundred instances.
pub fn decomp(seed: u64) -> Result<Suite, String> {
    let mut r = rng(seed);
    let mut cases = Vec::new();
    for name in ["C2", "V4", "S3", "D4"] {
        let g = catalog(name).map_err(|e| e.to_string())?;
        let shape = normal_subgroup_poset(&g)?;
        for i in 0..25 {
            let (diag, sections) = random_split_diagram(&shape, &mut r);
            let (ok, report) =
                verify_decomp(&diag, &sections).map_err(|e| e.to_string())?;
            cases.push(case(
                format!("normal-subgroup poset of {name} #{i}"),
                ok,
                json!({
                    "fibers": report.fibers,
                    "initial": report.initial,
                    "total": report.total,
                }),
            ));
        }
    }
    Ok(Suite { lemma: "decomp", seed: Some(seed), cases })
}

/// F_k = ⊔_{H ⊴ G} Q_{k,H}: the strata are disjoint, land inside F_k, and
/// their sizes add up, for every catalog group and k ≤ k_max. Also probes
/// the universal-space oracle on a truncated family.
pub fn q_partition(groups: &[String], k_max: usize) -> Result<Suite, String> {
    let mut cases = Vec::new();
    for name in groups {
        let g = catalog(name).map_err(|e| e.to_string())?;
        let normals = g.normal_subgroups();
        for k in 1..=k_max {
            let f = family_fk(&g, k);
            let qs = normals
                .iter()
                .map(|h| family_q(&g, k, h).map_err(|e| e.to_string()))
                .collect::<Result<Vec<_>, _>>()?;
            let total: usize = qs.iter().map(families::FamilySet::len).sum();
            let stratified = f
                .members()
                .iter()
                .all(|m| qs.iter().filter(|q| q.contains(m)).count() == 1);
            cases.push(case(
                format!("{name} k={k}"),
                total == f.len() && stratified,
                json!({ "family": f.len(), "strata": total }),
            ));
        }

        let f = family_fk(&g, 2);
        let r = truncate_family(&f, 2);
        let oracle_ok = f.members().iter().all(|m| {
            matches!(
                (universal_fixed_oracle(&r, m), r.contains(m)),
                (Ok(UniversalFixedPoint::S0), true) | (Ok(UniversalFixedPoint::Point), false)
            )
        });
        cases.push(case(
            format!("{name} fixed-point oracle on R(<2) inside F_2"),
            oracle_ok,
            json!({ "family": f.len(), "truncated": r.len() }),
        ));
    }
    Ok(Suite { lemma: "q-partition", seed: None, cases })
}

/// The two Snaith index counts agree: multisets of sizes with multiplicity
/// versus integer partitions.
pub fn snaith(k_max: usize) -> Suite {
    let cases = (1..=k_max)
        .map(|k| {
            let (multisets, partitions) = snaith_index_count(k);
            case(
                format!("k={k}"),
                multisets == partitions,
                json!({ "multisets": multisets, "partitions": partitions }),
            )
        })
        .collect();
    Suite { lemma: "snaith", seed: None, cases }
}

/// Set partitions of the points of `j`, listed without touching the
/// partition poset: restricted-growth strings, blocks in canonical form.
fn brute_partitions(size: usize) -> Vec<Vec<Vec<Point>>> {
    let mut out = Vec::new();
    let mut assignment = vec![0usize; size];
    fn step(assignment: &mut Vec<usize>, pos: usize, used: usize, out: &mut Vec<Vec<Vec<Point>>>) {
        if pos == assignment.len() {
            let mut blocks = vec![Vec::new(); used];
            for (x, &b) in assignment.iter().enumerate() {
                blocks[b].push(x);
            }
            out.push(blocks);
            return;
        }
        for b in 0..=used.min(pos) {
            assignment[pos] = b;
            step(assignment, pos + 1, used.max(b + 1), out);
        }
    }
    step(&mut assignment, 0, 0, &mut out);
    out
}

fn image_partition(j: &GSet, e: group_core::Elem, blocks: &[Vec<Point>]) -> Vec<Vec<Point>> {
    let mut moved: Vec<Vec<Point>> = blocks
        .iter()
        .map(|b| {
            let mut img: Vec<Point> = b.iter().map(|&x| j.act(e, x)).collect();
            img.sort_unstable();
            img
        })
        .collect();
    moved.sort();
    moved
}

/// Counts partitions fixed by every generator, straight from the action
/// table.
fn brute_fixed_count(j: &GSet, l: &Subgroup) -> usize {
    brute_partitions(j.size())
        .into_iter()
        .filter(|blocks| {
            l.members().iter().all(|&e| image_partition(j, e, blocks) == *blocks)
        })
        .count()
}

fn level_sizes(t: &TComplex) -> Vec<usize> {
    (0..=t.max_level()).map(|m| t.level(m).len()).collect()
}

/// Simplicial face identity d_i ∘ d_j = d_{j−1} ∘ d_i (i < j) on every
/// simplex of every level, with the basepoint absorbing.
fn face_identities_hold(t: &TComplex) -> bool {
    for m in 2..=t.max_level() {
        for s in 0..t.level(m).len() {
            for jj in 1..=m {
                for i in 0..jj {
                    let a = t.face(m, s, jj).and_then(|u| t.face(m - 1, u, i));
                    let b = t.face(m, s, i).and_then(|u| t.face(m - 1, u, jj - 1));
                    if a != b {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Fixed-point subcomplexes of partition complexes: trivial actions change
/// nothing, fixed partitions match a brute-force scan of the action table,
/// and the result is still simplicial.
pub fn fixedposet() -> Result<Suite, String> {
    let mut cases = Vec::new();
    let c2 = catalog("C2").map_err(|e| e.to_string())?;
    let s3 = catalog("S3").map_err(|e| e.to_string())?;

    let trivial = GSet::from_orbits(
        &c2,
        &[c2.full_subgroup(), c2.full_subgroup(), c2.full_subgroup()],
    )
    .map_err(|e| e.to_string())?;
    let t = build_t(&trivial).map_err(|e| e.to_string())?;
    let f = fixed_subcomplex(&t, &c2.full_subgroup());
    cases.push(case(
        "trivial action on 3 points leaves T unchanged".into(),
        level_sizes(&f) == level_sizes(&t),
        json!({ "fixed_levels": level_sizes(&f), "full_levels": level_sizes(&t) }),
    ));

    let free4 = GSet::from_orbits(&c2, &[c2.trivial_subgroup(), c2.trivial_subgroup()])
        .map_err(|e| e.to_string())?;
    let t = build_t(&free4).map_err(|e| e.to_string())?;
    let f = fixed_subcomplex(&t, &c2.full_subgroup());
    let brute = brute_fixed_count(&free4, &c2.full_subgroup());
    cases.push(case(
        "free involution on 4 points: fixed partitions match a brute-force scan".into(),
        f.level(2).len() == brute,
        json!({ "brute": brute, "fixed": f.level(2).len() }),
    ));
    cases.push(case(
        "face identities hold on the fixed complex".into(),
        face_identities_hold(&f),
        json!({ "levels": level_sizes(&f) }),
    ));

    let regular = GSet::from_orbits(&s3, &[s3.trivial_subgroup()]).map_err(|e| e.to_string())?;
    let c3_sub = s3
        .subgroups()
        .into_iter()
        .find(|h| h.order() == 3)
        .ok_or("S3 has a subgroup of order 3")?;
    let t = build_t(&regular).map_err(|e| e.to_string())?;
    let f = fixed_subcomplex(&t, &c3_sub);
    let brute = brute_fixed_count(&regular, &c3_sub);
    cases.push(case(
        "regular S3 ground: partitions fixed by C3 match a brute-force scan".into(),
        f.level(2).len() == brute,
        json!({ "brute": brute, "fixed": f.level(2).len() }),
    ));
    cases.push(case(
        "face identities hold on the C3-fixed complex".into(),
        face_identities_hold(&f),
        json!({ "levels": level_sizes(&f) }),
    ));

    Ok(Suite { lemma: "fixedposet", seed: None, cases })
}

pub fn default_groups() -> Vec<String> {
    catalog_names().into_iter().map(String::from).collect()
}
