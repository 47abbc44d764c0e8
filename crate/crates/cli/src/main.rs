//! `gcalc`: exact combinatorics of equivariant Goodwillie calculus from the
//! command line. Catalog groups, G-sets from JSON files, the tree of
//! excisiveness degrees, star categories, graph-subgroup families, partition
//! complexes, splitting summand indexes, and the `check` verifier suites.
//!
//! Exit codes: 0 success, 1 a check found a counterexample, 2 invalid input.

mod checks;
mod input;
mod render;

use calculus::{
    goodwillie_tree, higher_tomdieck_summands, identity_layer_descriptor, tomdieck_summands,
    TomDieckMode, HOMOLOGY_GROUND,
};
use clap::{Args, Parser, Subcommand};
use families::{family_fk, family_fk_n, fk_n_bounds};
use group_core::FiniteGroup;
use gset::GSet;
use partition_complex::{
    build_t, nondegenerate_counts, proper_partition_nerve_homology, t_homology,
};
use poset_cube::{lambda_classify, power_poset, star_category, HomotopyTypeExpr, Subset};
use render::{emit, Format, Output};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "gcalc",
    version,
    about = "Exact combinatorics of equivariant Goodwillie calculus: groups, G-sets, \
             poset cubes, families, partition complexes, splitting indexes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args)]
struct Opts {
    /// Catalog group: C1, C2, C3, C4, C5, C6, V4, S3, D4, Q8.
    #[arg(long, global = true)]
    group: Option<String>,
    /// JSON file holding a G-set (see the README for the two shapes).
    #[arg(long, global = true)]
    gset: Option<PathBuf>,
    /// Tower stage.
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Point count or index k.
    #[arg(long, global = true)]
    k: Option<usize>,
    /// Size cap for G-set enumeration.
    #[arg(long, global = true)]
    max_size: Option<usize>,
    /// Orbit-count cap for G-set enumeration.
    #[arg(long, global = true)]
    max_orbits: Option<usize>,
    /// Output format; dot applies to `tree hasse` only.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for the randomized check suites.
    #[arg(long, global = true, default_value_t = chain_cube::DEFAULT_SEED)]
    seed: u64,
    /// Write the output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Facts about a catalog group.
    Group {
        #[command(subcommand)]
        action: GroupCmd,
    },
    /// G-set inspection.
    Gset {
        #[command(subcommand)]
        action: GsetCmd,
    },
    /// The tree order on G-set isomorphism classes.
    Tree {
        #[command(subcommand)]
        action: TreeCmd,
    },
    /// Star categories St(U) inside the based power poset.
    Star {
        #[command(subcommand)]
        action: StarCmd,
    },
    /// Vertexwise homotopy types of the join cube Λ^J.
    Lambda {
        #[command(subcommand)]
        action: LambdaCmd,
    },
    /// Graph-subgroup families F_k and F_k(n).
    Families {
        #[command(subcommand)]
        action: FamiliesCmd,
    },
    /// Partition-complex invariants of a ground G-set.
    Partition {
        #[command(subcommand)]
        action: PartitionCmd,
    },
    /// Classical tom Dieck splitting summands.
    Tomdieck {
        /// conjugacy: one summand per subgroup class with its Weyl group;
        /// abelian-normal: one per subgroup with the quotient, all subgroups
        /// must be normal.
        #[arg(long, value_enum, default_value_t = ModeArg::Conjugacy)]
        mode: ModeArg,
    },
    /// Higher splitting summands at stage n (default 1).
    HigherTomdieck,
    /// Index data for the layers of the identity tower at stage n.
    IdentityLayers,
    /// Run a verifier suite; exits 1 when a case fails.
    Check {
        #[command(subcommand)]
        lemma: LemmaCmd,
    },
}

#[derive(Subcommand)]
enum GroupCmd {
    /// Order, element orders, subgroups, conjugacy classes.
    Info,
}

#[derive(Subcommand)]
enum GsetCmd {
    /// Orbit decomposition with stabilizers.
    Orbits,
}

#[derive(Subcommand)]
enum TreeCmd {
    /// Hasse diagram of the tree order; --format dot for Graphviz.
    Hasse,
}

#[derive(Subcommand)]
enum StarCmd {
    /// Object count of St(U); U defaults to all of J₊.
    Count {
        /// Comma-separated point indices of U. The basepoint of an unbased
        /// J-file is the extra index equal to the size of J.
        #[arg(long)]
        points: Option<String>,
    },
}

#[derive(Subcommand)]
enum LambdaCmd {
    /// Classify the homotopy type at every vertex U ⊆ J₊.
    Classify,
}

#[derive(Subcommand)]
enum FamiliesCmd {
    /// List F_k, or F_k(n) when --n is given.
    Enum,
}

#[derive(Subcommand)]
enum PartitionCmd {
    /// Reduced homology of the partition complex, levelwise sizes, and the
    /// proper-nerve ranks. Ground set from --gset, or --k points with the
    /// trivial action.
    Homology,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum ModeArg {
    Conjugacy,
    AbelianNormal,
}

#[derive(Subcommand)]
enum LemmaCmd {
    /// Λ^J cubes on random complexes are strongly cocartesian.
    StronglyCocartesian,
    /// Homotopy limits agree with limits of limits over equivariant covers.
    Covering,
    /// Split diagrams decompose the initial vertex into fibers.
    Decomp,
    /// F_k is stratified by the Q_{k,H} over normal subgroups.
    QPartition,
    /// The two Snaith summand counts agree.
    Snaith,
    /// Fixed subcomplexes of partition complexes.
    Fixedposet,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.opts.format;
    let out = cli.opts.out.clone();
    match run(cli) {
        Ok((output, check_failed)) => match emit(&output, format, out.as_deref()) {
            Ok(()) if check_failed => ExitCode::from(1),
            Ok(()) => ExitCode::SUCCESS,
            Err(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(2)
            }
        },
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn need_group(opts: &Opts) -> Result<FiniteGroup, String> {
    let name = opts.group.as_deref().ok_or("this command needs --group")?;
    input::load_group(name)
}

fn need_gset(opts: &Opts) -> Result<GSet, String> {
    let path = opts.gset.as_deref().ok_or("this command needs --gset <file>")?;
    let j = input::load_gset(path)?;
    if let Some(name) = opts.group.as_deref() {
        if j.group().name() != name {
            return Err(format!(
                "--group {name} conflicts with the {} G-set in {}",
                j.group().name(),
                path.display()
            ));
        }
    }
    Ok(j)
}

fn run(cli: Cli) -> Result<(Output, bool), String> {
    let opts = &cli.opts;
    match cli.command {
        Command::Group { action: GroupCmd::Info } => Ok((group_info(opts)?, false)),
        Command::Gset { action: GsetCmd::Orbits } => Ok((gset_orbits(opts)?, false)),
        Command::Tree { action: TreeCmd::Hasse } => Ok((tree_hasse(opts)?, false)),
        Command::Star { action: StarCmd::Count { points } } => {
            Ok((star_count(opts, points.as_deref())?, false))
        }
        Command::Lambda { action: LambdaCmd::Classify } => Ok((lambda_table(opts)?, false)),
        Command::Families { action: FamiliesCmd::Enum } => Ok((families_enum(opts)?, false)),
        Command::Partition { action: PartitionCmd::Homology } => {
            Ok((partition_homology(opts)?, false))
        }
        Command::Tomdieck { mode } => {
            let g = need_group(opts)?;
            let mode = match mode {
                ModeArg::Conjugacy => TomDieckMode::Conjugacy,
                ModeArg::AbelianNormal => TomDieckMode::AbelianNormal,
            };
            let desc = tomdieck_summands(&g, mode).map_err(|e| e.to_string())?;
            Ok((Output::json(desc.to_json()), false))
        }
        Command::HigherTomdieck => {
            let g = need_group(opts)?;
            let n = stage(opts)?;
            let desc = higher_tomdieck_summands(&g, n).map_err(|e| e.to_string())?;
            Ok((Output::json(desc.to_json()), false))
        }
        Command::IdentityLayers => {
            let g = need_group(opts)?;
            let n = stage(opts)?;
            Ok((Output::json(identity_layer_descriptor(&g, n).to_json()), false))
        }
        Command::Check { lemma } => {
            let suite = match lemma {
                LemmaCmd::StronglyCocartesian => {
                    let groups = opts.group.clone().map_or_else(
                        || vec!["C2".into(), "C3".into(), "V4".into(), "S3".into()],
                        |g| vec![g],
                    );
                    checks::strongly_cocartesian(
                        opts.seed,
                        &groups,
                        opts.max_size.unwrap_or(4),
                    )?
                }
                LemmaCmd::Covering => checks::covering(opts.seed)?,
                LemmaCmd::Decomp => checks::decomp(opts.seed)?,
                LemmaCmd::QPartition => {
                    let groups = opts
                        .group
                        .clone()
                        .map_or_else(checks::default_groups, |g| vec![g]);
                    checks::q_partition(&groups, opts.k.unwrap_or(6))?
                }
                LemmaCmd::Snaith => checks::snaith(opts.k.unwrap_or(12)),
                LemmaCmd::Fixedposet => checks::fixedposet()?,
            };
            let failed = !suite.passed();
            Ok((Output::json(suite.to_json()), failed))
        }
    }
}

fn stage(opts: &Opts) -> Result<usize, String> {
    let n = opts.n.unwrap_or(1);
    if n == 0 {
        return Err("--n must be at least 1".into());
    }
    Ok(n)
}

fn group_info(opts: &Opts) -> Result<Output, String> {
    let g = need_group(opts)?;
    let subgroups = g.subgroups();
    let classes = g.subgroup_conjugacy_classes();
    let normals = g.normal_subgroups();
    let abelian = g
        .elements()
        .all(|a| g.elements().all(|b| g.mul(a, b) == g.mul(b, a)));
    let elements: Vec<Value> = g
        .elements()
        .map(|e| {
            json!({ "id": e, "name": g.elem_name(e), "order": g.elem_order(e) })
        })
        .collect();
    let subgroup_rows: Vec<Value> = subgroups
        .iter()
        .map(|h| {
            let class = classes
                .iter()
                .position(|c| c.contains(h))
                .expect("every subgroup sits in one conjugacy class");
            json!({
                "class": class,
                "members": h.members(),
                "normal": g.is_normal(h),
                "order": h.order(),
            })
        })
        .collect();
    Ok(Output::json(json!({
        "abelian": abelian,
        "elements": elements,
        "group": g.name(),
        "normal_count": normals.len(),
        "order": g.order(),
        "subgroup_classes": classes.len(),
        "subgroup_count": subgroups.len(),
        "subgroups": subgroup_rows,
    })))
}

fn gset_orbits(opts: &Opts) -> Result<Output, String> {
    let j = need_gset(opts)?;
    let orbits: Vec<Value> = j
        .orbit_decomposition()
        .iter()
        .map(|orbit| {
            let stab = j.stabilizer(orbit[0]);
            json!({
                "points": orbit.iter().map(|&x| j.point_name(x)).collect::<Vec<_>>(),
                "size": orbit.len(),
                "stabilizer": stab.members(),
                "stabilizer_order": stab.order(),
            })
        })
        .collect();
    Ok(Output::json(json!({
        "basepoint": j.basepoint(),
        "group": j.group().name(),
        "key": j.iso_class_key(),
        "orbits": orbits,
        "size": j.size(),
    })))
}

fn tree_hasse(opts: &Opts) -> Result<Output, String> {
    let g = need_group(opts)?;
    let max_size = opts.max_size.unwrap_or(4);
    let max_orbits = opts.max_orbits.unwrap_or(max_size);
    let tree = goodwillie_tree(&g, max_orbits, max_size);
    Ok(Output { value: tree.to_json(), dot: Some(tree.to_dot()) })
}

fn star_count(opts: &Opts, points: Option<&str>) -> Result<Output, String> {
    let j = need_gset(opts)?;
    let ambient_size = if j.basepoint().is_some() { j.size() } else { j.size() + 1 };
    let u: Option<Subset> = match points {
        None => None,
        Some(spec) => {
            let set = input::parse_points(spec)?;
            if let Some(&bad) = set.iter().find(|&&p| p >= ambient_size) {
                return Err(format!(
                    "point {bad} is outside J₊ (indices 0..{ambient_size})"
                ));
            }
            Some(set)
        }
    };
    let star = star_category(&j, u.as_ref());
    let subsets: Vec<Vec<usize>> = star
        .subsets
        .iter()
        .map(|s| s.iter().copied().collect())
        .collect();
    Ok(Output::json(json!({
        "ambient_size": ambient_size,
        "group": j.group().name(),
        "objects": star.poset.len(),
        "subsets": subsets,
        "u": u.map(|s| s.into_iter().collect::<Vec<_>>()),
    })))
}

fn describe(expr: &HomotopyTypeExpr) -> String {
    match expr {
        HomotopyTypeExpr::Contractible => "contractible".into(),
        HomotopyTypeExpr::JoinWithPoints(0) => "the base itself".into(),
        HomotopyTypeExpr::JoinWithPoints(1) => "join with 1 point".into(),
        HomotopyTypeExpr::JoinWithPoints(m) => format!("join with {m} points"),
        HomotopyTypeExpr::WedgeOfOrbitSuspensions(orbits) => {
            format!("wedge of suspensions over orbits {orbits:?}")
        }
    }
}

fn lambda_table(opts: &Opts) -> Result<Output, String> {
    let j = need_gset(opts)?;
    let power = power_poset(&j, true).map_err(|e| e.to_string())?;
    let vertices: Vec<Value> = power
        .subsets
        .iter()
        .map(|u| {
            let expr = lambda_classify(&j, u).map_err(|e| e.to_string())?;
            Ok(json!({
                "class": expr,
                "note": describe(&expr),
                "subset": u.iter().copied().collect::<Vec<_>>(),
            }))
        })
        .collect::<Result<_, String>>()?;
    Ok(Output::json(json!({
        "ambient_size": power.ambient.size(),
        "group": j.group().name(),
        "vertices": vertices,
    })))
}

fn families_enum(opts: &Opts) -> Result<Output, String> {
    let g = need_group(opts)?;
    let k = opts.k.ok_or("this command needs --k")?;
    let family = match opts.n {
        None => family_fk(&g, k),
        Some(n) => {
            if n == 0 {
                return Err("--n must be at least 1".into());
            }
            let (lo, hi) = fk_n_bounds(&g, n);
            if k < lo || k > hi {
                eprintln!(
                    "warning: k={k} lies outside [{lo}, {hi}] for stage n={n}; F_k(n) is empty"
                );
            }
            family_fk_n(&g, k, n)
        }
    };
    Ok(Output::json(family.to_json()))
}

fn partition_homology(opts: &Opts) -> Result<Output, String> {
    let ground = match (&opts.gset, opts.k) {
        (Some(_), Some(_)) => {
            return Err("pass either --gset or --k, not both".into());
        }
        (Some(_), None) => need_gset(opts)?,
        (None, Some(k)) => {
            if k == 0 {
                return Err("--k must be at least 1".into());
            }
            let g = match opts.group.as_deref() {
                Some(name) => input::load_group(name)?,
                None => input::load_group("C1")?,
            };
            let fixed = vec![g.full_subgroup(); k];
            GSet::from_orbits(&g, &fixed).map_err(|e| e.to_string())?
        }
        (None, None) => return Err("this command needs --gset or --k".into()),
    };
    if ground.size() > HOMOLOGY_GROUND {
        return Err(format!(
            "exact homology stops at ground size {HOMOLOGY_GROUND}; {} points were given",
            ground.size()
        ));
    }
    let t = build_t(&ground).map_err(|e| e.to_string())?;
    let homology = t_homology(&ground).map_err(|e| e.to_string())?;
    let levels: Vec<usize> =
        (0..=t.max_level()).map(|m| nondegenerate_counts(&t, m)).collect();
    let euler: i64 = homology
        .iter()
        .map(|(&d, &r)| if d.rem_euclid(2) == 0 { r as i64 } else { -(r as i64) })
        .sum();
    let nerve: Option<Vec<(i64, usize)>> = if ground.size() >= 2 {
        proper_partition_nerve_homology(ground.size())
            .ok()
            .map(|m| m.into_iter().collect())
    } else {
        None
    };
    Ok(Output::json(json!({
        "euler": euler,
        "ground": {
            "group": ground.group().name(),
            "key": ground.iso_class_key(),
            "size": ground.size(),
        },
        "levels": levels,
        "proper_nerve": nerve,
        "t_homology": homology.into_iter().collect::<Vec<(i64, usize)>>(),
    })))
}
