//! Plain-text G-set descriptions: one orbit per line, by stabilizer.
//!
//! ```text
//! group: C2          # optional when an ambient group is supplied
//! orbit: free        # G/1
//! orbit: full        # G/G, a fixed point
//! orbit: 1 3         # G/H for H generated by elements 1 and 3
//! basepoint: true    # append a disjoint fixed basepoint (default false)
//! ```
//!
//! Element ids refer to the group's canonical element order. Blank lines
//! and `#` comments are ignored.

use crate::{GSet, GSetError};
use group_core::{catalog, Elem, FiniteGroup, Subgroup};

pub fn parse_gset_file(text: &str, ambient: Option<&FiniteGroup>) -> Result<GSet, GSetError> {
    let mut group: Option<FiniteGroup> = ambient.cloned();
    let mut orbit_lines: Vec<(usize, String)> = Vec::new();
    let mut basepoint = false;

    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| GSetError::Parse(format!("line {}: {msg}", lineno + 1));
        match line.split_once(':') {
            Some(("group", v)) => group = Some(catalog(v.trim())?),
            Some(("orbit", v)) => orbit_lines.push((lineno + 1, v.trim().to_string())),
            Some(("basepoint", v)) => {
                basepoint = match v.trim() {
                    "true" => true,
                    "false" => false,
                    other => return Err(err(format!("bad basepoint flag `{other}`"))),
                }
            }
            _ => return Err(err(format!("unexpected line `{line}`"))),
        }
    }

    let group = group
        .ok_or_else(|| GSetError::Parse("no `group:` line and no ambient group".into()))?;
    let mut stabs: Vec<Subgroup> = Vec::new();
    for (lineno, spec) in orbit_lines {
        let err = |msg: String| GSetError::Parse(format!("line {lineno}: {msg}"));
        let stab = match spec.as_str() {
            "free" | "" => group.trivial_subgroup(),
            "full" => group.full_subgroup(),
            ids => {
                let gens: Result<Vec<Elem>, GSetError> = ids
                    .split([' ', ','])
                    .filter(|s| !s.is_empty())
                    .map(|s| {
                        let e: Elem =
                            s.parse().map_err(|_| err(format!("bad element id `{s}`")))?;
                        if (e as usize) < group.order() {
                            Ok(e)
                        } else {
                            Err(err(format!("element id {e} out of range")))
                        }
                    })
                    .collect();
                group.closure(&gens?)
            }
        };
        stabs.push(stab);
    }
    let j = GSet::from_orbits(&group, &stabs)?;
    Ok(if basepoint { j.with_added_basepoint() } else { j })
}
