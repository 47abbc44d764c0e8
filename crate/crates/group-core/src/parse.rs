//! Plain-text group descriptions.
//!
//! Two forms, chosen by the first significant line:
//!
//! ```text
//! catalog: S3
//! ```
//!
//! or a permutation presentation (points are 1-based, `degree:` fixes how
//! many there are, one generator per line in cycle notation):
//!
//! ```text
//! name: my-dihedral
//! degree: 4
//! permutations:
//! (1 2 3 4)
//! (1 3)
//! ```
//!
//! Blank lines and `#` comments are ignored everywhere.

use crate::{catalog, FiniteGroup, GroupError};

pub fn parse_group_file(text: &str) -> Result<FiniteGroup, GroupError> {
    let mut name: Option<String> = None;
    let mut degree: Option<usize> = None;
    let mut gens: Vec<Vec<usize>> = Vec::new();
    let mut in_perms = false;

    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| GroupError::Parse(format!("line {}: {msg}", lineno + 1));
        if in_perms {
            let d = degree.ok_or_else(|| err("`degree:` must come before the generators".into()))?;
            gens.push(parse_cycles(line, d).map_err(err)?);
            continue;
        }
        match line.split_once(':') {
            Some(("catalog", v)) => return catalog(v.trim()),
            Some(("name", v)) => name = Some(v.trim().to_string()),
            Some(("degree", v)) => {
                degree = Some(
                    v.trim().parse().map_err(|_| err(format!("bad degree `{}`", v.trim())))?,
                )
            }
            Some(("permutations", rest)) if rest.trim().is_empty() => in_perms = true,
            _ => return Err(err(format!("unexpected line `{line}`"))),
        }
    }

    if !in_perms {
        return Err(GroupError::Parse("no `catalog:` or `permutations:` section".into()));
    }
    let degree = degree.ok_or_else(|| GroupError::Parse("missing `degree:`".into()))?;
    if gens.is_empty() {
        return Err(GroupError::Parse("no generators listed".into()));
    }
    let name = name.unwrap_or_else(|| "perm-group".to_string());
    FiniteGroup::from_permutations(&name, degree, &gens)
}

/// `(1 2)(3 4)` → one-line form on `0..degree`. `e` or `()` is the identity.
fn parse_cycles(line: &str, degree: usize) -> Result<Vec<usize>, String> {
    let mut perm: Vec<usize> = (0..degree).collect();
    if line == "e" || line == "()" {
        return Ok(perm);
    }
    let mut moved = vec![false; degree];
    // commas as well as spaces separate points inside a cycle
    let compact: String =
        line.chars().map(|c| if c.is_whitespace() { ',' } else { c }).collect();
    let mut rest = compact.as_str().trim_matches(',');
    while !rest.is_empty() {
        rest = rest.trim_start_matches(',');
        let Some(inner_end) = rest.find(')') else {
            return Err(format!("unbalanced parentheses in `{line}`"));
        };
        if !rest.starts_with('(') {
            return Err(format!("expected `(` in `{line}`"));
        }
        let body = &rest[1..inner_end];
        rest = &rest[inner_end + 1..];
        let pts: Result<Vec<usize>, String> = body
            .split(',')
            .filter(|s| !s.is_empty())
            .map(|s| {
                let p: usize = s.parse().map_err(|_| format!("bad point `{s}`"))?;
                if p == 0 || p > degree {
                    return Err(format!("point {p} outside 1..={degree}"));
                }
                Ok(p - 1)
            })
            .collect();
        let pts = pts?;
        for &p in &pts {
            if moved[p] {
                return Err(format!("point {} appears twice", p + 1));
            }
            moved[p] = true;
        }
        for w in pts.windows(2) {
            perm[w[0]] = w[1];
        }
        if pts.len() > 1 {
            perm[pts[pts.len() - 1]] = pts[0];
        }
    }
    Ok(perm)
}
