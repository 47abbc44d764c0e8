//! File input: G-sets described as JSON, either by orbit stabilizers or by
//! a full action table.

use group_core::{catalog, Elem, FiniteGroup, Subgroup};
use gset::{GSet, Point};
use serde_json::Value;
use std::path::Path;

pub fn load_group(name: &str) -> Result<FiniteGroup, String> {
    catalog(name).map_err(|e| format!("unknown group {name:?}: {e}"))
}

/// Reads a G-set from a JSON file. Two shapes are accepted:
///
/// `{"group": "C2", "stabilizers": [[0], [0, 1]]}` builds one orbit per
/// stabilizer member list, and
/// `{"group": "C2", "action": [[0, 1], [1, 0]], "names": ["a", "b"],
/// "basepoint": null}` gives the action table directly (one row per group
/// element, names and basepoint optional).
pub fn load_gset(path: &Path) -> Result<GSet, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| format!("{} is not valid JSON: {e}", path.display()))?;
    let obj = value.as_object().ok_or("the G-set file must hold a JSON object")?;
    let group_name = obj
        .get("group")
        .and_then(Value::as_str)
        .ok_or("the G-set file needs a \"group\" name")?;
    let group = load_group(group_name)?;

    if let Some(stabs) = obj.get("stabilizers") {
        let lists: Vec<Vec<Elem>> = serde_json::from_value(stabs.clone())
            .map_err(|e| format!("\"stabilizers\" must be lists of element ids: {e}"))?;
        let subgroups = lists
            .iter()
            .map(|members| {
                Subgroup::new(&group, members)
                    .map_err(|e| format!("{members:?} is not a subgroup of {group_name}: {e}"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        return GSet::from_orbits(&group, &subgroups).map_err(|e| e.to_string());
    }

    if let Some(action) = obj.get("action") {
        let table: Vec<Vec<Point>> = serde_json::from_value(action.clone())
            .map_err(|e| format!("\"action\" must be one permutation row per element: {e}"))?;
        let size = table.first().map_or(0, Vec::len);
        let names: Vec<String> = match obj.get("names") {
            Some(v) => serde_json::from_value(v.clone())
                .map_err(|e| format!("\"names\" must be strings: {e}"))?,
            None => (0..size).map(|p| format!("p{p}")).collect(),
        };
        let basepoint: Option<Point> = match obj.get("basepoint") {
            None | Some(Value::Null) => None,
            Some(v) => Some(
                v.as_u64().ok_or("\"basepoint\" must be a point index")? as Point,
            ),
        };
        return GSet::new(group, table, names, basepoint).map_err(|e| e.to_string());
    }

    Err("the G-set file needs either \"stabilizers\" or \"action\"".into())
}

/// Parses `--points 0,2,5` into a subset.
pub fn parse_points(spec: &str) -> Result<std::collections::BTreeSet<Point>, String> {
    spec.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            s.trim()
                .parse::<Point>()
                .map_err(|_| format!("{s:?} is not a point index"))
        })
        .collect()
}
