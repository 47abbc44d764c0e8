// Each test binary uses its own slice of these helpers.
#![allow(dead_code)]

use poset_cube::{GPoset, Subset};

/// Poset over the trivial group from a generating relation list, closed up
/// transitively.
pub fn plain_poset(labels: &[&str], pairs: &[(usize, usize)]) -> GPoset {
    let n = labels.len();
    let mut leq = vec![vec![false; n]; n];
    for i in 0..n {
        leq[i][i] = true;
    }
    for &(a, b) in pairs {
        leq[a][b] = true;
    }
    loop {
        let mut changed = false;
        for i in 0..n {
            for j in 0..n {
                if !leq[i][j] {
                    continue;
                }
                for k in 0..n {
                    if leq[j][k] && !leq[i][k] {
                        leq[i][k] = true;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    let group = group_core::catalog("C1").unwrap();
    GPoset::new(group, labels.iter().map(|s| s.to_string()).collect(), leq, vec![(0..n).collect()])
        .unwrap()
}

pub fn sub(points: &[usize]) -> Subset {
    points.iter().copied().collect()
}

pub fn shifted(
    ranks: &std::collections::BTreeMap<i64, usize>,
    by: i64,
) -> std::collections::BTreeMap<i64, usize> {
    ranks.iter().map(|(&n, &r)| (n + by, r)).collect()
}
