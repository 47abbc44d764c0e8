//! Built-in groups used throughout the test suites and the CLI.

use crate::{Elem, FiniteGroup, GroupError};
use itertools::Itertools;

/// Names accepted by [`catalog`], in a stable order.
pub fn catalog_names() -> Vec<&'static str> {
    vec!["C1", "C2", "C3", "C4", "C5", "C6", "V4", "S3", "D4", "Q8"]
}

/// Looks up a built-in group by name (case-insensitive).
pub fn catalog(name: &str) -> Result<FiniteGroup, GroupError> {
    match name.to_ascii_uppercase().as_str() {
        "C1" => cyclic(1),
        "C2" => cyclic(2),
        "C3" => cyclic(3),
        "C4" => cyclic(4),
        "C5" => cyclic(5),
        "C6" => cyclic(6),
        "V4" => FiniteGroup::from_permutations("V4", 4, &[vec![1, 0, 3, 2], vec![2, 3, 0, 1]]),
        "S3" => FiniteGroup::from_permutations("S3", 3, &[vec![1, 0, 2], vec![1, 2, 0]]),
        "D4" => FiniteGroup::from_permutations("D4", 4, &[vec![1, 2, 3, 0], vec![2, 1, 0, 3]]),
        "Q8" => quaternion(),
        _ => Err(GroupError::UnknownCatalog(name.to_string())),
    }
}

fn cyclic(n: usize) -> Result<FiniteGroup, GroupError> {
    let names = (0..n)
        .map(|i| match i {
            0 => "e".to_string(),
            1 => "g".to_string(),
            _ => format!("g^{i}"),
        })
        .collect();
    let mult = (0..n)
        .map(|a| (0..n).map(|b| ((a + b) % n) as Elem).collect_vec())
        .collect_vec();
    FiniteGroup::from_table(&format!("C{n}"), names, mult)
}

fn quaternion() -> Result<FiniteGroup, GroupError> {
    // elements 2b+s: basis b in {1,i,j,k}, sign s (0 = +, 1 = -)
    let names: Vec<String> =
        ["1", "-1", "i", "-i", "j", "-j", "k", "-k"].iter().map(|s| s.to_string()).collect();
    // basis multiplication: (result basis, sign flip)
    let basis_mul = |a: usize, b: usize| -> (usize, bool) {
        match (a, b) {
            (0, x) => (x, false),
            (x, 0) => (x, false),
            (x, y) if x == y => (0, true),
            (1, 2) => (3, false),
            (2, 1) => (3, true),
            (2, 3) => (1, false),
            (3, 2) => (1, true),
            (3, 1) => (2, false),
            (1, 3) => (2, true),
            _ => unreachable!(),
        }
    };
    let mult = (0..8)
        .map(|x| {
            (0..8)
                .map(|y| {
                    let (b, flip) = basis_mul(x / 2, y / 2);
                    let s = (x % 2) ^ (y % 2) ^ usize::from(flip);
                    (2 * b + s) as Elem
                })
                .collect_vec()
        })
        .collect_vec();
    FiniteGroup::from_table("Q8", names, mult)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_catalog_entry_builds() {
        for name in catalog_names() {
            let g = catalog(name).unwrap();
            assert!(g.order() >= 1, "{name}");
        }
    }

    #[test]
    fn quaternion_relations() {
        let q8 = catalog("Q8").unwrap();
        let i = 2;
        let j = 4;
        let k = 6;
        let minus_one = 1;
        assert_eq!(q8.mul(i, i), minus_one);
        assert_eq!(q8.mul(j, j), minus_one);
        assert_eq!(q8.mul(k, k), minus_one);
        assert_eq!(q8.mul(i, j), k);
        assert_eq!(q8.mul(j, i), q8.inv(k));
        assert_eq!(q8.element_order_profile(), vec![1, 2, 4, 4, 4, 4, 4, 4]);
    }

    #[test]
    fn orders_match_names() {
        for (name, order) in
            [("C1", 1), ("C2", 2), ("C6", 6), ("V4", 4), ("S3", 6), ("D4", 8), ("Q8", 8)]
        {
            assert_eq!(catalog(name).unwrap().order(), order);
        }
    }
}
