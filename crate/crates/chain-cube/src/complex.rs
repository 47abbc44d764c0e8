//! Finitely supported chain complexes, chain maps, cones and cylinders, and
//! exact homology (ranks always, torsion for integral differentials).

use crate::matrix::{smith_invariant_factors, Matrix};
use crate::{Coeff, Scalar};
use num_bigint::BigInt;
use num_traits::One;
use serde_json::{json, Value};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ChainError {
    #[error("differential at degree {0} has the wrong shape")]
    DifferentialShape(i64),
    #[error("d\u{b2} \u{2260} 0 at degree {0}")]
    NotAComplex(i64),
    #[error("map block at degree {0} has the wrong shape")]
    MapShape(i64),
    #[error("map does not commute with the differentials at degree {0}")]
    NotChainMap(i64),
    #[error("composites along different paths from {0} to {1} disagree")]
    Functoriality(usize, usize),
    #[error("diagram data does not match the shape: {0}")]
    DiagramShape(String),
    #[error("group structure invalid: {0}")]
    GroupStructure(String),
    #[error("cube shape invalid: {0}")]
    CubeShape(String),
    #[error("shape has no initial object")]
    NoInitialObject,
    #[error("missing section for the relation {0} < {1}")]
    MissingSection(usize, usize),
    #[error("section for {0} < {1} is not split by the diagram map")]
    NotSection(usize, usize),
    #[error("sections do not commute over {0} < {1} < {2}")]
    SectionTriangle(usize, usize, usize),
    #[error("cover is not an equivariant cover of the diagram's shape")]
    InvalidCover,
    #[error("entry {0} is not an integer")]
    NonIntegralEntry(String),
    #[error("gset error: {0}")]
    GSet(#[from] gset::GSetError),
    #[error("poset error: {0}")]
    Poset(#[from] poset_cube::PosetError),
}

/// Chain complex with finitely many nonzero degrees. `d(n): C_n → C_{n−1}`.
/// Zero dimensions and zero differentials are not stored, so equality of the
/// raw data is equality of the complex.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainComplex<F> {
    dims: BTreeMap<i64, usize>,
    d: BTreeMap<i64, Matrix<F>>,
}

impl<F: Coeff> ChainComplex<F> {
    pub fn new(
        dims: BTreeMap<i64, usize>,
        d: BTreeMap<i64, Matrix<F>>,
    ) -> Result<Self, ChainError> {
        let dims: BTreeMap<i64, usize> =
            dims.into_iter().filter(|&(_, dim)| dim > 0).collect();
        let dim_at = |n: i64| dims.get(&n).copied().unwrap_or(0);
        for (&n, m) in &d {
            if m.rows() != dim_at(n - 1) || m.cols() != dim_at(n) {
                return Err(ChainError::DifferentialShape(n));
            }
        }
        let d: BTreeMap<i64, Matrix<F>> =
            d.into_iter().filter(|(_, m)| !m.is_zero_matrix()).collect();
        for (&n, m) in &d {
            if let Some(prev) = d.get(&(n - 1)) {
                if !prev.mul(m).is_zero_matrix() {
                    return Err(ChainError::NotAComplex(n));
                }
            }
        }
        Ok(ChainComplex { dims, d })
    }

    pub fn zero() -> Self {
        ChainComplex { dims: BTreeMap::new(), d: BTreeMap::new() }
    }

    /// A single copy of the coefficients in one degree... generalized to any
    /// dimension with zero differential.
    pub fn concentrated(degree: i64, dim: usize) -> Self {
        let mut dims = BTreeMap::new();
        if dim > 0 {
            dims.insert(degree, dim);
        }
        ChainComplex { dims, d: BTreeMap::new() }
    }

    pub fn dim(&self, n: i64) -> usize {
        self.dims.get(&n).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &BTreeMap<i64, usize> {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn is_zero_complex(&self) -> bool {
        self.dims.is_empty()
    }

    /// Degrees where the complex or an adjacent differential lives.
    pub fn degrees(&self) -> Vec<i64> {
        self.dims.keys().copied().collect()
    }

    /// The differential out of degree `n`, materialized with its shape.
    pub fn diff(&self, n: i64) -> Matrix<F> {
        self.d
            .get(&n)
            .cloned()
            .unwrap_or_else(|| Matrix::zero(self.dim(n - 1), self.dim(n)))
    }

    /// Degree shift: `shift(k)` has `C_n` in degree `n + k`, differential
    /// multiplied by `(−1)^k`.
    pub fn shift(&self, k: i64) -> Self {
        let dims = self.dims.iter().map(|(&n, &dim)| (n + k, dim)).collect();
        let sign = if k.rem_euclid(2) == 0 { F::one() } else { -F::one() };
        let d = self.d.iter().map(|(&n, m)| (n + k, m.scaled(&sign))).collect();
        ChainComplex { dims, d }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut dims = BTreeMap::new();
        for n in self.dims.keys().chain(other.dims.keys()) {
            dims.insert(*n, self.dim(*n) + other.dim(*n));
        }
        let mut d = BTreeMap::new();
        for &n in self.d.keys().chain(other.d.keys()) {
            let mut m = Matrix::zero(
                self.dim(n - 1) + other.dim(n - 1),
                self.dim(n) + other.dim(n),
            );
            m.add_block(0, 0, &self.diff(n), &F::one());
            m.add_block(self.dim(n - 1), self.dim(n), &other.diff(n), &F::one());
            d.insert(n, m);
        }
        ChainComplex { dims, d: d.into_iter().filter(|(_, m)| !m.is_zero_matrix()).collect() }
    }

    /// Ranks of the homology, omitting zero entries.
    pub fn homology_ranks(&self) -> BTreeMap<i64, usize> {
        let ranks: BTreeMap<i64, usize> =
            self.d.iter().map(|(&n, m)| (n, m.rank())).collect();
        let rank_at = |n: i64| ranks.get(&n).copied().unwrap_or(0);
        self.dims
            .iter()
            .filter_map(|(&n, &dim)| {
                let h = dim - rank_at(n) - rank_at(n + 1);
                (h > 0).then_some((n, h))
            })
            .collect()
    }

    pub fn is_acyclic(&self) -> bool {
        self.homology_ranks().is_empty()
    }

    /// JSON form: graded dimensions plus matrices. Entries are numbers when
    /// integral and `"p/q"` strings otherwise.
    pub fn to_json(&self) -> Value {
        let dims: BTreeMap<String, usize> =
            self.dims.iter().map(|(n, &dim)| (n.to_string(), dim)).collect();
        let d: BTreeMap<String, Value> = self
            .d
            .iter()
            .map(|(n, m)| {
                let rows: Vec<Value> = m
                    .to_dense()
                    .into_iter()
                    .map(|row| Value::Array(row.into_iter().map(entry_json).collect()))
                    .collect();
                (n.to_string(), Value::Array(rows))
            })
            .collect();
        json!({ "dims": dims, "d": d })
    }
}

fn entry_json<F: Coeff>(v: F) -> Value {
    let s = v.to_string();
    match s.parse::<i64>() {
        Ok(n) => json!(n),
        Err(_) => json!(s),
    }
}

/// A chain map, carrying copies of its endpoints so validation and cones
/// need no extra context. Blocks absent from the map are zero.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainMap<F> {
    source: ChainComplex<F>,
    target: ChainComplex<F>,
    blocks: BTreeMap<i64, Matrix<F>>,
}

impl<F: Coeff> ChainMap<F> {
    pub fn new(
        source: ChainComplex<F>,
        target: ChainComplex<F>,
        blocks: BTreeMap<i64, Matrix<F>>,
    ) -> Result<Self, ChainError> {
        for (&n, b) in &blocks {
            if b.rows() != target.dim(n) || b.cols() != source.dim(n) {
                return Err(ChainError::MapShape(n));
            }
        }
        let blocks: BTreeMap<i64, Matrix<F>> =
            blocks.into_iter().filter(|(_, b)| !b.is_zero_matrix()).collect();
        let block_at = |n: i64| -> Matrix<F> {
            blocks.get(&n).cloned().unwrap_or_else(|| Matrix::zero(target.dim(n), source.dim(n)))
        };
        let degrees: Vec<i64> =
            source.dims().keys().chain(target.dims().keys()).copied().collect();
        for n in degrees {
            if block_at(n - 1).mul(&source.diff(n)) != target.diff(n).mul(&block_at(n)) {
                return Err(ChainError::NotChainMap(n));
            }
        }
        Ok(ChainMap { source, target, blocks })
    }

    pub fn identity(c: &ChainComplex<F>) -> Self {
        let blocks = c.dims().iter().map(|(&n, &dim)| (n, Matrix::identity(dim))).collect();
        ChainMap { source: c.clone(), target: c.clone(), blocks }
    }

    pub fn zero_map(source: ChainComplex<F>, target: ChainComplex<F>) -> Self {
        ChainMap { source, target, blocks: BTreeMap::new() }
    }

    pub fn source(&self) -> &ChainComplex<F> {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex<F> {
        &self.target
    }

    pub fn block(&self, n: i64) -> Matrix<F> {
        self.blocks
            .get(&n)
            .cloned()
            .unwrap_or_else(|| Matrix::zero(self.target.dim(n), self.source.dim(n)))
    }

    pub fn blocks(&self) -> &BTreeMap<i64, Matrix<F>> {
        &self.blocks
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ChainMap<F>) -> ChainMap<F> {
        assert_eq!(other.target, self.source, "composition endpoints do not match");
        let mut blocks = BTreeMap::new();
        for &n in other.blocks.keys() {
            let b = self.block(n).mul(&other.block(n));
            if !b.is_zero_matrix() {
                blocks.insert(n, b);
            }
        }
        ChainMap { source: other.source.clone(), target: self.target.clone(), blocks }
    }

    /// Mapping cone: `cone(f)_n = A_{n−1} ⊕ B_n`, `d(a, b) = (−da, fa + db)`.
    pub fn cone(&self) -> ChainComplex<F> {
        let a = &self.source;
        let b = &self.target;
        let mut dims = BTreeMap::new();
        let degrees: Vec<i64> = a
            .dims()
            .keys()
            .map(|&n| n + 1)
            .chain(b.dims().keys().copied())
            .collect();
        for n in degrees {
            let dim = a.dim(n - 1) + b.dim(n);
            if dim > 0 {
                dims.insert(n, dim);
            }
        }
        let mut d = BTreeMap::new();
        for &n in &dims.keys().copied().collect::<Vec<_>>() {
            let rows = a.dim(n - 2) + b.dim(n - 1);
            let cols = a.dim(n - 1) + b.dim(n);
            let mut m = Matrix::zero(rows, cols);
            m.add_block(0, 0, &a.diff(n - 1), &(-F::one()));
            m.add_block(a.dim(n - 2), 0, &self.block(n - 1), &F::one());
            m.add_block(a.dim(n - 2), a.dim(n - 1), &b.diff(n), &F::one());
            if !m.is_zero_matrix() {
                d.insert(n, m);
            }
        }
        ChainComplex { dims, d }
    }

    /// Quasi-isomorphism test: exactness of the mapping cone.
    pub fn is_quasi_iso(&self) -> bool {
        self.cone().is_acyclic()
    }

    /// Mapping cylinder of `f: A → B` with its structure maps. The
    /// projection is a quasi-isomorphism onto `B`; the source inclusion is
    /// one exactly when `f` is.
    pub fn cylinder(&self) -> Cylinder<F> {
        let a = &self.source;
        let b = &self.target;
        let mut dims = BTreeMap::new();
        let degrees: Vec<i64> = a
            .dims()
            .keys()
            .flat_map(|&n| [n, n + 1])
            .chain(b.dims().keys().copied())
            .collect();
        for n in degrees {
            let dim = a.dim(n) + a.dim(n - 1) + b.dim(n);
            if dim > 0 {
                dims.insert(n, dim);
            }
        }
        // Cyl_n = A_n ⊕ A_{n−1} ⊕ B_n, d(x, y, z) = (dx − y, −dy, dz + fy).
        let mut d = BTreeMap::new();
        for &n in &dims.keys().copied().collect::<Vec<_>>() {
            let rows = a.dim(n - 1) + a.dim(n - 2) + b.dim(n - 1);
            let cols = a.dim(n) + a.dim(n - 1) + b.dim(n);
            let mut m = Matrix::zero(rows, cols);
            m.add_block(0, 0, &a.diff(n), &F::one());
            m.add_block(0, a.dim(n), &Matrix::identity(a.dim(n - 1)), &(-F::one()));
            m.add_block(a.dim(n - 1), a.dim(n), &a.diff(n - 1), &(-F::one()));
            m.add_block(a.dim(n - 1) + a.dim(n - 2), a.dim(n), &self.block(n - 1), &F::one());
            m.add_block(a.dim(n - 1) + a.dim(n - 2), a.dim(n) + a.dim(n - 1), &b.diff(n), &F::one());
            if !m.is_zero_matrix() {
                d.insert(n, m);
            }
        }
        let cyl = ChainComplex { dims, d };
        let mut incl_source = BTreeMap::new();
        let mut incl_target = BTreeMap::new();
        let mut project = BTreeMap::new();
        for (&n, &dim) in cyl.dims() {
            let mut ia = Matrix::zero(dim, a.dim(n));
            ia.add_block(0, 0, &Matrix::identity(a.dim(n)), &F::one());
            if !ia.is_zero_matrix() {
                incl_source.insert(n, ia);
            }
            let mut ib = Matrix::zero(dim, b.dim(n));
            ib.add_block(a.dim(n) + a.dim(n - 1), 0, &Matrix::identity(b.dim(n)), &F::one());
            if !ib.is_zero_matrix() {
                incl_target.insert(n, ib);
            }
            // π(x, y, z) = f(x) + z.
            let mut p = Matrix::zero(b.dim(n), dim);
            p.add_block(0, 0, &self.block(n), &F::one());
            p.add_block(0, a.dim(n) + a.dim(n - 1), &Matrix::identity(b.dim(n)), &F::one());
            if !p.is_zero_matrix() {
                project.insert(n, p);
            }
        }
        Cylinder {
            incl_source: ChainMap {
                source: a.clone(),
                target: cyl.clone(),
                blocks: incl_source,
            },
            incl_target: ChainMap {
                source: b.clone(),
                target: cyl.clone(),
                blocks: incl_target,
            },
            project: ChainMap { source: cyl.clone(), target: b.clone(), blocks: project },
            complex: cyl,
        }
    }
}

/// Mapping cylinder with its inclusions and projection.
#[derive(Clone, Debug)]
pub struct Cylinder<F> {
    pub complex: ChainComplex<F>,
    pub incl_source: ChainMap<F>,
    pub incl_target: ChainMap<F>,
    pub project: ChainMap<F>,
}

/// Homology of one degree of an integral complex: free rank plus the
/// invariant factors bigger than one.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct IntegralHomology {
    pub rank: usize,
    pub torsion: Vec<String>,
}

/// Integral homology of a complex whose entries are all integers; errors on
/// a genuinely fractional entry. Torsion in degree `n` comes from the Smith
/// normal form of `d(n+1)`.
pub fn integral_homology(
    c: &ChainComplex<Scalar>,
) -> Result<BTreeMap<i64, IntegralHomology>, ChainError> {
    let degrees: Vec<i64> = c.dims().keys().copied().collect();
    let mut factors: BTreeMap<i64, Vec<BigInt>> = BTreeMap::new();
    for &n in &degrees {
        let m = c.diff(n);
        if m.is_zero_matrix() {
            continue;
        }
        let mut int = Matrix::zero(m.rows(), m.cols());
        for (i, j, v) in m.iter() {
            if !v.denom().is_one() {
                return Err(ChainError::NonIntegralEntry(v.to_string()));
            }
            int.set(i, j, v.numer().clone());
        }
        factors.insert(n, smith_invariant_factors(&int));
    }
    let rank_at = |n: i64| factors.get(&n).map_or(0, |f| f.len());
    let mut out = BTreeMap::new();
    for &n in &degrees {
        let rank = c.dim(n) - rank_at(n) - rank_at(n + 1);
        let torsion: Vec<String> = factors
            .get(&(n + 1))
            .map(|f| f.iter().filter(|v| !v.is_one()).map(|v| v.to_string()).collect())
            .unwrap_or_default();
        if rank > 0 || !torsion.is_empty() {
            out.insert(n, IntegralHomology { rank, torsion });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar;

    #[test]
    fn rejects_non_complex() {
        let dims: BTreeMap<i64, usize> = [(0, 1), (1, 1), (2, 1)].into();
        let d: BTreeMap<i64, Matrix<Scalar>> = [
            (1, Matrix::from_dense(&[vec![scalar(1)]])),
            (2, Matrix::from_dense(&[vec![scalar(1)]])),
        ]
        .into();
        assert_eq!(ChainComplex::new(dims, d).unwrap_err(), ChainError::NotAComplex(2));
    }

    #[test]
    fn cone_of_identity_is_acyclic() {
        let c = ChainComplex::<Scalar>::concentrated(0, 2)
            .direct_sum(&ChainComplex::concentrated(3, 1));
        assert!(ChainMap::identity(&c).cone().is_acyclic());
        assert!(ChainMap::identity(&c).is_quasi_iso());
    }

    #[test]
    fn shift_signs_stay_complex() {
        let dims: BTreeMap<i64, usize> = [(0, 1), (1, 2), (2, 1)].into();
        let d: BTreeMap<i64, Matrix<Scalar>> = [
            (1, Matrix::from_dense(&[vec![scalar(1), scalar(1)]])),
            (2, Matrix::from_dense(&[vec![scalar(1)], vec![scalar(-1)]])),
        ]
        .into();
        let c = ChainComplex::new(dims, d).unwrap();
        let s = c.shift(3);
        assert_eq!(s.dim(3), 1);
        assert_eq!(s.homology_ranks(), c.homology_ranks().into_iter().map(|(n, r)| (n + 3, r)).collect());
    }
}
