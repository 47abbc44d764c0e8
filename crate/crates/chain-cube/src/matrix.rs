//! Sparse matrices over an exact coefficient type, with rank by exact
//! elimination and Smith normal form for integral torsion questions.

use crate::Coeff;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};

/// Sparse matrix; absent entries are zero. Shape is fixed at construction,
/// entries are kept canonical (no explicit zeros), so `PartialEq` is
/// mathematical equality.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), F>,
}

impl<F: Coeff> Matrix<F> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let entries = (0..n).map(|i| ((i, i), F::one())).collect();
        Matrix { rows: n, cols: n, entries }
    }

    pub fn from_entries<I>(rows: usize, cols: usize, iter: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, F)>,
    {
        let mut m = Matrix::zero(rows, cols);
        for (i, j, v) in iter {
            m.add_to(i, j, v);
        }
        m
    }

    pub fn from_dense(rows: &[Vec<F>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix::from_entries(
            r,
            c,
            rows.iter()
                .enumerate()
                .flat_map(|(i, row)| row.iter().enumerate().map(move |(j, v)| (i, j, v.clone()))),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> F {
        assert!(i < self.rows && j < self.cols, "index out of range");
        self.entries.get(&(i, j)).cloned().unwrap_or_else(F::zero)
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        assert!(i < self.rows && j < self.cols, "index out of range");
        if v.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    /// Adds `v` into entry `(i, j)`.
    pub fn add_to(&mut self, i: usize, j: usize, v: F) {
        if v.is_zero() {
            return;
        }
        let cur = self.get(i, j) + v;
        self.set(i, j, cur);
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &F)> {
        self.entries.iter().map(|(&(i, j), v)| (i, j, v))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn mul(&self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in product");
        let mut out = Matrix::zero(self.rows, rhs.cols);
        for (&(i, k), a) in &self.entries {
            for (&(_, j), b) in rhs.entries.range((k, 0)..(k + 1, 0)) {
                out.add_to(i, j, a.clone() * b.clone());
            }
        }
        out
    }

    pub fn add(&self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch in sum");
        let mut out = self.clone();
        for (&(i, j), v) in &rhs.entries {
            out.add_to(i, j, v.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Matrix<F>) -> Matrix<F> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Matrix<F> {
        self.scaled(&(-F::one()))
    }

    pub fn scaled(&self, c: &F) -> Matrix<F> {
        let mut out = Matrix::zero(self.rows, self.cols);
        for (&(i, j), v) in &self.entries {
            out.add_to(i, j, v.clone() * c.clone());
        }
        out
    }

    /// Writes `scale * m` into this matrix with its top-left corner at
    /// `(r0, c0)`. Panics if the block sticks out.
    pub fn add_block(&mut self, r0: usize, c0: usize, m: &Matrix<F>, scale: &F) {
        assert!(r0 + m.rows <= self.rows && c0 + m.cols <= self.cols, "block out of range");
        for (&(i, j), v) in &m.entries {
            self.add_to(r0 + i, c0 + j, v.clone() * scale.clone());
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<F>> {
        let mut out = vec![vec![F::zero(); self.cols]; self.rows];
        for (&(i, j), v) in &self.entries {
            out[i][j] = v.clone();
        }
        out
    }

    /// Rank by exact sparse Gaussian elimination. Pivots prefer short rows
    /// and, inside a row, entries equal to ±1 (then short columns), which
    /// keeps the arithmetic near-integral on incidence-like matrices.
    /// The coefficients must form a field: entries get divided by pivots.
    pub fn rank(&self) -> usize {
        let mut rows: Vec<BTreeMap<usize, F>> = vec![BTreeMap::new(); self.rows];
        let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); self.cols];
        for (&(i, j), v) in &self.entries {
            rows[i].insert(j, v.clone());
            col_rows[j].insert(i);
        }
        let mut active: BTreeSet<usize> =
            (0..self.rows).filter(|&i| !rows[i].is_empty()).collect();
        let mut rank = 0;
        let one = F::one();
        let minus_one = -F::one();
        while !active.is_empty() {
            // Pivot row: fewest nonzeros. Pivot column within it: unit
            // entries first, then fewest nonzeros in the column.
            let &r = active
                .iter()
                .min_by_key(|&&i| (rows[i].len(), i))
                .expect("nonempty active set");
            let (c, _) = rows[r]
                .iter()
                .min_by_key(|&(&j, v)| (!(*v == one || *v == minus_one), col_rows[j].len(), j))
                .map(|(&j, v)| (j, v.clone()))
                .expect("active rows are nonempty");
            let pivot = rows[r].get(&c).cloned().expect("pivot entry present");
            rank += 1;
            let pivot_row: Vec<(usize, F)> =
                rows[r].iter().map(|(&j, v)| (j, v.clone())).collect();
            let below: Vec<usize> = col_rows[c].iter().copied().filter(|&i| i != r).collect();
            for i in below {
                let factor = rows[i].get(&c).cloned().expect("column index stale") / pivot.clone();
                for (j, v) in &pivot_row {
                    let new = match rows[i].remove(j) {
                        Some(old) => old - factor.clone() * v.clone(),
                        None => -(factor.clone() * v.clone()),
                    };
                    if new.is_zero() {
                        col_rows[*j].remove(&i);
                    } else {
                        rows[i].insert(*j, new);
                        col_rows[*j].insert(i);
                    }
                }
                if rows[i].is_empty() {
                    active.remove(&i);
                }
            }
            for (j, _) in pivot_row {
                col_rows[j].remove(&r);
            }
            rows[r].clear();
            active.remove(&r);
        }
        rank
    }
}

/// Invariant factors of an integer matrix (Smith normal form diagonal),
/// nonnegative, each dividing the next, zeros trimmed. Dense; intended for
/// the small matrices where torsion is actually asked for.
pub fn smith_invariant_factors(m: &Matrix<BigInt>) -> Vec<BigInt> {
    let mut a = m.to_dense();
    let rows = m.rows();
    let cols = m.cols();
    let mut factors = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Smallest nonzero entry of the trailing submatrix into (t, t).
        let pivot_pos = {
            let mut best: Option<(BigInt, usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !a[i][j].is_zero() {
                        let abs = a[i][j].abs();
                        if best.as_ref().map_or(true, |(b, _, _)| abs < *b) {
                            best = Some((abs, i, j));
                        }
                    }
                }
            }
            match best {
                Some((_, i, j)) => (i, j),
                None => break,
            }
        };
        a.swap(t, pivot_pos.0);
        for row in a.iter_mut() {
            row.swap(t, pivot_pos.1);
        }
        // Reduce row and column; any nonzero remainder is a smaller pivot,
        // so this loop terminates.
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let q = &a[i][t] / &a[t][t];
                    for j in t..cols {
                        let sub = &q * &a[t][j];
                        a[i][j] -= sub;
                    }
                    if !a[i][t].is_zero() {
                        a.swap(t, i);
                        clean = false;
                    }
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let q = &a[t][j] / &a[t][t];
                    for row in a.iter_mut().take(rows).skip(t) {
                        let sub = &q * &row[t];
                        row[j] -= sub;
                    }
                    if !a[t][j].is_zero() {
                        for row in a.iter_mut() {
                            row.swap(t, j);
                        }
                        clean = false;
                    }
                }
            }
            if !clean {
                continue;
            }
            // Pivot must divide the trailing submatrix for the divisibility
            // chain; fold an offending row in and keep reducing.
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !(&a[i][j] % &a[t][t]).is_zero());
            match offender {
                Some((i, _)) => {
                    for j in t..cols {
                        let add = a[i][j].clone();
                        a[t][j] += add;
                    }
                }
                None => break,
            }
        }
        factors.push(a[t][t].abs());
        t += 1;
    }
    factors
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{scalar, Scalar};

    fn int_matrix(rows: &[&[i64]]) -> Matrix<Scalar> {
        Matrix::from_dense(
            &rows.iter().map(|r| r.iter().map(|&v| scalar(v)).collect()).collect::<Vec<_>>(),
        )
    }

    #[test]
    fn rank_examples() {
        assert_eq!(int_matrix(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(int_matrix(&[&[1, 0], &[0, 1]]).rank(), 2);
        assert_eq!(Matrix::<Scalar>::zero(3, 5).rank(), 0);
        assert_eq!(int_matrix(&[&[2, 3, 5], &[7, 11, 13], &[1, 1, 1]]).rank(), 3);
    }

    #[test]
    fn smith_examples() {
        let m = Matrix::<BigInt>::from_dense(&[
            vec![BigInt::from(2), BigInt::from(0)],
            vec![BigInt::from(0), BigInt::from(3)],
        ]);
        assert_eq!(smith_invariant_factors(&m), vec![BigInt::from(1), BigInt::from(6)]);
        let m = Matrix::<BigInt>::from_dense(&[
            vec![BigInt::from(2), BigInt::from(4)],
            vec![BigInt::from(0), BigInt::from(4)],
        ]);
        assert_eq!(smith_invariant_factors(&m), vec![BigInt::from(2), BigInt::from(4)]);
    }
}
