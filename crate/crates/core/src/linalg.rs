//! Dense exact linear algebra over a [`Field`].
//!
//! Matrices are flat row-major vectors of element codes. Reduction is
//! Gauss–Jordan with the first nonzero entry of each column as pivot, scanning
//! columns left to right, so the reduced row echelon form is canonical and
//! `rowspace_equal` reduces to entrywise comparison. Large eliminations update
//! rows in parallel; every row update is independent, so results do not depend
//! on the thread count.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::Field;

/// Element count above which row updates are sharded across threads.
const PAR_THRESHOLD: usize = 1 << 15;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("ShapeMismatch: {0}")]
    ShapeMismatch(String),
    #[error("FieldMismatch: matrices are over different fields")]
    FieldMismatch,
    #[error("CodeOutOfRange: entry {code} is not below the field order {order}")]
    CodeOutOfRange { code: u32, order: u32 },
    #[error("NoSolution: the linear system is inconsistent")]
    NoSolution,
}

/// Matrix wire form: `{"rows": r, "cols": c, "entries": [[int, ...], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<u32>>,
}

#[derive(Clone, PartialEq, Eq)]
pub struct MatGF {
    field: Arc<Field>,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for MatGF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "MatGF {}x{} over F_{}",
            self.rows,
            self.cols,
            self.field.order()
        )?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

/// Result of [`MatGF::rref`].
#[derive(Debug, Clone)]
pub struct Rref {
    pub matrix: MatGF,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// One solution of `A·x = b` plus a basis of the homogeneous solutions.
#[derive(Debug, Clone)]
pub struct Solution {
    pub particular: Vec<u32>,
    pub nullspace: MatGF,
}

impl MatGF {
    pub fn zeros(field: Arc<Field>, rows: usize, cols: usize) -> MatGF {
        MatGF {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: Arc<Field>, n: usize) -> MatGF {
        let mut m = MatGF::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_flat(
        field: Arc<Field>,
        rows: usize,
        cols: usize,
        data: Vec<u32>,
    ) -> Result<MatGF, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(&code) = data.iter().find(|&&c| c >= field.order()) {
            return Err(LinalgError::CodeOutOfRange {
                code,
                order: field.order(),
            });
        }
        Ok(MatGF {
            field,
            rows,
            cols,
            data,
        })
    }

    /// Builds from row vectors; `cols` is needed to shape an empty matrix.
    pub fn from_rows(
        field: Arc<Field>,
        cols: usize,
        rows: &[Vec<u32>],
    ) -> Result<MatGF, LinalgError> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(LinalgError::ShapeMismatch(format!(
                "row of length {} in a {cols}-column matrix",
                bad.len()
            )));
        }
        let data = rows.concat();
        MatGF::from_flat(field, rows.len(), cols, data)
    }

    pub fn from_json(field: Arc<Field>, json: &MatrixJson) -> Result<MatGF, LinalgError> {
        if json.entries.len() != json.rows {
            return Err(LinalgError::ShapeMismatch(format!(
                "{} rows listed, {} declared",
                json.entries.len(),
                json.rows
            )));
        }
        MatGF::from_rows(field, json.cols, &json.entries)
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            rows: self.rows,
            cols: self.cols,
            entries: self.to_rows(),
        }
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// One row per line, comma-separated integer codes.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(|c| c.to_string()).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&c| c == 0)
    }

    pub fn transpose(&self) -> MatGF {
        let mut t = MatGF::zeros(self.field.clone(), self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    fn same_field(&self, other: &MatGF) -> Result<(), LinalgError> {
        if Arc::ptr_eq(&self.field, &other.field) || self.field == other.field {
            Ok(())
        } else {
            Err(LinalgError::FieldMismatch)
        }
    }

    pub fn mul(&self, other: &MatGF) -> Result<MatGF, LinalgError> {
        self.same_field(other)?;
        if self.cols != other.rows {
            return Err(LinalgError::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let field = &self.field;
        let mut out = MatGF::zeros(field.clone(), self.rows, other.cols);
        let cols = other.cols;
        let work = |(r, out_row): (usize, &mut [u32])| {
            for (k, &a) in self.row(r).iter().enumerate() {
                field.axpy(out_row, other.row(k), a);
            }
        };
        if self.rows * self.cols * other.cols >= PAR_THRESHOLD * 8 {
            out.data
                .par_chunks_mut(cols.max(1))
                .enumerate()
                .for_each(work);
        } else {
            out.data.chunks_mut(cols.max(1)).enumerate().for_each(work);
        }
        Ok(out)
    }

    /// `M·v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[u32]) -> Result<Vec<u32>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::ShapeMismatch(format!(
                "vector of length {} for {} columns",
                v.len(),
                self.cols
            )));
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect())
    }

    /// `v·M` for a row vector `v`.
    pub fn vec_mul(&self, v: &[u32]) -> Result<Vec<u32>, LinalgError> {
        if v.len() != self.rows {
            return Err(LinalgError::ShapeMismatch(format!(
                "vector of length {} for {} rows",
                v.len(),
                self.rows
            )));
        }
        let mut out = vec![0; self.cols];
        for (r, &c) in v.iter().enumerate() {
            self.field.axpy(&mut out, self.row(r), c);
        }
        Ok(out)
    }

    /// Multiplies column `j` by `x[j]`, i.e. `M·diag(x)`.
    pub fn scale_columns(&self, x: &[u32]) -> Result<MatGF, LinalgError> {
        if x.len() != self.cols {
            return Err(LinalgError::ShapeMismatch(format!(
                "{} scalars for {} columns",
                x.len(),
                self.cols
            )));
        }
        let mut out = self.clone();
        for row in out.data.chunks_mut(self.cols.max(1)) {
            for (e, &s) in row.iter_mut().zip(x) {
                *e = self.field.mul(*e, s);
            }
        }
        Ok(out)
    }

    /// Columns reordered so that output column `j` is input column `order[j]`.
    pub fn select_columns(&self, order: &[usize]) -> MatGF {
        let mut out = MatGF::zeros(self.field.clone(), self.rows, order.len());
        for r in 0..self.rows {
            for (j, &src) in order.iter().enumerate() {
                out.data[r * order.len() + j] = self.get(r, src);
            }
        }
        out
    }

    pub fn stack(&self, other: &MatGF) -> Result<MatGF, LinalgError> {
        self.same_field(other)?;
        if self.cols != other.cols {
            return Err(LinalgError::ShapeMismatch(
                "stacking matrices of different widths".into(),
            ));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(MatGF {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Canonical reduced row echelon form.
    pub fn rref(&self) -> Rref {
        let field = self.field.clone();
        let cols = self.cols;
        let mut data = self.data.clone();
        let mut pivots = Vec::new();
        let mut lead = 0;
        let parallel = self.rows * self.cols >= PAR_THRESHOLD;
        for col in 0..cols {
            if lead == self.rows {
                break;
            }
            let Some(pr) = (lead..self.rows).find(|&r| data[r * cols + col] != 0) else {
                continue;
            };
            if pr != lead {
                for c in col..cols {
                    data.swap(pr * cols + c, lead * cols + c);
                }
            }
            let inv = field
                .inv(data[lead * cols + col])
                .expect("pivot is nonzero");
            for c in col..cols {
                data[lead * cols + c] = field.mul(data[lead * cols + c], inv);
            }
            let pivot_row: Vec<u32> = data[lead * cols + col..(lead + 1) * cols].to_vec();
            let f = &field;
            let update = |(r, row): (usize, &mut [u32])| {
                if r == lead {
                    return;
                }
                let c = row[col];
                if c != 0 {
                    f.axpy(&mut row[col..], &pivot_row, f.neg(c));
                }
            };
            if parallel {
                data.par_chunks_mut(cols).enumerate().for_each(update);
            } else {
                data.chunks_mut(cols).enumerate().for_each(update);
            }
            pivots.push(col);
            lead += 1;
        }
        let rank = pivots.len();
        Rref {
            matrix: MatGF {
                field,
                rows: self.rows,
                cols,
                data,
            },
            rank,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis (as rows) of `{v : M·vᵀ = 0}`, of size `cols − rank`.
    pub fn nullspace(&self) -> MatGF {
        let Rref {
            matrix: r, pivots, ..
        } = self.rref();
        let field = &self.field;
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut out = MatGF::zeros(field.clone(), free.len(), self.cols);
        for (i, &fc) in free.iter().enumerate() {
            out.data[i * self.cols + fc] = 1;
            for (pr, &pc) in pivots.iter().enumerate() {
                out.data[i * self.cols + pc] = field.neg(r.get(pr, fc));
            }
        }
        out
    }

    /// Nonzero rows of the reduced row echelon form.
    pub fn row_basis(&self) -> MatGF {
        let rr = self.rref();
        let data = rr.matrix.data[..rr.rank * self.cols].to_vec();
        MatGF {
            field: self.field.clone(),
            rows: rr.rank,
            cols: self.cols,
            data,
        }
    }

    /// True iff both matrices span the same row space.
    pub fn rowspace_equal(&self, other: &MatGF) -> bool {
        if self.same_field(other).is_err() || self.cols != other.cols {
            return false;
        }
        self.row_basis().data == other.row_basis().data
    }

    /// Solves `A·x = b`.
    pub fn solve(&self, b: &[u32]) -> Result<Solution, LinalgError> {
        if b.len() != self.rows {
            return Err(LinalgError::ShapeMismatch(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let aug_cols = self.cols + 1;
        let mut data = Vec::with_capacity(self.rows * aug_cols);
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.push(b[r]);
        }
        let aug = MatGF {
            field: self.field.clone(),
            rows: self.rows,
            cols: aug_cols,
            data,
        };
        let rr = aug.rref();
        if rr.pivots.last() == Some(&self.cols) {
            return Err(LinalgError::NoSolution);
        }
        let mut particular = vec![0; self.cols];
        for (i, &pc) in rr.pivots.iter().enumerate() {
            particular[pc] = rr.matrix.get(i, self.cols);
        }
        Ok(Solution {
            particular,
            nullspace: self.nullspace(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f2() -> Arc<Field> {
        Arc::new(Field::new(2, 1, None).unwrap())
    }

    #[test]
    fn identity_is_its_own_rref() {
        let f = Arc::new(Field::new(3, 2, None).unwrap());
        let id = MatGF::identity(f, 3);
        let rr = id.rref();
        assert_eq!(rr.rank, 3);
        assert_eq!(rr.matrix, id);
        assert_eq!(id.nullspace().rows(), 0);
    }

    #[test]
    fn repeated_rows_over_f2() {
        let m = MatGF::from_rows(f2(), 2, &[vec![1, 1], vec![1, 1]]).unwrap();
        let rr = m.rref();
        assert_eq!(rr.rank, 1);
        assert_eq!(rr.matrix.to_rows(), vec![vec![1, 1], vec![0, 0]]);
    }

    #[test]
    fn repetition_code_nullspace() {
        let m = MatGF::from_rows(f2(), 2, &[vec![1, 1]]).unwrap();
        assert_eq!(m.nullspace().to_rows(), vec![vec![1, 1]]);
    }

    #[test]
    fn rowspace_equal_under_permutation_and_scaling() {
        let f = Arc::new(Field::new(2, 3, None).unwrap());
        let a = MatGF::from_rows(f.clone(), 4, &[vec![1, 2, 3, 4], vec![0, 1, 5, 7]]).unwrap();
        let swapped =
            MatGF::from_rows(f.clone(), 4, &[vec![0, 1, 5, 7], vec![1, 2, 3, 4]]).unwrap();
        assert!(a.rowspace_equal(&swapped));
        let scaled_row: Vec<u32> = a.row(1).iter().map(|&c| f.mul(c, 6)).collect();
        let scaled = MatGF::from_rows(f.clone(), 4, &[a.row(0).to_vec(), scaled_row]).unwrap();
        assert!(a.rowspace_equal(&scaled));
        let other = MatGF::from_rows(f, 4, &[vec![1, 0, 0, 0], vec![0, 1, 5, 7]]).unwrap();
        assert!(!a.rowspace_equal(&other));
    }

    #[test]
    fn solve_trivial_systems() {
        let f = Arc::new(Field::new(5, 1, None).unwrap());
        let id = MatGF::identity(f.clone(), 3);
        let s = id.solve(&[4, 0, 2]).unwrap();
        assert_eq!(s.particular, vec![4, 0, 2]);
        assert_eq!(s.nullspace.rows(), 0);
        let zero = MatGF::zeros(f.clone(), 2, 3);
        let s = zero.solve(&[0, 0]).unwrap();
        assert_eq!(s.particular, vec![0, 0, 0]);
        assert_eq!(s.nullspace.rows(), 3);
        assert_eq!(zero.solve(&[1, 0]).unwrap_err(), LinalgError::NoSolution);
    }

    #[test]
    fn json_and_csv() {
        let f = f2();
        let m = MatGF::from_rows(f.clone(), 3, &[vec![1, 0, 1], vec![0, 1, 1]]).unwrap();
        let j = m.to_json();
        assert_eq!(
            serde_json::to_string(&j).unwrap(),
            r#"{"rows":2,"cols":3,"entries":[[1,0,1],[0,1,1]]}"#
        );
        assert_eq!(MatGF::from_json(f.clone(), &j).unwrap(), m);
        assert_eq!(m.to_csv(), "1,0,1\n0,1,1\n");
        assert!(MatGF::from_rows(f, 2, &[vec![2, 0]]).is_err());
    }

    fn random_matrix(field: &Arc<Field>, rows: usize, cols: usize, seed: &[u32]) -> MatGF {
        let data = (0..rows * cols)
            .map(|i| seed[i % seed.len()].wrapping_mul(i as u32 + 7) % field.order())
            .collect();
        MatGF::from_flat(field.clone(), rows, cols, data).unwrap()
    }

    proptest! {
        #[test]
        fn rank_nullity(rows in 1usize..7, cols in 1usize..9, seed in proptest::collection::vec(any::<u32>(), 1..20), q in prop_oneof![Just(2u64), Just(4), Just(9), Just(7)]) {
            let f = Arc::new(Field::with_order(q).unwrap());
            let m = random_matrix(&f, rows, cols, &seed);
            let n = m.nullspace();
            prop_assert_eq!(m.rank() + n.rows(), cols);
            if n.rows() > 0 {
                prop_assert!(m.mul(&n.transpose()).unwrap().is_zero());
            }
            let rr = m.rref();
            prop_assert_eq!(rr.matrix.rref().matrix, rr.matrix.clone());
        }

        #[test]
        fn double_dual(rows in 1usize..6, cols in 2usize..9, seed in proptest::collection::vec(any::<u32>(), 1..20)) {
            let f = Arc::new(Field::with_order(8).unwrap());
            let m = random_matrix(&f, rows, cols, &seed);
            let dual = m.nullspace();
            if dual.rows() > 0 {
                prop_assert!(dual.nullspace().rowspace_equal(&m));
            }
        }

        #[test]
        fn constructed_solutions_verify(x in proptest::collection::vec(0u32..4, 6), seed in proptest::collection::vec(any::<u32>(), 4..30)) {
            let f = Arc::new(Field::with_order(4).unwrap());
            let a = random_matrix(&f, 4, 6, &seed);
            let b = a.mul_vec(&x).unwrap();
            let s = a.solve(&b).unwrap();
            prop_assert_eq!(a.mul_vec(&s.particular).unwrap(), b);
            for r in 0..s.nullspace.rows() {
                prop_assert!(a.mul_vec(s.nullspace.row(r)).unwrap().iter().all(|&c| c == 0));
            }
        }
    }
}
