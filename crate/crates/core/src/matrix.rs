//! Dense rational matrices and exact elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::multi_index::MultiIndex;
use crate::scalar::{format_scalar, Scalar};
use crate::subspace::Subspace;

/// Dense row-major matrix with optional multi-index labels on rows and columns.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<Scalar>>,
    row_labels: Option<Vec<MultiIndex>>,
    col_labels: Option<Vec<MultiIndex>>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![vec![Scalar::zero(); cols]; rows],
            row_labels: None,
            col_labels: None,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::dim("ragged rows"));
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data: rows,
            row_labels: None,
            col_labels: None,
        })
    }

    /// Builds from integer entries; handy in tests and examples.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let data: Vec<Vec<Scalar>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| Scalar::from_integer(v.into())).collect())
            .collect();
        let cols = data.first().map_or(0, Vec::len);
        Matrix {
            rows: data.len(),
            cols,
            data,
            row_labels: None,
            col_labels: None,
        }
    }

    /// `rows × cols` matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<Scalar>]) -> Result<Self> {
        let mut m = Matrix::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::dim("column length"));
            }
            for (i, v) in c.iter().enumerate() {
                m.data[i][j] = v.clone();
            }
        }
        Ok(m)
    }

    pub fn with_labels(
        mut self,
        row_labels: Option<Vec<MultiIndex>>,
        col_labels: Option<Vec<MultiIndex>>,
    ) -> Result<Self> {
        if row_labels.as_ref().is_some_and(|l| l.len() != self.rows)
            || col_labels.as_ref().is_some_and(|l| l.len() != self.cols)
        {
            return Err(Error::dim("label count does not match matrix shape"));
        }
        self.row_labels = row_labels;
        self.col_labels = col_labels;
        Ok(self)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i][j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i]
    }

    pub fn row_data(&self) -> &[Vec<Scalar>] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        self.data.iter().map(|r| r[j].clone()).collect()
    }

    pub fn row_labels(&self) -> Option<&[MultiIndex]> {
        self.row_labels.as_deref()
    }

    pub fn col_labels(&self) -> Option<&[MultiIndex]> {
        self.col_labels.as_deref()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().flatten().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for (i, r) in self.data.iter().enumerate() {
            for (j, v) in r.iter().enumerate() {
                t.data[j][i] = v.clone();
            }
        }
        t.row_labels = self.col_labels.clone();
        t.col_labels = self.row_labels.clone();
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::dim(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for (k, a) in self.data[i].iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.data[k][j];
                    if !b.is_zero() {
                        out.data[i][j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::dim("vector length does not match column count"));
        }
        Ok(self
            .data
            .iter()
            .map(|r| {
                r.iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Scalar::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    /// Columns `range` as a new matrix; column labels follow.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let data = self
            .data
            .iter()
            .map(|r| cols.iter().map(|&j| r[j].clone()).collect())
            .collect();
        Matrix {
            rows: self.rows,
            cols: cols.len(),
            data,
            row_labels: self.row_labels.clone(),
            col_labels: self
                .col_labels
                .as_ref()
                .map(|l| cols.iter().map(|&j| l[j].clone()).collect()),
        }
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        Matrix {
            rows: rows.len(),
            cols: self.cols,
            data: rows.iter().map(|&i| self.data[i].clone()).collect(),
            row_labels: self
                .row_labels
                .as_ref()
                .map(|l| rows.iter().map(|&i| l[i].clone()).collect()),
            col_labels: self.col_labels.clone(),
        }
    }

    pub fn rank(&self) -> usize {
        echelon(&self.data, self.cols).1.len()
    }

    /// Rank and kernel (as a canonical subspace of the column space `K^cols`).
    pub fn rank_kernel(&self) -> (usize, Subspace) {
        let (rank, vectors) = self.kernel_vectors();
        (rank, Subspace::from_vectors(self.cols, &vectors))
    }

    /// Rank and an uncanonicalized kernel basis (one vector per free column).
    pub fn kernel_vectors(&self) -> (usize, Vec<Vec<Scalar>>) {
        let (rref, pivots) = rref(&self.data, self.cols);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::with_capacity(self.cols - pivots.len());
        for free in (0..self.cols).filter(|&j| !is_pivot[j]) {
            let mut v = vec![Scalar::zero(); self.cols];
            v[free] = Scalar::one();
            for (row, &p) in rref.iter().zip(&pivots) {
                if !row[free].is_zero() {
                    v[p] = -row[free].clone();
                }
            }
            basis.push(v);
        }
        (pivots.len(), basis)
    }

    /// Determinant by fraction-free elimination.
    pub fn det(&self) -> Result<Scalar> {
        if self.rows != self.cols {
            return Err(Error::dim("determinant of a non-square matrix"));
        }
        Ok(det_rows(&self.data))
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            rows: self.rows,
            cols: self.cols,
            row_labels: self
                .row_labels
                .as_ref()
                .map(|l| l.iter().map(|m| m.exps().to_vec()).collect()),
            col_labels: self
                .col_labels
                .as_ref()
                .map(|l| l.iter().map(|m| m.exps().to_vec()).collect()),
            entries: self
                .data
                .iter()
                .map(|r| r.iter().map(format_scalar).collect())
                .collect(),
        }
    }
}

/// JSON view of a matrix: exact entries as `p/q` strings.
#[derive(Serialize, Debug, Clone)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub row_labels: Option<Vec<Vec<u32>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub col_labels: Option<Vec<Vec<u32>>>,
    pub entries: Vec<Vec<String>>,
}

fn integer_row(row: &[Scalar]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .filter(|v| !v.is_zero())
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    row.iter()
        .map(|v| {
            if v.is_zero() {
                BigInt::zero()
            } else {
                v.numer() * (&lcm / v.denom())
            }
        })
        .collect()
}

fn remove_content(row: &mut [BigInt]) {
    let g = row
        .iter()
        .filter(|v| !v.is_zero())
        .fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for v in row.iter_mut() {
            if !v.is_zero() {
                *v = &*v / &g;
            }
        }
    }
}

/// `row <- p * row - f * pivot_row`, skipping zero products.
fn eliminate(row: &mut [BigInt], pivot_row: &[BigInt], p: &BigInt, f: &BigInt, from: usize) {
    for j in from..row.len() {
        let pr = &pivot_row[j];
        if row[j].is_zero() {
            if !pr.is_zero() {
                row[j] = -(f * pr);
            }
        } else if pr.is_zero() {
            row[j] = &row[j] * p;
        } else {
            row[j] = &row[j] * p - f * pr;
        }
    }
}

/// Fraction-free row echelon form over the integers. Rows are scaled to
/// integers first, and each updated row is divided by its content, which keeps
/// entry growth in check without rational normalization on every operation.
/// Returns the nonzero echelon rows and their pivot columns.
pub(crate) fn echelon(rows: &[Vec<Scalar>], ncols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let mut work: Vec<Vec<BigInt>> = rows.iter().map(|r| integer_row(r)).collect();
    work.retain(|r| r.iter().any(|v| !v.is_zero()));
    let mut out = Vec::new();
    let mut pivots = Vec::new();
    for col in 0..ncols {
        if work.is_empty() {
            break;
        }
        let Some(best) = work
            .iter()
            .enumerate()
            .filter(|(_, r)| !r[col].is_zero())
            .min_by_key(|(_, r)| r[col].bits())
            .map(|(i, _)| i)
        else {
            continue;
        };
        let prow = work.swap_remove(best);
        let p = prow[col].clone();
        for r in work.iter_mut() {
            if r[col].is_zero() {
                continue;
            }
            let f = r[col].clone();
            eliminate(r, &prow, &p, &f, col);
            remove_content(r);
        }
        work.retain(|r| r.iter().any(|v| !v.is_zero()));
        out.push(prow);
        pivots.push(col);
    }
    (out, pivots)
}

/// Reduced row echelon form with unit pivots. Returns the nonzero rows and
/// their pivot columns; the result is unique for a given row space.
pub(crate) fn rref(rows: &[Vec<Scalar>], ncols: usize) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    let (mut ech, pivots) = echelon(rows, ncols);
    for i in (0..ech.len()).rev() {
        let pc = pivots[i];
        let (above, rest) = ech.split_at_mut(i);
        let prow = &rest[0];
        let p = &prow[pc];
        for r in above.iter_mut() {
            if r[pc].is_zero() {
                continue;
            }
            let f = r[pc].clone();
            eliminate(r, prow, p, &f, 0);
            remove_content(r);
        }
    }
    let out = ech
        .into_iter()
        .zip(&pivots)
        .map(|(r, &pc)| {
            let p = r[pc].clone();
            r.into_iter()
                .map(|v| {
                    if v.is_zero() {
                        Scalar::zero()
                    } else {
                        Scalar::new(v, p.clone())
                    }
                })
                .collect()
        })
        .collect();
    (out, pivots)
}

pub(crate) fn det_rows(rows: &[Vec<Scalar>]) -> Scalar {
    let n = rows.len();
    if n == 0 {
        return Scalar::one();
    }
    // scale rows to integers, remember the scaling, then Bareiss
    let mut scale = Scalar::one();
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            let lcm = r
                .iter()
                .filter(|v| !v.is_zero())
                .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            scale *= Scalar::from_integer(lcm.clone());
            r.iter()
                .map(|v| {
                    if v.is_zero() {
                        BigInt::zero()
                    } else {
                        v.numer() * (&lcm / v.denom())
                    }
                })
                .collect()
        })
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return Scalar::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = sign * &a[n - 1][n - 1];
    Scalar::from_integer(d) / scale
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    #[test]
    fn rank_kernel_examples() {
        let (r, k) = Matrix::identity(3).rank_kernel();
        assert_eq!((r, k.dim()), (3, 0));
        let (r, k) = Matrix::zeros(2, 3).rank_kernel();
        assert_eq!((r, k.dim()), (0, 3));
        let (r, k) = Matrix::from_i64(&[&[1, 2], &[2, 4]]).rank_kernel();
        assert_eq!(r, 1);
        assert_eq!(k, Subspace::from_vectors(2, &[vec![int(-2), int(1)]]));
    }

    #[test]
    fn rref_is_reduced() {
        let m = Matrix::from_rows(vec![
            vec![ratio(1, 2), int(1), int(3)],
            vec![int(1), int(2), int(7)],
        ])
        .unwrap();
        let (rows, piv) = rref(m.row_data(), 3);
        assert_eq!(piv, vec![0, 2]);
        assert_eq!(rows[0], vec![int(1), int(2), int(0)]);
        assert_eq!(rows[1], vec![int(0), int(0), int(1)]);
    }

    #[test]
    fn determinants() {
        assert_eq!(Matrix::from_i64(&[&[2, 1], &[1, 3]]).det().unwrap(), int(5));
        assert_eq!(Matrix::from_i64(&[&[0, 1], &[1, 0]]).det().unwrap(), int(-1));
        assert_eq!(Matrix::from_i64(&[&[1, 2], &[2, 4]]).det().unwrap(), int(0));
        let m = Matrix::from_rows(vec![
            vec![ratio(1, 2), int(0), int(1)],
            vec![int(0), ratio(1, 3), int(0)],
            vec![int(4), int(0), int(1)],
        ])
        .unwrap();
        assert_eq!(m.det().unwrap(), ratio(-7, 6));
        assert!(Matrix::zeros(2, 3).det().is_err());
    }

    #[test]
    fn labels_must_match() {
        let m = Matrix::zeros(2, 2);
        assert!(m.with_labels(Some(vec![MultiIndex::zero(1)]), None).is_err());
    }
}
