use std::fmt;

use super::{FieldSpec, LinalgError, Scalar};

/// Dense matrix over an exact field, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
    field: FieldSpec,
}

impl ExactMatrix {
    pub fn new(field: FieldSpec, rows: usize, cols: usize, data: Vec<Scalar>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must equal rows*cols");
        ExactMatrix {
            rows,
            cols,
            data,
            field,
        }
    }

    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
            field,
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    /// Builds a matrix from integer rows. An empty row list gives a 0x`cols` matrix.
    pub fn from_i64_rows(field: FieldSpec, cols: usize, rows: &[Vec<i64>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend(r.iter().map(|&v| field.from_i64(v)));
        }
        Self::new(field, rows.len(), cols, data)
    }

    /// A single column built from a vector of entries.
    pub fn column_vector(field: FieldSpec, entries: Vec<Scalar>) -> Self {
        let n = entries.len();
        Self::new(field, n, 1, entries)
    }

    pub fn random<R: rand::Rng + ?Sized>(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        rng: &mut R,
    ) -> Self {
        let data = (0..rows * cols).map(|_| field.random(rng)).collect();
        Self::new(field, rows, cols, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.field, self.rows)
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<Scalar> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    fn check_field(&self, other: &Self) -> Result<(), LinalgError> {
        if self.field != other.field {
            Err(LinalgError::FieldMismatch)
        } else {
            Ok(())
        }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                op: "mul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let f = self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if f.is_zero(b) {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.data[idx] = f.add(&out.data[idx], &f.mul(a, b));
                }
            }
        }
        Ok(out)
    }

    /// Matrix product; panics on shape mismatch.
    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("matrix product")
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape(), "matrix sum shape");
        let f = self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| f.add(a, b))
            .collect();
        Self::new(f, self.rows, self.cols, data)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let f = self.field;
        Self::new(
            f,
            self.rows,
            self.cols,
            self.data.iter().map(|a| f.neg(a)).collect(),
        )
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let f = self.field;
        Self::new(
            f,
            self.rows,
            self.cols,
            self.data.iter().map(|a| f.mul(a, c)).collect(),
        )
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Self::new(self.field, self.cols, self.rows, data)
    }

    pub fn trace(&self) -> Scalar {
        let f = self.field;
        (0..self.rows.min(self.cols)).fold(f.zero(), |acc, i| f.add(&acc, self.get(i, i)))
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "hstack row count");
        let mut data = Vec::with_capacity(self.data.len() + other.data.len());
        for i in 0..self.rows {
            data.extend_from_slice(&self.data[i * self.cols..(i + 1) * self.cols]);
            data.extend_from_slice(&other.data[i * other.cols..(i + 1) * other.cols]);
        }
        Self::new(self.field, self.rows, self.cols + other.cols, data)
    }

    /// `[self ; other]`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "vstack column count");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Self::new(self.field, self.rows + other.rows, self.cols, data)
    }

    pub fn hstack_all(field: FieldSpec, rows: usize, blocks: &[Self]) -> Self {
        blocks
            .iter()
            .fold(Self::zeros(field, rows, 0), |acc, b| acc.hstack(b))
    }

    pub fn vstack_all(field: FieldSpec, cols: usize, blocks: &[Self]) -> Self {
        blocks
            .iter()
            .fold(Self::zeros(field, 0, cols), |acc, b| acc.vstack(b))
    }

    pub fn block_diag(field: FieldSpec, blocks: &[Self]) -> Self {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(field, r, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for i in rows.clone() {
            for j in cols.clone() {
                data.push(self.get(i, j).clone());
            }
        }
        Self::new(self.field, rows.len(), cols.len(), data)
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(self.rows * cols.len());
        for i in 0..self.rows {
            for &j in cols {
                data.push(self.get(i, j).clone());
            }
        }
        Self::new(self.field, self.rows, cols.len(), data)
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let mut data = Vec::with_capacity(self.cols * rows.len());
        for &i in rows {
            data.extend_from_slice(&self.data[i * self.cols..(i + 1) * self.cols]);
        }
        Self::new(self.field, rows.len(), self.cols, data)
    }

    /// Reduced row-echelon form together with the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c));
            for j in c..m.cols {
                let v = f.mul(m.get(r, j), &inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Columns form the canonical basis of the null space: the raw basis is
    /// brought to reduced column-echelon form, so the result depends only on
    /// the null space itself.
    pub fn kernel(&self) -> Self {
        let f = self.field;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Self::zeros(f, free.len(), self.cols);
        for (k, &fc) in free.iter().enumerate() {
            basis.set(k, fc, f.one());
            for (i, &pc) in pivots.iter().enumerate() {
                basis.set(k, pc, f.neg(r.get(i, fc)));
            }
        }
        basis.rref().0.transpose()
    }

    /// Row-space basis in reduced echelon form (zero rows dropped).
    pub fn row_space(&self) -> Self {
        let (r, pivots) = self.rref();
        r.submatrix(0..pivots.len(), 0..self.cols)
    }

    /// Canonical basis of the column space, as columns.
    pub fn column_space(&self) -> Self {
        self.transpose().row_space().transpose()
    }

    /// Cokernel projection `P` (full row rank) with `P * self = 0` and
    /// `ker P = im self`. Rows are the canonical basis of the left null space.
    pub fn cokernel(&self) -> (Self, usize) {
        let p = self.transpose().kernel().transpose();
        let d = p.rows;
        (p, d)
    }

    /// Solves `self * X = rhs`. The particular solution sets every free
    /// variable to zero.
    pub fn solve(&self, rhs: &Self) -> Result<Self, LinalgError> {
        self.check_field(rhs)?;
        if self.rows != rhs.rows {
            return Err(LinalgError::DimensionMismatch {
                op: "solve",
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        let f = self.field;
        let aug = self.hstack(rhs);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return Err(LinalgError::NoSolution);
        }
        let mut x = Self::zeros(f, self.cols, rhs.cols);
        for (i, &pc) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(pc, j, r.get(i, self.cols + j).clone());
            }
        }
        Ok(x)
    }

    /// Solves `X * self = rhs`.
    pub fn solve_left(&self, rhs: &Self) -> Result<Self, LinalgError> {
        Ok(self.transpose().solve(&rhs.transpose())?.transpose())
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        self.solve(&Self::identity(self.field, self.rows)).ok()
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// A right inverse `R` with `self * R = I`; requires full row rank.
    pub fn right_inverse(&self) -> Result<Self, LinalgError> {
        self.solve(&Self::identity(self.field, self.rows))
    }

    /// True when every column of `other` lies in the column span of `self`.
    pub fn spans(&self, other: &Self) -> bool {
        self.solve(other).is_ok()
    }

    /// Row-major flattening into a single column.
    pub fn flatten(&self) -> Vec<Scalar> {
        self.data.clone()
    }

    pub fn entries_as_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.field.format(self.get(i, j))).collect())
            .collect()
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .entries_as_strings()
            .into_iter()
            .map(|r| format!("[{}]", r.join(",")))
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}
