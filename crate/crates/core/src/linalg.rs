//! Small dense matrices, vectors and order-3 tensors over an exact field.
//!
//! Matrices act on column vectors: `M e_j = Σ_i M[i][j] e_i`. An element
//! `t = Σ t[j][k] e_j ⊗ e_k` of a two-fold tensor product is stored as the
//! matrix `t`, so `(A ⊗ B) t = A t Bᵀ`.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

pub type Vector = Vec<Scalar>;

pub fn zero_vector(field: FieldSpec, n: usize) -> Vector {
    vec![field.zero(); n]
}

pub fn basis_vector(field: FieldSpec, n: usize, i: usize) -> Vector {
    let mut v = zero_vector(field, n);
    v[i] = field.one();
    v
}

pub fn vadd(a: &[Scalar], b: &[Scalar]) -> Vector {
    assert_eq!(a.len(), b.len(), "vector length mismatch");
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vsub(a: &[Scalar], b: &[Scalar]) -> Vector {
    assert_eq!(a.len(), b.len(), "vector length mismatch");
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vscale(s: &Scalar, a: &[Scalar]) -> Vector {
    a.iter().map(|x| s * x).collect()
}

pub fn is_zero_vector(a: &[Scalar]) -> bool {
    a.iter().all(Scalar::is_zero)
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    pub fn scalar(field: FieldSpec, n: usize, s: &Scalar) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = s.clone();
        }
        m
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged matrix rows".into()));
        }
        if rows.iter().flatten().any(|s| !field.contains(s)) {
            return Err(Error::FieldMismatch(
                field,
                rows.iter().flatten().find(|s| !field.contains(s)).unwrap().field(),
            ));
        }
        Ok(Matrix {
            field,
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience constructor from integer rows.
    pub fn from_ints(field: FieldSpec, rows: &[&[i64]]) -> Matrix {
        let rows = rows.iter().map(|r| r.iter().map(|v| field.int(*v)).collect()).collect();
        Matrix::from_rows(field, rows).expect("rectangular integer matrix")
    }

    /// Matrix whose j-th column is `cols[j]`.
    pub fn from_columns(field: FieldSpec, n_rows: usize, cols: &[Vector]) -> Matrix {
        let mut m = Matrix::zeros(field, n_rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), n_rows, "column length mismatch");
            for (i, s) in c.iter().enumerate() {
                m[(i, j)] = s.clone();
            }
        }
        m
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> Vector {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = &out[(i, j)] + &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn checked_mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self.mul(other))
    }

    fn zip(&self, other: &Matrix, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Matrix {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "matrix shape mismatch"
        );
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| s * a).collect(),
        }
    }

    pub fn neg(&self) -> Matrix {
        self.scale(&-self.field.one())
    }

    pub fn apply(&self, v: &[Scalar]) -> Vector {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (j, x) in v.iter().enumerate() {
                    let a = &self[(i, j)];
                    if !a.is_zero() && !x.is_zero() {
                        acc = &acc + &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    /// `(A ⊗ B) t = A t Bᵀ` for a two-fold tensor stored as a matrix.
    pub fn tensor_apply(a: &Matrix, b: &Matrix, t: &Matrix) -> Matrix {
        a.mul(t).mul(&b.transpose())
    }

    /// `[[a, b], [c, d]]` as one block matrix.
    pub fn block(a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix) -> Matrix {
        assert_eq!(a.rows, b.rows);
        assert_eq!(c.rows, d.rows);
        assert_eq!(a.cols, c.cols);
        assert_eq!(b.cols, d.cols);
        let mut m = Matrix::zeros(a.field, a.rows + c.rows, a.cols + b.cols);
        for (blk, r0, c0) in [(a, 0, 0), (b, 0, a.cols), (c, a.rows, 0), (d, a.rows, a.cols)] {
            for i in 0..blk.rows {
                for j in 0..blk.cols {
                    m[(r0 + i, c0 + j)] = blk[(i, j)].clone();
                }
            }
        }
        m
    }

    pub fn block_diag(a: &Matrix, d: &Matrix) -> Matrix {
        Matrix::block(
            a,
            &Matrix::zeros(a.field, a.rows, d.cols),
            &Matrix::zeros(a.field, d.rows, a.cols),
            d,
        )
    }

    /// Reduced row echelon form with the pivot columns.
    fn echelon(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            let Some(p) = (row..m.rows).find(|&i| !m[(i, col)].is_zero()) else {
                continue;
            };
            for j in 0..m.cols {
                m.data.swap(row * m.cols + j, p * m.cols + j);
            }
            let inv = m[(row, col)].inv().expect("pivot is nonzero");
            for j in 0..m.cols {
                m[(row, j)] = &m[(row, j)] * &inv;
            }
            for i in 0..m.rows {
                if i != row && !m[(i, col)].is_zero() {
                    let f = m[(i, col)].clone();
                    for j in 0..m.cols {
                        let t = &f * &m[(row, j)];
                        m[(i, j)] = &m[(i, j)] - &t;
                    }
                }
            }
            pivots.push(col);
            row += 1;
            if row == m.rows {
                break;
            }
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.echelon().1.len()
    }

    pub fn determinant(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = self.field.one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&i| !m[(i, col)].is_zero()) else {
                return Ok(self.field.zero());
            };
            if p != col {
                for j in 0..n {
                    m.data.swap(col * n + j, p * n + j);
                }
                det = -det;
            }
            let pivot = m[(col, col)].clone();
            det = &det * &pivot;
            let inv = pivot.inv()?;
            for i in col + 1..n {
                if m[(i, col)].is_zero() {
                    continue;
                }
                let f = &m[(i, col)] * &inv;
                for j in col..n {
                    let t = &f * &m[(col, j)];
                    m[(i, j)] = &m[(i, j)] - &t;
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::NotInvertible);
        }
        let n = self.rows;
        let aug = Matrix::block(
            self,
            &Matrix::identity(self.field, n),
            &Matrix::zeros(self.field, 0, n),
            &Matrix::zeros(self.field, 0, n),
        );
        let (e, pivots) = aug.echelon();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::NotInvertible);
        }
        let mut inv = Matrix::zeros(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = e[(i, n + j)].clone();
            }
        }
        Ok(inv)
    }
}

/// An order-3 array `t[i][j][k]`, used for structure constants, coproducts and
/// elements of three-fold tensor products.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tensor3 {
    field: FieldSpec,
    dims: [usize; 3],
    data: Vec<Scalar>,
}

impl fmt::Debug for Tensor3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nz: Vec<String> = self
            .nonzero()
            .map(|(i, j, k, v)| format!("({i},{j},{k})={v}"))
            .collect();
        write!(f, "Tensor3{:?}{{{}}}", self.dims, nz.join(", "))
    }
}

impl std::ops::Index<(usize, usize, usize)> for Tensor3 {
    type Output = Scalar;
    fn index(&self, (i, j, k): (usize, usize, usize)) -> &Scalar {
        &self.data[(i * self.dims[1] + j) * self.dims[2] + k]
    }
}

impl std::ops::IndexMut<(usize, usize, usize)> for Tensor3 {
    fn index_mut(&mut self, (i, j, k): (usize, usize, usize)) -> &mut Scalar {
        &mut self.data[(i * self.dims[1] + j) * self.dims[2] + k]
    }
}

impl Tensor3 {
    pub fn zeros(field: FieldSpec, dims: [usize; 3]) -> Tensor3 {
        Tensor3 {
            field,
            dims,
            data: vec![field.zero(); dims[0] * dims[1] * dims[2]],
        }
    }

    pub fn cube(field: FieldSpec, n: usize) -> Tensor3 {
        Tensor3::zeros(field, [n, n, n])
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dims(&self) -> [usize; 3] {
        self.dims
    }

    pub fn add_at(&mut self, idx: (usize, usize, usize), v: &Scalar) {
        if !v.is_zero() {
            self[idx] = &self[idx] + v;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (usize, usize, usize, &Scalar)> {
        let [_, b, c] = self.dims;
        self.data
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(move |(idx, v)| (idx / (b * c), (idx / c) % b, idx % c, v))
    }

    pub fn add(&self, other: &Tensor3) -> Tensor3 {
        assert_eq!(self.dims, other.dims, "tensor shape mismatch");
        Tensor3 {
            field: self.field,
            dims: self.dims,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Tensor3) -> Tensor3 {
        assert_eq!(self.dims, other.dims, "tensor shape mismatch");
        Tensor3 {
            field: self.field,
            dims: self.dims,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    /// The slice `t[i][·][·]` as a matrix.
    pub fn slice(&self, i: usize) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.dims[1], self.dims[2]);
        for j in 0..self.dims[1] {
            for k in 0..self.dims[2] {
                m[(j, k)] = self[(i, j, k)].clone();
            }
        }
        m
    }

    /// `(A ⊗ B ⊗ C) t`.
    pub fn apply3(&self, a: &Matrix, b: &Matrix, c: &Matrix) -> Tensor3 {
        let mut out = Tensor3::zeros(self.field, [a.rows(), b.rows(), c.rows()]);
        for (i, j, k, v) in self.nonzero() {
            for x in 0..a.rows() {
                let ax = &a[(x, i)] * v;
                if ax.is_zero() {
                    continue;
                }
                for y in 0..b.rows() {
                    let axy = &ax * &b[(y, j)];
                    if axy.is_zero() {
                        continue;
                    }
                    for z in 0..c.rows() {
                        out.add_at((x, y, z), &(&axy * &c[(z, k)]));
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_roundtrip() {
        let f = FieldSpec::Rational;
        let m = Matrix::from_ints(f, &[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(f, 2));
        assert_eq!(m.determinant().unwrap(), f.one());
    }

    #[test]
    fn singular_matrix() {
        let f = FieldSpec::Prime(5);
        let m = Matrix::from_ints(f, &[&[1, 2], &[2, 4]]);
        assert_eq!(m.inverse(), Err(Error::NotInvertible));
        assert!(m.determinant().unwrap().is_zero());
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn tensor_apply_matches_definition() {
        // (A ⊗ B)(e_0 ⊗ e_1) = A e_0 ⊗ B e_1
        let f = FieldSpec::Rational;
        let a = Matrix::from_ints(f, &[&[1, 2], &[3, 4]]);
        let b = Matrix::from_ints(f, &[&[0, 5], &[6, 7]]);
        let mut t = Matrix::zeros(f, 2, 2);
        t[(0, 1)] = f.one();
        let out = Matrix::tensor_apply(&a, &b, &t);
        let ae0 = a.column(0);
        let be1 = b.column(1);
        for j in 0..2 {
            for k in 0..2 {
                assert_eq!(out[(j, k)], &ae0[j] * &be1[k]);
            }
        }
    }

    #[test]
    fn block_layout() {
        let f = FieldSpec::Prime(7);
        let i = Matrix::identity(f, 1);
        let z = Matrix::zeros(f, 1, 1);
        let m = Matrix::block(&z, &i.neg(), &i, &z);
        assert_eq!(m, Matrix::from_ints(f, &[&[0, -1], &[1, 0]]));
    }
}
