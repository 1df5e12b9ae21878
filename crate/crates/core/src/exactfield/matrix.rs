// SPDX-License-Identifier: Apache-2.0
//! Dense matrices over a [`FieldSpec`] with exact Gaussian elimination.

use std::fmt;

use super::{axpy, is_zero_vec, FieldSpec, Scalar};
use crate::error::{Error, Result};

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        Self::scalar(field, n, &field.one())
    }

    /// `c * I_n`.
    pub fn scalar(field: FieldSpec, n: usize, c: &Scalar) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = c.clone();
        }
        m
    }

    pub fn from_fn(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    /// Builds a matrix from row vectors; all rows must have `cols` entries.
    pub fn from_rows(field: FieldSpec, cols: usize, rows: &[Vec<Scalar>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row has {} entries, expected {cols}",
                    r.len()
                )));
            }
            for s in r {
                if s.field() != field {
                    return Err(Error::FieldMismatch);
                }
            }
            data.extend(r.iter().cloned());
        }
        Ok(Matrix {
            field,
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(field: FieldSpec, rows: usize, cols: &[Vec<Scalar>]) -> Result<Self> {
        Ok(Self::from_rows(field, rows, cols)?.transpose())
    }

    /// Row-major data of length `rows * cols`.
    pub fn from_vec(field: FieldSpec, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if data.iter().any(|s| s.field() != field) {
            return Err(Error::FieldMismatch);
        }
        Ok(Matrix {
            field,
            rows,
            cols,
            data,
        })
    }

    /// Integer entries mapped into the field.
    pub fn from_ints(field: FieldSpec, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_fn(field, rows.len(), cols, |i, j| field.int(rows[i][j]))
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

    pub fn data(&self) -> &[Scalar] {
        &self.data
    }

    pub fn into_data(self) -> Vec<Scalar> {
        self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn col_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    fn check_same_shape(&self, o: &Matrix) -> Result<()> {
        if self.field != o.field {
            return Err(Error::FieldMismatch);
        }
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Ok(())
    }

    pub fn checked_mul(&self, o: &Matrix) -> Result<Matrix> {
        if self.field != o.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != o.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut out = Matrix::zeros(self.field, self.rows, o.cols);
        for i in 0..self.rows {
            let orow = &mut out.data[i * o.cols..(i + 1) * o.cols];
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                axpy(orow, a, &o.data[k * o.cols..(k + 1) * o.cols]);
            }
        }
        Ok(out)
    }

    /// Matrix product; panics on shape or field mismatch.
    pub fn mul(&self, o: &Matrix) -> Matrix {
        self.checked_mul(o).expect("matrix product")
    }

    pub fn checked_mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for {} columns",
                v.len(),
                self.cols
            )));
        }
        if v.iter().any(|s| s.field() != self.field) {
            return Err(Error::FieldMismatch);
        }
        Ok((0..self.rows)
            .map(|i| super::dot(self.row(i), v))
            .collect())
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.checked_mul_vec(v).expect("matrix-vector product")
    }

    pub fn checked_add(&self, o: &Matrix) -> Result<Matrix> {
        self.check_same_shape(o)?;
        Ok(Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        self.checked_add(o).expect("matrix sum")
    }

    pub fn checked_sub(&self, o: &Matrix) -> Result<Matrix> {
        self.check_same_shape(o)?;
        Ok(Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        self.checked_sub(o).expect("matrix difference")
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| c * a).collect(),
        }
    }

    pub fn neg(&self) -> Matrix {
        self.scale(&-self.field.one())
    }

    /// `[self, other]` as a Lie bracket `self*other - other*self`.
    pub fn commutator(&self, o: &Matrix) -> Matrix {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn trace(&self) -> Scalar {
        let mut t = self.field.zero();
        for i in 0..self.rows.min(self.cols) {
            t += self.get(i, i);
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.data)
    }

    pub fn is_identity(&self) -> bool {
        self.scalar_value().is_some_and(|c| c.is_one())
    }

    /// `Some(c)` when the matrix equals `c * I`.
    pub fn scalar_value(&self) -> Option<Scalar> {
        if !self.is_square() {
            return None;
        }
        let c = if self.rows == 0 {
            self.field.one()
        } else {
            self.get(0, 0).clone()
        };
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = self.get(i, j);
                if (i == j && *e != c) || (i != j && !e.is_zero()) {
                    return None;
                }
            }
        }
        Some(c)
    }

    /// `Some(c)` with `self = c * other`, when `other` is nonzero.
    pub fn proportional_to(&self, other: &Matrix) -> Option<Scalar> {
        if self.check_same_shape(other).is_err() {
            return None;
        }
        let k = other.data.iter().position(|s| !s.is_zero())?;
        let c = &self.data[k] / &other.data[k];
        (self == &other.scale(&c)).then_some(c)
    }

    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Matrix {
        Matrix::from_fn(self.field, r1 - r0, c1 - c0, |i, j| {
            self.get(r0 + i, c0 + j).clone()
        })
    }

    /// Writes `block` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }

    /// Block-diagonal matrix `diag(a, b)`.
    pub fn block_diag(a: &Matrix, b: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(a.field, a.rows + b.rows, a.cols + b.cols);
        m.set_block(0, 0, a);
        m.set_block(a.rows, a.cols, b);
        m
    }

    pub fn hstack(&self, o: &Matrix) -> Result<Matrix> {
        if self.rows != o.rows {
            return Err(Error::DimensionMismatch("hstack row counts".into()));
        }
        let mut m = Matrix::zeros(self.field, self.rows, self.cols + o.cols);
        m.set_block(0, 0, self);
        m.set_block(0, self.cols, o);
        Ok(m)
    }

    pub fn vstack(&self, o: &Matrix) -> Result<Matrix> {
        if self.cols != o.cols {
            return Err(Error::DimensionMismatch("vstack column counts".into()));
        }
        let mut data = self.data.clone();
        data.extend(o.data.iter().cloned());
        Ok(Matrix {
            field: self.field,
            rows: self.rows + o.rows,
            cols: self.cols,
            data,
        })
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            let pivot_row: Vec<Scalar> = m.row(r)[c..].to_vec();
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                let f = -f;
                let start = i * m.cols + c;
                axpy(&mut m.data[start..start + m.cols - c], &f, &pivot_row);
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space; each vector's first nonzero entry is 1.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        kernel_from_rref(&r, &pivots)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(self.clone());
        }
        let aug = self.hstack(&Matrix::identity(self.field, n))?;
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        Ok(r.submatrix(0, n, n, 2 * n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn det(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
        }
        let mut m = self.clone();
        let n = m.rows;
        let mut d = self.field.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(self.field.zero());
            };
            if p != c {
                m.swap_rows(p, c);
                d = -d;
            }
            let piv = m.get(c, c).clone();
            d *= &piv;
            let inv = piv.inv()?;
            let pivot_row: Vec<Scalar> = m.row(c)[c..].to_vec();
            for i in c + 1..n {
                let f = m.get(i, c) * &inv;
                if f.is_zero() {
                    continue;
                }
                let f = -f;
                let start = i * n + c;
                axpy(&mut m.data[start..start + n - c], &f, &pivot_row);
            }
        }
        Ok(d)
    }

    /// `self^k` for a square matrix.
    pub fn power(&self, k: u32) -> Matrix {
        let mut acc = Matrix::identity(self.field, self.rows);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            writeln!(f, "{}", super::fmt_vec(self.row(i)))?;
        }
        Ok(())
    }
}

fn kernel_from_rref(r: &Matrix, pivots: &[usize]) -> Vec<Vec<Scalar>> {
    let field = r.field;
    let mut is_pivot = vec![false; r.cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for free in (0..r.cols).filter(|&c| !is_pivot[c]) {
        let mut v = field.vec_zero(r.cols);
        v[free] = field.one();
        for (row, &p) in pivots.iter().enumerate() {
            v[p] = -r.get(row, free);
        }
        normalize_leading(&mut v);
        out.push(v);
    }
    out
}

/// Scales a nonzero vector so its first nonzero entry is 1.
pub(crate) fn normalize_leading(v: &mut [Scalar]) {
    if let Some(k) = v.iter().position(|s| !s.is_zero()) {
        if !v[k].is_one() {
            let inv = v[k].inv().expect("nonzero");
            for s in v.iter_mut() {
                *s = &*s * &inv;
            }
        }
    }
}

/// Full affine solution set of `A x = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Inconsistent,
    Solutions {
        particular: Vec<Scalar>,
        kernel: Vec<Vec<Scalar>>,
    },
}

impl Solution {
    pub fn particular(&self) -> Option<&[Scalar]> {
        match self {
            Solution::Inconsistent => None,
            Solution::Solutions { particular, .. } => Some(particular),
        }
    }

    pub fn kernel(&self) -> Option<&[Vec<Scalar>]> {
        match self {
            Solution::Inconsistent => None,
            Solution::Solutions { kernel, .. } => Some(kernel),
        }
    }
}

/// Solves `A x = b` by Gaussian elimination on the augmented matrix.
///
/// The particular solution sets every free variable to zero.
pub fn linear_solve(a: &Matrix, b: &[Scalar]) -> Result<Solution> {
    if b.len() != a.rows {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side has {} entries for {} rows",
            b.len(),
            a.rows
        )));
    }
    if b.iter().any(|s| s.field() != a.field) {
        return Err(Error::FieldMismatch);
    }
    let col = Matrix::from_vec(a.field, a.rows, 1, b.to_vec())?;
    let (r, pivots) = a.hstack(&col)?.rref();
    if pivots.last() == Some(&a.cols) {
        return Ok(Solution::Inconsistent);
    }
    let mut particular = a.field.vec_zero(a.cols);
    for (row, &p) in pivots.iter().enumerate() {
        particular[p] = r.get(row, a.cols).clone();
    }
    let coeffs = r.submatrix(0, r.rows, 0, a.cols);
    Ok(Solution::Solutions {
        particular,
        kernel: kernel_from_rref(&coeffs, &pivots),
    })
}

/// Incrementally built row echelon basis of a subspace of `F^dim`.
///
/// Every accepted vector is remembered, and [`Echelon::coordinates`]
/// expresses members of the span in terms of the accepted vectors.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: FieldSpec,
    dim: usize,
    rows: Vec<(usize, Vec<Scalar>, Vec<Scalar>)>,
    basis: Vec<Vec<Scalar>>,
}

impl Echelon {
    pub fn new(field: FieldSpec, dim: usize) -> Self {
        Echelon {
            field,
            dim,
            rows: Vec::new(),
            basis: Vec::new(),
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// The accepted (linearly independent) input vectors, in insertion order.
    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    /// Remainder after elimination and the combination used.
    fn reduce_tracked(&self, v: &[Scalar]) -> (Vec<Scalar>, Vec<Scalar>) {
        let mut w = v.to_vec();
        let mut combo = self.field.vec_zero(self.rows.len());
        for (k, (p, row, _)) in self.rows.iter().enumerate() {
            if w[*p].is_zero() {
                continue;
            }
            let c = w[*p].clone();
            axpy(&mut w, &-&c, row);
            combo[k] = c;
        }
        (w, combo)
    }

    /// Remainder of `v` modulo the span.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.reduce_tracked(v).0
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        is_zero_vec(&self.reduce(v))
    }

    /// Adds `v`; returns true when it enlarged the span.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.dim, "echelon vector length");
        let (mut w, combo) = self.reduce_tracked(v);
        let Some(p) = w.iter().position(|s| !s.is_zero()) else {
            return false;
        };
        let inv = w[p].inv().expect("nonzero pivot");
        for s in w.iter_mut() {
            *s = &*s * &inv;
        }
        let k = self.basis.len();
        let mut track = self.field.vec_zero(k + 1);
        track[k] = inv.clone();
        for (j, c) in combo.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let f = -(c * &inv);
            let t = &self.rows[j].2;
            for (i, tv) in t.iter().enumerate() {
                if !tv.is_zero() {
                    track[i] += &(&f * tv);
                }
            }
        }
        for (_, _, t) in self.rows.iter_mut() {
            t.push(self.field.zero());
        }
        self.rows.push((p, w, track));
        self.basis.push(v.to_vec());
        true
    }

    /// Coefficients of `v` in terms of [`Echelon::basis`], if `v` is in the span.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let (w, combo) = self.reduce_tracked(v);
        if !is_zero_vec(&w) {
            return None;
        }
        let mut out = self.field.vec_zero(self.basis.len());
        for (j, c) in combo.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            axpy(&mut out, c, &self.rows[j].2);
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_solve_is_unique() {
        let f = FieldSpec::Rationals;
        let b = vec![f.int(3), f.int(-2), f.int(5)];
        let sol = linear_solve(&Matrix::identity(f, 3), &b).unwrap();
        assert_eq!(
            sol,
            Solution::Solutions {
                particular: b,
                kernel: vec![]
            }
        );
    }

    #[test]
    fn zero_matrix_kernel_is_everything() {
        let f = FieldSpec::Prime(5);
        let sol = linear_solve(&Matrix::zeros(f, 2, 3), &f.vec_zero(2)).unwrap();
        assert_eq!(sol.kernel().unwrap().len(), 3);
        let sol = linear_solve(&Matrix::zeros(f, 2, 3), &[f.one(), f.zero()]).unwrap();
        assert_eq!(sol, Solution::Inconsistent);
    }

    #[test]
    fn rank_one_system_over_f3() {
        let f = FieldSpec::Prime(3);
        let a = Matrix::from_ints(f, &[&[1, 1], &[1, 1]]);
        let sol = linear_solve(&a, &[f.one(), f.one()]).unwrap();
        assert_eq!(sol.particular().unwrap(), &[f.int(1), f.int(0)]);
        assert_eq!(sol.kernel().unwrap(), &[vec![f.int(1), f.int(2)]]);
    }

    #[test]
    fn inverse_and_det() {
        let f = FieldSpec::Rationals;
        let a = Matrix::from_ints(f, &[&[2, 1], &[7, 4]]);
        assert_eq!(a.det().unwrap(), f.one());
        assert!(a.mul(&a.inverse().unwrap()).is_identity());
        let s = Matrix::from_ints(f, &[&[1, 2], &[2, 4]]);
        assert_eq!(s.inverse(), Err(Error::Singular));
        assert_eq!(s.det().unwrap(), f.zero());
    }

    #[test]
    fn echelon_coordinates() {
        let f = FieldSpec::Prime(7);
        let mut e = Echelon::new(f, 3);
        assert!(e.insert(&[f.int(1), f.int(2), f.int(0)]));
        assert!(e.insert(&[f.int(0), f.int(1), f.int(1)]));
        assert!(!e.insert(&[f.int(1), f.int(3), f.int(1)]));
        let v = [f.int(2), f.int(1), f.int(4)];
        let c = e.coordinates(&v).unwrap();
        let mut back = f.vec_zero(3);
        for (ci, b) in c.iter().zip(e.basis()) {
            axpy(&mut back, ci, b);
        }
        assert_eq!(back, v.to_vec());
        assert!(e.coordinates(&[f.int(0), f.int(0), f.int(1)]).is_none());
    }
}
