use std::fmt;

use super::{Const, Differential, Field, Ring, UPoly};

/// Dense row-major matrix over a ring.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

/// Reduced row-echelon form with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref<T> {
    pub matrix: Matrix<T>,
    pub pivots: Vec<usize>,
}

impl<T: Ring> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length mismatch");
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = T::one();
        }
        m
    }

    /// Matrix with a single `1` at `(i, j)`.
    pub fn unit(rows: usize, cols: usize, i: usize, j: usize) -> Self {
        let mut m = Matrix::zeros(rows, cols);
        m.set(i, j, T::one());
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        Matrix {
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn from_cols(cols: &[Vec<T>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, |v| v.len());
        Matrix::from_fn(r, c, |i, j| cols[j][i].clone())
    }

    pub fn column_vector(v: Vec<T>) -> Self {
        let n = v.len();
        Matrix::new(n, 1, v)
    }

    pub fn diag(d: &[T]) -> Self {
        let n = d.len();
        Matrix::from_fn(n, n, |i, j| if i == j { d[i].clone() } else { T::zero() })
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

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, i: usize) -> Vec<T> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn to_cols(&self) -> Vec<Vec<T>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<U: Ring>(&self, f: impl Fn(&T) -> Option<U>) -> Option<Matrix<U>> {
        let mut data = Vec::with_capacity(self.data.len());
        for v in &self.data {
            data.push(f(v)?);
        }
        Some(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn add(&self, o: &Self) -> Self {
        assert!(self.rows == o.rows && self.cols == o.cols, "shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert!(self.rows == o.rows && self.cols == o.cols, "shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.map(|v| v.neg())
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|v| s.mul(v))
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "shape mismatch in product");
        let mut out: Matrix<T> = Matrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * o.cols + j;
                    out.data[idx] = out.data[idx].add(&a.mul(b));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "shape mismatch in product");
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for (k, x) in v.iter().enumerate() {
                    let a = self.get(i, k);
                    if !a.is_zero() && !x.is_zero() {
                        acc = acc.add(&a.mul(x));
                    }
                }
                acc
            })
            .collect()
    }

    /// `[self, o] = self·o − o·self`.
    pub fn bracket(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn trace(&self) -> T {
        let mut acc = T::zero();
        for i in 0..self.rows.min(self.cols) {
            acc = acc.add(self.get(i, i));
        }
        acc
    }

    pub fn kron(&self, o: &Self) -> Self {
        Matrix::from_fn(self.rows * o.rows, self.cols * o.cols, |i, j| {
            self.get(i / o.rows, j / o.cols)
                .mul(o.get(i % o.rows, j % o.cols))
        })
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Self) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j).clone());
            }
        }
    }

    pub fn select_cols(&self, cols: &[usize]) -> Self {
        Matrix::from_fn(self.rows, cols.len(), |i, j| self.get(i, cols[j]).clone())
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        Matrix::from_fn(rows.len(), self.cols, |i, j| self.get(rows[i], j).clone())
    }

    pub fn hstack(&self, o: &Self) -> Self {
        assert_eq!(self.rows, o.rows, "row count mismatch");
        Matrix::from_fn(self.rows, self.cols + o.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                o.get(i, j - self.cols).clone()
            }
        })
    }

    pub fn vstack(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.cols, "column count mismatch");
        let mut data = self.data.clone();
        data.extend(o.data.iter().cloned());
        Matrix {
            rows: self.rows + o.rows,
            cols: self.cols,
            data,
        }
    }

    /// Block-diagonal matrix.
    pub fn block_diag(blocks: &[Self]) -> Self {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = Matrix::zeros(r, c);
        let (mut i, mut j) = (0, 0);
        for b in blocks {
            m.set_block(i, j, b);
            i += b.rows;
            j += b.cols;
        }
        m
    }

    /// Row-major flattening.
    pub fn vec_rows(&self) -> Vec<T> {
        self.data.clone()
    }

    pub fn from_vec_rows(rows: usize, cols: usize, v: &[T]) -> Self {
        Matrix::new(rows, cols, v.to_vec())
    }

    /// Coefficients `c₀..c_n` of `det(λ·Id − self)` (Faddeev–LeVerrier).
    pub fn char_poly_coeffs(&self) -> Vec<T>
    where
        T: Field,
    {
        assert!(self.is_square(), "char_poly needs a square matrix");
        let n = self.rows;
        let mut coeffs = vec![T::zero(); n + 1];
        coeffs[n] = T::one();
        let id = Matrix::identity(n);
        let mut m = Matrix::zeros(n, n);
        for k in 1..=n {
            m = self.mul(&m).add(&id.scale(&coeffs[n - k + 1]));
            let am = self.mul(&m);
            coeffs[n - k] = am.trace().neg().div(&T::from_int(k as i64));
        }
        coeffs
    }
}

impl<T: Field> Matrix<T> {
    fn pivot_row(&self, r: usize, c: usize) -> Option<usize> {
        let mut best: Option<(usize, usize)> = None;
        for i in r..self.rows {
            let v = self.get(i, c);
            if v.is_zero() {
                continue;
            }
            let w = v.weight();
            if best.is_none_or(|(_, bw)| w < bw) {
                best = Some((i, w));
            }
        }
        best.map(|(i, _)| i)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Gauss–Jordan elimination; pivots are chosen with minimal weight.
    pub fn rref(&self) -> Rref<T> {
        self.rref_limit(self.cols)
    }

    /// Gauss–Jordan restricted to pivots in the first `limit` columns.
    pub fn rref_limit(&self, limit: usize) -> Rref<T> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..limit.min(self.cols) {
            if r == m.rows {
                break;
            }
            let Some(p) = m.pivot_row(r, c) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv();
            for j in c..m.cols {
                let v = m.get(r, j).mul(&inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let pv = m.get(r, j);
                    if pv.is_zero() {
                        continue;
                    }
                    let v = m.get(i, j).sub(&f.mul(pv));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the right kernel `{v : self·v = 0}`.
    pub fn kernel(&self) -> Vec<Vec<T>> {
        let Rref { matrix, pivots } = self.rref();
        let mut out = Vec::new();
        for f in 0..self.cols {
            if pivots.contains(&f) {
                continue;
            }
            let mut v = vec![T::zero(); self.cols];
            v[f] = T::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = matrix.get(i, f).neg();
            }
            out.push(v);
        }
        out
    }

    /// Basis of the left kernel `{w : w·self = 0}`.
    pub fn left_kernel(&self) -> Vec<Vec<T>> {
        self.transpose().kernel()
    }

    /// Some solution of `self·x = b`, or `None` if inconsistent.
    pub fn solve(&self, b: &[T]) -> Option<Vec<T>> {
        assert_eq!(b.len(), self.rows, "rhs length mismatch");
        let aug = self.hstack(&Matrix::column_vector(b.to_vec()));
        let Rref { matrix, pivots } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![T::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = matrix.get(i, self.cols).clone();
        }
        Some(x)
    }

    /// Solves `self·X = B` column by column.
    pub fn solve_matrix(&self, b: &Matrix<T>) -> Option<Matrix<T>> {
        let aug = self.hstack(b);
        let Rref { matrix, pivots } = aug.rref_limit(self.cols);
        for i in pivots.len()..matrix.rows {
            if (self.cols..matrix.cols).any(|j| !matrix.get(i, j).is_zero()) {
                return None;
            }
        }
        let mut x = Matrix::zeros(self.cols, b.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(p, j, matrix.get(i, self.cols + j).clone());
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let x = self.solve_matrix(&Matrix::identity(n))?;
        if self.rref_limit(n).pivots.len() < n {
            return None;
        }
        Some(x)
    }

    pub fn det(&self) -> T {
        assert!(self.is_square(), "det needs a square matrix");
        let mut m = self.clone();
        let n = self.rows;
        let mut acc = T::one();
        for c in 0..n {
            let Some(p) = m.pivot_row(c, c) else {
                return T::zero();
            };
            if p != c {
                m.swap_rows(c, p);
                acc = acc.neg();
            }
            let pv = m.get(c, c).clone();
            acc = acc.mul(&pv);
            let inv = pv.inv();
            for i in c + 1..n {
                let f = m.get(i, c).mul(&inv);
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = m.get(i, j).sub(&f.mul(m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        acc
    }

    /// Indices of a maximal set of independent columns, greedy left to right.
    pub fn independent_cols(&self) -> Vec<usize> {
        self.rref().pivots
    }
}

impl<T: Differential> Matrix<T> {
    pub fn derivative(&self) -> Self {
        self.map(|v| v.derivative())
    }
}

impl Matrix<Const> {
    /// `det(λ·Id − self)` as a polynomial in `λ`.
    pub fn char_poly(&self) -> UPoly {
        UPoly::new(self.char_poly_coeffs())
    }

    /// `p(self)` by Horner's rule.
    pub fn eval_poly(&self, p: &UPoly) -> Self {
        let n = self.rows;
        let mut acc = Matrix::zeros(n, n);
        let id = Matrix::identity(n);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self).add(&id.scale(c));
        }
        acc
    }
}

impl<T: Ring> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Reduced row-echelon basis of the span of `vecs`.
pub fn span_basis<T: Field>(vecs: &[Vec<T>], dim: usize) -> Vec<Vec<T>> {
    if vecs.is_empty() {
        return Vec::new();
    }
    let m = Matrix::from_rows(vecs.to_vec());
    debug_assert_eq!(m.cols(), dim);
    let r = m.rref();
    (0..r.pivots.len()).map(|i| r.matrix.row(i)).collect()
}

/// Whether `v` lies in the span of `basis`.
pub fn in_span<T: Field>(basis: &[Vec<T>], v: &[T]) -> bool {
    if v.iter().all(|x| x.is_zero()) {
        return true;
    }
    if basis.is_empty() {
        return false;
    }
    Matrix::from_cols(basis).solve(v).is_some()
}

/// Dimension of the span of `vecs`.
pub fn span_rank<T: Field>(vecs: &[Vec<T>]) -> usize {
    if vecs.is_empty() {
        return 0;
    }
    Matrix::from_rows(vecs.to_vec()).rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{q, RatFunc, Q};

    fn qm(rows: &[&[i64]]) -> Matrix<Q> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| q(v, 1)).collect())
                .collect(),
        )
    }

    #[test]
    fn kernel_of_zero_matrix() {
        assert_eq!(qm(&[&[0, 0], &[0, 0]]).kernel().len(), 2);
    }

    #[test]
    fn kernel_of_identity() {
        assert!(qm(&[&[1, 0], &[0, 1]]).kernel().is_empty());
    }

    #[test]
    fn kernel_rank_one() {
        let k = qm(&[&[1, 1], &[2, 2]]).kernel();
        assert_eq!(k, vec![vec![q(-1, 1), q(1, 1)]]);
    }

    #[test]
    fn inverse_and_det() {
        let m = qm(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert_eq!(m.det(), q(18, 1));
        assert!(qm(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn char_poly_small() {
        let id = Matrix::<Const>::identity(2);
        assert_eq!(id.char_poly(), UPoly::from_ints(&[1, -2, 1]));
        let d = Matrix::diag(&[Const::int(1), Const::int(2)]);
        assert_eq!(d.char_poly(), UPoly::from_ints(&[2, -3, 1]));
    }

    #[test]
    fn rational_function_inverse() {
        let x = RatFunc::x();
        let m = Matrix::from_rows(vec![
            vec![x.clone(), RatFunc::one()],
            vec![RatFunc::zero(), x.inv()],
        ]);
        assert!(m.mul(&m.inverse().unwrap()).is_identity());
    }
}
