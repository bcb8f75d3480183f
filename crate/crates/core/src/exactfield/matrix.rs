//! Dense matrices, row reduction, and subspaces in reduced row-echelon form.

use std::fmt;

use super::field::{Fe, Field};
use super::rng::SeededRng;

/// Row-major dense matrix over a finite field.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![Fe::ZERO; rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Fe::ONE);
        }
        m
    }

    pub fn from_data(field: &Field, rows: usize, cols: usize, data: Vec<Fe>) -> Matrix {
        assert_eq!(data.len(), rows * cols, "entry count must be rows*cols");
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    pub fn from_rows(field: &Field, cols: usize, rows: &[Vec<Fe>]) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend_from_slice(r);
        }
        Matrix::from_data(field, rows.len(), cols, data)
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(field: &Field, rows: usize, cols: &[Vec<Fe>]) -> Matrix {
        let mut m = Matrix::zeros(field, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, &x) in c.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    pub fn from_fn(
        field: &Field,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Fe,
    ) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix::from_data(field, rows, cols, data)
    }

    pub fn random(field: &Field, rows: usize, cols: usize, rng: &mut SeededRng) -> Matrix {
        Matrix::from_fn(field, rows, cols, |_, _| field.random(rng))
    }

    pub fn field(&self) -> &Field {
        &self.field
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

    pub fn data(&self) -> &[Fe] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Fe {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Fe) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Fe] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [Fe] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<Fe> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<Fe>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| self.get(i, j) == if i == j { Fe::ONE } else { Fe::ZERO })
            })
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(&self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                let src = other.row(l);
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                axpy(f, dst, a, src);
            }
        }
        out
    }

    /// `M v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[Fe]) -> Vec<Fe> {
        assert_eq!(self.cols, v.len());
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Fe::ZERO, |acc, (&a, &b)| f.mul_add(acc, a, b))
            })
            .collect()
    }

    /// `v^T M` for a row vector `v`.
    pub fn vec_mul(&self, v: &[Fe]) -> Vec<Fe> {
        assert_eq!(self.rows, v.len());
        let f = &self.field;
        let mut out = vec![Fe::ZERO; self.cols];
        for (i, &a) in v.iter().enumerate() {
            if !a.is_zero() {
                axpy(f, &mut out, a, self.row(i));
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Matrix::from_data(f, self.rows, self.cols, data)
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.sub(a, b))
            .collect();
        Matrix::from_data(f, self.rows, self.cols, data)
    }

    pub fn scale(&self, c: Fe) -> Matrix {
        let f = &self.field;
        let data = self.data.iter().map(|&a| f.mul(a, c)).collect();
        Matrix::from_data(f, self.rows, self.cols, data)
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, c: Fe, other: &Matrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        if c.is_zero() {
            return;
        }
        let f = self.field.clone();
        axpy(&f, &mut self.data, c, &other.data);
    }

    /// Entry-wise image under a field map (used for scalar extension).
    pub fn map_entries(&self, target: &Field, g: impl Fn(Fe) -> Fe) -> Matrix {
        Matrix::from_data(
            target,
            self.rows,
            self.cols,
            self.data.iter().map(|&a| g(a)).collect(),
        )
    }

    /// Put `self` in reduced row-echelon form; returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(piv) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, piv);
            let inv = f.inv(self.get(r, c));
            for x in self.row_mut(r) {
                *x = f.mul(*x, inv);
            }
            let pivot_row = self.row(r).to_vec();
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c);
                if !factor.is_zero() {
                    let neg = f.neg(factor);
                    axpy(&f, self.row_mut(i), neg, &pivot_row);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let piv = m.rref_in_place();
        (m, piv)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : M x = 0}`; `cols - rank` independent vectors.
    pub fn kernel(&self) -> Vec<Vec<Fe>> {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![Fe::ZERO; self.cols];
                v[free] = Fe::ONE;
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = f.neg(r.get(row, free));
                }
                v
            })
            .collect()
    }

    /// Basis of `{y : y^T M = 0}`.
    pub fn left_kernel(&self) -> Vec<Vec<Fe>> {
        self.transpose().kernel()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let f = &self.field;
        if n == 0 {
            return Some(self.clone());
        }
        let mut aug = Matrix::zeros(f, n, 2 * n);
        for i in 0..n {
            aug.row_mut(i)[..n].copy_from_slice(self.row(i));
            aug.set(i, n + i, Fe::ONE);
        }
        let piv = aug.rref_in_place();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        Some(Matrix::from_fn(f, n, n, |i, j| aug.get(i, n + j)))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// One solution of `M x = b`, if any.
    pub fn solve(&self, b: &[Fe]) -> Option<Vec<Fe>> {
        assert_eq!(b.len(), self.rows);
        let f = &self.field;
        let mut aug = Matrix::zeros(f, self.rows, self.cols + 1);
        for i in 0..self.rows {
            aug.row_mut(i)[..self.cols].copy_from_slice(self.row(i));
            aug.set(i, self.cols, b[i]);
        }
        let piv = aug.rref_in_place();
        if piv.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Fe::ZERO; self.cols];
        for (r, &p) in piv.iter().enumerate() {
            x[p] = aug.get(r, self.cols);
        }
        Some(x)
    }

    /// Vectorization, column-major (`vec(M)[j*rows + i] = M[i][j]`).
    pub fn vectorize(&self) -> Vec<Fe> {
        let mut v = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                v.push(self.get(i, j));
            }
        }
        v
    }

    pub fn unvectorize(field: &Field, rows: usize, cols: usize, v: &[Fe]) -> Matrix {
        assert_eq!(v.len(), rows * cols);
        Matrix::from_fn(field, rows, cols, |i, j| v[j * rows + i])
    }
}

/// `dst += c * src`
#[inline]
pub fn axpy(f: &Field, dst: &mut [Fe], c: Fe, src: &[Fe]) {
    debug_assert_eq!(dst.len(), src.len());
    if c.is_zero() {
        return;
    }
    if c == Fe::ONE {
        for (d, &s) in dst.iter_mut().zip(src) {
            *d = f.add(*d, s);
        }
    } else {
        for (d, &s) in dst.iter_mut().zip(src) {
            if !s.is_zero() {
                *d = f.add(*d, f.mul(c, s));
            }
        }
    }
}

pub fn vec_is_zero(v: &[Fe]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn vec_add(f: &Field, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    a.iter().zip(b).map(|(&x, &y)| f.add(x, y)).collect()
}

pub fn vec_sub(f: &Field, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    a.iter().zip(b).map(|(&x, &y)| f.sub(x, y)).collect()
}

pub fn vec_scale(f: &Field, c: Fe, a: &[Fe]) -> Vec<Fe> {
    a.iter().map(|&x| f.mul(c, x)).collect()
}

pub fn dot(f: &Field, a: &[Fe], b: &[Fe]) -> Fe {
    a.iter()
        .zip(b)
        .fold(Fe::ZERO, |acc, (&x, &y)| f.mul_add(acc, x, y))
}

pub fn unit_vector(n: usize, i: usize) -> Vec<Fe> {
    let mut v = vec![Fe::ZERO; n];
    v[i] = Fe::ONE;
    v
}

/// Incrementally built semi-echelon basis. Each stored row is normalized to
/// 1 at its pivot and has zeros at the pivots of all earlier rows.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    dim: usize,
    rows: Vec<Vec<Fe>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(field: &Field, dim: usize) -> Echelon {
        Echelon {
            field: field.clone(),
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn reduce(&self, v: &[Fe]) -> Vec<Fe> {
        let f = &self.field;
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = w[p];
            if !c.is_zero() {
                axpy(f, &mut w, f.neg(c), row);
            }
        }
        w
    }

    pub fn contains(&self, v: &[Fe]) -> bool {
        vec_is_zero(&self.reduce(v))
    }

    /// Adds `v` if independent; returns whether it was added.
    pub fn insert(&mut self, v: &[Fe]) -> bool {
        assert_eq!(v.len(), self.dim);
        let f = self.field.clone();
        let mut w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = f.inv(w[p]);
        for x in w.iter_mut() {
            *x = f.mul(*x, inv);
        }
        self.rows.push(w);
        self.pivots.push(p);
        true
    }

    pub fn into_subspace(self) -> Subspace {
        Subspace::from_vectors(&self.field, self.dim, self.rows)
    }
}

/// A subspace of `F^n`, held as its reduced row-echelon basis so that equal
/// subspaces compare equal bit for bit.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    basis: Matrix,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subspace(dim {} in {}, rows {:?})",
            self.dim(),
            self.ambient_dim(),
            self.basis.row_vectors()
        )
    }
}

impl Subspace {
    pub fn from_vectors<I>(field: &Field, ambient: usize, vectors: I) -> Subspace
    where
        I: IntoIterator<Item = Vec<Fe>>,
    {
        let rows: Vec<Vec<Fe>> = vectors.into_iter().collect();
        let m = Matrix::from_rows(field, ambient, &rows);
        let (r, pivots) = m.rref();
        let basis = Matrix::from_fn(field, pivots.len(), ambient, |i, j| r.get(i, j));
        Subspace { basis, pivots }
    }

    pub fn zero(field: &Field, ambient: usize) -> Subspace {
        Subspace {
            basis: Matrix::zeros(field, 0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: &Field, ambient: usize) -> Subspace {
        Subspace {
            basis: Matrix::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn field(&self) -> &Field {
        self.basis.field()
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn vectors(&self) -> Vec<Vec<Fe>> {
        self.basis.row_vectors()
    }

    pub fn vector(&self, i: usize) -> &[Fe] {
        self.basis.row(i)
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Standard basis positions not used as pivots: a complement basis.
    pub fn complement_indices(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient_dim()];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient_dim()).filter(|&i| !is_pivot[i]).collect()
    }

    /// Remainder of `v` after eliminating every pivot coordinate.
    pub fn reduce(&self, v: &[Fe]) -> Vec<Fe> {
        let f = self.field();
        let mut w = v.to_vec();
        for (r, &p) in self.pivots.iter().enumerate() {
            let c = w[p];
            if !c.is_zero() {
                axpy(f, &mut w, f.neg(c), self.basis.row(r));
            }
        }
        w
    }

    pub fn contains(&self, v: &[Fe]) -> bool {
        vec_is_zero(&self.reduce(v))
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        (0..other.dim()).all(|i| self.contains(other.vector(i)))
    }

    /// Coordinates relative to the echelon basis (the entries at the pivots).
    pub fn coords(&self, v: &[Fe]) -> Option<Vec<Fe>> {
        if self.contains(v) {
            Some(self.pivots.iter().map(|&p| v[p]).collect())
        } else {
            None
        }
    }

    /// Vector with the given coordinates.
    pub fn combine(&self, coords: &[Fe]) -> Vec<Fe> {
        self.basis.vec_mul(coords)
    }

    /// Image in `F^n / self`, in coordinates of the complement basis.
    pub fn quotient_coords(&self, v: &[Fe]) -> Vec<Fe> {
        let w = self.reduce(v);
        self.complement_indices().into_iter().map(|i| w[i]).collect()
    }

    /// Matrix of the projection onto the quotient (`(n-r) x n`).
    pub fn quotient_projection(&self) -> Matrix {
        let n = self.ambient_dim();
        let f = self.field();
        let cols: Vec<Vec<Fe>> = (0..n)
            .map(|j| self.quotient_coords(&unit_vector(n, j)))
            .collect();
        Matrix::from_cols(f, n - self.dim(), &cols)
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim(), other.ambient_dim());
        let vs = self.vectors().into_iter().chain(other.vectors());
        Subspace::from_vectors(self.field(), self.ambient_dim(), vs)
    }

    /// Intersection via the Zassenhaus construction: echelonize
    /// `[[U, U], [W, 0]]`; rows with zero left half span `U ∩ W`.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        let n = self.ambient_dim();
        assert_eq!(n, other.ambient_dim());
        let f = self.field();
        let mut rows = Vec::with_capacity(self.dim() + other.dim());
        for v in self.vectors() {
            let mut r = v.clone();
            r.extend_from_slice(&v);
            rows.push(r);
        }
        for v in other.vectors() {
            let mut r = v;
            r.extend(std::iter::repeat(Fe::ZERO).take(n));
            rows.push(r);
        }
        let (m, pivots) = Matrix::from_rows(f, 2 * n, &rows).rref();
        let inter = pivots
            .iter()
            .enumerate()
            .filter(|(_, &p)| p >= n)
            .map(|(r, _)| m.row(r)[n..].to_vec());
        Subspace::from_vectors(f, n, inter)
    }

    /// `{x : <x, v> = 0 for all v in self}`
    pub fn orthogonal(&self) -> Subspace {
        let n = self.ambient_dim();
        Subspace::from_vectors(self.field(), n, self.basis.kernel())
    }

    pub fn map_entries(&self, target: &Field, g: impl Fn(Fe) -> Fe) -> Subspace {
        Subspace::from_vectors(
            target,
            self.ambient_dim(),
            self.basis.map_entries(target, g).row_vectors(),
        )
    }

    pub fn random_vector(&self, rng: &mut SeededRng) -> Vec<Fe> {
        let f = self.field();
        let c: Vec<Fe> = (0..self.dim()).map(|_| f.random(rng)).collect();
        self.combine(&c)
    }
}
