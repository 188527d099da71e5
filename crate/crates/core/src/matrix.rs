//! Dense matrices and the vector newtypes used across the crate.

use std::ops::{Index, IndexMut};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> DenseMatrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<S>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::MalformedMatrix(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::MalformedMatrix("ragged rows".into()));
        }
        Ok(Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
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

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[S] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, c: &S) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.clone() * c.clone()).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.clone() - b.clone())
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::MalformedInput(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = &self[(i, l)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(l, j)];
                    if !b.is_zero() {
                        let t = a.clone() * b.clone();
                        out[(i, j)] += t;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[S]) -> Result<Vec<S>> {
        if v.len() != self.cols {
            return Err(Error::MalformedInput(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = S::zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc += a.clone() * x.clone();
                    }
                }
                acc
            })
            .collect())
    }

    /// Submatrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| {
            self[(rows[i], cols[j])].clone()
        })
    }

    /// Largest entrywise `|a - b|`, as `S`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<S> {
        self.check_same_shape(other)?;
        let mut best = S::zero();
        for (a, b) in self.data.iter().zip(&other.data) {
            let d = (a.clone() - b.clone()).magnitude();
            if d > best {
                best = d;
            }
        }
        Ok(best)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self
                .data
                .iter()
                .zip(&other.data)
                .all(|(a, b)| a.approx_eq(b, tol))
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|i| (i + 1..self.cols).all(|j| self[(i, j)].approx_eq(&self[(j, i)], tol)))
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> DenseMatrix<T> {
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn to_f64(&self) -> DenseMatrix<f64> {
        self.map(Scalar::to_f64)
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::MalformedInput(format!(
                "shape mismatch: {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }
}

impl<S> Index<(usize, usize)> for DenseMatrix<S> {
    type Output = S;

    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S> IndexMut<(usize, usize)> for DenseMatrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}

/// A square matrix with `M[p][q] == M[q][p]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix<S>(DenseMatrix<S>);

impl<S: Scalar> SymmetricMatrix<S> {
    /// Checks squareness and symmetry (exactly, or within `tol` in float mode).
    pub fn new(m: DenseMatrix<S>, tol: f64) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::MalformedMatrix(format!(
                "{}x{} is not square",
                m.rows(),
                m.cols()
            )));
        }
        if !m.is_symmetric(tol) {
            return Err(Error::MalformedMatrix("matrix is not symmetric".into()));
        }
        Ok(Self(m))
    }

    pub fn from_rows(rows: Vec<Vec<S>>, tol: f64) -> Result<Self> {
        Self::new(DenseMatrix::from_rows(rows)?, tol)
    }

    /// Caller guarantees symmetry.
    pub(crate) fn from_dense_unchecked(m: DenseMatrix<S>) -> Self {
        debug_assert!(m.is_square());
        Self(m)
    }

    /// The unit-conductance complete graph on `k` vertices: `-(k-1)` on the
    /// diagonal, `1` elsewhere. For `k = 3` this is the standard boundary
    /// Laplacian of the gasket.
    pub fn complete_graph(k: usize) -> Self {
        let off = S::one();
        let diag = -S::from_i64(k as i64 - 1);
        Self(DenseMatrix::from_fn(k, k, |i, j| {
            if i == j {
                diag.clone()
            } else {
                off.clone()
            }
        }))
    }

    /// Laplacian of a triangle with conductances `c01`, `c02`, `c12`.
    pub fn triangle(c01: S, c02: S, c12: S) -> Self {
        let rows = vec![
            vec![-(c01.clone() + c02.clone()), c01.clone(), c02.clone()],
            vec![c01.clone(), -(c01 + c12.clone()), c12.clone()],
            vec![c02.clone(), c12.clone(), -(c02 + c12)],
        ];
        Self(DenseMatrix::from_rows(rows).expect("3x3"))
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn dense(&self) -> &DenseMatrix<S> {
        &self.0
    }

    pub fn into_dense(self) -> DenseMatrix<S> {
        self.0
    }

    pub fn scale(&self, c: &S) -> Self {
        Self(self.0.scale(c))
    }

    /// Principal submatrix on `ids`.
    pub fn principal(&self, ids: &[usize]) -> Self {
        Self(self.0.select(ids, ids))
    }

    /// `(p, q)` with `p != q` and a strictly positive entry.
    pub fn has_positive_edge(&self, p: usize, q: usize, tol: f64) -> bool {
        p != q && self[(p, q)].sign_within(tol) == std::cmp::Ordering::Greater
    }

    pub fn to_f64(&self) -> SymmetricMatrix<f64> {
        SymmetricMatrix(self.0.to_f64())
    }
}

impl<S> Index<(usize, usize)> for SymmetricMatrix<S> {
    type Output = S;

    fn index(&self, idx: (usize, usize)) -> &S {
        &self.0[idx]
    }
}

/// An element of `l(V)`: one value per vertex id.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexFunction<S>(pub Vec<S>);

impl<S: Scalar> VertexFunction<S> {
    pub fn constant(len: usize, c: S) -> Self {
        Self(vec![c; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[S] {
        &self.0
    }

    pub fn is_constant(&self, tol: f64) -> bool {
        match self.0.first() {
            None => true,
            Some(first) => self.0.iter().all(|x| x.approx_eq(first, tol)),
        }
    }
}

impl<S> Index<usize> for VertexFunction<S> {
    type Output = S;

    fn index(&self, i: usize) -> &S {
        &self.0[i]
    }
}

/// Per-cell resistance weights `r_i > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector<S>(Vec<S>);

impl<S: Scalar> WeightVector<S> {
    pub fn new(weights: Vec<S>) -> Result<Self> {
        // Negated so NaN is rejected too.
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if let Some((i, w)) = weights.iter().enumerate().find(|(_, w)| !(**w > S::zero())) {
            return Err(Error::InvalidParameter(format!(
                "weight r_{i} = {} violates r_i > 0",
                w.to_text()
            )));
        }
        Ok(Self(weights))
    }

    pub fn uniform(len: usize, r: S) -> Result<Self> {
        Self::new(vec![r; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[S] {
        &self.0
    }

    pub fn scale(&self, t: &S) -> Result<Self> {
        Self::new(self.0.iter().map(|w| w.clone() * t.clone()).collect())
    }
}

/// Text form of a matrix: declared dimensions plus row-major canonical entries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDoc {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<String>,
}

impl MatrixDoc {
    pub fn from_matrix<S: Scalar>(m: &DenseMatrix<S>) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            entries: m.entries().iter().map(Scalar::to_text).collect(),
        }
    }

    pub fn to_matrix<S: Scalar>(&self) -> Result<DenseMatrix<S>> {
        let data = self
            .entries
            .iter()
            .map(|e| S::parse_text(e))
            .collect::<Result<Vec<_>>>()?;
        DenseMatrix::from_vec(self.rows, self.cols, data)
    }
}
