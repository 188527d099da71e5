//! Dense Gaussian elimination over [`Scalar`].
//!
//! Rows whose entry in the pivot column is zero are skipped, and only the
//! nonzero columns of the pivot row are propagated, so banded systems (the
//! row-major gasket numbering keeps bandwidth near `n`) cost far less than
//! the dense cubic bound.

use crate::matrix::DenseMatrix;
use crate::scalar::Scalar;

/// The elimination met a column with no usable pivot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Singular {
    pub column: usize,
}

fn max_abs<S: Scalar>(m: &DenseMatrix<S>) -> f64 {
    m.entries()
        .iter()
        .map(|x| x.to_f64().abs())
        .fold(0.0, f64::max)
}

/// Float-mode threshold below which a pivot counts as zero.
fn pivot_floor<S: Scalar>(m: &DenseMatrix<S>, tol: f64) -> f64 {
    tol * max_abs(m).max(f64::MIN_POSITIVE)
}

fn swap_rows<S>(m: &mut DenseMatrix<S>, a: usize, b: usize)
where
    S: Scalar,
{
    if a == b {
        return;
    }
    for j in 0..m.cols() {
        let tmp = m[(a, j)].clone();
        m[(a, j)] = m[(b, j)].clone();
        m[(b, j)] = tmp;
    }
}

/// Index of the chosen pivot row in column `col` among rows `from..`.
fn find_pivot<S: Scalar>(m: &DenseMatrix<S>, col: usize, from: usize, floor: f64) -> Option<usize> {
    let mut best: Option<usize> = None;
    for i in from..m.rows() {
        let x = &m[(i, col)];
        if x.is_zero_within(floor) {
            continue;
        }
        match best {
            None => {
                best = Some(i);
                if S::is_exact() {
                    break;
                }
            }
            Some(b) if S::better_pivot(x, &m[(b, col)]) => best = Some(i),
            _ => {}
        }
    }
    best
}

/// Subtracts `factor * row(src)` from `row(dst)` over the listed columns.
fn eliminate_row<S: Scalar>(
    m: &mut DenseMatrix<S>,
    dst: usize,
    factor: &S,
    pivot_row: &[(usize, S)],
) {
    for (j, x) in pivot_row {
        m[(dst, *j)].sub_mul_assign(factor, x);
    }
}

fn nonzero_tail<S: Scalar>(m: &DenseMatrix<S>, row: usize, from: usize) -> Vec<(usize, S)> {
    (from..m.cols())
        .filter(|&j| !m[(row, j)].is_zero())
        .map(|j| (j, m[(row, j)].clone()))
        .collect()
}

/// Solves `a * x = b` for square nonsingular `a`; `b` may carry several
/// right-hand sides as columns.
pub fn solve<S: Scalar>(
    a: &DenseMatrix<S>,
    b: &DenseMatrix<S>,
    tol: f64,
) -> Result<DenseMatrix<S>, Singular> {
    assert!(a.is_square(), "solve needs a square system");
    assert_eq!(a.rows(), b.rows(), "right-hand side height");
    let n = a.rows();
    let floor = pivot_floor(a, tol);
    let mut a = a.clone();
    let mut b = b.clone();

    for k in 0..n {
        let p = find_pivot(&a, k, k, floor).ok_or(Singular { column: k })?;
        swap_rows(&mut a, k, p);
        swap_rows(&mut b, k, p);
        let pivot_a = nonzero_tail(&a, k, k + 1);
        let pivot_b = nonzero_tail(&b, k, 0);
        let pivot = a[(k, k)].clone();
        for i in k + 1..n {
            if a[(i, k)].is_zero() {
                continue;
            }
            let factor = a[(i, k)].clone() / pivot.clone();
            a[(i, k)] = S::zero();
            eliminate_row(&mut a, i, &factor, &pivot_a);
            eliminate_row(&mut b, i, &factor, &pivot_b);
        }
    }

    let m = b.cols();
    let mut x = DenseMatrix::<S>::zeros(n, m);
    for k in (0..n).rev() {
        let tail = nonzero_tail(&a, k, k + 1);
        for c in 0..m {
            let mut acc = b[(k, c)].clone();
            for (j, coef) in &tail {
                if !x[(*j, c)].is_zero() {
                    acc.sub_mul_assign(coef, &x[(*j, c)]);
                }
            }
            x[(k, c)] = acc / a[(k, k)].clone();
        }
    }
    Ok(x)
}

pub fn determinant<S: Scalar>(a: &DenseMatrix<S>, tol: f64) -> S {
    assert!(a.is_square(), "determinant of a non-square matrix");
    let n = a.rows();
    let floor = pivot_floor(a, tol);
    let mut a = a.clone();
    let mut det = S::one();
    for k in 0..n {
        let Some(p) = find_pivot(&a, k, k, floor) else {
            return S::zero();
        };
        if p != k {
            swap_rows(&mut a, k, p);
            det = -det;
        }
        let pivot_row = nonzero_tail(&a, k, k + 1);
        let pivot = a[(k, k)].clone();
        for i in k + 1..n {
            if a[(i, k)].is_zero() {
                continue;
            }
            let factor = a[(i, k)].clone() / pivot.clone();
            a[(i, k)] = S::zero();
            eliminate_row(&mut a, i, &factor, &pivot_row);
        }
        det *= pivot;
    }
    det
}

/// Reduced row echelon form; returns the pivot columns.
fn rref<S: Scalar>(a: &mut DenseMatrix<S>, tol: f64) -> Vec<usize> {
    let floor = pivot_floor(a, tol);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols() {
        if row == a.rows() {
            break;
        }
        let Some(p) = find_pivot(a, col, row, floor) else {
            for i in row..a.rows() {
                a[(i, col)] = S::zero();
            }
            continue;
        };
        swap_rows(a, row, p);
        let inv = S::one() / a[(row, col)].clone();
        for j in col..a.cols() {
            let v = a[(row, j)].clone() * inv.clone();
            a[(row, j)] = v;
        }
        let pivot_row = nonzero_tail(a, row, col);
        for i in 0..a.rows() {
            if i == row || a[(i, col)].is_zero() {
                continue;
            }
            let factor = a[(i, col)].clone();
            eliminate_row(a, i, &factor, &pivot_row);
            a[(i, col)] = S::zero();
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank<S: Scalar>(a: &DenseMatrix<S>, tol: f64) -> usize {
    let mut a = a.clone();
    rref(&mut a, tol).len()
}

/// Basis of the right null space, one vector per free column.
pub fn null_space<S: Scalar>(a: &DenseMatrix<S>, tol: f64) -> Vec<Vec<S>> {
    let mut r = a.clone();
    let pivots = rref(&mut r, tol);
    let n = a.cols();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![S::zero(); n];
            v[f] = S::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r[(row, f)].clone();
            }
            v
        })
        .collect()
}

/// Whether the symmetric matrix `m` satisfies `x^T m x <= 0` for all `x`.
///
/// Symmetric elimination on `-m`: a negative pivot refutes semidefiniteness,
/// and a zero pivot forces the rest of its row to vanish.
pub fn is_negative_semidefinite<S: Scalar>(m: &DenseMatrix<S>, tol: f64) -> bool {
    let n = m.rows();
    let floor = pivot_floor(m, tol);
    let mut a = m.scale(&-S::one());
    for k in 0..n {
        let pivot = a[(k, k)].clone();
        match pivot.sign_within(floor) {
            std::cmp::Ordering::Less => return false,
            std::cmp::Ordering::Equal => {
                if (k + 1..n).any(|j| !a[(k, j)].is_zero_within(floor)) {
                    return false;
                }
            }
            std::cmp::Ordering::Greater => {
                let pivot_row = nonzero_tail(&a, k, k + 1);
                for i in k + 1..n {
                    if a[(i, k)].is_zero() {
                        continue;
                    }
                    let factor = a[(i, k)].clone() / pivot.clone();
                    eliminate_row(&mut a, i, &factor, &pivot_row);
                    a[(i, k)] = S::zero();
                }
            }
        }
    }
    true
}

/// Smallest singular value of a small square matrix and a matching right
/// singular vector (unit length), by one-sided Jacobi rotations.
pub fn min_singular_value(a: &DenseMatrix<f64>) -> (f64, Vec<f64>) {
    assert!(a.is_square(), "square input expected");
    let n = a.cols();
    let mut u = a.clone();
    let mut v = DenseMatrix::<f64>::identity(n);
    for _sweep in 0..60 {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let (mut alpha, mut beta, mut gamma) = (0.0, 0.0, 0.0);
                for i in 0..n {
                    alpha += u[(i, p)] * u[(i, p)];
                    beta += u[(i, q)] * u[(i, q)];
                    gamma += u[(i, p)] * u[(i, q)];
                }
                if gamma.abs() <= 1e-15 * (alpha * beta).sqrt() || gamma == 0.0 {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let t = if zeta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for i in 0..n {
                    let (up, uq) = (u[(i, p)], u[(i, q)]);
                    u[(i, p)] = c * up - s * uq;
                    u[(i, q)] = s * up + c * uq;
                    let (vp, vq) = (v[(i, p)], v[(i, q)]);
                    v[(i, p)] = c * vp - s * vq;
                    v[(i, q)] = s * vp + c * vq;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let (col, sigma) = (0..n)
        .map(|j| (j, (0..n).map(|i| u[(i, j)] * u[(i, j)]).sum::<f64>().sqrt()))
        .min_by(|x, y| x.1.total_cmp(&y.1))
        .unwrap_or((0, 0.0));
    let vec = (0..n).map(|i| v[(i, col)]).collect();
    (sigma, vec)
}
