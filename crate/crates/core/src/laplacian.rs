//! Laplacians on finite sets: validation, energies, level-1 assembly,
//! restriction to the boundary and harmonic extension.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cell::CellStructure;
use crate::error::{Error, Result};
use crate::graph::AdjacencyGraph;
use crate::linalg;
use crate::matrix::{DenseMatrix, SymmetricMatrix, VertexFunction, WeightVector};
use crate::scalar::{Scalar, Tolerances};

/// One failed defining condition of a Laplacian.
///
/// Condition numbers: 1 = non-positive definite, 2 = kernel is exactly the
/// constants, 3 = non-negative off-diagonal entries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum Violation {
    NegativeOffDiagonal {
        row: usize,
        col: usize,
    },
    /// Constants are not in the kernel.
    NonZeroRowSum {
        row: usize,
    },
    /// The positive off-diagonal support splits into several components.
    DisconnectedSupport {
        components: usize,
    },
    /// Kernel dimension differs from one.
    KernelDimension {
        dimension: usize,
    },
    NotNonPositive,
}

impl Violation {
    pub fn condition(&self) -> u8 {
        match self {
            Violation::NotNonPositive => 1,
            Violation::NonZeroRowSum { .. }
            | Violation::DisconnectedSupport { .. }
            | Violation::KernelDimension { .. } => 2,
            Violation::NegativeOffDiagonal { .. } => 3,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NegativeOffDiagonal { row, col } => {
                write!(f, "condition (3): H[{row}][{col}] < 0")
            }
            Violation::NonZeroRowSum { row } => {
                write!(
                    f,
                    "condition (2): row {row} does not sum to zero, constants are not harmonic"
                )
            }
            Violation::DisconnectedSupport { components } => {
                write!(
                    f,
                    "condition (2): support graph has {components} components"
                )
            }
            Violation::KernelDimension { dimension } => {
                write!(
                    f,
                    "condition (2): kernel has dimension {dimension}, expected 1"
                )
            }
            Violation::NotNonPositive => write!(f, "condition (1): H is not non-positive definite"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaplacianReport {
    pub violations: Vec<Violation>,
}

impl LaplacianReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violates(&self, condition: u8) -> bool {
        self.violations.iter().any(|v| v.condition() == condition)
    }
}

fn support_graph<S: Scalar>(m: &SymmetricMatrix<S>, tol: f64) -> AdjacencyGraph {
    let n = m.dim();
    let edges = (0..n).flat_map(|p| (p + 1..n).map(move |q| (p, q)));
    let edges: Vec<_> = edges
        .filter(|&(p, q)| m.has_positive_edge(p, q, tol))
        .collect();
    AdjacencyGraph::from_edges(n, edges)
}

fn component_count(g: &AdjacencyGraph) -> usize {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut count = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        count += 1;
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(p) = stack.pop() {
            for &q in g.neighbours(p) {
                if !seen[q] {
                    seen[q] = true;
                    stack.push(q);
                }
            }
        }
    }
    count
}

/// Checks the three defining conditions of a Laplacian separately.
///
/// With non-negative off-diagonals and zero row sums, `-v^T H v` is a sum of
/// `H_pq (v_p - v_q)^2` terms, so (1) holds and the kernel is the constants
/// exactly when the support graph is connected. Otherwise (1) is decided by
/// symmetric elimination and (2) by the kernel dimension. In float mode (1)
/// is always cross-checked with a Gershgorin bound on the largest eigenvalue.
pub fn validate_laplacian<S: Scalar>(
    m: &DenseMatrix<S>,
    tol: &Tolerances,
) -> Result<LaplacianReport> {
    if !m.is_square() {
        return Err(Error::MalformedMatrix(format!(
            "{}x{} is not square",
            m.rows(),
            m.cols()
        )));
    }
    if m.rows() < 2 {
        return Err(Error::MalformedMatrix(
            "a Laplacian needs dimension at least 2".into(),
        ));
    }
    let m = SymmetricMatrix::new(m.clone(), tol.entry)?;
    let n = m.dim();
    let mut violations = Vec::new();

    for p in 0..n {
        for q in 0..n {
            if p != q && m[(p, q)].sign_within(tol.entry) == Ordering::Less {
                violations.push(Violation::NegativeOffDiagonal { row: p, col: q });
            }
        }
    }
    let sign_ok = violations.is_empty();

    let mut sums_ok = true;
    for p in 0..n {
        let mut sum = S::zero();
        for q in 0..n {
            sum += m[(p, q)].clone();
        }
        if !sum.is_zero_within(tol.entry * n as f64) {
            violations.push(Violation::NonZeroRowSum { row: p });
            sums_ok = false;
        }
    }

    if sign_ok && sums_ok {
        let components = component_count(&support_graph(&m, tol.entry));
        if components != 1 {
            violations.push(Violation::DisconnectedSupport { components });
        }
        if !S::is_exact() && gershgorin_upper_bound(&m) > tol.entry * n as f64 {
            violations.push(Violation::NotNonPositive);
        }
    } else {
        if !linalg::is_negative_semidefinite(m.dense(), tol.entry) {
            violations.push(Violation::NotNonPositive);
        }
        let dimension = n - linalg::rank(m.dense(), tol.entry);
        if dimension != 1 {
            violations.push(Violation::KernelDimension { dimension });
        }
    }
    Ok(LaplacianReport { violations })
}

/// Upper bound on the spectrum: `max_p (H_pp + sum_{q != p} |H_pq|)`.
fn gershgorin_upper_bound<S: Scalar>(m: &SymmetricMatrix<S>) -> f64 {
    (0..m.dim())
        .map(|p| {
            let off: f64 = (0..m.dim())
                .filter(|&q| q != p)
                .map(|q| m[(p, q)].to_f64().abs())
                .sum();
            m[(p, p)].to_f64() + off
        })
        .fold(f64::NEG_INFINITY, f64::max)
}

/// `E(u, v) = -u^T D v`.
pub fn dirichlet_energy<S: Scalar>(
    d: &SymmetricMatrix<S>,
    u: &VertexFunction<S>,
    v: &VertexFunction<S>,
) -> Result<S> {
    if u.len() != d.dim() || v.len() != d.dim() {
        return Err(Error::MalformedInput(format!(
            "functions of length {} and {} against a {}x{} form",
            u.len(),
            v.len(),
            d.dim(),
            d.dim()
        )));
    }
    let dv = d.dense().mul_vec(v.values())?;
    let mut acc = S::zero();
    for (a, b) in u.values().iter().zip(dv) {
        acc += a.clone() * b;
    }
    Ok(-acc)
}

/// `H_1 = sum_i r_i^{-1} R_i^T D R_i`: cell `i` adds `D[j][l] / r_i` at
/// `(cell_i[j], cell_i[l])`.
pub fn assemble_h1<S: Scalar>(
    s: &CellStructure,
    d: &SymmetricMatrix<S>,
    r: &WeightVector<S>,
) -> Result<SymmetricMatrix<S>> {
    let k = s.boundary_size();
    if d.dim() != k {
        return Err(Error::MalformedInput(format!(
            "D is {}x{}, structure has k = {k}",
            d.dim(),
            d.dim()
        )));
    }
    if r.len() != s.cell_count() {
        return Err(Error::MalformedInput(format!(
            "{} weights for {} cells",
            r.len(),
            s.cell_count()
        )));
    }
    let n = s.vertex_count();
    let mut h = DenseMatrix::zeros(n, n);
    for (cell, ri) in s.cells().iter().zip(r.values()) {
        let inv = S::one() / ri.clone();
        for (j, &p) in cell.iter().enumerate() {
            for (l, &q) in cell.iter().enumerate() {
                if !d[(j, l)].is_zero() {
                    h[(p, q)] += d[(j, l)].clone() * inv.clone();
                }
            }
        }
    }
    Ok(SymmetricMatrix::from_dense_unchecked(h))
}

/// Eliminates the complement of `keep`, leaving `T - J^T X^{-1} J` over
/// `keep` in the given order. Also returns `P = -X^{-1} J`, the map from
/// kept values to the harmonic values on the eliminated vertices.
fn eliminate<S: Scalar>(
    h: &SymmetricMatrix<S>,
    keep: &[usize],
    drop: &[usize],
    tol: &Tolerances,
) -> Result<(SymmetricMatrix<S>, DenseMatrix<S>)> {
    let t = h.dense().select(keep, keep);
    if drop.is_empty() {
        return Ok((
            SymmetricMatrix::from_dense_unchecked(t),
            DenseMatrix::zeros(0, keep.len()),
        ));
    }
    let x = h.dense().select(drop, drop);
    let j = h.dense().select(drop, keep);
    let y = linalg::solve(&x, &j, tol.entry).map_err(|e| {
        Error::MalformedLaplacian(format!(
            "interior block is singular (no pivot in column {} of {})",
            e.column,
            drop.len()
        ))
    })?;
    let correction = j.transpose().mul(&y)?;
    let schur = t.sub(&correction)?;
    // symmetrise: exact mode is already symmetric, float mode drifts by rounding
    let k = keep.len();
    let half = S::one() / S::from_i64(2);
    let sym = DenseMatrix::from_fn(k, k, |a, b| {
        if S::is_exact() {
            schur[(a, b)].clone()
        } else {
            (schur[(a, b)].clone() + schur[(b, a)].clone()) * half.clone()
        }
    });
    Ok((
        SymmetricMatrix::from_dense_unchecked(sym),
        y.scale(&-S::one()),
    ))
}

fn split_vertices(dim: usize, boundary: &[usize]) -> Result<Vec<usize>> {
    if boundary.is_empty() || boundary.len() >= dim {
        return Err(Error::MalformedInput(format!(
            "boundary of size {} must be a proper nonempty subset of {dim} vertices",
            boundary.len()
        )));
    }
    let mut mask = vec![false; dim];
    for &b in boundary {
        if b >= dim || mask[b] {
            return Err(Error::MalformedInput(format!(
                "bad or repeated boundary vertex {b}"
            )));
        }
        mask[b] = true;
    }
    Ok((0..dim).filter(|&v| !mask[v]).collect())
}

/// The trace of `h` on `boundary` (ordered as given): the Schur complement
/// of the block on the remaining vertices.
pub fn schur_restriction<S: Scalar>(
    h: &SymmetricMatrix<S>,
    boundary: &[usize],
    tol: &Tolerances,
) -> Result<SymmetricMatrix<S>> {
    let interior = split_vertices(h.dim(), boundary)?;
    Ok(eliminate(h, boundary, &interior, tol)?.0)
}

/// Solves the Dirichlet problem for one level-1 network once and reuses the
/// factorisation: the Schur restriction and the harmonic extension of any
/// boundary data.
#[derive(Debug, Clone)]
pub struct HarmonicExtender<S> {
    boundary: Vec<usize>,
    interior: Vec<usize>,
    vertex_count: usize,
    /// `-X^{-1} J`: interior values per unit boundary value.
    poisson: DenseMatrix<S>,
    schur: SymmetricMatrix<S>,
}

impl<S: Scalar> HarmonicExtender<S> {
    pub fn new(h1: &SymmetricMatrix<S>, s: &CellStructure, tol: &Tolerances) -> Result<Self> {
        if h1.dim() != s.vertex_count() {
            return Err(Error::MalformedInput(format!(
                "H1 is {}x{}, structure has {} vertices",
                h1.dim(),
                h1.dim(),
                s.vertex_count()
            )));
        }
        let interior = split_vertices(h1.dim(), s.boundary())?;
        let (schur, poisson) = eliminate(h1, s.boundary(), &interior, tol)?;
        Ok(Self {
            boundary: s.boundary().to_vec(),
            interior,
            vertex_count: s.vertex_count(),
            poisson,
            schur,
        })
    }

    pub fn schur(&self) -> &SymmetricMatrix<S> {
        &self.schur
    }

    pub fn boundary(&self) -> &[usize] {
        &self.boundary
    }

    pub fn interior(&self) -> &[usize] {
        &self.interior
    }

    /// The unique `v` with `v|_{V_0} = boundary_values` and `(H_1 v)(p) = 0`
    /// at every interior `p`.
    pub fn extend(&self, boundary_values: &[S]) -> Result<VertexFunction<S>> {
        if boundary_values.len() != self.boundary.len() {
            return Err(Error::MalformedInput(format!(
                "{} boundary values for {} boundary vertices",
                boundary_values.len(),
                self.boundary.len()
            )));
        }
        let inner = self.poisson.mul_vec(boundary_values)?;
        let mut v = vec![S::zero(); self.vertex_count];
        for (&b, x) in self.boundary.iter().zip(boundary_values) {
            v[b] = x.clone();
        }
        for (&p, x) in self.interior.iter().zip(inner) {
            v[p] = x;
        }
        Ok(VertexFunction(v))
    }
}

pub fn harmonic_extend<S: Scalar>(
    h1: &SymmetricMatrix<S>,
    s: &CellStructure,
    boundary_values: &[S],
    tol: &Tolerances,
) -> Result<VertexFunction<S>> {
    HarmonicExtender::new(h1, s, tol)?.extend(boundary_values)
}

/// `(H v)(p)` for every vertex.
pub fn apply<S: Scalar>(h: &SymmetricMatrix<S>, v: &VertexFunction<S>) -> Result<Vec<S>> {
    h.dense().mul_vec(v.values())
}
