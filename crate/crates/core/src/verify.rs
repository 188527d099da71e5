//! Executable checks for the combinatorial facts behind non-degeneracy:
//! the maximum principle with its reachability sets, strictly monotone
//! chains to the boundary, geodesic chains and level-set cell clusters.

use std::cmp::Ordering;
use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::cell::CellStructure;
use crate::error::{Error, NoChainReason, Result};
use crate::graph::AdjacencyGraph;
use crate::laplacian::apply;
use crate::matrix::{SymmetricMatrix, VertexFunction};
use crate::scalar::{Scalar, Tolerances};

/// Distinct vertices, consecutive ones adjacent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Chain(pub Vec<usize>);

impl Chain {
    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<usize> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<usize> {
        self.0.last().copied()
    }

    pub fn is_valid(&self, g: &AdjacencyGraph) -> bool {
        let distinct = self.0.iter().collect::<BTreeSet<_>>().len() == self.0.len();
        distinct && self.0.windows(2).all(|w| g.has_edge(w[0], w[1]))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Increasing,
    Decreasing,
}

/// `U_p`: the vertices of `U` reachable from `p` through `V \ U` followed by
/// one edge into `U`. Edges are the strictly positive off-diagonal entries.
pub fn reachability_set<S: Scalar>(
    h: &SymmetricMatrix<S>,
    u: &BTreeSet<usize>,
    p: usize,
    tol: &Tolerances,
) -> Result<BTreeSet<usize>> {
    let n = h.dim();
    if p >= n {
        return Err(Error::InvalidParameter(format!("vertex {p} out of range")));
    }
    if u.contains(&p) {
        return Err(Error::InvalidParameter(format!("vertex {p} belongs to U")));
    }
    let mut seen = vec![false; n];
    seen[p] = true;
    let mut queue = VecDeque::from([p]);
    let mut reached = BTreeSet::new();
    while let Some(x) = queue.pop_front() {
        #[allow(clippy::needless_range_loop)]
        for y in 0..n {
            if !h.has_positive_edge(x, y, tol.entry) {
                continue;
            }
            if u.contains(&y) {
                reached.insert(y);
            } else if !seen[y] {
                seen[y] = true;
                queue.push_back(y);
            }
        }
    }
    Ok(reached)
}

fn check_harmonic_off<S: Scalar>(
    h: &SymmetricMatrix<S>,
    v: &VertexFunction<S>,
    skip: impl Fn(usize) -> bool,
    tol: &Tolerances,
) -> Result<()> {
    let hv = apply(h, v)?;
    match hv
        .iter()
        .enumerate()
        .find(|(p, x)| !skip(*p) && !x.is_zero_within(tol.residual))
    {
        Some((vertex, x)) => Err(Error::PreconditionViolated {
            vertex,
            residual: x.to_text(),
        }),
        None => Ok(()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaxPrincipleOutcome {
    pub passed: bool,
    /// First vertex where a clause failed, with the clause.
    pub failure: Option<(usize, String)>,
    pub checked: usize,
    /// Vertices where both inequalities are strict.
    pub strict: usize,
}

/// Checks `min_{U_p} v <= v(p) <= max_{U_p} v` at every `p` outside `U`,
/// and that `v(p)` attains the max (or the min) exactly when `v` is constant
/// on `U_p`. `v` must satisfy `(H v)(p) = 0` off `U`.
pub fn verify_maximum_principle<S: Scalar>(
    h: &SymmetricMatrix<S>,
    u: &BTreeSet<usize>,
    v: &VertexFunction<S>,
    tol: &Tolerances,
) -> Result<MaxPrincipleOutcome> {
    let n = h.dim();
    if v.len() != n {
        return Err(Error::MalformedInput(format!(
            "function of length {} on {n} vertices",
            v.len()
        )));
    }
    if u.is_empty() || u.len() >= n || u.iter().any(|&x| x >= n) {
        return Err(Error::InvalidParameter(
            "U must be a proper nonempty subset of the vertices".into(),
        ));
    }
    check_harmonic_off(h, v, |p| u.contains(&p), tol)?;

    let eq = |a: &S, b: &S| a.approx_eq(b, tol.level);
    let mut outcome = MaxPrincipleOutcome {
        passed: true,
        failure: None,
        checked: 0,
        strict: 0,
    };
    for p in (0..n).filter(|p| !u.contains(p)) {
        let up = reachability_set(h, u, p, tol)?;
        let values: Vec<&S> = up.iter().map(|&q| &v[q]).collect();
        let Some(first) = values.first() else {
            outcome.passed = false;
            outcome.failure = Some((p, "U_p is empty".into()));
            break;
        };
        let mut lo = *first;
        let mut hi = *first;
        for &x in &values {
            if x < lo {
                lo = x;
            }
            if x > hi {
                hi = x;
            }
        }
        let vp = &v[p];
        let constant = eq(lo, hi);
        outcome.checked += 1;

        let failure = if vp < lo && !eq(vp, lo) {
            Some("v(p) < min over U_p")
        } else if vp > hi && !eq(vp, hi) {
            Some("v(p) > max over U_p")
        } else if eq(vp, hi) != constant {
            Some("v(p) = max over U_p disagrees with v constant on U_p")
        } else if eq(vp, lo) != constant {
            Some("v(p) = min over U_p disagrees with v constant on U_p")
        } else {
            None
        };
        if let Some(msg) = failure {
            outcome.passed = false;
            outcome.failure = Some((p, msg.to_string()));
            break;
        }
        if !constant {
            outcome.strict += 1;
        }
    }
    Ok(outcome)
}

/// A chain from interior vertex `p` to the boundary along which `v` is
/// strictly monotone. Each step moves to the neighbour with the most
/// extreme value in the requested direction, lowest id on ties.
pub fn monotone_chain<S: Scalar>(
    h1: &SymmetricMatrix<S>,
    s: &CellStructure,
    v: &VertexFunction<S>,
    p: usize,
    direction: Direction,
    tol: &Tolerances,
) -> Result<Chain> {
    let n = s.vertex_count();
    if h1.dim() != n || v.len() != n || p >= n {
        return Err(Error::MalformedInput(
            "H1, v and p must match the structure".into(),
        ));
    }
    if s.is_boundary(p) {
        return Err(Error::NoChain(NoChainReason::BoundaryStart(p)));
    }
    if v.is_constant(tol.level) {
        return Err(Error::NoChain(NoChainReason::ConstantFunction));
    }
    if let Err(Error::PreconditionViolated { vertex, .. }) =
        check_harmonic_off(h1, v, |q| s.is_boundary(q), tol)
    {
        return Err(Error::NoChain(NoChainReason::NotHarmonic(vertex)));
    }
    let g = s.adjacency();
    if g.neighbours(p)
        .iter()
        .all(|&q| v[q].approx_eq(&v[p], tol.level))
    {
        return Err(Error::NoChain(NoChainReason::NoDifferingNeighbour(p)));
    }

    let ahead = |from: &S, to: &S| -> bool {
        let diff = to.clone() - from.clone();
        let want = match direction {
            Direction::Increasing => Ordering::Greater,
            Direction::Decreasing => Ordering::Less,
        };
        diff.sign_within(tol.level) == want
    };
    let mut chain = vec![p];
    let mut cur = p;
    while !s.is_boundary(cur) {
        let mut best: Option<usize> = None;
        for &q in g.neighbours(cur) {
            if !ahead(&v[cur], &v[q]) {
                continue;
            }
            best = match best {
                Some(b) if !ahead(&v[b], &v[q]) => Some(b),
                _ => Some(q),
            };
        }
        let next = best.ok_or(Error::NoChain(NoChainReason::Stuck(cur)))?;
        chain.push(next);
        cur = next;
    }
    Ok(Chain(chain))
}

/// Shortest chain from `a1` to `a2` inside the subgraph induced on `subset`.
pub fn geodesic_chain(
    g: &AdjacencyGraph,
    subset: &BTreeSet<usize>,
    a1: usize,
    a2: usize,
) -> Result<Chain> {
    for a in [a1, a2] {
        if !subset.contains(&a) {
            return Err(Error::InvalidParameter(format!(
                "endpoint {a} is not in the subset"
            )));
        }
    }
    let members: Vec<usize> = subset.iter().copied().collect();
    g.shortest_path_within(&members, a1, a2)
        .map(Chain)
        .ok_or(Error::NoPath { from: a1, to: a2 })
}

/// A maximal family of cells, all lying in the level set `E(v, c)`, connected
/// through shared vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellCluster {
    pub cells: BTreeSet<usize>,
    pub vertices: BTreeSet<usize>,
}

/// Clusters of cells on which `v` is identically `c`, grown cell by cell
/// through shared vertices, ordered by their smallest cell.
pub fn cell_cluster<S: Scalar>(
    s: &CellStructure,
    v: &VertexFunction<S>,
    c: &S,
    tol: &Tolerances,
) -> Vec<CellCluster> {
    let flat: Vec<usize> = (0..s.cell_count())
        .filter(|&i| s.cell(i).iter().all(|&p| v[p].approx_eq(c, tol.level)))
        .collect();
    let mut assigned = vec![false; s.cell_count()];
    let mut clusters = Vec::new();
    for &seed in &flat {
        if assigned[seed] {
            continue;
        }
        assigned[seed] = true;
        let mut cells = BTreeSet::from([seed]);
        let mut vertices: BTreeSet<usize> = s.cell(seed).iter().copied().collect();
        loop {
            let next = flat
                .iter()
                .copied()
                .find(|&i| !assigned[i] && s.cell(i).iter().any(|p| vertices.contains(p)));
            let Some(i) = next else { break };
            assigned[i] = true;
            cells.insert(i);
            vertices.extend(s.cell(i).iter().copied());
        }
        clusters.push(CellCluster { cells, vertices });
    }
    clusters
}
