//! Cell structures: the combinatorics of a level-1 approximation.
//!
//! A [`CellStructure`] lists the boundary vertices and, for every cell, the
//! ordered images of the boundary points. Position `j` of cell `i` is the
//! image of boundary point `q_j`.
//!
//! For the level-n gasket the cells are the upward lattice triangles of side
//! one in a triangle of side `n`. Lattice point `(a, b)` sits at
//! `q1 + (a/n)(q2 - q1) + (b/n)(q0 - q1)`, and the cell anchored at `(a, b)`
//! has corners `(a, b + 1)`, `(a, b)`, `(a + 1, b)` (images of `q0`, `q1`,
//! `q2`). Vertices and cells are numbered row by row from the apex down,
//! left to right within a row.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::AdjacencyGraph;

/// Integer lattice coordinates with `a + b <= n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[u32; 2]", into = "[u32; 2]")]
pub struct LatticePoint {
    pub a: u32,
    pub b: u32,
}

impl From<[u32; 2]> for LatticePoint {
    fn from([a, b]: [u32; 2]) -> Self {
        Self { a, b }
    }
}

impl From<LatticePoint> for [u32; 2] {
    fn from(p: LatticePoint) -> Self {
        [p.a, p.b]
    }
}

impl LatticePoint {
    /// Barycentric weights on `(q0, q1, q2)`, scaled by `n`.
    fn barycentric(self, n: u32) -> [u32; 3] {
        [self.b, n - self.a - self.b, self.a]
    }

    fn from_barycentric(w: [u32; 3]) -> Self {
        Self { a: w[2], b: w[0] }
    }

    /// Cartesian position in a triangle with `q0 = (1/2, sqrt(3)/2)`,
    /// `q1 = (0, 0)`, `q2 = (1, 0)`.
    pub fn position(self, n: u32) -> (f64, f64) {
        let (a, b, n) = (f64::from(self.a), f64::from(self.b), f64::from(n));
        ((a + 0.5 * b) / n, (b * 3f64.sqrt() / 2.0) / n)
    }
}

/// The six permutations of the triangle's corners.
pub const TRIANGLE_SYMMETRIES: [[usize; 3]; 6] = [
    [0, 1, 2],
    [1, 2, 0],
    [2, 0, 1],
    [0, 2, 1],
    [2, 1, 0],
    [1, 0, 2],
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "StructureDoc", into = "StructureDoc")]
pub struct CellStructure {
    name: String,
    k: usize,
    vertex_count: usize,
    boundary: Vec<usize>,
    cells: Vec<Vec<usize>>,
    coords: Option<Vec<LatticePoint>>,
}

/// Serialized form; field names are part of the file format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureDoc {
    pub name: String,
    pub k: usize,
    pub vertex_count: usize,
    pub boundary: Vec<usize>,
    pub cells: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coords: Option<Vec<LatticePoint>>,
}

impl TryFrom<StructureDoc> for CellStructure {
    type Error = Error;

    fn try_from(d: StructureDoc) -> Result<Self> {
        CellStructure::new(d.name, d.k, d.vertex_count, d.boundary, d.cells, d.coords)
    }
}

impl From<CellStructure> for StructureDoc {
    fn from(s: CellStructure) -> Self {
        Self {
            name: s.name,
            k: s.k,
            vertex_count: s.vertex_count,
            boundary: s.boundary,
            cells: s.cells,
            coords: s.coords,
        }
    }
}

impl CellStructure {
    /// Validates every structural invariant: injective in-range cell maps,
    /// distinct boundary, full vertex coverage and a connected edge relation.
    pub fn new(
        name: impl Into<String>,
        k: usize,
        vertex_count: usize,
        boundary: Vec<usize>,
        cells: Vec<Vec<usize>>,
        coords: Option<Vec<LatticePoint>>,
    ) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if k == 0 || vertex_count == 0 {
            return bad("k and vertex_count must be positive".into());
        }
        if boundary.len() != k {
            return bad(format!(
                "boundary has {} vertices, expected k = {k}",
                boundary.len()
            ));
        }
        if boundary.iter().collect::<BTreeSet<_>>().len() != k {
            return bad("boundary vertices are not distinct".into());
        }
        if cells.is_empty() {
            return bad("no cells".into());
        }
        let mut covered = vec![false; vertex_count];
        for &b in &boundary {
            if b >= vertex_count {
                return bad(format!("boundary vertex {b} out of range"));
            }
        }
        for (i, cell) in cells.iter().enumerate() {
            if cell.len() != k {
                return bad(format!("cell {i} has {} corners, expected {k}", cell.len()));
            }
            if cell.iter().collect::<BTreeSet<_>>().len() != k {
                return bad(format!("cell {i} is not injective"));
            }
            for &v in cell {
                if v >= vertex_count {
                    return bad(format!("cell {i} references vertex {v} out of range"));
                }
                covered[v] = true;
            }
        }
        if let Some(v) = covered.iter().position(|c| !c) {
            return bad(format!("vertex {v} lies in no cell"));
        }
        if let Some(c) = &coords {
            if c.len() != vertex_count {
                return bad(format!(
                    "{} coordinates for {vertex_count} vertices",
                    c.len()
                ));
            }
        }
        let s = Self {
            name: name.into(),
            k,
            vertex_count,
            boundary,
            cells,
            coords,
        };
        if !s.adjacency().is_connected() {
            return bad("cell-sharing graph is disconnected".into());
        }
        Ok(s)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn boundary_size(&self) -> usize {
        self.k
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    pub fn boundary(&self) -> &[usize] {
        &self.boundary
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn cell(&self, i: usize) -> &[usize] {
        &self.cells[i]
    }

    pub fn coords(&self) -> Option<&[LatticePoint]> {
        self.coords.as_deref()
    }

    /// Side length `n` of the lattice, when coordinates are present.
    pub fn lattice_order(&self) -> Option<u32> {
        self.coords
            .as_ref()
            .map(|c| c.iter().map(|p| p.a + p.b).max().unwrap_or(0))
    }

    pub fn is_boundary(&self, v: usize) -> bool {
        self.boundary.contains(&v)
    }

    /// `V_1 \ V_0` in ascending id order.
    pub fn interior(&self) -> Vec<usize> {
        (0..self.vertex_count)
            .filter(|&v| !self.is_boundary(v))
            .collect()
    }

    /// Number of cells containing each vertex.
    pub fn multiplicity(&self) -> Vec<usize> {
        let mut m = vec![0; self.vertex_count];
        for cell in &self.cells {
            for &v in cell {
                m[v] += 1;
            }
        }
        m
    }

    /// `p ~ q` iff `p != q` and some cell contains both.
    pub fn adjacency(&self) -> AdjacencyGraph {
        let edges = self.cells.iter().flat_map(|cell| {
            cell.iter()
                .enumerate()
                .flat_map(move |(j, &p)| cell[j + 1..].iter().map(move |&q| (p, q)))
        });
        AdjacencyGraph::from_edges(self.vertex_count, edges)
    }

    /// Members of `subset` adjacent to some interior vertex outside it.
    pub fn subset_boundary(&self, subset: &BTreeSet<usize>) -> Result<BTreeSet<usize>> {
        let interior = self.interior();
        if subset.is_empty() {
            return Err(Error::InvalidSubset("subset is empty".into()));
        }
        if let Some(&v) = subset
            .iter()
            .find(|&&v| v >= self.vertex_count || self.is_boundary(v))
        {
            return Err(Error::InvalidSubset(format!(
                "vertex {v} is not an interior vertex"
            )));
        }
        if subset.len() == interior.len() {
            return Err(Error::InvalidSubset("subset is the whole interior".into()));
        }
        let g = self.adjacency();
        Ok(subset
            .iter()
            .copied()
            .filter(|&p| {
                g.neighbours(p)
                    .iter()
                    .any(|&q| !self.is_boundary(q) && !subset.contains(&q))
            })
            .collect())
    }

    /// For each of the six triangle symmetries, the induced permutation of
    /// vertex ids. Needs lattice coordinates.
    pub fn vertex_symmetries(&self) -> Result<Vec<Vec<usize>>> {
        let coords = self.require_coords()?;
        let n = self.lattice_order().unwrap_or(0);
        let index: HashMap<LatticePoint, usize> =
            coords.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        TRIANGLE_SYMMETRIES
            .iter()
            .map(|perm| {
                coords
                    .iter()
                    .map(|p| {
                        let w = p.barycentric(n);
                        let mut image = [0; 3];
                        for j in 0..3 {
                            image[perm[j]] = w[j];
                        }
                        index
                            .get(&LatticePoint::from_barycentric(image))
                            .copied()
                            .ok_or_else(|| {
                                Error::UnsupportedStructure(
                                    "lattice is not closed under the symmetries".into(),
                                )
                            })
                    })
                    .collect()
            })
            .collect()
    }

    /// For each of the six triangle symmetries, the induced permutation of
    /// cell ids (cells matched by their corner sets).
    pub fn cell_symmetries(&self) -> Result<Vec<Vec<usize>>> {
        let vsym = self.vertex_symmetries()?;
        let key = |cell: &[usize]| cell.iter().copied().collect::<BTreeSet<_>>();
        let index: HashMap<BTreeSet<usize>, usize> = self
            .cells
            .iter()
            .enumerate()
            .map(|(i, c)| (key(c), i))
            .collect();
        vsym.iter()
            .map(|vp| {
                self.cells
                    .iter()
                    .map(|c| {
                        let image: BTreeSet<usize> = c.iter().map(|&v| vp[v]).collect();
                        index.get(&image).copied().ok_or_else(|| {
                            Error::UnsupportedStructure(
                                "cells are not closed under the symmetries".into(),
                            )
                        })
                    })
                    .collect()
            })
            .collect()
    }

    /// Partition of the cells into orbits of the triangle's symmetry group.
    pub fn cell_orbits(&self) -> Result<OrbitPartition> {
        let sym = self.cell_symmetries()?;
        let mut orbit_of = vec![usize::MAX; self.cell_count()];
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        for c in 0..self.cell_count() {
            if orbit_of[c] != usize::MAX {
                continue;
            }
            let members: BTreeSet<usize> = sym.iter().map(|perm| perm[c]).collect();
            for &m in &members {
                orbit_of[m] = orbits.len();
            }
            orbits.push(members.into_iter().collect());
        }
        Ok(OrbitPartition { orbits, orbit_of })
    }

    fn require_coords(&self) -> Result<&[LatticePoint]> {
        self.coords.as_deref().ok_or_else(|| {
            Error::UnsupportedStructure(format!("{} has no lattice coordinates", self.name))
        })
    }
}

/// Cells grouped into symmetry orbits, ordered by smallest member.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitPartition {
    orbits: Vec<Vec<usize>>,
    orbit_of: Vec<usize>,
}

impl OrbitPartition {
    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    pub fn orbit_of(&self, cell: usize) -> usize {
        self.orbit_of[cell]
    }

    /// Spreads one value per orbit onto the cells.
    pub fn expand<T: Clone>(&self, per_orbit: &[T]) -> Result<Vec<T>> {
        if per_orbit.len() != self.orbits.len() {
            return Err(Error::MalformedInput(format!(
                "{} orbit values for {} orbits",
                per_orbit.len(),
                self.orbits.len()
            )));
        }
        Ok(self
            .orbit_of
            .iter()
            .map(|&o| per_orbit[o].clone())
            .collect())
    }
}

/// Level-1 approximation of the level-`n` gasket.
pub fn build_sg(n: usize) -> Result<CellStructure> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "level n must be at least 2, got {n}"
        )));
    }
    let n32 =
        u32::try_from(n).map_err(|_| Error::InvalidParameter(format!("level {n} too large")))?;
    let mut coords = Vec::with_capacity((n + 1) * (n + 2) / 2);
    for b in (0..=n32).rev() {
        for a in 0..=n32 - b {
            coords.push(LatticePoint { a, b });
        }
    }
    let index: HashMap<LatticePoint, usize> =
        coords.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let id = |a: u32, b: u32| index[&LatticePoint { a, b }];

    let mut cells = Vec::with_capacity(n * (n + 1) / 2);
    for b in (0..n32).rev() {
        for a in 0..n32 - b {
            cells.push(vec![id(a, b + 1), id(a, b), id(a + 1, b)]);
        }
    }
    let boundary = vec![id(0, n32), id(0, 0), id(n32, 0)];
    let vertex_count = coords.len();
    CellStructure::new(
        format!("sg{n}"),
        3,
        vertex_count,
        boundary,
        cells,
        Some(coords),
    )
}

/// Vertex ids of the star toy.
pub mod star {
    pub const Q: [usize; 3] = [0, 1, 2];
    pub const M: usize = 3;
    pub const W: [usize; 3] = [4, 5, 6];
}

/// Three cells `{q_i, m, w_i}` glued at a common centre `m`; each `w_i` is a
/// non-junction inner vertex. Cell `i` puts `q_i` at position `i`, `m` at
/// `i + 1` and `w_i` at `i + 2` (mod 3).
pub fn build_star_toy() -> CellStructure {
    let cells = (0..3)
        .map(|i| {
            let mut cell = vec![0; 3];
            cell[i] = star::Q[i];
            cell[(i + 1) % 3] = star::M;
            cell[(i + 2) % 3] = star::W[i];
            cell
        })
        .collect();
    CellStructure::new("star-toy", 3, 7, star::Q.to_vec(), cells, None)
        .expect("star toy is well formed")
}
