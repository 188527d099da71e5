//! Test-only oracles, independent of the library's block elimination.
#![allow(dead_code)]

use std::collections::BTreeMap;

use gasket_core::{rat, CellStructure, Rational, Scalar};
use rand::rngs::StdRng;
use rand::Rng;

/// Effective conductances between boundary vertices, by eliminating interior
/// vertices one at a time (star-mesh transform) on the edge list of
/// `sum_i r_i^{-1} * (unit complete graph on cell i)`.
pub fn star_mesh_boundary(
    s: &CellStructure,
    weights: &[Rational],
) -> BTreeMap<(usize, usize), Rational> {
    let mut c: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
    for (cell, w) in s.cells().iter().zip(weights) {
        let g = rat(1, 1) / w.clone();
        for x in 0..cell.len() {
            for y in x + 1..cell.len() {
                let key = (cell[x].min(cell[y]), cell[x].max(cell[y]));
                *c.entry(key).or_insert_with(|| rat(0, 1)) += g.clone();
            }
        }
    }
    for v in s.interior() {
        let mut nb: BTreeMap<usize, Rational> = BTreeMap::new();
        c.retain(|&(p, q), w| {
            if p == v {
                nb.insert(q, w.clone());
                false
            } else if q == v {
                nb.insert(p, w.clone());
                false
            } else {
                true
            }
        });
        let total = nb.values().fold(rat(0, 1), |a, b| a + b.clone());
        let ks: Vec<usize> = nb.keys().copied().collect();
        for i in 0..ks.len() {
            for j in i + 1..ks.len() {
                let add = nb[&ks[i]].clone() * nb[&ks[j]].clone() / total.clone();
                *c.entry((ks[i], ks[j])).or_insert_with(|| rat(0, 1)) += add;
            }
        }
    }
    c
}

/// Cramer's rule for a 3x3 system.
pub fn cramer3(a: [[Rational; 3]; 3], b: [Rational; 3]) -> [Rational; 3] {
    let det = |m: &[[Rational; 3]; 3]| {
        m[0][0].clone() * (m[1][1].clone() * m[2][2].clone() - m[1][2].clone() * m[2][1].clone())
            - m[0][1].clone()
                * (m[1][0].clone() * m[2][2].clone() - m[1][2].clone() * m[2][0].clone())
            + m[0][2].clone()
                * (m[1][0].clone() * m[2][1].clone() - m[1][1].clone() * m[2][0].clone())
    };
    let d = det(&a);
    let mut out = [rat(0, 1), rat(0, 1), rat(0, 1)];
    for (col, slot) in out.iter_mut().enumerate() {
        let mut m = a.clone();
        for row in 0..3 {
            m[row][col] = b[row].clone();
        }
        *slot = det(&m) / d.clone();
    }
    out
}

/// Random boundary triple with entries in [-9, 9], rejecting constants.
pub fn random_boundary<S: Scalar>(rng: &mut StdRng) -> Vec<S> {
    loop {
        let v: Vec<i64> = (0..3).map(|_| rng.gen_range(-9..=9)).collect();
        if v.iter().any(|&x| x != v[0]) {
            return v.into_iter().map(S::from_i64).collect();
        }
    }
}

/// Orbit weights drawn from 1..=9.
pub fn random_orbit_weights(rng: &mut StdRng, orbits: usize) -> Vec<Rational> {
    (0..orbits).map(|_| rat(rng.gen_range(1..=9), 1)).collect()
}

/// Level-2 network of the level-2 gasket: the nine sub-cells of its three
/// cells, laid out on the side-4 lattice (every upward unit triangle except
/// the one anchored at (1, 1)). Returns the structure and the id of lattice
/// point (0, 3), the quarter point on the q0-q1 side.
pub fn sg2_level2() -> (CellStructure, usize) {
    let n = 4u32;
    let mut pts = Vec::new();
    for b in (0..=n).rev() {
        for a in 0..=n - b {
            pts.push((a, b));
        }
    }
    let id = |a: u32, b: u32| pts.iter().position(|&p| p == (a, b)).unwrap();
    let anchors = [
        (0, 3),
        (0, 2),
        (1, 2),
        (0, 1),
        (0, 0),
        (1, 0),
        (2, 1),
        (2, 0),
        (3, 0),
    ];
    let cells = anchors
        .iter()
        .map(|&(a, b)| vec![id(a, b + 1), id(a, b), id(a + 1, b)])
        .collect();
    let s = CellStructure::new(
        "sg2-level2",
        3,
        pts.len(),
        vec![id(0, 4), id(0, 0), id(4, 0)],
        cells,
        None,
    )
    .unwrap();
    (s, id(0, 3))
}
