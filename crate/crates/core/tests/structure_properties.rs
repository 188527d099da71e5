//! Invariants of the cell structures and their graphs.

mod common;

use std::collections::{BTreeSet, HashSet};

use gasket_core::verify::geodesic_chain;
use gasket_core::{build_sg, AdjacencyGraph, CellStructure};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

#[test]
fn counts_and_single_vertex_overlaps() {
    for n in 2..=12usize {
        let s = build_sg(n).unwrap();
        assert_eq!(s.cell_count(), (n * n + n) / 2);
        assert_eq!(s.vertex_count(), (n + 1) * (n + 2) / 2);
        assert_eq!(s.adjacency().edge_count(), 3 * (n * n + n) / 2);
        for i in 0..s.cell_count() {
            for j in i + 1..s.cell_count() {
                let a: HashSet<_> = s.cell(i).iter().collect();
                let shared = s.cell(j).iter().filter(|v| a.contains(v)).count();
                assert!(
                    shared <= 1,
                    "n = {n}: cells {i} and {j} share {shared} vertices"
                );
            }
        }
    }
}

#[test]
fn interiors_are_two_connected() {
    for n in 2..=12 {
        let s = build_sg(n).unwrap();
        assert!(
            s.adjacency().is_two_connected(&s.interior()).unwrap(),
            "n = {n}"
        );
    }
}

#[test]
fn random_subsets_have_two_boundary_points() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for n in 2..=12 {
        let s = build_sg(n).unwrap();
        let interior = s.interior();
        for _ in 0..200 {
            let size = rng.gen_range(2..interior.len());
            let a: BTreeSet<usize> = interior.choose_multiple(&mut rng, size).copied().collect();
            let boundary = s.subset_boundary(&a).unwrap();
            assert!(
                boundary.len() >= 2,
                "n = {n}, A = {a:?}, boundary = {boundary:?}"
            );
            assert!(boundary.is_subset(&a));
        }
    }
}

#[test]
fn orbits_are_symmetry_invariant() {
    for n in 2..=8 {
        let s = build_sg(n).unwrap();
        let orbits = s.cell_orbits().unwrap();
        let covered: usize = orbits.orbits().iter().map(Vec::len).sum();
        assert_eq!(covered, s.cell_count());
        for perm in s.cell_symmetries().unwrap() {
            for (c, &image) in perm.iter().enumerate() {
                assert_eq!(orbits.orbit_of(c), orbits.orbit_of(image), "n = {n}");
            }
        }
    }
}

#[test]
fn builds_are_deterministic() {
    for n in [2, 7, 20] {
        let a = serde_json::to_string(&build_sg(n).unwrap()).unwrap();
        let b = serde_json::to_string(&build_sg(n).unwrap()).unwrap();
        assert_eq!(a, b);
        let back: CellStructure = serde_json::from_str(&a).unwrap();
        assert_eq!(back, build_sg(n).unwrap());
    }
}

/// Length of the shortest simple path by exhaustive enumeration.
fn exhaustive_shortest(
    g: &AdjacencyGraph,
    subset: &BTreeSet<usize>,
    from: usize,
    to: usize,
) -> Option<usize> {
    fn go(
        g: &AdjacencyGraph,
        subset: &BTreeSet<usize>,
        cur: usize,
        to: usize,
        seen: &mut Vec<usize>,
        best: &mut Option<usize>,
    ) {
        if cur == to {
            *best = Some(best.map_or(seen.len(), |b| b.min(seen.len())));
            return;
        }
        for &q in g.neighbours(cur) {
            if subset.contains(&q) && !seen.contains(&q) {
                seen.push(q);
                go(g, subset, q, to, seen, best);
                seen.pop();
            }
        }
    }
    let mut best = None;
    go(g, subset, from, to, &mut vec![from], &mut best);
    best
}

#[test]
fn geodesics_are_shortest() {
    let mut rng = StdRng::seed_from_u64(7);
    for n in [2, 3] {
        let s = build_sg(n).unwrap();
        let g = s.adjacency();
        for _ in 0..40 {
            let size = rng.gen_range(2..=s.vertex_count());
            let all: Vec<usize> = (0..s.vertex_count()).collect();
            let a: BTreeSet<usize> = all.choose_multiple(&mut rng, size).copied().collect();
            let ends: Vec<usize> = a.iter().copied().collect();
            let (x, y) = (ends[0], ends[ends.len() - 1]);
            match (
                geodesic_chain(&g, &a, x, y),
                exhaustive_shortest(&g, &a, x, y),
            ) {
                (Ok(chain), Some(len)) => {
                    assert_eq!(chain.len(), len);
                    assert!(chain.is_valid(&g));
                    assert!(chain.vertices().iter().all(|v| a.contains(v)));
                }
                (Err(_), None) => {}
                (got, want) => panic!("geodesic {got:?} vs exhaustive {want:?}"),
            }
        }
    }
}

#[test]
fn geodesic_along_bottom_row_of_sg4() {
    let s = build_sg(4).unwrap();
    let coords = s.coords().unwrap();
    // cells anchored on the bottom row b = 0
    let a: BTreeSet<usize> = (0..s.cell_count())
        .filter(|&c| {
            s.cell(c).iter().any(|&v| coords[v].b == 0)
                && s.cell(c).iter().all(|&v| coords[v].b <= 1)
        })
        .flat_map(|c| s.cell(c).to_vec())
        .collect();
    let (q1, q2) = (s.boundary()[1], s.boundary()[2]);
    let chain = geodesic_chain(&s.adjacency(), &a, q1, q2).unwrap();
    assert_eq!(exhaustive_shortest(&s.adjacency(), &a, q1, q2), Some(5));
    assert_eq!(chain.len(), 5);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn adjacency_matches_cell_sharing(n in 2usize..9) {
        let s = build_sg(n).unwrap();
        let g = s.adjacency();
        for p in 0..s.vertex_count() {
            for q in 0..s.vertex_count() {
                let share = p != q && s.cells().iter().any(|c| c.contains(&p) && c.contains(&q));
                prop_assert_eq!(g.has_edge(p, q), share);
            }
        }
    }
}
