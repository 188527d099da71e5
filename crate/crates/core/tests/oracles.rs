//! Library results against independently computed values.

mod common;

use common::{cramer3, sg2_level2, star_mesh_boundary};
use gasket_core::cell::star;
use gasket_core::harmonic::homogeneous_structure;
use gasket_core::{assemble_h1, schur_restriction};
use gasket_core::{
    build_sg, build_star_toy, evaluate_at_address, extension_matrices, harmonic_extend, rat,
    solve_homogeneous_ratio, Rational, SymmetricMatrix, Tolerances, WeightVector,
};

fn tol() -> Tolerances {
    Tolerances::default()
}

fn d_std() -> SymmetricMatrix<Rational> {
    SymmetricMatrix::complete_graph(3)
}

#[test]
fn sg2_interior_system_by_cramer() {
    // interior m01, m02, m12; each has degree 4, adjacent to the other two
    // midpoints; boundary data (1, 0, 0) feeds m01 and m02 once each
    let a = [
        [rat(4, 1), rat(-1, 1), rat(-1, 1)],
        [rat(-1, 1), rat(4, 1), rat(-1, 1)],
        [rat(-1, 1), rat(-1, 1), rat(4, 1)],
    ];
    let oracle = cramer3(a, [rat(1, 1), rat(1, 1), rat(0, 1)]);
    assert_eq!(oracle, [rat(2, 5), rat(2, 5), rat(1, 5)]);

    let s = build_sg(2).unwrap();
    let h = assemble_h1(&s, &d_std(), &WeightVector::uniform(3, rat(1, 1)).unwrap()).unwrap();
    let v = harmonic_extend(&h, &s, &[rat(1, 1), rat(0, 1), rat(0, 1)], &tol()).unwrap();
    assert_eq!([v[1].clone(), v[2].clone(), v[4].clone()], oracle);
}

#[test]
fn homogeneous_ratios_match_star_mesh_oracle() {
    let frozen = [
        (2, rat(3, 5)),
        (3, rat(7, 15)),
        (4, rat(41, 103)),
        (5, rat(591, 1663)),
        (6, rat(7025, 21559)),
    ];
    for (n, expected) in frozen {
        let s = build_sg(n).unwrap();
        let c = star_mesh_boundary(&s, &vec![rat(1, 1); s.cell_count()]);
        assert_eq!(c.len(), 3);
        assert!(
            c.values().all(|x| *x == expected),
            "oracle drifted at n = {n}: {c:?}"
        );
        assert_eq!(
            solve_homogeneous_ratio(&s, &d_std(), &tol()).unwrap(),
            expected,
            "n = {n}"
        );
    }
}

#[test]
fn star_toy_ratio_is_one_half() {
    // w_i in series with q_i-m gives 1/2, parallel with the direct edge gives
    // 3/2 per spoke; eliminating m leaves (3/2)^2 / (9/2) = 1/2 per pair
    let toy = build_star_toy();
    let c = star_mesh_boundary(&toy, &[rat(1, 1), rat(1, 1), rat(1, 1)]);
    assert!(c.values().all(|x| *x == rat(1, 2)));
    assert_eq!(
        solve_homogeneous_ratio(&toy, &d_std(), &tol()).unwrap(),
        rat(1, 2)
    );
}

#[test]
fn orbit_weighted_schur_matches_star_mesh() {
    let s = build_sg(4).unwrap();
    let rho = s
        .cell_orbits()
        .unwrap()
        .expand(&[rat(2, 1), rat(5, 1), rat(7, 1)])
        .unwrap();
    let h = assemble_h1(&s, &d_std(), &WeightVector::new(rho.clone()).unwrap()).unwrap();
    let schur = schur_restriction(&h, s.boundary(), &tol()).unwrap();
    let c = star_mesh_boundary(&s, &rho);
    let b = s.boundary();
    for i in 0..3 {
        for j in i + 1..3 {
            let key = (b[i].min(b[j]), b[i].max(b[j]));
            assert_eq!(schur[(i, j)], c[&key]);
        }
    }
}

#[test]
fn double_address_matches_level_two_network() {
    // the quarter point (0, 3) is the q1-corner of cell 0 inside cell 0
    let (level2, quarter) = sg2_level2();
    let h = assemble_h1(
        &level2,
        &d_std(),
        &WeightVector::uniform(9, rat(1, 1)).unwrap(),
    )
    .unwrap();
    let v = harmonic_extend(&h, &level2, &[rat(1, 1), rat(0, 1), rat(0, 1)], &tol()).unwrap();
    assert_eq!(v[quarter], rat(16, 25));

    let s = build_sg(2).unwrap();
    let cand = homogeneous_structure(&s, &d_std(), &tol()).unwrap();
    let m = extension_matrices(&s, &cand, &tol()).unwrap();
    let at = evaluate_at_address(&m, &[0, 0], &[rat(1, 1), rat(0, 1), rat(0, 1)]).unwrap();
    assert_eq!(at, vec![rat(1, 1), rat(16, 25), rat(16, 25)]);
    assert_eq!(at[1], v[quarter]);
}

#[test]
fn star_toy_witness_by_symmetry() {
    // swapping q1 and q2 negates the data (0, 1, -1) and fixes m, so v(m) = 0
    let toy = build_star_toy();
    let cand = homogeneous_structure(&toy, &d_std(), &tol()).unwrap();
    let h = cand.h1(&toy).unwrap();
    let v = harmonic_extend(&h, &toy, &[rat(0, 1), rat(1, 1), rat(-1, 1)], &tol()).unwrap();
    assert_eq!(v[star::M], rat(0, 1));
    assert_eq!(v[star::W[1]], rat(1, 2));
    assert_eq!(v[star::W[2]], rat(-1, 2));
}
