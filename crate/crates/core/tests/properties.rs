use std::collections::BTreeMap;

use kml_core::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn ring_strategy() -> impl Strategy<Value = Ring> {
    prop_oneof![
        Just(Ring::Integers),
        Just(Ring::Rationals),
        Just(Ring::prime_field(7).unwrap()),
        Just(Ring::prime_field(2).unwrap()),
    ]
}

fn int_matrix(max_rows: usize, max_cols: usize, bound: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (0..=max_rows, 0..=max_cols).prop_flat_map(move |(r, c)| {
        prop::collection::vec(prop::collection::vec(-bound..=bound, c), r)
    })
}

fn to_matrix(ring: Ring, rows: &[Vec<i64>], cols: usize) -> Matrix {
    Matrix::from_fn(ring, rows.len(), cols, |i, j| BigInt::from(rows[i][j]))
}

fn cols_of(rows: &[Vec<i64>]) -> usize {
    rows.first().map_or(0, Vec::len)
}

fn is_unit(det: &BigRational) -> bool {
    det.is_integer() && det.to_integer().abs().is_one()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn smith_decomposition_reconstructs(rows in int_matrix(5, 5, 9), extra_cols in 0usize..3) {
        let cols = cols_of(&rows) + if rows.is_empty() { extra_cols } else { 0 };
        let a = to_matrix(Ring::Integers, &rows, cols);
        let s = smith_normal_form(&a).unwrap();
        prop_assert_eq!(s.u.mul(&a).unwrap().mul(&s.v).unwrap(), s.d.clone());
        if s.u.rows() > 0 {
            prop_assert!(is_unit(&s.u.determinant().unwrap()));
        }
        if s.v.rows() > 0 {
            prop_assert!(is_unit(&s.v.determinant().unwrap()));
        }
        let diag = s.diagonal();
        for w in diag.windows(2) {
            prop_assert!(!w[0].is_negative());
            if w[0].is_zero() {
                prop_assert!(w[1].is_zero());
            } else {
                prop_assert!((&w[1] % &w[0]).is_zero());
            }
        }
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    prop_assert!(s.d.get(i, j).is_zero());
                }
            }
        }
        let nonzero: Vec<BigInt> = diag.into_iter().filter(|d| !d.is_zero() && !d.is_one()).collect();
        prop_assert_eq!(cokernel(&a).invariant_factors, nonzero);
    }

    #[test]
    fn kernels_are_annihilated_and_saturated(ring in ring_strategy(), rows in int_matrix(4, 5, 6)) {
        let cols = cols_of(&rows);
        let a = to_matrix(ring, &rows, cols);
        let k = kernel_basis(&a);
        prop_assert_eq!(k.rank() + rank(&a), cols);
        prop_assert!(a.mul(&k.generators()).unwrap().is_zero());
        if ring == Ring::Integers && cols > 0 {
            // saturated: the quotient Z^cols / kernel is torsion-free
            let p = ModulePresentation::from_relations(ring, cols, &k.generators());
            prop_assert!(p.is_free());
        }
    }

    #[test]
    fn intersections_and_sums(ring in ring_strategy(), a in int_matrix(4, 3, 5), b in int_matrix(4, 3, 5)) {
        let n = 4;
        let pad = |m: &Vec<Vec<i64>>| -> Matrix {
            let cols = cols_of(m);
            Matrix::from_fn(ring, n, cols, |i, j| BigInt::from(m.get(i).map_or(0, |r| r[j])))
        };
        let (sa, sb) = (Submodule::new(&pad(&a)), Submodule::new(&pad(&b)));
        let meet = sa.intersect(&sb).unwrap();
        let join = sa.sum(&sb).unwrap();
        prop_assert!(sa.contains(&meet) && sb.contains(&meet));
        prop_assert!(join.contains(&sa) && join.contains(&sb));
        prop_assert_eq!(sa.rank() + sb.rank(), join.rank() + meet.rank());
        prop_assert_eq!(meet.clone(), sb.intersect(&sa).unwrap());
        prop_assert_eq!(meet.intersect(&sa).unwrap(), meet);
    }

    #[test]
    fn solve_recovers_consistent_systems(ring in ring_strategy(), rows in int_matrix(4, 4, 5), x in prop::collection::vec(-4i64..=4, 4)) {
        let cols = cols_of(&rows);
        let a = to_matrix(ring, &rows, cols);
        let x0 = Matrix::from_fn(ring, cols, 1, |i, _| BigInt::from(x[i]));
        let b = a.mul(&x0).unwrap();
        let sol = solve(&a, &b).unwrap();
        prop_assert_eq!(a.mul(&sol).unwrap(), b);
    }

    #[test]
    fn homology_of_free_complexes(ring in ring_strategy(), rows in int_matrix(3, 3, 4)) {
        // C_2 --a--> C_1 --0--> C_0 always squares to zero
        let cols = cols_of(&rows);
        let a = to_matrix(ring, &rows, cols);
        let zero = Matrix::zeros(ring, 0, a.rows());
        let h = homology_at(&zero, &a).unwrap();
        prop_assert_eq!(h, cokernel(&a));
    }
}

/// Cube over `Z^r / (c)` whose boundary in direction `t` is a fixed integer
/// polynomial `p_t(M)`, so every square commutes and every boundary is well defined.
fn polynomial_cube(n: usize, r: usize, base: &[i64], coeffs: &[[i64; 3]], torsion: i64) -> SCube {
    let ring = Ring::Integers;
    let m = Matrix::from_fn(ring, r, r, |i, j| BigInt::from(base[(i * r + j) % base.len()]));
    let m2 = m.mul(&m).unwrap();
    let id = Matrix::identity(ring, r);
    let vertex = if torsion == 0 {
        PresentedModule::free(ring, r)
    } else {
        PresentedModule::from_relations(&Matrix::scalar(ring, r, &BigInt::from(torsion)))
    };
    let mut boundaries = BTreeMap::new();
    for mask in 0..(1u32 << n) {
        for t in (0..n).filter(|&t| mask & (1 << t) != 0) {
            let c = coeffs[t % coeffs.len()];
            let d = id
                .scale(&BigInt::from(c[0]))
                .add(&m.scale(&BigInt::from(c[1])))
                .unwrap()
                .add(&m2.scale(&BigInt::from(c[2])))
                .unwrap();
            boundaries.insert((mask, t), d);
        }
    }
    let directions = (0..n).map(|i| format!("s{i}")).collect();
    SCube::new(ring, directions, vec![vertex; 1 << n], boundaries).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn total_complexes_square_to_zero(
        n in 1usize..=4,
        r in 1usize..=2,
        base in prop::collection::vec(-2i64..=2, 4),
        coeffs in prop::collection::vec([-2i64..=2, -2i64..=2, -1i64..=1], 1..6),
        torsion in prop_oneof![Just(0i64), Just(4), Just(6)],
    ) {
        let cube = polynomial_cube(n, r, &base, &coeffs, torsion);
        prop_assert!(cube.validate().is_valid());
        let tot = cube.total_complex().unwrap();
        prop_assert!(tot.squares_to_zero());
        let reversed: Vec<usize> = (1..=n).rev().collect();
        let other = cube.total_complex_with_order(&reversed).unwrap();
        prop_assert!(other.squares_to_zero());
        for k in 0..=n {
            prop_assert_eq!(tot.homology(k), other.homology(k));
        }
    }

    #[test]
    fn iterated_h0_is_order_independent(
        n in 2usize..=3,
        base in prop::collection::vec(-2i64..=2, 4),
        coeffs in prop::collection::vec([-3i64..=3, -2i64..=2, -1i64..=1], 1..6),
    ) {
        let cube = polynomial_cube(n, 2, &base, &coeffs, 0);
        let labels: Vec<String> = cube.directions().to_vec();
        let forward: Vec<&str> = labels.iter().map(String::as_str).collect();
        let backward: Vec<&str> = labels.iter().rev().map(String::as_str).collect();
        let a = cube.iterated_h0(&forward).unwrap();
        let b = cube.iterated_h0(&backward).unwrap();
        prop_assert_eq!(a.vertex(0), b.vertex(0));
    }
}

fn parts_strategy() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..=2, 1..=3)
}

fn graded_from_parts(ring: Ring, dims: &[usize], vars: usize, truncation: usize) -> GradedModule {
    let parts: Vec<PresentedModule> = dims.iter().map(|&d| PresentedModule::free(ring, d)).collect();
    functor_a(ring, &parts, vars, truncation).unwrap()
}

/// A random subobject generated by small integer vectors in low degrees.
fn random_sub<'a>(y: &'a GradedModule, picks: &[(usize, Vec<i64>)]) -> GradedSubmodule<'a> {
    let mut gens: Vec<Vec<Vec<BigRational>>> = vec![Vec::new(); y.truncation() + 1];
    for (d, v) in picks {
        let d = d % (y.truncation() + 1);
        let g = y.component(d).generators();
        if g == 0 {
            continue;
        }
        gens[d].push((0..g).map(|i| BigRational::from_integer(v[i % v.len()].into())).collect());
    }
    GradedSubmodule::generated_by(y, &gens).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn classes_are_additive_and_twist_equivariant(
        dims in parts_strategy(),
        vars in 1usize..=2,
        picks in prop::collection::vec((0usize..4, prop::collection::vec(-2i64..=2, 1..4)), 0..3),
    ) {
        let y = graded_from_parts(Ring::Integers, &dims, vars, 7);
        let sub = random_sub(&y, &picks);
        let w = SesWitness::from_submodule(&sub).unwrap();
        let report = check_additivity(&w).unwrap();
        prop_assert!(report.holds());
        for x in [&w.sub, &w.middle, &w.quotient] {
            let c = k0_class(x).unwrap();
            prop_assert_eq!(&c, &hilbert_class(x).unwrap());
            let shifted = k0_class(&x.twist(-1).unwrap()).unwrap();
            prop_assert!(shifted.agrees_with(&c.times_s()));
        }
    }

    #[test]
    fn functor_b_inverts_functor_a(dims in parts_strategy(), vars in 1usize..=2) {
        let a = graded_from_parts(Ring::Rationals, &dims, vars, 6 + vars);
        let b = a.functor_b(dims.len() - 1).unwrap();
        let ranks: Vec<usize> = b.iter().map(|p| p.free_rank).collect();
        prop_assert_eq!(ranks, dims);
    }

    #[test]
    fn nil_quotients_satisfy_the_one_minus_s_square(
        dims in parts_strategy(),
        picks in prop::collection::vec((0usize..4, prop::collection::vec(-2i64..=2, 1..4)), 0..3),
    ) {
        let y = graded_from_parts(Ring::Integers, &dims, 1, 7);
        let mut gens: Vec<Vec<Vec<BigRational>>> = vec![Vec::new(); 8];
        let g = y.component(5).generators();
        gens[5] = (0..g)
            .map(|i| (0..g).map(|j| BigRational::from_integer(BigInt::from(u8::from(i == j)))).collect())
            .collect();
        let high = GradedSubmodule::generated_by(&y, &gens).unwrap();
        let (nil, _) = high.quotient();
        prop_assert!(matches!(nil.is_nil(), NilStatus::Nil(b) if b <= 5));
        let sub = random_sub(&nil, &picks);
        let (x, _) = sub.quotient();
        prop_assert!(verify_one_minus_s(&x).unwrap().holds());
    }
}

fn laurent_strategy() -> impl Strategy<Value = LaurentPolynomial> {
    prop::collection::vec((prop::collection::vec(-3i64..=3, 3), -5i64..=5), 0..5).prop_map(|terms| {
        LaurentPolynomial::from_terms(3, terms.into_iter().map(|(e, c)| (e, BigInt::from(c)))).unwrap()
    })
}

proptest! {
    #[test]
    fn adams_operations_are_ring_maps(f in laurent_strategy(), g in laurent_strategy(), k in 1u32..=4, m in 1u32..=4) {
        let psi = |p: &LaurentPolynomial, k| p.adams(k).unwrap();
        prop_assert_eq!(psi(&(&f * &g), k), &psi(&f, k) * &psi(&g, k));
        prop_assert_eq!(psi(&(&f + &g), k), &psi(&f, k) + &psi(&g, k));
        prop_assert_eq!(psi(&psi(&f, m), k), psi(&f, k * m));
        prop_assert_eq!(psi(&f, 1), f.clone());
        prop_assert_eq!(psi(&(-&f), k), -&psi(&f, k));
    }
}

fn commuting_endos(r: usize, base: &[i64], polys: &[[i64; 2]]) -> Vec<Matrix> {
    let ring = Ring::Integers;
    let m = Matrix::from_fn(ring, r, r, |i, j| BigInt::from(base[(i * r + j) % base.len()]));
    let id = Matrix::identity(ring, r);
    polys
        .iter()
        .map(|c| id.scale(&BigInt::from(c[0])).add(&m.scale(&BigInt::from(c[1]))).unwrap())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn stability_criteria_agree(
        r in 1usize..=3,
        base in prop::collection::vec(-2i64..=2, 4),
        polys in prop::collection::vec([-2i64..=2, -2i64..=2], 1..=2),
        gens in prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 0..3),
    ) {
        let x = AffineObject::free(Ring::Integers, r, commuting_endos(r, &base, &polys)).unwrap();
        let family: Vec<usize> = (0..polys.len()).collect();
        let y = Submodule::from_vectors(
            Ring::Integers,
            r,
            gens.iter().map(|v| v[..r].iter().map(|&c| BigRational::from_integer(c.into())).collect()).collect(),
        );
        // the y-induced filtration f^n x ∩ y is an f-filtration of y
        let adic = FFiltration::adic(x.clone(), family.clone(), 8).unwrap();
        prop_assert!(adic.stability_index().cross_check);
        let ar = artin_rees_index(&x, &y, &family, 10).unwrap();
        if let Some(n0) = ar.n0 {
            prop_assert!(n0 <= 10);
        }
    }

    #[test]
    fn devissage_quotients_are_killed(
        r in 1usize..=3,
        strict in prop::collection::vec(-2i64..=2, 9),
        polys in prop::collection::vec([-2i64..=2, 0i64..=1], 1..=2),
    ) {
        // strictly lower-triangular base matrix, so every endo x ↦ a·x with a = c1·N is nilpotent
        let ring = Ring::Integers;
        let nmat = Matrix::from_fn(ring, r, r, |i, j| BigInt::from(if i > j { strict[i * 3 + j] } else { 0 }));
        let endos: Vec<Matrix> = polys.iter().map(|c| nmat.scale(&BigInt::from(c[0])).add(&nmat.mul(&nmat).unwrap().scale(&BigInt::from(c[1]))).unwrap()).collect();
        let x = AffineObject::free(ring, r, endos).unwrap();
        let family: Vec<usize> = (0..polys.len()).collect();
        let dev = devissage_filtration(&x, &family).unwrap();
        for w in dev.steps.windows(2) {
            prop_assert!(annihilates_quotient(&x, &family, &w[0], &w[1]));
        }
        let ideal = x.ideal_nil_index(&family).unwrap().unwrap();
        prop_assert_eq!(dev.length(), ideal);
        match x.nil_index(&family).unwrap() {
            Nilpotency::Nilpotent(k) => prop_assert!(k <= ideal),
            Nilpotency::NotNilpotent => prop_assert!(false),
        }
    }
}
