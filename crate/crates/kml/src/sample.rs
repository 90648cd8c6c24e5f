//! Seeded random instances for the verification suites.

use std::collections::BTreeMap;

use kml_core::{
    functor_a, AffineObject, FFiltration, GradedModule, GradedSubmodule, LaurentPolynomial, Matrix, PresentedModule,
    Ring, SCube, SesWitness, Submodule,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

/// One independent stream per suite, so suites can be re-run in isolation.
pub fn stream(seed: u64, suite: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(suite);
    rng
}

pub fn int_matrix(rng: &mut impl Rng, ring: Ring, rows: usize, cols: usize, bound: i64) -> Matrix {
    Matrix::from_fn(ring, rows, cols, |_, _| BigInt::from(rng.gen_range(-bound..=bound)))
}

fn rational(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

fn modulus_for(ring: Ring) -> Vec<i64> {
    // torsion only means something over the integers
    if ring == Ring::Integers {
        vec![0, 0, 4, 6]
    } else {
        vec![0]
    }
}

/// Cube over `R^r / (c)` whose boundary in direction `t` is `p_t(M)` for a
/// fixed random `M`, so every square commutes.
pub fn polynomial_cube(rng: &mut impl Rng, ring: Ring, max_dirs: usize) -> (SCube, Value) {
    let n = rng.gen_range(1..=max_dirs);
    let r = rng.gen_range(1..=2);
    let torsion = *modulus_for(ring).choose(rng).expect("nonempty");
    let m = int_matrix(rng, ring, r, r, 2);
    let m2 = m.mul(&m).expect("square");
    let id = Matrix::identity(ring, r);
    let polys: Vec<[i64; 3]> = (0..n)
        .map(|_| [rng.gen_range(-2..=2), rng.gen_range(-2..=2), rng.gen_range(-1..=1)])
        .collect();
    let vertex = if torsion == 0 {
        PresentedModule::free(ring, r)
    } else {
        PresentedModule::from_relations(&Matrix::scalar(ring, r, &BigInt::from(torsion)))
    };
    let mut boundaries = BTreeMap::new();
    for mask in 0..(1u32 << n) {
        for t in (0..n).filter(|&t| mask & (1 << t) != 0) {
            let c = polys[t];
            let d = id
                .scale(&c[0].into())
                .add(&m.scale(&c[1].into()))
                .and_then(|s| s.add(&m2.scale(&c[2].into())))
                .expect("shapes");
            boundaries.insert((mask, t), d);
        }
    }
    let directions = (1..=n).map(|i| i.to_string()).collect();
    let cube = SCube::new(ring, directions, vec![vertex; 1 << n], boundaries).expect("well formed");
    let params = json!({ "directions": n, "rank": r, "torsion": torsion, "base": m.to_string(), "polynomials": polys });
    (cube, params)
}

/// A list of `x_k` for the functor `a`; over the integers some carry torsion.
pub fn part_list(rng: &mut impl Rng, ring: Ring, max_len: usize, max_rank: usize) -> (Vec<PresentedModule>, Value) {
    let len = rng.gen_range(1..=max_len);
    let mut parts = Vec::with_capacity(len);
    let mut desc = Vec::with_capacity(len);
    for _ in 0..len {
        let rank = rng.gen_range(0..=max_rank);
        let torsion = if ring == Ring::Integers && rng.gen_bool(0.25) {
            rng.gen_range(2..=3)
        } else {
            0
        };
        let mut relations = Matrix::zeros(ring, rank + usize::from(torsion > 0), usize::from(torsion > 0));
        if torsion > 0 {
            relations = Matrix::from_fn(ring, rank + 1, 1, |i, _| BigInt::from(if i == rank { torsion } else { 0 }));
        }
        parts.push(PresentedModule::from_relations(&relations));
        desc.push(json!({ "rank": rank, "torsion": torsion }));
    }
    (parts, Value::Array(desc))
}

/// Subobject generated by a few small vectors placed in low degrees.
pub fn random_subobject<'a>(rng: &mut impl Rng, y: &'a GradedModule, max_gens: usize) -> (GradedSubmodule<'a>, Value) {
    let top = y.truncation();
    let mut gens: Vec<Vec<Vec<BigRational>>> = vec![Vec::new(); top + 1];
    let mut desc = Vec::new();
    for _ in 0..rng.gen_range(0..=max_gens) {
        let d = rng.gen_range(0..=top.min(3));
        let g = y.component(d).generators();
        if g == 0 {
            continue;
        }
        let v: Vec<i64> = (0..g).map(|_| rng.gen_range(-2..=2)).collect();
        desc.push(json!({ "degree": d, "vector": v }));
        gens[d].push(v.into_iter().map(rational).collect());
    }
    let sub = GradedSubmodule::generated_by(y, &gens).expect("generators lie in the module");
    (sub, Value::Array(desc))
}

/// `0 → S → a(parts) → a(parts)/S → 0` with `S` generated by random vectors.
pub fn graded_ses(rng: &mut impl Rng, ring: Ring, truncation: usize) -> (SesWitness, Value) {
    let vars = rng.gen_range(1..=2);
    let (parts, parts_desc) = part_list(rng, ring, 3, 2);
    let y = functor_a(ring, &parts, vars, truncation).expect("same ring");
    let (sub, gens) = random_subobject(rng, &y, 3);
    let w = SesWitness::from_submodule(&sub).expect("subobjects give exact sequences");
    (w, json!({ "vars": vars, "parts": parts_desc, "generators": gens }))
}

/// A `Nil` object supported in degrees `≤ 4`: `a(parts)` modulo everything
/// from degree 5 on, then modulo a random subobject.
pub fn nil_object(rng: &mut impl Rng, ring: Ring, truncation: usize) -> (GradedModule, Value) {
    let vars = rng.gen_range(1..=2);
    let (parts, parts_desc) = part_list(rng, ring, 3, 2);
    let y = functor_a(ring, &parts, vars, truncation).expect("same ring");
    let mut gens: Vec<Vec<Vec<BigRational>>> = vec![Vec::new(); truncation + 1];
    let g = y.component(5).generators();
    gens[5] = (0..g)
        .map(|i| (0..g).map(|j| rational(i64::from(i == j))).collect())
        .collect();
    let (nil, _) = GradedSubmodule::generated_by(&y, &gens).expect("degree-5 basis").quotient();
    let (sub, sub_desc) = random_subobject(rng, &nil, 3);
    let (x, _) = sub.quotient();
    (x, json!({ "vars": vars, "parts": parts_desc, "generators": sub_desc }))
}

/// Commuting endomorphisms `c0 + c1 M` of `R^r / (c)`.
pub fn commuting_affine(rng: &mut impl Rng, ring: Ring, max_rank: usize, max_endos: usize) -> (AffineObject, Value) {
    let r = rng.gen_range(1..=max_rank);
    let m = int_matrix(rng, ring, r, r, 2);
    let id = Matrix::identity(ring, r);
    let polys: Vec<[i64; 2]> = (0..rng.gen_range(1..=max_endos))
        .map(|_| [rng.gen_range(-2..=2), rng.gen_range(-2..=2)])
        .collect();
    let endos = polys
        .iter()
        .map(|c| id.scale(&c[0].into()).add(&m.scale(&c[1].into())).expect("shapes"))
        .collect();
    let torsion = *modulus_for(ring).choose(rng).expect("nonempty");
    let module = if torsion == 0 {
        PresentedModule::free(ring, r)
    } else {
        PresentedModule::from_relations(&Matrix::scalar(ring, r, &BigInt::from(torsion)))
    };
    let x = AffineObject::new(module, endos).expect("polynomials in one matrix commute");
    (x, json!({ "rank": r, "torsion": torsion, "base": m.to_string(), "polynomials": polys }))
}

pub fn random_submodule(rng: &mut impl Rng, x: &AffineObject) -> (Submodule, Value) {
    let r = x.generators();
    let k = rng.gen_range(1..=2);
    let g = int_matrix(rng, x.ring(), r, k, 3);
    let sub = x.subobject(&Submodule::new(&g)).expect("ambient matches");
    (sub, json!(g.to_string()))
}

/// `x_0 = x`, `x_n = f x_{n-1} + λ_n x_{n-1}` where the extra term `λ_n`
/// is drawn from `{1, 2, 3}` up to a random cut-off and absent afterwards.
pub fn random_filtration(
    rng: &mut impl Rng,
    x: &AffineObject,
    family: &[usize],
    window: usize,
) -> (FFiltration, Value) {
    let cut = rng.gen_range(0..=window + 2);
    let mut steps = vec![x.whole()];
    let mut extras = Vec::with_capacity(window);
    for n in 1..=window {
        let prev = steps[n - 1].clone();
        let mut next = x.apply_family(family, &prev);
        let extra = if n <= cut { rng.gen_range(1..=3) } else { 0 };
        if extra > 0 {
            let scaled = prev.image_under(&Matrix::scalar(x.ring(), x.generators(), &extra.into()));
            next = x
                .subobject(&next.sum(&scaled).expect("ambient matches"))
                .expect("ambient matches");
        }
        extras.push(extra);
        steps.push(next);
    }
    let fil = FFiltration::new(x.clone(), family.to_vec(), steps).expect("built as an f-filtration");
    (fil, json!({ "extra_scalars": extras }))
}

/// Nilpotent commuting family `c0 N + c1 N^2` for a strictly lower-triangular
/// `N` conjugated by a random unimodular matrix.
pub fn nilpotent_affine(rng: &mut impl Rng, ring: Ring, max_rank: usize) -> (AffineObject, Value) {
    let r = rng.gen_range(1..=max_rank);
    let lower = Matrix::from_fn(ring, r, r, |i, j| BigInt::from(if i > j { rng.gen_range(-2..=2) } else { 0 }));
    let (p, p_inv) = unimodular_pair(rng, ring, r);
    let n = p.mul(&lower).and_then(|m| m.mul(&p_inv)).expect("shapes");
    let n2 = n.mul(&n).expect("square");
    let polys: Vec<[i64; 2]> = (0..rng.gen_range(1..=2))
        .map(|_| [rng.gen_range(-2..=2), rng.gen_range(0..=1)])
        .collect();
    let endos = polys
        .iter()
        .map(|c| n.scale(&c[0].into()).add(&n2.scale(&c[1].into())).expect("shapes"))
        .collect();
    let torsion = *modulus_for(ring).choose(rng).expect("nonempty");
    let module = if torsion == 0 {
        PresentedModule::free(ring, r)
    } else {
        PresentedModule::from_relations(&Matrix::scalar(ring, r, &BigInt::from(torsion)))
    };
    let x = AffineObject::new(module, endos).expect("polynomials in one matrix commute");
    (x, json!({ "rank": r, "torsion": torsion, "nilpotent": n.to_string(), "polynomials": polys }))
}

/// A product of elementary matrices and its inverse.
fn unimodular_pair(rng: &mut impl Rng, ring: Ring, r: usize) -> (Matrix, Matrix) {
    let mut p = Matrix::identity(ring, r);
    let mut p_inv = Matrix::identity(ring, r);
    if r < 2 {
        return (p, p_inv);
    }
    for _ in 0..rng.gen_range(0..=3) {
        let i = rng.gen_range(0..r);
        let j = (i + rng.gen_range(1..r)) % r;
        let c: i64 = rng.gen_range(-2..=2);
        let e = Matrix::from_fn(ring, r, r, |a, b| BigInt::from(i64::from(a == b) + if (a, b) == (i, j) { c } else { 0 }));
        let e_inv = Matrix::from_fn(ring, r, r, |a, b| BigInt::from(i64::from(a == b) - if (a, b) == (i, j) { c } else { 0 }));
        p = e.mul(&p).expect("square");
        p_inv = p_inv.mul(&e_inv).expect("square");
    }
    (p, p_inv)
}

pub fn laurent(rng: &mut impl Rng, vars: usize) -> LaurentPolynomial {
    let terms: Vec<(Vec<i64>, BigInt)> = (0..rng.gen_range(0..5))
        .map(|_| {
            let e = (0..vars).map(|_| rng.gen_range(-3..=3)).collect();
            (e, BigInt::from(rng.gen_range(-5..=5)))
        })
        .collect();
    LaurentPolynomial::from_terms(vars, terms).expect("few variables")
}

/// Up to 6x6, mostly small entries, sometimes rank deficient or with a large entry.
pub fn smith_matrix(rng: &mut impl Rng) -> Matrix {
    let ring = Ring::Integers;
    let rows = rng.gen_range(0..=6);
    let cols = rng.gen_range(0..=6);
    let mut m = int_matrix(rng, ring, rows, cols, 9);
    if rows > 1 && rng.gen_bool(0.2) {
        // duplicate a scaled row to force a rank drop
        let k: i64 = rng.gen_range(-3..=3);
        let src = m.row(0).to_vec();
        let dup = Matrix::from_fn(ring, 1, cols, |_, j| src[j].to_integer() * k);
        m.set_block(rows - 1, 0, &dup);
    }
    if rows > 0 && cols > 0 && rng.gen_bool(0.1) {
        let big = Matrix::from_fn(ring, 1, 1, |_, _| BigInt::from(rng.gen_range(-1_000_000i64..=1_000_000)) * 1_000_003);
        m.set_block(rng.gen_range(0..rows), rng.gen_range(0..cols), &big);
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible() {
        let a: Vec<u32> = (0..4).map(|_| stream(7, 3).gen()).collect();
        let b: Vec<u32> = (0..4).map(|_| stream(7, 3).gen()).collect();
        assert_eq!(a, b);
        let c: u32 = stream(7, 4).gen();
        assert_ne!(a[0], c);
    }

    #[test]
    fn unimodular_pairs_are_inverse() {
        let mut rng = stream(1, 0);
        for _ in 0..20 {
            let (p, q) = unimodular_pair(&mut rng, Ring::Integers, 3);
            assert_eq!(p.mul(&q).unwrap(), Matrix::identity(Ring::Integers, 3));
        }
    }

    #[test]
    fn generated_cubes_are_valid() {
        let mut rng = stream(2, 0);
        for _ in 0..10 {
            let (cube, _) = polynomial_cube(&mut rng, Ring::Integers, 3);
            assert!(cube.validate().is_valid());
        }
    }
}
