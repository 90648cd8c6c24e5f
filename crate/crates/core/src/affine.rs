//! Modules with commuting endomorphisms (objects of `Spec_A` for a polynomial
//! algebra `A`), `f`-filtrations, stability and the Artin–Rees index.
//!
//! Subobjects of an object `R^g / N` are stored as submodules of `R^g` that
//! contain `N`. Images of `f`-powers are exact images, never saturated.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::module::{
    is_well_defined, is_zero_map, subquotient, ModulePresentation, PresentedModule, Submodule,
};
use crate::ring::Ring;

/// A module together with commuting endomorphisms `φ_1..φ_r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineObject {
    module: PresentedModule,
    endos: Vec<Matrix>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Nilpotency {
    /// Smallest `N` with `φ_i^N = 0` for every selected `i`.
    Nilpotent(usize),
    NotNilpotent,
}

impl AffineObject {
    pub fn new(module: PresentedModule, endos: Vec<Matrix>) -> Result<AffineObject> {
        let g = module.generators();
        for (i, e) in endos.iter().enumerate() {
            if e.ring() != module.ring() {
                return Err(Error::RingMismatch {
                    expected: module.ring(),
                    found: e.ring(),
                });
            }
            if e.shape() != (g, g) {
                return Err(Error::DimensionMismatch {
                    op: "endomorphism",
                    left: e.shape(),
                    right: (g, g),
                });
            }
            if !is_well_defined(e, &module, &module) {
                return Err(Error::IllDefinedMap {
                    context: alloc::format!("endomorphism {i}"),
                });
            }
        }
        for i in 0..endos.len() {
            for j in i + 1..endos.len() {
                let c = endos[i].mul(&endos[j])?.sub(&endos[j].mul(&endos[i])?)?;
                if !is_zero_map(&c, &module, &module) {
                    return Err(Error::NonCommutingEndos { i, j });
                }
            }
        }
        Ok(AffineObject { module, endos })
    }

    /// Free module `R^dim` with the given endomorphisms.
    pub fn free(ring: Ring, dim: usize, endos: Vec<Matrix>) -> Result<AffineObject> {
        AffineObject::new(PresentedModule::free(ring, dim), endos)
    }

    pub fn ring(&self) -> Ring {
        self.module.ring()
    }

    pub fn module(&self) -> &PresentedModule {
        &self.module
    }

    pub fn generators(&self) -> usize {
        self.module.generators()
    }

    pub fn endos(&self) -> &[Matrix] {
        &self.endos
    }

    pub fn relations(&self) -> &Submodule {
        self.module.relations()
    }

    /// The whole object as a subobject of itself.
    pub fn whole(&self) -> Submodule {
        Submodule::full(self.ring(), self.generators())
    }

    /// The zero subobject (the relation module).
    pub fn nothing(&self) -> Submodule {
        self.relations().clone()
    }

    /// The smallest subobject containing `sub`: relations are added and the
    /// result is closed under every endomorphism.
    pub fn subobject(&self, sub: &Submodule) -> Result<Submodule> {
        let mut acc = sub.sum(self.relations())?;
        loop {
            let mut next = acc.clone();
            for phi in &self.endos {
                next = next.sum(&acc.image_under(phi))?;
            }
            if next == acc {
                return Ok(acc);
            }
            acc = next;
        }
    }

    fn check_family(&self, family: &[usize]) -> Result<()> {
        if family.is_empty() {
            return Err(Error::InvalidParameter("the family f must be nonempty".into()));
        }
        if let Some(&bad) = family.iter().find(|&&i| i >= self.endos.len()) {
            return Err(Error::InvalidParameter(alloc::format!(
                "endomorphism index {bad} out of range"
            )));
        }
        Ok(())
    }

    /// `f S = Σ_{i ∈ F} φ_i(S)` (plus relations).
    pub fn apply_family(&self, family: &[usize], sub: &Submodule) -> Submodule {
        let mut acc = self.relations().clone();
        for &i in family {
            acc = acc.sum(&sub.image_under(&self.endos[i])).expect("ambient");
        }
        acc
    }

    /// `f^n S`.
    pub fn apply_family_power(&self, family: &[usize], n: usize, sub: &Submodule) -> Submodule {
        let mut acc = self.subobject(sub).expect("ambient");
        for _ in 0..n {
            acc = self.apply_family(family, &acc);
        }
        acc
    }

    /// `f x = Σ im(φ_i)`.
    pub fn ff_sub(&self, family: &[usize]) -> Result<Submodule> {
        self.check_family(family)?;
        Ok(self.apply_family(family, &self.whole()))
    }

    /// `x / f x`; every selected endomorphism acts as zero on the result.
    pub fn reduce_mod_ff(&self, family: &[usize]) -> Result<AffineObject> {
        let fx = self.ff_sub(family)?;
        Ok(AffineObject {
            module: PresentedModule::new(fx),
            endos: self.endos.clone(),
        })
    }

    /// Per-endomorphism nilpotency, decided exactly.
    ///
    /// Images `φ^k(x)` are computed until they vanish, stabilize at a nonzero
    /// subobject, or pass `rank + torsion length`, beyond which a nilpotent map
    /// must already be zero.
    pub fn nil_index(&self, family: &[usize]) -> Result<Nilpotency> {
        self.check_family(family)?;
        let p = self.module.presentation();
        let torsion_length: usize = p.invariant_factors.iter().map(|d| d.bits() as usize).sum();
        let bound = p.free_rank + torsion_length;
        let mut worst = 0;
        for &i in family {
            let mut image = self.whole();
            let mut k = 0;
            loop {
                if image == *self.relations() {
                    break;
                }
                if k > bound {
                    return Ok(Nilpotency::NotNilpotent);
                }
                let next = self.apply_family(&[i], &image);
                if next == image {
                    return Ok(Nilpotency::NotNilpotent);
                }
                image = next;
                k += 1;
            }
            worst = worst.max(k);
        }
        Ok(Nilpotency::Nilpotent(worst))
    }

    /// Smallest `N` with every degree-`N` monomial in the family acting as zero,
    /// i.e. `f^N x = 0`. Products of endomorphisms are formed explicitly.
    pub fn ideal_nil_index(&self, family: &[usize]) -> Result<Option<usize>> {
        let Nilpotency::Nilpotent(n) = self.nil_index(family)? else {
            return Ok(None);
        };
        // f^N = 0 once N ≥ r(n-1)+1 by pigeonhole on exponents
        let limit = family.len() * n.saturating_sub(1) + 1;
        for degree in 0..=limit {
            let vanishes = monomials(family.len(), degree).iter().all(|mono| {
                let op = self.monomial_operator(family, mono);
                is_zero_map(&op, &self.module, &self.module)
            });
            if vanishes {
                return Ok(Some(degree));
            }
        }
        unreachable!("nilpotent families vanish by the pigeonhole bound")
    }

    fn monomial_operator(&self, family: &[usize], exponents: &[usize]) -> Matrix {
        let mut op = Matrix::identity(self.ring(), self.generators());
        for (&i, &e) in family.iter().zip(exponents) {
            op = op.mul(&self.endos[i].pow(e as u32).expect("square")).expect("shapes");
        }
        op
    }

    /// Componentwise direct sum.
    pub fn direct_sum(&self, other: &AffineObject) -> Result<AffineObject> {
        if self.endos.len() != other.endos.len() {
            return Err(Error::InvalidParameter(
                "direct sum needs the same number of endomorphisms".into(),
            ));
        }
        let ring = self.ring();
        let module = PresentedModule::direct_sum(&[self.module.clone(), other.module.clone()], ring);
        let endos = self
            .endos
            .iter()
            .zip(&other.endos)
            .map(|(a, b)| Matrix::block_diag(ring, &[a.clone(), b.clone()]))
            .collect();
        AffineObject::new(module, endos)
    }

    /// Whether `f : self → other` commutes with every endomorphism.
    pub fn is_equivariant(&self, f: &Matrix, other: &AffineObject) -> bool {
        is_well_defined(f, &self.module, &other.module)
            && self.endos.len() == other.endos.len()
            && self.endos.iter().zip(&other.endos).all(|(a, b)| {
                let lhs = f.mul(a).expect("shapes");
                let rhs = b.mul(f).expect("shapes");
                is_zero_map(&lhs.sub(&rhs).expect("shapes"), &self.module, &other.module)
            })
    }

    /// Kernel of an equivariant map, with the restricted endomorphisms.
    pub fn equivariant_kernel(&self, f: &Matrix, other: &AffineObject) -> Result<AffineObject> {
        if !self.is_equivariant(f, other) {
            return Err(Error::IllDefinedMap {
                context: "map is not equivariant".into(),
            });
        }
        let kernel = Submodule::preimage(f, other.relations());
        restrict(self, &kernel)
    }

    /// Cokernel of an equivariant map, with the induced endomorphisms.
    pub fn equivariant_cokernel(&self, f: &Matrix, other: &AffineObject) -> Result<AffineObject> {
        if !self.is_equivariant(f, other) {
            return Err(Error::IllDefinedMap {
                context: "map is not equivariant".into(),
            });
        }
        let image = self.whole().image_under(f);
        AffineObject::new(other.module.quotient(&image)?, other.endos.clone())
    }
}

/// The subobject `sub ⊇ relations` as an affine object in its own right,
/// written in the canonical basis of `sub`.
pub fn restrict(x: &AffineObject, sub: &Submodule) -> Result<AffineObject> {
    let sub = x.subobject(sub)?;
    let ring = x.ring();
    let basis = sub.generators();
    let coords = |v: &[num_rational::BigRational]| sub.coordinates(v).ok_or(Error::NoSolution);
    let rel_cols = x
        .relations()
        .basis_vectors()
        .iter()
        .map(|v| coords(v))
        .collect::<Result<Vec<_>>>()?;
    let module = PresentedModule::from_relations(&Matrix::from_columns(ring, sub.rank(), &rel_cols));
    let mut endos = Vec::with_capacity(x.endos.len());
    for e in &x.endos {
        let images = e.mul(&basis)?;
        let cols = images
            .columns()
            .map(|c| coords(&c))
            .collect::<Result<Vec<_>>>()
            .map_err(|_| Error::IllDefinedMap {
                context: "subobject is not closed under the endomorphisms".into(),
            })?;
        endos.push(Matrix::from_columns(ring, sub.rank(), &cols));
    }
    AffineObject::new(module, endos)
}

/// Exponent vectors of the given total degree in `vars` variables, lexicographic.
pub(crate) fn monomials(vars: usize, degree: usize) -> Vec<Vec<usize>> {
    if vars == 0 {
        return if degree == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=degree {
        for mut rest in monomials(vars - 1, degree - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Decreasing filtration `x = x_0 ⊇ x_1 ⊇ … ⊇ x_D` with `f x_n ⊆ x_{n+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FFiltration {
    object: AffineObject,
    family: Vec<usize>,
    steps: Vec<Submodule>,
}

/// Outcome of [`FFiltration::stability_index`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityReport {
    /// Smallest `n0` with `f x_n = x_{n+1}` for `n0 ≤ n < D`; `None` when the
    /// window shows no equality at its top (a non-verdict, not instability).
    pub stable_from: Option<usize>,
    /// Smallest `m` such that `x_0..x_m` generate every later step through
    /// monomial images.
    pub generated_from: Option<usize>,
    /// The two verdicts agree.
    pub cross_check: bool,
    pub window: usize,
}

impl FFiltration {
    pub fn new(object: AffineObject, family: Vec<usize>, steps: Vec<Submodule>) -> Result<FFiltration> {
        object.check_family(&family)?;
        if steps.is_empty() {
            return Err(Error::InvalidParameter("a filtration needs at least x_0".into()));
        }
        let steps = steps
            .iter()
            .map(|s| object.subobject(s))
            .collect::<Result<Vec<_>>>()?;
        if steps[0] != object.whole() {
            return Err(Error::NotDecreasing { step: 0 });
        }
        for n in 0..steps.len() - 1 {
            if !steps[n].contains(&steps[n + 1]) {
                return Err(Error::NotDecreasing { step: n + 1 });
            }
            if !steps[n + 1].contains(&object.apply_family(&family, &steps[n])) {
                return Err(Error::InvalidFiltration { step: n });
            }
        }
        Ok(FFiltration {
            object,
            family,
            steps,
        })
    }

    /// The `f`-adic filtration `x_n = f^n x`, `0 ≤ n ≤ window`.
    pub fn adic(object: AffineObject, family: Vec<usize>, window: usize) -> Result<FFiltration> {
        object.check_family(&family)?;
        let mut steps = vec![object.whole()];
        for n in 0..window {
            steps.push(object.apply_family(&family, &steps[n]));
        }
        FFiltration::new(object, family, steps)
    }

    pub fn window(&self) -> usize {
        self.steps.len() - 1
    }

    pub fn steps(&self) -> &[Submodule] {
        &self.steps
    }

    pub fn object(&self) -> &AffineObject {
        &self.object
    }

    pub fn stability_index(&self) -> StabilityReport {
        let window = self.window();
        let stable_from = {
            let last_failure = (0..window)
                .rev()
                .find(|&n| self.object.apply_family(&self.family, &self.steps[n]) != self.steps[n + 1]);
            let n0 = last_failure.map_or(0, |n| n + 1);
            (n0 < window).then_some(n0)
        };
        let generated_from = self.generation_index();
        StabilityReport {
            stable_from,
            generated_from,
            cross_check: stable_from == generated_from,
            window,
        }
    }

    // Blow-up generation criterion: x_n = Σ_{k ≤ m} Σ_{|μ| = n-k} μ(x_k) for m < n ≤ D.
    fn generation_index(&self) -> Option<usize> {
        let window = self.window();
        let r = self.family.len();
        let mut operators: BTreeMap<Vec<usize>, Matrix> = BTreeMap::new();
        for degree in 1..=window {
            for mono in monomials(r, degree) {
                let op = self.object.monomial_operator(&self.family, &mono);
                operators.insert(mono, op);
            }
        }
        let generated = |m: usize, n: usize| -> Submodule {
            let mut acc = self.object.nothing();
            for k in 0..=m.min(n - 1) {
                for mono in monomials(r, n - k) {
                    acc = acc
                        .sum(&self.steps[k].image_under(&operators[&mono]))
                        .expect("ambient");
                }
            }
            acc
        };
        (0..window).find(|&m| (m + 1..=window).all(|n| generated(m, n) == self.steps[n]))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArtinReesReport {
    /// Smallest `n0` with `f^n x ∩ y = f^{n-n0}(f^{n0} x ∩ y)` for
    /// `n0 ≤ n ≤ window`; `None` is a non-verdict.
    pub n0: Option<usize>,
    pub window: usize,
}

/// Abstract Artin–Rees index of a subobject `y ⊆ x` for the family `F`.
pub fn artin_rees_index(
    x: &AffineObject,
    y: &Submodule,
    family: &[usize],
    window: usize,
) -> Result<ArtinReesReport> {
    x.check_family(family)?;
    if y.ambient() != x.generators() {
        return Err(Error::AmbientMismatch {
            left: x.generators(),
            right: y.ambient(),
        });
    }
    let y = x.subobject(y)?;
    let mut powers = vec![x.whole()];
    for n in 0..window {
        powers.push(x.apply_family(family, &powers[n]));
    }
    let induced: Vec<Submodule> = powers
        .iter()
        .map(|p| p.intersect(&y).expect("ambient"))
        .collect();
    let n0 = (0..=window).find(|&n0| {
        let mut current = induced[n0].clone();
        for n in n0..=window {
            if n > n0 {
                current = x.apply_family(family, &current);
            }
            if current != induced[n] {
                return false;
            }
        }
        true
    });
    Ok(ArtinReesReport { n0, window })
}

/// `f`-adic dévissage `x = y_0 ⊇ y_1 ⊇ … ⊇ y_N = 0`, `y_k = f^k x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Devissage {
    pub steps: Vec<Submodule>,
}

impl Devissage {
    /// Number of subquotients `y_k / y_{k+1}`.
    pub fn length(&self) -> usize {
        self.steps.len() - 1
    }

    /// Presentations of the subquotients, top first.
    pub fn quotients(&self) -> Vec<ModulePresentation> {
        self.steps
            .windows(2)
            .map(|w| subquotient(&w[0], &w[1]).expect("decreasing"))
            .collect()
    }
}

pub fn devissage_filtration(x: &AffineObject, family: &[usize]) -> Result<Devissage> {
    if x.nil_index(family)? == Nilpotency::NotNilpotent {
        return Err(Error::NotNilpotent);
    }
    let mut steps = vec![x.whole()];
    while *steps.last().expect("nonempty") != x.nothing() {
        let next = x.apply_family(family, steps.last().expect("nonempty"));
        steps.push(next);
    }
    Ok(Devissage { steps })
}

/// Whether every selected endomorphism maps `upper` into `lower`, i.e. acts as
/// zero on `upper / lower`.
pub fn annihilates_quotient(x: &AffineObject, family: &[usize], upper: &Submodule, lower: &Submodule) -> bool {
    family
        .iter()
        .all(|&i| lower.contains(&upper.image_under(&x.endos[i])))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(rows: &[&[i64]]) -> Matrix {
        Matrix::from_i64(Ring::Integers, rows)
    }

    fn times(k: i64) -> AffineObject {
        AffineObject::free(Ring::Integers, 1, vec![z(&[&[k]])]).unwrap()
    }

    fn sub(rows: &[&[i64]]) -> Submodule {
        Submodule::new(&z(rows))
    }

    #[test]
    fn commuting_is_enforced() {
        let a = z(&[&[0, 1], &[0, 0]]);
        let b = z(&[&[0, 0], &[1, 0]]);
        assert_eq!(
            AffineObject::free(Ring::Integers, 2, vec![a, b]),
            Err(Error::NonCommutingEndos { i: 0, j: 1 })
        );
    }

    #[test]
    fn ff_sub_and_reduction() {
        let x = times(2);
        assert_eq!(x.ff_sub(&[0]).unwrap(), sub(&[&[2]]));
        let q = x.reduce_mod_ff(&[0]).unwrap();
        assert_eq!(q.module().presentation().to_string(), "Z/2");
        assert!(is_zero_map(&q.endos()[0], q.module(), q.module()));
        assert_eq!(q.reduce_mod_ff(&[0]).unwrap().module(), q.module());

        let zero = AffineObject::free(Ring::Integers, 2, vec![Matrix::zeros(Ring::Integers, 2, 2)]).unwrap();
        assert!(zero.ff_sub(&[0]).unwrap().is_zero());
        assert_eq!(zero.reduce_mod_ff(&[0]).unwrap().module(), zero.module());

        let inv = AffineObject::free(Ring::Rationals, 2, vec![Matrix::from_i64(Ring::Rationals, &[&[2, 1], &[0, 3]])]).unwrap();
        assert!(inv.ff_sub(&[0]).unwrap().is_full());
        assert!(inv.reduce_mod_ff(&[0]).unwrap().module().is_zero());
        assert!(x.ff_sub(&[]).is_err());
    }

    #[test]
    fn nilpotency() {
        let n = AffineObject::free(Ring::Integers, 2, vec![z(&[&[0, 1], &[0, 0]])]).unwrap();
        assert_eq!(n.nil_index(&[0]).unwrap(), Nilpotency::Nilpotent(2));
        let id = AffineObject::free(Ring::Integers, 2, vec![Matrix::identity(Ring::Integers, 2)]).unwrap();
        assert_eq!(id.nil_index(&[0]).unwrap(), Nilpotency::NotNilpotent);
        assert_eq!(times(2).nil_index(&[0]).unwrap(), Nilpotency::NotNilpotent);
        // x2 on Z/8 is nilpotent of index 3
        let z8 = AffineObject::new(PresentedModule::from_relations(&z(&[&[8]])), vec![z(&[&[2]])]).unwrap();
        assert_eq!(z8.nil_index(&[0]).unwrap(), Nilpotency::Nilpotent(3));
    }

    #[test]
    fn ideal_index_exceeds_elementwise_index() {
        // Q[a,b]/(a^2, b^2) on basis 1, a, b, ab
        let a = Matrix::from_i64(Ring::Rationals, &[&[0, 0, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 1, 0]]);
        let b = Matrix::from_i64(Ring::Rationals, &[&[0, 0, 0, 0], &[0, 0, 0, 0], &[1, 0, 0, 0], &[0, 1, 0, 0]]);
        let x = AffineObject::free(Ring::Rationals, 4, vec![a, b]).unwrap();
        assert_eq!(x.nil_index(&[0, 1]).unwrap(), Nilpotency::Nilpotent(2));
        assert_eq!(x.ideal_nil_index(&[0, 1]).unwrap(), Some(3));
        assert_eq!(devissage_filtration(&x, &[0, 1]).unwrap().length(), 3);
    }

    #[test]
    fn stability_examples() {
        let x = times(2);
        let adic = FFiltration::adic(x.clone(), vec![0], 6).unwrap();
        let r = adic.stability_index();
        assert_eq!(r.stable_from, Some(0));
        assert!(r.cross_check);

        let constant = FFiltration::new(x.clone(), vec![0], vec![x.whole(); 7]).unwrap();
        let r = constant.stability_index();
        assert_eq!(r.stable_from, None);
        assert_eq!(r.generated_from, None);
        assert!(r.cross_check);

        let mut steps = vec![x.whole(); 4];
        for k in 1..=4 {
            steps.push(sub(&[&[1 << k]]));
        }
        let shifted = FFiltration::new(x.clone(), vec![0], steps).unwrap();
        let r = shifted.stability_index();
        assert_eq!(r.stable_from, Some(3));
        assert_eq!(r.generated_from, Some(3));

        let bad = FFiltration::new(x.clone(), vec![0], vec![x.whole(), sub(&[&[4]])]);
        assert_eq!(bad, Err(Error::InvalidFiltration { step: 0 }));
        let rising = FFiltration::new(x.clone(), vec![0], vec![x.whole(), sub(&[&[2]]), x.whole()]);
        assert_eq!(rising, Err(Error::NotDecreasing { step: 2 }));
    }

    #[test]
    fn artin_rees_examples() {
        let x = times(4);
        let r = artin_rees_index(&x, &sub(&[&[2]]), &[0], 12).unwrap();
        assert_eq!(r.n0, Some(1));
        assert_eq!(artin_rees_index(&x, &x.whole(), &[0], 12).unwrap().n0, Some(0));
        assert_eq!(artin_rees_index(&x, &Submodule::zero(Ring::Integers, 1), &[0], 12).unwrap().n0, Some(0));
        assert!(matches!(
            artin_rees_index(&x, &Submodule::zero(Ring::Integers, 2), &[0], 12),
            Err(Error::AmbientMismatch { .. })
        ));
    }

    #[test]
    fn devissage_examples() {
        let zero_map = AffineObject::free(Ring::Integers, 3, vec![Matrix::zeros(Ring::Integers, 3, 3)]).unwrap();
        assert_eq!(devissage_filtration(&zero_map, &[0]).unwrap().length(), 1);

        let n = AffineObject::free(Ring::Integers, 2, vec![z(&[&[0, 1], &[0, 0]])]).unwrap();
        let d = devissage_filtration(&n, &[0]).unwrap();
        assert_eq!(d.length(), 2);
        assert_eq!(d.steps[1], sub(&[&[1], &[0]]));
        for w in d.steps.windows(2) {
            assert!(annihilates_quotient(&n, &[0], &w[0], &w[1]));
        }

        let empty = AffineObject::free(Ring::Integers, 0, vec![Matrix::zeros(Ring::Integers, 0, 0)]).unwrap();
        assert_eq!(devissage_filtration(&empty, &[0]).unwrap().length(), 0);
        assert_eq!(devissage_filtration(&times(2), &[0]), Err(Error::NotNilpotent));
    }

    #[test]
    fn equivariant_kernels_and_cokernels() {
        // x = Z^2 with φ = diag(2,2); f = projection to the first coordinate
        let x = AffineObject::free(Ring::Integers, 2, vec![z(&[&[2, 0], &[0, 2]])]).unwrap();
        let y = times(2);
        let f = z(&[&[1, 0]]);
        let k = x.equivariant_kernel(&f, &y).unwrap();
        assert_eq!(k.module().presentation().to_string(), "Z");
        assert_eq!(k.endos()[0], z(&[&[2]]));
        let c = x.equivariant_cokernel(&f, &y).unwrap();
        assert!(c.module().is_zero());
        let s = x.direct_sum(&y).unwrap();
        assert_eq!(s.generators(), 3);
        assert!(x.equivariant_kernel(&z(&[&[1, 1]]), &times(3)).is_err());
    }
}
