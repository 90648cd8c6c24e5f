//! Finitely generated modules: canonical submodules, presentations, Smith normal
//! form, kernels, cokernels, homology and intersections.

use core::fmt;

use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::elim::{field_rref, int_invariant_factors, int_row_hnf, int_smith};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::Ring;

/// Isomorphism type of a finitely generated module: `R^free_rank ⊕ ⊕ R/(d_i)`.
///
/// Over a field the invariant factor list is always empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModulePresentation {
    pub ring: Ring,
    pub free_rank: usize,
    pub invariant_factors: Vec<BigInt>,
}

impl ModulePresentation {
    pub fn zero(ring: Ring) -> ModulePresentation {
        ModulePresentation::free(ring, 0)
    }

    pub fn free(ring: Ring, rank: usize) -> ModulePresentation {
        ModulePresentation {
            ring,
            free_rank: rank,
            invariant_factors: Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Direct sum, with the torsion parts recombined into a divisibility chain.
    pub fn direct_sum(&self, other: &ModulePresentation) -> ModulePresentation {
        let mut factors: Vec<BigInt> = self
            .invariant_factors
            .iter()
            .chain(&other.invariant_factors)
            .cloned()
            .collect();
        let factors = crate::elim::normalize_diagonal(&mut factors)
            .into_iter()
            .filter(|d| !d.is_one())
            .collect();
        ModulePresentation {
            ring: self.ring,
            free_rank: self.free_rank + other.free_rank,
            invariant_factors: factors,
        }
    }

    /// Presentation of `R^gens / <columns of relations>`.
    pub fn from_relations(ring: Ring, generators: usize, relations: &Matrix) -> ModulePresentation {
        debug_assert_eq!(relations.rows(), generators);
        if relations.cols() == 0 {
            return ModulePresentation::free(ring, generators);
        }
        if ring.is_field() {
            let r = rank(relations);
            return ModulePresentation::free(ring, generators - r);
        }
        let diag = int_invariant_factors(relations.to_int_rows(), relations.cols());
        let free_rank = generators - diag.len();
        ModulePresentation {
            ring,
            free_rank,
            invariant_factors: diag.into_iter().filter(|d| !d.is_one()).collect(),
        }
    }
}

impl fmt::Display for ModulePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let base = match self.ring {
            Ring::Integers => "Z",
            Ring::Rationals => "Q",
            Ring::PrimeField(_) => "F",
        };
        let mut first = true;
        if self.free_rank > 0 {
            if self.free_rank == 1 {
                f.write_str(base)?;
            } else {
                write!(f, "{base}^{}", self.free_rank)?;
            }
            first = false;
        }
        for d in &self.invariant_factors {
            if !first {
                f.write_str(" + ")?;
            }
            write!(f, "{base}/{d}")?;
            first = false;
        }
        Ok(())
    }
}

/// Result of [`smith_normal_form`]: `u * a * v == d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: Matrix,
    pub d: Matrix,
    pub v: Matrix,
}

impl SmithDecomposition {
    /// Diagonal entries of `d`, including trailing zeros.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.get(i, i).to_integer())
            .collect()
    }
}

/// Smith normal form over `Z`, with unimodular transforms.
pub fn smith_normal_form(a: &Matrix) -> Result<SmithDecomposition> {
    if a.ring() != Ring::Integers {
        return Err(Error::RequiresIntegers {
            op: "smith_normal_form",
            found: a.ring(),
        });
    }
    let (m, n) = a.shape();
    let raw = int_smith(a.to_int_rows(), n, true);
    let mut d = Matrix::zeros(Ring::Integers, m, n);
    for (i, v) in raw.diag.iter().enumerate() {
        d.set(i, i, BigRational::from_integer(v.clone()));
    }
    let u = Matrix::from_int_rows(Ring::Integers, m, m, &raw.u.expect("tracked"));
    let v = Matrix::from_int_rows(Ring::Integers, n, n, &raw.v.expect("tracked"));
    Ok(SmithDecomposition { u, d, v })
}

/// Rank over the fraction field.
pub fn rank(a: &Matrix) -> usize {
    if a.rows() == 0 || a.cols() == 0 {
        return 0;
    }
    match a.ring() {
        Ring::Integers => {
            let mut rows = a.to_int_rows();
            int_row_hnf(&mut rows, a.cols()).len()
        }
        ring => {
            let mut rows = a.to_rows();
            field_rref(ring, &mut rows, a.cols()).len()
        }
    }
}

/// A submodule of `R^ambient`, stored by canonical generators.
///
/// Over `Z` the generators are the columns of the column Hermite normal form;
/// over a field they are the reduced column echelon basis. Two submodules are
/// equal exactly when their canonical generator matrices are equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Submodule {
    ring: Ring,
    ambient: usize,
    // canonical basis vectors, echelon by pivot
    basis: Vec<Vec<BigRational>>,
    pivots: Vec<usize>,
}

impl Submodule {
    pub fn zero(ring: Ring, ambient: usize) -> Submodule {
        Submodule {
            ring,
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ring: Ring, ambient: usize) -> Submodule {
        Submodule::from_vectors(ring, ambient, (0..ambient).map(|i| unit(ambient, i)).collect())
    }

    /// Submodule generated by the columns of `generators`.
    pub fn new(generators: &Matrix) -> Submodule {
        Submodule::from_normalized(generators.ring(), generators.rows(), generators.columns().collect())
    }

    /// Submodule spanned by `vectors`, whose entries are first normalized into `ring`.
    pub fn try_from_vectors(ring: Ring, ambient: usize, vectors: Vec<Vec<BigRational>>) -> Result<Submodule> {
        let vectors = vectors
            .into_iter()
            .map(|v| v.into_iter().map(|x| ring.normalize(x)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Submodule::from_normalized(ring, ambient, vectors))
    }

    /// # Panics
    /// If an entry does not lie in `ring` (a fraction over `Z`, or a
    /// denominator divisible by `p` over `F_p`).
    pub fn from_vectors(ring: Ring, ambient: usize, vectors: Vec<Vec<BigRational>>) -> Submodule {
        Submodule::try_from_vectors(ring, ambient, vectors).expect("entries lie in the ring")
    }

    fn from_normalized(ring: Ring, ambient: usize, vectors: Vec<Vec<BigRational>>) -> Submodule {
        let vectors: Vec<Vec<BigRational>> =
            vectors.into_iter().filter(|v| v.iter().any(|x| !x.is_zero())).collect();
        if vectors.is_empty() {
            return Submodule::zero(ring, ambient);
        }
        let (basis, pivots) = match ring {
            Ring::Integers => {
                let mut rows: Vec<Vec<BigInt>> = vectors
                    .iter()
                    .map(|v| v.iter().map(|x| x.to_integer()).collect())
                    .collect();
                let pivots = int_row_hnf(&mut rows, ambient);
                rows.truncate(pivots.len());
                let basis = rows
                    .into_iter()
                    .map(|r| r.into_iter().map(BigRational::from_integer).collect())
                    .collect();
                (basis, pivots)
            }
            _ => {
                let mut rows = vectors;
                let pivots = field_rref(ring, &mut rows, ambient);
                rows.truncate(pivots.len());
                (rows, pivots)
            }
        };
        Submodule {
            ring,
            ambient,
            basis,
            pivots,
        }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Number of canonical generators; these are linearly independent.
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        // full iff every pivot is a unit and there are `ambient` of them
        self.basis.len() == self.ambient
            && self
                .basis
                .iter()
                .zip(&self.pivots)
                .all(|(b, &p)| self.ring.is_field() || b[p].is_one())
    }

    /// Canonical generators as matrix columns.
    pub fn generators(&self) -> Matrix {
        Matrix::from_columns(self.ring, self.ambient, &self.basis)
    }

    pub fn basis_vectors(&self) -> &[Vec<BigRational>] {
        &self.basis
    }

    /// Coordinates of `v` in the canonical basis, if `v` lies in the submodule.
    pub fn coordinates(&self, v: &[BigRational]) -> Option<Vec<BigRational>> {
        assert_eq!(v.len(), self.ambient);
        let mut rest = v.to_vec();
        let mut coords = vec![BigRational::zero(); self.basis.len()];
        let mut next = 0;
        for c in 0..self.ambient {
            if rest[c].is_zero() {
                continue;
            }
            while next < self.pivots.len() && self.pivots[next] < c {
                next += 1;
            }
            if next == self.pivots.len() || self.pivots[next] != c {
                return None;
            }
            let b = &self.basis[next];
            let q = if self.ring.is_field() {
                self.ring.mul(&rest[c], &self.ring.inv(&b[c]))
            } else {
                let q = &rest[c] / &b[c];
                if !q.is_integer() {
                    return None;
                }
                q
            };
            for (r, x) in rest.iter_mut().zip(b) {
                if !x.is_zero() {
                    *r = self.ring.sub(r, &self.ring.mul(&q, x));
                }
            }
            coords[next] = q;
        }
        Some(coords)
    }

    pub fn contains_vector(&self, v: &[BigRational]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains(&self, other: &Submodule) -> bool {
        other.basis.iter().all(|v| self.contains_vector(v))
    }

    pub fn sum(&self, other: &Submodule) -> Result<Submodule> {
        self.check_ambient(other)?;
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Ok(Submodule::from_vectors(self.ring, self.ambient, vs))
    }

    pub fn intersect(&self, other: &Submodule) -> Result<Submodule> {
        intersect_submodules(self, other)
    }

    /// `phi(self)` for a matrix `phi` with `ambient` columns.
    pub fn image_under(&self, phi: &Matrix) -> Submodule {
        assert_eq!(phi.cols(), self.ambient);
        let vs = self.basis.iter().map(|v| phi.apply(v)).collect();
        Submodule::from_vectors(self.ring, phi.rows(), vs)
    }

    /// `{v : phi v ∈ target}`.
    pub fn preimage(phi: &Matrix, target: &Submodule) -> Submodule {
        assert_eq!(phi.rows(), target.ambient);
        let a = phi.cols();
        let combined = phi
            .hstack(&target.generators().neg())
            .expect("shapes checked");
        let k = kernel_basis(&combined);
        let vs = k.basis.iter().map(|v| v[..a].to_vec()).collect();
        Submodule::from_vectors(phi.ring(), a, vs)
    }

    fn check_ambient(&self, other: &Submodule) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch {
                left: self.ambient,
                right: other.ambient,
            });
        }
        if self.ring != other.ring {
            return Err(Error::RingMismatch {
                expected: self.ring,
                found: other.ring,
            });
        }
        Ok(())
    }
}

fn unit(n: usize, i: usize) -> Vec<BigRational> {
    let mut v = vec![BigRational::zero(); n];
    v[i] = BigRational::one();
    v
}

/// Basis of `{v : a v = 0}`; saturated over `Z`.
pub fn kernel_basis(a: &Matrix) -> Submodule {
    let (m, n) = a.shape();
    let ring = a.ring();
    if n == 0 {
        return Submodule::zero(ring, 0);
    }
    if m == 0 || a.is_zero() {
        return Submodule::full(ring, n);
    }
    let vectors: Vec<Vec<BigRational>> = match ring {
        Ring::Integers => {
            // rows [a^T | I]; unimodular row reduction on the a^T block
            let at = a.transpose().to_int_rows();
            let mut rows: Vec<Vec<BigInt>> = at
                .into_iter()
                .enumerate()
                .map(|(j, mut r)| {
                    r.extend((0..n).map(|k| if k == j { BigInt::one() } else { BigInt::zero() }));
                    r
                })
                .collect();
            let r = int_row_hnf(&mut rows, m).len();
            rows[r..]
                .iter()
                .map(|row| row[m..].iter().cloned().map(BigRational::from_integer).collect())
                .collect()
        }
        _ => {
            let at = a.transpose().to_rows();
            let mut rows: Vec<Vec<BigRational>> = at
                .into_iter()
                .enumerate()
                .map(|(j, mut r)| {
                    r.extend((0..n).map(|k| if k == j { BigRational::one() } else { BigRational::zero() }));
                    r
                })
                .collect();
            let r = field_rref(ring, &mut rows, m).len();
            rows[r..].iter().map(|row| row[m..].to_vec()).collect()
        }
    };
    Submodule::from_vectors(ring, n, vectors)
}

/// Presentation of `target / im(a)`.
pub fn cokernel(a: &Matrix) -> ModulePresentation {
    ModulePresentation::from_relations(a.ring(), a.rows(), a)
}

/// Homology `ker(d_out) / im(d_in)` of a complex of free modules.
///
/// The torsion is that of the full quotient `ker/im` (no saturation of the image).
pub fn homology_at(d_out: &Matrix, d_in: &Matrix) -> Result<ModulePresentation> {
    if d_out.cols() != d_in.rows() {
        return Err(Error::DimensionMismatch {
            op: "homology_at",
            left: d_out.shape(),
            right: d_in.shape(),
        });
    }
    if !d_out.mul(d_in)?.is_zero() {
        return Err(Error::NotAComplex);
    }
    Ok(free_homology(d_out, d_in))
}

// ker(d_out) is saturated, so the torsion of ker/im equals the torsion of
// C/im(d_in), i.e. the nontrivial invariant factors of d_in.
pub(crate) fn free_homology(d_out: &Matrix, d_in: &Matrix) -> ModulePresentation {
    let ring = d_out.ring();
    let n = d_in.rows();
    let kernel_rank = n - rank(d_out);
    if ring.is_field() {
        return ModulePresentation::free(ring, kernel_rank - rank(d_in));
    }
    let factors = if d_in.cols() == 0 || d_in.rows() == 0 {
        Vec::new()
    } else {
        int_invariant_factors(d_in.to_int_rows(), d_in.cols())
    };
    let image_rank = factors.len();
    ModulePresentation {
        ring,
        free_rank: kernel_rank - image_rank,
        invariant_factors: factors.into_iter().filter(|d| !d.is_one()).collect(),
    }
}

/// Presentation of `sup / sub` for submodules `sub ⊆ sup` of the same free module.
pub fn subquotient(sup: &Submodule, sub: &Submodule) -> Result<ModulePresentation> {
    sup.check_ambient(sub)?;
    let mut coords = Vec::with_capacity(sub.rank());
    for v in &sub.basis {
        coords.push(sup.coordinates(v).ok_or(Error::NoSolution)?);
    }
    let rel = Matrix::from_columns(sup.ring, sup.rank(), &coords);
    Ok(ModulePresentation::from_relations(sup.ring, sup.rank(), &rel))
}

/// `a ∩ b`, via the kernel of `[A | -B]`.
pub fn intersect_submodules(a: &Submodule, b: &Submodule) -> Result<Submodule> {
    a.check_ambient(b)?;
    if a.is_zero() || b.is_zero() {
        return Ok(Submodule::zero(a.ring, a.ambient));
    }
    let ga = a.generators();
    let combined = ga.hstack(&b.generators().neg())?;
    let k = kernel_basis(&combined);
    let ka = a.rank();
    let vs = k
        .basis
        .iter()
        .map(|v| ga.apply(&v[..ka]))
        .collect();
    Ok(Submodule::from_vectors(a.ring, a.ambient, vs))
}

/// Exact solution `x` of `a x = b` (columnwise), if one exists over the ring.
pub fn solve(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    if a.rows() != b.rows() {
        return Err(Error::DimensionMismatch {
            op: "solve",
            left: a.shape(),
            right: b.shape(),
        });
    }
    let ring = a.ring();
    let n = a.cols();
    // x = V y with D y = U b, using the Smith form over Z and RREF over fields
    if ring == Ring::Integers {
        let s = smith_normal_form(a)?;
        let ub = s.u.mul(b)?;
        let diag = s.diagonal();
        let mut y = Matrix::zeros(ring, n, b.cols());
        for j in 0..b.cols() {
            for i in 0..a.rows() {
                let v = ub.get(i, j);
                match diag.get(i) {
                    Some(d) if !d.is_zero() => {
                        let q = v / BigRational::from_integer(d.clone());
                        if !q.is_integer() {
                            return Err(Error::NoSolution);
                        }
                        y.set(i, j, q);
                    }
                    _ => {
                        if !v.is_zero() {
                            return Err(Error::NoSolution);
                        }
                    }
                }
            }
        }
        return s.v.mul(&y);
    }
    let mut rows: Vec<Vec<BigRational>> = a
        .to_rows()
        .into_iter()
        .zip(b.to_rows())
        .map(|(mut r, rb)| {
            r.extend(rb);
            r
        })
        .collect();
    let pivots = field_rref(ring, &mut rows, n);
    let mut x = Matrix::zeros(ring, n, b.cols());
    for (i, row) in rows.iter().enumerate() {
        if i < pivots.len() {
            for j in 0..b.cols() {
                x.set(pivots[i], j, row[n + j].clone());
            }
        } else if row[n..].iter().any(|v| !v.is_zero()) {
            return Err(Error::NoSolution);
        }
    }
    Ok(x)
}

/// A finitely presented module `R^generators / relations`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentedModule {
    relations: Submodule,
}

impl PresentedModule {
    pub fn free(ring: Ring, rank: usize) -> PresentedModule {
        PresentedModule {
            relations: Submodule::zero(ring, rank),
        }
    }

    pub fn new(relations: Submodule) -> PresentedModule {
        PresentedModule { relations }
    }

    /// `R^rows / <columns of relations>`.
    pub fn from_relations(relations: &Matrix) -> PresentedModule {
        PresentedModule {
            relations: Submodule::new(relations),
        }
    }

    pub fn ring(&self) -> Ring {
        self.relations.ring()
    }

    pub fn generators(&self) -> usize {
        self.relations.ambient()
    }

    pub fn relations(&self) -> &Submodule {
        &self.relations
    }

    pub fn is_free(&self) -> bool {
        self.relations.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.relations.is_full()
    }

    pub fn presentation(&self) -> ModulePresentation {
        ModulePresentation::from_relations(self.ring(), self.generators(), &self.relations.generators())
    }

    /// Rank over the fraction field: the class of the module in `K_0`.
    pub fn rank(&self) -> usize {
        self.generators() - self.relations.rank()
    }

    /// Quotient by a further submodule of the generator module.
    pub fn quotient(&self, extra: &Submodule) -> Result<PresentedModule> {
        Ok(PresentedModule {
            relations: self.relations.sum(extra)?,
        })
    }

    pub fn direct_sum(modules: &[PresentedModule], ring: Ring) -> PresentedModule {
        let blocks: Vec<Matrix> = modules.iter().map(|m| m.relations.generators()).collect();
        PresentedModule::from_relations(&Matrix::block_diag(ring, &blocks))
    }
}

/// `phi(R_src) ⊆ R_dst`: the matrix induces a map `src → dst`.
pub fn is_well_defined(phi: &Matrix, src: &PresentedModule, dst: &PresentedModule) -> bool {
    phi.cols() == src.generators()
        && phi.rows() == dst.generators()
        && dst.relations.contains(&src.relations.image_under(phi))
}

/// Injectivity of the induced map `src → dst`.
pub fn is_injective(phi: &Matrix, src: &PresentedModule, dst: &PresentedModule) -> bool {
    if src.is_free() && dst.is_free() {
        return rank(phi) == phi.cols();
    }
    src.relations.contains(&Submodule::preimage(phi, &dst.relations))
}

/// Surjectivity of the induced map `src → dst`.
pub fn is_surjective(phi: &Matrix, dst: &PresentedModule) -> bool {
    let image = Submodule::new(phi);
    image.sum(&dst.relations).expect("same ambient").is_full()
}

/// Whether the induced map `src → dst` is zero.
pub fn is_zero_map(phi: &Matrix, src: &PresentedModule, dst: &PresentedModule) -> bool {
    dst.relations
        .contains(&Submodule::full(src.ring(), src.generators()).image_under(phi))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(rows: &[&[i64]]) -> Matrix {
        Matrix::from_i64(Ring::Integers, rows)
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn smith_examples() {
        let id = smith_normal_form(&Matrix::identity(Ring::Integers, 2)).unwrap();
        assert_eq!(id.d, Matrix::identity(Ring::Integers, 2));
        assert_eq!(id.u, Matrix::identity(Ring::Integers, 2));
        assert_eq!(id.v, Matrix::identity(Ring::Integers, 2));
        let a = z(&[&[2, 4], &[6, 8]]);
        let s = smith_normal_form(&a).unwrap();
        assert_eq!(s.diagonal(), ints(&[2, 4]));
        assert_eq!(s.u.mul(&a).unwrap().mul(&s.v).unwrap(), s.d);
        let b = z(&[&[6, 0], &[0, 4]]);
        assert_eq!(smith_normal_form(&b).unwrap().diagonal(), ints(&[2, 12]));
        assert!(matches!(
            smith_normal_form(&Matrix::identity(Ring::Rationals, 1)),
            Err(Error::RequiresIntegers { .. })
        ));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&Matrix::zeros(Ring::Integers, 2, 2)).rank(), 2);
        let k = kernel_basis(&z(&[&[2, 3]]));
        assert_eq!(k, Submodule::new(&z(&[&[3], &[-2]])));
        assert_eq!(kernel_basis(&z(&[&[2, 0], &[0, 3]])).rank(), 0);
    }

    #[test]
    fn cokernel_examples() {
        let c = cokernel(&z(&[&[2, 0], &[0, 3]]));
        assert_eq!(c.free_rank, 0);
        assert_eq!(c.invariant_factors, ints(&[6]));
        assert!(cokernel(&Matrix::identity(Ring::Integers, 3)).is_zero());
        assert_eq!(cokernel(&z(&[&[2]])).invariant_factors, ints(&[2]));
    }

    #[test]
    fn homology_examples() {
        let h = homology_at(&z(&[&[0]]), &z(&[&[2]])).unwrap();
        assert_eq!(h.invariant_factors, ints(&[2]));
        assert_eq!(h.free_rank, 0);
        let h = homology_at(&z(&[&[1]]), &Matrix::zeros(Ring::Integers, 1, 0)).unwrap();
        assert!(h.is_zero());
        // Koszul complex of (2,2): Z --(-2,2)^T--> Z^2 --(2 2)--> Z
        let h = homology_at(&z(&[&[2, 2]]), &z(&[&[-2], &[2]])).unwrap();
        assert_eq!(h.free_rank, 0);
        assert_eq!(h.invariant_factors, ints(&[2]));
        assert_eq!(homology_at(&z(&[&[1]]), &z(&[&[1]])), Err(Error::NotAComplex));
    }

    #[test]
    fn intersection_examples() {
        let four = Submodule::new(&z(&[&[4]]));
        let two = Submodule::new(&z(&[&[2]]));
        assert_eq!(intersect_submodules(&four, &two).unwrap(), four);
        let a = Submodule::new(&z(&[&[2, 0], &[0, 2]]));
        let diag = Submodule::new(&z(&[&[1], &[1]]));
        assert_eq!(
            intersect_submodules(&a, &diag).unwrap(),
            Submodule::new(&z(&[&[2], &[2]]))
        );
        assert_eq!(intersect_submodules(&a, &a).unwrap(), a);
        assert!(matches!(
            intersect_submodules(&a, &four),
            Err(Error::AmbientMismatch { .. })
        ));
    }

    #[test]
    fn subquotients_and_solving() {
        let sup = Submodule::new(&z(&[&[1], &[-1]]));
        let sub = Submodule::new(&z(&[&[-2], &[2]]));
        assert_eq!(subquotient(&sup, &sub).unwrap().invariant_factors, ints(&[2]));
        let a = z(&[&[2, 0], &[0, 3]]);
        let x = solve(&a, &z(&[&[4], &[9]])).unwrap();
        assert_eq!(x, z(&[&[2], &[3]]));
        assert_eq!(solve(&a, &z(&[&[1], &[0]])), Err(Error::NoSolution));
        let q = Matrix::from_i64(Ring::Rationals, &[&[2, 0], &[0, 3]]);
        let xq = solve(&q, &Matrix::from_i64(Ring::Rationals, &[&[1], &[1]])).unwrap();
        assert_eq!(q.mul(&xq).unwrap(), Matrix::from_i64(Ring::Rationals, &[&[1], &[1]]));
    }

    #[test]
    fn raw_vectors_are_reduced_into_the_ring() {
        let f2 = Ring::PrimeField(2);
        let r = |v: i64| BigRational::from_integer(v.into());
        let s = Submodule::from_vectors(f2, 2, vec![vec![r(2), r(-2)], vec![r(3), r(1)]]);
        assert_eq!(s.rank(), 1);
        assert!(s.contains_vector(&[r(1), r(1)]));
        let half = BigRational::new(1.into(), 2.into());
        assert!(Submodule::try_from_vectors(Ring::Integers, 1, vec![vec![half.clone()]]).is_err());
        assert!(Submodule::try_from_vectors(f2, 1, vec![vec![half]]).is_err());
    }

    #[test]
    fn presented_maps() {
        // Z/2 --x3--> Z/2 is injective, Z/2 --x2--> Z/2 is zero
        let z2 = PresentedModule::from_relations(&z(&[&[2]]));
        assert!(is_injective(&z(&[&[3]]), &z2, &z2));
        assert!(!is_injective(&z(&[&[2]]), &z2, &z2));
        assert!(is_zero_map(&z(&[&[2]]), &z2, &z2));
        assert!(is_well_defined(&z(&[&[5]]), &z2, &z2));
        let free = PresentedModule::free(Ring::Integers, 1);
        assert!(!is_well_defined(&z(&[&[1]]), &free, &PresentedModule::free(Ring::Integers, 2)));
        assert!(is_surjective(&z(&[&[1]]), &z2));
        assert_eq!(z2.presentation().to_string(), "Z/2");
    }
}
