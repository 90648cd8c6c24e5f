//! `K_0` class vectors of graded modules and the identities they satisfy.
//!
//! The class of a graded module in `n` variables is
//! `Σ_d Σ_i (-1)^i rank T_i(x)_d s^d`, valid through the Koszul window.

use core::fmt;

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graded::{is_graded_map, GradedModule, NilStatus};
use crate::matrix::Matrix;
use crate::module::{
    cokernel, is_injective, is_surjective, kernel_basis, rank, solve, ModulePresentation, PresentedModule, Submodule,
};
use crate::ring::Ring;

/// Integer coefficients `c_0 + c_1 s + …`, exact through `window`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct K0Vector {
    coeffs: Vec<i64>,
}

impl K0Vector {
    pub fn zero(window: usize) -> K0Vector {
        K0Vector {
            coeffs: vec![0; window + 1],
        }
    }

    /// `s^k`, known through `window`.
    pub fn monomial(k: usize, window: usize) -> K0Vector {
        let mut v = K0Vector::zero(window);
        if k <= window {
            v.coeffs[k] = 1;
        }
        v
    }

    /// Coefficients `c_0..=c_window`.
    pub fn from_coeffs(coeffs: Vec<i64>) -> Result<K0Vector> {
        if coeffs.is_empty() {
            return Err(Error::InvalidParameter("a class vector needs at least c_0".into()));
        }
        Ok(K0Vector { coeffs })
    }

    pub fn window(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, degree: usize) -> i64 {
        self.coeffs.get(degree).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn restrict(&self, window: usize) -> K0Vector {
        K0Vector {
            coeffs: self.coeffs[..=window.min(self.window())].to_vec(),
        }
    }

    fn zip(&self, other: &K0Vector, f: impl Fn(i64, i64) -> i64) -> K0Vector {
        let w = self.window().min(other.window());
        K0Vector {
            coeffs: (0..=w).map(|d| f(self.coeffs[d], other.coeffs[d])).collect(),
        }
    }

    /// Sum on the common window.
    pub fn add(&self, other: &K0Vector) -> K0Vector {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &K0Vector) -> K0Vector {
        self.zip(other, |a, b| a - b)
    }

    /// Multiplication by `s`; the window grows by one.
    pub fn times_s(&self) -> K0Vector {
        let mut coeffs = vec![0];
        coeffs.extend_from_slice(&self.coeffs);
        K0Vector { coeffs }
    }

    /// Multiplication by a polynomial in `s`; the window is unchanged.
    pub fn times_poly(&self, poly: &[i64]) -> K0Vector {
        let w = self.window();
        let coeffs = (0..=w)
            .map(|d| {
                poly.iter()
                    .enumerate()
                    .take(d + 1)
                    .map(|(j, p)| p * self.coeffs[d - j])
                    .sum()
            })
            .collect();
        K0Vector { coeffs }
    }

    /// Agreement on the common window.
    pub fn agrees_with(&self, other: &K0Vector) -> bool {
        let w = self.window().min(other.window());
        self.coeffs[..=w] == other.coeffs[..=w]
    }
}

impl fmt::Display for K0Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (d, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            match (first, c < 0) {
                (true, true) => f.write_str("-")?,
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
                (true, false) => {}
            }
            if mag != 1 {
                write!(f, "{mag}")?;
            }
            write!(f, "s^{d}")?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Coefficients of `(1 - s)^e`.
pub fn one_minus_s_power(e: usize) -> Vec<BigInt> {
    let mut c = vec![BigInt::one()];
    for _ in 0..e {
        let mut next = vec![BigInt::zero(); c.len() + 1];
        for (i, v) in c.iter().enumerate() {
            next[i] += v;
            next[i + 1] -= v;
        }
        c = next;
    }
    c
}

/// Multiplication by `(1 - s)^e` from polynomials of degree `< cols` into
/// polynomials of degree `< rows`, column by column.
pub fn toeplitz(ring: Ring, e: usize, rows: usize, cols: usize) -> Matrix {
    let c = one_minus_s_power(e);
    Matrix::from_fn(ring, rows, cols, |i, j| {
        if i >= j && i - j < c.len() {
            c[i - j].clone()
        } else {
            BigInt::zero()
        }
    })
}

/// The class of `x` through the Koszul window `D - n`.
pub fn k0_class(x: &GradedModule) -> Result<K0Vector> {
    let kh = x.koszul_homology()?;
    K0Vector::from_coeffs((0..=kh.window).map(|d| kh.euler_characteristic(d)).collect())
}

/// The class read off the Hilbert function alone: `(1 - s)^n` times the rank
/// series. Agrees with [`k0_class`] by additivity of Euler characteristics.
pub fn hilbert_class(x: &GradedModule) -> Result<K0Vector> {
    let n = x.vars();
    let top = x.truncation();
    if top < n {
        return Err(Error::WindowTooSmall { needed: n, available: top });
    }
    let ranks: Vec<i64> = x.ranks().iter().map(|&r| r as i64).collect();
    let poly: Vec<i64> = one_minus_s_power(n)
        .iter()
        .map(|c| i64::try_from(c).expect("binomials of at most 8 variables fit"))
        .collect();
    Ok(K0Vector::from_coeffs(ranks)?.times_poly(&poly).restrict(top - n))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneMinusSReport {
    pub window: usize,
    /// Degrees where `t : x[t](-1) → x[t]` fails to be injective.
    pub non_injective: Vec<usize>,
    pub class_x: K0Vector,
    pub class_cokernel: K0Vector,
    pub expected: K0Vector,
}

impl OneMinusSReport {
    pub fn holds(&self) -> bool {
        self.non_injective.is_empty() && self.class_cokernel.agrees_with(&self.expected)
    }
}

/// Builds `x[t](-1) → x[t] → T_0(x[t])` for a `Nil` object and compares the
/// class of the cokernel with `(1 - s)` times the class of `x`.
pub fn verify_one_minus_s(x: &GradedModule) -> Result<OneMinusSReport> {
    if let NilStatus::NotWithinWindow = x.is_nil() {
        return Err(Error::NotNil);
    }
    let n = x.vars();
    let top = x.truncation();
    if top < n + 1 {
        return Err(Error::WindowTooSmall {
            needed: n + 1,
            available: top,
        });
    }
    let xt = x.adjoin_variable();
    let non_injective = (0..top)
        .filter(|&d| !is_injective(xt.map(n, d), xt.component(d), xt.component(d + 1)))
        .collect();
    let coker = xt.quotient_by_vars(&[n])?;
    let class_x = k0_class(x)?;
    let class_cokernel = k0_class(&coker)?;
    let expected = class_x.times_poly(&[1, -1]).restrict(class_cokernel.window());
    Ok(OneMinusSReport {
        window: class_cokernel.window(),
        non_injective,
        class_x,
        class_cokernel,
        expected,
    })
}

/// Constructive splitting of `x[t] --(1-t)^{n+1}--> x[t] → ⊕_{i≤n} x t^i`
/// on the truncated carrier `⊕_{i≤D} x t^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitReport {
    pub n: usize,
    pub dim: usize,
    pub truncation: usize,
    /// `(1-t)^{n+1}` from degrees `< D - n` into degrees `≤ D`, tensored with `x`.
    pub operator: Matrix,
    pub injective: bool,
    pub cokernel: ModulePresentation,
    /// Projection onto the cokernel (rows span the left kernel of the operator).
    pub projection: Matrix,
    pub retraction: Option<Matrix>,
    pub section: Option<Matrix>,
    /// `π M = 0`, `q M = 1`, `π j = 1` and `M q + j π = 1`.
    pub identities_hold: bool,
    /// The action of `t` induced on the cokernel, written in the section basis.
    pub quotient_action: Option<Matrix>,
    pub action_unipotent: bool,
}

impl SplitReport {
    pub fn holds(&self) -> bool {
        self.injective
            && self.cokernel.is_free()
            && self.cokernel.free_rank == (self.n + 1) * self.dim
            && self.retraction.is_some()
            && self.section.is_some()
            && self.identities_hold
            && self.action_unipotent
    }
}

fn free_rank_of(x0: &PresentedModule) -> Result<usize> {
    if !x0.presentation().is_free() {
        return Err(Error::InvalidParameter(
            "split-sequence verification needs a torsion-free base".into(),
        ));
    }
    Ok(x0.rank())
}

/// Rows spanning `{p : p M = 0}`; saturated, so its kernel is the saturation of `im M`.
fn left_kernel(m: &Matrix) -> Matrix {
    kernel_basis(&m.transpose()).generators().transpose()
}

pub fn split_sequence_verify(x0: &PresentedModule, n: usize, truncation: usize) -> Result<SplitReport> {
    let needed = 3 * (n + 1);
    if truncation < needed {
        return Err(Error::WindowTooSmall {
            needed,
            available: truncation,
        });
    }
    let ring = x0.ring();
    let dim = free_rank_of(x0)?;
    let rows = (truncation + 1) * dim;
    let m = toeplitz(ring, n + 1, truncation + 1, truncation - n).kron_identity(dim);
    let injective = rank(&m) == m.cols();
    let coker = cokernel(&m);
    let pi = left_kernel(&m);
    let identity = Matrix::identity(ring, rows);
    let q0 = solve(&m.transpose(), &Matrix::identity(ring, m.cols())).ok().map(|q| q.transpose());
    // low-degree section: coordinates of 1, t, .., t^n
    let k = pi.rows();
    let low = Matrix::identity(ring, rows).block(0, 0, rows, k.min(rows));
    let section = pi
        .mul(&low)
        .ok()
        .and_then(|p| solve(&p, &Matrix::identity(ring, k)).ok())
        .map(|c| low.mul(&c).expect("shapes"))
        .or_else(|| solve(&pi, &Matrix::identity(ring, k)).ok());
    let retraction = match (&q0, &section) {
        (Some(q0), Some(j)) => Some(q0.mul(&identity.sub(&j.mul(&pi)?)?)?),
        (Some(q0), None) => Some(q0.clone()),
        _ => None,
    };
    let identities_hold = match (&retraction, &section) {
        (Some(q), Some(j)) => {
            pi.mul(&m)?.is_zero()
                && q.mul(&m)? == Matrix::identity(ring, m.cols())
                && pi.mul(j)? == Matrix::identity(ring, k)
                && m.mul(q)?.add(&j.mul(&pi)?)? == identity
        }
        _ => false,
    };
    let (quotient_action, action_unipotent) = match &section {
        Some(j) => {
            let shift = Matrix::from_fn(ring, truncation + 1, truncation + 1, |i, c| {
                if i == c + 1 {
                    BigInt::one()
                } else {
                    BigInt::zero()
                }
            })
            .kron_identity(dim);
            let action = pi.mul(&shift)?.mul(j)?;
            let nilpotent = action
                .sub(&Matrix::identity(ring, k))?
                .pow((n + 1) as u32)?
                .is_zero();
            (Some(action), nilpotent)
        }
        None => (None, false),
    };
    Ok(SplitReport {
        n,
        dim,
        truncation,
        operator: m,
        injective,
        cokernel: coker,
        projection: pi,
        retraction,
        section,
        identities_hold,
        quotient_action,
        action_unipotent,
    })
}

/// The `K_0` shadow of the projective-space decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectiveSpaceReport {
    pub n: usize,
    pub truncation: usize,
    /// Nonzero invariant factors of the `(1-s)^{n+1}` Toeplitz matrix.
    pub invariant_factors: Vec<BigInt>,
    pub cokernel: ModulePresentation,
    /// Classes of `Z[t](-i)` for `i = 0..=n`, as columns.
    pub classes: Matrix,
    /// Their images in the cokernel, in the basis given by the projection.
    pub images: Matrix,
    pub images_determinant: BigInt,
    /// The operator is injective, so the connecting map of the ladder vanishes.
    pub connecting_map_vanishes: bool,
}

impl ProjectiveSpaceReport {
    pub fn holds(&self) -> bool {
        self.cokernel.is_free()
            && self.cokernel.free_rank == self.n + 1
            && self.images_determinant.abs().is_one()
            && self.connecting_map_vanishes
    }
}

pub fn projective_space_decomposition(n: usize, truncation: usize) -> Result<ProjectiveSpaceReport> {
    let needed = 4 * (n + 1);
    if truncation < needed {
        return Err(Error::WindowTooSmall {
            needed,
            available: truncation,
        });
    }
    let ring = Ring::Integers;
    let m = toeplitz(ring, n + 1, truncation + 1, truncation - n);
    let invariant_factors: Vec<BigInt> = crate::module::smith_normal_form(&m)?
        .diagonal()
        .into_iter()
        .filter(|d| !d.is_zero())
        .collect();
    let coker = cokernel(&m);
    let point = PresentedModule::free(ring, 1);
    let mut columns = Vec::with_capacity(n + 1);
    for i in 0..=n {
        // one variable, truncated one degree higher so the class reaches `truncation`
        let class = k0_class(&GradedModule::free(&point, 1, i, truncation + 1))?;
        columns.push(
            class
                .coeffs()
                .iter()
                .map(|&c| num_rational::BigRational::from_integer(c.into()))
                .collect::<Vec<_>>(),
        );
    }
    let classes = Matrix::from_columns(ring, truncation + 1, &columns);
    let pi = left_kernel(&m);
    let images = pi.mul(&classes)?;
    let images_determinant = if images.is_square() {
        images.determinant()?.to_integer()
    } else {
        BigInt::zero()
    };
    Ok(ProjectiveSpaceReport {
        n,
        truncation,
        invariant_factors,
        cokernel: coker,
        classes,
        images,
        images_determinant,
        connecting_map_vanishes: rank(&m) == m.cols(),
    })
}

/// A degreewise short exact sequence `0 → sub → middle → quotient → 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SesWitness {
    pub sub: GradedModule,
    pub middle: GradedModule,
    pub quotient: GradedModule,
    pub inclusion: Vec<Matrix>,
    pub projection: Vec<Matrix>,
}

impl SesWitness {
    pub fn new(
        sub: GradedModule,
        middle: GradedModule,
        quotient: GradedModule,
        inclusion: Vec<Matrix>,
        projection: Vec<Matrix>,
    ) -> Result<SesWitness> {
        let w = SesWitness {
            sub,
            middle,
            quotient,
            inclusion,
            projection,
        };
        w.check_exact()?;
        Ok(w)
    }

    /// `0 → S → y → y/S → 0` for a graded subobject `S`.
    pub fn from_submodule(sub: &crate::graded::GradedSubmodule<'_>) -> Result<SesWitness> {
        let (s, inclusion) = sub.to_module()?;
        let (q, projection) = sub.quotient();
        SesWitness::new(s, sub.parent().clone(), q, inclusion, projection)
    }

    pub fn truncation(&self) -> usize {
        self.sub
            .truncation()
            .min(self.middle.truncation())
            .min(self.quotient.truncation())
    }

    pub fn check_exact(&self) -> Result<()> {
        let top = self.truncation();
        if self.inclusion.len() <= top || self.projection.len() <= top {
            return Err(Error::NotExact {
                degree: top.min(self.inclusion.len()).min(self.projection.len()),
                reason: "missing degreewise maps",
            });
        }
        let graded = |ok: bool, reason| if ok { Ok(()) } else { Err(Error::NotExact { degree: 0, reason }) };
        graded(
            is_graded_map(&self.inclusion, &self.sub, &self.middle),
            "inclusion is not a graded map",
        )?;
        graded(
            is_graded_map(&self.projection, &self.middle, &self.quotient),
            "projection is not a graded map",
        )?;
        for d in 0..=top {
            let (s, y, q) = (
                self.sub.component(d),
                self.middle.component(d),
                self.quotient.component(d),
            );
            let (i, p) = (&self.inclusion[d], &self.projection[d]);
            if !is_injective(i, s, y) {
                return Err(Error::NotExact {
                    degree: d,
                    reason: "inclusion is not injective",
                });
            }
            if !is_surjective(p, q) {
                return Err(Error::NotExact {
                    degree: d,
                    reason: "projection is not surjective",
                });
            }
            let kernel = Submodule::preimage(p, q.relations());
            let image = Submodule::full(s.ring(), s.generators())
                .image_under(i)
                .sum(y.relations())?;
            if kernel != image {
                return Err(Error::NotExact {
                    degree: d,
                    reason: "kernel of the projection differs from the image of the inclusion",
                });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdditivityReport {
    pub sub: K0Vector,
    pub middle: K0Vector,
    pub quotient: K0Vector,
}

impl AdditivityReport {
    pub fn holds(&self) -> bool {
        self.middle.agrees_with(&self.sub.add(&self.quotient))
    }
}

pub fn check_additivity(w: &SesWitness) -> Result<AdditivityReport> {
    w.check_exact()?;
    Ok(AdditivityReport {
        sub: k0_class(&w.sub)?,
        middle: k0_class(&w.middle)?,
        quotient: k0_class(&w.quotient)?,
    })
}
