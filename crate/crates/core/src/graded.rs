//! Truncated graded modules over `F1[t_1..t_n]`.
//!
//! A graded module is stored through degree `D` (its truncation): components
//! `x_0..x_D` and, for every variable, maps `t_i : x_d → x_{d+1}` for `d < D`.
//! Every construction here is exact through the truncation of its output;
//! Koszul homology is only reported on the smaller window `D - n`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_rational::BigRational;

use crate::affine::{monomials, AffineObject};
use crate::cube::{SCube, MAX_DIRECTIONS};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::module::{is_injective, is_well_defined, is_zero_map, subquotient, ModulePresentation, PresentedModule, Submodule};
use crate::ring::Ring;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedModule {
    ring: Ring,
    vars: usize,
    components: Vec<PresentedModule>,
    // maps[i][d] = t_{i+1} : x_d → x_{d+1}
    maps: Vec<Vec<Matrix>>,
}

/// Outcome of the `Nil` test on a truncated module.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NilStatus {
    /// `x_d = 0` for every `bound ≤ d ≤ D`, with `bound` minimal.
    Nil(usize),
    /// The top component is nonzero; truncation cannot decide.
    NotWithinWindow,
}

/// `T_i(x)_d` for `0 ≤ i ≤ n` and `0 ≤ d ≤ window`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KoszulHomology {
    pub vars: usize,
    pub window: usize,
    // groups[i][d]
    pub groups: Vec<Vec<ModulePresentation>>,
}

impl KoszulHomology {
    pub fn group(&self, index: usize, degree: usize) -> &ModulePresentation {
        &self.groups[index][degree]
    }

    pub fn rank(&self, index: usize, degree: usize) -> usize {
        self.groups[index][degree].free_rank
    }

    /// First `(i, d)` with `i > 0` and `T_i(x)_d ≠ 0`.
    pub fn first_irregularity(&self) -> Option<(usize, usize)> {
        (1..=self.vars).find_map(|i| {
            self.groups[i]
                .iter()
                .position(|g| !g.is_zero())
                .map(|d| (i, d))
        })
    }

    pub fn is_regular(&self) -> bool {
        self.first_irregularity().is_none()
    }

    /// `Σ_i (-1)^i rank T_i(x)_d`.
    pub fn euler_characteristic(&self, degree: usize) -> i64 {
        (0..=self.vars)
            .map(|i| {
                let r = self.rank(i, degree) as i64;
                if i % 2 == 0 {
                    r
                } else {
                    -r
                }
            })
            .sum()
    }
}

/// Result of [`GradedModule::nil_special_filtering_witness`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialFilteringWitness {
    pub z: GradedModule,
    /// Degreewise matrices of the surjection `y → z`.
    pub projection: Vec<Matrix>,
    pub nil_bound: usize,
    pub composite_injective: bool,
}

fn zero_matrix_between(ring: Ring, dst: &PresentedModule, src: &PresentedModule) -> Matrix {
    Matrix::zeros(ring, dst.generators(), src.generators())
}

impl GradedModule {
    /// Validates shapes, well-definedness and `t_i t_j = t_j t_i`.
    pub fn new(
        ring: Ring,
        vars: usize,
        components: Vec<PresentedModule>,
        maps: Vec<Vec<Matrix>>,
    ) -> Result<GradedModule> {
        if components.is_empty() {
            return Err(Error::InvalidParameter("a graded module needs a degree-0 component".into()));
        }
        if let Some(c) = components.iter().find(|c| c.ring() != ring) {
            return Err(Error::RingMismatch {
                expected: ring,
                found: c.ring(),
            });
        }
        let top = components.len() - 1;
        if maps.len() != vars {
            return Err(Error::InvalidParameter(format!(
                "expected maps for {vars} variables, found {}",
                maps.len()
            )));
        }
        for (i, per_degree) in maps.iter().enumerate() {
            if per_degree.len() != top {
                return Err(Error::InvalidParameter(format!(
                    "t{} needs {top} matrices, found {}",
                    i + 1,
                    per_degree.len()
                )));
            }
            for (d, m) in per_degree.iter().enumerate() {
                if m.ring() != ring {
                    return Err(Error::RingMismatch {
                        expected: ring,
                        found: m.ring(),
                    });
                }
                let want = (components[d + 1].generators(), components[d].generators());
                if m.shape() != want {
                    return Err(Error::DimensionMismatch {
                        op: "graded map",
                        left: m.shape(),
                        right: want,
                    });
                }
                if !is_well_defined(m, &components[d], &components[d + 1]) {
                    return Err(Error::IllDefinedMap {
                        context: format!("t{} at degree {d}", i + 1),
                    });
                }
            }
        }
        for i in 0..vars {
            for j in i + 1..vars {
                for d in 0..top.saturating_sub(1) {
                    let ij = maps[j][d + 1].mul(&maps[i][d])?;
                    let ji = maps[i][d + 1].mul(&maps[j][d])?;
                    if !is_zero_map(&ij.sub(&ji)?, &components[d], &components[d + 2]) {
                        return Err(Error::NonCommuting {
                            i: i + 1,
                            j: j + 1,
                            degree: d,
                        });
                    }
                }
            }
        }
        Ok(GradedModule {
            ring,
            vars,
            components,
            maps,
        })
    }

    pub(crate) fn from_parts_unchecked(
        ring: Ring,
        vars: usize,
        components: Vec<PresentedModule>,
        maps: Vec<Vec<Matrix>>,
    ) -> GradedModule {
        GradedModule {
            ring,
            vars,
            components,
            maps,
        }
    }

    pub fn zero(ring: Ring, vars: usize, truncation: usize) -> GradedModule {
        GradedModule::concentrated(&PresentedModule::free(ring, 0), 0, vars, truncation)
    }

    /// `module` placed in a single degree, all maps zero.
    pub fn concentrated(module: &PresentedModule, degree: usize, vars: usize, truncation: usize) -> GradedModule {
        let ring = module.ring();
        let components: Vec<PresentedModule> = (0..=truncation)
            .map(|d| {
                if d == degree {
                    module.clone()
                } else {
                    PresentedModule::free(ring, 0)
                }
            })
            .collect();
        let maps = (0..vars)
            .map(|_| {
                (0..truncation)
                    .map(|d| zero_matrix_between(ring, &components[d + 1], &components[d]))
                    .collect()
            })
            .collect();
        GradedModule::from_parts_unchecked(ring, vars, components, maps)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    /// Largest stored degree `D`; every component through `D` is exact.
    pub fn truncation(&self) -> usize {
        self.components.len() - 1
    }

    pub fn component(&self, degree: usize) -> &PresentedModule {
        &self.components[degree]
    }

    pub fn components(&self) -> &[PresentedModule] {
        &self.components
    }

    /// `t_{var+1} : x_d → x_{d+1}` (variables are 0-based here).
    pub fn map(&self, var: usize, degree: usize) -> &Matrix {
        &self.maps[var][degree]
    }

    /// Ranks of the components, i.e. the Hilbert function through `D`.
    pub fn ranks(&self) -> Vec<usize> {
        self.components.iter().map(PresentedModule::rank).collect()
    }

    /// Restriction to degrees `0..=truncation`.
    pub fn truncate(&self, truncation: usize) -> Result<GradedModule> {
        if truncation > self.truncation() {
            return Err(Error::WindowTooSmall {
                needed: truncation,
                available: self.truncation(),
            });
        }
        Ok(GradedModule::from_parts_unchecked(
            self.ring,
            self.vars,
            self.components[..=truncation].to_vec(),
            self.maps.iter().map(|m| m[..truncation].to_vec()).collect(),
        ))
    }

    /// Serre twist `x(k)_m = x_{m+k}`, zero in negative source degrees.
    ///
    /// A positive twist drops the top `k` degrees of the truncation; a negative
    /// twist extends it, since the new components are known exactly.
    pub fn twist(&self, k: i64) -> Result<GradedModule> {
        let top = self.truncation();
        if k >= 0 {
            let k = k as usize;
            if k > top {
                return Err(Error::WindowTooSmall { needed: k, available: top });
            }
            return Ok(GradedModule::from_parts_unchecked(
                self.ring,
                self.vars,
                self.components[k..].to_vec(),
                self.maps.iter().map(|m| m[k..].to_vec()).collect(),
            ));
        }
        let j = k.unsigned_abs() as usize;
        let ring = self.ring;
        let mut components = vec![PresentedModule::free(ring, 0); j];
        components.extend(self.components.iter().cloned());
        let maps = self
            .maps
            .iter()
            .map(|per_degree| {
                let mut out: Vec<Matrix> = (0..j)
                    .map(|d| zero_matrix_between(ring, &components[d + 1], &components[d]))
                    .collect();
                out.extend(per_degree.iter().cloned());
                out
            })
            .collect();
        Ok(GradedModule::from_parts_unchecked(ring, self.vars, components, maps))
    }

    /// Degreewise direct sum, truncated to the smaller of the two windows.
    pub fn direct_sum(&self, other: &GradedModule) -> Result<GradedModule> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch {
                expected: self.ring,
                found: other.ring,
            });
        }
        if self.vars != other.vars {
            return Err(Error::InvalidParameter(format!(
                "variable counts differ: {} vs {}",
                self.vars, other.vars
            )));
        }
        let top = self.truncation().min(other.truncation());
        let components = (0..=top)
            .map(|d| {
                PresentedModule::direct_sum(&[self.components[d].clone(), other.components[d].clone()], self.ring)
            })
            .collect();
        let maps = (0..self.vars)
            .map(|i| {
                (0..top)
                    .map(|d| Matrix::block_diag(self.ring, &[self.maps[i][d].clone(), other.maps[i][d].clone()]))
                    .collect()
            })
            .collect();
        Ok(GradedModule::from_parts_unchecked(self.ring, self.vars, components, maps))
    }

    /// `x[t_1..t_n](-k)` for an ungraded module `x`.
    ///
    /// The degree-`d` component is one copy of `x` per monomial of degree
    /// `d - k`, monomials in ascending lexicographic order of exponent vectors;
    /// generator `j` of the copy indexed by monomial `a` sits at `a * g + j`.
    pub fn free(base: &PresentedModule, vars: usize, twist: usize, truncation: usize) -> GradedModule {
        let ring = base.ring();
        let g = base.generators();
        let monos: Vec<Vec<Vec<usize>>> = (0..=truncation)
            .map(|d| if d < twist { Vec::new() } else { monomials(vars, d - twist) })
            .collect();
        let components: Vec<PresentedModule> = monos
            .iter()
            .map(|m| PresentedModule::direct_sum(&vec![base.clone(); m.len()], ring))
            .collect();
        let identity = Matrix::identity(ring, g);
        let maps = (0..vars)
            .map(|i| {
                (0..truncation)
                    .map(|d| {
                        let mut m = zero_matrix_between(ring, &components[d + 1], &components[d]);
                        let index: BTreeMap<&[usize], usize> =
                            monos[d + 1].iter().enumerate().map(|(b, mu)| (mu.as_slice(), b)).collect();
                        for (a, mu) in monos[d].iter().enumerate() {
                            let mut up = mu.clone();
                            up[i] += 1;
                            let b = index[up.as_slice()];
                            m.set_block(b * g, a * g, &identity);
                        }
                        m
                    })
                    .collect()
            })
            .collect();
        GradedModule::from_parts_unchecked(ring, vars, components, maps)
    }

    /// `x[t]` with one extra variable, placed last.
    ///
    /// The degree-`d` component is `⊕_{j=0..d} x_{d-j} t^j` with block `j`
    /// holding `x_{d-j}`; the old variables act blockwise and `t` moves block
    /// `j` to block `j + 1` by the identity.
    pub fn adjoin_variable(&self) -> GradedModule {
        let ring = self.ring;
        let top = self.truncation();
        let components: Vec<PresentedModule> = (0..=top)
            .map(|d| {
                let parts: Vec<PresentedModule> = (0..=d).map(|j| self.components[d - j].clone()).collect();
                PresentedModule::direct_sum(&parts, ring)
            })
            .collect();
        let offsets: Vec<Vec<usize>> = (0..=top)
            .map(|d| {
                let mut acc = 0;
                (0..=d)
                    .map(|j| {
                        let o = acc;
                        acc += self.components[d - j].generators();
                        o
                    })
                    .collect()
            })
            .collect();
        let mut maps: Vec<Vec<Matrix>> = Vec::with_capacity(self.vars + 1);
        for i in 0..self.vars {
            maps.push(
                (0..top)
                    .map(|d| {
                        let mut m = zero_matrix_between(ring, &components[d + 1], &components[d]);
                        for j in 0..=d {
                            m.set_block(offsets[d + 1][j], offsets[d][j], &self.maps[i][d - j]);
                        }
                        m
                    })
                    .collect(),
            );
        }
        maps.push(
            (0..top)
                .map(|d| {
                    let mut m = zero_matrix_between(ring, &components[d + 1], &components[d]);
                    for j in 0..=d {
                        let g = self.components[d - j].generators();
                        m.set_block(offsets[d + 1][j + 1], offsets[d][j], &Matrix::identity(ring, g));
                    }
                    m
                })
                .collect(),
        );
        GradedModule::from_parts_unchecked(ring, self.vars + 1, components, maps)
    }

    fn full_parts(&self) -> Vec<Submodule> {
        self.components
            .iter()
            .map(|c| Submodule::full(self.ring, c.generators()))
            .collect()
    }

    /// `Σ_{i ∈ vars} t_i(sub_{d-1})`, plus the relations of `x_d`.
    fn image_from_below(&self, vars: &[usize], below: &Submodule, d: usize) -> Submodule {
        let mut acc = self.components[d].relations().clone();
        for &i in vars {
            acc = acc.sum(&below.image_under(&self.maps[i][d - 1])).expect("ambient");
        }
        acc
    }

    fn all_vars(&self) -> Vec<usize> {
        (0..self.vars).collect()
    }

    /// `F_m x`: all of `x` through degree `m`, generated by monomial images above.
    pub fn canonical_filtration(&self, m: usize) -> GradedSubmodule<'_> {
        let vars = self.all_vars();
        let mut parts: Vec<Submodule> = Vec::with_capacity(self.components.len());
        for d in 0..=self.truncation() {
            let part = if d <= m {
                Submodule::full(self.ring, self.components[d].generators())
            } else {
                self.image_from_below(&vars, &parts[d - 1], d)
            };
            parts.push(part);
        }
        GradedSubmodule { parent: self, parts }
    }

    /// Smallest `m` with `F_m x = x` through the truncation.
    ///
    /// Returns `None` when only `m = D > 0` works: the module is then not
    /// witnessed to be finitely generated within the window.
    pub fn degree_of_generation(&self) -> Option<usize> {
        let vars = self.all_vars();
        let full = self.full_parts();
        let top = self.truncation();
        let m = (1..=top)
            .rev()
            .find(|&d| !self.image_from_below(&vars, &full[d - 1], d).is_full())
            .unwrap_or(0);
        if m == top && top > 0 {
            None
        } else {
            Some(m)
        }
    }

    pub fn is_nil(&self) -> NilStatus {
        match self.components.iter().rposition(|c| !c.is_zero()) {
            None => NilStatus::Nil(0),
            Some(d) if d == self.truncation() => NilStatus::NotWithinWindow,
            Some(d) => NilStatus::Nil(d + 1),
        }
    }

    fn check_vars(&self, vars: &[usize]) -> Result<()> {
        match vars.iter().find(|&&v| v >= self.vars) {
            Some(v) => Err(Error::InvalidParameter(format!(
                "variable index {v} out of range for {} variables",
                self.vars
            ))),
            None => Ok(()),
        }
    }

    /// `f x = Σ_{i ∈ vars} im(t_i)` as a graded subobject.
    pub fn ff_sub(&self, vars: &[usize]) -> Result<GradedSubmodule<'_>> {
        self.check_vars(vars)?;
        let full = self.full_parts();
        let parts = (0..=self.truncation())
            .map(|d| {
                if d == 0 {
                    self.components[0].relations().clone()
                } else {
                    self.image_from_below(vars, &full[d - 1], d)
                }
            })
            .collect();
        Ok(GradedSubmodule { parent: self, parts })
    }

    /// `x / f x`, on which every `t_i` with `i ∈ vars` acts as zero.
    pub fn quotient_by_vars(&self, vars: &[usize]) -> Result<GradedModule> {
        Ok(self.ff_sub(vars)?.quotient().0)
    }

    /// The degree-`d` slice of the Koszul cube: the vertex at `T` is
    /// `x(-#T)_d = x_{d-#T}` and the boundary in direction `t` is `t`.
    pub fn koszul_slice(&self, degree: usize) -> Result<SCube> {
        let n = self.vars;
        if n > MAX_DIRECTIONS {
            return Err(Error::TooManyDirections(n));
        }
        if degree > self.truncation() {
            return Err(Error::WindowTooSmall {
                needed: degree,
                available: self.truncation(),
            });
        }
        let ring = self.ring;
        let zero = PresentedModule::free(ring, 0);
        let at = |mask: u32| -> Option<usize> { degree.checked_sub(mask.count_ones() as usize) };
        let vertices: Vec<PresentedModule> = (0..(1u32 << n))
            .map(|mask| at(mask).map_or_else(|| zero.clone(), |d| self.components[d].clone()))
            .collect();
        let mut boundaries = BTreeMap::new();
        for mask in 0..(1u32 << n) {
            for t in (0..n).filter(|&t| mask & (1 << t) != 0) {
                let face = mask & !(1 << t);
                let m = match at(mask) {
                    Some(d) => self.maps[t][d].clone(),
                    None => zero_matrix_between(ring, &vertices[face as usize], &vertices[mask as usize]),
                };
                boundaries.insert((mask, t), m);
            }
        }
        let directions: Vec<String> = (1..=n).map(|i| format!("t{i}")).collect();
        Ok(SCube::from_parts_unchecked(ring, directions, vertices, boundaries))
    }

    /// `T_i(x)_d` for every `i` and every `d ≤ D - n`.
    pub fn koszul_homology(&self) -> Result<KoszulHomology> {
        let n = self.vars;
        let top = self.truncation();
        if top < n {
            return Err(Error::WindowTooSmall { needed: n, available: top });
        }
        let window = top - n;
        let mut groups = vec![Vec::with_capacity(window + 1); n + 1];
        for d in 0..=window {
            let tot = self.koszul_slice(d)?.total_complex_trusted();
            for (i, g) in groups.iter_mut().enumerate() {
                g.push(tot.homology(i));
            }
        }
        Ok(KoszulHomology { vars: n, window, groups })
    }

    /// `T_i(x) = 0` for every `i > 0` on the Koszul window.
    pub fn is_t_regular(&self) -> Result<bool> {
        Ok(self.koszul_homology()?.is_regular())
    }

    /// The functor `b`: `(T_0(x)_k)_{k = 0..=m}` for a `t`-regular `x`.
    pub fn functor_b(&self, m: usize) -> Result<Vec<ModulePresentation>> {
        let kh = self.koszul_homology()?;
        if m > kh.window {
            return Err(Error::WindowTooSmall {
                needed: m + self.vars,
                available: self.truncation(),
            });
        }
        if let Some((index, degree)) = kh.first_irregularity() {
            return Err(Error::NotTRegular { index, degree });
        }
        Ok(kh.groups[0][..=m].to_vec())
    }

    /// `(F_p x / F_{p-1} x)_d` for every degree, with `F_{-1} x = 0`.
    pub fn filtration_quotients(&self, p: usize) -> Vec<ModulePresentation> {
        let upper = self.canonical_filtration(p);
        let lower: Vec<Submodule> = if p == 0 {
            self.components.iter().map(|c| c.relations().clone()).collect()
        } else {
            self.canonical_filtration(p - 1).parts
        };
        upper
            .parts
            .iter()
            .zip(&lower)
            .map(|(u, l)| subquotient(u, l).expect("filtration is decreasing"))
            .collect()
    }

    /// The `Nil` object `z` with `z_l = y_l` below the `Nil` bound of `sub`
    /// and zero from there on, together with the projection `y → z`.
    pub fn nil_special_filtering_witness(sub: &GradedSubmodule<'_>) -> Result<SpecialFilteringWitness> {
        let y = sub.parent;
        let (x, inclusion) = sub.to_module()?;
        let NilStatus::Nil(k) = x.is_nil() else {
            return Err(Error::NotNil);
        };
        let ring = y.ring;
        let zero = PresentedModule::free(ring, 0);
        let components: Vec<PresentedModule> = y
            .components
            .iter()
            .enumerate()
            .map(|(d, c)| if d < k { c.clone() } else { zero.clone() })
            .collect();
        let maps = (0..y.vars)
            .map(|i| {
                (0..y.truncation())
                    .map(|d| {
                        if d + 1 < k {
                            y.maps[i][d].clone()
                        } else {
                            zero_matrix_between(ring, &components[d + 1], &components[d])
                        }
                    })
                    .collect()
            })
            .collect();
        let z = GradedModule::from_parts_unchecked(ring, y.vars, components, maps);
        let projection: Vec<Matrix> = (0..=y.truncation())
            .map(|d| {
                if d < k {
                    Matrix::identity(ring, y.components[d].generators())
                } else {
                    zero_matrix_between(ring, &zero, &y.components[d])
                }
            })
            .collect();
        let composite_injective = (0..=y.truncation()).all(|d| {
            let c = projection[d].mul(&inclusion[d]).expect("shapes");
            is_injective(&c, &x.components[d], &z.components[d])
        });
        Ok(SpecialFilteringWitness {
            z,
            projection,
            nil_bound: k,
            composite_injective,
        })
    }

    /// Forgets the grading of a `Nil` object: `⊕_{d < b} x_d` with each `t_i`
    /// acting as the block shift.
    pub fn forget_grading(&self) -> Result<AffineObject> {
        let NilStatus::Nil(b) = self.is_nil() else {
            return Err(Error::NotNil);
        };
        let ring = self.ring;
        let parts = &self.components[..b];
        let module = PresentedModule::direct_sum(parts, ring);
        let mut offsets = Vec::with_capacity(b);
        let mut acc = 0;
        for p in parts {
            offsets.push(acc);
            acc += p.generators();
        }
        let endos = (0..self.vars)
            .map(|i| {
                let mut e = Matrix::zeros(ring, acc, acc);
                for d in 0..b.saturating_sub(1) {
                    e.set_block(offsets[d + 1], offsets[d], &self.maps[i][d]);
                }
                e
            })
            .collect();
        AffineObject::new(module, endos)
    }
}

/// The functor `a`: `⊕_k parts[k][t_1..t_n](-k)`.
pub fn functor_a(ring: Ring, parts: &[PresentedModule], vars: usize, truncation: usize) -> Result<GradedModule> {
    let mut acc = GradedModule::zero(ring, vars, truncation);
    for (k, p) in parts.iter().enumerate() {
        if p.ring() != ring {
            return Err(Error::RingMismatch {
                expected: ring,
                found: p.ring(),
            });
        }
        acc = acc.direct_sum(&GradedModule::free(p, vars, k, truncation))?;
    }
    Ok(acc)
}

/// Whether degreewise matrices `f_d : src_d → dst_d` form a graded map.
pub fn is_graded_map(maps: &[Matrix], src: &GradedModule, dst: &GradedModule) -> bool {
    let top = src.truncation().min(dst.truncation());
    if maps.len() <= top || src.vars != dst.vars {
        return false;
    }
    (0..=top).all(|d| is_well_defined(&maps[d], &src.components[d], &dst.components[d]))
        && (0..src.vars).all(|i| {
            (0..top).all(|d| {
                let left = maps[d + 1].mul(&src.maps[i][d]);
                let right = dst.maps[i][d].mul(&maps[d]);
                match (left, right) {
                    (Ok(l), Ok(r)) => l
                        .sub(&r)
                        .map(|diff| is_zero_map(&diff, &src.components[d], &dst.components[d + 1]))
                        .unwrap_or(false),
                    _ => false,
                }
            })
        })
}

/// A graded subobject: per degree a submodule of the generator module that
/// contains the relations and is carried into the next degree by every `t_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedSubmodule<'a> {
    parent: &'a GradedModule,
    parts: Vec<Submodule>,
}

impl<'a> GradedSubmodule<'a> {
    pub fn new(parent: &'a GradedModule, parts: Vec<Submodule>) -> Result<GradedSubmodule<'a>> {
        if parts.len() != parent.components.len() {
            return Err(Error::InvalidParameter(format!(
                "expected {} degrees, found {}",
                parent.components.len(),
                parts.len()
            )));
        }
        for (d, (p, c)) in parts.iter().zip(&parent.components).enumerate() {
            if p.ring() != parent.ring {
                return Err(Error::RingMismatch {
                    expected: parent.ring,
                    found: p.ring(),
                });
            }
            if p.ambient() != c.generators() {
                return Err(Error::AmbientMismatch {
                    left: p.ambient(),
                    right: c.generators(),
                });
            }
            if !p.contains(c.relations()) {
                return Err(Error::NotASubobject { degree: d });
            }
        }
        for i in 0..parent.vars {
            for d in 0..parent.truncation() {
                if !parts[d + 1].contains(&parts[d].image_under(&parent.maps[i][d])) {
                    return Err(Error::NotClosed { var: i + 1, degree: d });
                }
            }
        }
        Ok(GradedSubmodule { parent, parts })
    }

    /// Smallest subobject containing the given vectors, listed per degree.
    pub fn generated_by(parent: &'a GradedModule, generators: &[Vec<Vec<BigRational>>]) -> Result<GradedSubmodule<'a>> {
        let vars = parent.all_vars();
        let mut parts: Vec<Submodule> = Vec::with_capacity(parent.components.len());
        for d in 0..=parent.truncation() {
            let c = &parent.components[d];
            let mut part = if d == 0 {
                c.relations().clone()
            } else {
                parent.image_from_below(&vars, &parts[d - 1], d)
            };
            if let Some(vs) = generators.get(d) {
                if let Some(v) = vs.iter().find(|v| v.len() != c.generators()) {
                    return Err(Error::AmbientMismatch {
                        left: v.len(),
                        right: c.generators(),
                    });
                }
                part = part.sum(&Submodule::try_from_vectors(parent.ring, c.generators(), vs.clone())?)?;
            }
            parts.push(part);
        }
        Ok(GradedSubmodule { parent, parts })
    }

    pub fn parent(&self) -> &'a GradedModule {
        self.parent
    }

    pub fn parts(&self) -> &[Submodule] {
        &self.parts
    }

    pub fn is_full(&self) -> bool {
        self.parts.iter().all(Submodule::is_full)
    }

    /// Ranks of `S_d / relations_d`.
    pub fn ranks(&self) -> Vec<usize> {
        self.parts
            .iter()
            .zip(&self.parent.components)
            .map(|(p, c)| p.rank() - c.relations().rank())
            .collect()
    }

    /// The subobject as a graded module in its own canonical bases, with the
    /// degreewise inclusion matrices into the parent.
    pub fn to_module(&self) -> Result<(GradedModule, Vec<Matrix>)> {
        let ring = self.parent.ring;
        let mut components = Vec::with_capacity(self.parts.len());
        let mut inclusions = Vec::with_capacity(self.parts.len());
        for (p, c) in self.parts.iter().zip(&self.parent.components) {
            let rel_cols = c
                .relations()
                .basis_vectors()
                .iter()
                .map(|v| p.coordinates(v).ok_or(Error::NoSolution))
                .collect::<Result<Vec<_>>>()?;
            components.push(PresentedModule::from_relations(&Matrix::from_columns(ring, p.rank(), &rel_cols)));
            inclusions.push(p.generators());
        }
        let maps = (0..self.parent.vars)
            .map(|i| {
                (0..self.parent.truncation())
                    .map(|d| {
                        let images = self.parent.maps[i][d].mul(&inclusions[d])?;
                        let cols = images
                            .columns()
                            .map(|v| self.parts[d + 1].coordinates(&v).ok_or(Error::NotClosed { var: i + 1, degree: d }))
                            .collect::<Result<Vec<_>>>()?;
                        Ok(Matrix::from_columns(ring, self.parts[d + 1].rank(), &cols))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((
            GradedModule::from_parts_unchecked(ring, self.parent.vars, components, maps),
            inclusions,
        ))
    }

    /// `y / S` on the generators of `y`, with the identity projections.
    pub fn quotient(&self) -> (GradedModule, Vec<Matrix>) {
        let ring = self.parent.ring;
        let components = self.parts.iter().map(|p| PresentedModule::new(p.clone())).collect();
        let projections = self
            .parent
            .components
            .iter()
            .map(|c| Matrix::identity(ring, c.generators()))
            .collect();
        (
            GradedModule::from_parts_unchecked(ring, self.parent.vars, components, self.parent.maps.clone()),
            projections,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::Nilpotency;

    fn q(dim: usize) -> PresentedModule {
        PresentedModule::free(Ring::Rationals, dim)
    }

    fn z(dim: usize) -> PresentedModule {
        PresentedModule::free(Ring::Integers, dim)
    }

    /// `dim`-dimensional space in degrees `0..len` with every `t` the identity.
    fn ladder(ring: Ring, len: usize, truncation: usize) -> GradedModule {
        let components: Vec<PresentedModule> = (0..=truncation)
            .map(|d| PresentedModule::free(ring, usize::from(d < len)))
            .collect();
        let maps = vec![(0..truncation)
            .map(|d| {
                if d + 1 < len {
                    Matrix::identity(ring, 1)
                } else {
                    zero_matrix_between(ring, &components[d + 1], &components[d])
                }
            })
            .collect()];
        GradedModule::new(ring, 1, components, maps).unwrap()
    }

    #[test]
    fn twist_examples() {
        let x = GradedModule::free(&z(1), 1, 0, 6);
        assert_eq!(x.twist(0).unwrap(), x);
        let shifted = x.twist(-1).unwrap();
        assert_eq!(&shifted.ranks()[..4], &[0, 1, 1, 1]);
        let back = shifted.twist(1).unwrap();
        assert_eq!(back, x);
        assert!(matches!(x.twist(7), Err(Error::WindowTooSmall { .. })));
    }

    #[test]
    fn free_module_dimensions() {
        assert_eq!(GradedModule::free(&q(2), 2, 1, 3).ranks(), [0, 2, 4, 6]);
        assert_eq!(GradedModule::free(&q(3), 0, 2, 4).ranks(), [0, 0, 3, 0, 0]);
        let line = GradedModule::free(&z(1), 1, 0, 4);
        assert_eq!(line.ranks(), [1; 5]);
        for d in 0..4 {
            assert_eq!(*line.map(0, d), Matrix::identity(Ring::Integers, 1));
        }
    }

    #[test]
    fn free_module_validates() {
        let x = GradedModule::free(&z(2), 3, 1, 4);
        let rebuilt = GradedModule::new(x.ring(), x.vars(), x.components().to_vec(), x.maps.clone());
        assert_eq!(rebuilt.unwrap(), x);
    }

    #[test]
    fn non_commuting_maps_are_rejected() {
        let r = Ring::Rationals;
        let comps = vec![q(1), q(2), q(2)];
        let t1 = vec![Matrix::from_i64(r, &[&[1], &[0]]), Matrix::from_i64(r, &[&[1, 0], &[0, 0]])];
        let t2 = vec![Matrix::from_i64(r, &[&[0], &[1]]), Matrix::from_i64(r, &[&[1, 0], &[0, 0]])];
        let err = GradedModule::new(r, 2, comps, vec![t1, t2]).unwrap_err();
        assert_eq!(err, Error::NonCommuting { i: 1, j: 2, degree: 0 });
    }

    #[test]
    fn degree_of_generation_examples() {
        assert_eq!(GradedModule::free(&q(2), 2, 3, 8).degree_of_generation(), Some(3));
        let late = GradedModule::free(&q(1), 1, 0, 8)
            .direct_sum(&GradedModule::concentrated(&q(1), 5, 1, 8))
            .unwrap();
        assert_eq!(late.degree_of_generation(), Some(5));
        assert_eq!(GradedModule::zero(Ring::Rationals, 2, 6).degree_of_generation(), Some(0));
        let top = GradedModule::concentrated(&q(1), 6, 1, 6);
        assert_eq!(top.degree_of_generation(), None);
    }

    #[test]
    fn canonical_filtration_is_a_subobject() {
        let x = GradedModule::free(&z(1), 2, 1, 5).direct_sum(&GradedModule::concentrated(&z(1), 3, 2, 5)).unwrap();
        let f2 = x.canonical_filtration(2);
        let checked = GradedSubmodule::new(&x, f2.parts().to_vec()).unwrap();
        assert_eq!(checked.ranks(), [0, 1, 2, 3, 4, 5]);
        assert_eq!(x.ranks(), [0, 1, 2, 4, 4, 5]);
    }

    #[test]
    fn nil_examples() {
        let x = ladder(Ring::Rationals, 3, 8);
        assert_eq!(x.is_nil(), NilStatus::Nil(3));
        assert_eq!(GradedModule::free(&q(1), 1, 0, 8).is_nil(), NilStatus::NotWithinWindow);
        assert_eq!(GradedModule::zero(Ring::Integers, 1, 4).is_nil(), NilStatus::Nil(0));
    }

    #[test]
    fn quotient_by_variables() {
        let x = GradedModule::free(&z(1), 1, 0, 5);
        let quotient = x.quotient_by_vars(&[0]).unwrap();
        assert_eq!(quotient.ranks(), [1, 0, 0, 0, 0, 0]);
        assert_eq!(x.quotient_by_vars(&[]).unwrap().ranks(), x.ranks());
        let twice = quotient.quotient_by_vars(&[0]).unwrap();
        assert_eq!(twice.ranks(), quotient.ranks());
        assert!(x.ff_sub(&[1]).is_err());
    }

    #[test]
    fn koszul_homology_of_free_modules() {
        for (dim, n, k) in [(1, 1, 0), (2, 2, 1), (1, 3, 2)] {
            let x = GradedModule::free(&z(dim), n, k, 8);
            let kh = x.koszul_homology().unwrap();
            assert!(kh.is_regular());
            for d in 0..=kh.window {
                let expect = if d == k { dim } else { 0 };
                assert_eq!(*kh.group(0, d), ModulePresentation::free(Ring::Integers, expect));
            }
        }
    }

    #[test]
    fn koszul_homology_of_a_two_step_ladder() {
        let x = ladder(Ring::Integers, 2, 6);
        let kh = x.koszul_homology().unwrap();
        let t0: Vec<usize> = (0..=kh.window).map(|d| kh.rank(0, d)).collect();
        let t1: Vec<usize> = (0..=kh.window).map(|d| kh.rank(1, d)).collect();
        assert_eq!(t0, [1, 0, 0, 0, 0, 0]);
        assert_eq!(t1, [0, 0, 1, 0, 0, 0]);
        assert!(!x.is_t_regular().unwrap());
        assert!(matches!(x.functor_b(2), Err(Error::NotTRegular { index: 1, degree: 2 })));
    }

    #[test]
    fn koszul_window_needs_room() {
        let x = GradedModule::zero(Ring::Integers, 3, 2);
        assert_eq!(
            x.koszul_homology().unwrap_err(),
            Error::WindowTooSmall { needed: 3, available: 2 }
        );
        let kh = GradedModule::zero(Ring::Integers, 2, 5).koszul_homology().unwrap();
        assert!(kh.groups.iter().flatten().all(ModulePresentation::is_zero));
    }

    #[test]
    fn koszul_homology_sees_torsion() {
        // Z --2--> Z in degrees 0, 1
        let r = Ring::Integers;
        let x = GradedModule::new(r, 1, vec![z(1), z(1), z(0)], vec![vec![Matrix::from_i64(r, &[&[2]]), Matrix::zeros(r, 0, 1)]]).unwrap();
        let kh = x.koszul_homology().unwrap();
        assert_eq!(kh.group(0, 0).to_string(), "Z");
        assert_eq!(kh.group(0, 1).to_string(), "Z/2");
    }

    #[test]
    fn functors_a_and_b() {
        let parts = vec![q(1), q(0), q(1)];
        let a = functor_a(Ring::Rationals, &parts, 1, 8).unwrap();
        assert_eq!(a.ranks(), [1, 1, 2, 2, 2, 2, 2, 2, 2]);
        let b = a.functor_b(2).unwrap();
        let ranks: Vec<usize> = b.iter().map(|p| p.free_rank).collect();
        assert_eq!(ranks, [1, 0, 1]);
        let free = GradedModule::free(&q(2), 2, 1, 6);
        let b: Vec<usize> = free.functor_b(3).unwrap().iter().map(|p| p.free_rank).collect();
        assert_eq!(b, [0, 2, 0, 0]);
    }

    #[test]
    fn filtration_quotients_telescope() {
        let a = functor_a(Ring::Integers, &[z(1), z(2)], 2, 5).unwrap();
        let mut sums = vec![0; 6];
        for p in 0..=5 {
            for (d, g) in a.filtration_quotients(p).iter().enumerate() {
                sums[d] += g.free_rank;
            }
        }
        assert_eq!(sums, a.ranks());
    }

    #[test]
    fn special_filtering_witness() {
        let y = GradedModule::free(&q(1), 1, 0, 6);
        let x = GradedSubmodule::generated_by(&y, &[vec![]]).unwrap();
        let w = GradedModule::nil_special_filtering_witness(&x).unwrap();
        assert_eq!(w.z.is_nil(), NilStatus::Nil(0));
        assert!(w.composite_injective);

        let ladder = ladder(Ring::Rationals, 1, 6);
        let bottom = GradedSubmodule::new(&ladder, ladder.full_parts()).unwrap();
        let w = GradedModule::nil_special_filtering_witness(&bottom).unwrap();
        assert_eq!(w.z, ladder);
        assert!(w.composite_injective);

        let deg0 = GradedSubmodule::generated_by(&y, &[vec![vec![BigRational::from_integer(1.into())]]]).unwrap();
        assert!(matches!(GradedModule::nil_special_filtering_witness(&deg0), Err(Error::NotNil)));
    }

    #[test]
    fn special_filtering_witness_for_a_point() {
        // F1[t] has no nonzero Nil subobject, so the degree-0 point is taken
        // inside F1[t] ⊕ F1[t]/(t)
        let free = GradedModule::free(&q(1), 1, 0, 6);
        let point = free.quotient_by_vars(&[0]).unwrap();
        let quotient = point.direct_sum(&free).unwrap();
        let one = BigRational::from_integer(1.into());
        let zero = BigRational::from_integer(0.into());
        let x = GradedSubmodule::generated_by(&quotient, &[vec![vec![one, zero]]]).unwrap();
        assert_eq!(x.ranks(), [1, 0, 0, 0, 0, 0, 0]);
        let w = GradedModule::nil_special_filtering_witness(&x).unwrap();
        assert_eq!(w.nil_bound, 1);
        assert_eq!(w.z.ranks(), [2, 0, 0, 0, 0, 0, 0]);
        assert!(w.composite_injective);
    }

    #[test]
    fn forgetting_the_grading() {
        let point = GradedModule::concentrated(&q(1), 0, 1, 4);
        let a = point.forget_grading().unwrap();
        assert_eq!(a.generators(), 1);
        assert!(a.endos()[0].is_zero());

        let x = ladder(Ring::Rationals, 3, 6);
        let a = x.forget_grading().unwrap();
        assert_eq!(a.generators(), 3);
        assert_eq!(a.nil_index(&[0]).unwrap(), Nilpotency::Nilpotent(3));

        let shifted = x.twist(-1).unwrap().forget_grading().unwrap();
        assert_eq!(shifted, a);

        let ff = x.ff_sub(&[0]).unwrap();
        let (ffx, incl) = ff.to_module().unwrap();
        let ffa = ffx.forget_grading().unwrap();
        let image = a.apply_family(&[0], &a.whole());
        assert_eq!(ffa.generators(), image.rank());
        let embedded = Matrix::block_diag(Ring::Rationals, &incl[..3]);
        assert_eq!(Submodule::new(&embedded), image);
        assert!(matches!(GradedModule::free(&q(1), 1, 0, 4).forget_grading(), Err(Error::NotNil)));
    }

    #[test]
    fn adjoining_a_variable() {
        let x = ladder(Ring::Integers, 2, 4);
        let xt = x.adjoin_variable();
        assert_eq!(xt.vars(), 2);
        assert_eq!(xt.ranks(), [1, 2, 2, 2, 2]);
        let rebuilt = GradedModule::new(xt.ring(), 2, xt.components().to_vec(), xt.maps.clone());
        assert!(rebuilt.is_ok());
    }
}
