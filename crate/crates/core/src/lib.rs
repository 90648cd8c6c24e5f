//! Exact homological linear algebra for cube calculus, graded `F1[t1..tn]`-modules,
//! affine objects with commuting endomorphisms, and `K_0` class bookkeeping.
//!
//! Everything here is pure and allocation-only (`no_std` + `alloc`); file formats,
//! random instance generation and the command-line front end live in the `kml`
//! crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

mod elim;
pub mod adams;
pub mod affine;
pub mod cube;
pub mod error;
pub mod graded;
pub mod k0;
pub mod matrix;
pub mod module;
pub mod ring;

pub use adams::{cofactor, koszul_class, verify_adams_koszul, AdamsReport, LaurentPolynomial};
pub use affine::{
    annihilates_quotient, artin_rees_index, devissage_filtration, restrict, AffineObject, ArtinReesReport,
    Devissage, FFiltration, Nilpotency, StabilityReport,
};
pub use cube::{typical_cube, ChainComplex, CubeReport, SCube, Square, Subset, TypicalCubeSpec};
pub use error::{Error, Result};
pub use graded::{
    functor_a, is_graded_map, GradedModule, GradedSubmodule, KoszulHomology, NilStatus, SpecialFilteringWitness,
};
pub use k0::{
    check_additivity, hilbert_class, k0_class, projective_space_decomposition, split_sequence_verify,
    verify_one_minus_s, AdditivityReport, K0Vector, OneMinusSReport, ProjectiveSpaceReport, SesWitness, SplitReport,
};
pub use matrix::Matrix;
pub use module::{
    cokernel, homology_at, intersect_submodules, kernel_basis, rank, smith_normal_form, solve,
    subquotient, ModulePresentation, PresentedModule, SmithDecomposition, Submodule,
};
pub use ring::{Ring, Scalar};
