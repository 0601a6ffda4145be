//! Exact K-theory and K-homology of tori.
//!
//! Subtori of `T^d` and of its Pontryagin dual are encoded by primitive
//! integer bases; their classes live in integer exterior algebras. On top of
//! that the crate builds the Fourier–Mukai transform, spin Poincaré duality
//! and the Baum–Connes assembly map for `Z^d` as exact linear maps, together
//! with brute-force oracles and a seeded verification suite.

mod combinatorics;
pub mod error;
pub mod exterior;
pub mod fm;
pub mod lattice;
pub mod oracle;
pub mod subtorus;
pub mod verify;

pub use error::{Error, Result};
pub use exterior::{
    compose_maps, invert_map, pair_kh, wedge, AlgebraSpec, ExteriorClass, GradedLinearMap,
    MatrixDump, Monomial, Side, Variance, WireInt,
};
pub use fm::{
    assembly_on_subtorus, build_assembly, build_fm_h, build_fm_k, build_pd_spin, SignFormula,
};
pub use lattice::{
    dual_section, hermite_normal_form, integer_kernel_basis, is_primitive_basis, pluecker_minors,
    saturate, smith_normal_form, HermiteDecomposition, IntMatrix, PlueckerVector,
    SmithDecomposition,
};
pub use num_bigint::BigInt;
pub use oracle::{enumerate_intersection, random_primitive_subtorus, RandomSpec, TorusPoint};
pub use subtorus::{IntersectionData, OrientedSubtorus, Sign};
pub use verify::{run_suite, Counterexample, PropertyResult, Status, SuiteConfig, VerifyReport};
