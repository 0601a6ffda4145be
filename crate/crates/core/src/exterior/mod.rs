//! Integer exterior algebras `Λ*(Z^d)`: the models of `K*(T^d)` (x-type
//! generators) and `K_*(T^d)` (y-type generators) used throughout.

mod class;
mod map;
mod monomial;

pub use class::{pair_kh, wedge, AlgebraSpec, ExteriorClass, Side, Variance, WireInt};
pub use map::{compose_maps, invert_map, GradedLinearMap, MatrixDump, SpecWire};
pub use monomial::{monomial_basis, Monomial, MAX_RANK};
