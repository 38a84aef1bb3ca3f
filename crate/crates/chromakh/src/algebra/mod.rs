//! Exact scalar arithmetic, Laurent polynomials, sparse matrices, chain
//! complexes, and Gaussian-elimination-based homology with reduction data.

mod betti;
mod complex;
mod field;
mod laurent;
mod rational;
mod reduction;
mod sparse;

pub use betti::{euler_characteristic, poincare, BettiTable, Poincare};
pub use complex::{Bidegree, ChainComplex, ChainMap};
pub use field::{Field, FieldTag, Rat, F2};
pub use laurent::{quantum_integer, LaurentPoly};
pub use rational::RationalFn;
pub use reduction::{gauss_eliminate, transport_map, Reduction};
pub use sparse::SparseMatrix;
