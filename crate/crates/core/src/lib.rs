//! Exact construction and verification of Weyl-invariant weak Jacobi forms for
//! the lattice D4 and its orthogonal group.

pub mod d4;
pub mod decompose;
pub mod error;
pub mod f4;
pub mod fj;
pub mod format;
pub mod identity;
pub mod laurent;
pub mod linalg;
pub mod qseries;
pub mod rational;
pub mod registry;
pub mod tables;
pub mod theta;
pub mod verify;
pub mod weyl;

pub use d4::{build_d4, build_d4_with, AugmentPolicy, D4Generators};
pub use decompose::{
    independence_certificate, monomial_basis, Certificate, DecomposeError, Decomposer, DecompositionResult, GeneratorSet,
    IndependenceReport, MonomialIndex,
};
pub use error::{Error, ErrorKind};
pub use f4::{build_f4, F4Generators};
pub use fj::{Expansion, FJSeries, FjError, Lattice, SeriesDiff};
pub use identity::BuildError;
pub use laurent::{Exponent, LaurentPoly};
pub use qseries::{Eisenstein, QSeries};
pub use rational::Rational;
pub use verify::{Check, Report, Suite};
pub use weyl::{Group, GroupElement, OrbitName};
