//! Exact computations for twisted Heisenberg Lie algebras over finite fields of
//! odd characteristic: restricted structures, ordinary and restricted
//! cohomology in degrees 1 and 2, and restricted one-dimensional central
//! extensions.

pub mod error;
pub mod field;
pub mod linalg;
pub mod liealg;
pub mod heisenberg;
pub mod cohomology;
pub mod restricted;
pub mod extensions;

pub use error::{Error, Result};
pub use field::{ArithOp, Fe, Field, FieldBounds};
pub use linalg::{Matrix, Subspace, Vector};
pub use liealg::{
    is_restricted_homomorphism, is_restricted_morphism, AlgebraJson, Element, LieAlgebra, PMap,
};
pub use heisenberg::{IsoCandidate, Layout, RestrictedTwisted};
pub use cohomology::{Cochain, CohomologyResult};
pub use restricted::{RestrictedCochain2, RestrictedCochain3};
pub use extensions::{CentralExtension, Family};
