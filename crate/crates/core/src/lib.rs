//! Exact computations with liftings of quantum linear spaces `H(g, χ, λ)`.
//!
//! The crate builds the algebra over a cyclotomic field, computes its
//! integrals, modular element and Nakayama automorphism, and analyzes the
//! grading of `H` by eigenvalues of that automorphism.

pub mod axioms;
pub mod config;
pub mod corpus;
pub mod cyclotomic;
pub mod frobenius;
pub mod grading;
pub mod group;
pub mod hopf;
pub mod linalg;
pub mod report;

pub use cyclotomic::{CycScalar, RootOfUnity};
pub use group::{Character, FiniteAbelianGroup, GroupElement};
pub use hopf::{HopfElement, Lifting, LiftingDatum, Monomial, TensorElement};
