//! Householder reflections, spectral-sum observables and exhaustive classical
//! value assignments on context hypergraphs.
//!
//! All orthogonality, determinant and trace checks run over exact rationals
//! ([`Rational`]); floating point is used only by [`linalg::orthonormalize`],
//! which needs square roots.

pub mod coloring;
pub mod enumeration;
pub mod hypergraph;
pub mod linalg;
pub mod quantum;
pub mod rational;

pub use coloring::{chromatic_number, SimpleGraph};
pub use enumeration::{PmAssignment, SumHistogram, TwoValuedState};
pub use hypergraph::{Context, ContextHypergraph, ObservableId, ValidationReport};
pub use linalg::{HouseholderReflector, Matrix, Projector, Scalar, Vector};
pub use quantum::{DensityMatrix, EigenvalueScheme, SpectralObservable};
pub use rational::Rational;

/// Absolute tolerance for float-mode comparisons on unit-scale quantities.
pub const FLOAT_TOLERANCE: f64 = 1e-9;
