//! Perturbation analysis for rectangular multiparameter eigenvalue problems
//! (rMEPs): backward errors of approximate eigenpairs and eigenvalues,
//! eigenvalue and eigenvector condition numbers, pseudospectrum fields over
//! parameter grids, a small-problem solver, right-definiteness
//! certification, and a least-squares realization application.
//!
//! An rMEP is a k x l matrix pencil `M(lambda) = A_0 + sum lambda_i A_i`
//! (polynomial terms are supported as well) with k = l + m - 1, for which
//! one seeks tuples `lambda` in C^m and nonzero `x` with `M(lambda) x = 0`.
//!
//! The crate is generic over the real scalar backing all complex
//! arithmetic; `f64` aliases are exported at the root.

pub mod error;
pub mod scalar;

pub mod backward;
pub mod conditioning;
pub mod linalg;
pub mod pencil;
pub mod pseudo;

pub mod fixtures;

pub use backward::{
    attaining_perturbations, eigenpair_backward_error, eigenvalue_backward_error, perturb_pencil,
    ErrorBound,
};
pub use conditioning::{
    auxiliary_matrix, eigenvalue_condition, eigenvector_condition, intersection_angles,
    secular_jacobian, simplicity_certificate, verify_jacobian_factorization, AngleReport,
    ConditionMode, ConditionReport,
};
pub use error::{Error, Result};
pub use scalar::{cx, CMat, CVec, Cx, RMat, RVec, Real};

pub use pencil::{
    enumerate_selections, left_nullspace, secular_gradient, secular_value, Eigenpair, EigenTuple,
    MultiParamPencil, NullSpaceBasis, PerturbationModel, PencilTerm, RowSelection, WeightMode,
};

/// `f64` aliases for the main domain types.
pub type Pencil64 = MultiParamPencil<f64>;
pub type EigenTuple64 = EigenTuple<f64>;
pub type Eigenpair64 = Eigenpair<f64>;
pub type PerturbationModel64 = PerturbationModel<f64>;

/// `f32` aliases; the whole analysis stack also runs in single precision.
pub type Pencil32 = MultiParamPencil<f32>;
pub type EigenTuple32 = EigenTuple<f32>;
