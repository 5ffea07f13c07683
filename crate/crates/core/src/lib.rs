//! Computational Euclidean Jordan algebra and generalized subdifferentials of
//! spectral functions.
//!
//! The crate is organized bottom-up:
//!
//! * [`algebra`], [`frame`], [`peirce`]: product algebras of diagonal,
//!   symmetric-matrix and spin factors; spectral decomposition, Jordan frames,
//!   operator commutation, the quadratic map and Peirce projections.
//! * [`calculus`]: eigenvalue blocks, directional derivatives of the
//!   eigenvalue map, majorization.
//! * [`symfn`]: a catalog of symmetric functions on ℝʳ with queryable
//!   regular, limiting, horizon and Clarke subdifferentials.
//! * [`transfer`]: subdifferentials of spectral functions `F = f∘λ` from
//!   those of `f`, and the closed-form subdifferentials of `λ_k`.
//! * [`kl`]: sampling checks of the Kurdyka-Łojasiewicz inequality.
//! * [`oracle`]: brute-force oracles used to cross-validate all of the above.
//! * [`sample`]: seeded random algebras, elements and frames.
//! * [`json`]: the JSON file format for elements, frames and decompositions.

pub mod algebra;
pub mod calculus;
pub mod error;
pub mod frame;
pub mod json;
pub mod kl;
mod jacobi;
pub mod peirce;
pub mod oracle;
pub mod sample;
pub mod symfn;
pub mod transfer;

pub use algebra::{jordan_product, trace_inner, Algebra, Element, FactorKind, Part, SymMatrix};
pub use calculus::{
    block_structure, eigen_dir_derivative, majorizes, stabilizer_hull_member, EigenBlockStructure,
};
pub use error::{Error, Result};
pub use frame::{
    common_frame, common_frame_with, default_tau_group, diag_build, diag_in_frame, eigenvalues,
    frame_extend, operator_commute, spectral_decompose, JordanFrame, SpectralDecomposition,
};
pub use jacobi::MAX_SWEEPS;
pub use peirce::{peirce_project, quadratic_apply, PeirceParts};
pub use symfn::{SubdiffKind, SubdiffSet, SymmetricFunctionId};
pub use transfer::{
    lambda_k_subdiff_member, lambda_k_subdiff_member_with, spectral_dist0, spectral_subdiff_member,
    spectral_subdiff_member_with, spectral_subgradient_build, spectral_value, LambdaKBranch, LambdaKVerdict,
    SpectralQueryReport,
};
pub use kl::{kl_check, kl_check_vector, kl_exponent_fit, ExponentFit, KLReport, KlConfig};
pub use oracle::{fd_dir_derivative, hull_member_bruteforce, regular_subgradient_probe, FdEstimate, ProbeVerdict};
