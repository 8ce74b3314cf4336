//! Exact-arithmetic workbench for centrally essential matrix algebras.
//!
//! The crate decides whether a finite-dimensional matrix algebra over the
//! rationals or a prime field is centrally essential: commutative, or such
//! that every non-central element a admits nonzero central x, y with
//! ax = y. It carries the exact linear algebra (echelonized subspaces,
//! kernels, nilpotent Jordan form), the structure theory (center,
//! centralizer, power chain, local splitting), the decision procedures
//! (exhaustive finite-field enumeration, randomized search, certificate
//! verification over the rationals), the named algebra constructions, a
//! randomized search harness, and the line-oriented file formats used by
//! the `cealg` command-line tool.

pub mod algebra;
pub mod ce;
pub mod claims;
pub mod construct;
pub mod explore;
pub mod field;
pub mod format;
pub mod jordan;
pub mod mat;
pub mod subspace;

pub use algebra::{
    centralizer, Commutativity, MatAlgebra, NilIndexReport, NilIndexStrategy, PowerChain,
    DEFAULT_ENUMERATION_BUDGET,
};
pub use ce::{
    ce_certificate_verify, ce_element_test, ce_exhaustive, ce_random_search, CeStatus, CeVerdict,
    SosCertificate,
};
pub use claims::{ClaimConfig, ClaimResult, ClaimRunner, ClaimStatus, CLAIM_IDS, DEFAULT_SEED};
pub use explore::{run_search, SearchConfig, SearchReport};
pub use field::{FieldSpec, Scalar};
pub use jordan::{nilpotent_jordan, JordanData};
pub use mat::{LinMap, Mat};
pub use subspace::{solve_kernel, Subspace};
