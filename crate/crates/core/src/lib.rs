//! Exact spectral calculus for compact self-adjoint operators on c₀ over the
//! t-adic field Q(t).
//!
//! Operators live in diagonal form `αI + Σ λᵢ Pᵢ` over a validated
//! orthonormal system. Every computation is exact, so identities such as
//! `(zI − T)∘R_z(T) = I` or `∫ f_T dm_T = T` hold as equalities of canonical
//! representations.

pub mod c0;
mod error;
pub mod field;
pub mod measure;
pub mod operators;
pub mod random;
pub mod spectral;
pub mod verify;

pub use c0::{inner_product, normal_projection_apply, sup_norm, OrthoSystem, Vec0};
pub use error::{Error, Result};
pub use field::{FieldElem, NormExp, Poly, Rat, Valuation};
pub use operators::{check_self_adjoint, LinearOperator, OpRepr, OpSY};
