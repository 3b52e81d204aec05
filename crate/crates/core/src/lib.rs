//! Exact symbolic exterior calculus for holomorphic polynomial forms on ℂⁿ
//! with Gaussian-rational coefficients.
//!
//! The crate models forms, tensors and graded-commutative operator
//! polynomials, enumerates the basis of natural operators for a signature,
//! and ships executable certificates (witness forms, rank certificates,
//! homogeneity and naturality checks, and an equivariance oracle).
//!
//! ```
//! use holoform::parse::parse_form;
//!
//! let w = parse_form("z1*dz2", None).unwrap();
//! assert_eq!(w.d().to_string(), "dz1 /\\ dz2");
//! ```

pub mod error;
pub mod form;
pub mod graded;
pub mod poly;
pub mod scalar;
pub mod tensor;
pub mod jet;
pub mod linalg;
pub mod classify;
pub mod oracle;
pub mod verify;
pub mod parse;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub struct Introduction;
    #[doc = include_str!("../../../book/src/scalars-and-polynomials.md")]
    pub struct ScalarsAndPolynomials;
    #[doc = include_str!("../../../book/src/forms.md")]
    pub struct Forms;
    #[doc = include_str!("../../../book/src/tensors.md")]
    pub struct Tensors;
    #[doc = include_str!("../../../book/src/graded-algebra.md")]
    pub struct GradedAlgebra;
    #[doc = include_str!("../../../book/src/classification.md")]
    pub struct Classification;
    #[doc = include_str!("../../../book/src/jets.md")]
    pub struct Jets;
    #[doc = include_str!("../../../book/src/oracle.md")]
    pub struct Oracle;
    #[doc = include_str!("../../../book/src/verification.md")]
    pub struct Verification;
    #[doc = include_str!("../../../book/src/cli.md")]
    pub struct Cli;
}
