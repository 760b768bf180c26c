//! Monic determinantal representations of real quadratic polynomials.
//!
//! Given `f(x) = x^T A x + b^T x + 1`, this crate decides whether
//! `f(x) = det(I + x_1 A_1 + ... + x_n A_n)` for Hermitian or real symmetric
//! `A_j`, builds such pencils when they exist, verifies them, and classifies
//! size-2 representations up to unitary equivalence.
//!
//! ```
//! use mdrkit::{construct, quadform::QuadraticPolynomial, verify, DEFAULT_TOL};
//!
//! let f: QuadraticPolynomial = "1 + 2*x1 + x1^2 - x2^2 - x3^2 - x4^2".parse()?;
//! let report = construct::decide(&f, DEFAULT_TOL)?;
//! assert_eq!(report.verdict, construct::Verdict::Size2HermitianOnly);
//!
//! let pencil = construct::construct_size2(&f, DEFAULT_TOL)?.pencil();
//! assert!(!pencil.is_symmetric());
//! assert!(verify::verify_determinant(&f, &pencil, 1e-9, 64)?.ok);
//! # Ok::<(), mdrkit::Error>(())
//! ```
//!
//! The guide in `book/` walks through the theory behind each module.

pub mod construct;
pub mod equivalence;
pub mod error;
pub mod linalg;
pub mod quadform;
pub mod verify;

pub use error::{Error, Result};
pub use linalg::DEFAULT_TOL;

// Runs the guide's code blocks as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/real-zero.md")]
    mod real_zero {}
    #[doc = include_str!("../../../book/src/size-two.md")]
    mod size_two {}
    #[doc = include_str!("../../../book/src/equivalence.md")]
    mod equivalence {}
    #[doc = include_str!("../../../book/src/any-size.md")]
    mod any_size {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
