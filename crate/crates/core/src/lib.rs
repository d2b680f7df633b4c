//! Exact and numeric verification of quantization obstructions.
//!
//! The crate encodes five classical phase spaces as Poisson algebras of
//! polynomials, their candidate quantizations as operator algebras,
//! differential operators or finite matrices, and checks the bracket to
//! commutator rule `Q({f,g}) = (i/hbar)[Q(f), Q(g)]` term by term. A nonzero
//! exact residual is a no-go witness; identically zero residuals up to a
//! degree cap are a consistency certificate.

pub mod cli;
pub mod error;
pub mod linalg;
pub mod opalg;
pub mod poisson;
pub mod poly;
pub mod reps;
pub mod scalars;
pub mod scenarios;

pub use error::{Error, Result};
pub use scalars::{Bindings, Gq, Param, ParamMono, ParamScalar, Value};
