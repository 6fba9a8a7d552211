//! Exact bounds, dimension experiments and certified constructions for the
//! sum-of-squares length of real forms.
//!
//! - [`bounds`]: closed-form Pythagoras-number bounds and the `s_min` table.
//! - [`ring`]: graded-lex monomials, coefficient domains, dense forms.
//! - [`linalg`]: rank and kernels over `F_p` and `Q`.
//! - [`generic`]: randomized dimension counts for point ideals and generic forms.
//! - [`witness`]: rational sos forms with certified exact length.

pub mod bounds;
pub mod error;
pub mod generic;
pub mod linalg;
pub mod ring;
pub mod witness;

pub use error::{Error, Result};
