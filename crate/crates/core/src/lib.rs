//! Exact Ehrhart polynomials of panhandle and paving matroid polytopes.
//!
//! The crate has two halves. The formula side ([`ehrhart`]) evaluates the
//! closed forms for panhandle, uniform, product and paving matroid polytopes
//! in exact rational arithmetic ([`exactmath`]). The combinatorial side
//! ([`forests`], [`processing`]) enumerates ordered chain forests and their
//! valued, distinguished variants and implements the processing map, its
//! inverse and the sign-reversing map used to cancel the alternating sums.
//! [`oracle`] counts lattice points directly, and [`verify`] runs the sweep
//! campaigns that tie everything together.

pub mod ehrhart;
pub mod error;
pub mod exactmath;
pub mod forests;
pub mod oracle;
pub mod processing;
pub mod verify;

pub use error::{Error, Result};
pub use exactmath::Polynomial;
