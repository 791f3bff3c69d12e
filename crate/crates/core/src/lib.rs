//! Exact engine for q-series constant-term identities.
//!
//! Arithmetic is exact over Q(q) (and Q(q, t) where two independent parameters
//! are needed); every comparison is structural equality of canonical forms.

pub mod combinatorics;
mod error;
pub mod identities;
pub mod laurent;
pub mod macdonald;
pub mod partitions;
pub mod plethysm;
pub mod qfield;
pub mod symfunc;

pub use error::{Error, Result};
pub use qfield::{Field, QRat, QtRat};
