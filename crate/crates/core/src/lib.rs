//! Exact computer algebra for the genus-two skein module: q-difference
//! operators, reduced Askey-Wilson polynomials, θ-link actions, and the
//! verifiers tying them together.

pub mod askey_wilson;
pub mod check;
pub mod error;
pub mod exact;
pub mod par;
pub mod qops;
pub mod skein;
pub mod suites;

pub use error::{Error, Result};
