//! Multiple Eisenstein values and the Goncharov and Beilinson regulators on
//! modular curves, computed from truncated q-expansions.
//!
//! The crate is `no_std` and only needs `alloc`. Floating point math goes
//! through `libm`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod eisenstein;
pub mod error;
pub mod identities;
pub mod mellin;
pub mod mev;
pub mod quad;
pub mod regint;
pub mod regulator;
pub mod series;
pub mod specfun;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;
pub use specfun::Rational;
