//! Partial zeta values, Kronecker limit constants and double-sine invariants
//! for narrow ray classes of real quadratic fields.
//!
//! Exact arithmetic (fields, ideals, continued fractions, cone data) lives in
//! [`qfield`], [`cfrac`] and [`classdata`]. Floating-point work is done with
//! MPFR at an explicit [`specfun::Precision`].

pub mod cfrac;
pub mod checks;
pub mod error;
pub mod limits;
pub mod classdata;
pub mod qfield;
pub mod specfun;

pub use error::{Error, Result};
