//! Exact computations for Takiff central extensions of Lie superalgebras, their
//! Fock space realizations, formal characters and Whittaker data.

pub mod error;
pub mod exactlin;
pub mod report;
pub mod superalg;
pub mod takiff;
pub mod fockrep;
pub mod wfinite;
pub mod charfun;

pub use error::{Error, Result};
pub mod cli;
