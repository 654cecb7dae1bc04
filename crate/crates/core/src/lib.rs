//! Tits groups of Iwahori-Weyl groups, their twisted forms, and the
//! Iwahori-Hecke algebras attached to them.

pub mod affine_tits;
pub mod cli_reports;
pub mod descent;
pub mod error;
pub mod hecke;
pub mod lattice;
pub mod finite_tits;
pub mod iwahori_weyl;
pub mod root_datum;

pub use error::{Error, Result};
