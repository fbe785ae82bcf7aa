//! Exact construction and verification of signed difference sets over finite
//! abelian groups.

pub mod algebra;
pub mod cli;
pub mod cyclotomy;
pub mod designs;
pub mod document;
pub mod error;
pub mod groupring;
pub mod groups;
pub mod product3;
pub mod sequences;

pub use error::{Error, Result};
