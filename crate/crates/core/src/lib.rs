//! Boolean constraint languages: Post's lattice, weak bases, partial
//! co-clones, Max-Ones and VCSP classification, and executable reductions.

pub mod classify;
pub mod cli;
pub mod error;
pub mod formula;
pub mod gadgets;
pub mod instance;
pub mod lattice;
pub mod operation;
pub mod oracle;
pub mod rational;
pub mod reductions;
pub mod relation;
pub mod selftest;
pub mod text;
pub mod valued;
pub mod weak_base;

pub use error::{Error, Result};
