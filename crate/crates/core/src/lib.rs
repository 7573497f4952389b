//! Automatic structures for one-relator semigroups.

pub mod catalog;
pub mod classifier;
pub mod error;
pub mod fsa;
pub mod gsm;
pub mod io;
pub mod pairs;
pub mod rewriting;
pub mod structures;
pub mod words;

pub use error::{Error, Result};
