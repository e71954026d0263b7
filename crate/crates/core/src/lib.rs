//! Finite monoids, semi-biproducts and pseudo-actions.

pub mod action;
pub mod bounded;
pub mod catalog;
pub mod cli;
pub mod corpus;
pub mod enumerate;
mod error;
pub mod gallery;
pub mod io;
pub mod iso;
pub mod maps;
pub mod monoid;
pub mod morphism;
pub mod relations;
pub mod semibiproduct;
pub mod transform;

pub use error::{Error, Result};
