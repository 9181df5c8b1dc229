//! Countable linear orders as symbolic terms with concrete elements.
//!
//! The crate covers ordinal arithmetic in Cantor normal form, a term algebra
//! of countable orders with element-level comparison and neighbors, pointed
//! finite-support exponentials, Hausdorff condensation, cyclic-transitivity
//! witnesses and an explicit isomorphism `(L,a)^alpha -> (L,b)^alpha` for
//! discrete unbounded cyclically transitive orders.

pub mod cli;
pub mod condensation;
pub mod cyclic;
pub mod error;
pub mod expiso;
pub mod exponential;
pub mod linorder;
pub mod ordinal;
pub mod report;

pub use error::{Error, Result};
pub use linorder::{Element, OrderTerm};
pub use ordinal::Ordinal;
