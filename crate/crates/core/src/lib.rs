//! Finite groups as Cayley tables, holomorphs and their regular subgroups,
//! and the enumeration of skew left braces of size `np` from braces of
//! size `n`.

pub mod brace;
pub mod counter;
pub mod dsdp;
pub mod error;
pub mod group;
pub mod holomorph;
pub mod morphisms;
pub mod oracle;

pub use error::{Error, Result};
