//! Finite fibred-categorical obstruction and classification workbench.
//!
//! Everything is exhaustive over finite inputs: groups are multiplication
//! tables, categories are composition tables, and every classification
//! result is checked against an independent enumeration where feasible.

pub mod butterfly;
pub mod cli;
pub mod cohomology;
pub mod fincat;
pub mod fingroup;
pub mod io;
pub mod limits;
pub mod opext;
pub mod schreier;
pub mod verify;
pub mod xmod;
mod snf;

pub use fingroup::{FiniteGroup, GroupError, Homomorphism};
pub use limits::{BudgetExceeded, Limits};
