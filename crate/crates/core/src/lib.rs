//! Fine-grained reductions from branching-program satisfiability to edit
//! distance, with the surrounding combinatorial machinery.

pub mod adversary;
pub mod bp;
pub mod cli;
pub mod corpus;
pub mod convert;
pub mod editdist;
pub mod error;
pub mod matrix;
pub mod ov;
pub mod pathcost;
pub mod reduction;
pub mod report;
pub mod verify;

pub use error::{Error, Result};
