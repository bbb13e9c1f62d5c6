//! Exact arithmetic and search tools for Butson Hadamard matrices, their bent
//! vectors and the codes they generate.

pub mod bent;
pub mod bush;
pub mod butson;
pub mod codes;
pub mod cyclotomic;
pub mod error;
pub mod numtheory;

pub use bent::{check_bent, BentCertificate, LogVector, SearchMode};
pub use butson::{verify_hadamard, LogMatrix};
pub use cyclotomic::CycInt;
pub use error::{Error, Result};
