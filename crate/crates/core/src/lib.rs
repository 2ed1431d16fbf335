pub mod algebra;
pub mod catalog;
pub mod document;
pub mod error;
pub mod lattice;
pub mod partition;
pub mod relation;
pub mod freese;
