pub mod chain;
pub mod classify;
pub mod lemmas;
pub mod patterns;
pub mod search;
pub mod subpower;
