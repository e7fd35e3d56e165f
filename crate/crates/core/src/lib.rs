pub mod classify;
pub mod cli;
pub mod clique;
pub mod constructions;
pub mod density;
pub mod error;
pub mod group;
pub mod perm;
