//! Command line front end for GKM graph complexes.

pub mod commands;
pub mod document;
pub mod dot;
pub mod error;
