//! GKM graph complexes and their equivariant cohomology rings.
//!
//! A GKM complex is a union of regular graphs glued along common subgraphs,
//! decorated with an axial function (a weight in the character lattice for
//! every oriented edge) and a connection. Its equivariant cohomology in a
//! theory `E` is the ring of vertex labels satisfying one divisibility
//! condition per edge. When the complex admits a filtration with divisive
//! downward data, these rings are free over `E*_T` with a basis of classes
//! supported on upward sets.

pub mod algebra;
pub mod builtins;
pub mod cohomology;
pub mod gkm;
pub mod graphs;

pub use algebra::{AlgebraError, CoefficientElement, Theory};
pub use cohomology::{CohomologyClass, CohomologyError};
pub use gkm::{AxialFunction, Connection, GkmComplex, GkmError};
pub use graphs::{Edge, Filtration, GraphError, OrientedEdge, RegularGraph, SimplicialGraphComplex, Vertex};
