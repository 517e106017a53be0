//! Directed spatial graph toolkit.
//!
//! Combinatorics: directed multigraphs with stable identities, consistent
//! (directed) cycle enumeration, digraph-minor operations, and deterministic
//! constructors for the block-gluing gadget families.
//!
//! Geometry: exact rational piecewise-linear embeddings, linking numbers by
//! signed crossings under exact generic projections, knot determinants via
//! the Goeritz matrix, and embedding-level doubling and path contraction.
//!
//! Census: enumeration of consistently oriented knots and links in a given
//! embedding, doubling-count verification, and cycle repair.

pub mod census;
pub mod constructions;
pub mod cycle;
pub mod digraph;
pub mod embedding;
pub mod enumerate;
pub mod error;
pub mod fixtures;
pub mod geom;
pub mod id;
pub mod knot;
pub mod linking;
pub mod minors;
pub mod projection;
pub mod verify;

pub use cycle::{Cycle, CycleStep, Traversal};
pub use digraph::{Digraph, Edge, GraphDoc, SymmetricDouble};
pub use error::{Error, Result};
pub use id::{EdgeId, VertexId};
