//! Exact computations on 3-valent GKM graphs with labels in `Z^2`.

pub mod cohomology;
pub mod connection;
pub mod error;
pub mod format;
pub mod graph;
pub mod linalg;
pub mod numeric;
pub mod orientation;
pub mod poly;
pub mod surface;
pub mod validate;
pub mod verdict;
pub mod weight;

pub use connection::{Connection, ConnectionPath, ConnectionSpace};
pub use error::{GkmError, Result};
pub use graph::{DirectedEdge, Edge, EdgeId, GkmGraph, VertexId};
pub use weight::Weight;
