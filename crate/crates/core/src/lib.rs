//! Algorithms for induced Ramsey problems on triangle colorings: clique
//! extraction by stepping up, weak regularization of partite hypergraphs,
//! embeddings of linear and tight-tree triangle systems, a bipartite host
//! construction, and a brute-force arrow oracle.

pub mod biphost;
pub mod bitset;
pub mod coloring;
pub mod embed;
pub mod error;
pub mod graph;
pub mod iso;
pub mod partite;
pub mod randmod;
pub mod rational;
pub mod regularize;
pub mod rng;
pub mod schedule;
pub mod steps;
pub mod treeembed;
pub mod triples;
pub mod verify;

pub use bitset::VertexSet;
pub use coloring::{Color, TriangleColoring};
pub use error::{Error, Result};
pub use graph::{pair_stats, Adjacency, Graph, PairStats};
pub use partite::{partite_density, PartiteFamily};
pub use rational::Q;
pub use schedule::ParameterSchedule;
pub use triples::{triangles, Triple, TripleSystem};
