//! Maximum-weight independent set on graphs without long induced subdivided
//! claws, via extended strip decompositions and border profiles.

pub mod border;
pub mod decomposer;
pub mod error;
pub mod esd;
pub mod graph;
pub mod matching;
pub mod num;
pub mod oracle;
pub mod solver;
pub mod treedec;

pub use border::BorderProfile;
pub use error::{Error, ErrorKind, Result};
pub use esd::{ExtendedStripDecomposition, Particle, ParticleKind};
pub use graph::WeightedGraph;
pub use num::Weight;

/// Vertex weights used by the front ends.
pub type Graph = WeightedGraph<u64>;

/// Profiles over [`Graph`].
pub type Profile = BorderProfile<u64>;
