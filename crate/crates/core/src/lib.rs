//! Relationship inference over kinship matrices.
//!
//! A [`RelationshipMatrix`] records, for each ordered pair of persons, the
//! kinship codes describing the second relative to the first. From it the
//! crate derives walk-count powers of the 0/1 projection, recorded
//! relationship paths such as `1_F_2_DHB_3`, families as connected
//! components, most-direct relationships under several distance models, and
//! generation-leveled family networks with conflict reports.
//!
//! ```
//! use kinship::{binarize, pow_count, RelationRegistry, RelationshipMatrix, WalkCountMatrix};
//!
//! let reg = RelationRegistry::builtin();
//! let t = RelationshipMatrix::from_triples(&reg, [("1", "2", "F"), ("2", "3", "DHB")]).unwrap();
//! let m: WalkCountMatrix = binarize(&t);
//! let m2 = pow_count(&m, 2).unwrap();
//! assert_eq!(m2.entries().collect::<Vec<_>>(), vec![((0, 2), 1)]);
//! ```

pub mod cli;
pub mod export;
pub mod ingest;
pub mod kingraph;
pub mod netbuilder;
pub mod relation;
pub mod report;
pub mod rmatrix;

pub use ingest::{load_edges, symmetrize, EdgeTriple, IngestError};
pub use kingraph::{
    enumerate_paths, families, shortest_relationship, weighted_distance, Cost, FamilyPartition, GraphError, KinGraph,
    Metric,
};
pub use netbuilder::{assign_generations, build_network, check_consistency, FamilyNetwork, GenerationAssignment};
pub use relation::{AlgebraError, PrimitiveStep, RegistryError, RelationCode, RelationRegistry};
pub use report::{Conflict, ConflictKind, ConflictReport};
pub use rmatrix::{
    are_relatives, binarize, mul_count, mul_paths, pow_count, pow_paths, smallest_power_hit, CountMatrix, Direction,
    MatrixError, PathMatrix, PathRecord, PathStep, PowerHit, RelationshipMatrix, WalkCount,
};

/// Walk counts with 64-bit saturating arithmetic.
pub type WalkCountMatrix = CountMatrix<u64>;

/// Distance model with floating-point weights.
pub type FloatMetric = Metric<f64>;

/// Distance model with exact rational weights.
pub type ExactMetric = Metric<num_rational::Ratio<i64>>;
