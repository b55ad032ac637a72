//! Linking invariants and weight calculus for spatial embeddings of the
//! Petersen family.

pub mod catalog;
pub mod conway;
pub mod cycle;
pub mod diagram;
pub mod error;
pub mod exchange;
pub mod graph;
pub mod iso;
pub mod spatial;
pub mod verify;

pub use catalog::{build, weight_rules, weight_table, FamilyMember, WeightMap};
pub use conway::{a2_coefficient, conway_polynomial, linking_number, ConwayPolynomial};
pub use cycle::{Cycle, DisjointPair, GammaElement};
pub use diagram::{extract_subdiagram, OrientedDiagram, Visit};
pub use error::{Error, Result};
pub use exchange::{delta_to_y, is_stable, phi_forward, phi_preimage, y_to_delta, Exchange};
pub use graph::{Edge, Graph, VertexLabel};
pub use spatial::{Crossing, SpatialEmbedding, StrandPoint, GENERICITY_EPS};
pub use verify::{analyze, derive_and_check_weights, member_of, VerificationReport};
