//! Complexes glued from copies of the bitruncated 4-simplex: the block `B`
//! (6 copies), the closed complex `X′` (36 copies) and its orientation
//! double cover `X` (72 copies), with face-class bookkeeping and the
//! combinatorial analyses run on them.

mod analysis;
mod glue;
mod k6;

use thiserror::Error;

pub use analysis::{
    boundary_components, covering_consistency, ridge_report, sigma_analysis, surface_analysis,
    tprime_analysis, vertex_link_check, BoundaryComponent, LinkCertificate, LinkShape, RidgeAngles,
    RidgeKind, RidgeRecord, RidgeReport, SurfaceClass, SurfaceReport, VertexLink,
};
pub use glue::{
    build_block, build_xprime, euler_characteristic, orientation_double_cover, CellTag, FaceClass,
    GluedComplex, Rule, Sheet,
};
pub use k6::{default_k6, pair_union_cycles, parse_k6, EdgeLabeledK6, LABELS, NODES};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("invalid K6 labeling: {0}")]
    InvalidK6(String),
    #[error("pair union needs two distinct labels, got {0} twice")]
    SameLabel(u8),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("rule {0} is malformed: {1}")]
    BadRule(usize, String),
    #[error("facet {facet} of cell {cell} is glued more than once")]
    DoubleGlued { cell: usize, facet: String },
    #[error("complex is not closed: {0} facet sides are unglued")]
    NotClosed(usize),
    #[error("surface orbit is not closed: edge class {edge} lies in {triangles} triangles")]
    NonClosedSurface { edge: String, triangles: usize },
    #[error("vertex link at {vertex} fails: {reason}")]
    LinkFailure { vertex: String, reason: String },
}
