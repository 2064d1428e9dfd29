//! Cover decomposition and polychromatic colouring of hypergraphs.
//!
//! A cover decomposition partitions the edge multiset into disjoint set
//! covers; a polychromatic colouring gives every edge all colours. The two are
//! dual under transposition. The crate provides exact oracles for small
//! instances and constructive algorithms for bounded edge size, paths in
//! trees, cross-free and laminar families, and graph sensor scheduling.

pub mod error;
pub mod generators;
pub mod hypergraph;
pub mod lll;
pub mod lp;
pub mod oracle;
pub mod scalar;
pub mod sensor;
pub mod split;
pub mod treepaths;
pub mod vc;

pub use error::{Error, Result};
pub use hypergraph::{
    dual, parse_hypergraph, shrink_to_degree, verify_cover_decomposition, verify_polychromatic,
    write_hypergraph, CoverDecomposition, Hypergraph, Summary, VertexColouring,
};
pub use scalar::Scalar;

/// Exact rational scalar used wherever tightness decisions matter.
pub type Rational = num_rational::BigRational;
pub type RationalLp = lp::LinearProgram<Rational>;
pub type RationalExtremePoint = lp::ExtremePoint<Rational>;
pub type RationalSchedule = sensor::Schedule<Rational>;
pub type FloatLp = lp::LinearProgram<f64>;
pub type FloatExtremePoint = lp::ExtremePoint<f64>;
pub type FloatSchedule = sensor::Schedule<f64>;
