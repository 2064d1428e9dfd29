use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("edge {edge}: vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange {
        edge: usize,
        vertex: usize,
        n: usize,
    },

    #[error("edge {edge}: vertex {vertex} appears twice")]
    DuplicateVertex { edge: usize, vertex: usize },

    #[error("expected {expected} records, found {found}")]
    CountMismatch { expected: usize, found: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("vertex {vertex} has degree {degree}, below the required {required}")]
    DegreeTooLow {
        vertex: usize,
        degree: usize,
        required: usize,
    },

    #[error("vertex {0} lies in no edge")]
    IsolatedVertex(usize),

    #[error("hypergraph is not regular (min degree {min}, max degree {max})")]
    NotRegular { min: usize, max: usize },

    #[error("{what} has size {size}, above the exhaustive-search cap {cap}")]
    SearchCapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("instance too large: {0}")]
    SizeOverflow(String),

    #[error("resampling cap of {cap} steps exceeded")]
    ResampleCapExceeded { cap: usize },

    #[error("{colours} colours requested but the minimum degree is only {min_degree}")]
    TooManyColours { colours: usize, min_degree: usize },

    #[error("infeasible linear program{}", .constraint.as_ref().map(|c| format!(" (violated: {c})")).unwrap_or_default())]
    Infeasible { constraint: Option<String> },

    #[error("iteration {iteration}: no tight constraint with at most {threshold} fractional variables ({fractional} fractional variables remain)")]
    StructureViolation {
        iteration: usize,
        threshold: usize,
        fractional: usize,
    },

    #[error("guarantee violated: {0}")]
    GuaranteeViolated(String),

    #[error("max flow {value} is below the required {required}; cut has {} vertices and {} edges on the source side", .cut_vertices.len(), .cut_edges.len())]
    FlowInfeasible {
        value: u64,
        required: u64,
        cut_vertices: Vec<usize>,
        cut_edges: Vec<usize>,
    },

    #[error("at recursion node {path}: {source}")]
    Recursion { path: String, source: Box<Error> },

    #[error("path {path} has {len} edges, fewer than the required {required}")]
    ShortPath {
        path: usize,
        len: usize,
        required: usize,
    },

    #[error("rejection sampling gave up after {0} attempts")]
    RejectionSampling(usize),

    #[error("every set of size {lower_bound} is searched and one is shattered; raise the cap")]
    VcCapExceeded { lower_bound: usize },

    #[error("no set cover exists: vertex {vertex} lies in no edge")]
    NoCover { vertex: usize },

    #[error("internal invariant failed: {0}")]
    Internal(String),
}

impl Error {
    /// Errors caused by malformed input or arguments, as opposed to an algorithm
    /// giving up or detecting a broken invariant.
    pub fn is_input_error(&self) -> bool {
        match self {
            Error::Parse { .. }
            | Error::VertexOutOfRange { .. }
            | Error::DuplicateVertex { .. }
            | Error::CountMismatch { .. }
            | Error::InvalidParameter(_)
            | Error::Precondition(_)
            | Error::DegreeTooLow { .. }
            | Error::IsolatedVertex(_)
            | Error::NotRegular { .. }
            | Error::SearchCapExceeded { .. }
            | Error::SizeOverflow(_)
            | Error::TooManyColours { .. }
            | Error::ShortPath { .. }
            | Error::NoCover { .. } => true,
            Error::Recursion { source, .. } => source.is_input_error(),
            _ => false,
        }
    }
}
