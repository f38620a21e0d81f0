use alloc::vec::Vec;

/// Errors raised by the core library.
///
/// Vertex indices carried in variants are 0-based; front ends translate them
/// to the 1-based labels users see.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("uniformity must be at least 2, got {0}")]
    InvalidUniformity(usize),

    #[error("a hypergraph needs at least one vertex")]
    NoVertices,

    #[error("edge {edge} has {found} vertices, expected {expected}")]
    EdgeArity {
        edge: usize,
        expected: usize,
        found: usize,
    },

    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("vertex {vertex} repeated inside one edge")]
    RepeatedVertex { vertex: usize },

    #[error("duplicate edge {edge:?}")]
    DuplicateEdge { edge: Vec<usize> },

    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),

    #[error("dimension mismatch: expected length {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error(
        "instance too large: n={n}, m={m}, d={d} needs about {predicted:.3e} selections (limit {limit:.3e})"
    )]
    InstanceTooLarge {
        n: usize,
        m: usize,
        d: usize,
        predicted: f64,
        limit: f64,
    },

    #[error("instance too large for full spectrum (k={k}, limit {limit}); use ee_trace_series")]
    SpectrumTooLarge { k: u128, limit: usize },

    #[error("eigenvalue count n(m-1)^(n-1) overflows for n={n}, m={m}")]
    EigenvalueCountOverflow { n: usize, m: usize },

    #[error("need traces up to order {need}, have {have}")]
    InsufficientTraces { have: usize, need: usize },

    #[error("root iteration did not converge for degree {degree} (residual {residual:.3e})")]
    RootsDidNotConverge { degree: usize, residual: f64 },

    #[error("imaginary residue {imag:.3e} too large for value {value:.6e}")]
    ImaginaryResidue { imag: f64, value: f64 },

    #[error("spectrum is not {m}-symmetric")]
    NotSymmetric { m: usize },

    #[error("multiplicities inconsistent: n0 + m * sum(reps) = {found}, expected k = {k}")]
    InconsistentMultiplicities { found: u128, k: u128 },
}

pub type Result<T> = core::result::Result<T, Error>;
