#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod error;
pub mod estrada;
pub mod exact;
pub mod hypergraph;
pub mod poly;
pub mod spectrum;
pub mod tensor;
pub mod trace;

pub use error::{Error, Result};
pub use estrada::{
    bounds_basic, bounds_refined, ee_from_spectrum, ee_hyperstar, ee_hyperstar_m3, ee_hyperstar_m4,
    ee_symmetric, ee_symmetric_m3, ee_symmetric_m4, ee_trace_series, estrada_index, BoundsReport,
    EstradaMethod, EstradaOptions, EstradaResult, MethodChoice,
};
pub use hypergraph::{
    gen_empty, gen_hyperpath, gen_hyperstar, UniformHypergraph, VertexDegreeProfile,
};
pub use poly::{charpoly_from_traces, roots, CharPoly, Root, RootConfig};
pub use spectrum::{
    hyperstar_spectrum, is_m_symmetric, spectrum, spectrum_newton, symmetric_representatives,
    Provenance, Spectrum, SpectrumBudget, SpectrumEntry,
};
pub use tensor::{AdjacencyTensor, PowerIterationConfig, RadiusMethod, SpectralRadiusEstimate};
pub use trace::{
    trace_d, trace_sequence, vertex_trace_term, TraceBudget, TraceEngine, TraceSequence,
    VertexTraceTerm,
};
