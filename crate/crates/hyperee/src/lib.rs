//! File formats, serializable reports and the command-line front end for
//! [`hyperee_core`].

pub mod cli;
pub mod format;
pub mod report;
pub mod table1;

pub use format::{
    parse_hypergraph, read_hypergraph, serialize_hypergraph, ParseError, ParseErrorKind, ReadError,
};
