//! Text formats and command implementations for the `cgp` binary.

pub mod dsl;
pub mod format;

pub use dsl::{parse_graph, parse_match_result, parse_pattern, ParseError};
pub use format::{serialize_graph, serialize_match_result, serialize_pattern};
