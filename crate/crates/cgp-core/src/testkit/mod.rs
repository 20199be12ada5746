//! Instance generation, brute-force oracles, and determinism harnesses
//! backing the property suites. Everything is deterministic under a fixed
//! seed.

pub mod brute;
pub mod fixtures;
pub mod gen;

pub use brute::{
    brute_cond_sim, brute_graph_sim, brute_pom, brute_qgp_sim, brute_rels, OracleError,
};
pub use gen::{
    add_noise, derived_variant, gen_cgp, gen_graph, materialize, relabel_cgp, relabel_graph,
    s_positive_variant, scaling_pair, GenParams,
};
