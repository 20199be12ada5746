//! Conditional graph patterns (CGPs): quantified graph patterns extended with
//! positive and negative graph-shaped predicates attached to core nodes.
//!
//! The crate provides:
//!
//! - domain types for data graphs and patterns ([`model`]),
//! - attribute-constraint satisfaction and implication ([`constraints`]),
//! - simulation-based matching engines ([`simulation`]),
//! - pattern-only matching between two patterns ([`pom`]),
//! - traditional and strong containment checking ([`containment`], [`strongc`]),
//! - match extraction from another pattern's match result ([`scmatch`]),
//! - generators and brute-force oracles backing the test suites ([`testkit`]).
//!
//! All values are immutable after construction and all operations are pure
//! functions, so everything here is safe to share across threads.

pub mod constraints;
pub mod containment;
pub mod model;
pub mod pom;
pub mod relation;
pub mod scmatch;
pub mod simulation;
pub mod strongc;
pub mod testkit;

pub use constraints::{Atom, AttributeAssignment, CmpOp, ConstraintConjunction, Value};
pub use containment::{candidates, equivalent_cgp, focus_equivalent, t_contained, Candidates, ContainmentMapping};
pub use model::{Cgp, DataGraph, EdgeKey, FocusedQgp, PatternNode, Qgp, SizeBreakdown, Violation};
pub use pom::{pom, pom_seeded, PatternMatchRelation};
pub use relation::Relation;
pub use scmatch::{build_view_graph, sc_match, ScMatchError, ViewGraph};
pub use simulation::{cond_sim, graph_sim, qgp_eval, qgp_sim, MatchRelation, MatchResult, NodePayload, SimulationError};
pub use strongc::{edge_matches, extract_rels, s_contained, EvaluabilityReport, PredicateStatus, RefElimRelations, SContainment, SubPredicate};
