//! Bipartite matching engines: maximum-cardinality matching with capacitated
//! right nodes, and maximum-weight assignment over any ordered additive
//! weight.

mod assignment;
mod bipartite;

pub use assignment::{
    solve_assignment, Assignment, AssignmentWeight, LexWeight, WeightedAssignment,
};
pub use bipartite::{max_cardinality_matching, BipartiteGraph, CardinalityMatching};
