//! Builders for the polytope families: Birkhoff polytopes, order polytopes
//! and the equatorial complex of a graded poset, and perfect-matching
//! polytopes of regular bipartite graphs.

mod birkhoff;
mod graph;
mod monoid;
mod order;
mod poset;

pub use birkhoff::{birkhoff, birkhoff_cyclic_simplex, Birkhoff, MAX_BIRKHOFF_N};
pub use graph::{matching_polytope, MatchingPolytope, MultiGraph};
pub use monoid::{monoid_generation_check, ones_grading_of_graph, ones_minimal_element};
pub use order::{
    equatorial_complex, ideals_of_extended, order_polytope, rank_ideal_simplex, EquatorialComplex,
    OrderPolytope,
};
pub use poset::{descents, eulerian_polynomial, linear_extensions, Poset};
