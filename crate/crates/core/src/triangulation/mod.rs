//! Pulling triangulations of polytopal complexes and the simplicial
//! complexes they produce.

mod checks;
mod complex;
mod pulling;

pub use checks::{
    first_non_unimodular, is_compressed_ordering, is_unimodular_triangulation,
    join_decomposition_check, normalized_volume, JoinDecomposition,
};
pub use complex::{simplicial_join, SimplicialComplex};
pub use pulling::{
    pulling_triangulation, pulling_triangulation_by_flags, PolytopalComplex, VertexOrder,
};
