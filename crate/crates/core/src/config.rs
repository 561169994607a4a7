use std::num::NonZeroUsize;

/// Resource limits shared by the enumeration-heavy operations.
///
/// Exceeding any of these is reported as [`crate::Error::Budget`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budgets {
    /// Largest dilation factor `r` accepted by the lattice-point counter.
    pub max_dilate: u64,
    /// Search-node cap for backtracking enumerations.
    pub max_nodes: u64,
    /// Cap on the number of faces in a face lattice.
    pub max_faces: usize,
    /// Cap on the number of enumerated linear extensions.
    pub max_linear_extensions: usize,
    /// Largest `min(rows, cols)` for the brute-force total-unimodularity test.
    pub max_tu_size: usize,
    /// Largest special-simplex size tried by the exhaustive search.
    pub max_special_size: usize,
    /// Largest vertex count for the exhaustive special-simplex search.
    pub max_special_vertices: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            max_dilate: 64,
            max_nodes: 2_000_000_000,
            max_faces: 1_000_000,
            max_linear_extensions: 1_000_000,
            max_tu_size: 8,
            max_special_size: 12,
            max_special_vertices: 64,
        }
    }
}

/// Name of the environment variable capping worker threads.
pub const THREADS_ENV: &str = "EHRHART_FORGE_THREADS";

/// Worker count for parallel enumeration: `EHRHART_FORGE_THREADS` if set to
/// a positive integer, otherwise the available parallelism.
pub fn worker_threads() -> usize {
    let available = std::thread::available_parallelism()
        .map(NonZeroUsize::get)
        .unwrap_or(1);
    match std::env::var(THREADS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => n,
            _ => available,
        },
        Err(_) => available,
    }
}
