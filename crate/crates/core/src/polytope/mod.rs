//! Integer polytopes given by matching vertex and facet descriptions.
//!
//! The library never computes convex hulls: builders (or polytope files)
//! supply both representations, and [`validate_polytope`] checks that they
//! agree well enough for the combinatorial machinery downstream.

mod faces;
mod io;
mod lattice;
mod quotient;
mod special;
mod vertex_set;

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

pub use faces::{faces_of, Face, FaceId, FaceLattice};
pub use io::{read_polytope, write_polytope};
pub use lattice::{is_unimodular_simplex, saturated_lattice_basis, LatticeBasis};
pub use quotient::{quotient_polytope, QuotientPolytope};
pub use special::{
    codimension_containment_violations, find_special_simplex, verify_special_simplex,
    SpecialSearch, SpecialSimplexCertificate,
};
pub use vertex_set::VertexSet;

use crate::error::{Error, Result};
use crate::exact_math::linalg::rank_i64;

/// `normal . x <= offset`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Inequality {
    pub normal: Vec<i64>,
    pub offset: i64,
}

/// `normal . x == offset`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Equality {
    pub normal: Vec<i64>,
    pub offset: i64,
}

fn dot(a: &[i64], x: &[i64]) -> i128 {
    a.iter().zip(x).map(|(&a, &x)| a as i128 * x as i128).sum()
}

impl Inequality {
    pub fn slack(&self, x: &[i64]) -> i128 {
        self.offset as i128 - dot(&self.normal, x)
    }
}

impl Equality {
    pub fn residual(&self, x: &[i64]) -> i128 {
        dot(&self.normal, x) - self.offset as i128
    }
}

/// Unvalidated polytope data, exactly as read from a file or built.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeData {
    pub ambient_dim: usize,
    pub vertices: Vec<Vec<i64>>,
    #[serde(default)]
    pub facets: Vec<Inequality>,
    #[serde(default)]
    pub equalities: Vec<Equality>,
}

/// Summary of a successful validation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub dim: usize,
    pub vertex_count: usize,
    pub facet_count: usize,
}

/// Affine rank of a set of integer points (`-1` is not representable, so the
/// empty set reports 0).
pub(crate) fn affine_rank<'a, I>(points: I) -> usize
where
    I: IntoIterator<Item = &'a Vec<i64>>,
{
    let mut it = points.into_iter();
    let Some(first) = it.next() else { return 0 };
    let diffs: Vec<Vec<i64>> = it
        .map(|p| p.iter().zip(first).map(|(a, b)| a - b).collect())
        .collect();
    rank_i64(&diffs)
}

fn tight_set(ineq: &Inequality, vertices: &[Vec<i64>]) -> VertexSet {
    vertices
        .iter()
        .enumerate()
        .filter(|(_, v)| ineq.slack(v) == 0)
        .map(|(i, _)| i)
        .collect()
}

/// Checks every structural invariant of the paired representations and
/// reports the first violation with the offending indices.
pub fn validate_polytope(data: &PolytopeData) -> Result<ValidationReport> {
    let q = data.ambient_dim;
    let bad = |msg: String| Err(Error::InvalidPolytope(msg));
    if q == 0 {
        return bad("ambient dimension must be positive".into());
    }
    if data.vertices.is_empty() {
        return bad("polytope has no vertices".into());
    }
    for (i, v) in data.vertices.iter().enumerate() {
        if v.len() != q {
            return bad(format!(
                "vertex {i} has {} coordinates, expected {q}",
                v.len()
            ));
        }
    }
    for (i, f) in data.facets.iter().enumerate() {
        if f.normal.len() != q {
            return bad(format!(
                "facet {i} normal has length {}, expected {q}",
                f.normal.len()
            ));
        }
    }
    for (i, e) in data.equalities.iter().enumerate() {
        if e.normal.len() != q {
            return bad(format!(
                "equality {i} normal has length {}, expected {q}",
                e.normal.len()
            ));
        }
    }
    let mut seen = HashSet::new();
    for (i, v) in data.vertices.iter().enumerate() {
        if !seen.insert(v) {
            return bad(format!("vertex {i} is a duplicate"));
        }
    }
    for (i, v) in data.vertices.iter().enumerate() {
        if let Some(j) = data.equalities.iter().position(|e| e.residual(v) != 0) {
            return bad(format!("vertex {i} violates equality {j}"));
        }
        if let Some(j) = data.facets.iter().position(|f| f.slack(v) < 0) {
            return bad(format!("vertex {i} violates facet inequality {j}"));
        }
    }

    let m = affine_rank(&data.vertices);
    let eq_rank = rank_i64(
        &data
            .equalities
            .iter()
            .map(|e| e.normal.clone())
            .collect::<Vec<_>>(),
    );
    if m + eq_rank != q {
        return bad(format!(
            "affine hull mismatch: vertices span dimension {m} but equalities leave {}",
            q - eq_rank
        ));
    }

    let n = data.vertices.len();
    let tight: Vec<VertexSet> = data
        .facets
        .iter()
        .map(|f| tight_set(f, &data.vertices))
        .collect();
    let mut seen_tight = HashSet::new();
    for (i, t) in tight.iter().enumerate() {
        if t.len() == n {
            return bad(format!("facet {i} is tight on every vertex"));
        }
        let pts: Vec<&Vec<i64>> = t.iter().map(|v| &data.vertices[v]).collect();
        if t.is_empty() || affine_rank(pts) + 1 != m {
            return bad(format!(
                "facet {i} is not a facet: its tight vertices do not span dimension {}",
                m.saturating_sub(1)
            ));
        }
        if !seen_tight.insert(t.clone()) {
            return bad(format!(
                "facet {i} duplicates the tight set of an earlier facet"
            ));
        }
    }

    // Each vertex must be cut out by the facets through it.
    if m > 0 {
        for v in 0..n {
            let mut meet = VertexSet::full(n);
            for t in tight.iter().filter(|t| t.contains(v)) {
                meet = meet.intersection(t);
            }
            if meet.len() != 1 {
                return bad(format!(
                    "vertex {v} is not cut out by its facets (they meet in {} vertices): facet list incomplete",
                    meet.len()
                ));
            }
        }
    }

    Ok(ValidationReport {
        dim: m,
        vertex_count: n,
        facet_count: data.facets.len(),
    })
}

/// Validated integer polytope with cached dimension and vertex-facet
/// incidence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerPolytope {
    data: PolytopeData,
    dim: usize,
    incidence: Vec<VertexSet>,
}

impl IntegerPolytope {
    pub fn new(data: PolytopeData) -> Result<Self> {
        let report = validate_polytope(&data)?;
        let incidence = data
            .facets
            .iter()
            .map(|f| tight_set(f, &data.vertices))
            .collect();
        Ok(IntegerPolytope {
            data,
            dim: report.dim,
            incidence,
        })
    }

    /// Builds a polytope from its vertices, a list of valid inequalities that
    /// contains every facet, and the equalities of the affine hull. Candidates
    /// that are not facets (wrong tight-set rank, or duplicating an earlier
    /// facet's tight set) are dropped.
    pub fn from_candidates(
        ambient_dim: usize,
        vertices: Vec<Vec<i64>>,
        candidates: Vec<Inequality>,
        equalities: Vec<Equality>,
    ) -> Result<Self> {
        let m = affine_rank(&vertices);
        let n = vertices.len();
        let mut seen = HashSet::new();
        let mut facets = Vec::new();
        for c in candidates {
            if vertices.iter().any(|v| c.slack(v) < 0) {
                return Err(Error::InvalidPolytope(
                    "candidate inequality cuts off a vertex".into(),
                ));
            }
            let t = tight_set(&c, &vertices);
            if t.is_empty() || t.len() == n {
                continue;
            }
            let pts: Vec<&Vec<i64>> = t.iter().map(|v| &vertices[v]).collect();
            if affine_rank(pts) + 1 != m {
                continue;
            }
            if seen.insert(t) {
                facets.push(c);
            }
        }
        Self::new(PolytopeData {
            ambient_dim,
            vertices,
            facets,
            equalities,
        })
    }

    pub fn data(&self) -> &PolytopeData {
        &self.data
    }

    pub fn ambient_dim(&self) -> usize {
        self.data.ambient_dim
    }

    /// Dimension `m` of the polytope.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<i64>] {
        &self.data.vertices
    }

    pub fn vertex(&self, i: usize) -> &[i64] {
        &self.data.vertices[i]
    }

    pub fn num_vertices(&self) -> usize {
        self.data.vertices.len()
    }

    pub fn facets(&self) -> &[Inequality] {
        &self.data.facets
    }

    pub fn num_facets(&self) -> usize {
        self.data.facets.len()
    }

    pub fn equalities(&self) -> &[Equality] {
        &self.data.equalities
    }

    /// Vertices lying on facet `f`.
    pub fn facet_vertices(&self, f: usize) -> &VertexSet {
        &self.incidence[f]
    }

    pub fn incidence(&self) -> &[VertexSet] {
        &self.incidence
    }

    pub fn on_facet(&self, v: usize, f: usize) -> bool {
        self.incidence[f].contains(v)
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet::full(self.num_vertices())
    }

    /// Index of the vertex with these coordinates.
    pub fn vertex_index(&self, point: &[i64]) -> Option<usize> {
        self.data.vertices.iter().position(|v| v == point)
    }
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn square_is_valid() {
        let r = validate_polytope(&unit_square_data()).unwrap();
        assert_eq!(r.dim, 2);
        assert_eq!(r.vertex_count, 4);
        assert_eq!(r.facet_count, 4);
    }

    #[test]
    fn square_missing_a_facet_is_invalid() {
        let mut d = unit_square_data();
        d.facets.remove(0);
        let err = validate_polytope(&d).unwrap_err();
        assert!(matches!(err, Error::InvalidPolytope(_)), "{err}");
    }

    #[test]
    fn duplicate_facets_and_violations_are_reported() {
        let mut d = unit_square_data();
        d.facets.push(ineq(&[-2, 0], 0));
        let err = validate_polytope(&d).unwrap_err().to_string();
        assert!(err.contains("facet 4"), "{err}");

        let mut d = unit_square_data();
        d.vertices.push(vec![2, 2]);
        let err = validate_polytope(&d).unwrap_err().to_string();
        assert!(err.contains("vertex 4"), "{err}");

        let mut d = unit_square_data();
        d.ambient_dim = 3;
        for v in &mut d.vertices {
            v.push(0);
        }
        for f in &mut d.facets {
            f.normal.push(0);
        }
        let err = validate_polytope(&d).unwrap_err().to_string();
        assert!(err.contains("affine hull"), "{err}");
    }

    #[test]
    fn point_polytope_is_valid() {
        let p = point();
        assert_eq!(p.dim(), 0);
        assert_eq!(p.num_facets(), 0);
    }

    #[test]
    fn candidates_are_pruned_to_facets() {
        // segment from (0,0) to (1,0) inside y = 0; x >= 0 and x <= 1 are facets,
        // the redundant x <= 5 never is tight, -x-y <= 0 duplicates x >= 0.
        let p = IntegerPolytope::from_candidates(
            2,
            vec![vec![0, 0], vec![1, 0]],
            vec![
                ineq(&[-1, 0], 0),
                ineq(&[1, 0], 5),
                ineq(&[-1, -1], 0),
                ineq(&[1, 0], 1),
            ],
            vec![Equality {
                normal: vec![0, 1],
                offset: 0,
            }],
        )
        .unwrap();
        assert_eq!(p.num_facets(), 2);
        assert_eq!(p.dim(), 1);
    }

    #[test]
    fn fixtures_validate() {
        assert_eq!(triangle().dim(), 2);
        assert_eq!(pentagon().dim(), 2);
        assert_eq!(prism().dim(), 3);
        assert_eq!(rectangle(2, 1).dim(), 2);
    }
}
