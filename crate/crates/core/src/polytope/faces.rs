use std::collections::HashMap;

use super::{affine_rank, IntegerPolytope, VertexSet};
use crate::error::{Error, Result};

pub type FaceId = usize;

/// A nonempty face, identified by its vertex set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub vertices: VertexSet,
    pub dim: usize,
    /// Facets of the polytope containing this face.
    pub containing_facets: VertexSet,
}

/// All nonempty faces of a polytope, sorted by dimension and then by vertex
/// set, with the facets of each face.
#[derive(Clone, Debug)]
pub struct FaceLattice {
    faces: Vec<Face>,
    index: HashMap<VertexSet, FaceId>,
    facets_of: Vec<Vec<FaceId>>,
    cofacets_of: Vec<Vec<FaceId>>,
}

impl FaceLattice {
    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn face(&self, id: FaceId) -> &Face {
        &self.faces[id]
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    /// The polytope itself.
    pub fn top(&self) -> FaceId {
        self.faces.len() - 1
    }

    pub fn find(&self, vertices: &VertexSet) -> Option<FaceId> {
        self.index.get(vertices).copied()
    }

    /// Facets (codimension-one faces) of face `id`.
    pub fn facets_of(&self, id: FaceId) -> &[FaceId] {
        &self.facets_of[id]
    }

    /// Faces having face `id` as a facet.
    pub fn cofacets_of(&self, id: FaceId) -> &[FaceId] {
        &self.cofacets_of[id]
    }

    pub fn faces_of_dim(&self, d: usize) -> impl Iterator<Item = FaceId> + '_ {
        (0..self.faces.len()).filter(move |&i| self.faces[i].dim == d)
    }

    /// Number of faces of each dimension `0..=dim P`.
    pub fn f_vector(&self) -> Vec<usize> {
        let top = self.faces[self.top()].dim;
        let mut f = vec![0; top + 1];
        for face in &self.faces {
            f[face.dim] += 1;
        }
        f
    }
}

/// Computes the face lattice as the closure of the facet tight sets under
/// intersection. Fails with a budget error past `max_faces`, and with an
/// invalid-polytope error if the boundary violates Euler's relation (which
/// happens when the facet list is incomplete).
pub fn faces_of(p: &IntegerPolytope, max_faces: usize) -> Result<FaceLattice> {
    let n = p.num_vertices();
    let all = p.all_vertices();
    let mut found: HashMap<VertexSet, VertexSet> = HashMap::new();
    found.insert(all.clone(), VertexSet::new());
    let mut frontier: Vec<VertexSet> = Vec::new();
    for (f, t) in p.incidence().iter().enumerate() {
        found.entry(t.clone()).or_default().insert(f);
        frontier.push(t.clone());
    }
    frontier.sort();
    frontier.dedup();
    let over = || Error::Budget {
        what: "face lattice size",
        limit: max_faces as u64,
    };
    if found.len() > max_faces {
        return Err(over());
    }
    while let Some(face) = frontier.pop() {
        for t in p.incidence() {
            let meet = face.intersection(t);
            if meet.is_empty() || found.contains_key(&meet) {
                continue;
            }
            let containing: VertexSet = p
                .incidence()
                .iter()
                .enumerate()
                .filter(|(_, t)| meet.is_subset(t))
                .map(|(f, _)| f)
                .collect();
            found.insert(meet.clone(), containing);
            if found.len() > max_faces {
                return Err(over());
            }
            frontier.push(meet);
        }
    }

    let mut faces: Vec<Face> = found
        .into_iter()
        .map(|(vertices, containing_facets)| {
            let dim = affine_rank(vertices.iter().map(|v| &p.vertices()[v]));
            Face {
                vertices,
                dim,
                containing_facets,
            }
        })
        .collect();
    faces.sort_by(|a, b| (a.dim, &a.vertices).cmp(&(b.dim, &b.vertices)));
    debug_assert_eq!(faces.last().map(|f| f.vertices.len()), Some(n));
    let index: HashMap<VertexSet, FaceId> = faces
        .iter()
        .enumerate()
        .map(|(i, f)| (f.vertices.clone(), i))
        .collect();

    let mut facets_of = vec![Vec::new(); faces.len()];
    for (id, face) in faces.iter().enumerate() {
        if face.dim == 0 {
            continue;
        }
        let mut subs: Vec<FaceId> = p
            .incidence()
            .iter()
            .filter(|t| !face.vertices.is_subset(t))
            .filter_map(|t| index.get(&face.vertices.intersection(t)).copied())
            .filter(|&g| faces[g].dim + 1 == face.dim)
            .collect();
        subs.sort_unstable();
        subs.dedup();
        facets_of[id] = subs;
    }

    let m = p.dim() as i64;
    let euler: i64 = faces[..faces.len() - 1]
        .iter()
        .map(|f| if f.dim % 2 == 0 { 1 } else { -1 })
        .sum();
    let expected = 1 - if m % 2 == 0 { 1 } else { -1 };
    if euler != expected {
        return Err(Error::InvalidPolytope(format!(
            "boundary Euler characteristic {euler} differs from {expected}: facet list incomplete"
        )));
    }
    for (i, face) in faces.iter().enumerate() {
        if face.dim == 0 && face.vertices.len() != 1 {
            return Err(Error::InvalidPolytope(format!(
                "face {i} is a point carrying {} vertices",
                face.vertices.len()
            )));
        }
    }

    let mut cofacets_of = vec![Vec::new(); faces.len()];
    for (id, subs) in facets_of.iter().enumerate() {
        for &g in subs {
            cofacets_of[g].push(id);
        }
    }

    Ok(FaceLattice {
        faces,
        index,
        facets_of,
        cofacets_of,
    })
}

impl FaceLattice {
    /// Face consisting of the single vertex `v`.
    pub fn vertex_face(&self, v: usize) -> FaceId {
        self.find(&VertexSet::singleton(v))
            .expect("every vertex is a face of a validated polytope")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::fixtures::*;

    #[test]
    fn square_lattice() {
        let l = faces_of(&unit_square(), 100).unwrap();
        assert_eq!(l.f_vector(), vec![4, 4, 1]);
        assert_eq!(l.facets_of(l.top()).len(), 4);
        for e in l.faces_of_dim(1) {
            assert_eq!(l.facets_of(e).len(), 2);
        }
    }

    #[test]
    fn prism_lattice() {
        let l = faces_of(&prism(), 1000).unwrap();
        assert_eq!(l.f_vector(), vec![6, 9, 5, 1]);
        let top = l.top();
        let quads = l
            .facets_of(top)
            .iter()
            .filter(|&&f| l.face(f).vertices.len() == 4)
            .count();
        assert_eq!(quads, 3);
        for f in l.facets_of(top) {
            let face = l.face(*f);
            assert_eq!(l.facets_of(*f).len(), face.vertices.len());
        }
    }

    #[test]
    fn point_and_budget() {
        let l = faces_of(&point(), 10).unwrap();
        assert_eq!(l.f_vector(), vec![1]);
        let err = faces_of(&prism(), 5).unwrap_err();
        assert!(matches!(err, Error::Budget { .. }));
    }
}
