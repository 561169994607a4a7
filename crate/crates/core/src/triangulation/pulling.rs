use std::collections::HashMap;

use super::SimplicialComplex;
use crate::error::{Error, Result};
use crate::polytope::{FaceId, FaceLattice, VertexSet};

/// Linear order on the vertices, stored as the sequence `(v_p, ..., v_1)`:
/// the last entry of the sequence is pulled first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexOrder {
    sequence: Vec<usize>,
    // rank[v] = position of v in the sequence
    rank: Vec<usize>,
}

impl VertexOrder {
    pub fn new(sequence: Vec<usize>) -> Result<Self> {
        let n = sequence.len();
        let mut rank = vec![usize::MAX; n];
        for (pos, &v) in sequence.iter().enumerate() {
            if v >= n || rank[v] != usize::MAX {
                return Err(Error::input(format!(
                    "vertex order is not a permutation of 0..{n} (entry {v})"
                )));
            }
            rank[v] = pos;
        }
        Ok(VertexOrder { sequence, rank })
    }

    /// `0, 1, ..., n-1`: vertex `n - 1` is pulled first.
    pub fn identity(n: usize) -> Self {
        Self::new((0..n).collect()).expect("identity is a permutation")
    }

    /// Moves `tail` to the end of `base`, in the given order, so that the
    /// last entry of `tail` is pulled first.
    pub fn with_tail(base: &[usize], tail: &[usize]) -> Result<Self> {
        let tail_set: VertexSet = tail.iter().collect();
        let mut seq: Vec<usize> = base
            .iter()
            .copied()
            .filter(|v| !tail_set.contains(*v))
            .collect();
        seq.extend_from_slice(tail);
        Self::new(seq)
    }

    pub fn sequence(&self) -> &[usize] {
        &self.sequence
    }

    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }

    pub fn rank(&self, v: usize) -> usize {
        self.rank[v]
    }

    /// Vertex of `set` that this order pulls first.
    pub fn last_in(&self, set: &VertexSet) -> Option<usize> {
        set.iter().max_by_key(|&v| self.rank[v])
    }

    /// The final `k` entries of the sequence.
    pub fn tail(&self, k: usize) -> &[usize] {
        &self.sequence[self.sequence.len() - k..]
    }
}

/// Subcomplex of the face lattice of a polytope, given by its maximal faces.
#[derive(Clone, Debug)]
pub struct PolytopalComplex<'a> {
    lattice: &'a FaceLattice,
    members: Vec<bool>,
    maximal: Vec<FaceId>,
}

impl<'a> PolytopalComplex<'a> {
    /// All faces of the polytope, `F(P)`.
    pub fn of_polytope(lattice: &'a FaceLattice) -> Self {
        Self::from_members(lattice, vec![true; lattice.len()])
    }

    /// Proper faces of the polytope, `F(∂P)`.
    pub fn boundary(lattice: &'a FaceLattice) -> Self {
        let mut members = vec![true; lattice.len()];
        members[lattice.top()] = false;
        Self::from_members(lattice, members)
    }

    fn from_members(lattice: &'a FaceLattice, members: Vec<bool>) -> Self {
        // member sets are closed under taking faces, so a member is maximal
        // iff none of the faces directly above it is a member
        let maximal = (0..lattice.len())
            .filter(|&i| members[i] && !lattice.cofacets_of(i).iter().any(|&j| members[j]))
            .collect();
        PolytopalComplex {
            lattice,
            members,
            maximal,
        }
    }

    /// Faces containing no vertex of `sigma`.
    pub fn restrict(&self, sigma: &VertexSet) -> Self {
        let members = (0..self.lattice.len())
            .map(|i| self.members[i] && self.lattice.face(i).vertices.is_disjoint(sigma))
            .collect();
        Self::from_members(self.lattice, members)
    }

    pub fn lattice(&self) -> &'a FaceLattice {
        self.lattice
    }

    pub fn contains(&self, id: FaceId) -> bool {
        self.members[id]
    }

    pub fn faces(&self) -> impl Iterator<Item = FaceId> + '_ {
        (0..self.lattice.len()).filter(|&i| self.members[i])
    }

    pub fn maximal_faces(&self) -> &[FaceId] {
        &self.maximal
    }

    pub fn is_empty(&self) -> bool {
        self.maximal.is_empty()
    }

    /// Dimension; `-1` when empty.
    pub fn dim(&self) -> isize {
        self.maximal
            .iter()
            .map(|&i| self.lattice.face(i).dim as isize)
            .max()
            .unwrap_or(-1)
    }

    pub fn is_pure(&self) -> bool {
        let d = self.dim();
        self.maximal
            .iter()
            .all(|&i| self.lattice.face(i).dim as isize == d)
    }

    pub fn vertices(&self) -> VertexSet {
        self.maximal.iter().fold(VertexSet::new(), |acc, &i| {
            acc.union(&self.lattice.face(i).vertices)
        })
    }
}

/// Pulling (reverse lexicographic) triangulation.
///
/// Each face `F` is triangulated by coning its pulled-first vertex `v` over
/// the triangulations of the facets of `F` not containing `v`; the complex
/// is the union over its maximal faces. This equals the recursion
/// `Δ(F) = Δ(F \ v) ∪ cones from v`, whose first part is covered by the
/// cones of the faces through `v`.
///
/// Panics if `order` does not rank every vertex of the complex.
pub fn pulling_triangulation(complex: &PolytopalComplex, order: &VertexOrder) -> SimplicialComplex {
    let mut memo: HashMap<FaceId, Vec<VertexSet>> = HashMap::new();
    let mut faces = Vec::new();
    for &m in complex.maximal_faces() {
        faces.extend(
            triangulate_face(complex.lattice(), order, m, &mut memo)
                .iter()
                .cloned(),
        );
    }
    SimplicialComplex::new(faces)
}

fn triangulate_face<'m>(
    lattice: &FaceLattice,
    order: &VertexOrder,
    id: FaceId,
    memo: &'m mut HashMap<FaceId, Vec<VertexSet>>,
) -> &'m [VertexSet] {
    if !memo.contains_key(&id) {
        let face = lattice.face(id);
        let simplices = if face.vertices.len() == face.dim + 1 {
            vec![face.vertices.clone()]
        } else {
            let v = order.last_in(&face.vertices).expect("faces are nonempty");
            let mut out = Vec::new();
            for &g in lattice.facets_of(id) {
                if lattice.face(g).vertices.contains(v) {
                    continue;
                }
                for s in triangulate_face(lattice, order, g, memo) {
                    out.push(s.with(v));
                }
            }
            out
        };
        memo.insert(id, simplices);
    }
    &memo[&id]
}

/// The same triangulation read off maximal flags `F_0 ⊂ ... ⊂ F_t` in which
/// the pulled-first vertex of each `F_j` is not in `F_{j-1}`; the simplex is
/// the set of those vertices. Used as an independent cross-check.
pub fn pulling_triangulation_by_flags(
    complex: &PolytopalComplex,
    order: &VertexOrder,
) -> SimplicialComplex {
    let lattice = complex.lattice();
    let mut out = Vec::new();
    let mut stack: Vec<(FaceId, VertexSet)> = complex
        .maximal_faces()
        .iter()
        .map(|&m| (m, VertexSet::new()))
        .collect();
    while let Some((id, chosen)) = stack.pop() {
        let face = lattice.face(id);
        let v = order.last_in(&face.vertices).expect("faces are nonempty");
        let chosen = chosen.with(v);
        if face.dim == 0 {
            out.push(chosen);
            continue;
        }
        for &g in lattice.facets_of(id) {
            if !lattice.face(g).vertices.contains(v) {
                stack.push((g, chosen.clone()));
            }
        }
    }
    SimplicialComplex::new(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::faces_of;
    use crate::polytope::fixtures::*;

    #[test]
    fn order_basics() {
        let o = VertexOrder::new(vec![2, 0, 1]).unwrap();
        assert_eq!(o.last_in(&[0, 2].iter().collect()), Some(0));
        assert_eq!(o.last_in(&[0, 1, 2].iter().collect()), Some(1));
        assert!(VertexOrder::new(vec![0, 0]).is_err());
        assert!(VertexOrder::new(vec![1, 2]).is_err());
        let t = VertexOrder::with_tail(&[0, 1, 2, 3], &[3, 1]).unwrap();
        assert_eq!(t.sequence(), &[0, 2, 3, 1]);
        assert_eq!(t.tail(2), &[3, 1]);
    }

    #[test]
    fn square_triangles_contain_pulled_vertex() {
        let p = unit_square();
        let l = faces_of(&p, 100).unwrap();
        let f = PolytopalComplex::of_polytope(&l);
        // (0,0) is vertex 0; put it at the end of the sequence
        let order = VertexOrder::new(vec![1, 2, 3, 0]).unwrap();
        let t = pulling_triangulation(&f, &order);
        assert_eq!(t.num_maximal_faces(), 2);
        assert!(t
            .maximal_faces()
            .iter()
            .all(|s| s.contains(0) && s.len() == 3));
        assert_eq!(t, pulling_triangulation_by_flags(&f, &order));
    }

    #[test]
    fn restriction() {
        let p = unit_square();
        let l = faces_of(&p, 100).unwrap();
        let f = PolytopalComplex::of_polytope(&l);
        let r = f.restrict(&VertexSet::singleton(0));
        assert_eq!(r.maximal_faces().len(), 2);
        assert_eq!(r.dim(), 1);
        assert!(r.is_pure());
        assert_eq!(
            f.restrict(&VertexSet::new()).maximal_faces(),
            f.maximal_faces()
        );
    }

    #[test]
    fn simplicial_complexes_are_fixed_points() {
        let p = triangle();
        let l = faces_of(&p, 100).unwrap();
        let f = PolytopalComplex::of_polytope(&l);
        let t = pulling_triangulation(&f, &VertexOrder::identity(3));
        assert_eq!(t, SimplicialComplex::simplex(VertexSet::full(3)));
        let b = PolytopalComplex::boundary(&l);
        let tb = pulling_triangulation(&b, &VertexOrder::identity(3));
        assert_eq!(tb.num_maximal_faces(), 3);
        assert_eq!(
            tb,
            pulling_triangulation_by_flags(&b, &VertexOrder::identity(3))
        );
    }

    #[test]
    fn prism_all_orders_agree_with_flags() {
        let p = prism();
        let l = faces_of(&p, 1000).unwrap();
        let f = PolytopalComplex::of_polytope(&l);
        let mut perm: Vec<usize> = (0..6).collect();
        // Heap's algorithm over all 720 orders
        let mut c = [0; 6];
        let check = |perm: &[usize]| {
            let o = VertexOrder::new(perm.to_vec()).unwrap();
            let a = pulling_triangulation(&f, &o);
            assert_eq!(a, pulling_triangulation_by_flags(&f, &o));
            assert_eq!(a.num_maximal_faces(), 3);
            assert!(a.is_pure() && a.dim() == 3);
        };
        check(&perm);
        let mut i = 0;
        while i < 6 {
            if c[i] < i {
                if i % 2 == 0 {
                    perm.swap(0, i);
                } else {
                    perm.swap(c[i], i);
                }
                check(&perm);
                c[i] += 1;
                i = 0;
            } else {
                c[i] = 0;
                i += 1;
            }
        }
    }
}
