use serde::Serialize;

use super::{affine_rank, FaceLattice, IntegerPolytope, VertexSet};
use crate::config::Budgets;
use crate::error::{Error, Result};

/// A simplex on vertices of `P` such that every facet of `P` contains all
/// but exactly one of its vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecialSimplexCertificate {
    pub vertex_indices: Vec<usize>,
    pub per_facet_counts: Vec<usize>,
}

impl SpecialSimplexCertificate {
    pub fn size(&self) -> usize {
        self.vertex_indices.len()
    }

    pub fn as_set(&self) -> VertexSet {
        self.vertex_indices.iter().collect()
    }
}

/// Outcome of [`find_special_simplex`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpecialSearch {
    Found(SpecialSimplexCertificate),
    /// The search space was exhausted without success.
    NotFound,
    /// A search guard was hit before the space was exhausted.
    Inconclusive(String),
}

fn check_indices(p: &IntegerPolytope, sigma: &[usize]) -> Result<VertexSet> {
    if sigma.is_empty() {
        return Err(Error::input(
            "special simplex must have at least one vertex",
        ));
    }
    let mut set = VertexSet::new();
    for &v in sigma {
        if v >= p.num_vertices() {
            return Err(Error::input(format!(
                "vertex index {v} out of range (polytope has {} vertices)",
                p.num_vertices()
            )));
        }
        if set.contains(v) {
            return Err(Error::input(format!("vertex index {v} repeated")));
        }
        set.insert(v);
    }
    Ok(set)
}

/// Checks that every facet contains exactly `|σ| - 1` of the vertices `σ`.
/// The error names the first facet with a different count.
pub fn verify_special_simplex(
    p: &IntegerPolytope,
    sigma: &[usize],
) -> Result<SpecialSimplexCertificate> {
    let set = check_indices(p, sigma)?;
    let n = sigma.len();
    if affine_rank(sigma.iter().map(|&v| &p.vertices()[v])) + 1 != n {
        return Err(Error::verification(format!(
            "vertices {sigma:?} are not affinely independent"
        )));
    }
    let mut counts = Vec::with_capacity(p.num_facets());
    for (f, tight) in p.incidence().iter().enumerate() {
        let c = tight.intersection(&set).len();
        if c + 1 != n {
            return Err(Error::verification(format!(
                "facet {f} contains {c} of the {n} simplex vertices, expected {}",
                n - 1
            )));
        }
        counts.push(c);
    }
    Ok(SpecialSimplexCertificate {
        vertex_indices: sigma.to_vec(),
        per_facet_counts: counts,
    })
}

/// Faces of codimension `k` in `1..n` that miss more than `k` vertices of
/// the special simplex `σ`, each reported with the missed vertices.
///
/// For a special simplex the list is empty: a face of codimension `k`
/// avoiding `k` of the simplex vertices contains all the others.
pub fn codimension_containment_violations(
    p: &IntegerPolytope,
    lattice: &FaceLattice,
    sigma: &[usize],
) -> Vec<(usize, Vec<usize>)> {
    let n = sigma.len();
    let m = p.dim();
    let mut out = Vec::new();
    for (id, face) in lattice.faces().iter().enumerate() {
        let k = m - face.dim;
        if k == 0 || k >= n {
            continue;
        }
        let missed: Vec<usize> = sigma
            .iter()
            .copied()
            .filter(|&v| !face.vertices.contains(v))
            .collect();
        if missed.len() > k {
            out.push((id, missed));
        }
    }
    out
}

struct ExactCover<'a> {
    universe: &'a VertexSet,
    candidates: &'a [(usize, VertexSet)],
    max_depth: usize,
    nodes: u64,
    max_nodes: u64,
    exhausted_budget: bool,
}

impl ExactCover<'_> {
    /// Calls `accept` on each exact cover (as candidate owners) until it
    /// returns true; returns whether some call did.
    fn search(
        &mut self,
        covered: &VertexSet,
        chosen: &mut Vec<usize>,
        accept: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            self.exhausted_budget = true;
            return false;
        }
        let open = self.universe.difference(covered);
        let Some(_) = open.first() else {
            return accept(chosen);
        };
        if chosen.len() == self.max_depth {
            return false;
        }
        let mut best: Option<(usize, Vec<usize>)> = None;
        for col in open.iter() {
            let fits: Vec<usize> = (0..self.candidates.len())
                .filter(|&c| {
                    let s = &self.candidates[c].1;
                    s.contains(col) && s.is_disjoint(covered)
                })
                .collect();
            if best.as_ref().is_none_or(|(_, b)| fits.len() < b.len()) {
                let empty = fits.is_empty();
                best = Some((col, fits));
                if empty {
                    break;
                }
            }
        }
        let (_, fits) = best.expect("open column exists");
        for c in fits {
            chosen.push(self.candidates[c].0);
            let next = covered.union(&self.candidates[c].1);
            let done = self.search(&next, chosen, accept);
            chosen.pop();
            if done || self.exhausted_budget {
                return done;
            }
        }
        false
    }
}

/// Searches for a special simplex.
///
/// With a hint `β`, looks for vertices with pairwise disjoint supports
/// summing to `β`. Without one, runs an exhaustive exact-cover search: the
/// facets missed by the vertices of a special simplex partition the facet
/// set, and conversely any such partition is a special simplex.
pub fn find_special_simplex(
    p: &IntegerPolytope,
    hint: Option<&[i64]>,
    budgets: &Budgets,
) -> Result<SpecialSearch> {
    if p.dim() == 0 {
        return Ok(SpecialSearch::Found(verify_special_simplex(p, &[0])?));
    }
    let (universe, candidates, max_depth) = match hint {
        Some(beta) => {
            if beta.len() != p.ambient_dim() {
                return Err(Error::input(format!(
                    "hint has {} coordinates, expected {}",
                    beta.len(),
                    p.ambient_dim()
                )));
            }
            let universe: VertexSet = (0..beta.len()).filter(|&k| beta[k] != 0).collect();
            let candidates: Vec<(usize, VertexSet)> = p
                .vertices()
                .iter()
                .enumerate()
                .filter_map(|(i, v)| {
                    let supp: VertexSet = (0..v.len()).filter(|&k| v[k] != 0).collect();
                    let fits = !supp.is_empty() && supp.iter().all(|k| v[k] == beta[k]);
                    (fits && supp.is_subset(&universe)).then_some((i, supp))
                })
                .collect();
            (universe, candidates, p.dim() + 1)
        }
        None => {
            if p.num_vertices() > budgets.max_special_vertices {
                return Ok(SpecialSearch::Inconclusive(format!(
                    "{} vertices exceed the exhaustive-search limit of {}",
                    p.num_vertices(),
                    budgets.max_special_vertices
                )));
            }
            let universe = VertexSet::full(p.num_facets());
            let candidates: Vec<(usize, VertexSet)> = (0..p.num_vertices())
                .map(|v| {
                    let missed: VertexSet =
                        (0..p.num_facets()).filter(|&f| !p.on_facet(v, f)).collect();
                    (v, missed)
                })
                .collect();
            (
                universe,
                candidates,
                budgets.max_special_size.min(p.dim() + 1),
            )
        }
    };

    let mut found = None;
    let mut search = ExactCover {
        universe: &universe,
        candidates: &candidates,
        max_depth,
        nodes: 0,
        max_nodes: budgets.max_nodes,
        exhausted_budget: false,
    };
    let mut accept = |chosen: &[usize]| {
        let mut sigma = chosen.to_vec();
        sigma.sort_unstable();
        match verify_special_simplex(p, &sigma) {
            Ok(cert) => {
                found = Some(cert);
                true
            }
            Err(_) => false,
        }
    };
    search.search(&VertexSet::new(), &mut Vec::new(), &mut accept);
    let exhausted = search.exhausted_budget;
    if let Some(cert) = found {
        return Ok(SpecialSearch::Found(cert));
    }
    if exhausted {
        return Ok(SpecialSearch::Inconclusive(format!(
            "search node limit {} reached",
            budgets.max_nodes
        )));
    }
    if hint.is_none() && budgets.max_special_size < p.dim() + 1 {
        return Ok(SpecialSearch::Inconclusive(format!(
            "simplices larger than {} vertices were not searched",
            budgets.max_special_size
        )));
    }
    Ok(SpecialSearch::NotFound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::fixtures::*;
    use crate::polytope::{faces_of, Inequality, PolytopeData};

    fn octahedron() -> IntegerPolytope {
        let mut vertices = Vec::new();
        for i in 0..3 {
            for s in [-1, 1] {
                let mut v = vec![0; 3];
                v[i] = s;
                vertices.push(v);
            }
        }
        let mut facets = Vec::new();
        for a in [-1, 1] {
            for b in [-1, 1] {
                for c in [-1, 1] {
                    facets.push(Inequality {
                        normal: vec![a, b, c],
                        offset: 1,
                    });
                }
            }
        }
        IntegerPolytope::new(PolytopeData {
            ambient_dim: 3,
            vertices,
            facets,
            equalities: vec![],
        })
        .unwrap()
    }

    #[test]
    fn square_diagonal_is_special_but_edge_is_not() {
        let p = unit_square();
        // vertices (0,0),(0,1),(1,0),(1,1)
        let cert = verify_special_simplex(&p, &[0, 3]).unwrap();
        assert_eq!(cert.per_facet_counts, vec![1; 4]);
        let err = verify_special_simplex(&p, &[0, 1]).unwrap_err().to_string();
        assert!(err.contains("facet"), "{err}");
    }

    #[test]
    fn dependent_sigma_is_rejected() {
        let p = rectangle(2, 1);
        assert!(verify_special_simplex(&p, &[0, 1, 2, 3]).is_err());
        assert!(verify_special_simplex(&p, &[0, 0]).is_err());
        assert!(verify_special_simplex(&p, &[9]).is_err());
    }

    #[test]
    fn exhaustive_search_outcomes() {
        let b = Budgets::default();
        match find_special_simplex(&unit_square(), None, &b).unwrap() {
            SpecialSearch::Found(c) => assert_eq!(c.size(), 2),
            other => panic!("{other:?}"),
        }
        match find_special_simplex(&triangle(), None, &b).unwrap() {
            SpecialSearch::Found(c) => assert_eq!(c.vertex_indices, vec![0, 1, 2]),
            other => panic!("{other:?}"),
        }
        assert_eq!(
            find_special_simplex(&pentagon(), None, &b).unwrap(),
            SpecialSearch::NotFound
        );
        assert_eq!(
            find_special_simplex(&prism(), None, &b).unwrap(),
            SpecialSearch::NotFound
        );
        match find_special_simplex(&octahedron(), None, &b).unwrap() {
            SpecialSearch::Found(c) => assert_eq!(c.size(), 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn exhaustive_search_agrees_with_subset_enumeration() {
        // brute force over all vertex subsets
        for p in [unit_square(), triangle(), pentagon(), prism(), octahedron()] {
            let n = p.num_vertices();
            let any = (1u32..1 << n).any(|mask| {
                let sigma: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
                verify_special_simplex(&p, &sigma).is_ok()
            });
            let found = matches!(
                find_special_simplex(&p, None, &Budgets::default()).unwrap(),
                SpecialSearch::Found(_)
            );
            assert_eq!(any, found);
        }
    }

    #[test]
    fn guards_give_inconclusive() {
        let tight = Budgets {
            max_special_vertices: 3,
            ..Budgets::default()
        };
        assert!(matches!(
            find_special_simplex(&unit_square(), None, &tight).unwrap(),
            SpecialSearch::Inconclusive(_)
        ));
        let tight = Budgets {
            max_nodes: 1,
            ..Budgets::default()
        };
        assert!(matches!(
            find_special_simplex(&pentagon(), None, &tight).unwrap(),
            SpecialSearch::Inconclusive(_)
        ));
    }

    #[test]
    fn hint_search_on_square() {
        let b = Budgets::default();
        match find_special_simplex(&unit_square(), Some(&[1, 1]), &b).unwrap() {
            SpecialSearch::Found(c) => assert_eq!(c.vertex_indices, vec![1, 2]),
            other => panic!("{other:?}"),
        }
        assert!(find_special_simplex(&unit_square(), Some(&[1]), &b).is_err());
    }

    #[test]
    fn point_is_its_own_special_simplex() {
        match find_special_simplex(&point(), None, &Budgets::default()).unwrap() {
            SpecialSearch::Found(c) => assert_eq!(c.vertex_indices, vec![0]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn containment_rule_holds_for_octahedron_axis() {
        let p = octahedron();
        let l = faces_of(&p, 1000).unwrap();
        assert!(codimension_containment_violations(&p, &l, &[4, 5]).is_empty());
        // an edge pair is not special and violates the rule
        assert!(!codimension_containment_violations(&p, &l, &[0, 2]).is_empty());
    }
}
