use std::collections::HashSet;

use super::graph::MultiGraph;
use crate::config::Budgets;
use crate::ehrhart::for_each_point;
use crate::error::{Error, Result};
use crate::polytope::IntegerPolytope;

/// The all-ones vector with its grading `L`, when `(1, ..., 1)` lies in the
/// dilate `L * P` for a positive integer `L`.
///
/// With equalities `c·x = e`, `L` is `c·1 / e` and must be the same for all
/// of them. Without equalities, `L` is the least value that satisfies the
/// facet inequalities. Returns `None` when no such `L` exists.
pub fn ones_minimal_element(p: &IntegerPolytope) -> Option<(Vec<i64>, i64)> {
    let q = p.ambient_dim();
    let ones = vec![1i64; q];
    let sum = |v: &[i64]| -> i64 { v.iter().sum() };
    let mut grading: Option<i64> = None;
    for e in p.equalities() {
        let lhs = sum(&e.normal);
        if e.offset == 0 {
            if lhs != 0 {
                return None;
            }
            continue;
        }
        if lhs % e.offset != 0 {
            return None;
        }
        let l = lhs / e.offset;
        if l <= 0 || grading.is_some_and(|g| g != l) {
            return None;
        }
        grading = Some(l);
    }
    let fits = |l: i64| p.facets().iter().all(|f| sum(&f.normal) <= l * f.offset);
    let l = match grading {
        Some(l) => l,
        None => {
            let bound = p
                .facets()
                .iter()
                .map(|f| sum(&f.normal).abs())
                .max()
                .unwrap_or(0)
                + 1;
            (1..=bound).find(|&l| fits(l))?
        }
    };
    fits(l).then_some((ones, l))
}

/// Grading of the all-ones labeling of `G`: the common vertex degree, or
/// `None` if `G` is not regular.
pub fn ones_grading_of_graph(g: &MultiGraph) -> Option<usize> {
    g.regular_degree()
}

/// Checks that every lattice point of `r * P` for `1 <= r <= max_degree` is a
/// sum of `r` vertices of `P`. Returns the first point that is not.
pub fn monoid_generation_check(
    p: &IntegerPolytope,
    max_degree: u64,
    budgets: &Budgets,
) -> Result<Option<Vec<i64>>> {
    let vertices: Vec<Vec<i64>> = p.vertices().to_vec();
    let mut sums: HashSet<Vec<i64>> = HashSet::new();
    sums.insert(vec![0; p.ambient_dim()]);
    for r in 1..=max_degree {
        let mut next = HashSet::new();
        for s in &sums {
            for v in &vertices {
                next.insert(s.iter().zip(v).map(|(a, b)| a + b).collect::<Vec<i64>>());
                if next.len() > budgets.max_faces {
                    return Err(Error::Budget {
                        what: "number of vertex sums",
                        limit: budgets.max_faces as u64,
                    });
                }
            }
        }
        sums = next;
        let mut missing = None;
        for_each_point(p, r, budgets, &mut |x| {
            if missing.is_none() && !sums.contains(x) {
                missing = Some(x.to_vec());
            }
        })?;
        if missing.is_some() {
            return Ok(missing);
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{birkhoff, matching_polytope, order_polytope, Poset};
    use crate::polytope::fixtures::*;

    #[test]
    fn ones_in_birkhoff_has_grading_n() {
        for n in 1..=4 {
            let b = birkhoff(n).unwrap();
            let (ones, l) = ones_minimal_element(&b.polytope).unwrap();
            assert_eq!(ones.len(), n * n);
            assert_eq!(l, n as i64);
        }
    }

    #[test]
    fn ones_in_matching_polytopes() {
        let b = Budgets::default();
        let k33 = MultiGraph::complete_bipartite(3, 3);
        let mp = matching_polytope(&k33, &b).unwrap();
        assert_eq!(ones_minimal_element(&mp.polytope).unwrap().1, 3);
        assert_eq!(ones_grading_of_graph(&k33), Some(3));
        let path = MultiGraph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        assert_eq!(ones_grading_of_graph(&path), None);
    }

    #[test]
    fn ones_outside_a_polytope() {
        // the order polytope contains all-ones as the top vertex
        let op = order_polytope(&Poset::antichain(2).unwrap(), &Budgets::default()).unwrap();
        assert_eq!(ones_minimal_element(&op.polytope).unwrap().1, 1);
        // x + y = 3 has no positive integer grading through (1, 1)
        let seg = IntegerPolytope::new(crate::polytope::PolytopeData {
            ambient_dim: 2,
            vertices: vec![vec![0, 3], vec![3, 0]],
            facets: vec![ineq(&[-1, 0], 0), ineq(&[0, -1], 0)],
            equalities: vec![crate::polytope::Equality {
                normal: vec![1, 1],
                offset: 3,
            }],
        })
        .unwrap();
        assert!(ones_minimal_element(&seg).is_none());
    }

    #[test]
    fn birkhoff_points_are_sums_of_permutations() {
        let b = Budgets::default();
        assert_eq!(
            monoid_generation_check(&birkhoff(2).unwrap().polytope, 3, &b).unwrap(),
            None
        );
        assert_eq!(
            monoid_generation_check(&birkhoff(3).unwrap().polytope, 2, &b).unwrap(),
            None
        );
        let c6 = matching_polytope(&MultiGraph::cycle(6), &b).unwrap();
        assert_eq!(monoid_generation_check(&c6.polytope, 3, &b).unwrap(), None);
    }

    #[test]
    fn non_generating_polytope_is_caught() {
        // the triangle (0,0), (2,1), (1,2) has the interior point (1,1)
        let data = crate::polytope::PolytopeData {
            ambient_dim: 2,
            vertices: vec![vec![0, 0], vec![1, 2], vec![2, 1]],
            facets: vec![ineq(&[1, -2], 0), ineq(&[-2, 1], 0), ineq(&[1, 1], 3)],
            equalities: vec![],
        };
        let tri = IntegerPolytope::new(data).unwrap();
        assert_eq!(
            monoid_generation_check(&tri, 1, &Budgets::default()).unwrap(),
            Some(vec![1, 1])
        );
    }
}
