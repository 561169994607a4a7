use std::collections::VecDeque;

use super::poset::{content_lines, parse_numbers};
use crate::config::Budgets;
use crate::error::{Error, Result};
use crate::polytope::{Equality, Inequality, IntegerPolytope};
use crate::triangulation::VertexOrder;

/// Multigraph on vertices `0..p`; edges are kept in input order and may
/// repeat or be loops.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiGraph {
    p: usize,
    edges: Vec<(usize, usize)>,
}

impl MultiGraph {
    pub fn new(p: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| u >= p || v >= p) {
            return Err(Error::input(format!(
                "edge ({u}, {v}) has an endpoint outside 0..{p}"
            )));
        }
        Ok(MultiGraph { p, edges })
    }

    /// Reads `p q` on the first line, then `q` lines `u v` with 1-indexed
    /// endpoints.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (l, first) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "empty graph file".into(),
        })?;
        let head = parse_numbers(l, first, 2)?;
        let (p, q) = (head[0], head[1]);
        let mut edges = Vec::with_capacity(q);
        for (l, line) in lines {
            let e = parse_numbers(l, line, 2)?;
            if e[0] == 0 || e[1] == 0 || e[0] > p || e[1] > p {
                return Err(Error::Parse {
                    line: l,
                    message: format!("endpoint out of range 1..={p}"),
                });
            }
            edges.push((e[0] - 1, e[1] - 1));
        }
        if edges.len() != q {
            return Err(Error::Parse {
                line: l,
                message: format!("header announces {q} edges, file has {}", edges.len()),
            });
        }
        Self::new(p, edges)
    }

    /// Cycle on `p` vertices.
    pub fn cycle(p: usize) -> Self {
        MultiGraph {
            p,
            edges: (0..p).map(|i| (i, (i + 1) % p)).collect(),
        }
    }

    /// Complete bipartite graph `K_{a,b}`; edge `(i, j)` has index `i * b + j`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let edges = (0..a)
            .flat_map(|i| (0..b).map(move |j| (i, a + j)))
            .collect();
        MultiGraph { p: a + b, edges }
    }

    pub fn num_vertices(&self) -> usize {
        self.p
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Degree, with a loop counted once.
    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.degree(0);
        (0..self.p).all(|v| self.degree(v) == d).then_some(d)
    }

    pub fn has_loop(&self) -> bool {
        self.edges.iter().any(|&(a, b)| a == b)
    }

    pub fn is_connected(&self) -> bool {
        self.components().is_some_and(|c| c == 1)
    }

    fn components(&self) -> Option<usize> {
        if self.p == 0 {
            return None;
        }
        let mut comp = vec![usize::MAX; self.p];
        let mut count = 0;
        for s in 0..self.p {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = count;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &(a, b) in &self.edges {
                    for (x, y) in [(a, b), (b, a)] {
                        if x == u && comp[y] == usize::MAX {
                            comp[y] = count;
                            queue.push_back(y);
                        }
                    }
                }
            }
            count += 1;
        }
        Some(count)
    }

    /// A proper 2-coloring, if one exists.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut color: Vec<Option<bool>> = vec![None; self.p];
        for s in 0..self.p {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].expect("colored");
                for &(a, b) in &self.edges {
                    for (x, y) in [(a, b), (b, a)] {
                        if x != u {
                            continue;
                        }
                        match color[y] {
                            None => {
                                color[y] = Some(!cu);
                                queue.push_back(y);
                            }
                            Some(c) if c == cu => return None,
                            Some(_) => {}
                        }
                    }
                }
            }
        }
        Some(color.into_iter().map(|c| c.expect("colored")).collect())
    }

    /// Rejects loops, disconnected, non-bipartite and irregular graphs;
    /// returns the degree.
    pub fn check_regular_bipartite(&self) -> Result<usize> {
        if self.p == 0 {
            return Err(Error::input("graph has no vertices"));
        }
        if self.has_loop() {
            return Err(Error::input("graph has a loop"));
        }
        if !self.is_connected() {
            return Err(Error::input("graph not connected"));
        }
        if self.bipartition().is_none() {
            return Err(Error::input("graph not bipartite"));
        }
        self.regular_degree()
            .ok_or_else(|| Error::input("graph not regular"))
    }
}

/// Perfect-matching polytope of a connected regular bipartite multigraph.
#[derive(Clone, Debug)]
pub struct MatchingPolytope {
    pub polytope: IntegerPolytope,
    /// Edge indices of each vertex's matching.
    pub matchings: Vec<Vec<usize>>,
    pub degree: usize,
}

impl MatchingPolytope {
    /// Lexicographic order of the indicator vectors (the vertex order).
    pub fn default_order(&self) -> VertexOrder {
        VertexOrder::identity(self.matchings.len())
    }

    /// Default order with `sigma = (v_1, ..., v_n)` moved to the end as
    /// `(..., v_n, ..., v_1)`.
    pub fn order_with_simplex(&self, sigma: &[usize]) -> Result<VertexOrder> {
        let tail: Vec<usize> = sigma.iter().rev().copied().collect();
        VertexOrder::with_tail(self.default_order().sequence(), &tail)
    }
}

fn perfect_matchings(g: &MultiGraph, max: usize) -> Result<Vec<Vec<usize>>> {
    fn rec(
        g: &MultiGraph,
        matched: &mut Vec<bool>,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        max: usize,
    ) -> Result<()> {
        let Some(v) = matched.iter().position(|&m| !m) else {
            if out.len() == max {
                return Err(Error::Budget {
                    what: "number of perfect matchings",
                    limit: max as u64,
                });
            }
            out.push(chosen.clone());
            return Ok(());
        };
        for (e, &(a, b)) in g.edges.iter().enumerate() {
            let w = if a == v {
                b
            } else if b == v {
                a
            } else {
                continue;
            };
            if w == v || matched[w] {
                continue;
            }
            matched[v] = true;
            matched[w] = true;
            chosen.push(e);
            rec(g, matched, chosen, out, max)?;
            chosen.pop();
            matched[v] = false;
            matched[w] = false;
        }
        Ok(())
    }
    let mut out = Vec::new();
    rec(g, &mut vec![false; g.p], &mut Vec::new(), &mut out, max)?;
    Ok(out)
}

/// Polytope in `R^E` cut out by `x >= 0` and unit vertex sums; its vertices
/// are the perfect matchings, sorted lexicographically by indicator vector.
pub fn matching_polytope(g: &MultiGraph, budgets: &Budgets) -> Result<MatchingPolytope> {
    let degree = g.check_regular_bipartite()?;
    let q = g.num_edges();
    let mut pairs: Vec<(Vec<i64>, Vec<usize>)> = perfect_matchings(g, budgets.max_faces)?
        .into_iter()
        .map(|mut mt| {
            mt.sort_unstable();
            let mut x = vec![0; q];
            for &e in &mt {
                x[e] = 1;
            }
            (x, mt)
        })
        .collect();
    pairs.sort();
    let (vertices, matchings): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
    let candidates = (0..q)
        .map(|e| {
            let mut normal = vec![0; q];
            normal[e] = -1;
            Inequality { normal, offset: 0 }
        })
        .collect();
    let equalities = (0..g.p)
        .map(|v| Equality {
            normal: g
                .edges
                .iter()
                .map(|&(a, b)| (a == v || b == v) as i64)
                .collect(),
            offset: 1,
        })
        .collect();
    let polytope = IntegerPolytope::from_candidates(q, vertices, candidates, equalities)?;
    Ok(MatchingPolytope {
        polytope,
        matchings,
        degree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_graph_file() {
        let g = MultiGraph::parse("# double edge\n2 2\n1 2\n1 2\n").unwrap();
        assert_eq!(g.num_edges(), 2);
        assert_eq!(g.regular_degree(), Some(2));
        assert!(MultiGraph::parse("2 2\n1 2\n").is_err());
        assert!(MultiGraph::parse("2 1\n1 3\n").is_err());
    }

    #[test]
    fn rejections() {
        let b = Budgets::default();
        let path = MultiGraph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        let err = matching_polytope(&path, &b).unwrap_err().to_string();
        assert!(err.contains("graph not regular"), "{err}");
        let err = matching_polytope(&MultiGraph::cycle(3), &b)
            .unwrap_err()
            .to_string();
        assert!(err.contains("not bipartite"), "{err}");
        let two = MultiGraph::new(4, vec![(0, 1), (2, 3)]).unwrap();
        let err = matching_polytope(&two, &b).unwrap_err().to_string();
        assert!(err.contains("not connected"), "{err}");
        let looped = MultiGraph::new(1, vec![(0, 0)]).unwrap();
        assert!(matching_polytope(&looped, &b)
            .unwrap_err()
            .to_string()
            .contains("loop"));
    }

    #[test]
    fn hexagon_and_k33() {
        let b = Budgets::default();
        let c6 = matching_polytope(&MultiGraph::cycle(6), &b).unwrap();
        assert_eq!(c6.polytope.num_vertices(), 2);
        assert_eq!(c6.polytope.dim(), 1);
        let k33 = matching_polytope(&MultiGraph::complete_bipartite(3, 3), &b).unwrap();
        assert_eq!(k33.polytope.num_vertices(), 6);
        assert_eq!(k33.polytope.dim(), 4);
        assert_eq!(k33.polytope.num_facets(), 9);
    }

    #[test]
    fn dimension_formula() {
        // m = q - p + 1 for connected bipartite graphs
        let b = Budgets::default();
        let double = MultiGraph::new(2, vec![(0, 1), (0, 1), (0, 1)]).unwrap();
        let p = matching_polytope(&double, &b).unwrap();
        assert_eq!(p.polytope.dim(), 3 - 2 + 1);
        let k22 = matching_polytope(&MultiGraph::complete_bipartite(2, 2), &b).unwrap();
        assert_eq!(k22.polytope.dim(), 1);
    }
}
