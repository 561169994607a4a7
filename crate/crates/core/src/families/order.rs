use std::collections::HashSet;

use super::poset::Poset;
use crate::config::Budgets;
use crate::error::{Error, Result};
use crate::polytope::{Equality, Inequality, IntegerPolytope, VertexSet};
use crate::triangulation::{SimplicialComplex, VertexOrder};

/// Order polytope `O(Ω)` in `R^{m+1}`, with coordinate 0 fixed to 1.
#[derive(Clone, Debug)]
pub struct OrderPolytope {
    pub polytope: IntegerPolytope,
    /// Ideal of `Ω^0` (always containing 0) for each vertex, sorted by
    /// cardinality and then lexicographically.
    pub ideals: Vec<VertexSet>,
}

impl OrderPolytope {
    /// Containment-compatible order `(u_p, ..., u_1)`: the largest ideal is
    /// listed first and `{0}` is pulled first.
    pub fn default_order(&self) -> VertexOrder {
        VertexOrder::new((0..self.ideals.len()).rev().collect()).expect("permutation")
    }

    /// Default order with the simplex `v_1, ..., v_n` moved to the end as
    /// `(..., v_n, ..., v_1)`, so that `v_1` is pulled first.
    pub fn order_with_simplex(&self, sigma: &[usize]) -> Result<VertexOrder> {
        let tail: Vec<usize> = sigma.iter().rev().copied().collect();
        VertexOrder::with_tail(self.default_order().sequence(), &tail)
    }

    pub fn vertex_of_ideal(&self, ideal: &VertexSet) -> Option<usize> {
        self.ideals.iter().position(|i| i == ideal)
    }
}

/// Nonempty ideals of `Ω^0`, in the canonical vertex numbering.
pub fn ideals_of_extended(p: &Poset, max: usize) -> Result<Vec<VertexSet>> {
    Ok(p.ideals(max)?.into_iter().map(|j| j.with(0)).collect())
}

/// Builds `O(Ω)`: `x_0 = 1`, `x_i >= x_j` for covers `i < j` of `Ω^0`, and
/// `x_i >= 0` for maximal `i`.
pub fn order_polytope(p: &Poset, budgets: &Budgets) -> Result<OrderPolytope> {
    let m = p.m();
    let ideals = ideals_of_extended(p, budgets.max_faces)?;
    let vertices: Vec<Vec<i64>> = ideals
        .iter()
        .map(|ideal| (0..=m).map(|i| ideal.contains(i) as i64).collect())
        .collect();
    let unit = |i: usize, c: i64| {
        let mut v = vec![0; m + 1];
        v[i] = c;
        v
    };
    let mut candidates = Vec::new();
    let mut add_cover = |i: usize, j: usize| {
        let mut normal = unit(j, 1);
        normal[i] = -1;
        candidates.push(Inequality { normal, offset: 0 });
    };
    for &(i, j) in p.covers() {
        add_cover(i, j);
    }
    for j in 1..=m {
        if p.below(j).len() == 1 {
            add_cover(0, j);
        }
    }
    for i in p.maximal_elements() {
        candidates.push(Inequality {
            normal: unit(i, -1),
            offset: 0,
        });
    }
    let polytope = IntegerPolytope::from_candidates(
        m + 1,
        vertices,
        candidates,
        vec![Equality {
            normal: unit(0, 1),
            offset: 1,
        }],
    )?;
    Ok(OrderPolytope { polytope, ideals })
}

fn graded_ranks(p: &Poset) -> Result<Vec<usize>> {
    p.ranks().ok_or_else(|| Error::input("poset is not graded"))
}

/// The rank ideals `v_1, ..., v_n`: `v_i` is the set of elements of `Ω^0`
/// of rank at most `i - 1`.
pub fn rank_ideal_simplex(p: &Poset, op: &OrderPolytope) -> Result<Vec<usize>> {
    let ranks = graded_ranks(p)?;
    if !p.is_naturally_labeled() {
        return Err(Error::input("poset is not naturally labeled"));
    }
    let n = p.num_ranks().expect("graded") + 1;
    (0..n)
        .map(|i| {
            // rank in Ω^0 is rank in Ω plus one, so rank_0(e) <= i means ranks[e] < i
            let ideal: VertexSet = std::iter::once(0)
                .chain((1..=p.m()).filter(|&e| ranks[e] < i))
                .collect();
            op.vertex_of_ideal(&ideal)
                .ok_or_else(|| Error::input("rank ideal missing from the order polytope"))
        })
        .collect()
}

/// The equatorial complex `Δ_eq(Ω)` of a graded poset.
#[derive(Clone, Debug)]
pub struct EquatorialComplex {
    /// Vertex labels are indices into this list of ideals of `Ω^0`, the
    /// same numbering as the vertices of [`order_polytope`].
    pub ideals: Vec<VertexSet>,
    pub complex: SimplicialComplex,
}

fn is_equatorial(g: &[i64], p: &Poset, ranks: &[usize]) -> bool {
    let m = p.m();
    if (1..=m).map(|a| g[a]).min() != Some(0) {
        return false;
    }
    let num_ranks = p.num_ranks().expect("graded");
    (0..num_ranks.saturating_sub(1)).all(|r| {
        p.covers()
            .iter()
            .any(|&(a, b)| ranks[a] == r && ranks[b] == r + 1 && g[a] == g[b])
    })
}

/// Nonempty equatorial ideals of `Ω` as vertices; chains of them whose
/// characteristic vectors sum to an equatorial function as faces. The empty
/// ideal is excluded as a vertex: it is the rank ideal `v_1`.
pub fn equatorial_complex(p: &Poset, budgets: &Budgets) -> Result<EquatorialComplex> {
    let ranks = graded_ranks(p)?;
    let ideals = ideals_of_extended(p, budgets.max_faces)?;
    let m = p.m();
    let chi =
        |ideal: &VertexSet| -> Vec<i64> { (0..=m).map(|i| ideal.contains(i) as i64).collect() };
    let verts: Vec<usize> = (0..ideals.len())
        .filter(|&k| ideals[k].len() > 1 && is_equatorial(&chi(&ideals[k]), p, &ranks))
        .collect();

    // every prefix of an equatorial chain is equatorial, so extending only
    // equatorial chains upward finds them all
    let mut chains: HashSet<VertexSet> = HashSet::new();
    let mut stack: Vec<(VertexSet, usize, Vec<i64>)> = verts
        .iter()
        .map(|&k| (VertexSet::singleton(k), k, chi(&ideals[k])))
        .collect();
    let mut nodes = 0u64;
    while let Some((chain, top, sum)) = stack.pop() {
        nodes += 1;
        if nodes > budgets.max_nodes {
            return Err(Error::Budget {
                what: "equatorial chain search nodes",
                limit: budgets.max_nodes,
            });
        }
        for &k in &verts {
            if ideals[k].len() > ideals[top].len() && ideals[top].is_subset(&ideals[k]) {
                let next: Vec<i64> = sum
                    .iter()
                    .zip(chi(&ideals[k]))
                    .map(|(a, b)| a + b)
                    .collect();
                if is_equatorial(&next, p, &ranks) {
                    stack.push((chain.with(k), k, next));
                }
            }
        }
        chains.insert(chain);
    }
    let maximal = chains
        .iter()
        .filter(|c| {
            !verts
                .iter()
                .any(|&k| !c.contains(k) && chains.contains(&c.with(k)))
        })
        .cloned();
    Ok(EquatorialComplex {
        ideals,
        complex: SimplicialComplex::new(maximal),
    })
}
