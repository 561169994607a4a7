//! Lattice-point counts of dilates and Ehrhart series numerators, computed
//! by counting and from unimodular pulling triangulations.

mod count;
mod pipeline;

use num_bigint::BigInt;
use serde::Serialize;

pub use count::{count_points, for_each_point, lattice_points};
pub use pipeline::{verify_special_simplex_pipeline, CheckSection, PipelineReport, StageCheck};

use crate::config::Budgets;
use crate::error::{Error, Result};
use crate::exact_math::{numerator_from_values, IntPolynomial};
use crate::families::{birkhoff, matching_polytope, MultiGraph, Poset};
use crate::polytope::{
    faces_of, find_special_simplex, FaceLattice, IntegerPolytope, SpecialSearch,
};
use crate::triangulation::{
    first_non_unimodular, pulling_triangulation, PolytopalComplex, VertexOrder,
};

/// `sum_r Ehrhart(P, r) t^r = numerator / (1 - t)^denom_exponent`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EhrhartSeries {
    pub numerator: IntPolynomial,
    pub denom_exponent: usize,
}

impl EhrhartSeries {
    /// Dimension of the polytope, `denom_exponent - 1`.
    pub fn dim(&self) -> usize {
        self.denom_exponent - 1
    }

    /// `Ehrhart(P, r)` for `r < len`.
    pub fn values(&self, len: usize) -> Vec<BigInt> {
        self.numerator.series_prefix(self.denom_exponent, len)
    }
}

/// `Ehrhart(P, r)` for `r = 0..=r_max`.
pub fn counts(p: &IntegerPolytope, r_max: u64, budgets: &Budgets) -> Result<Vec<BigInt>> {
    (0..=r_max).map(|r| count_points(p, r, budgets)).collect()
}

/// Numerator from the counts at `r = 0..=m + 1`; the value at `m + 1` is an
/// overdetermination check.
pub fn series_by_counting(p: &IntegerPolytope, budgets: &Budgets) -> Result<EhrhartSeries> {
    let m = p.dim();
    let values = counts(p, m as u64 + 1, budgets)?;
    Ok(EhrhartSeries {
        numerator: numerator_from_values(&values, m)?,
        denom_exponent: m + 1,
    })
}

/// Numerator as the h-polynomial of the pulling triangulation for `order`,
/// which must be unimodular.
pub fn series_by_triangulation(
    p: &IntegerPolytope,
    lattice: &FaceLattice,
    order: &VertexOrder,
) -> Result<EhrhartSeries> {
    if order.len() != p.num_vertices() {
        return Err(Error::input(format!(
            "vertex order has {} entries, polytope has {} vertices",
            order.len(),
            p.num_vertices()
        )));
    }
    let delta = pulling_triangulation(&PolytopalComplex::of_polytope(lattice), order);
    if let Some(s) = first_non_unimodular(p, &delta)? {
        return Err(Error::verification(format!(
            "vertex order is not compressed: simplex {:?} is not unimodular",
            s.to_vec()
        )));
    }
    Ok(EhrhartSeries {
        numerator: delta.h_polynomial(),
        denom_exponent: p.dim() + 1,
    })
}

fn agree(a: EhrhartSeries, b: &EhrhartSeries) -> Result<EhrhartSeries> {
    if &a != b {
        return Err(Error::verification(format!(
            "counting gives h = {}, triangulation gives h = {}",
            a.numerator.coeff_string(),
            b.numerator.coeff_string()
        )));
    }
    Ok(a)
}

fn check_shape(series: &EhrhartSeries, denom: usize, d: usize) -> Result<()> {
    if series.denom_exponent != denom {
        return Err(Error::verification(format!(
            "denominator exponent {} differs from {denom}",
            series.denom_exponent
        )));
    }
    if series.numerator.degree() != Some(d) {
        return Err(Error::verification(format!(
            "numerator {} does not have degree d = {d}",
            series.numerator.coeff_string()
        )));
    }
    Ok(())
}

/// Generating function of `H_n(r)`, the number of `n x n` magic squares with
/// line sum `r`. Both routes are run and must agree; the denominator
/// exponent must be `(n-1)^2 + 1` and the numerator degree `n^2 - 3n + 2`.
pub fn magic_square_series(n: usize, budgets: &Budgets) -> Result<EhrhartSeries> {
    let b = birkhoff(n)?;
    let lattice = faces_of(&b.polytope, budgets.max_faces)?;
    let order = b.order_with_simplex(&b.cyclic_simplex())?;
    let tri = series_by_triangulation(&b.polytope, &lattice, &order)?;
    let series = agree(series_by_counting(&b.polytope, budgets)?, &tri)?;
    check_shape(&series, (n - 1) * (n - 1) + 1, n * n + 2 - 3 * n)?;
    Ok(series)
}

/// Generating function of `H_G(r)`, the number of magic labelings of index
/// `r` of a connected regular bipartite graph. The special simplex comes
/// from decomposing the all-ones labeling into perfect matchings.
pub fn magic_labeling_series(g: &MultiGraph, budgets: &Budgets) -> Result<EhrhartSeries> {
    let mp = matching_polytope(g, budgets)?;
    let p = &mp.polytope;
    let lattice = faces_of(p, budgets.max_faces)?;
    let sigma = ones_decomposition(p, budgets)?;
    let order = mp.order_with_simplex(&sigma)?;
    let tri = series_by_triangulation(p, &lattice, &order)?;
    let series = agree(series_by_counting(p, budgets)?, &tri)?;
    let m = g.num_edges() + 1 - g.num_vertices();
    check_shape(&series, m + 1, m + 1 - mp.degree)?;
    Ok(series)
}

/// Vertices of `P` with disjoint supports summing to the all-ones vector.
pub fn ones_decomposition(p: &IntegerPolytope, budgets: &Budgets) -> Result<Vec<usize>> {
    let ones = vec![1; p.ambient_dim()];
    match find_special_simplex(p, Some(&ones), budgets)? {
        SpecialSearch::Found(cert) => Ok(cert.vertex_indices),
        SpecialSearch::NotFound => Err(Error::verification(
            "the all-ones vector is not a sum of vertices forming a special simplex",
        )),
        SpecialSearch::Inconclusive(why) => Err(Error::verification(format!(
            "special simplex search inconclusive: {why}"
        ))),
    }
}

/// Number of maps `ρ: Ω -> {0, ..., r}` with `i < j` implying
/// `ρ(i) >= ρ(j)`, by direct backtracking over the elements.
pub fn order_reversing_count(p: &Poset, r: u64, budgets: &Budgets) -> Result<BigInt> {
    let m = p.m();
    // a topological order of 1..=m
    let mut order = Vec::with_capacity(m);
    let mut placed = vec![false; m + 1];
    placed[0] = true;
    while order.len() < m {
        let next = (1..=m)
            .find(|&j| !placed[j] && p.below(j).iter().all(|i| placed[i]))
            .expect("posets are acyclic");
        placed[next] = true;
        order.push(next);
    }
    let lower_covers: Vec<Vec<usize>> = (0..=m)
        .map(|j| {
            p.covers()
                .iter()
                .filter(|c| c.1 == j)
                .map(|c| c.0)
                .collect()
        })
        .collect();

    struct Walk<'a> {
        order: &'a [usize],
        lower_covers: &'a [Vec<usize>],
        rho: Vec<u64>,
        r: u64,
        nodes: u64,
        max_nodes: u64,
    }
    impl Walk<'_> {
        fn go(&mut self, k: usize) -> Result<u64> {
            self.nodes += 1;
            if self.nodes > self.max_nodes {
                return Err(Error::Budget {
                    what: "order-reversing map search nodes",
                    limit: self.max_nodes,
                });
            }
            if k == self.order.len() {
                return Ok(1);
            }
            let j = self.order[k];
            let hi = self.lower_covers[j]
                .iter()
                .map(|&i| self.rho[i])
                .min()
                .unwrap_or(self.r);
            let mut total = 0u64;
            for v in 0..=hi {
                self.rho[j] = v;
                total += self.go(k + 1)?;
            }
            Ok(total)
        }
    }
    if r > budgets.max_dilate {
        return Err(Error::Budget {
            what: "dilation factor",
            limit: budgets.max_dilate,
        });
    }
    let mut w = Walk {
        order: &order,
        lower_covers: &lower_covers,
        rho: vec![r; m + 1],
        r,
        nodes: 0,
        max_nodes: budgets.max_nodes,
    };
    Ok(BigInt::from(w.go(0)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_math::binomial;
    use crate::families::order_polytope;
    use crate::polytope::fixtures::*;

    fn poly(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn small_series() {
        let b = Budgets::default();
        let s = series_by_counting(&unit_square(), &b).unwrap();
        assert_eq!(s.numerator, poly(&[1, 1]));
        assert_eq!(s.denom_exponent, 3);
        let s = series_by_counting(&point(), &b).unwrap();
        assert_eq!((s.numerator, s.denom_exponent), (poly(&[1]), 1));
        let seg = birkhoff(2).unwrap();
        let s = series_by_counting(&seg.polytope, &b).unwrap();
        assert_eq!((s.numerator, s.denom_exponent), (poly(&[1]), 2));
    }

    #[test]
    fn triangulation_route_on_fixtures() {
        let b = Budgets::default();
        for p in [unit_square(), triangle(), prism(), point()] {
            let lattice = faces_of(&p, b.max_faces).unwrap();
            let tri =
                series_by_triangulation(&p, &lattice, &VertexOrder::identity(p.num_vertices()));
            assert_eq!(tri.unwrap(), series_by_counting(&p, &b).unwrap());
        }
    }

    #[test]
    fn non_compressed_order_is_rejected() {
        let r = rectangle(2, 1);
        let lattice = faces_of(&r, 1000).unwrap();
        let err = series_by_triangulation(&r, &lattice, &VertexOrder::identity(4)).unwrap_err();
        assert!(err.to_string().contains("not unimodular"), "{err}");
        // the pentagon has a non-unimodular pulling triangulation for this order
        let p = pentagon();
        let lattice = faces_of(&p, 1000).unwrap();
        assert!(series_by_triangulation(&p, &lattice, &VertexOrder::identity(5)).is_err());
    }

    #[test]
    fn birkhoff_counts() {
        let b = Budgets::default();
        let b3 = birkhoff(3).unwrap();
        let c: Vec<BigInt> = counts(&b3.polytope, 4, &b).unwrap();
        assert_eq!(c, [1, 6, 21, 55, 120].map(BigInt::from).to_vec());
        assert_eq!(
            count_points(&birkhoff(4).unwrap().polytope, 1, &b).unwrap(),
            BigInt::from(24)
        );
        for r in 0..5u64 {
            assert_eq!(
                count_points(&birkhoff(2).unwrap().polytope, r, &b).unwrap(),
                BigInt::from(r + 1)
            );
        }
    }

    #[test]
    fn magic_squares_small() {
        let b = Budgets::default();
        let s = magic_square_series(1, &b).unwrap();
        assert_eq!((s.numerator, s.denom_exponent), (poly(&[1]), 1));
        let s = magic_square_series(3, &b).unwrap();
        assert_eq!((s.numerator, s.denom_exponent), (poly(&[1, 1, 1]), 5));
    }

    #[test]
    fn magic_labelings_small() {
        let b = Budgets::default();
        let s = magic_labeling_series(&MultiGraph::cycle(6), &b).unwrap();
        assert_eq!((s.numerator, s.denom_exponent), (poly(&[1]), 2));
        let s = magic_labeling_series(&MultiGraph::complete_bipartite(3, 3), &b).unwrap();
        assert_eq!(s.numerator, poly(&[1, 1, 1]));
        assert!(
            magic_labeling_series(&MultiGraph::new(3, vec![(0, 1), (1, 2)]).unwrap(), &b).is_err()
        );
    }

    #[test]
    fn order_reversing_maps() {
        let b = Budgets::default();
        for m in 1..=5usize {
            for r in 0..=5u64 {
                let chain = order_reversing_count(&Poset::chain(m).unwrap(), r, &b).unwrap();
                assert_eq!(chain, binomial(r + m as u64, m as u64));
                let anti = order_reversing_count(&Poset::antichain(m).unwrap(), r, &b).unwrap();
                assert_eq!(anti, BigInt::from(r + 1).pow(m as u32));
            }
        }
        assert_eq!(
            order_reversing_count(&Poset::chain(2).unwrap(), 2, &b).unwrap(),
            BigInt::from(6)
        );
    }

    #[test]
    fn order_polytope_counts_are_order_reversing_maps() {
        let b = Budgets::default();
        for p in [
            Poset::grid(2, 2).unwrap(),
            Poset::antichain(3).unwrap(),
            Poset::chain(3).unwrap(),
        ] {
            let op = order_polytope(&p, &b).unwrap();
            for r in 0..=4 {
                assert_eq!(
                    count_points(&op.polytope, r, &b).unwrap(),
                    order_reversing_count(&p, r, &b).unwrap()
                );
            }
        }
        let op = order_polytope(&Poset::antichain(3).unwrap(), &b).unwrap();
        let s = series_by_counting(&op.polytope, &b).unwrap();
        assert_eq!((s.numerator, s.denom_exponent), (poly(&[1, 4, 1]), 4));
    }

    #[test]
    fn series_values_round_trip() {
        let b = Budgets::default();
        let p = prism();
        let s = series_by_counting(&p, &b).unwrap();
        assert_eq!(s.values(6), counts(&p, 5, &b).unwrap());
    }
}
