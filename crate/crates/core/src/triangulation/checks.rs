use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;

use super::{
    pulling_triangulation, simplicial_join, PolytopalComplex, SimplicialComplex, VertexOrder,
};
use crate::error::{Error, Result};
use crate::exact_math::linalg::determinant;
use crate::polytope::{
    is_unimodular_simplex, quotient_polytope, saturated_lattice_basis, FaceLattice,
    IntegerPolytope, LatticeBasis, VertexSet,
};

fn check_full_dimensional(p: &IntegerPolytope, delta: &SimplicialComplex) -> Result<()> {
    let m = p.dim();
    for s in delta.maximal_faces() {
        if s.len() != m + 1 {
            return Err(Error::input(format!(
                "simplex {s:?} has {} vertices, expected {}",
                s.len(),
                m + 1
            )));
        }
        if let Some(v) = s.iter().find(|&v| v >= p.num_vertices()) {
            return Err(Error::input(format!("simplex uses unknown vertex {v}")));
        }
    }
    Ok(())
}

fn points(p: &IntegerPolytope, s: &VertexSet) -> Vec<Vec<i64>> {
    s.iter().map(|v| p.vertex(v).to_vec()).collect()
}

/// First maximal simplex of `delta` that is not unimodular, if any.
pub fn first_non_unimodular(
    p: &IntegerPolytope,
    delta: &SimplicialComplex,
) -> Result<Option<VertexSet>> {
    check_full_dimensional(p, delta)?;
    let basis = saturated_lattice_basis(p);
    for s in delta.maximal_faces() {
        if !is_unimodular_simplex(&points(p, s), &basis)? {
            return Ok(Some(s.clone()));
        }
    }
    Ok(None)
}

/// Whether every maximal simplex of the triangulation `delta` of `p` is
/// unimodular.
pub fn is_unimodular_triangulation(p: &IntegerPolytope, delta: &SimplicialComplex) -> Result<bool> {
    Ok(first_non_unimodular(p, delta)?.is_none())
}

/// Whether the pulling triangulation for `order` is unimodular.
pub fn is_compressed_ordering(
    p: &IntegerPolytope,
    lattice: &FaceLattice,
    order: &VertexOrder,
) -> Result<bool> {
    check_order(p, order)?;
    let delta = pulling_triangulation(&PolytopalComplex::of_polytope(lattice), order);
    is_unimodular_triangulation(p, &delta)
}

fn check_order(p: &IntegerPolytope, order: &VertexOrder) -> Result<()> {
    if order.len() != p.num_vertices() {
        return Err(Error::input(format!(
            "vertex order has {} entries, polytope has {} vertices",
            order.len(),
            p.num_vertices()
        )));
    }
    Ok(())
}

fn simplex_volume(p: &IntegerPolytope, basis: &LatticeBasis, s: &VertexSet) -> BigInt {
    let pts = points(p, s);
    let base = basis.coordinates(&pts[0]).expect("vertex in lattice");
    let rows: Vec<Vec<BigInt>> = pts[1..]
        .iter()
        .map(|q| {
            let c = basis.coordinates(q).expect("vertex in lattice");
            c.iter().zip(&base).map(|(a, b)| a - b).collect()
        })
        .collect();
    determinant(&rows).abs()
}

/// Sum of the normalized volumes of the maximal simplices, measured in the
/// lattice of the affine hull.
pub fn normalized_volume(p: &IntegerPolytope, delta: &SimplicialComplex) -> Result<BigInt> {
    check_full_dimensional(p, delta)?;
    let basis = saturated_lattice_basis(p);
    Ok(delta
        .maximal_faces()
        .iter()
        .map(|s| simplex_volume(p, &basis, s))
        .sum())
}

/// Outcome of the join decomposition check.
#[derive(Clone, Debug, Serialize)]
pub struct JoinDecomposition {
    /// Pulling triangulation of the faces avoiding `σ`.
    #[serde(skip)]
    pub delta: SimplicialComplex,
    /// Pulling triangulation of the whole polytope.
    #[serde(skip)]
    pub delta_tau: SimplicialComplex,
    /// `Δ_τ` equals the join of the simplex `σ` with `Δ`.
    pub join_ok: bool,
    /// `Δ` triangulates the boundary of the quotient polytope, a sphere of
    /// dimension `m - n`.
    pub sphere_ok: bool,
    pub iso_ok: bool,
    /// Why the join check failed.
    pub join_witness: Option<String>,
    /// Why the sphere check failed.
    pub sphere_witness: Option<String>,
}

/// Checks that the pulling triangulation splits as `σ ∗ Δ`, with `Δ` the
/// pulling triangulation of the faces avoiding `σ`, and that those faces
/// form the boundary complex of the quotient polytope.
///
/// `order` must end with the vertices of `σ`, so that they are pulled first.
pub fn join_decomposition_check(
    p: &IntegerPolytope,
    lattice: &FaceLattice,
    sigma: &[usize],
    order: &VertexOrder,
) -> Result<JoinDecomposition> {
    check_order(p, order)?;
    let n = sigma.len();
    let sigma_set: VertexSet = sigma.iter().collect();
    if n == 0 || n > order.len() || order.tail(n).iter().collect::<VertexSet>() != sigma_set {
        return Err(Error::input(
            "vertex order must end with the simplex vertices",
        ));
    }
    let full = PolytopalComplex::of_polytope(lattice);
    let delta_tau = pulling_triangulation(&full, order);
    let rest = full.restrict(&sigma_set);
    let delta = if rest.is_empty() {
        SimplicialComplex::empty()
    } else {
        pulling_triangulation(&rest, order)
    };

    let mut join_witness = None;
    let mut sphere_witness = None;
    let joined = simplicial_join(&SimplicialComplex::simplex(sigma_set.clone()), &delta);
    let join_ok = match joined {
        Ok(j) if j == delta_tau => true,
        Ok(j) => {
            let odd = delta_tau
                .maximal_faces()
                .iter()
                .find(|s| !j.maximal_faces().contains(s))
                .or_else(|| {
                    j.maximal_faces()
                        .iter()
                        .find(|s| !delta_tau.maximal_faces().contains(s))
                });
            join_witness = Some(format!(
                "simplex {:?} is in only one of Δ_τ and σ ∗ Δ",
                odd.cloned().unwrap_or_default()
            ));
            false
        }
        Err(e) => {
            join_witness = Some(e.to_string());
            false
        }
    };

    let m = p.dim();
    let sphere_dim = m as isize - n as isize;
    let sphere_ok = if delta.dim() != sphere_dim || !delta.is_pure() {
        sphere_witness.get_or_insert(format!(
            "Δ has dimension {} (pure: {}), expected pure dimension {sphere_dim}",
            delta.dim(),
            delta.is_pure()
        ));
        false
    } else if let Some((ridge, c)) = delta
        .unpaired_ridges()
        .into_iter()
        .next()
        .filter(|_| sphere_dim >= 0)
    {
        sphere_witness.get_or_insert(format!("ridge {ridge:?} of Δ lies in {c} simplices"));
        false
    } else {
        match quotient_polytope(p, lattice, sigma) {
            Ok(q) => match &q.boundary_faces {
                Some(bf) => {
                    let ours: Vec<VertexSet> = {
                        let mut v: Vec<VertexSet> = rest
                            .faces()
                            .map(|id| lattice.face(id).vertices.clone())
                            .collect();
                        v.sort();
                        v
                    };
                    if &ours == bf {
                        true
                    } else {
                        sphere_witness.get_or_insert(
                            "faces avoiding σ differ from the quotient boundary".into(),
                        );
                        false
                    }
                }
                None => {
                    sphere_witness.get_or_insert("σ lies in the boundary of P".into());
                    false
                }
            },
            Err(e) => {
                sphere_witness.get_or_insert(e.to_string());
                false
            }
        }
    };

    Ok(JoinDecomposition {
        delta,
        delta_tau,
        join_ok,
        sphere_ok,
        iso_ok: join_ok && sphere_ok,
        join_witness,
        sphere_witness,
    })
}
