use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{affine_rank, saturated_lattice_basis, FaceLattice, IntegerPolytope, VertexSet};
use crate::error::{Error, Result};
use crate::exact_math::linalg::{rank, rational_kernel, CoordinateMap};

/// Image of a polytope under a linear surjection whose kernel is spanned by
/// the edge directions of a simplex `σ`.
#[derive(Clone, Debug)]
pub struct QuotientPolytope {
    pub sigma: Vec<usize>,
    pub dim: usize,
    /// Image of every vertex of `P`, in coordinates of a complement of the
    /// kernel.
    pub images: Vec<Vec<BigRational>>,
    /// For each vertex of `P`, the index of its image among the vertices of
    /// `Q`; `None` for the vertices of `σ`, which collapse to one point.
    pub vertex_map: Vec<Option<usize>>,
    /// Vertices of `Q`, listed by the vertex of `P` they come from.
    pub vertices: Vec<usize>,
    /// Facets of `Q` as sets of `P`-vertex indices, when the boundary
    /// comparison ran (it needs `σ` off the boundary of `P`).
    pub facets: Option<Vec<VertexSet>>,
    /// All proper faces of `Q` as sets of `P`-vertex indices, sorted.
    pub boundary_faces: Option<Vec<VertexSet>>,
}

fn sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn rational_rank(rows: &[Vec<BigRational>], cols: usize) -> usize {
    if rows.is_empty() {
        return 0;
    }
    cols - rational_kernel(rows, cols).len()
}

fn affine_rank_q(points: &[&Vec<BigRational>], cols: usize) -> usize {
    match points.split_first() {
        None => 0,
        Some((first, rest)) => {
            let rows: Vec<Vec<BigRational>> = rest.iter().map(|p| sub(p, first)).collect();
            rational_rank(&rows, cols)
        }
    }
}

/// Projects `P` along the affine span of the simplex `σ` and, when `σ` is
/// not contained in a facet, checks that the proper faces of the image
/// correspond exactly to the faces of `P` avoiding `σ`.
pub fn quotient_polytope(
    p: &IntegerPolytope,
    lattice: &FaceLattice,
    sigma: &[usize],
) -> Result<QuotientPolytope> {
    let n = sigma.len();
    if n == 0 || sigma.iter().any(|&v| v >= p.num_vertices()) {
        return Err(Error::input(
            "quotient needs a nonempty list of valid vertex indices",
        ));
    }
    let sigma_set: VertexSet = sigma.iter().collect();
    if sigma_set.len() != n || affine_rank(sigma.iter().map(|&v| &p.vertices()[v])) + 1 != n {
        return Err(Error::input(format!(
            "vertices {sigma:?} are not affinely independent, so the dimension would not drop by {}",
            n - 1
        )));
    }
    let m = p.dim();
    let d = m + 1 - n;

    // integer coordinates of every vertex in the affine lattice of P
    let lb = saturated_lattice_basis(p);
    let coords: Vec<Vec<BigInt>> = p
        .vertices()
        .iter()
        .map(|v| {
            lb.coordinates(v)
                .expect("vertices lie in their own lattice")
        })
        .collect();
    // basis of Q^m: kernel directions first, then unit vectors completing it
    let base = &coords[sigma[0]];
    let mut basis: Vec<Vec<BigInt>> = sigma[1..]
        .iter()
        .map(|&v| coords[v].iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    for j in 0..m {
        if basis.len() == m {
            break;
        }
        let mut e = vec![BigInt::zero(); m];
        e[j] = BigInt::one();
        basis.push(e);
        if rank(&basis) < basis.len() {
            basis.pop();
        }
    }
    let images: Vec<Vec<BigRational>> = if m == 0 {
        vec![Vec::new(); p.num_vertices()]
    } else {
        let cm = CoordinateMap::new(basis);
        coords
            .iter()
            .map(|c| {
                let full = cm.rational_coordinates(c).expect("basis spans Q^m");
                full[n - 1..].to_vec()
            })
            .collect()
    };

    let mut vertex_map = vec![None; p.num_vertices()];
    let mut vertices = Vec::new();
    let mut seen: HashMap<&Vec<BigRational>, usize> = HashMap::new();
    let sigma_image = &images[sigma[0]];
    for v in 0..p.num_vertices() {
        if sigma_set.contains(v) {
            continue;
        }
        if &images[v] == sigma_image {
            return Err(Error::verification(format!(
                "vertex {v} projects onto the image of the simplex"
            )));
        }
        if let Some(&u) = seen.get(&images[v]) {
            return Err(Error::verification(format!(
                "vertices {} and {v} have the same image",
                vertices[u]
            )));
        }
        seen.insert(&images[v], vertices.len());
        vertex_map[v] = Some(vertices.len());
        vertices.push(v);
    }

    let in_boundary = p.incidence().iter().any(|t| sigma_set.is_subset(t));
    let (facets, boundary_faces) = if in_boundary {
        (None, None)
    } else {
        let (f, b) = boundary_check(lattice, &sigma_set, &images, d)?;
        (Some(f), Some(b))
    };

    Ok(QuotientPolytope {
        sigma: sigma.to_vec(),
        dim: d,
        images,
        vertex_map,
        vertices,
        facets,
        boundary_faces,
    })
}

fn boundary_check(
    lattice: &FaceLattice,
    sigma: &VertexSet,
    images: &[Vec<BigRational>],
    d: usize,
) -> Result<(Vec<VertexSet>, Vec<VertexSet>)> {
    let fail = |msg: String| Err(Error::verification(format!("quotient boundary: {msg}")));
    let avoiding: Vec<usize> = (0..lattice.len())
        .filter(|&id| lattice.face(id).vertices.is_disjoint(sigma))
        .collect();
    let avoiding_sets: BTreeSet<VertexSet> = avoiding
        .iter()
        .map(|&id| lattice.face(id).vertices.clone())
        .collect();
    let avoids = |id: usize| lattice.face(id).vertices.is_disjoint(sigma);
    let candidates: Vec<usize> = avoiding
        .iter()
        .copied()
        .filter(|&id| !lattice.cofacets_of(id).iter().any(|&g| avoids(g)))
        .collect();

    if d == 0 {
        if !candidates.is_empty() {
            return fail("a point quotient cannot have faces".into());
        }
        return Ok((Vec::new(), Vec::new()));
    }

    let sigma_image = &images[sigma.first().expect("nonempty")];
    let mut facets = Vec::new();
    for &id in &candidates {
        let face = lattice.face(id);
        let pts: Vec<&Vec<BigRational>> = face.vertices.iter().map(|v| &images[v]).collect();
        if face.dim + 1 != d || affine_rank_q(&pts, d) + 1 != d {
            return fail(format!(
                "maximal face {:?} avoiding the simplex does not project to a facet",
                face.vertices
            ));
        }
        let rows: Vec<Vec<BigRational>> = pts[1..].iter().map(|q| sub(q, pts[0])).collect();
        let normal = if rows.is_empty() {
            vec![BigRational::one()]
        } else {
            rational_kernel(&rows, d).remove(0)
        };
        let height = |x: &Vec<BigRational>| -> BigRational {
            normal
                .iter()
                .zip(x)
                .map(|(a, b)| a * b)
                .sum::<BigRational>()
        };
        let h0 = height(pts[0]);
        let sigma_side = (height(sigma_image) - &h0).cmp(&BigRational::zero());
        if sigma_side.is_eq() {
            return fail(format!(
                "the simplex image lies on the hyperplane of {:?}",
                face.vertices
            ));
        }
        let mut tight = VertexSet::new();
        for (v, img) in images.iter().enumerate() {
            let side = (height(img) - &h0).cmp(&BigRational::zero());
            if side.is_eq() {
                tight.insert(v);
            } else if side != sigma_side {
                return fail(format!(
                    "vertex {v} lies beyond the hyperplane of {:?}",
                    face.vertices
                ));
            }
        }
        if tight != face.vertices {
            return fail(format!(
                "hyperplane of {:?} is tight on {:?}",
                face.vertices, tight
            ));
        }
        facets.push(face.vertices.clone());
    }

    // Every ridge must lie in exactly two facets; with a connected facet
    // graph this forces the facet list to be complete.
    if d == 1 {
        if facets.len() != 2 {
            return fail(format!(
                "a segment needs 2 endpoints, found {}",
                facets.len()
            ));
        }
    } else {
        if facets.is_empty() {
            return fail("no facets found".into());
        }
        for &id in &candidates {
            for &r in lattice.facets_of(id) {
                let ridge = &lattice.face(r).vertices;
                let c = facets.iter().filter(|f| ridge.is_subset(f)).count();
                if c != 2 {
                    return fail(format!("ridge {ridge:?} lies in {c} facets"));
                }
            }
        }
    }

    let mut faces: BTreeSet<VertexSet> = facets.iter().cloned().collect();
    let mut frontier: Vec<VertexSet> = facets.clone();
    while let Some(f) = frontier.pop() {
        for g in &facets {
            let meet = f.intersection(g);
            if !meet.is_empty() && faces.insert(meet.clone()) {
                frontier.push(meet);
            }
        }
    }
    if faces != avoiding_sets {
        let extra = faces.symmetric_difference(&avoiding_sets).next().cloned();
        return fail(format!(
            "face posets differ, e.g. at {:?}",
            extra.unwrap_or_default()
        ));
    }
    Ok((facets, faces.into_iter().collect()))
}
