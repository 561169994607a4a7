use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::IntegerPolytope;
use crate::error::{Error, Result};
use crate::exact_math::linalg::{determinant, saturated_row_lattice, CoordinateMap};

/// Integer basis of `W ∩ Z^q`, where `W` is the linear space parallel to the
/// affine hull of a polytope, together with an origin vertex.
#[derive(Clone, Debug)]
pub struct LatticeBasis {
    origin: Vec<i64>,
    coords: CoordinateMap,
}

impl LatticeBasis {
    pub fn origin(&self) -> &[i64] {
        &self.origin
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        self.coords.basis()
    }

    pub fn dim(&self) -> usize {
        self.coords.dim()
    }

    /// Integer coordinates of `x - origin` in the basis, or `None` if `x` is
    /// not a point of the affine lattice.
    pub fn coordinates(&self, x: &[i64]) -> Option<Vec<BigInt>> {
        let diff: Vec<BigInt> = x
            .iter()
            .zip(&self.origin)
            .map(|(&a, &b)| BigInt::from(a) - BigInt::from(b))
            .collect();
        if self.dim() == 0 {
            return diff.iter().all(|d| d == &BigInt::default()).then(Vec::new);
        }
        self.coords.integer_coordinates(&diff)
    }
}

/// Saturated lattice basis of the affine hull of `p`.
pub fn saturated_lattice_basis(p: &IntegerPolytope) -> LatticeBasis {
    let origin = p.vertex(0).to_vec();
    let q = p.ambient_dim();
    let diffs: Vec<Vec<BigInt>> = p.vertices()[1..]
        .iter()
        .map(|v| {
            v.iter()
                .zip(&origin)
                .map(|(&a, &b)| BigInt::from(a) - BigInt::from(b))
                .collect()
        })
        .collect();
    let basis = saturated_row_lattice(&diffs, q);
    debug_assert_eq!(basis.len(), p.dim());
    LatticeBasis {
        origin,
        coords: CoordinateMap::new(basis),
    }
}

/// Whether the `m + 1` integer points span a simplex of normalized volume 1
/// with respect to the lattice `basis`.
pub fn is_unimodular_simplex(points: &[Vec<i64>], basis: &LatticeBasis) -> Result<bool> {
    let m = basis.dim();
    if points.len() != m + 1 {
        return Err(Error::input(format!(
            "a simplex in dimension {m} needs {} points, got {}",
            m + 1,
            points.len()
        )));
    }
    let Some(base) = basis.coordinates(&points[0]) else {
        return Err(Error::input("simplex point outside the affine lattice"));
    };
    let mut rows = Vec::with_capacity(m);
    for p in &points[1..] {
        let Some(c) = basis.coordinates(p) else {
            return Err(Error::input("simplex point outside the affine lattice"));
        };
        rows.push(c.iter().zip(&base).map(|(a, b)| a - b).collect::<Vec<_>>());
    }
    Ok(m == 0 || determinant(&rows).abs().is_one())
}
