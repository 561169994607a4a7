use crate::error::{Error, Result};
use crate::polytope::{Equality, Inequality, IntegerPolytope};
use crate::triangulation::VertexOrder;

/// Birkhoff polytope `B_n` of doubly stochastic `n x n` matrices, in
/// `R^{n x n}` with row-major coordinates.
#[derive(Clone, Debug)]
pub struct Birkhoff {
    pub n: usize,
    pub polytope: IntegerPolytope,
    /// Permutation of each vertex: row `i` has its 1 in column `perm[i]`.
    pub permutations: Vec<Vec<usize>>,
}

/// Largest `n` accepted by [`birkhoff`].
pub const MAX_BIRKHOFF_N: usize = 7;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for j in 0..n {
            if !used[j] {
                used[j] = true;
                cur.push(j);
                rec(n, cur, used, out);
                cur.pop();
                used[j] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn matrix(perm: &[usize]) -> Vec<i64> {
    let n = perm.len();
    let mut v = vec![0; n * n];
    for (i, &j) in perm.iter().enumerate() {
        v[i * n + j] = 1;
    }
    v
}

/// Builds `B_n`: vertices are the `n!` permutation matrices sorted
/// lexicographically, facets the nonredundant `x_ij >= 0`, equalities the
/// row and column sums.
pub fn birkhoff(n: usize) -> Result<Birkhoff> {
    if n == 0 || n > MAX_BIRKHOFF_N {
        return Err(Error::input(format!(
            "Birkhoff polytope size must be in 1..={MAX_BIRKHOFF_N}, got {n}"
        )));
    }
    let mut perms = permutations(n);
    perms.sort_by_key(|p| matrix(p));
    let vertices: Vec<Vec<i64>> = perms.iter().map(|p| matrix(p)).collect();
    let q = n * n;
    let unit = |k: usize, c: i64| {
        let mut v = vec![0; q];
        v[k] = c;
        v
    };
    let candidates = (0..q)
        .map(|k| Inequality {
            normal: unit(k, -1),
            offset: 0,
        })
        .collect();
    let mut equalities = Vec::new();
    for i in 0..n {
        let mut row = vec![0; q];
        let mut col = vec![0; q];
        for j in 0..n {
            row[i * n + j] = 1;
            col[j * n + i] = 1;
        }
        equalities.push(Equality {
            normal: row,
            offset: 1,
        });
        equalities.push(Equality {
            normal: col,
            offset: 1,
        });
    }
    let polytope = IntegerPolytope::from_candidates(q, vertices, candidates, equalities)?;
    Ok(Birkhoff {
        n,
        polytope,
        permutations: perms,
    })
}

impl Birkhoff {
    pub fn vertex_of_permutation(&self, perm: &[usize]) -> Option<usize> {
        self.permutations.iter().position(|p| p == perm)
    }

    /// Indices of the powers `c^0, c^1, ..., c^{n-1}` of the cycle
    /// `c = (1 2 ... n)`.
    pub fn cyclic_simplex(&self) -> Vec<usize> {
        let n = self.n;
        (0..n)
            .map(|k| {
                let perm: Vec<usize> = (0..n).map(|i| (i + k) % n).collect();
                self.vertex_of_permutation(&perm)
                    .expect("every permutation is a vertex")
            })
            .collect()
    }

    /// Lexicographic order with `sigma = (v_1, ..., v_n)` moved to the end
    /// as `(..., v_n, ..., v_1)`, so that `v_1` is pulled first.
    pub fn order_with_simplex(&self, sigma: &[usize]) -> Result<VertexOrder> {
        let base: Vec<usize> = (0..self.permutations.len()).collect();
        let tail: Vec<usize> = sigma.iter().rev().copied().collect();
        VertexOrder::with_tail(&base, &tail)
    }
}

/// Indices of the cyclic simplex in `B_n`.
pub fn birkhoff_cyclic_simplex(b: &Birkhoff) -> Vec<usize> {
    b.cyclic_simplex()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::verify_special_simplex;

    #[test]
    fn dimensions_and_facets() {
        let b1 = birkhoff(1).unwrap();
        assert_eq!(
            (
                b1.polytope.num_vertices(),
                b1.polytope.dim(),
                b1.polytope.num_facets()
            ),
            (1, 0, 0)
        );
        let b2 = birkhoff(2).unwrap();
        assert_eq!(
            (
                b2.polytope.num_vertices(),
                b2.polytope.dim(),
                b2.polytope.num_facets()
            ),
            (2, 1, 2)
        );
        let b3 = birkhoff(3).unwrap();
        assert_eq!(
            (
                b3.polytope.num_vertices(),
                b3.polytope.dim(),
                b3.polytope.num_facets()
            ),
            (6, 4, 9)
        );
        let b4 = birkhoff(4).unwrap();
        assert_eq!(
            (
                b4.polytope.num_vertices(),
                b4.polytope.dim(),
                b4.polytope.num_facets()
            ),
            (24, 9, 16)
        );
        assert!(birkhoff(0).is_err());
    }

    #[test]
    fn vertices_are_lexicographic() {
        let b = birkhoff(3).unwrap();
        let v = b.polytope.vertices();
        assert!(v.windows(2).all(|w| w[0] < w[1]));
        // row-major, the smallest vector puts row 0's one in the last column
        assert_eq!(b.permutations[0], vec![2, 1, 0]);
    }

    #[test]
    fn cyclic_simplices_are_special() {
        for n in 1..=4 {
            let b = birkhoff(n).unwrap();
            let sigma = b.cyclic_simplex();
            assert_eq!(sigma.len(), n);
            let cert = verify_special_simplex(&b.polytope, &sigma).unwrap();
            assert!(cert.per_facet_counts.iter().all(|&c| c == n - 1));
        }
        let b3 = birkhoff(3).unwrap();
        let id = b3.vertex_of_permutation(&[0, 1, 2]).unwrap();
        let swap = b3.vertex_of_permutation(&[1, 0, 2]).unwrap();
        assert!(verify_special_simplex(&b3.polytope, &[id, swap]).is_err());
    }

    #[test]
    fn order_ends_with_identity() {
        let b = birkhoff(3).unwrap();
        let sigma = b.cyclic_simplex();
        let o = b.order_with_simplex(&sigma).unwrap();
        assert_eq!(
            *o.sequence().last().unwrap(),
            b.vertex_of_permutation(&[0, 1, 2]).unwrap()
        );
    }
}
