use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::linalg::determinant_i64;
use crate::error::{Error, Result};

/// Brute-force total unimodularity: every square submatrix has determinant
/// in `{-1, 0, 1}`.
///
/// Matrices with an entry outside `{-1, 0, 1}` are rejected immediately
/// (`Ok(false)`); matrices with `min(rows, cols) > max_size` are refused with a
/// budget error.
pub fn is_totally_unimodular(m: &[Vec<i64>], max_size: usize) -> Result<bool> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    if m.iter().any(|r| r.len() != cols) {
        return Err(Error::input("ragged matrix"));
    }
    if m.iter().flatten().any(|x| !(-1..=1).contains(x)) {
        return Ok(false);
    }
    let k_max = rows.min(cols);
    if k_max > max_size {
        return Err(Error::Budget {
            what: "total-unimodularity submatrix size",
            limit: max_size as u64,
        });
    }
    for k in 2..=k_max {
        let row_sets = subsets(rows, k);
        let col_sets = subsets(cols, k);
        for rs in &row_sets {
            for cs in &col_sets {
                let sub: Vec<Vec<i64>> = rs
                    .iter()
                    .map(|&i| cs.iter().map(|&j| m[i][j]).collect())
                    .collect();
                if determinant_i64(&sub).abs() > BigInt::one() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_tu() {
        let id = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        assert!(is_totally_unimodular(&id, 8).unwrap());
    }

    #[test]
    fn determinant_two_is_not_tu() {
        assert!(!is_totally_unimodular(&[vec![1, 1], vec![-1, 1]], 8).unwrap());
    }

    #[test]
    fn bipartite_incidence_is_tu() {
        // 4-cycle a-b-c-d-a; rows are vertices, columns edges
        let inc = vec![
            vec![1, 0, 0, 1],
            vec![1, 1, 0, 0],
            vec![0, 1, 1, 0],
            vec![0, 0, 1, 1],
        ];
        assert!(is_totally_unimodular(&inc, 8).unwrap());
        // triangle incidence has determinant 2
        let tri = vec![vec![1, 0, 1], vec![1, 1, 0], vec![0, 1, 1]];
        assert!(!is_totally_unimodular(&tri, 8).unwrap());
    }

    #[test]
    fn rejects_large_entries_and_sizes() {
        assert!(!is_totally_unimodular(&[vec![2]], 8).unwrap());
        let big = vec![vec![0i64; 9]; 9];
        assert!(matches!(
            is_totally_unimodular(&big, 8),
            Err(Error::Budget { .. })
        ));
    }
}
