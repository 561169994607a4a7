//! Small exact linear algebra over the integers and rationals.
//!
//! Rank and determinant use fraction-free (Bareiss) elimination, first in
//! checked `i128` and falling back to big integers on overflow.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

trait Scalar: Clone + PartialEq + Sized {
    fn s_zero() -> Self;
    fn s_mul(&self, rhs: &Self) -> Option<Self>;
    fn s_sub(&self, rhs: &Self) -> Option<Self>;
    fn s_div_exact(&self, rhs: &Self) -> Option<Self>;
    fn s_neg(&self) -> Option<Self>;
    fn s_is_zero(&self) -> bool {
        *self == Self::s_zero()
    }
}

impl Scalar for i128 {
    fn s_zero() -> Self {
        0
    }
    fn s_mul(&self, rhs: &Self) -> Option<Self> {
        self.checked_mul(*rhs)
    }
    fn s_sub(&self, rhs: &Self) -> Option<Self> {
        self.checked_sub(*rhs)
    }
    fn s_div_exact(&self, rhs: &Self) -> Option<Self> {
        self.checked_div(*rhs)
    }
    fn s_neg(&self) -> Option<Self> {
        self.checked_neg()
    }
}

impl Scalar for BigInt {
    fn s_zero() -> Self {
        Zero::zero()
    }
    fn s_mul(&self, rhs: &Self) -> Option<Self> {
        Some(self * rhs)
    }
    fn s_sub(&self, rhs: &Self) -> Option<Self> {
        Some(self - rhs)
    }
    fn s_div_exact(&self, rhs: &Self) -> Option<Self> {
        Some(self / rhs)
    }
    fn s_neg(&self) -> Option<Self> {
        Some(-self)
    }
}

/// Row-echelon Bareiss elimination. Returns `(rank, signed last pivot)`;
/// for a square full-rank matrix the second value is the determinant.
/// `None` signals overflow of the scalar type.
fn bareiss<T: Scalar>(mut a: Vec<Vec<T>>) -> Option<(usize, T)> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev: Option<T> = None;
    let mut r = 0;
    let mut negate = false;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].s_is_zero()) else {
            continue;
        };
        if p != r {
            a.swap(p, r);
            negate = !negate;
        }
        for i in r + 1..rows {
            for j in c + 1..cols {
                let x = a[r][c].s_mul(&a[i][j])?.s_sub(&a[i][c].s_mul(&a[r][j])?)?;
                a[i][j] = match &prev {
                    Some(pv) => x.s_div_exact(pv)?,
                    None => x,
                };
            }
            a[i][c] = T::s_zero();
        }
        prev = Some(a[r][c].clone());
        r += 1;
    }
    let last = match prev {
        Some(p) if negate => p.s_neg()?,
        Some(p) => p,
        None => T::s_zero(),
    };
    Some((r, last))
}

fn to_i128(rows: &[Vec<BigInt>]) -> Option<Vec<Vec<i128>>> {
    rows.iter()
        .map(|r| r.iter().map(ToPrimitive::to_i128).collect())
        .collect()
}

fn i64_rows(rows: &[Vec<i64>]) -> Vec<Vec<i128>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect()
}

fn big_rows_from_i64(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

/// Rank over the rationals of a list of integer row vectors.
pub fn rank(rows: &[Vec<BigInt>]) -> usize {
    if let Some(small) = to_i128(rows) {
        if let Some((r, _)) = bareiss(small) {
            return r;
        }
    }
    bareiss(rows.to_vec())
        .expect("big integers do not overflow")
        .0
}

/// Rank of `i64` rows.
pub fn rank_i64(rows: &[Vec<i64>]) -> usize {
    if let Some((r, _)) = bareiss(i64_rows(rows)) {
        return r;
    }
    bareiss(big_rows_from_i64(rows))
        .expect("big integers do not overflow")
        .0
}

/// Determinant of a square integer matrix.
pub fn determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    assert!(
        m.iter().all(|r| r.len() == n),
        "determinant of a non-square matrix"
    );
    if n == 0 {
        return BigInt::one();
    }
    let finish = |(r, last): (usize, BigInt)| if r < n { BigInt::zero() } else { last };
    if let Some(small) = to_i128(m) {
        if let Some((r, last)) = bareiss(small) {
            return finish((r, BigInt::from(last)));
        }
    }
    finish(bareiss(m.to_vec()).expect("big integers do not overflow"))
}

pub fn determinant_i64(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    assert!(
        m.iter().all(|r| r.len() == n),
        "determinant of a non-square matrix"
    );
    if n == 0 {
        return BigInt::one();
    }
    if let Some((r, last)) = bareiss(i64_rows(m)) {
        return if r < n {
            BigInt::zero()
        } else {
            BigInt::from(last)
        };
    }
    determinant(&big_rows_from_i64(m))
}

/// Lattice basis of `{x in Z^cols : A x = 0}` for the integer matrix `A`
/// given by rows. The basis is saturated: it comes from the trailing columns
/// of a unimodular transform putting `A` into column echelon form.
pub fn integer_kernel(rows: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    // u[j] is column j of the unimodular transform, stored as a vector.
    let mut u: Vec<Vec<BigInt>> = (0..cols)
        .map(|j| {
            let mut e = vec![BigInt::zero(); cols];
            e[j] = BigInt::one();
            e
        })
        .collect();

    let swap_cols = |a: &mut Vec<Vec<BigInt>>, u: &mut Vec<Vec<BigInt>>, x: usize, y: usize| {
        for row in a.iter_mut() {
            row.swap(x, y);
        }
        u.swap(x, y);
    };
    // column[y] -= q * column[x]
    let reduce =
        |a: &mut Vec<Vec<BigInt>>, u: &mut Vec<Vec<BigInt>>, x: usize, y: usize, q: &BigInt| {
            for row in a.iter_mut() {
                let t = &row[x] * q;
                row[y] -= t;
            }
            let ux = u[x].clone();
            for (dst, src) in u[y].iter_mut().zip(ux.iter()) {
                *dst -= src * q;
            }
        };

    let mut pivot = 0;
    for i in 0..a.len() {
        if pivot == cols {
            break;
        }
        loop {
            // smallest nonzero |a[i][j]| among j >= pivot
            let best = (pivot..cols)
                .filter(|&j| !a[i][j].is_zero())
                .min_by(|&x, &y| a[i][x].abs().cmp(&a[i][y].abs()));
            let Some(best) = best else { break };
            swap_cols(&mut a, &mut u, pivot, best);
            let mut done = true;
            for j in pivot + 1..cols {
                if a[i][j].is_zero() {
                    continue;
                }
                let q = a[i][j].div_floor(&a[i][pivot]);
                reduce(&mut a, &mut u, pivot, j, &q);
                if !a[i][j].is_zero() {
                    done = false;
                }
            }
            if done {
                pivot += 1;
                break;
            }
        }
    }
    u.split_off(pivot)
}

/// Saturated integer basis of the rational row space of `rows` intersected
/// with `Z^cols`.
pub fn saturated_row_lattice(rows: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    let kernel = integer_kernel(rows, cols);
    integer_kernel(&kernel, cols)
}

/// Solves `x = sum_i c_i basis[i]` against a fixed basis of independent rows.
#[derive(Clone, Debug)]
pub struct CoordinateMap {
    basis: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
    // inverse of basis restricted to pivot columns, times `det`
    adjugate: Vec<Vec<BigInt>>,
    det: BigInt,
}

impl CoordinateMap {
    /// Panics if the rows are linearly dependent.
    pub fn new(basis: Vec<Vec<BigInt>>) -> Self {
        let k = basis.len();
        let cols = basis.first().map_or(0, Vec::len);
        // choose pivot columns greedily so that basis[:, pivots] is invertible
        let mut pivots = Vec::with_capacity(k);
        for c in 0..cols {
            if pivots.len() == k {
                break;
            }
            let mut trial = pivots.clone();
            trial.push(c);
            let sub: Vec<Vec<BigInt>> = basis
                .iter()
                .map(|r| trial.iter().map(|&j| r[j].clone()).collect())
                .collect();
            // columns as rows
            let t: Vec<Vec<BigInt>> = (0..trial.len())
                .map(|j| sub.iter().map(|r| r[j].clone()).collect())
                .collect();
            if rank(&t) == trial.len() {
                pivots = trial;
            }
        }
        assert_eq!(pivots.len(), k, "coordinate basis is not independent");
        let square: Vec<Vec<BigInt>> = basis
            .iter()
            .map(|r| pivots.iter().map(|&j| r[j].clone()).collect())
            .collect();
        let (adjugate, det) = adjugate(&square);
        CoordinateMap {
            basis,
            pivots,
            adjugate,
            det,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    /// Rational coordinates of `x`, or `None` if `x` is outside the span.
    pub fn rational_coordinates(&self, x: &[BigInt]) -> Option<Vec<BigRational>> {
        let k = self.basis.len();
        // c * B_J = x_J  =>  c = x_J * B_J^{-1} = x_J * adj / det
        let numer: Vec<BigInt> = (0..k)
            .map(|j| {
                self.pivots
                    .iter()
                    .enumerate()
                    .map(|(i, &p)| &x[p] * &self.adjugate[i][j])
                    .sum()
            })
            .collect();
        // verify c * B == x on all coordinates: sum_i numer_i B_i == det * x
        for (col, xc) in x.iter().enumerate() {
            let lhs: BigInt = numer
                .iter()
                .zip(self.basis.iter())
                .map(|(n, row)| n * &row[col])
                .sum();
            if lhs != &self.det * xc {
                return None;
            }
        }
        Some(
            numer
                .into_iter()
                .map(|n| BigRational::new(n, self.det.clone()))
                .collect(),
        )
    }

    /// Integer coordinates of `x`, or `None` if `x` is outside the lattice.
    pub fn integer_coordinates(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        self.rational_coordinates(x)?
            .into_iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }
}

/// Returns `(A, det M)` with `M * A = det(M) * I`.
fn adjugate(m: &[Vec<BigInt>]) -> (Vec<Vec<BigInt>>, BigInt) {
    let n = m.len();
    let det = determinant(m);
    assert!(!det.is_zero(), "singular matrix has no adjugate");
    // Gauss-Jordan over the rationals, then scale by det.
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<BigRational> =
                row.iter().cloned().map(BigRational::from_integer).collect();
            r.extend((0..n).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero()).expect("nonsingular");
        a.swap(p, c);
        let inv = a[c][c].recip();
        for x in a[c].iter_mut() {
            *x *= &inv;
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let pivot_row = a[c].clone();
                for (x, y) in a[i].iter_mut().zip(pivot_row.iter()) {
                    *x -= &f * y;
                }
            }
        }
    }
    let det_r = BigRational::from_integer(det.clone());
    let inv: Vec<Vec<BigInt>> = a
        .into_iter()
        .map(|row| {
            row[n..]
                .iter()
                .map(|x| {
                    let s = x * &det_r;
                    debug_assert!(s.is_integer());
                    s.to_integer()
                })
                .collect()
        })
        .collect();
    (inv, det)
}

/// Null space over the rationals of the rows, as a list of rational vectors.
pub fn rational_kernel(rows: &[Vec<BigRational>], cols: usize) -> Vec<Vec<BigRational>> {
    let mut a: Vec<Vec<BigRational>> = rows.to_vec();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let pr = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(pr.iter()) {
                    *x -= &f * y;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); cols];
            v[f] = BigRational::one();
            for (row, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = -a[row][f].clone();
            }
            v
        })
        .collect()
}

/// Clears denominators of a rational vector (multiplies by the lcm).
pub fn clear_denominators(v: &[BigRational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    v.iter()
        .map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer())
        .collect()
}
