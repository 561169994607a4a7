//! Exact integer machinery: binomials, Macaulay representations, M-vectors,
//! g-theorem verdicts, f-to-h conversion and the values-to-numerator
//! transform for rational generating functions.

mod decimal;
pub mod linalg;
mod poly;
mod tu;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

pub use poly::IntPolynomial;
pub use tu::is_totally_unimodular;

use crate::error::{Error, Result};

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc *= n - j;
        acc /= j + 1;
    }
    acc
}

fn binomial_big(n: &BigInt, k: usize) -> BigInt {
    if n.is_negative() || *n < BigInt::from(k) {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for j in 0..k {
        acc *= n - j;
        acc /= j + 1;
    }
    acc
}

/// Greedy Macaulay representation `n = C(k_i, i) + C(k_{i-1}, i-1) + ... + C(k_j, j)`
/// with `k_i > k_{i-1} > ... > k_j >= j >= 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MacaulayRep {
    pub i: usize,
    /// Pairs `(k_s, s)` with `s` decreasing from `i`.
    pub terms: Vec<(BigInt, usize)>,
}

impl MacaulayRep {
    /// Sum of `C(k_s, s)` over all terms.
    pub fn value(&self) -> BigInt {
        self.terms.iter().map(|(k, s)| binomial_big(k, *s)).sum()
    }
}

/// Largest `k` with `C(k, s) <= n`, for `n >= 1`, `s >= 1`.
fn greedy_top(n: &BigInt, s: usize) -> BigInt {
    let mut lo = BigInt::from(s); // C(s, s) = 1 <= n
    let mut step = BigInt::one();
    let mut hi = &lo + &step;
    while binomial_big(&hi, s) <= *n {
        lo = hi.clone();
        step *= 2;
        hi = &lo + &step;
    }
    // invariant: C(lo, s) <= n < C(hi, s)
    while &hi - &lo > BigInt::one() {
        let mid: BigInt = (&lo + &hi) / 2;
        if binomial_big(&mid, s) <= *n {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// The `i`-th Macaulay representation of `n`. Both arguments must be positive;
/// `0^{(i)}` is handled by [`macaulay_bound`] directly.
pub fn macaulay_rep(n: &BigInt, i: usize) -> Result<MacaulayRep> {
    if !n.is_positive() {
        return Err(Error::input("macaulay_rep needs n >= 1"));
    }
    if i == 0 {
        return Err(Error::input("macaulay_rep needs i >= 1"));
    }
    let mut rest = n.clone();
    let mut terms = Vec::new();
    let mut s = i;
    while rest.is_positive() {
        debug_assert!(s >= 1, "greedy decomposition ran past s = 1");
        let k = greedy_top(&rest, s);
        rest -= binomial_big(&k, s);
        terms.push((k, s));
        s -= 1;
    }
    Ok(MacaulayRep { i, terms })
}

/// `n^{(i)}`: the upper bound Macaulay's theorem puts on `g_{i+1}` given `g_i = n`.
pub fn macaulay_bound(n: &BigInt, i: usize) -> BigInt {
    assert!(i >= 1, "macaulay_bound needs i >= 1");
    if n.is_zero() {
        return BigInt::zero();
    }
    let rep = macaulay_rep(n, i).expect("positive n and i");
    rep.terms
        .iter()
        .map(|(k, s)| binomial_big(&(k + 1u32), s + 1))
        .sum()
}

/// Checks the M-vector conditions. `Err(idx)` names the first violated entry;
/// an empty sequence fails at index 0.
pub fn is_m_vector(g: &[BigInt]) -> std::result::Result<(), usize> {
    match g.first() {
        Some(g0) if g0.is_one() => {}
        _ => return Err(0),
    }
    for (idx, x) in g.iter().enumerate().skip(1) {
        if x.is_negative() {
            return Err(idx);
        }
        if idx >= 2 && *x > macaulay_bound(&g[idx - 1], idx - 1) {
            return Err(idx);
        }
    }
    Ok(())
}

/// Symmetric sequence of nonnegative integers `(h_0, ..., h_d)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HVector {
    #[serde(with = "decimal::vec")]
    entries: Vec<BigInt>,
}

impl HVector {
    pub fn new(entries: Vec<BigInt>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::input("h-vector needs at least h_0"));
        }
        if let Some(i) = entries.iter().position(Signed::is_negative) {
            return Err(Error::input(format!("h-vector entry h_{i} is negative")));
        }
        Ok(HVector { entries })
    }

    pub fn from_i64s(entries: &[i64]) -> Result<Self> {
        Self::new(entries.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// Takes the coefficients `h_0..h_d` of a polynomial padded to length `d + 1`.
    pub fn from_polynomial(p: &IntPolynomial, d: usize) -> Result<Self> {
        if p.degree().is_some_and(|deg| deg > d) {
            return Err(Error::input(format!(
                "polynomial of degree {} does not fit d = {d}",
                p.degree().unwrap_or(0)
            )));
        }
        Self::new((0..=d).map(|i| p.coeff(i)).collect())
    }

    pub fn d(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn to_polynomial(&self) -> IntPolynomial {
        IntPolynomial::new(self.entries.clone())
    }

    /// `(h_0, h_1 - h_0, ..., h_{floor(d/2)} - h_{floor(d/2) - 1})`.
    pub fn g_vector(&self) -> Vec<BigInt> {
        let half = self.d() / 2;
        (0..=half)
            .map(|i| {
                if i == 0 {
                    self.entries[0].clone()
                } else {
                    &self.entries[i] - &self.entries[i - 1]
                }
            })
            .collect()
    }
}

/// Outcome of the g-theorem conditions on an h-vector, one flag per condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GTheoremVerdict {
    pub symmetric: bool,
    pub g_is_m_vector: bool,
    pub unimodal: bool,
    #[serde(with = "decimal::vec")]
    pub g_vector: Vec<BigInt>,
    /// First `i` with `h_i != h_{d-i}`.
    pub first_asymmetry: Option<usize>,
    /// First index of the g-vector violating the M-vector conditions.
    pub m_vector_violation: Option<usize>,
    /// First `i <= floor(d/2)` with `h_{i-1} > h_i`.
    pub first_descent: Option<usize>,
}

impl GTheoremVerdict {
    pub fn all_pass(&self) -> bool {
        self.symmetric && self.g_is_m_vector && self.unimodal
    }
}

pub fn g_theorem_check(h: &HVector) -> GTheoremVerdict {
    let e = h.entries();
    let d = h.d();
    let first_asymmetry = (0..=d).find(|&i| e[i] != e[d - i]);
    let g_vector = h.g_vector();
    let m_vector_violation = is_m_vector(&g_vector).err();
    let first_descent = (1..=d / 2).find(|&i| e[i - 1] > e[i]);
    GTheoremVerdict {
        symmetric: first_asymmetry.is_none(),
        g_is_m_vector: m_vector_violation.is_none(),
        unimodal: first_descent.is_none(),
        g_vector,
        first_asymmetry,
        m_vector_violation,
        first_descent,
    }
}

/// Raw h-numbers from `f = (f_0, ..., f_{d-1})` with `f_{-1} = 1`; entries may
/// be negative for complexes that are not Cohen-Macaulay.
pub(crate) fn h_numbers(f: &[BigInt], d: usize) -> Vec<BigInt> {
    let face = |i: usize| -> BigInt {
        // f_{i-1}
        if i == 0 {
            BigInt::one()
        } else {
            f[i - 1].clone()
        }
    };
    (0..=d)
        .map(|k| {
            let mut acc = BigInt::zero();
            for i in 0..=k {
                let term = binomial((d - i) as u64, (k - i) as u64) * face(i);
                if (k - i).is_odd() {
                    acc -= term;
                } else {
                    acc += term;
                }
            }
            acc
        })
        .collect()
}

/// The h-vector of a `(d-1)`-dimensional complex from its f-vector
/// `(f_0, ..., f_{d-1})`.
pub fn h_from_f(f: &[BigInt], d: usize) -> Result<HVector> {
    if f.len() != d {
        return Err(Error::input(format!(
            "f-vector has {} entries, expected d = {d}",
            f.len()
        )));
    }
    HVector::new(h_numbers(f, d))
}

/// First `values.len()` coefficients of `(1 - t)^{m+1} * sum_r values[r] t^r`.
///
/// Each `h_i` depends only on `values[0..=i]`, so a prefix of the counting
/// function determines the same prefix of the numerator.
pub fn numerator_prefix(values: &[BigInt], m: usize) -> Vec<BigInt> {
    let k = (m + 1) as u64;
    (0..values.len())
        .map(|i| {
            let mut acc = BigInt::zero();
            for (j, v) in values.iter().enumerate().take(i + 1) {
                let term = binomial(k, (i - j) as u64) * v;
                if (i - j).is_odd() {
                    acc -= term;
                } else {
                    acc += term;
                }
            }
            acc
        })
        .collect()
}

/// Numerator `h(t)` of `sum_r values[r] t^r = h(t) / (1 - t)^{m+1}`.
///
/// Values beyond index `m` are used as consistency checks: the transform must
/// vanish there, otherwise the sequence is not the counting function of an
/// `m`-dimensional integer polytope.
pub fn numerator_from_values(values: &[BigInt], m: usize) -> Result<IntPolynomial> {
    if values.len() < m + 1 {
        return Err(Error::input(format!(
            "need at least {} values for m = {m}, got {}",
            m + 1,
            values.len()
        )));
    }
    let h = numerator_prefix(values, m);
    if let Some(i) = (m + 1..h.len()).find(|&i| !h[i].is_zero()) {
        return Err(Error::verification(format!(
            "values are not an Ehrhart sequence of dimension {m}: h_{i} = {} != 0",
            h[i]
        )));
    }
    Ok(IntPolynomial::new(h[..=m].to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn bigs(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| big(x)).collect()
    }

    #[test]
    fn binomial_small_cases() {
        assert_eq!(binomial(5, 2), big(10));
        assert_eq!(binomial(4, 0), big(1));
        assert_eq!(binomial(3, 5), big(0));
        assert_eq!(binomial(0, 0), big(1));
    }

    #[test]
    fn macaulay_rep_examples() {
        let r = macaulay_rep(&big(3), 1).unwrap();
        assert_eq!(r.terms, vec![(big(3), 1)]);
        let r = macaulay_rep(&big(4), 2).unwrap();
        assert_eq!(r.terms, vec![(big(3), 2), (big(1), 1)]);
        let r = macaulay_rep(&big(1), 2).unwrap();
        assert_eq!(r.terms, vec![(big(2), 2)]);
    }

    #[test]
    fn macaulay_rep_rejects_zero() {
        assert!(macaulay_rep(&big(0), 2).is_err());
        assert!(macaulay_rep(&big(3), 0).is_err());
    }

    #[test]
    fn macaulay_bound_examples() {
        assert_eq!(macaulay_bound(&big(0), 3), big(0));
        assert_eq!(macaulay_bound(&big(3), 1), big(6));
        assert_eq!(macaulay_bound(&big(4), 2), big(5));
    }

    #[test]
    fn m_vector_examples() {
        assert_eq!(is_m_vector(&bigs(&[1, 3, 6])), Ok(()));
        assert_eq!(is_m_vector(&bigs(&[1, 2, 5])), Err(2));
        assert_eq!(is_m_vector(&bigs(&[1])), Ok(()));
        assert_eq!(is_m_vector(&[]), Err(0));
        assert_eq!(is_m_vector(&bigs(&[2, 1])), Err(0));
        assert_eq!(is_m_vector(&bigs(&[1, -1])), Err(1));
    }

    #[test]
    fn g_theorem_examples() {
        let v = g_theorem_check(&HVector::from_i64s(&[1, 1, 1]).unwrap());
        assert!(v.all_pass());

        let v = g_theorem_check(&HVector::from_i64s(&[1, 2, 1, 2, 1]).unwrap());
        assert!(v.symmetric);
        assert!(!v.unimodal);
        assert!(!v.g_is_m_vector);
        assert_eq!(v.g_vector, bigs(&[1, 1, -1]));
        assert_eq!(v.m_vector_violation, Some(2));

        let v = g_theorem_check(&HVector::from_i64s(&[1, 14, 87, 148, 87, 14, 1]).unwrap());
        assert!(v.all_pass());
        assert_eq!(v.g_vector, bigs(&[1, 13, 73, 61]));
    }

    #[test]
    fn g_theorem_trivial_sequence() {
        let v = g_theorem_check(&HVector::from_i64s(&[1]).unwrap());
        assert!(v.all_pass());
    }

    #[test]
    fn h_from_f_examples() {
        let h = h_from_f(&bigs(&[3, 3]), 2).unwrap();
        assert_eq!(h.entries(), bigs(&[1, 1, 1]).as_slice());
        let h = h_from_f(&bigs(&[4, 4]), 2).unwrap();
        assert_eq!(h.entries(), bigs(&[1, 2, 1]).as_slice());
        let h = h_from_f(&bigs(&[6, 12, 8]), 3).unwrap();
        assert_eq!(h.entries(), bigs(&[1, 3, 3, 1]).as_slice());
        let h = h_from_f(&[], 0).unwrap();
        assert_eq!(h.entries(), bigs(&[1]).as_slice());
        assert!(h_from_f(&bigs(&[3]), 2).is_err());
    }

    #[test]
    fn numerator_examples() {
        let h = numerator_from_values(&bigs(&[1, 1, 1]), 0).unwrap();
        assert_eq!(h, IntPolynomial::one());
        let h = numerator_from_values(&bigs(&[1, 2, 3, 4]), 1).unwrap();
        assert_eq!(h, IntPolynomial::one());
        let h = numerator_from_values(&bigs(&[1, 3, 6, 10]), 2).unwrap();
        assert_eq!(h, IntPolynomial::one());
        let h = numerator_from_values(&bigs(&[1, 4, 9, 16]), 2).unwrap();
        assert_eq!(h, IntPolynomial::from_i64s(&[1, 1]));
    }

    #[test]
    fn numerator_rejects_wrong_dimension() {
        // (r+1)^2 is a 2-dimensional count; m = 1 must be rejected.
        let err = numerator_from_values(&bigs(&[1, 4, 9, 16]), 1).unwrap_err();
        assert!(matches!(err, Error::Verification(_)));
        assert!(numerator_from_values(&bigs(&[1]), 2).is_err());
    }

    #[test]
    fn macaulay_bound_monotone_exhaustive() {
        for i in 1..=6 {
            let mut prev = BigInt::zero();
            for n in 0..=500i64 {
                let b = macaulay_bound(&big(n), i);
                assert!(b >= prev, "n^({i}) decreased at n = {n}");
                prev = b;
            }
        }
    }

    proptest! {
        #[test]
        fn macaulay_rep_reconstructs(n in 1i64..100_000, i in 1usize..9) {
            let rep = macaulay_rep(&big(n), i).unwrap();
            prop_assert_eq!(rep.value(), big(n));
            prop_assert_eq!(rep.terms[0].1, i);
            for w in rep.terms.windows(2) {
                prop_assert!(w[0].0 > w[1].0);
                prop_assert_eq!(w[0].1, w[1].1 + 1);
            }
            let (k_last, j) = rep.terms.last().unwrap();
            prop_assert!(*j >= 1);
            prop_assert!(*k_last >= BigInt::from(*j));
        }

        #[test]
        fn symmetric_m_vector_implies_unimodal(half in proptest::collection::vec(0i64..40, 0..5), odd in any::<bool>()) {
            let mut h = vec![1i64];
            h.extend(half.iter().copied());
            let mut full = h.clone();
            let tail: Vec<i64> = if odd { h.iter().rev().skip(1).copied().collect() } else { h.iter().rev().copied().collect() };
            full.extend(tail);
            let v = g_theorem_check(&HVector::from_i64s(&full).unwrap());
            prop_assert!(v.symmetric);
            if v.g_is_m_vector {
                prop_assert!(v.unimodal);
            }
        }

        #[test]
        fn numerator_round_trips(coeffs in proptest::collection::vec(0i64..50, 1..6), extra in 0usize..4) {
            let mut coeffs = coeffs;
            coeffs[0] = 1;
            let m = coeffs.len() - 1 + extra;
            let h = IntPolynomial::from_i64s(&coeffs);
            let values = h.series_prefix(m + 1, m + 3);
            let back = numerator_from_values(&values, m).unwrap();
            prop_assert_eq!(back, h);
        }
    }
}
