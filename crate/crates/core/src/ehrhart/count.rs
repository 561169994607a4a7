//! Lattice points of dilates by backtracking over coordinates.
//!
//! Coordinates are assigned in index order. Every constraint keeps a
//! running partial sum, and the range of the unassigned part is bounded by
//! precomputed suffix extremes over the box `r * [min_v x_k, max_v x_k]`;
//! each variable's range is the intersection of what its constraints allow.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};

use num_bigint::BigInt;

use crate::config::{worker_threads, Budgets};
use crate::error::{Error, Result};
use crate::polytope::IntegerPolytope;

#[derive(Clone, Debug)]
struct Constraint {
    coeffs: Vec<i64>,
    rhs: i64,
    equality: bool,
    // suffix_min[k] = min of sum_{j >= k} coeffs[j] * x_j over the box
    suffix_min: Vec<i64>,
    suffix_max: Vec<i64>,
}

#[derive(Clone, Debug)]
struct Search {
    q: usize,
    lo: Vec<i64>,
    hi: Vec<i64>,
    constraints: Vec<Constraint>,
    // constraints with a nonzero coefficient on each variable
    touching: Vec<Vec<usize>>,
}

fn overflow() -> Error {
    Error::input("dilate too large for 64-bit coordinates")
}

fn div_floor(a: i64, b: i64) -> i64 {
    let d = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        d - 1
    } else {
        d
    }
}

fn div_ceil(a: i64, b: i64) -> i64 {
    -div_floor(-a, b)
}

impl Search {
    fn new(p: &IntegerPolytope, r: u64) -> Result<Self> {
        let q = p.ambient_dim();
        let r = i64::try_from(r).map_err(|_| overflow())?;
        let scale = |x: i64| x.checked_mul(r).ok_or_else(overflow);
        let mut lo = vec![i64::MAX; q];
        let mut hi = vec![i64::MIN; q];
        for v in p.vertices() {
            for k in 0..q {
                lo[k] = lo[k].min(v[k]);
                hi[k] = hi[k].max(v[k]);
            }
        }
        for k in 0..q {
            lo[k] = scale(lo[k])?;
            hi[k] = scale(hi[k])?;
        }
        let mut constraints = Vec::new();
        let rows = p
            .facets()
            .iter()
            .map(|f| (&f.normal, f.offset, false))
            .chain(p.equalities().iter().map(|e| (&e.normal, e.offset, true)));
        for (normal, offset, equality) in rows {
            let mut suffix_min = vec![0i64; q + 1];
            let mut suffix_max = vec![0i64; q + 1];
            for k in (0..q).rev() {
                let c = normal[k];
                let a = c.checked_mul(lo[k]).ok_or_else(overflow)?;
                let b = c.checked_mul(hi[k]).ok_or_else(overflow)?;
                suffix_min[k] = suffix_min[k + 1]
                    .checked_add(a.min(b))
                    .ok_or_else(overflow)?;
                suffix_max[k] = suffix_max[k + 1]
                    .checked_add(a.max(b))
                    .ok_or_else(overflow)?;
            }
            constraints.push(Constraint {
                coeffs: normal.clone(),
                rhs: scale(offset)?,
                equality,
                suffix_min,
                suffix_max,
            });
        }
        let touching = (0..q)
            .map(|k| {
                (0..constraints.len())
                    .filter(|&c| constraints[c].coeffs[k] != 0)
                    .collect()
            })
            .collect();
        Ok(Search {
            q,
            lo,
            hi,
            constraints,
            touching,
        })
    }

    /// Feasible range of variable `k` given the partial sums of variables
    /// `0..k`.
    fn range(&self, k: usize, partial: &[i64]) -> (i64, i64) {
        let (mut lo, mut hi) = (self.lo[k], self.hi[k]);
        for &ci in &self.touching[k] {
            let c = &self.constraints[ci];
            let a = c.coeffs[k];
            // a * x in [rhs - partial - suffix_max, rhs - partial - suffix_min]
            // for equalities; only the upper end for inequalities
            let upper = c.rhs - partial[ci] - c.suffix_min[k + 1];
            let (l, h) = if a > 0 {
                (i64::MIN, div_floor(upper, a))
            } else {
                (div_ceil(upper, a), i64::MAX)
            };
            lo = lo.max(l);
            hi = hi.min(h);
            if c.equality {
                let lower = c.rhs - partial[ci] - c.suffix_max[k + 1];
                let (l, h) = if a > 0 {
                    (div_ceil(lower, a), i64::MAX)
                } else {
                    (i64::MIN, div_floor(lower, a))
                };
                lo = lo.max(l);
                hi = hi.min(h);
            }
        }
        (lo, hi)
    }

    fn assign(&self, k: usize, x: i64, partial: &mut [i64]) {
        for &ci in &self.touching[k] {
            partial[ci] += self.constraints[ci].coeffs[k] * x;
        }
    }

    fn unassign(&self, k: usize, x: i64, partial: &mut [i64]) {
        for &ci in &self.touching[k] {
            partial[ci] -= self.constraints[ci].coeffs[k] * x;
        }
    }

    /// Checks constraints not touching any variable (only possible for a
    /// zero normal, which validation excludes for facets but not for
    /// equalities).
    fn trivially_feasible(&self) -> bool {
        self.constraints.iter().all(|c| {
            c.coeffs.iter().any(|&a| a != 0) || if c.equality { c.rhs == 0 } else { c.rhs >= 0 }
        })
    }
}

struct Walker<'a> {
    search: &'a Search,
    nodes: &'a AtomicU64,
    abort: &'a AtomicBool,
    max_nodes: u64,
    local: u64,
    point: Vec<i64>,
    partial: Vec<i64>,
}

impl Walker<'_> {
    fn tick(&mut self) -> bool {
        self.local += 1;
        if self.local == 4096 {
            let total = self.nodes.fetch_add(self.local, Ordering::Relaxed) + self.local;
            self.local = 0;
            if total > self.max_nodes {
                self.abort.store(true, Ordering::Relaxed);
            }
        }
        !self.abort.load(Ordering::Relaxed)
    }

    fn walk(&mut self, k: usize, visit: &mut dyn FnMut(&[i64])) {
        if !self.tick() {
            return;
        }
        if k == self.search.q {
            visit(&self.point);
            return;
        }
        let (lo, hi) = self.search.range(k, &self.partial);
        for x in lo..=hi {
            self.point[k] = x;
            self.search.assign(k, x, &mut self.partial);
            self.walk(k + 1, visit);
            self.search.unassign(k, x, &mut self.partial);
            if self.abort.load(Ordering::Relaxed) {
                return;
            }
        }
    }

    fn flush(&mut self) {
        let total = self.nodes.fetch_add(self.local, Ordering::Relaxed) + self.local;
        self.local = 0;
        if total > self.max_nodes {
            self.abort.store(true, Ordering::Relaxed);
        }
    }
}

fn check_dilate(r: u64, budgets: &Budgets) -> Result<()> {
    if r > budgets.max_dilate {
        return Err(Error::Budget {
            what: "dilation factor",
            limit: budgets.max_dilate,
        });
    }
    Ok(())
}

fn node_budget(budgets: &Budgets) -> Error {
    Error::Budget {
        what: "lattice point search nodes",
        limit: budgets.max_nodes,
    }
}

/// Calls `visit` on every integer point of `r * P`, in lexicographic order.
pub fn for_each_point(
    p: &IntegerPolytope,
    r: u64,
    budgets: &Budgets,
    visit: &mut dyn FnMut(&[i64]),
) -> Result<()> {
    check_dilate(r, budgets)?;
    let search = Search::new(p, r)?;
    if !search.trivially_feasible() {
        return Ok(());
    }
    let nodes = AtomicU64::new(0);
    let abort = AtomicBool::new(false);
    let mut w = Walker {
        search: &search,
        nodes: &nodes,
        abort: &abort,
        max_nodes: budgets.max_nodes,
        local: 0,
        point: vec![0; search.q],
        partial: vec![0; search.constraints.len()],
    };
    w.walk(0, visit);
    w.flush();
    if abort.load(Ordering::Relaxed) {
        return Err(node_budget(budgets));
    }
    Ok(())
}

/// All integer points of `r * P`, sorted lexicographically.
pub fn lattice_points(p: &IntegerPolytope, r: u64, budgets: &Budgets) -> Result<Vec<Vec<i64>>> {
    let mut out = Vec::new();
    for_each_point(p, r, budgets, &mut |x| out.push(x.to_vec()))?;
    Ok(out)
}

/// `#(rP ∩ Z^q)`. The search splits on the first two coordinates and runs
/// the pieces on up to [`worker_threads`] threads.
pub fn count_points(p: &IntegerPolytope, r: u64, budgets: &Budgets) -> Result<BigInt> {
    check_dilate(r, budgets)?;
    let search = Search::new(p, r)?;
    if !search.trivially_feasible() {
        return Ok(BigInt::default());
    }
    let q = search.q;
    // prefixes of up to two coordinates
    let depth = q.min(2);
    let mut prefixes: Vec<Vec<i64>> = vec![Vec::new()];
    for k in 0..depth {
        let mut next = Vec::new();
        for pre in &prefixes {
            let mut partial = vec![0; search.constraints.len()];
            for (j, &x) in pre.iter().enumerate() {
                search.assign(j, x, &mut partial);
            }
            let (lo, hi) = search.range(k, &partial);
            for x in lo..=hi {
                let mut p = pre.clone();
                p.push(x);
                next.push(p);
            }
        }
        prefixes = next;
    }

    let nodes = AtomicU64::new(0);
    let abort = AtomicBool::new(false);
    let next_task = AtomicUsize::new(0);
    let threads = worker_threads().clamp(1, prefixes.len().max(1));
    let total: u64 = std::thread::scope(|s| {
        let handles: Vec<_> = (0..threads)
            .map(|_| {
                s.spawn(|| {
                    let mut count = 0u64;
                    let mut w = Walker {
                        search: &search,
                        nodes: &nodes,
                        abort: &abort,
                        max_nodes: budgets.max_nodes,
                        local: 0,
                        point: vec![0; q],
                        partial: vec![0; search.constraints.len()],
                    };
                    loop {
                        let t = next_task.fetch_add(1, Ordering::Relaxed);
                        if t >= prefixes.len() || abort.load(Ordering::Relaxed) {
                            break;
                        }
                        let pre = &prefixes[t];
                        for (j, &x) in pre.iter().enumerate() {
                            w.point[j] = x;
                            search.assign(j, x, &mut w.partial);
                        }
                        w.walk(pre.len(), &mut |_| count += 1);
                        for (j, &x) in pre.iter().enumerate() {
                            search.unassign(j, x, &mut w.partial);
                        }
                    }
                    w.flush();
                    count
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("counting worker panicked"))
            .sum()
    });
    if abort.load(Ordering::Relaxed) {
        return Err(node_budget(budgets));
    }
    Ok(BigInt::from(total))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::fixtures::*;

    #[test]
    fn small_counts() {
        let b = Budgets::default();
        let square = unit_square();
        for r in 0..6u64 {
            let n = (r + 1) * (r + 1);
            assert_eq!(count_points(&square, r, &b).unwrap(), BigInt::from(n));
        }
        let tri = triangle();
        for r in 0..6u64 {
            assert_eq!(
                count_points(&tri, r, &b).unwrap(),
                BigInt::from((r + 1) * (r + 2) / 2)
            );
        }
        assert_eq!(count_points(&point(), 4, &b).unwrap(), BigInt::from(1));
        assert_eq!(count_points(&pentagon(), 1, &b).unwrap(), BigInt::from(6));
    }

    #[test]
    fn enumeration_matches_count() {
        let b = Budgets::default();
        let p = prism();
        for r in 0..4 {
            let pts = lattice_points(&p, r, &b).unwrap();
            assert_eq!(BigInt::from(pts.len()), count_points(&p, r, &b).unwrap());
            assert!(pts.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn budgets_are_enforced() {
        let tight = Budgets {
            max_dilate: 3,
            ..Budgets::default()
        };
        assert!(matches!(
            count_points(&unit_square(), 4, &tight),
            Err(Error::Budget { .. })
        ));
        let tight = Budgets {
            max_nodes: 10,
            ..Budgets::default()
        };
        // node ticks are batched, so use a search far beyond the batch size
        assert!(matches!(
            count_points(&prism(), 60, &tight),
            Err(Error::Budget { .. })
        ));
        assert!(matches!(
            lattice_points(&prism(), 60, &tight),
            Err(Error::Budget { .. })
        ));
    }

    #[test]
    fn floor_and_ceil_division() {
        assert_eq!(div_floor(-3, 2), -2);
        assert_eq!(div_floor(3, -2), -2);
        assert_eq!(div_floor(4, 2), 2);
        assert_eq!(div_ceil(-3, 2), -1);
        assert_eq!(div_ceil(3, 2), 2);
    }
}
