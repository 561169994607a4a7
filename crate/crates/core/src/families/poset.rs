use crate::error::{Error, Result};
use crate::exact_math::IntPolynomial;
use crate::polytope::VertexSet;

/// Finite poset on `1..=m`, given by its cover relations.
///
/// Element `0` is reserved for the minimum adjoined in `Ω^0`; it is below
/// every element in [`Poset::below`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    m: usize,
    covers: Vec<(usize, usize)>,
    // below[j] = elements of Ω^0 strictly below j; below[0] is empty
    below: Vec<VertexSet>,
}

/// Strips `#` comments and blank lines, keeping 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

pub(crate) fn parse_numbers(line: usize, s: &str, expected: usize) -> Result<Vec<usize>> {
    let nums: Vec<usize> = s
        .split_whitespace()
        .map(|w| {
            w.parse::<usize>().map_err(|e| Error::Parse {
                line,
                message: format!("{w:?}: {e}"),
            })
        })
        .collect::<Result<_>>()?;
    if nums.len() != expected {
        return Err(Error::Parse {
            line,
            message: format!("expected {expected} numbers, found {}", nums.len()),
        });
    }
    Ok(nums)
}

impl Poset {
    /// Builds a poset from covers `(i, j)`, meaning `i` is covered by `j`.
    /// Rejects cycles, repeated covers and covers implied by others.
    pub fn new(m: usize, covers: Vec<(usize, usize)>) -> Result<Self> {
        let below = Self::closure(m, &covers)?;
        for (k, &(i, j)) in covers.iter().enumerate() {
            if covers[..k].contains(&(i, j)) {
                return Err(Error::input(format!("cover ({i}, {j}) listed twice")));
            }
            // implied if some k with i < k < j
            if below[j].iter().any(|k| k != 0 && below[k].contains(i)) {
                return Err(Error::input(format!(
                    "cover ({i}, {j}) is implied by other relations"
                )));
            }
        }
        Ok(Poset { m, covers, below })
    }

    /// Builds a poset from arbitrary relations `i < j`, reducing them to
    /// covers.
    pub fn from_relations(m: usize, relations: &[(usize, usize)]) -> Result<Self> {
        let below = Self::closure(m, relations)?;
        let mut covers = Vec::new();
        for j in 1..=m {
            for i in below[j].iter().filter(|&i| i != 0) {
                if !below[j].iter().any(|k| k != 0 && below[k].contains(i)) {
                    covers.push((i, j));
                }
            }
        }
        covers.sort_unstable();
        Ok(Poset { m, covers, below })
    }

    fn closure(m: usize, rel: &[(usize, usize)]) -> Result<Vec<VertexSet>> {
        if m == 0 {
            return Err(Error::input("poset must have at least one element"));
        }
        let mut direct = vec![VertexSet::new(); m + 1];
        for &(i, j) in rel {
            if i == 0 || j == 0 || i > m || j > m {
                return Err(Error::input(format!(
                    "relation ({i}, {j}) out of range 1..={m}"
                )));
            }
            if i == j {
                return Err(Error::input(format!("relation ({i}, {j}) is reflexive")));
            }
            direct[j].insert(i);
        }
        // depth-first closure with cycle detection
        let mut below: Vec<Option<VertexSet>> = vec![None; m + 1];
        let mut state = vec![0u8; m + 1];
        fn visit(
            j: usize,
            direct: &[VertexSet],
            below: &mut [Option<VertexSet>],
            state: &mut [u8],
        ) -> Result<()> {
            match state[j] {
                2 => return Ok(()),
                1 => {
                    return Err(Error::input(format!(
                        "relations contain a cycle through {j}"
                    )))
                }
                _ => {}
            }
            state[j] = 1;
            let mut acc = VertexSet::singleton(0);
            for i in direct[j].iter() {
                visit(i, direct, below, state)?;
                acc = acc.union(below[i].as_ref().expect("visited")).with(i);
            }
            below[j] = Some(acc);
            state[j] = 2;
            Ok(())
        }
        for j in 1..=m {
            visit(j, &direct, &mut below, &mut state)?;
        }
        below[0] = Some(VertexSet::new());
        Ok(below.into_iter().map(|b| b.expect("visited")).collect())
    }

    /// Reads `m` on the first line, then one cover `i j` per line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (l, first) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "empty poset file".into(),
        })?;
        let m = parse_numbers(l, first, 1)?[0];
        let mut covers = Vec::new();
        for (l, line) in lines {
            let v = parse_numbers(l, line, 2)?;
            covers.push((v[0], v[1]));
        }
        Self::new(m, covers)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.m);
        for (i, j) in &self.covers {
            s.push_str(&format!("{i} {j}\n"));
        }
        s
    }

    /// A chain `1 < 2 < ... < m`.
    pub fn chain(m: usize) -> Result<Self> {
        Self::new(m, (1..m).map(|i| (i, i + 1)).collect())
    }

    /// `m` pairwise incomparable elements.
    pub fn antichain(m: usize) -> Result<Self> {
        Self::new(m, Vec::new())
    }

    /// Product of chains of lengths `a` and `b`, labeled row by row.
    pub fn grid(a: usize, b: usize) -> Result<Self> {
        let id = |i: usize, j: usize| i * b + j + 1;
        let mut covers = Vec::new();
        for i in 0..a {
            for j in 0..b {
                if i + 1 < a {
                    covers.push((id(i, j), id(i + 1, j)));
                }
                if j + 1 < b {
                    covers.push((id(i, j), id(i, j + 1)));
                }
            }
        }
        Self::new(a * b, covers)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// `i < j` in `Ω^0` (element 0 is the adjoined minimum).
    pub fn less(&self, i: usize, j: usize) -> bool {
        self.below[j].contains(i)
    }

    /// Elements of `Ω^0` strictly below `j`.
    pub fn below(&self, j: usize) -> &VertexSet {
        &self.below[j]
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (1..=self.m)
            .filter(|&i| !self.covers.iter().any(|&(a, _)| a == i))
            .collect()
    }

    /// Length of the longest chain of `Ω` ending at each element, indexed
    /// `1..=m` (entry 0 unused).
    fn heights(&self) -> Vec<usize> {
        let mut h = vec![0; self.m + 1];
        let mut order: Vec<usize> = (1..=self.m).collect();
        order.sort_by_key(|&j| self.below[j].len());
        for &j in &order {
            h[j] = self
                .covers
                .iter()
                .filter(|&&(_, b)| b == j)
                .map(|&(a, _)| h[a] + 1)
                .max()
                .unwrap_or(0);
        }
        h
    }

    /// Rank of each element (`1..=m`, minimal elements have rank 0) when all
    /// maximal chains have the same length.
    pub fn ranks(&self) -> Option<Vec<usize>> {
        let h = self.heights();
        let graded_covers = self.covers.iter().all(|&(a, b)| h[b] == h[a] + 1);
        let top = self
            .maximal_elements()
            .iter()
            .map(|&i| h[i])
            .collect::<Vec<_>>();
        (graded_covers && top.windows(2).all(|w| w[0] == w[1])).then_some(h)
    }

    pub fn is_graded(&self) -> bool {
        self.ranks().is_some()
    }

    /// Number of ranks of a graded poset, `n - 1` in the rank-`n - 2`
    /// convention.
    pub fn num_ranks(&self) -> Option<usize> {
        self.ranks()
            .map(|r| r[1..].iter().copied().max().unwrap_or(0) + 1)
    }

    pub fn is_naturally_labeled(&self) -> bool {
        self.covers.iter().all(|&(i, j)| i < j)
    }

    /// Renames elements along the first linear extension so that the result
    /// is naturally labeled. Returns the new poset and `new_label[old]`.
    pub fn relabel_natural(&self) -> (Poset, Vec<usize>) {
        let ext = first_linear_extension(self);
        let mut new_label = vec![0; self.m + 1];
        for (pos, &e) in ext.iter().enumerate() {
            new_label[e] = pos + 1;
        }
        let covers = self
            .covers
            .iter()
            .map(|&(i, j)| (new_label[i], new_label[j]))
            .collect();
        (
            Poset::new(self.m, covers).expect("relabeling preserves validity"),
            new_label,
        )
    }

    /// All ideals of `Ω` (including `∅` and `Ω`), as sets of elements.
    pub fn ideals(&self, max: usize) -> Result<Vec<VertexSet>> {
        let order = first_linear_extension(self);
        let mut out = Vec::new();
        let mut current = VertexSet::new();
        fn rec(
            p: &Poset,
            order: &[usize],
            k: usize,
            current: &mut VertexSet,
            out: &mut Vec<VertexSet>,
            max: usize,
        ) -> Result<()> {
            if k == order.len() {
                if out.len() == max {
                    return Err(Error::Budget {
                        what: "number of poset ideals",
                        limit: max as u64,
                    });
                }
                out.push(current.clone());
                return Ok(());
            }
            let e = order[k];
            rec(p, order, k + 1, current, out, max)?;
            if p.below[e].iter().all(|i| i == 0 || current.contains(i)) {
                current.insert(e);
                rec(p, order, k + 1, current, out, max)?;
                current.remove(e);
            }
            Ok(())
        }
        rec(self, &order, 0, &mut current, &mut out, max)?;
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(out)
    }

    pub fn is_ideal(&self, set: &VertexSet) -> bool {
        set.iter()
            .all(|j| self.below[j].iter().all(|i| i == 0 || set.contains(i)))
    }
}

fn first_linear_extension(p: &Poset) -> Vec<usize> {
    let mut order: Vec<usize> = (1..=p.m).collect();
    order.sort_by_key(|&j| (p.below[j].len(), j));
    order
}

/// Linear extensions of `Ω` as permutations `(w_1, ..., w_m)`, in
/// lexicographic order.
pub fn linear_extensions(p: &Poset, max: usize) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut placed = VertexSet::singleton(0);
    let mut word = Vec::with_capacity(p.m);
    fn rec(
        p: &Poset,
        placed: &mut VertexSet,
        word: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        max: usize,
    ) -> Result<()> {
        if word.len() == p.m {
            if out.len() == max {
                return Err(Error::Budget {
                    what: "number of linear extensions",
                    limit: max as u64,
                });
            }
            out.push(word.clone());
            return Ok(());
        }
        for e in 1..=p.m {
            if !placed.contains(e) && p.below[e].is_subset(placed) {
                placed.insert(e);
                word.push(e);
                rec(p, placed, word, out, max)?;
                word.pop();
                placed.remove(e);
            }
        }
        Ok(())
    }
    rec(p, &mut placed, &mut word, &mut out, max)?;
    Ok(out)
}

pub fn descents(w: &[usize]) -> usize {
    w.windows(2).filter(|x| x[0] > x[1]).count()
}

/// `W(Ω, t)`, the descent generating polynomial of the linear extensions.
pub fn eulerian_polynomial(p: &Poset, max: usize) -> Result<IntPolynomial> {
    if !p.is_naturally_labeled() {
        return Err(Error::input("poset is not naturally labeled"));
    }
    let mut counts = vec![0i64; p.m.max(1)];
    for w in linear_extensions(p, max)? {
        counts[descents(&w)] += 1;
    }
    Ok(IntPolynomial::from_i64s(&counts))
}
