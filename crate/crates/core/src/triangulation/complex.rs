use std::collections::HashSet;
use std::fmt::Write as _;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exact_math::{h_from_f, HVector, IntPolynomial};
use crate::polytope::VertexSet;

/// Abstract simplicial complex given by its maximal faces over integer
/// vertex labels. The complex `{∅}` has the single maximal face `∅`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    maximal: Vec<VertexSet>,
}

impl SimplicialComplex {
    /// Keeps the inclusion-maximal members of `faces`, sorted. An empty
    /// input gives `{∅}`.
    pub fn new(faces: impl IntoIterator<Item = VertexSet>) -> Self {
        let mut faces: Vec<VertexSet> = faces.into_iter().collect();
        faces.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        faces.dedup();
        let mut maximal: Vec<VertexSet> = Vec::with_capacity(faces.len());
        for f in faces {
            if !maximal.iter().any(|m| f.is_subset(m)) {
                maximal.push(f);
            }
        }
        if maximal.is_empty() {
            maximal.push(VertexSet::new());
        }
        maximal.sort();
        SimplicialComplex { maximal }
    }

    /// The complex `{∅}`.
    pub fn empty() -> Self {
        SimplicialComplex {
            maximal: vec![VertexSet::new()],
        }
    }

    /// A full simplex on the given vertices.
    pub fn simplex(vertices: VertexSet) -> Self {
        SimplicialComplex {
            maximal: vec![vertices],
        }
    }

    pub fn maximal_faces(&self) -> &[VertexSet] {
        &self.maximal
    }

    pub fn num_maximal_faces(&self) -> usize {
        self.maximal.len()
    }

    pub fn vertices(&self) -> VertexSet {
        self.maximal
            .iter()
            .fold(VertexSet::new(), |acc, f| acc.union(f))
    }

    /// Dimension; `-1` for `{∅}`.
    pub fn dim(&self) -> isize {
        self.maximal
            .iter()
            .map(|f| f.len() as isize)
            .max()
            .unwrap_or(0)
            - 1
    }

    pub fn is_pure(&self) -> bool {
        let k = self.maximal[0].len();
        self.maximal.iter().all(|f| f.len() == k)
    }

    pub fn contains(&self, face: &VertexSet) -> bool {
        self.maximal.iter().any(|m| face.is_subset(m))
    }

    /// Every face including `∅`, by downward closure.
    pub fn all_faces(&self) -> HashSet<VertexSet> {
        let mut out = HashSet::new();
        for m in &self.maximal {
            let verts = m.to_vec();
            assert!(verts.len() < 32, "simplex too large to enumerate subsets");
            for mask in 0u32..1 << verts.len() {
                out.insert(
                    (0..verts.len())
                        .filter(|&i| mask >> i & 1 == 1)
                        .map(|i| verts[i])
                        .collect(),
                );
            }
        }
        out
    }

    /// `(f_0, ..., f_{d-1})`, the number of faces of each dimension, where
    /// `d - 1` is the dimension of the complex.
    pub fn f_vector(&self) -> Vec<BigInt> {
        let d = (self.dim() + 1) as usize;
        let mut f = vec![0u64; d];
        for face in self.all_faces() {
            if !face.is_empty() {
                f[face.len() - 1] += 1;
            }
        }
        f.into_iter().map(BigInt::from).collect()
    }

    pub fn h_vector(&self) -> HVector {
        let d = (self.dim() + 1) as usize;
        h_from_f(&self.f_vector(), d).expect("f-vector of a complex has a valid h-vector")
    }

    pub fn h_polynomial(&self) -> IntPolynomial {
        self.h_vector().to_polynomial()
    }

    /// Codimension-one faces lying in other than exactly two maximal faces.
    /// Empty for pseudomanifolds without boundary.
    pub fn unpaired_ridges(&self) -> Vec<(VertexSet, usize)> {
        let mut counts: std::collections::BTreeMap<VertexSet, usize> = Default::default();
        for m in &self.maximal {
            for v in m.iter() {
                *counts.entry(m.without(v)).or_default() += 1;
            }
        }
        counts.into_iter().filter(|&(_, c)| c != 2).collect()
    }

    /// Line-oriented export: a header `vertices N dim D`, then one maximal
    /// face per line as sorted vertex indices.
    pub fn export(&self, num_vertices: usize) -> String {
        let mut out = format!("vertices {num_vertices} dim {}\n", self.dim());
        for f in &self.maximal {
            let items: Vec<String> = f.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(out, "{}", items.join(" "));
        }
        out
    }

    /// Parses [`SimplicialComplex::export`] output; returns the complex and
    /// the vertex count from the header.
    pub fn import(text: &str) -> Result<(Self, usize)> {
        let mut lines = text.lines().enumerate();
        let parse_err = |line: usize, message: String| Error::Parse {
            line: line + 1,
            message,
        };
        let (hl, header) = lines
            .next()
            .ok_or_else(|| parse_err(0, "missing header".into()))?;
        let words: Vec<&str> = header.split_whitespace().collect();
        let (n, dim) = match words.as_slice() {
            ["vertices", n, "dim", d] => (
                n.parse::<usize>()
                    .map_err(|e| parse_err(hl, format!("vertex count: {e}")))?,
                d.parse::<isize>()
                    .map_err(|e| parse_err(hl, format!("dimension: {e}")))?,
            ),
            _ => return Err(parse_err(hl, "expected `vertices N dim D`".into())),
        };
        let mut faces = Vec::new();
        for (i, line) in lines {
            let mut face = VertexSet::new();
            for w in line.split_whitespace() {
                let v: usize = w
                    .parse()
                    .map_err(|e| parse_err(i, format!("vertex index {w:?}: {e}")))?;
                if v >= n {
                    return Err(parse_err(i, format!("vertex {v} out of range")));
                }
                face.insert(v);
            }
            faces.push(face);
        }
        let c = SimplicialComplex::new(faces);
        if c.dim() != dim {
            return Err(parse_err(
                hl,
                format!("header says dim {dim}, faces give {}", c.dim()),
            ));
        }
        Ok((c, n))
    }
}

/// Join of two complexes on disjoint vertex labels. Checks that the
/// h-polynomial of the join is the product of the factors' h-polynomials.
pub fn simplicial_join(a: &SimplicialComplex, b: &SimplicialComplex) -> Result<SimplicialComplex> {
    let shared = a.vertices().intersection(&b.vertices());
    if !shared.is_empty() {
        return Err(Error::input(format!(
            "join factors share vertices {shared:?}"
        )));
    }
    let faces = a
        .maximal_faces()
        .iter()
        .flat_map(|s| b.maximal_faces().iter().map(move |t| s.union(t)));
    let join = SimplicialComplex::new(faces);
    let product = &a.h_polynomial() * &b.h_polynomial();
    if join.h_polynomial() != product {
        return Err(Error::verification(format!(
            "h of the join is {} but the product of the factors is {}",
            join.h_polynomial(),
            product
        )));
    }
    Ok(join)
}
