//! Δ-complexes (semi-simplicial sets) and barycentric subdivision.

use super::simplicial::SimplicialComplex;
use crate::error::{Error, Result};
use std::collections::HashMap;

/// Simplices in creation order; simplex `s` of dimension `n > 0` has face
/// operators `d_0 .. d_n` pointing at earlier simplices.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DeltaComplex {
    dims: Vec<usize>,
    faces: Vec<Vec<usize>>,
}

impl DeltaComplex {
    pub fn new() -> DeltaComplex {
        DeltaComplex::default()
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn dim(&self, s: usize) -> usize {
        self.dims[s]
    }

    pub fn dimension(&self) -> Option<usize> {
        self.dims.iter().copied().max()
    }

    pub fn faces(&self, s: usize) -> &[usize] {
        &self.faces[s]
    }

    pub fn simplices(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    pub fn simplices_of_dim(&self, d: usize) -> impl Iterator<Item = usize> + '_ {
        self.simplices().filter(move |&s| self.dims[s] == d)
    }

    pub fn counts(&self) -> Vec<usize> {
        let mut out = vec![0; self.dimension().map_or(0, |d| d + 1)];
        for &d in &self.dims {
            out[d] += 1;
        }
        out
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.counts()
            .iter()
            .enumerate()
            .map(|(d, &n)| if d % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    pub fn push_vertex(&mut self) -> usize {
        self.dims.push(0);
        self.faces.push(Vec::new());
        self.len() - 1
    }

    /// Appends an `n`-simplex with faces `d_0 .. d_n`, checking the
    /// semi-simplicial identities against existing simplices.
    pub fn push_simplex(&mut self, faces: &[usize]) -> Result<usize> {
        let id = self.len();
        if faces.len() < 2 {
            return Err(Error::InvalidComplex(format!(
                "simplex {id}: use push_vertex for vertices"
            )));
        }
        let n = faces.len() - 1;
        for &f in faces {
            if f >= id || self.dims[f] + 1 != n {
                return Err(Error::InvalidComplex(format!(
                    "simplex {id}: face {f} has the wrong dimension"
                )));
            }
        }
        for i in 0..=n {
            for j in i + 1..=n {
                // d_i d_j = d_{j-1} d_i
                if self.face_op(faces[j], i) != self.face_op(faces[i], j - 1) {
                    return Err(Error::InvalidComplex(format!(
                        "simplex {id}: d_{i} d_{j} differs from d_{} d_{i}",
                        j - 1
                    )));
                }
            }
        }
        self.dims.push(n);
        self.faces.push(faces.to_vec());
        Ok(id)
    }

    fn face_op(&self, s: usize, i: usize) -> Option<usize> {
        self.faces[s].get(i).copied()
    }

    pub fn validate(&self) -> Result<()> {
        let mut copy = DeltaComplex::new();
        for s in self.simplices() {
            if self.dims[s] == 0 {
                if !self.faces[s].is_empty() {
                    return Err(Error::InvalidComplex(format!("vertex {s} has faces")));
                }
                copy.push_vertex();
            } else {
                copy.push_simplex(&self.faces[s])?;
            }
        }
        Ok(())
    }

    /// The face of `s` spanned by the vertices whose bits are set in `mask`
    /// (bit `i` is vertex `i` of `s`).
    pub fn face_with_vertices(&self, s: usize, mask: u32) -> usize {
        let mut cur = s;
        let mut m = mask;
        loop {
            let n = self.dims[cur];
            let full = (1u32 << (n + 1)) - 1;
            if m == full {
                return cur;
            }
            let j = (0..=n).rev().find(|&j| m >> j & 1 == 0).unwrap();
            cur = self.faces[cur][j];
            m = remove_bit(m, j);
        }
    }

    /// Vertex `i` of `s`.
    pub fn vertex(&self, s: usize, i: usize) -> usize {
        self.face_with_vertices(s, 1 << i)
    }

    pub fn vertices_of(&self, s: usize) -> Vec<usize> {
        (0..=self.dims[s]).map(|i| self.vertex(s, i)).collect()
    }

    /// The standard `n`-simplex with all its faces.
    pub fn standard_simplex(n: usize) -> DeltaComplex {
        let facets = vec![(0..=n).collect::<Vec<usize>>()];
        let s = SimplicialComplex::from_facets(n + 1, &facets).unwrap();
        DeltaComplex::from_simplicial(&s)
    }

    /// Boundary of the standard `(n+1)`-simplex, an `n`-sphere.
    pub fn simplex_boundary(n: usize) -> DeltaComplex {
        let facets: Vec<Vec<usize>> = (0..=n + 1)
            .map(|skip| (0..=n + 1).filter(|&v| v != skip).collect())
            .collect();
        let s = SimplicialComplex::from_facets(n + 2, &facets).unwrap();
        DeltaComplex::from_simplicial(&s)
    }

    /// Simplices of a simplicial complex with vertices in increasing order.
    pub fn from_simplicial(s: &SimplicialComplex) -> DeltaComplex {
        let mut out = DeltaComplex::new();
        let mut id: HashMap<Vec<usize>, usize> = HashMap::new();
        for f in s.sorted_faces() {
            let n = if f.len() == 1 {
                out.push_vertex()
            } else {
                let faces: Vec<usize> = (0..f.len())
                    .map(|i| {
                        let mut g = f.clone();
                        g.remove(i);
                        id[&g]
                    })
                    .collect();
                out.push_simplex(&faces).unwrap()
            };
            id.insert(f, n);
        }
        out
    }

    /// Two triangles on one vertex and three edges forming a torus.
    pub fn torus() -> DeltaComplex {
        let mut d = DeltaComplex::new();
        let v = d.push_vertex();
        let a = d.push_simplex(&[v, v]).unwrap();
        let b = d.push_simplex(&[v, v]).unwrap();
        let c = d.push_simplex(&[v, v]).unwrap();
        d.push_simplex(&[a, c, b]).unwrap();
        d.push_simplex(&[b, c, a]).unwrap();
        d
    }

    /// One vertex, one edge and one triangle with every edge on the loop.
    pub fn dunce_hat() -> DeltaComplex {
        let mut d = DeltaComplex::new();
        let v = d.push_vertex();
        let a = d.push_simplex(&[v, v]).unwrap();
        d.push_simplex(&[a, a, a]).unwrap();
        d
    }

    /// Whether every simplex has pairwise distinct edges.
    pub fn category_c_check(&self) -> bool {
        self.category_c_violation().is_none()
    }

    /// First simplex with a repeated edge.
    pub fn category_c_violation(&self) -> Option<usize> {
        self.simplices().find(|&s| {
            let n = self.dims[s];
            let mut edges = Vec::new();
            for a in 0..=n {
                for b in a + 1..=n {
                    edges.push(self.face_with_vertices(s, 1 << a | 1 << b));
                }
            }
            edges.sort_unstable();
            edges.windows(2).any(|w| w[0] == w[1])
        })
    }

    /// Checks membership in the category of Δ-complexes with distinct edges.
    pub fn require_category_c(&self) -> Result<()> {
        match self.category_c_violation() {
            Some(s) => Err(Error::NotInCategoryC(s)),
            None => Ok(()),
        }
    }

    /// Subcomplex generated by the simplices in `keep` (closed under faces),
    /// with the old-to-new id map.
    pub fn subcomplex(&self, keep: &[bool]) -> Result<(DeltaComplex, Vec<Option<usize>>)> {
        let mut map = vec![None; self.len()];
        let mut out = DeltaComplex::new();
        for s in self.simplices() {
            if !keep[s] {
                continue;
            }
            if self.dims[s] == 0 {
                map[s] = Some(out.push_vertex());
                continue;
            }
            let mut faces = Vec::new();
            for &f in &self.faces[s] {
                faces.push(map[f].ok_or(Error::NotSubcomplex(s))?);
            }
            out.dims.push(self.dims[s]);
            out.faces.push(faces);
            map[s] = Some(out.len() - 1);
        }
        Ok((out, map))
    }

    /// Closure of a set of simplices, as a mask.
    pub fn closure_mask(&self, cells: impl IntoIterator<Item = usize>) -> Vec<bool> {
        let mut mask = vec![false; self.len()];
        let mut stack: Vec<usize> = cells.into_iter().collect();
        while let Some(s) = stack.pop() {
            if !mask[s] {
                mask[s] = true;
                stack.extend_from_slice(&self.faces[s]);
            }
        }
        mask
    }
}

/// A map of Δ-complexes: simplex `s` goes to `images[s]`, of the same
/// dimension, commuting with every face operator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaMap {
    pub images: Vec<usize>,
}

impl DeltaMap {
    pub fn identity(x: &DeltaComplex) -> DeltaMap {
        DeltaMap {
            images: x.simplices().collect(),
        }
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &DeltaMap) -> DeltaMap {
        DeltaMap {
            images: inner.images.iter().map(|&s| self.images[s]).collect(),
        }
    }

    pub fn check(&self, src: &DeltaComplex, dst: &DeltaComplex) -> Result<()> {
        if self.images.len() != src.len() {
            return Err(Error::InvalidMap(format!(
                "{} images for {} simplices",
                self.images.len(),
                src.len()
            )));
        }
        for s in src.simplices() {
            let t = self.images[s];
            if t >= dst.len() || dst.dim(t) != src.dim(s) {
                return Err(Error::InvalidMap(format!(
                    "simplex {s} does not go to a simplex of its dimension"
                )));
            }
            for (i, &f) in src.faces(s).iter().enumerate() {
                if self.images[f] != dst.faces(t)[i] {
                    return Err(Error::InvalidMap(format!(
                        "simplex {s}: map does not commute with d_{i}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Whether every simplex's closure is carried injectively.
    pub fn is_injective_on_simplices(&self, src: &DeltaComplex) -> bool {
        src.simplices().all(|s| {
            let n = src.dim(s);
            let mut seen = std::collections::HashSet::new();
            (1u32..1 << (n + 1)).all(|m| seen.insert(self.images[src.face_with_vertices(s, m)]))
        })
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.images.iter().all(|&t| seen.insert(t))
    }
}

fn remove_bit(m: u32, j: usize) -> u32 {
    let low = m & ((1 << j) - 1);
    let high = (m >> (j + 1)) << j;
    low | high
}

/// Barycentric subdivision. Simplex `(s, F_0 ⊊ … ⊊ F_m)` of the output, with
/// `F_m` the full vertex set of `s`, has vertices the barycentres of the faces
/// `F_0, …, F_m` in that order.
pub fn barycentric_subdivision(x: &DeltaComplex) -> DeltaComplex {
    let mut out = DeltaComplex::new();
    let mut id: HashMap<(usize, Vec<u32>), usize> = HashMap::new();
    let top = x.dimension().unwrap_or(0);
    for m in 0..=top {
        for s in x.simplices() {
            let n = x.dim(s);
            if n < m {
                continue;
            }
            let full = (1u32 << (n + 1)) - 1;
            for chain in chains_ending_at(full, m) {
                let key = (s, chain.clone());
                let new = if m == 0 {
                    out.push_vertex()
                } else {
                    let faces: Vec<usize> = (0..=m)
                        .map(|i| {
                            let mut c = chain.clone();
                            c.remove(i);
                            id[&normalise(x, s, c)]
                        })
                        .collect();
                    out.push_simplex(&faces)
                        .expect("subdivision face identities")
                };
                id.insert(key, new);
            }
        }
    }
    out
}

/// Rewrites `(s, chain)` so that the last set of the chain is all of `s`.
fn normalise(x: &DeltaComplex, s: usize, chain: Vec<u32>) -> (usize, Vec<u32>) {
    let last = *chain.last().unwrap();
    let t = x.face_with_vertices(s, last);
    let compress = |mut m: u32| -> u32 {
        let mut out = 0;
        let mut k = 0;
        let mut l = last;
        while l != 0 {
            if l & 1 == 1 {
                if m & 1 == 1 {
                    out |= 1 << k;
                }
                k += 1;
            }
            l >>= 1;
            m >>= 1;
        }
        out
    };
    (t, chain.into_iter().map(compress).collect())
}

/// Strict chains `F_0 ⊊ … ⊊ F_m = full` of non-empty subsets.
fn chains_ending_at(full: u32, m: usize) -> Vec<Vec<u32>> {
    if m == 0 {
        return vec![vec![full]];
    }
    let mut out = Vec::new();
    // proper non-empty subsets of `full`, in increasing order
    let mut sub = (full - 1) & full;
    let mut subs = Vec::new();
    while sub != 0 {
        subs.push(sub);
        sub = (sub - 1) & full;
    }
    subs.reverse();
    for s in subs {
        for mut c in chains_ending_at(s, m - 1) {
            c.push(full);
            out.push(c);
        }
    }
    out
}

/// Barycentric subdivision of a simplicial complex.
pub fn barycentric_subdivision_simplicial(s: &SimplicialComplex) -> DeltaComplex {
    barycentric_subdivision(&DeltaComplex::from_simplicial(s))
}
