//! Abstract simplicial complexes and the flag condition.

use crate::error::{Error, Result};
use std::collections::{BTreeSet, HashSet};

/// Downward-closed family of non-empty vertex sets over `0..n_vertices`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SimplicialComplex {
    n_vertices: usize,
    faces: HashSet<Vec<usize>>,
}

impl SimplicialComplex {
    /// Complex generated by `facets` (each closed downward). Every vertex in
    /// `0..n_vertices` is included as a 0-simplex.
    pub fn from_facets(n_vertices: usize, facets: &[Vec<usize>]) -> Result<SimplicialComplex> {
        let mut faces = HashSet::new();
        for v in 0..n_vertices {
            faces.insert(vec![v]);
        }
        for f in facets {
            let mut s = f.clone();
            s.sort_unstable();
            s.dedup();
            if s.len() != f.len() {
                return Err(Error::InvalidComplex(format!(
                    "simplex {f:?} repeats a vertex"
                )));
            }
            if s.iter().any(|&v| v >= n_vertices) {
                return Err(Error::InvalidComplex(format!(
                    "simplex {f:?} uses an unknown vertex"
                )));
            }
            add_with_subsets(&mut faces, &s);
        }
        Ok(SimplicialComplex { n_vertices, faces })
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn contains(&self, simplex: &[usize]) -> bool {
        let mut s = simplex.to_vec();
        s.sort_unstable();
        self.faces.contains(&s)
    }

    pub fn faces(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.faces.iter()
    }

    /// Faces in a deterministic order (dimension, then lexicographic).
    pub fn sorted_faces(&self) -> Vec<Vec<usize>> {
        let mut v: Vec<Vec<usize>> = self.faces.iter().cloned().collect();
        v.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        v
    }

    pub fn dimension(&self) -> Option<usize> {
        self.faces.iter().map(|f| f.len() - 1).max()
    }

    pub fn count(&self, dim: usize) -> usize {
        self.faces.iter().filter(|f| f.len() == dim + 1).count()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut e: Vec<(usize, usize)> = self
            .faces
            .iter()
            .filter(|f| f.len() == 2)
            .map(|f| (f[0], f[1]))
            .collect();
        e.sort_unstable();
        e
    }

    pub fn adjacency(&self) -> Vec<BTreeSet<usize>> {
        let mut adj = vec![BTreeSet::new(); self.n_vertices];
        for (a, b) in self.edges() {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        adj
    }

    /// Flagness with a minimal missing clique as witness on failure.
    pub fn flag_check(&self) -> FlagReport {
        let adj = self.adjacency();
        let mut level: Vec<Vec<usize>> = self
            .faces
            .iter()
            .filter(|f| f.len() == 2)
            .cloned()
            .collect();
        level.sort_unstable();
        while !level.is_empty() {
            let mut next = Vec::new();
            for s in &level {
                let top = *s.last().unwrap();
                let common = adj[s[0]]
                    .iter()
                    .filter(|&&u| u > top && s[1..].iter().all(|w| adj[*w].contains(&u)));
                for &u in common {
                    let mut t = s.clone();
                    t.push(u);
                    if self.faces.contains(&t) {
                        next.push(t);
                    } else if (0..t.len()).all(|i| {
                        let mut sub = t.clone();
                        sub.remove(i);
                        self.faces.contains(&sub)
                    }) {
                        return FlagReport {
                            flag: false,
                            witness: Some(t),
                        };
                    }
                }
            }
            next.sort_unstable();
            next.dedup();
            level = next;
        }
        FlagReport {
            flag: true,
            witness: None,
        }
    }

    pub fn is_flag(&self) -> bool {
        self.flag_check().flag
    }

    /// Length of a shortest cycle in the 1-skeleton, `None` for a forest.
    pub fn girth(&self) -> Option<usize> {
        graph_girth(self.n_vertices, &self.edges())
    }

    /// Full subcomplex of `self` spanned by `vertices`.
    pub fn full_span(&self, vertices: &BTreeSet<usize>) -> SimplicialComplex {
        let faces = self
            .faces
            .iter()
            .filter(|f| f.iter().all(|v| vertices.contains(v)))
            .cloned()
            .collect();
        SimplicialComplex {
            n_vertices: self.n_vertices,
            faces,
        }
    }
}

fn add_with_subsets(faces: &mut HashSet<Vec<usize>>, s: &[usize]) {
    if s.is_empty() || faces.contains(s) {
        return;
    }
    faces.insert(s.to_vec());
    if s.len() > 1 {
        for i in 0..s.len() {
            let mut sub = s.to_vec();
            sub.remove(i);
            add_with_subsets(faces, &sub);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagReport {
    pub flag: bool,
    pub witness: Option<Vec<usize>>,
}

/// `sub` is a full subcomplex of `ambient`: `sub` lies in `ambient` and every
/// simplex of `ambient` whose vertices are vertices of `sub` lies in `sub`.
/// The vertex set of `sub` is the set of vertices appearing in its simplices.
pub fn is_full_subcomplex(sub: &SimplicialComplex, ambient: &SimplicialComplex) -> Result<bool> {
    for f in sub.faces() {
        if !ambient.faces.contains(f) {
            return Err(Error::Precondition(format!(
                "simplex {f:?} is not in the ambient complex"
            )));
        }
    }
    let verts: BTreeSet<usize> = sub.faces().filter(|f| f.len() == 1).map(|f| f[0]).collect();
    Ok(ambient
        .faces()
        .all(|f| !f.iter().all(|v| verts.contains(v)) || sub.faces.contains(f)))
}

/// Girth of a simple graph by breadth-first search from every vertex.
pub fn graph_girth(n: usize, edges: &[(usize, usize)]) -> Option<usize> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        if a == b {
            return Some(1);
        }
        adj[a].push(b);
        adj[b].push(a);
    }
    for a in adj.iter_mut() {
        a.sort_unstable();
        if a.windows(2).any(|w| w[0] == w[1]) {
            return Some(2);
        }
    }
    let mut best: Option<usize> = None;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    for s in 0..n {
        let mut touched = vec![s];
        dist[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    parent[y] = x;
                    touched.push(y);
                    queue.push_back(y);
                } else if parent[x] != y {
                    let len = dist[x] + dist[y] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
        for t in touched {
            dist[t] = usize::MAX;
            parent[t] = usize::MAX;
        }
    }
    best
}
