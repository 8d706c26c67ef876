//! Hyperplanes, half-spaces, convex hulls and fixed cubes in combinatorially
//! CAT(0) cubical complexes.
//!
//! Simple connectivity is the caller's responsibility. When it fails the
//! symptoms surface here as one-sided or non-separating hyperplanes.

use crate::complex::{cubicality_check, gromov_check, CubeComplex, CubeMap};
use crate::error::{Error, Result};
use std::collections::{HashMap, VecDeque};

/// Directed edge `2e` runs from tail to head of edge cell `e`, `2e + 1` back.
pub fn directed(e: usize, reversed: bool) -> usize {
    2 * e + reversed as usize
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    /// Keeps the smaller root so classes are represented by their least member.
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi] = lo;
        }
    }
}

/// Classes of directed edges under parallelism in squares.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hyperplanes {
    /// Hyperplane of each directed edge, `usize::MAX` off the edges.
    pub of_directed: Vec<usize>,
    /// Directed edges of each hyperplane, ascending. Hyperplanes are
    /// numbered by their least directed edge.
    pub members: Vec<Vec<usize>>,
    pub opposite: Vec<usize>,
    /// Opposite pairs `(h, opposite(h))` with `h` the smaller, ordered by `h`.
    pub pairs: Vec<(usize, usize)>,
    /// Pair index of each hyperplane.
    pub pair_of: Vec<usize>,
    /// Incident edges of each vertex.
    adjacency: Vec<Vec<usize>>,
}

impl Hyperplanes {
    /// Checks cubicality, the flag condition and connectivity, then builds
    /// the classes.
    pub fn new(c: &CubeComplex) -> Result<Hyperplanes> {
        if c.vertices().next().is_none() {
            return Err(Error::EmptyInput);
        }
        if c.is_degenerate() {
            return Err(Error::Degenerate);
        }
        if !cubicality_check(c).is_cubical() {
            return Err(Error::Precondition("complex is not cubical".into()));
        }
        if !gromov_check(c).pass {
            return Err(Error::Precondition("some vertex link is not flag".into()));
        }
        let adjacency = adjacency(c);
        let dist = distances(c, &adjacency, c.vertices().next().unwrap());
        if let Some(v) = c.vertices().find(|&v| dist[v].is_none()) {
            return Err(Error::Disconnected(c.vertices().next().unwrap(), v));
        }
        Self::classes(c, adjacency)
    }

    fn classes(c: &CubeComplex, adjacency: Vec<Vec<usize>>) -> Result<Hyperplanes> {
        let mut uf = UnionFind((0..2 * c.len()).collect());
        for q in c.cells_of_dim(2) {
            for d in 0..2 {
                let [a, b] = square_sides(c, q, d)?;
                uf.union(a, b);
                uf.union(a ^ 1, b ^ 1);
            }
        }
        let mut of_directed = vec![usize::MAX; 2 * c.len()];
        let mut members: Vec<Vec<usize>> = Vec::new();
        let mut index: HashMap<usize, usize> = HashMap::new();
        for e in c.cells_of_dim(1) {
            for x in [directed(e, false), directed(e, true)] {
                let r = uf.find(x);
                let h = *index.entry(r).or_insert_with(|| {
                    members.push(Vec::new());
                    members.len() - 1
                });
                of_directed[x] = h;
                members[h].push(x);
            }
        }
        // directed edges are visited in ascending order, so classes come out
        // numbered by least member
        for m in &mut members {
            m.sort_unstable();
        }
        let opposite: Vec<usize> = members.iter().map(|m| of_directed[m[0] ^ 1]).collect();
        if let Some(h) = (0..members.len()).find(|&h| opposite[h] == h) {
            return Err(Error::Precondition(format!(
                "hyperplane {h} is its own opposite"
            )));
        }
        for q in c.cells_of_dim(2) {
            let mut seen: HashMap<usize, usize> = HashMap::new();
            for d in 0..2 {
                for x in square_sides(c, q, d)? {
                    for y in [x, x ^ 1] {
                        *seen.entry(of_directed[y]).or_default() += 1;
                    }
                }
            }
            if let Some((h, _)) = seen.iter().find(|(_, &n)| n > 2) {
                return Err(Error::Precondition(format!(
                    "hyperplane {h} crosses square {q} twice"
                )));
            }
        }
        let mut pairs = Vec::new();
        let mut pair_of = vec![0; members.len()];
        for h in 0..members.len() {
            if h < opposite[h] {
                pair_of[h] = pairs.len();
                pair_of[opposite[h]] = pairs.len();
                pairs.push((h, opposite[h]));
            }
        }
        Ok(Hyperplanes {
            of_directed,
            members,
            opposite,
            pairs,
            pair_of,
            adjacency,
        })
    }

    /// Pair crossed by an edge cell.
    pub fn pair_of_edge(&self, e: usize) -> usize {
        self.pair_of[self.of_directed[directed(e, false)]]
    }

    pub fn incident_edges(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }
}

/// The two directed edges of square `q` running along coordinate `d`, from
/// the minus end to the plus end.
fn square_sides(c: &CubeComplex, q: usize, d: usize) -> Result<[usize; 2]> {
    let o = 1 - d;
    let mut out = [0; 2];
    for (k, plus) in [false, true].into_iter().enumerate() {
        let e = c.face(q, o, plus).cell();
        let other = (plus as usize) << o;
        let (from, to) = (
            c.corner_vertex(q, other),
            c.corner_vertex(q, other | 1 << d),
        );
        out[k] = match c.edge_ends(e) {
            (t, h) if (t, h) == (from, to) => directed(e, false),
            (t, h) if (t, h) == (to, from) => directed(e, true),
            _ => {
                return Err(Error::InvalidComplex(format!(
                    "square {q} has a side that is not one of its edges"
                )))
            }
        };
    }
    Ok(out)
}

fn adjacency(c: &CubeComplex) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); c.len()];
    for e in c.cells_of_dim(1) {
        let (a, b) = c.edge_ends(e);
        adj[a].push(e);
        if b != a {
            adj[b].push(e);
        }
    }
    adj
}

fn other_end(c: &CubeComplex, e: usize, v: usize) -> usize {
    let (a, b) = c.edge_ends(e);
    if a == v {
        b
    } else {
        a
    }
}

fn distances(c: &CubeComplex, adj: &[Vec<usize>], v: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; c.len()];
    dist[v] = Some(0);
    let mut queue = VecDeque::from([v]);
    while let Some(x) = queue.pop_front() {
        let dx = dist[x].unwrap();
        for &e in &adj[x] {
            let y = other_end(c, e, x);
            if dist[y].is_none() {
                dist[y] = Some(dx + 1);
                queue.push_back(y);
            }
        }
    }
    dist
}

fn require_vertex(c: &CubeComplex, v: usize) -> Result<()> {
    if v >= c.len() {
        return Err(Error::UnknownCell(v));
    }
    if c.dim(v) != 0 {
        return Err(Error::NotAVertex(v));
    }
    Ok(())
}

/// Length of a shortest edge path.
pub fn skeleton_distance(c: &CubeComplex, v: usize, w: usize) -> Result<usize> {
    require_vertex(c, v)?;
    require_vertex(c, w)?;
    distances(c, &adjacency(c), v)[w].ok_or(Error::Disconnected(v, w))
}

/// Vertex sets of the two half-spaces of pair `p`: first the side holding
/// the tails of the edges of `pairs[p].0`.
pub fn halfspaces(c: &CubeComplex, hp: &Hyperplanes, p: usize) -> Result<[Vec<usize>; 2]> {
    let mask = halfspace_mask(c, hp, p)?;
    let mut out = [Vec::new(), Vec::new()];
    for v in c.vertices() {
        out[mask[v] as usize].push(v);
    }
    Ok(out)
}

/// `true` on the vertices of the second half-space of pair `p`.
fn halfspace_mask(c: &CubeComplex, hp: &Hyperplanes, p: usize) -> Result<Vec<bool>> {
    if p >= hp.pairs.len() {
        return Err(Error::OutOfRange(format!("hyperplane pair {p}")));
    }
    let h = hp.pairs[p].0;
    let mut comp = vec![usize::MAX; c.len()];
    let mut n_comp = 0;
    for s in c.vertices() {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = n_comp;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &e in hp.incident_edges(x) {
                if hp.pair_of_edge(e) == p {
                    continue;
                }
                let y = other_end(c, e, x);
                if comp[y] == usize::MAX {
                    comp[y] = n_comp;
                    queue.push_back(y);
                }
            }
        }
        n_comp += 1;
    }
    if n_comp > 2 {
        return Err(Error::MoreThanTwoComponents(p));
    }
    let tail_of = |x: usize| {
        let (a, b) = c.edge_ends(x / 2);
        if x.is_multiple_of(2) {
            a
        } else {
            b
        }
    };
    let tail_comp = comp[tail_of(hp.members[h][0])];
    for &x in &hp.members[h] {
        let tail = tail_of(x);
        let head = tail_of(x ^ 1);
        if comp[tail] != tail_comp || comp[head] == tail_comp {
            return Err(Error::Precondition(format!(
                "hyperplane pair {p} does not separate"
            )));
        }
    }
    Ok(c.cells()
        .map(|v| c.dim(v) == 0 && comp[v] != tail_comp)
        .collect())
}

/// Hyperplane classes with both half-spaces of every opposite pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperplaneDecomposition {
    pub hyperplanes: Hyperplanes,
    pub sides: Vec<[Vec<usize>; 2]>,
}

impl HyperplaneDecomposition {
    /// Which half-space of pair `p` holds vertex `v`.
    pub fn side(&self, p: usize, v: usize) -> Option<usize> {
        (0..2).find(|&k| self.sides[p][k].binary_search(&v).is_ok())
    }

    /// Half-space of every pair holding `v`.
    pub fn membership(&self, v: usize) -> Vec<Option<usize>> {
        (0..self.sides.len()).map(|p| self.side(p, v)).collect()
    }
}

pub fn hyperplanes(c: &CubeComplex) -> Result<HyperplaneDecomposition> {
    let hp = Hyperplanes::new(c)?;
    let sides = (0..hp.pairs.len())
        .map(|p| halfspaces(c, &hp, p))
        .collect::<Result<_>>()?;
    Ok(HyperplaneDecomposition {
        hyperplanes: hp,
        sides,
    })
}

/// Number of opposite pairs whose half-spaces put `v` and `w` apart.
pub fn separating_pairs(d: &HyperplaneDecomposition, v: usize, w: usize) -> usize {
    (0..d.sides.len())
        .filter(|&p| d.side(p, v) != d.side(p, w))
        .count()
}

/// The smallest combinatorially convex subcomplex containing some cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hull {
    pub vertices: Vec<usize>,
    /// Full span of `vertices` as a cell mask.
    pub mask: Vec<bool>,
    /// Pairs separating two input vertices.
    pub separating: usize,
    /// `N · C(n, 2)`: `n` input vertices at most `N` apart.
    pub bound_exponent: usize,
}

/// Convex hull of the vertices of `cells`.
pub fn convex_hull(c: &CubeComplex, cells: &[usize]) -> Result<Hull> {
    convex_hull_with(c, &Hyperplanes::new(c)?, cells)
}

/// Grows the hull outwards from the input: a step across an edge stays in
/// the hull exactly when the edge's pair separates two input vertices, so
/// half-spaces are computed only for pairs met on the boundary.
pub fn convex_hull_with(c: &CubeComplex, hp: &Hyperplanes, cells: &[usize]) -> Result<Hull> {
    let mut input: Vec<usize> = Vec::new();
    for &q in cells {
        if q >= c.len() {
            return Err(Error::UnknownCell(q));
        }
        input.extend(c.corner_vertices(q));
    }
    input.sort_unstable();
    input.dedup();
    if input.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut splits: HashMap<usize, bool> = HashMap::new();
    let mut inside = vec![false; c.len()];
    for &v in &input {
        inside[v] = true;
    }
    let mut queue: VecDeque<usize> = input.iter().copied().collect();
    while let Some(x) = queue.pop_front() {
        for &e in hp.incident_edges(x) {
            let y = other_end(c, e, x);
            if inside[y] {
                continue;
            }
            let p = hp.pair_of_edge(e);
            let split = match splits.get(&p) {
                Some(&s) => s,
                None => {
                    let m = halfspace_mask(c, hp, p)?;
                    let s = input.iter().any(|&v| m[v]) && input.iter().any(|&v| !m[v]);
                    splits.insert(p, s);
                    s
                }
            };
            if split {
                inside[y] = true;
                queue.push_back(y);
            }
        }
    }
    let vertices: Vec<usize> = c.vertices().filter(|&v| inside[v]).collect();
    let mask: Vec<bool> = c
        .cells()
        .map(|q| c.corner_vertices(q).iter().all(|&v| inside[v]))
        .collect();
    // pairs crossing the hull are exactly those splitting the input
    let crossing: std::collections::HashSet<usize> = c
        .cells_of_dim(1)
        .filter(|&e| mask[e])
        .map(|e| hp.pair_of_edge(e))
        .collect();
    let n = input.len();
    let mut far = 0;
    for &v in &input {
        let dist = distances(c, &hp.adjacency, v);
        far = far.max(input.iter().filter_map(|&w| dist[w]).max().unwrap_or(0));
    }
    Ok(Hull {
        vertices,
        mask,
        separating: crossing.len(),
        bound_exponent: far * (n * (n - 1) / 2),
    })
}

/// A cube mapped to itself by every generator; its barycentre is fixed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedCube {
    pub cell: usize,
    pub dim: usize,
    /// Whether the search ran inside the hull of an orbit (otherwise the
    /// hyperplane preconditions failed and every cell was searched).
    pub via_hull: bool,
}

fn check_automorphism(c: &CubeComplex, g: &CubeMap) -> Result<()> {
    g.check(c, c)?;
    let mut hit = vec![false; c.len()];
    for q in c.cells() {
        let r = g.images[q];
        if c.dim(r.cell()) != c.dim(q) || !r.sym.is_bijective(c.dim(q)) || hit[r.cell()] {
            return Err(Error::InvalidMap(format!(
                "generator is not an automorphism at cell {q}"
            )));
        }
        hit[r.cell()] = true;
    }
    Ok(())
}

/// Setwise-invariant cube of least dimension (then least id) for the group
/// generated by `gens`, searched in the hull of the orbit of the first vertex.
pub fn fixed_point(c: &CubeComplex, gens: &[CubeMap]) -> Result<FixedCube> {
    for g in gens {
        check_automorphism(c, g)?;
    }
    let v0 = c.vertices().next().ok_or(Error::EmptyInput)?;
    let mut orbit = vec![v0];
    let mut seen = vec![false; c.len()];
    seen[v0] = true;
    let mut k = 0;
    while k < orbit.len() {
        let v = orbit[k];
        for g in gens {
            let w = g.images[v].cell();
            if !seen[w] {
                seen[w] = true;
                orbit.push(w);
            }
        }
        k += 1;
    }
    let hull = Hyperplanes::new(c).and_then(|hp| convex_hull_with(c, &hp, &orbit));
    let (candidates, via_hull) = match hull {
        Ok(h) => (h.mask, true),
        Err(_) => (vec![true; c.len()], false),
    };
    c.cells()
        .filter(|&q| candidates[q] && gens.iter().all(|g| g.images[q].cell() == q))
        .min_by_key(|&q| (c.dim(q), q))
        .map(|cell| FixedCube {
            cell,
            dim: c.dim(cell),
            via_hull,
        })
        .ok_or(Error::NoInvariantCube)
}

/// Whether there is no infinite ascending chain of cells. A finite complex
/// whose faces all drop dimension never has one.
pub fn ascending_chain_check(c: &CubeComplex) -> bool {
    c.cells().all(|q| {
        c.faces(q)
            .iter()
            .all(|f| f.cell() < c.len() && c.dim(f.cell()) < c.dim(q))
    })
}
