//! Square-tessellated polygons: discs built from unit squares with marked
//! corners on the boundary.

mod construct;

pub use construct::{
    corner_cut_rectangle, corner_cut_search, fig1_octagon, k_formula, regular_right_pentagon,
    single_vertex_polygon, solve_k, CutPlacement, KSolution, FIG1_PLACEMENT, FIG1_RECT,
};

use crate::complex::{CellRef, CubeComplex};
use crate::error::{Error, Result};
use crate::sym::Sym;
use std::collections::{BTreeMap, HashMap};

/// A tessellated polygon. Squares list their corners as
/// `[v00, v10, v11, v01]`; the first coordinate runs `v00 → v10`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TessellatedPolygon {
    n_vertices: usize,
    squares: Vec<[usize; 4]>,
    /// Boundary vertices in cyclic order, starting at the first corner.
    boundary: Vec<usize>,
    /// Positions of the corners in `boundary`, increasing, starting at 0.
    corners: Vec<usize>,
}

fn edge_key(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

fn square_edges(s: &[usize; 4]) -> [(usize, usize); 4] {
    [
        edge_key(s[0], s[1]),
        edge_key(s[1], s[2]),
        edge_key(s[2], s[3]),
        edge_key(s[3], s[0]),
    ]
}

impl TessellatedPolygon {
    /// Builds and validates a polygon from its squares and boundary data.
    pub fn new(
        n_vertices: usize,
        squares: Vec<[usize; 4]>,
        boundary: Vec<usize>,
        corners: Vec<usize>,
    ) -> Result<TessellatedPolygon> {
        let p = TessellatedPolygon {
            n_vertices,
            squares,
            boundary,
            corners,
        };
        p.validate()?;
        Ok(p)
    }

    /// Relabels vertices in order of first appearance (boundary first, then
    /// squares) and drops unused ones.
    pub(crate) fn compact(
        n_vertices: usize,
        squares: Vec<[usize; 4]>,
        boundary: Vec<usize>,
        corners: Vec<usize>,
    ) -> Result<TessellatedPolygon> {
        let mut map = vec![usize::MAX; n_vertices];
        let mut next = 0;
        let mut see = |v: usize, map: &mut Vec<usize>| -> usize {
            if map[v] == usize::MAX {
                map[v] = next;
                next += 1;
            }
            map[v]
        };
        let boundary: Vec<usize> = boundary.iter().map(|&v| see(v, &mut map)).collect();
        let squares: Vec<[usize; 4]> = squares
            .iter()
            .map(|s| s.map(|v| see(v, &mut map)))
            .collect();
        TessellatedPolygon::new(next, squares, boundary, corners)
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn squares(&self) -> &[[usize; 4]] {
        &self.squares
    }

    pub fn boundary(&self) -> &[usize] {
        &self.boundary
    }

    pub fn corner_positions(&self) -> &[usize] {
        &self.corners
    }

    /// Corner vertices `v_1 .. v_n`.
    pub fn corners(&self) -> Vec<usize> {
        self.corners.iter().map(|&i| self.boundary[i]).collect()
    }

    pub fn n_sides(&self) -> usize {
        self.corners.len()
    }

    pub fn perimeter(&self) -> usize {
        self.boundary.len()
    }

    pub fn side_lengths(&self) -> Vec<usize> {
        let n = self.corners.len();
        (0..n)
            .map(|i| {
                let a = self.corners[i];
                let b = if i + 1 < n {
                    self.corners[i + 1]
                } else {
                    self.perimeter()
                };
                b - a
            })
            .collect()
    }

    /// Boundary vertices of side `i` (0-based), from `v_i` to `v_{i+1}`.
    pub fn side(&self, i: usize) -> Vec<usize> {
        let p = self.perimeter();
        let a = self.corners[i];
        let l = self.side_lengths()[i];
        (0..=l).map(|t| self.boundary[(a + t) % p]).collect()
    }

    pub fn n_squares(&self) -> usize {
        self.squares.len()
    }

    fn edge_counts(&self) -> BTreeMap<(usize, usize), usize> {
        let mut m = BTreeMap::new();
        for s in &self.squares {
            for e in square_edges(s) {
                *m.entry(e).or_insert(0) += 1;
            }
        }
        m
    }

    /// Number of edges at each vertex.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n_vertices];
        for &(a, b) in self.edge_counts().keys() {
            d[a] += 1;
            d[b] += 1;
        }
        d
    }

    /// Checks that the squares form a disc bounded by `boundary`, with at
    /// least three distinct corners.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidPolygon(m));
        if self.squares.is_empty() {
            return bad("no squares".into());
        }
        for s in &self.squares {
            if s.iter().any(|&v| v >= self.n_vertices) {
                return bad(format!("square {s:?} uses an unknown vertex"));
            }
            let mut t = *s;
            t.sort_unstable();
            if t.windows(2).any(|w| w[0] == w[1]) {
                return bad(format!("square {s:?} repeats a vertex"));
            }
        }
        let counts = self.edge_counts();
        let mut bnd: HashMap<usize, Vec<usize>> = HashMap::new();
        for (&(a, b), &c) in &counts {
            match c {
                1 => {
                    bnd.entry(a).or_default().push(b);
                    bnd.entry(b).or_default().push(a);
                }
                2 => {}
                _ => return bad(format!("edge ({a},{b}) lies in {c} squares")),
            }
        }
        let mut seen_sq = std::collections::HashSet::new();
        for s in &self.squares {
            let mut t = *s;
            t.sort_unstable();
            if !seen_sq.insert(t) {
                return bad("two squares share all four corners".into());
            }
        }
        // boundary is one simple cycle
        let p = self.boundary.len();
        if p < 3 || p != bnd.len() {
            return bad(format!(
                "boundary has {p} vertices, boundary edges touch {}",
                bnd.len()
            ));
        }
        let mut on_b = vec![false; self.n_vertices];
        for i in 0..p {
            let (a, b) = (self.boundary[i], self.boundary[(i + 1) % p]);
            if on_b[a] {
                return bad(format!("boundary visits vertex {a} twice"));
            }
            on_b[a] = true;
            if counts.get(&edge_key(a, b)) != Some(&1) {
                return bad(format!("({a},{b}) is not a boundary edge"));
            }
        }
        if bnd.values().any(|n| n.len() != 2) {
            return bad("boundary edges do not form a cycle".into());
        }
        // the squares at each vertex form a fan: a cycle inside, a path on the boundary
        let mut corner_links: Vec<Vec<((usize, usize), (usize, usize))>> =
            vec![Vec::new(); self.n_vertices];
        for s in &self.squares {
            for k in 0..4 {
                let v = s[k];
                let prev = s[(k + 3) % 4];
                let next = s[(k + 1) % 4];
                corner_links[v].push((edge_key(v, prev), edge_key(v, next)));
            }
        }
        let degrees = self.degrees();
        for v in 0..self.n_vertices {
            let links = &corner_links[v];
            if links.is_empty() {
                return bad(format!("vertex {v} lies in no square"));
            }
            let mut uf: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
            fn find(
                uf: &mut HashMap<(usize, usize), (usize, usize)>,
                x: (usize, usize),
            ) -> (usize, usize) {
                let p = *uf.entry(x).or_insert(x);
                if p == x {
                    x
                } else {
                    let r = find(uf, p);
                    uf.insert(x, r);
                    r
                }
            }
            for &(a, b) in links {
                let (ra, rb) = (find(&mut uf, a), find(&mut uf, b));
                uf.insert(ra, rb);
            }
            let keys: Vec<(usize, usize)> = uf.keys().copied().collect();
            let r0 = find(&mut uf, keys[0]);
            if keys.iter().any(|&k| find(&mut uf, k) != r0) {
                return bad(format!(
                    "squares around vertex {v} do not form a single fan"
                ));
            }
            let expected = if on_b[v] { degrees[v] - 1 } else { degrees[v] };
            if links.len() != expected {
                return bad(format!("vertex {v} is not a manifold point"));
            }
        }
        // connected with Euler characteristic one
        let mut parent: Vec<usize> = (0..self.n_vertices).collect();
        fn root(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &(a, b) in counts.keys() {
            let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
            parent[ra] = rb;
        }
        let r0 = root(&mut parent, 0);
        if (0..self.n_vertices).any(|v| root(&mut parent, v) != r0) {
            return bad("not connected".into());
        }
        let chi = self.n_vertices as i64 - counts.len() as i64 + self.squares.len() as i64;
        if chi != 1 {
            return bad(format!("Euler characteristic {chi}"));
        }
        // corners
        let n = self.corners.len();
        if n < 3 {
            return bad(format!("{n} corners"));
        }
        if self.corners[0] != 0
            || self.corners.windows(2).any(|w| w[0] >= w[1])
            || self.corners[n - 1] >= p
        {
            return bad("corner positions must increase from 0".into());
        }
        Ok(())
    }

    fn on_boundary(&self) -> Vec<bool> {
        let mut b = vec![false; self.n_vertices];
        for &v in &self.boundary {
            b[v] = true;
        }
        b
    }

    /// Curvature `c(v)`: `4 - deg` inside, `3 - deg` on a side, `2 - deg` at a corner.
    pub fn curvature(&self, v: usize) -> Result<i64> {
        if v >= self.n_vertices {
            return Err(Error::UnknownCell(v));
        }
        Ok(self.curvatures()[v])
    }

    pub fn curvatures(&self) -> Vec<i64> {
        let deg = self.degrees();
        let on_b = self.on_boundary();
        let mut is_corner = vec![false; self.n_vertices];
        for v in self.corners() {
            is_corner[v] = true;
        }
        (0..self.n_vertices)
            .map(|v| {
                let base = if is_corner[v] {
                    2
                } else if on_b[v] {
                    3
                } else {
                    4
                };
                base - deg[v] as i64
            })
            .collect()
    }

    /// Total curvature; always `4 - n` for a disc.
    pub fn gauss_bonnet(&self) -> i64 {
        let total: i64 = self.curvatures().iter().sum();
        assert_eq!(
            total,
            4 - self.n_sides() as i64,
            "combinatorial Gauss-Bonnet fails"
        );
        total
    }

    /// Vertices of positive curvature (empty exactly when CAT(0)).
    pub fn positive_curvature(&self) -> Vec<usize> {
        self.curvatures()
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(v, _)| v)
            .collect()
    }

    pub fn is_cat0(&self) -> bool {
        self.positive_curvature().is_empty()
    }

    /// Relabels corners so that side `k` becomes side 0.
    pub fn rotate(&self, k: usize) -> Result<TessellatedPolygon> {
        let n = self.n_sides();
        if k >= n {
            return Err(Error::OutOfRange(format!("side {k} of {n}")));
        }
        let corners: Vec<usize> = (0..n).map(|j| self.corners[(k + j) % n]).collect();
        rotate_to_first_corner(
            self.n_vertices,
            self.squares.clone(),
            self.boundary.clone(),
            corners,
        )
    }

    /// Adds a corner `k` steps into side `i` (0-based), `0 < k < l_i`.
    pub fn insert_corner(&self, i: usize, k: usize) -> Result<TessellatedPolygon> {
        let ls = self.side_lengths();
        if i >= ls.len() {
            return Err(Error::OutOfRange(format!("side {i} of {}", ls.len())));
        }
        if k == 0 || k >= ls[i] {
            return Err(Error::OutOfRange(format!(
                "position {k} on a side of length {}",
                ls[i]
            )));
        }
        let mut corners = self.corners.clone();
        corners.insert(i + 1, self.corners[i] + k);
        TessellatedPolygon::new(
            self.n_vertices,
            self.squares.clone(),
            self.boundary.clone(),
            corners,
        )
    }

    /// Attaches a `1 × l_i` strip along side `i` (0-based).
    pub fn collar(&self, i: usize) -> Result<TessellatedPolygon> {
        let n = self.n_sides();
        if i >= n {
            return Err(Error::OutOfRange(format!("side {i} of {n}")));
        }
        let side = self.side(i);
        let l = side.len() - 1;
        let mut squares = self.squares.clone();
        let q0 = self.n_vertices;
        for j in 0..l {
            squares.push([side[j], side[j + 1], q0 + j + 1, q0 + j]);
        }
        let p = self.perimeter();
        let a = self.corners[i];
        // new boundary, read from the old start: replace the interior of side i
        let mut boundary = Vec::with_capacity(p + 2);
        let mut corners = Vec::with_capacity(n);
        let mut old_to_new = vec![0usize; p];
        for t in 0..p {
            if t == a {
                old_to_new[t] = boundary.len();
                boundary.push(self.boundary[t]);
                boundary.extend((0..=l).map(|j| q0 + j));
                continue;
            }
            // the interior of side i leaves the boundary; v_{i+1} stays
            let offset = (t + p - a) % p;
            if offset > 0 && offset < l {
                continue;
            }
            old_to_new[t] = boundary.len();
            boundary.push(self.boundary[t]);
        }
        for (j, &c) in self.corners.iter().enumerate() {
            let nc = if j == i {
                old_to_new[c] + 1
            } else if j == (i + 1) % n {
                old_to_new[a] + 1 + l
            } else {
                old_to_new[c]
            };
            corners.push(nc);
        }
        rotate_to_first_corner(self.n_vertices + l + 1, squares, boundary, corners)
    }

    /// Collars every side once: each side grows by two.
    pub fn collar_all(&self) -> Result<TessellatedPolygon> {
        let mut s = self.clone();
        for i in 0..self.n_sides() {
            s = s.collar(i)?;
        }
        Ok(s)
    }

    pub fn collar_all_iter(&self, m: usize) -> Result<TessellatedPolygon> {
        let mut s = self.clone();
        for _ in 0..m {
            s = s.collar_all()?;
        }
        Ok(s)
    }

    /// Cubical subdivision: four squares per square, side lengths doubled.
    pub fn subdivide(&self) -> Result<TessellatedPolygon> {
        let nv = self.n_vertices;
        let counts = self.edge_counts();
        let mid: HashMap<(usize, usize), usize> = counts
            .keys()
            .enumerate()
            .map(|(k, &e)| (e, nv + k))
            .collect();
        let centre0 = nv + counts.len();
        let mut squares = Vec::with_capacity(4 * self.squares.len());
        for (k, s) in self.squares.iter().enumerate() {
            let c = centre0 + k;
            let m = |a: usize, b: usize| mid[&edge_key(s[a], s[b])];
            let (m01, m12, m23, m30) = (m(0, 1), m(1, 2), m(2, 3), m(3, 0));
            squares.push([s[0], m01, c, m30]);
            squares.push([m01, s[1], m12, c]);
            squares.push([c, m12, s[2], m23]);
            squares.push([m30, c, m23, s[3]]);
        }
        let p = self.perimeter();
        let mut boundary = Vec::with_capacity(2 * p);
        for t in 0..p {
            let (a, b) = (self.boundary[t], self.boundary[(t + 1) % p]);
            boundary.push(a);
            boundary.push(mid[&edge_key(a, b)]);
        }
        let corners = self.corners.iter().map(|&c| 2 * c).collect();
        TessellatedPolygon::new(centre0 + self.squares.len(), squares, boundary, corners)
    }

    /// The carrier cube complex. Vertex ids agree with polygon vertex ids;
    /// edges follow in increasing vertex-pair order, oriented low to high.
    pub fn carrier(&self) -> PolygonCarrier {
        let mut c = CubeComplex::new();
        for _ in 0..self.n_vertices {
            c.push_vertex();
        }
        let mut edges = HashMap::new();
        for &(a, b) in self.edge_counts().keys() {
            let id = c.push_unchecked(1, &[CellRef::vertex(a), CellRef::vertex(b)]);
            edges.insert((a, b), id);
        }
        let edge_ref = |a: usize, b: usize| -> CellRef {
            let id = edges[&edge_key(a, b)];
            CellRef::new(id, Sym::line(a > b))
        };
        let mut square_ids = Vec::with_capacity(self.squares.len());
        for s in &self.squares {
            let faces = [
                edge_ref(s[0], s[3]),
                edge_ref(s[1], s[2]),
                edge_ref(s[0], s[1]),
                edge_ref(s[3], s[2]),
            ];
            square_ids.push(c.push_unchecked(2, &faces));
        }
        PolygonCarrier {
            complex: c,
            edges,
            squares: square_ids,
        }
    }

    /// Boundary edges as cells of the carrier with their direction of travel.
    pub fn boundary_edges(&self, carrier: &PolygonCarrier) -> Vec<CellRef> {
        let p = self.perimeter();
        (0..p)
            .map(|t| {
                let (a, b) = (self.boundary[t], self.boundary[(t + 1) % p]);
                CellRef::new(carrier.edges[&edge_key(a, b)], Sym::line(a > b))
            })
            .collect()
    }
}

/// Carrier complex of a polygon and the ids of its cells.
#[derive(Clone, Debug)]
pub struct PolygonCarrier {
    pub complex: CubeComplex,
    pub edges: HashMap<(usize, usize), usize>,
    pub squares: Vec<usize>,
}

fn rotate_to_first_corner(
    n_vertices: usize,
    squares: Vec<[usize; 4]>,
    boundary: Vec<usize>,
    corners: Vec<usize>,
) -> Result<TessellatedPolygon> {
    let p = boundary.len();
    let mut cs: Vec<usize> = corners.clone();
    let start = cs[0];
    let boundary: Vec<usize> = (0..p).map(|t| boundary[(start + t) % p]).collect();
    for c in cs.iter_mut() {
        *c = (*c + p - start) % p;
    }
    if cs.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidPolygon("corners out of cyclic order".into()));
    }
    TessellatedPolygon::new(n_vertices, squares, boundary, cs)
}

/// A `w × h` rectangle as a 4-gon with corners at the rectangle corners.
pub fn rectangle(w: usize, h: usize) -> Result<TessellatedPolygon> {
    if w == 0 || h == 0 {
        return Err(Error::InvalidPolygon("empty rectangle".into()));
    }
    let id = |x: usize, y: usize| y * (w + 1) + x;
    let mut squares = Vec::new();
    for y in 0..h {
        for x in 0..w {
            squares.push([id(x, y), id(x + 1, y), id(x + 1, y + 1), id(x, y + 1)]);
        }
    }
    let boundary = construct::rectangle_boundary(w, h)
        .into_iter()
        .map(|(x, y)| id(x, y))
        .collect();
    TessellatedPolygon::new(
        (w + 1) * (h + 1),
        squares,
        boundary,
        vec![0, w, w + h, 2 * w + h],
    )
}
