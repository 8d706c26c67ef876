//! Vertex links of cube complexes, Gromov's flag test, cubicality and
//! combinatorial convexity.

use super::cube::CubeComplex;
use super::simplicial::SimplicialComplex;
use crate::error::{Error, Result};
use std::collections::HashMap;

/// A vertex of a link: one end of an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinkVertex {
    pub edge: usize,
    /// The `+1` end of the edge (its head) when true.
    pub head: bool,
}

/// The simplex of a link contributed by one corner of one cube.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkSimplex {
    pub cube: usize,
    pub corner: usize,
    /// Link vertices, one per coordinate direction of the cube.
    pub vertices: Vec<usize>,
    /// Codimension-one faces, one per direction (indices into the simplex list).
    pub faces: Vec<usize>,
}

/// The link of a vertex, with possibly repeated vertices and faces.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SimplexComplex {
    pub vertex: usize,
    pub vertices: Vec<LinkVertex>,
    pub simplices: Vec<LinkSimplex>,
}

impl SimplexComplex {
    pub fn dimension(&self) -> Option<usize> {
        self.simplices.iter().map(|s| s.vertices.len() - 1).max()
    }

    pub fn count(&self, dim: usize) -> usize {
        self.simplices
            .iter()
            .filter(|s| s.vertices.len() == dim + 1)
            .count()
    }

    /// First obstruction to being a simplicial complex, if any.
    pub fn simplicial_defect(&self) -> Option<LinkDefect> {
        let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
        for (i, s) in self.simplices.iter().enumerate() {
            let mut vs = s.vertices.clone();
            vs.sort_unstable();
            if vs.windows(2).any(|w| w[0] == w[1]) {
                return Some(LinkDefect::RepeatedVertex {
                    cube: s.cube,
                    corner: s.corner,
                });
            }
            if let Some(&j) = seen.get(&vs) {
                let o = &self.simplices[j];
                return Some(LinkDefect::SharedVertexSet {
                    cubes: [(o.cube, o.corner), (s.cube, s.corner)],
                });
            }
            seen.insert(vs, i);
        }
        None
    }

    pub fn is_simplicial(&self) -> bool {
        self.simplicial_defect().is_none()
    }

    /// The underlying simplicial complex, when the link is one.
    pub fn to_simplicial(&self) -> Option<SimplicialComplex> {
        if !self.is_simplicial() {
            return None;
        }
        let facets: Vec<Vec<usize>> = self.simplices.iter().map(|s| s.vertices.clone()).collect();
        SimplicialComplex::from_facets(self.vertices.len(), &facets).ok()
    }
}

/// Why a vertex link fails Gromov's condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinkDefect {
    /// Some face map collapses coordinates, so links are not defined.
    Degenerate,
    /// A corner whose directions hit the same edge end twice.
    RepeatedVertex { cube: usize, corner: usize },
    /// Two corners spanning the same vertex set.
    SharedVertexSet { cubes: [(usize, usize); 2] },
    /// A clique of the link 1-skeleton that spans no simplex.
    MissingSimplex(Vec<LinkVertex>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkFailure {
    pub vertex: usize,
    pub defect: LinkDefect,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GromovReport {
    pub pass: bool,
    pub vertices_checked: usize,
    pub failures: Vec<LinkFailure>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Cubicality {
    pub cubes_embed: bool,
    pub intersections_are_faces: bool,
    pub links_simplicial: bool,
}

impl Cubicality {
    pub fn is_cubical(&self) -> bool {
        self.cubes_embed && self.intersections_are_faces && self.links_simplicial
    }
}

/// For every vertex, the corners `(cube, corner bits)` of positive-dimensional
/// cells sitting at it.
pub fn corner_index(c: &CubeComplex) -> Vec<Vec<(usize, usize)>> {
    let mut idx = vec![Vec::new(); c.len()];
    for q in c.cells() {
        let d = c.dim(q);
        if d == 0 {
            continue;
        }
        for b in 0..1usize << d {
            idx[c.corner_vertex(q, b)].push((q, b));
        }
    }
    idx
}

fn link_from_corners(c: &CubeComplex, v: usize, corners: &[(usize, usize)]) -> SimplexComplex {
    let mut vid: HashMap<LinkVertex, usize> = HashMap::new();
    let mut vertices = Vec::new();
    let mut sid: HashMap<(usize, usize), usize> = HashMap::new();
    let mut simplices = Vec::with_capacity(corners.len());
    let mut sorted = corners.to_vec();
    sorted.sort_by_key(|&(q, b)| (c.dim(q), q, b));
    for &(q, b) in &sorted {
        let d = c.dim(q);
        let code: Vec<i8> = (0..d)
            .map(|i| if b >> i & 1 == 1 { 1 } else { -1 })
            .collect();
        let mut svs = Vec::with_capacity(d);
        for i in 0..d {
            let mut ec = code.clone();
            ec[i] = 0;
            let e = c.subface(q, &ec);
            let (_, neg) = e.sym.get(0);
            let lv = LinkVertex {
                edge: e.cell(),
                head: (code[i] > 0) ^ neg,
            };
            let n = *vid.entry(lv).or_insert_with(|| {
                vertices.push(lv);
                vertices.len() - 1
            });
            svs.push(n);
        }
        let mut faces = Vec::new();
        if d > 1 {
            for i in 0..d {
                let f = c.face(q, i, code[i] > 0);
                let mut g = code.clone();
                g.remove(i);
                let h = f.sym.apply_code(&g);
                let fb = h
                    .iter()
                    .enumerate()
                    .fold(0usize, |a, (k, &x)| if x > 0 { a | 1 << k } else { a });
                faces.push(sid[&(f.cell(), fb)]);
            }
        }
        sid.insert((q, b), simplices.len());
        simplices.push(LinkSimplex {
            cube: q,
            corner: b,
            vertices: svs,
            faces,
        });
    }
    SimplexComplex {
        vertex: v,
        vertices,
        simplices,
    }
}

/// The link of vertex `v`.
pub fn vertex_link(c: &CubeComplex, v: usize) -> Result<SimplexComplex> {
    if v >= c.len() {
        return Err(Error::UnknownCell(v));
    }
    if c.dim(v) != 0 {
        return Err(Error::NotAVertex(v));
    }
    if c.is_degenerate() {
        return Err(Error::Degenerate);
    }
    let mut corners = Vec::new();
    for q in c.cells() {
        let d = c.dim(q);
        if d == 0 {
            continue;
        }
        for b in 0..1usize << d {
            if c.corner_vertex(q, b) == v {
                corners.push((q, b));
            }
        }
    }
    Ok(link_from_corners(c, v, &corners))
}

/// Links of all vertices, indexed by cell id (`None` for cells that are not vertices).
pub fn all_vertex_links(c: &CubeComplex) -> Result<Vec<Option<SimplexComplex>>> {
    if c.is_degenerate() {
        return Err(Error::Degenerate);
    }
    let idx = corner_index(c);
    Ok(c.cells()
        .map(|v| (c.dim(v) == 0).then(|| link_from_corners(c, v, &idx[v])))
        .collect())
}

/// Checks every vertex link for being a flag simplicial complex.
pub fn gromov_check(c: &CubeComplex) -> GromovReport {
    let nv = c.vertices().count();
    if c.is_degenerate() {
        return GromovReport {
            pass: false,
            vertices_checked: 0,
            failures: vec![LinkFailure {
                vertex: c.vertices().next().unwrap_or(0),
                defect: LinkDefect::Degenerate,
            }],
        };
    }
    let idx = corner_index(c);
    let mut failures = Vec::new();
    for v in c.vertices() {
        let link = link_from_corners(c, v, &idx[v]);
        if let Some(d) = link_defect(&link) {
            failures.push(LinkFailure {
                vertex: v,
                defect: d,
            });
        }
    }
    GromovReport {
        pass: failures.is_empty(),
        vertices_checked: nv,
        failures,
    }
}

/// First reason the link fails to be a flag simplicial complex.
pub fn link_defect(link: &SimplexComplex) -> Option<LinkDefect> {
    if let Some(d) = link.simplicial_defect() {
        return Some(d);
    }
    let s = link.to_simplicial()?;
    let r = s.flag_check();
    r.witness
        .map(|w| LinkDefect::MissingSimplex(w.into_iter().map(|i| link.vertices[i]).collect()))
}

/// Closures of all cells as sorted id lists.
fn closures(c: &CubeComplex) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = Vec::with_capacity(c.len());
    for q in c.cells() {
        let mut v: Vec<u32> = vec![q as u32];
        for f in c.faces(q) {
            v.extend_from_slice(&out[f.cell()]);
        }
        v.sort_unstable();
        v.dedup();
        out.push(v);
    }
    out
}

fn intersect(a: &[u32], b: &[u32]) -> Vec<u32> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// The three conditions that together make a cube complex cubical.
pub fn cubicality_check(c: &CubeComplex) -> Cubicality {
    let cl = closures(c);
    let cubes_embed = c
        .cells()
        .all(|q| cl[q].len() == 3usize.pow(c.dim(q) as u32));
    let degenerate = c.is_degenerate();

    // With embedded cubes it suffices to test pairs of maximal cells.
    let mut maximal = vec![true; c.len()];
    if cubes_embed {
        for q in c.cells() {
            for f in c.faces(q) {
                maximal[f.cell()] = false;
            }
        }
    }
    let mut star: Vec<Vec<usize>> = vec![Vec::new(); c.len()];
    for q in c.cells() {
        if maximal[q] {
            for &x in &cl[q] {
                if c.dim(x as usize) == 0 {
                    star[x as usize].push(q);
                }
            }
        }
    }
    let mut intersections_are_faces = true;
    'outer: for v in c.vertices() {
        let s = &star[v];
        for (i, &a) in s.iter().enumerate() {
            for &b in &s[i + 1..] {
                let common = intersect(&cl[a], &cl[b]);
                let first_vertex = common.iter().map(|&x| x as usize).find(|&x| c.dim(x) == 0);
                if first_vertex != Some(v) {
                    continue;
                }
                let top = common
                    .iter()
                    .map(|&x| x as usize)
                    .max_by_key(|&x| (c.dim(x), x))
                    .unwrap();
                if cl[top] != common {
                    intersections_are_faces = false;
                    break 'outer;
                }
            }
        }
    }

    let links_simplicial = !degenerate && {
        let idx = corner_index(c);
        c.vertices()
            .all(|v| link_from_corners(c, v, &idx[v]).is_simplicial())
    };
    Cubicality {
        cubes_embed,
        intersections_are_faces,
        links_simplicial,
    }
}

/// Whether the subcomplex `d` (a cell mask) is combinatorially convex in `c`:
/// connected, and at each of its vertices every corner of `c` whose edges
/// all lie in `d` belongs to a cube of `d`.
pub fn is_combinatorially_convex(c: &CubeComplex, d: &[bool]) -> Result<bool> {
    if d.len() != c.len() {
        return Err(Error::Precondition(
            "mask length differs from complex size".into(),
        ));
    }
    if let Some(q) = c
        .cells()
        .find(|&q| d[q] && c.faces(q).iter().any(|f| !d[f.cell()]))
    {
        return Err(Error::NotSubcomplex(q));
    }
    if !d.iter().any(|&x| x) {
        return Err(Error::EmptyInput);
    }
    if c.is_degenerate() {
        return Err(Error::Degenerate);
    }
    // connectivity of the 1-skeleton of d
    let mut parent: Vec<usize> = (0..c.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for e in c.cells_of_dim(1) {
        if d[e] {
            let (a, b) = c.edge_ends(e);
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
    }
    let verts: Vec<usize> = c.vertices().filter(|&v| d[v]).collect();
    let root = find(&mut parent, verts[0]);
    if verts.iter().any(|&v| find(&mut parent, v) != root) {
        return Ok(false);
    }
    let idx = corner_index(c);
    for &v in &verts {
        let link = link_from_corners(c, v, &idx[v]);
        for s in &link.simplices {
            if !d[s.cube] && s.vertices.iter().all(|&u| d[link.vertices[u].edge]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
