//! Cellular maps, involutions and the standard constructions: products,
//! gluing, quotients, fixed sets, subdivision and mapping cylinders.

use super::cube::{import, CellRef, CubeComplex};
use crate::error::{Error, Result};
use crate::sym::Sym;
use std::collections::HashMap;

/// A cellular map of cube complexes: each source cell goes to a target cell
/// through a coordinate map (a symmetry, or a collapse for degenerate maps).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeMap {
    pub images: Vec<CellRef>,
}

impl CubeMap {
    pub fn identity(c: &CubeComplex) -> CubeMap {
        CubeMap {
            images: c
                .cells()
                .map(|q| CellRef::new(q, Sym::identity(c.dim(q))))
                .collect(),
        }
    }

    pub fn image(&self, c: usize) -> CellRef {
        self.images[c]
    }

    /// Checks dimensions and compatibility with every face map.
    pub fn check(&self, src: &CubeComplex, dst: &CubeComplex) -> Result<()> {
        if self.images.len() != src.len() {
            return Err(Error::InvalidMap(format!(
                "map has {} images for {} cells",
                self.images.len(),
                src.len()
            )));
        }
        for c in src.cells() {
            let r = self.images[c];
            if r.cell() >= dst.len() {
                return Err(Error::InvalidMap(format!(
                    "cell {c} maps to unknown cell {}",
                    r.cell()
                )));
            }
            let d = src.dim(c);
            if r.sym.len() != dst.dim(r.cell()) || (0..r.sym.len()).any(|k| r.sym.get(k).0 >= d) {
                return Err(Error::InvalidMap(format!(
                    "cell {c}: coordinate map {:?} does not fit",
                    r.sym
                )));
            }
            for i in 0..d {
                for plus in [false, true] {
                    let f = src.face(c, i, plus);
                    let via_face = self.images[f.cell()].after(&f.sym);
                    if via_face != dst.restrict(r, d, i, plus) {
                        return Err(Error::InvalidMap(format!(
                            "cell {c}: map does not commute with face ({i},{plus})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &CubeMap) -> CubeMap {
        CubeMap {
            images: inner
                .images
                .iter()
                .map(|r| self.images[r.cell()].after(&r.sym))
                .collect(),
        }
    }

    /// True when no cell is collapsed.
    pub fn is_dimension_preserving(&self, src: &CubeComplex) -> bool {
        src.cells().all(|c| self.images[c].sym.len() == src.dim(c))
    }
}

/// A cellular self-map of order two.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Involution {
    pub map: CubeMap,
}

impl Involution {
    pub fn identity(c: &CubeComplex) -> Involution {
        Involution {
            map: CubeMap::identity(c),
        }
    }

    /// Validates the map and checks that it squares to the identity.
    pub fn new(c: &CubeComplex, map: CubeMap) -> Result<Involution> {
        map.check(c, c)?;
        if !map.is_dimension_preserving(c) {
            return Err(Error::InvalidMap("involution collapses a cell".into()));
        }
        for q in c.cells() {
            let r = map.images[q];
            let back = map.images[r.cell()].after(&r.sym);
            if back != CellRef::new(q, Sym::identity(c.dim(q))) {
                return Err(Error::InvalidMap(format!(
                    "involution does not square to the identity at cell {q}"
                )));
            }
        }
        Ok(Involution { map })
    }

    pub fn image(&self, c: usize) -> CellRef {
        self.map.images[c]
    }

    /// Pointwise-fixed cells; errors on a cell fixed only setwise.
    pub fn fixed_mask(&self, c: &CubeComplex) -> Result<Vec<bool>> {
        c.cells()
            .map(|q| {
                let r = self.map.images[q];
                if r.cell() != q {
                    Ok(false)
                } else if r.sym.is_identity() {
                    Ok(true)
                } else {
                    Err(Error::SetwiseNotPointwise(q))
                }
            })
            .collect()
    }
}

/// Product complex; cell `(p, q)` gets id `p * |b| + q` and the coordinates
/// of `p` followed by those of `q`.
pub fn product(a: &CubeComplex, b: &CubeComplex) -> CubeComplex {
    let nb = b.len();
    let mut out = CubeComplex::new();
    let mut buf = Vec::new();
    for p in a.cells() {
        let dp = a.dim(p);
        for q in b.cells() {
            let dq = b.dim(q);
            buf.clear();
            for i in 0..dp {
                for plus in [false, true] {
                    let f = a.face(p, i, plus);
                    let sym = f.sym.direct_sum(dp - 1, &Sym::identity(dq));
                    buf.push(CellRef::new(f.cell() * nb + q, sym));
                }
            }
            for j in 0..dq {
                for plus in [false, true] {
                    let g = b.face(q, j, plus);
                    let sym = Sym::identity(dp).direct_sum(dp, &g.sym);
                    buf.push(CellRef::new(p * nb + g.cell(), sym));
                }
            }
            out.push_unchecked(dp + dq, &buf);
        }
    }
    out
}

/// A path of `n` unit edges: vertices `0..=n`, then edge `k` from `k` to `k+1`.
pub fn interval(n: usize) -> CubeComplex {
    let mut out = CubeComplex::new();
    for _ in 0..=n {
        out.push_vertex();
    }
    for k in 0..n {
        out.push_unchecked(1, &[CellRef::vertex(k), CellRef::vertex(k + 1)]);
    }
    out
}

/// A cycle of `n` unit edges: vertices `0..n`, edge `k` from `k` to `k+1 mod n`.
pub fn cycle(n: usize) -> CubeComplex {
    let mut out = CubeComplex::new();
    for _ in 0..n {
        out.push_vertex();
    }
    for k in 0..n {
        out.push_unchecked(1, &[CellRef::vertex(k), CellRef::vertex((k + 1) % n)]);
    }
    out
}

/// Disjoint union; cells of `b` are shifted by `|a|`.
pub fn disjoint_union(a: &CubeComplex, b: &CubeComplex) -> CubeComplex {
    let mut out = a.clone();
    import(&mut out, b, |_, _| None);
    out
}

/// Result of a gluing: the pushout and where each input cell went.
#[derive(Clone, Debug)]
pub struct Glued {
    pub complex: CubeComplex,
    pub from_a: Vec<CellRef>,
    pub from_b: Vec<CellRef>,
}

/// Pushout of `a ← dom → b`, where `phi[c]` (for `c` in a subcomplex of `a`)
/// is an injective face-compatible assignment into `b`.
pub fn glue(a: &CubeComplex, b: &CubeComplex, phi: &[Option<CellRef>]) -> Result<Glued> {
    if phi.len() != a.len() {
        return Err(Error::InvalidMap(
            "gluing map length differs from complex size".into(),
        ));
    }
    let dom: Vec<bool> = phi.iter().map(Option::is_some).collect();
    if let Some(c) = a
        .cells()
        .find(|&c| dom[c] && a.faces(c).iter().any(|f| !dom[f.cell()]))
    {
        return Err(Error::NotSubcomplex(c));
    }
    let mut seen = HashMap::new();
    for c in a.cells() {
        if let Some(r) = phi[c] {
            if r.cell() >= b.len() || b.dim(r.cell()) != a.dim(c) || r.sym.len() != a.dim(c) {
                return Err(Error::InvalidMap(format!(
                    "cell {c} is not sent to a cell of equal dimension"
                )));
            }
            if let Some(o) = seen.insert(r.cell(), c) {
                return Err(Error::InvalidMap(format!(
                    "cells {o} and {c} have the same image"
                )));
            }
            for i in 0..a.dim(c) {
                for plus in [false, true] {
                    let f = a.face(c, i, plus);
                    let via = phi[f.cell()].unwrap().after(&f.sym);
                    if via != b.restrict(r, a.dim(c), i, plus) {
                        return Err(Error::InvalidMap(format!(
                            "cell {c}: gluing map does not commute with faces"
                        )));
                    }
                }
            }
        }
    }
    let mut complex = b.clone();
    let from_b = CubeMap::identity(b).images;
    let from_a = import(&mut complex, a, |c, _| phi[c]);
    Ok(Glued {
        complex,
        from_a,
        from_b,
    })
}

/// One-point union of `a` and `b` at vertices `va` and `vb`.
pub fn wedge(a: &CubeComplex, va: usize, b: &CubeComplex, vb: usize) -> Result<Glued> {
    for (c, v) in [(a, va), (b, vb)] {
        if v >= c.len() {
            return Err(Error::UnknownCell(v));
        }
        if c.dim(v) != 0 {
            return Err(Error::NotAVertex(v));
        }
    }
    let mut phi = vec![None; a.len()];
    phi[va] = Some(CellRef::vertex(vb));
    glue(a, b, &phi)
}

/// Orbit complex of an involution, with the projection.
pub fn quotient_by_involution(c: &CubeComplex, t: &Involution) -> Result<(CubeComplex, CubeMap)> {
    t.fixed_mask(c)?;
    let mut out = CubeComplex::new();
    let images = import(&mut out, c, |q, img| {
        let r = t.image(q);
        (r.cell() < q).then(|| img[r.cell()].after(&r.sym))
    });
    Ok((out, CubeMap { images }))
}

/// The pointwise-fixed subcomplex, with the old-to-new id map.
pub fn fixed_subcomplex(
    c: &CubeComplex,
    t: &Involution,
) -> Result<(CubeComplex, Vec<Option<usize>>)> {
    let mask = t.fixed_mask(c)?;
    c.subcomplex(&mask)
}

/// Identifies vertices: `rep[v]` is the vertex that `v` becomes (its own id
/// when untouched). Representatives must be fixed by `rep`.
pub fn identify_vertices(c: &CubeComplex, rep: &[usize]) -> Result<(CubeComplex, CubeMap)> {
    for v in c.vertices() {
        let r = rep[v];
        if r >= c.len() || c.dim(r) != 0 || rep[r] != r {
            return Err(Error::InvalidMap(format!(
                "vertex {v} has an invalid representative"
            )));
        }
    }
    let mut out = CubeComplex::new();
    let images = import(&mut out, c, |q, img| {
        (c.dim(q) == 0 && rep[q] != q).then(|| img[rep[q]])
    });
    Ok((out, CubeMap { images }))
}

/// Mapping cylinder of `f: src → dst` on a path of `n` edges: `dst` first,
/// then `src × [0, n]` with level `n` attached through `f`. The interval is
/// the last coordinate of each cylinder cell.
pub struct Cylinder {
    pub complex: CubeComplex,
    /// Image of `(c, vertex k)` at `[c][k]` and of `(c, edge [k, k+1])` at `[c][n + 1 + k]`.
    pub cells: Vec<Vec<CellRef>>,
}

pub fn mapping_cylinder(src: &CubeComplex, dst: &CubeComplex, f: &CubeMap, n: usize) -> Cylinder {
    let iv = interval(n);
    let prod = product(src, &iv);
    let mut complex = dst.clone();
    let m = iv.len();
    let images = import(&mut complex, &prod, |pc, _| {
        let (c, k) = (pc / m, pc % m);
        (k == n).then(|| f.images[c])
    });
    let cells = src
        .cells()
        .map(|c| images[c * m..(c + 1) * m].to_vec())
        .collect();
    Cylinder { complex, cells }
}

/// Mapping torus of `f: c → c` over a path of `n` edges: `c` first (ids
/// unchanged), then `c × [0, n]` with level 0 attached identically and
/// level `n` through `f`. Cell tables as in [`Cylinder`].
pub fn mapping_torus(c: &CubeComplex, f: &CubeMap, n: usize) -> Cylinder {
    let iv = interval(n);
    let prod = product(c, &iv);
    let mut complex = c.clone();
    let m = iv.len();
    let images = import(&mut complex, &prod, |pc, _| {
        let (q, k) = (pc / m, pc % m);
        if k == 0 {
            Some(CellRef::new(q, Sym::identity(c.dim(q))))
        } else if k == n {
            Some(f.images[q])
        } else {
            None
        }
    });
    let cells = c
        .cells()
        .map(|q| images[q * m..(q + 1) * m].to_vec())
        .collect();
    Cylinder { complex, cells }
}

/// The flip `k ↦ n - k` of [`interval`]`(n)`.
pub fn interval_flip(n: usize) -> CubeMap {
    let mut images: Vec<CellRef> = (0..=n).map(|k| CellRef::vertex(n - k)).collect();
    images.extend((0..n).map(|k| CellRef::new(n + 1 + (n - 1 - k), Sym::line(true))));
    CubeMap { images }
}

/// Product of `f: a → a'` and `g: b → b'`, on the cell ids of [`product`].
pub fn product_map(f: &CubeMap, a: &CubeComplex, g: &CubeMap, b_dst: &CubeComplex) -> CubeMap {
    let nb_dst = b_dst.len();
    let mut images = Vec::with_capacity(f.images.len() * g.images.len());
    for (p, fp) in f.images.iter().enumerate() {
        let dp = a.dim(p);
        for gq in &g.images {
            let sym = fp.sym.direct_sum(dp, &gq.sym);
            images.push(CellRef::new(fp.cell() * nb_dst + gq.cell(), sym));
        }
    }
    CubeMap { images }
}

/// A self-map of a glued complex assembled from self-maps of its pieces.
/// `parts` pairs the projection of each piece into the result with a
/// self-map of that piece; each result cell takes its image from the first
/// piece cell that lands on it identically.
pub fn descend(len: usize, parts: &[(&[CellRef], &CubeMap)]) -> Result<CubeMap> {
    let mut images: Vec<Option<CellRef>> = vec![None; len];
    for (proj, g) in parts {
        for (c, r) in proj.iter().enumerate() {
            if images[r.cell()].is_none() && r.sym.is_identity() {
                let h = g.images[c];
                images[r.cell()] = Some(proj[h.cell()].after(&h.sym));
            }
        }
    }
    let images = images
        .into_iter()
        .enumerate()
        .map(|(c, r)| {
            r.ok_or_else(|| Error::InvalidMap(format!("cell {c} is not covered by any piece")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CubeMap { images })
}

/// Cubical subdivision with an index of its cells.
///
/// Cell `(q, code)` of the subdivision has one entry per coordinate of `q`:
/// [`HALF_MINUS`] for `[-1, 0]`, [`MIDPOINT`] for `{0}`, [`HALF_PLUS`] for `[0, 1]`.
pub struct Subdivision {
    pub complex: CubeComplex,
    base: Vec<usize>,
    dims: Vec<usize>,
    tables: SubdivisionTables,
}

pub const HALF_MINUS: u8 = 0;
pub const MIDPOINT: u8 = 1;
pub const HALF_PLUS: u8 = 2;

fn codes_for_dim(d: usize) -> Vec<Vec<u8>> {
    let total = 3usize.pow(d as u32);
    let mut codes: Vec<Vec<u8>> = (0..total)
        .map(|mut x| {
            (0..d)
                .map(|_| {
                    let r = (x % 3) as u8;
                    x /= 3;
                    r
                })
                .collect()
        })
        .collect();
    codes.sort_by_key(|c| {
        (
            c.iter().filter(|&&v| v != MIDPOINT).count(),
            c.iter().rev().copied().collect::<Vec<u8>>(),
        )
    });
    codes
}

fn code_rank(code: &[u8], tables: &[HashMap<Vec<u8>, usize>]) -> usize {
    tables[code.len()][code]
}

impl Subdivision {
    /// Id of cell `(q, code)`.
    pub fn cell(&self, q: usize, code: &[u8]) -> usize {
        debug_assert_eq!(code.len(), self.dims[q]);
        self.base[q] + code_rank(code, &self.tables.rank)
    }

    /// Codes of the cells coming from a `d`-cube, in id order.
    pub fn codes(&self, d: usize) -> &[Vec<u8>] {
        &self.tables.codes[d]
    }

    /// The subdivision vertex at the centre of `q`.
    pub fn centre(&self, q: usize) -> usize {
        // the all-midpoint code is the unique lowest-dimensional one
        self.base[q]
    }

    /// First subdivision cell coming from `q`.
    pub fn block(&self, q: usize) -> std::ops::Range<usize> {
        self.base[q]..self.base[q] + 3usize.pow(self.dims[q] as u32)
    }
}

/// Per-dimension orderings of subdivision codes.
struct SubdivisionTables {
    codes: Vec<Vec<Vec<u8>>>,
    rank: Vec<HashMap<Vec<u8>, usize>>,
}

impl SubdivisionTables {
    fn new(max_dim: usize) -> SubdivisionTables {
        let codes: Vec<Vec<Vec<u8>>> = (0..=max_dim).map(codes_for_dim).collect();
        let rank = codes
            .iter()
            .map(|cs| cs.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect())
            .collect();
        SubdivisionTables { codes, rank }
    }
}

pub fn cubical_subdivision(c: &CubeComplex) -> CubeComplex {
    subdivide_indexed(c).complex
}

/// Subdivision together with its index tables.
pub fn subdivide_indexed(c: &CubeComplex) -> Subdivision {
    let tables = SubdivisionTables::new(c.dimension().unwrap_or(0));
    let mut out = CubeComplex::new();
    let mut base = Vec::with_capacity(c.len());
    let dims: Vec<usize> = c.cells().map(|q| c.dim(q)).collect();
    let mut buf = Vec::new();
    for q in c.cells() {
        let d = dims[q];
        base.push(out.len());
        for code in &tables.codes[d] {
            buf.clear();
            let free: Vec<usize> = (0..d).filter(|&p| code[p] != MIDPOINT).collect();
            for &p in &free {
                for plus in [false, true] {
                    let at_mid = (code[p] == HALF_MINUS) == plus;
                    if at_mid {
                        let mut fc = code.clone();
                        fc[p] = MIDPOINT;
                        let id = base[q] + code_rank(&fc, &tables.rank);
                        buf.push(CellRef::new(id, Sym::identity(free.len() - 1)));
                    } else {
                        let f = c.face(q, p, plus);
                        let mut rest = code.clone();
                        rest.remove(p);
                        // position of each remaining coordinate among the free ones
                        let mut pos = vec![usize::MAX; d - 1];
                        let mut n = 0;
                        for (k, &x) in rest.iter().enumerate() {
                            if x != MIDPOINT {
                                pos[k] = n;
                                n += 1;
                            }
                        }
                        let fd = dims[f.cell()];
                        let mut fcode = vec![MIDPOINT; fd];
                        let mut raw = Vec::new();
                        for (k, slot) in fcode.iter_mut().enumerate() {
                            let (src, neg) = f.sym.get(k);
                            let x = rest[src];
                            *slot = if neg { 2 - x } else { x };
                            if x != MIDPOINT {
                                let v = (pos[src] + 1) as i8;
                                raw.push(if neg { -v } else { v });
                            }
                        }
                        let id = base[f.cell()] + code_rank(&fcode, &tables.rank);
                        buf.push(CellRef::new(id, Sym::from_raw(&raw)));
                    }
                }
            }
            out.push_unchecked(free.len(), &buf);
        }
    }
    Subdivision {
        complex: out,
        base,
        dims,
        tables,
    }
}
