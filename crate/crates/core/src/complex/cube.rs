//! Cube complexes stored by face maps.
//!
//! Cell `c` of dimension `d` has `2d` codimension-one faces, indexed by
//! coordinate direction `i` and sign. The face `{x_i = ±1}` of the standard
//! cube is identified with the standard `(d-1)`-cube by deleting coordinate
//! `i`, and the stored [`Sym`] carries it onto the target cell. Faces always
//! point to cells with smaller ids.

use crate::error::{Error, Result};
use crate::sym::{Sym, MAX_DIM};
use std::collections::BTreeSet;

/// A cell together with a coordinate map into it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CellRef {
    cell: u32,
    pub sym: Sym,
}

impl CellRef {
    pub fn new(cell: usize, sym: Sym) -> CellRef {
        CellRef {
            cell: cell as u32,
            sym,
        }
    }

    /// A vertex target (empty coordinate map).
    pub fn vertex(cell: usize) -> CellRef {
        CellRef::new(cell, Sym::collapse())
    }

    #[inline]
    pub fn cell(&self) -> usize {
        self.cell as usize
    }

    /// Precompose the coordinate map with `inner`.
    pub fn after(&self, inner: &Sym) -> CellRef {
        CellRef {
            cell: self.cell,
            sym: self.sym.compose(inner),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CubeComplex {
    dims: Vec<u8>,
    start: Vec<u32>,
    faces: Vec<CellRef>,
}

#[inline]
fn face_slot(dir: usize, plus: bool) -> usize {
    2 * dir + usize::from(plus)
}

impl CubeComplex {
    pub fn new() -> CubeComplex {
        CubeComplex {
            dims: Vec::new(),
            start: vec![0],
            faces: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    #[inline]
    pub fn dim(&self, c: usize) -> usize {
        self.dims[c] as usize
    }

    /// Top dimension, `None` for the empty complex.
    pub fn dimension(&self) -> Option<usize> {
        self.dims.iter().map(|&d| d as usize).max()
    }

    pub fn cells(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    pub fn cells_of_dim(&self, d: usize) -> impl Iterator<Item = usize> + '_ {
        self.cells().filter(move |&c| self.dim(c) == d)
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.cells_of_dim(0)
    }

    /// Number of cells in each dimension.
    pub fn counts(&self) -> Vec<usize> {
        let mut out = vec![0; self.dimension().map_or(0, |d| d + 1)];
        for &d in &self.dims {
            out[d as usize] += 1;
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

    #[inline]
    pub fn faces(&self, c: usize) -> &[CellRef] {
        let s = self.start[c] as usize;
        let e = self.start[c + 1] as usize;
        &self.faces[s..e]
    }

    #[inline]
    pub fn face(&self, c: usize, dir: usize, plus: bool) -> CellRef {
        self.faces(c)[face_slot(dir, plus)]
    }

    pub fn push_vertex(&mut self) -> usize {
        self.push_unchecked(0, &[])
    }

    /// Appends a cell without validating its faces.
    pub fn push_unchecked(&mut self, dim: usize, faces: &[CellRef]) -> usize {
        debug_assert_eq!(faces.len(), 2 * dim);
        let id = self.dims.len();
        self.dims.push(dim as u8);
        self.faces.extend_from_slice(faces);
        self.start.push(self.faces.len() as u32);
        id
    }

    /// Appends a cell after checking the local face data.
    pub fn push_cell(&mut self, dim: usize, faces: &[CellRef]) -> Result<usize> {
        let id = self.len();
        self.check_face_data(id, dim, faces)?;
        Ok(self.push_unchecked(dim, faces))
    }

    fn check_face_data(&self, id: usize, dim: usize, faces: &[CellRef]) -> Result<()> {
        if dim > MAX_DIM + 1 {
            return Err(Error::InvalidComplex(format!(
                "cell {id}: dimension {dim} too large"
            )));
        }
        if faces.len() != 2 * dim {
            return Err(Error::InvalidComplex(format!(
                "cell {id}: expected {} faces, got {}",
                2 * dim,
                faces.len()
            )));
        }
        for f in faces {
            if f.cell() >= id {
                return Err(Error::InvalidComplex(format!(
                    "cell {id}: face target {} does not precede it",
                    f.cell()
                )));
            }
            let td = self.dim(f.cell());
            if td + 1 > dim || f.sym.len() != td {
                return Err(Error::InvalidComplex(format!(
                    "cell {id}: face target {} has dimension {td}, map length {}",
                    f.cell(),
                    f.sym.len()
                )));
            }
            for k in 0..f.sym.len() {
                if f.sym.get(k).0 + 1 >= dim {
                    return Err(Error::InvalidComplex(format!(
                        "cell {id}: map entry out of range"
                    )));
                }
            }
        }
        Ok(())
    }

    /// True if some face map collapses a coordinate.
    pub fn is_degenerate(&self) -> bool {
        self.cells().any(|c| {
            let d = self.dim(c);
            self.faces(c).iter().any(|f| self.dim(f.cell()) + 1 != d)
        })
    }

    /// Endpoints `(tail, head)` of a 1-cell: the images of `-1` and `+1`.
    pub fn edge_ends(&self, e: usize) -> (usize, usize) {
        (self.face(e, 0, false).cell(), self.face(e, 0, true).cell())
    }

    /// The face of `c` selected by `code` (entries `-1`, `0`, `+1`; zero
    /// marks a free coordinate) together with the map from the free
    /// coordinates, in order, into that cell.
    pub fn subface(&self, c: usize, code: &[i8]) -> CellRef {
        self.subface_from(c, code, None)
    }

    /// As [`subface`](Self::subface), forcing the first coordinate cut.
    pub fn subface_from(&self, c: usize, code: &[i8], first: Option<usize>) -> CellRef {
        debug_assert_eq!(code.len(), self.dim(c));
        let mut track: Vec<Option<(usize, bool)>> = code
            .iter()
            .enumerate()
            .filter(|(_, &x)| x == 0)
            .map(|(q, _)| Some((q, false)))
            .collect();
        let mut cur = c;
        let mut g: Vec<i8> = code.to_vec();
        let mut next = first;
        loop {
            let i = match next.take() {
                Some(i) => i,
                None => match g.iter().position(|&x| x != 0) {
                    Some(i) => i,
                    None => break,
                },
            };
            let f = self.face(cur, i, g[i] > 0);
            g.remove(i);
            let h = f.sym.apply_code(&g);
            for t in track.iter_mut() {
                if let Some((q, neg)) = *t {
                    let qp = if q > i { q - 1 } else { q };
                    *t = f.sym.target_of(qp).map(|(k, n)| (k, neg ^ n));
                }
            }
            cur = f.cell();
            g = h;
        }
        let mut raw = vec![0i8; self.dim(cur)];
        for (j, t) in track.iter().enumerate() {
            if let Some((k, neg)) = *t {
                let v = (j + 1) as i8;
                raw[k] = if neg { -v } else { v };
            }
        }
        CellRef::new(cur, Sym::from_raw(&raw))
    }

    /// Vertex at corner `bits` (bit `i` set means coordinate `i` is `+1`).
    pub fn corner_vertex(&self, c: usize, bits: usize) -> usize {
        let mut cur = c;
        let mut code: Vec<i8> = (0..self.dim(c))
            .map(|i| if bits >> i & 1 == 1 { 1 } else { -1 })
            .collect();
        while !code.is_empty() {
            let f = self.face(cur, 0, code[0] > 0);
            code.remove(0);
            code = f.sym.apply_code(&code);
            cur = f.cell();
        }
        cur
    }

    /// Vertices at the `2^d` corners, in corner-bit order.
    pub fn corner_vertices(&self, c: usize) -> Vec<usize> {
        (0..1usize << self.dim(c))
            .map(|b| self.corner_vertex(c, b))
            .collect()
    }

    /// Restriction of a characteristic map `r` (from a `d`-cube into this
    /// complex) to the face `{x_dir = ±1}` of its source.
    pub fn restrict(&self, r: CellRef, d: usize, dir: usize, plus: bool) -> CellRef {
        let s: i8 = if plus { 1 } else { -1 };
        let code: Vec<i8> = (0..r.sym.len())
            .map(|k| match r.sym.get(k) {
                (p, neg) if p == dir => {
                    if neg {
                        -s
                    } else {
                        s
                    }
                }
                _ => 0,
            })
            .collect();
        let sub = self.subface(r.cell(), &code);
        // free coordinates of `code`, in order, expressed in the face's coordinates
        let raw: Vec<i8> = (0..r.sym.len())
            .filter(|&k| code[k] == 0)
            .map(|k| {
                let (p, neg) = r.sym.get(k);
                let q = if p > dir { p } else { p + 1 } as i8;
                if neg {
                    -q
                } else {
                    q
                }
            })
            .collect();
        debug_assert!(d > dir);
        sub.after(&Sym::from_raw(&raw))
    }

    /// All cells in the closure of `c` (including `c`).
    pub fn closure(&self, c: usize) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        let mut stack = vec![c];
        while let Some(x) = stack.pop() {
            if out.insert(x) {
                stack.extend(self.faces(x).iter().map(|f| f.cell()));
            }
        }
        out
    }

    /// Closure of a set of cells.
    pub fn closure_of(&self, cells: impl IntoIterator<Item = usize>) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        let mut stack: Vec<usize> = cells.into_iter().collect();
        while let Some(x) = stack.pop() {
            if out.insert(x) {
                stack.extend(self.faces(x).iter().map(|f| f.cell()));
            }
        }
        out
    }

    /// Checks face data and the codimension-two face identities.
    pub fn validate(&self) -> Result<()> {
        for c in self.cells() {
            let d = self.dim(c);
            let s = self.start[c] as usize;
            let e = self.start[c + 1] as usize;
            self.check_face_data(c, d, &self.faces[s..e])?;
            self.check_coherence(c)?;
        }
        Ok(())
    }

    /// Both routes to every codimension-two face of `c` agree.
    pub fn check_coherence(&self, c: usize) -> Result<()> {
        let d = self.dim(c);
        for i in 0..d {
            for k in i + 1..d {
                for s in [-1i8, 1] {
                    for t in [-1i8, 1] {
                        let mut code = vec![0i8; d];
                        code[i] = s;
                        code[k] = t;
                        let a = self.subface_from(c, &code, Some(i));
                        let b = self.subface_from(c, &code, Some(k));
                        if a != b {
                            return Err(Error::InvalidComplex(format!(
                                "cell {c}: faces ({i},{s}) and ({k},{t}) disagree on their intersection"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Sub-collection of cells as a complex, with the old-to-new id map.
    pub fn subcomplex(&self, keep: &[bool]) -> Result<(CubeComplex, Vec<Option<usize>>)> {
        let mut map = vec![None; self.len()];
        let mut out = CubeComplex::new();
        for c in self.cells() {
            if !keep[c] {
                continue;
            }
            let mut faces = Vec::with_capacity(2 * self.dim(c));
            for f in self.faces(c) {
                match map[f.cell()] {
                    Some(n) => faces.push(CellRef::new(n, f.sym)),
                    None => return Err(Error::NotSubcomplex(c)),
                }
            }
            map[c] = Some(out.push_unchecked(self.dim(c), &faces));
        }
        Ok((out, map))
    }

    /// True when `set` is closed under taking faces.
    pub fn is_subcomplex(&self, set: &[bool]) -> bool {
        self.cells()
            .all(|c| !set[c] || self.faces(c).iter().all(|f| set[f.cell()]))
    }
}

/// Importing one complex into another, replacing chosen cells by existing ones.
///
/// Cells of `src` are visited in id order. A cell for which `redirect`
/// returns a reference is not copied; faces pointing at it are rerouted
/// through the reference. Returns, for every source cell, its image.
pub fn import(
    dst: &mut CubeComplex,
    src: &CubeComplex,
    mut redirect: impl FnMut(usize, &[CellRef]) -> Option<CellRef>,
) -> Vec<CellRef> {
    let mut image: Vec<CellRef> = Vec::with_capacity(src.len());
    let mut buf = Vec::new();
    for c in src.cells() {
        if let Some(r) = redirect(c, &image) {
            image.push(r);
            continue;
        }
        buf.clear();
        for f in src.faces(c) {
            buf.push(image[f.cell()].after(&f.sym));
        }
        let d = src.dim(c);
        let id = dst.push_unchecked(d, &buf);
        image.push(CellRef::new(id, Sym::identity(d)));
    }
    image
}

/// The standard `n`-cube as a complex with `3^n` cells.
pub fn standard_cube(n: usize) -> CubeComplex {
    // cells indexed by codes in {-1,0,1}^n, built in order of dimension
    let total = 3usize.pow(n as u32);
    let decode = |mut x: usize| -> Vec<i8> {
        (0..n)
            .map(|_| {
                let r = (x % 3) as i8 - 1;
                x /= 3;
                r
            })
            .collect()
    };
    let encode = |code: &[i8]| -> usize {
        code.iter()
            .rev()
            .fold(0usize, |acc, &v| acc * 3 + (v + 1) as usize)
    };
    let mut order: Vec<usize> = (0..total).collect();
    order.sort_by_key(|&x| (decode(x).iter().filter(|&&v| v == 0).count(), x));
    let mut id = vec![0usize; total];
    let mut out = CubeComplex::new();
    for &x in &order {
        let code = decode(x);
        let free: Vec<usize> = (0..n).filter(|&i| code[i] == 0).collect();
        let mut faces = Vec::new();
        for &i in &free {
            for s in [-1i8, 1] {
                let mut fc = code.clone();
                fc[i] = s;
                faces.push(CellRef::new(id[encode(&fc)], Sym::identity(free.len() - 1)));
            }
        }
        id[x] = out.push_unchecked(free.len(), &faces);
    }
    out
}
