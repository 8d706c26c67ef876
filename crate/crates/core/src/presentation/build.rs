//! Square complexes from presentations: a rose of subdivided petals with one
//! tessellated polygon per relator.

use super::{generator_of, is_cyclically_reduced, is_reduced, Presentation, Word};
use crate::complex::{
    import, vertex_link, CellRef, CubeComplex, CubeMap, Involution, LinkVertex, SimplexComplex,
};
use crate::error::{Error, Result};
use crate::polygon::TessellatedPolygon;
use crate::sym::Sym;

/// How one relator becomes a polygon: the relator is cut into consecutive
/// side words of the given letter counts, and side `i` of the polygon has
/// length `petal_length * side_letters[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellRecipe {
    pub side_letters: Vec<usize>,
    pub polygon: TessellatedPolygon,
}

#[derive(Clone, Debug)]
pub struct ComplexSpec {
    pub presentation: Presentation,
    /// Edges per petal; even and at least 2.
    pub petal_length: usize,
    pub cells: Vec<CellRecipe>,
}

impl ComplexSpec {
    /// Side words of relator `j`.
    pub fn sides(&self, j: usize) -> Vec<Word> {
        let r = &self.presentation.relators[j];
        let mut out = Vec::new();
        let mut at = 0;
        for &k in &self.cells[j].side_letters {
            out.push(r[at..at + k].to_vec());
            at += k;
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        let l = self.petal_length;
        if l < 2 || !l.is_multiple_of(2) {
            return Err(Error::InvalidPresentation(format!(
                "petal length {l} must be even and at least 2"
            )));
        }
        let p = &self.presentation;
        if self.cells.len() != p.relators.len() {
            return Err(Error::InvalidPresentation(format!(
                "{} cell recipes for {} relators",
                self.cells.len(),
                p.relators.len()
            )));
        }
        for (j, (r, cell)) in p.relators.iter().zip(&self.cells).enumerate() {
            if !is_cyclically_reduced(r) || r.is_empty() {
                return Err(Error::InvalidPresentation(format!(
                    "relator {} is not cyclically reduced",
                    j + 1
                )));
            }
            if cell.side_letters.iter().sum::<usize>() != r.len() || cell.side_letters.contains(&0)
            {
                return Err(Error::InvalidPresentation(format!(
                    "sides of relator {} do not partition it",
                    j + 1
                )));
            }
            if self.sides(j).iter().any(|s| !is_reduced(s)) {
                return Err(Error::InvalidPresentation(format!(
                    "relator {} has an unreduced side",
                    j + 1
                )));
            }
            let want: Vec<usize> = cell.side_letters.iter().map(|&k| k * l).collect();
            if cell.polygon.side_lengths() != want {
                return Err(Error::InvalidPolygon(format!(
                    "relator {} needs sides {:?}, polygon has {:?}",
                    j + 1,
                    want,
                    cell.polygon.side_lengths()
                )));
            }
            if !cell.polygon.is_cat0() {
                return Err(Error::InvalidPolygon(format!(
                    "polygon for relator {} is not CAT(0)",
                    j + 1
                )));
            }
        }
        Ok(())
    }
}

/// The built complex with the ids of its rose and polygon cells.
#[derive(Clone, Debug)]
pub struct PresentationComplex {
    pub complex: CubeComplex,
    pub petal_length: usize,
    /// `petal_vertices[g][r]` for `0 <= r <= petal_length`; both ends are the centre.
    pub petal_vertices: Vec<Vec<usize>>,
    /// `petal_edges[g][r]` runs from `petal_vertices[g][r]` to `petal_vertices[g][r+1]`.
    pub petal_edges: Vec<Vec<usize>>,
    /// Image of every polygon-carrier cell, per relator.
    pub cells: Vec<Vec<CellRef>>,
    rose_cells: usize,
}

impl PresentationComplex {
    pub fn centre(&self) -> usize {
        0
    }

    pub fn n_generators(&self) -> usize {
        self.petal_edges.len()
    }

    /// Link vertex of the outward (`false`) or inward (`true`) end of petal `g`.
    pub fn petal_end(&self, g: usize, inward: bool) -> LinkVertex {
        if inward {
            LinkVertex {
                edge: self.petal_edges[g][self.petal_length - 1],
                head: true,
            }
        } else {
            LinkVertex {
                edge: self.petal_edges[g][0],
                head: false,
            }
        }
    }

    pub fn centre_link(&self) -> Result<SimplexComplex> {
        vertex_link(&self.complex, self.centre())
    }

    /// The centre together with the petals of the given generators.
    pub fn rose_mask(&self, generators: &[usize]) -> Vec<bool> {
        let mut m = vec![false; self.complex.len()];
        m[self.centre()] = true;
        for &g in generators {
            for &v in &self.petal_vertices[g] {
                m[v] = true;
            }
            for &e in &self.petal_edges[g] {
                m[e] = true;
            }
        }
        m
    }

    /// Lifts a generator permutation carrying relator `j` exactly onto
    /// relator `rel_perm[j]` with the identical polygon.
    pub fn lift(&self, spec: &ComplexSpec, gen_perm: &[usize]) -> Result<CubeMap> {
        let rel_perm = spec.presentation.induced_relator_perm(gen_perm)?;
        let mut images = vec![CellRef::vertex(0); self.complex.len()];
        let id = |c: &CubeComplex, x: usize| CellRef::new(x, Sym::identity(c.dim(x)));
        for g in 0..self.n_generators() {
            let h = gen_perm[g];
            for r in 0..=self.petal_length {
                images[self.petal_vertices[g][r]] = id(&self.complex, self.petal_vertices[h][r]);
            }
            for r in 0..self.petal_length {
                images[self.petal_edges[g][r]] = id(&self.complex, self.petal_edges[h][r]);
            }
        }
        for (j, cells) in self.cells.iter().enumerate() {
            let k = rel_perm[j];
            if spec.cells[j] != spec.cells[k] {
                return Err(Error::InvalidMap(format!(
                    "relators {} and {} use different cells",
                    j + 1,
                    k + 1
                )));
            }
            for (a, b) in cells.iter().zip(&self.cells[k]) {
                // boundary cells were placed through the rose
                if !self.is_rose(a.cell()) {
                    images[a.cell()] = *b;
                }
            }
        }
        let map = CubeMap { images };
        map.check(&self.complex, &self.complex)?;
        Ok(map)
    }

    fn is_rose(&self, c: usize) -> bool {
        c < self.rose_cells
    }

    /// Involution from a generator permutation of order two.
    pub fn involution(&self, spec: &ComplexSpec, gen_perm: &[usize]) -> Result<Involution> {
        Involution::new(&self.complex, self.lift(spec, gen_perm)?)
    }
}

/// Builds the square complex of a validated spec.
pub fn presentation_complex(spec: &ComplexSpec) -> Result<PresentationComplex> {
    spec.validate()?;
    let l = spec.petal_length;
    let n = spec.presentation.n_generators;
    let mut c = CubeComplex::new();
    let centre = c.push_vertex();
    let mut petal_vertices = Vec::with_capacity(n);
    let mut petal_edges = Vec::with_capacity(n);
    for _ in 0..n {
        let mut vs = vec![centre];
        for _ in 1..l {
            vs.push(c.push_vertex());
        }
        vs.push(centre);
        petal_vertices.push(vs);
    }
    for vs in &petal_vertices {
        let es: Vec<usize> = (0..l)
            .map(|r| c.push_unchecked(1, &[CellRef::vertex(vs[r]), CellRef::vertex(vs[r + 1])]))
            .collect();
        petal_edges.push(es);
    }
    let rose_cells = c.len();
    let mut cells = Vec::with_capacity(spec.cells.len());
    for (j, recipe) in spec.cells.iter().enumerate() {
        let word = &spec.presentation.relators[j];
        let poly = &recipe.polygon;
        let car = poly.carrier();
        let p = poly.perimeter();
        // boundary position -> rose vertex, boundary edge -> rose edge and direction
        let point = |t: usize| -> usize {
            let (q, r) = ((t % p) / l, (t % p) % l);
            let x = word[q];
            let g = generator_of(x);
            petal_vertices[g][if x > 0 { r } else { (l - r) % l }]
        };
        let mut vmap = vec![None; poly.n_vertices()];
        for (t, &v) in poly.boundary().iter().enumerate() {
            vmap[v] = Some(point(t));
        }
        let mut emap = std::collections::HashMap::new();
        for t in 0..p {
            let (a, b) = (poly.boundary()[t], poly.boundary()[(t + 1) % p]);
            let (q, r) = (t / l, t % l);
            let x = word[q];
            let g = generator_of(x);
            let (edge, rose_forward) = if x > 0 {
                (petal_edges[g][r], true)
            } else {
                (petal_edges[g][l - 1 - r], false)
            };
            let carrier_forward = a < b;
            let key = if a < b { (a, b) } else { (b, a) };
            emap.insert(
                car.edges[&key],
                CellRef::new(edge, Sym::line(carrier_forward != rose_forward)),
            );
        }
        let image = import(&mut c, &car.complex, |x, _| {
            if x < poly.n_vertices() {
                vmap[x].map(CellRef::vertex)
            } else {
                emap.get(&x).copied()
            }
        });
        cells.push(image);
    }
    c.validate()?;
    Ok(PresentationComplex {
        complex: c,
        petal_length: l,
        petal_vertices,
        petal_edges,
        cells,
        rose_cells,
    })
}
