//! Small named complexes.

use super::cube::{standard_cube, CellRef, CubeComplex};
use super::ops::cycle;
use crate::sym::Sym;

/// A single solid square.
pub fn square() -> CubeComplex {
    standard_cube(2)
}

/// Boundary of a square: a cycle of four edges.
pub fn hollow_square() -> CubeComplex {
    cycle(4)
}

/// One square with opposite sides identified: one vertex, two loops.
pub fn square_torus() -> CubeComplex {
    let mut c = CubeComplex::new();
    let v = c.push_vertex();
    let a = c.push_unchecked(1, &[CellRef::vertex(v), CellRef::vertex(v)]);
    let b = c.push_unchecked(1, &[CellRef::vertex(v), CellRef::vertex(v)]);
    let id = Sym::identity(1);
    // sides x0 = ±1 run along x1 and become `b`; sides x1 = ±1 become `a`
    c.push_unchecked(
        2,
        &[
            CellRef::new(b, id),
            CellRef::new(b, id),
            CellRef::new(a, id),
            CellRef::new(a, id),
        ],
    );
    c
}

/// One square with each side folded onto its neighbour: a 2-sphere with
/// three vertices, two edges and one square.
pub fn square_sphere() -> CubeComplex {
    let mut c = CubeComplex::new();
    let p = c.push_vertex();
    let r = c.push_vertex();
    let q = c.push_vertex();
    let a = c.push_unchecked(1, &[CellRef::vertex(p), CellRef::vertex(r)]);
    let b = c.push_unchecked(1, &[CellRef::vertex(r), CellRef::vertex(q)]);
    let id = Sym::identity(1);
    // {x0=-1} and {x1=-1} both become `a`; {x0=1} and {x1=1} both become `b`
    c.push_unchecked(
        2,
        &[
            CellRef::new(a, id),
            CellRef::new(b, id),
            CellRef::new(a, id),
            CellRef::new(b, id),
        ],
    );
    c
}
