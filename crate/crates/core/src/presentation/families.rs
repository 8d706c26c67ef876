//! The explicit presentations: pentagonal complexes `Y(n)`, the six-relator
//! acyclic group, the octagon complex with its involution, and the family
//! without small quotients.

use super::{
    concat, invert, letter, letter_runs, power, presentation_complex, CellRecipe, ComplexSpec,
    Presentation, PresentationComplex, Word,
};
use crate::complex::{CubeMap, Involution, SimplicialComplex};
use crate::error::{Error, Result};
use crate::polygon::{
    fig1_octagon, regular_right_pentagon, single_vertex_polygon, TessellatedPolygon,
};

fn md(i: i64, n: usize) -> usize {
    i.rem_euclid(n as i64) as usize
}

/// `Y(n)`: relators `a_i a_{i+1} a_{i+3}⁻¹ a_{i+1}⁻¹ a_{i+3}`.
pub fn y_n_presentation(n: usize) -> Result<Presentation> {
    if n < 5 {
        return Err(Error::InvalidPresentation(format!(
            "Y(n) needs n >= 5, got {n}"
        )));
    }
    let relators = (0..n)
        .map(|i| {
            let (a, b, c) = (i, (i + 1) % n, (i + 3) % n);
            vec![
                letter(a, true),
                letter(b, true),
                letter(c, false),
                letter(b, false),
                letter(c, true),
            ]
        })
        .collect();
    Presentation::new(n, relators)
}

pub fn y_n_spec(n: usize, petal_length: usize) -> Result<ComplexSpec> {
    let presentation = y_n_presentation(n)?;
    if petal_length < 2 || !petal_length.is_multiple_of(2) {
        return Err(Error::InvalidPresentation(format!(
            "petal length {petal_length} must be even and at least 2"
        )));
    }
    let polygon = regular_right_pentagon(petal_length / 2)?;
    let cells = vec![
        CellRecipe {
            side_letters: vec![1; 5],
            polygon
        };
        n
    ];
    Ok(ComplexSpec {
        presentation,
        petal_length,
        cells,
    })
}

pub fn y_n(n: usize, petal_length: usize) -> Result<PresentationComplex> {
    presentation_complex(&y_n_spec(n, petal_length)?)
}

/// The centre link of `Y(n)` written down from its adjacency rule, with
/// vertex `2i` the inward end and `2i+1` the outward end of `a_i`.
pub fn link_graph_yn(n: usize) -> Result<SimplicialComplex> {
    if n < 5 {
        return Err(Error::InvalidPresentation(format!(
            "Y(n) needs n >= 5, got {n}"
        )));
    }
    let inw = |i: i64| 2 * md(i, n);
    let out = |i: i64| 2 * md(i, n) + 1;
    let mut edges: Vec<Vec<usize>> = Vec::new();
    for i in 0..n as i64 {
        for v in [out(i + 1), inw(i + 2), inw(i - 2), out(i + 2), out(i - 3)] {
            edges.push(vec![inw(i), v]);
        }
        for v in [inw(i + 3), inw(i - 1), inw(i - 2), out(i + 2), out(i - 2)] {
            edges.push(vec![out(i), v]);
        }
    }
    for e in edges.iter_mut() {
        e.sort_unstable();
    }
    SimplicialComplex::from_facets(2 * n, &edges)
}

/// Generators `a, b, c, d, e, f`; the a-letters are `a, c, e`.
pub fn acycone_presentation() -> Presentation {
    let [a, b, c, d, e, f] = [0usize, 1, 2, 3, 4, 5];
    let p = |g: usize, k: i32| power(g, k);
    let relators = vec![
        concat(&[&p(a, 1), &p(b, 1), &p(c, 1), &p(d, 1), &p(e, 1), &p(f, 1)]),
        concat(&[
            &p(a, 1),
            &p(b, -1),
            &p(c, 2),
            &p(f, -1),
            &p(e, 2),
            &p(d, -1),
        ]),
        concat(&[&p(a, 2), &p(f, 1), &p(c, 2), &p(b, 1), &p(e, 1), &p(d, 1)]),
        concat(&[
            &p(a, 1),
            &p(d, -2),
            &p(c, 1),
            &p(b, -2),
            &p(e, 1),
            &p(f, -1),
        ]),
        concat(&[&p(a, 1), &p(d, 2), &p(c, 1), &p(f, 2), &p(e, 1), &p(b, 2)]),
        concat(&[
            &p(a, 1),
            &p(f, -2),
            &p(c, 1),
            &p(d, -1),
            &p(e, 1),
            &p(b, -2),
        ]),
    ];
    Presentation::new(6, relators).expect("letters in range")
}

/// Each side is a power of one letter; hexagons come from the
/// single-vertex construction.
pub fn acycone_spec(petal_length: usize) -> Result<ComplexSpec> {
    power_sides_spec(acycone_presentation(), petal_length)
}

fn power_sides_spec(presentation: Presentation, petal_length: usize) -> Result<ComplexSpec> {
    let mut cells = Vec::new();
    for r in &presentation.relators {
        let side_letters: Vec<usize> = letter_runs(r).iter().map(Vec::len).collect();
        let lengths: Vec<i64> = side_letters
            .iter()
            .map(|&k| (k * petal_length) as i64)
            .collect();
        cells.push(CellRecipe {
            side_letters,
            polygon: single_vertex_polygon(&lengths)?,
        });
    }
    Ok(ComplexSpec {
        presentation,
        petal_length,
        cells,
    })
}

/// `x_i x_{i+2} x_i⁻² x_{i+2}⁻¹ x_i` on the generators `base + (0..4)`.
fn acyctwo_block(base: usize, i: usize) -> Word {
    let (x, y) = (base + i % 4, base + (i + 2) % 4);
    concat(&[
        &power(x, 1),
        &power(y, 1),
        &power(x, -2),
        &power(y, -1),
        &power(x, 1),
    ])
}

/// Generators `a_0..a_3` (ids 0–3) and `b_0..b_3` (ids 4–7). Relators `i`
/// and `4 + i` are `a_i A_i B_i A_{i+1} B_i A_{i+2} B_i A_{i+3} B_i` and
/// `b_i B_i A_i⁻¹ B_i A_{i+1}⁻¹ B_i A_{i+2}⁻¹ B_i A_{i+3}⁻¹`.
pub fn acyctwo_presentation() -> Presentation {
    Presentation::new(8, acyctwo_sides().into_iter().map(|s| s.concat()).collect())
        .expect("letters in range")
}

fn acyctwo_sides() -> Vec<Vec<Word>> {
    let a = |i: usize| acyctwo_block(0, i);
    let b = |i: usize| acyctwo_block(4, i);
    let mut out = Vec::new();
    for i in 0..4 {
        let mut sides = vec![concat(&[&[letter(i, true)], &a(i)])];
        for k in 0..4 {
            if k > 0 {
                sides.push(a(i + k));
            }
            sides.push(b(i));
        }
        out.push(sides);
    }
    for i in 0..4 {
        let mut sides = vec![concat(&[&[letter(4 + i, true)], &b(i)])];
        for k in 0..4 {
            sides.push(invert(&a(i + k)));
            if k < 3 {
                sides.push(b(i));
            }
        }
        out.push(sides);
    }
    out
}

/// Side words of the octagon complex relators (used for meeting points).
pub fn acyctwo_side_words() -> Vec<Vec<Word>> {
    acyctwo_sides()
}

/// The octagon complex with its `Z/4` symmetry.
#[derive(Clone, Debug)]
pub struct Acyctwo {
    pub spec: ComplexSpec,
    pub complex: PresentationComplex,
    /// `a_i ↦ a_{i+1}`, `b_i ↦ b_{i+1}` on generators.
    pub rotation_generators: Vec<usize>,
    pub rotation: CubeMap,
    /// The rotation by two.
    pub tau: Involution,
}

impl Acyctwo {
    pub fn tau_generators(&self) -> Vec<usize> {
        self.rotation_generators
            .iter()
            .map(|&g| self.rotation_generators[g])
            .collect()
    }

    /// Presentation of the orbit complex under `τ`.
    pub fn quotient_presentation(&self) -> Result<Presentation> {
        self.spec
            .presentation
            .orbit_quotient(&self.tau_generators())
    }
}

/// Octagon with sides `(28, 24, ..., 24)`: five collars and a subdivision
/// of the small octagon, rotated so the long side comes first.
pub fn acyctwo_octagon() -> Result<TessellatedPolygon> {
    let big = fig1_octagon()?.collar_all_iter(5)?.subdivide()?;
    let long = big
        .side_lengths()
        .iter()
        .position(|&l| l == 28)
        .expect("one long side");
    big.rotate(long)
}

pub fn acyctwo() -> Result<Acyctwo> {
    let sides = acyctwo_sides();
    let presentation = acyctwo_presentation();
    let polygon = acyctwo_octagon()?;
    let cells = sides
        .iter()
        .map(|s| CellRecipe {
            side_letters: s.iter().map(Vec::len).collect(),
            polygon: polygon.clone(),
        })
        .collect();
    let spec = ComplexSpec {
        presentation,
        petal_length: 4,
        cells,
    };
    let complex = presentation_complex(&spec)?;
    let rotation_generators: Vec<usize> = (0..8).map(|g| (g / 4) * 4 + (g % 4 + 1) % 4).collect();
    let rotation = complex.lift(&spec, &rotation_generators)?;
    let tau_gens: Vec<usize> = rotation_generators
        .iter()
        .map(|&g| rotation_generators[g])
        .collect();
    let tau = complex.involution(&spec, &tau_gens)?;
    Ok(Acyctwo {
        spec,
        complex,
        rotation_generators,
        rotation,
        tau,
    })
}

/// `N`-fold family on `a_0..a_2` (ids 0–2) and `b_0..b_2` (ids 3–5) with
/// `A_i = a_i^N a_{i+1}^{-2N} a_i^N`.
pub fn fewquot_presentation(n: usize) -> Result<Presentation> {
    Ok(Presentation::new(
        6,
        fewquot_sides(n)?.into_iter().map(|s| s.concat()).collect(),
    )
    .expect("letters in range"))
}

fn fewquot_sides(n: usize) -> Result<Vec<Vec<Word>>> {
    if n < 1 {
        return Err(Error::OutOfRange(format!("exponent N = {n}")));
    }
    let e = n as i32;
    let block = |base: usize, i: usize| -> Word {
        let (x, y) = (base + i % 3, base + (i + 1) % 3);
        concat(&[&power(x, e), &power(y, -2 * e), &power(x, e)])
    };
    let a = |i: usize| block(0, i);
    let b = |i: usize| block(3, i);
    let mut out = Vec::new();
    for i in 0..3 {
        out.push(vec![
            concat(&[&[letter(i, true)], &a(i)]),
            b(0),
            a(i + 1),
            b(1),
            a(i + 2),
            b(2),
        ]);
    }
    for i in 0..3 {
        out.push(vec![
            concat(&[&[letter(3 + i, true)], &b(i)]),
            invert(&a(0)),
            b(i + 1),
            invert(&a(1)),
            b(i + 2),
            invert(&a(2)),
        ]);
    }
    Ok(out)
}

pub fn fewquot_side_words(n: usize) -> Result<Vec<Vec<Word>>> {
    fewquot_sides(n)
}

pub fn fewquot_spec(n: usize, petal_length: usize) -> Result<ComplexSpec> {
    let sides = fewquot_sides(n)?;
    let presentation = fewquot_presentation(n)?;
    let mut cells = Vec::new();
    for s in &sides {
        let side_letters: Vec<usize> = s.iter().map(Vec::len).collect();
        let lengths: Vec<i64> = side_letters
            .iter()
            .map(|&k| (k * petal_length) as i64)
            .collect();
        cells.push(CellRecipe {
            side_letters,
            polygon: single_vertex_polygon(&lengths)?,
        });
    }
    Ok(ComplexSpec {
        presentation,
        petal_length,
        cells,
    })
}
