use crate::input::write_file;
use crate::report::Report;
use anyhow::Result;
use clap::{Subcommand, ValueEnum};
use cubecx::complex::ops::{cycle, interval};
use cubecx::complex::shapes::{hollow_square, square_sphere, square_torus};
use cubecx::complex::{standard_cube, DeltaComplex};
use cubecx::io::{cube_document, cube_document_with_involution, delta_document, Document};
use cubecx::kan_thurston::{build_aa_pair, AcyclicKit};
use cubecx::presentation::{
    acycone_spec, acyctwo, fewquot_spec, presentation_complex, y_n_spec, ComplexSpec, Presentation,
    PresentationComplex,
};
use serde_json::{json, Value};

#[derive(Subcommand)]
pub enum MakeCmd {
    /// The complex Y(n) of pentagons.
    Yn {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        petal: usize,
        #[arg(long)]
        emit: Option<String>,
    },
    /// The six-relator acyclic hexagon complex.
    Acycone {
        #[arg(long, default_value_t = 4)]
        petal: usize,
        #[arg(long)]
        emit: Option<String>,
    },
    /// The eight-relator octagon complex with its involution.
    Acyctwo {
        #[arg(long)]
        emit: Option<String>,
    },
    /// The family whose finite quotients are small, for exponent `N`.
    Fewquot {
        #[arg(long = "n", visible_alias = "N")]
        n: usize,
        #[arg(long, default_value_t = 2)]
        petal: usize,
        #[arg(long)]
        emit: Option<String>,
    },
    /// The genuine acyclic kit A′ with its involution, A and the loop j.
    Kit {
        #[arg(long)]
        emit: Option<String>,
    },
    /// Standard Δ-complexes.
    Delta {
        #[arg(long, value_enum)]
        shape: DeltaShape,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        emit: Option<String>,
    },
    /// Standard cube complexes.
    Cube {
        #[arg(long, value_enum)]
        shape: CubeShape,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        emit: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
pub enum DeltaShape {
    /// The n-simplex.
    Simplex,
    /// Boundary of the n-simplex.
    Boundary,
    /// Torus from two triangles.
    Torus,
    DunceHat,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum CubeShape {
    /// The n-cube.
    Cube,
    /// Path of n edges.
    Interval,
    /// Cycle of n edges.
    Cycle,
    /// One square with opposite sides glued.
    Torus,
    /// One square folded onto a sphere.
    Sphere,
    /// Boundary of a square.
    HollowSquare,
}

fn presentation_json(p: &Presentation) -> Value {
    json!({ "n_generators": p.n_generators, "relators": p.relators })
}

/// Petal and relator cell ids of a presentation complex.
pub fn presentation_annotations(spec: &ComplexSpec, pc: &PresentationComplex) -> Value {
    let petals: Vec<Value> = (0..pc.n_generators())
        .map(|g| json!({ "generator": g + 1, "vertices": pc.petal_vertices[g], "edges": pc.petal_edges[g] }))
        .collect();
    let relators: Vec<Value> = pc
        .cells
        .iter()
        .enumerate()
        .map(|(j, cells)| {
            let mut squares: Vec<usize> = cells
                .iter()
                .map(|r| r.cell())
                .filter(|&q| pc.complex.dim(q) == 2)
                .collect();
            squares.sort_unstable();
            squares.dedup();
            json!({ "relator": j + 1, "sides": spec.sides(j), "squares": squares })
        })
        .collect();
    json!({
        "presentation": presentation_json(&spec.presentation),
        "petal_length": pc.petal_length,
        "petals": petals,
        "relators": relators,
    })
}

pub fn presentation_document(spec: &ComplexSpec, pc: &PresentationComplex) -> Document {
    cube_document(&pc.complex).with_annotations(presentation_annotations(spec, pc))
}

pub fn acyctwo_document() -> cubecx::Result<Document> {
    let y = acyctwo()?;
    let mut a = presentation_annotations(&y.spec, &y.complex);
    a["rotation_generators"] = json!(y
        .rotation_generators
        .iter()
        .map(|g| g + 1)
        .collect::<Vec<_>>());
    Ok(cube_document_with_involution(&y.complex.complex, &y.tau).with_annotations(a))
}

pub fn kit_document(kit: &AcyclicKit) -> Document {
    let a_cells: Vec<usize> = (0..kit.a_mask.len()).filter(|&q| kit.a_mask[q]).collect();
    let j: Vec<Value> = kit
        .j
        .iter()
        .map(|e| json!({ "edge": e.cell(), "reversed": e.sym.get(0).1 }))
        .collect();
    cube_document_with_involution(&kit.aprime, &kit.tau)
        .with_annotations(json!({ "kit": { "a_cells": a_cells, "a0": kit.a0, "j": j } }))
}

pub fn delta_shape(shape: DeltaShape, n: usize) -> Result<DeltaComplex> {
    Ok(match shape {
        DeltaShape::Simplex => DeltaComplex::standard_simplex(n),
        DeltaShape::Boundary if n == 0 => anyhow::bail!("the 0-simplex has empty boundary"),
        DeltaShape::Boundary => DeltaComplex::simplex_boundary(n - 1),
        DeltaShape::Torus => DeltaComplex::torus(),
        DeltaShape::DunceHat => DeltaComplex::dunce_hat(),
    })
}

fn emit_doc(r: &mut Report, doc: &Document, emit: Option<String>) -> Result<()> {
    if let Some(path) = emit {
        let text = doc.write();
        r.put("sha256", crate::report::sha256_hex(text.as_bytes()));
        write_file(&path, &text)?;
    }
    Ok(())
}

fn spec_report(
    r: &mut Report,
    spec: cubecx::Result<ComplexSpec>,
    emit: Option<String>,
) -> Result<Option<PresentationComplex>> {
    let built = spec.and_then(|s| presentation_complex(&s).map(|pc| (s, pc)));
    match built {
        Ok((s, pc)) => {
            r.check("construction", true, "");
            r.counts = Some(pc.complex.counts());
            r.put("presentation", presentation_json(&s.presentation));
            emit_doc(r, &presentation_document(&s, &pc), emit)?;
            Ok(Some(pc))
        }
        Err(e) => {
            r.check("construction", false, e.to_string());
            Ok(None)
        }
    }
}

pub fn run(cmd: MakeCmd) -> Result<Report> {
    let mut r;
    match cmd {
        MakeCmd::Yn { n, petal, emit } => {
            r = Report::new("make yn");
            let spec = y_n_spec(n, petal);
            spec_report(&mut r, spec, emit)?;
        }
        MakeCmd::Acycone { petal, emit } => {
            r = Report::new("make acycone");
            spec_report(&mut r, acycone_spec(petal), emit)?;
        }
        MakeCmd::Fewquot { n, petal, emit } => {
            r = Report::new("make fewquot");
            spec_report(&mut r, fewquot_spec(n, petal), emit)?;
        }
        MakeCmd::Acyctwo { emit } => {
            r = Report::new("make acyctwo");
            match acyctwo_document() {
                Ok(doc) => {
                    r.check("construction", true, "");
                    r.counts = Some(doc.to_cube()?.counts());
                    emit_doc(&mut r, &doc, emit)?;
                }
                Err(e) => r.check("construction", false, e.to_string()),
            }
        }
        MakeCmd::Kit { emit } => {
            r = Report::new("make kit");
            match build_aa_pair() {
                Ok(kit) => {
                    r.check("construction", true, "");
                    r.counts = Some(kit.aprime.counts());
                    let (da, dap) = kit.dims();
                    r.put("dims", json!({ "A": da, "Aprime": dap }));
                    r.mark("build");
                    emit_doc(&mut r, &kit_document(&kit), emit)?;
                }
                Err(e) => r.check("construction", false, e.to_string()),
            }
        }
        MakeCmd::Delta { shape, n, emit } => {
            r = Report::new("make delta");
            let x = delta_shape(shape, n)?;
            r.counts = Some(x.counts());
            emit_doc(&mut r, &delta_document(&x), emit)?;
        }
        MakeCmd::Cube { shape, n, emit } => {
            r = Report::new("make cube");
            let c = match shape {
                CubeShape::Cube => standard_cube(n),
                CubeShape::Interval => interval(n),
                CubeShape::Cycle => cycle(n),
                CubeShape::Torus => square_torus(),
                CubeShape::Sphere => square_sphere(),
                CubeShape::HollowSquare => hollow_square(),
            };
            r.counts = Some(c.counts());
            emit_doc(&mut r, &cube_document(&c), emit)?;
        }
    }
    r.mark("make");
    Ok(r)
}
