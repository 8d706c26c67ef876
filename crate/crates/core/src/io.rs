//! JSON interchange, schema `cubecx/1`.
//!
//! A document is one JSON object:
//!
//! ```text
//! {"schema":"cubecx/1","kind":"cube","cells":[
//! {"id":0,"dim":0,"faces":[]},
//! {"id":2,"dim":1,"faces":[{"dir":1,"sign":"-","target":0,"sym":[]},{"dir":1,"sign":"+","target":1,"sym":[]}]}
//! ],"involution":[...],"annotations":{...}}
//! ```
//!
//! * `kind` is `cube`, `delta`, `simplicial`, `cube_map` or `delta_map`.
//! * Cells are listed in id order and every face target precedes its cell.
//! * Cube faces carry `dir` (1-based coordinate), `sign` and `sym`. `sym` has
//!   one signed 1-based entry per coordinate of the target cell, naming the
//!   face coordinate it reads. A shorter `sym` than the face dimension marks a
//!   collapsed face.
//! * Delta faces carry `dir` only: face `d_{dir-1}`.
//! * `simplicial` documents carry `n_vertices` and `facets` (maximal faces,
//!   sorted).
//! * Maps carry `cell_map`, a list of `[src, dst, sym]` (cube) or
//!   `[src, dst]` (delta) triples in source order.
//! * `involution` (cube only) is a `cell_map` of a self-map.
//! * `annotations` is free-form.
//!
//! Writing is canonical: one list entry per line, keys in the order above,
//! annotation keys sorted. Parsing then writing any written document gives
//! back the same bytes.

use crate::complex::{
    CellRef, CubeComplex, CubeMap, DeltaComplex, DeltaMap, Involution, SimplicialComplex,
};
use crate::error::{Error, Result};
use crate::sym::Sym;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::collections::BTreeSet;

pub const SCHEMA: &str = "cubecx/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Cube,
    Delta,
    Simplicial,
    CubeMap,
    DeltaMap,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FaceJson {
    pub dir: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sign: Option<String>,
    pub target: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sym: Option<Vec<i32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellJson {
    pub id: usize,
    pub dim: usize,
    pub faces: Vec<FaceJson>,
}

/// `[src, dst, sym]`, or `[src, dst]` for Δ-maps.
pub type MapEntry = Vec<Value>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub schema: String,
    pub kind: Kind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_vertices: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub facets: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cells: Option<Vec<CellJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cell_map: Option<Vec<MapEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub involution: Option<Vec<MapEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub annotations: Option<Value>,
}

fn schema_err(msg: impl Into<String>) -> Error {
    Error::Schema(msg.into())
}

fn line_list<T: Serialize>(key: &str, items: &[T], out: &mut String) {
    out.push_str(&format!(",\"{key}\":["));
    for (k, item) in items.iter().enumerate() {
        out.push_str(if k == 0 { "\n" } else { ",\n" });
        out.push_str(&serde_json::to_string(item).expect("serialisable"));
    }
    if !items.is_empty() {
        out.push('\n');
    }
    out.push(']');
}

impl Document {
    fn new(kind: Kind) -> Document {
        Document {
            schema: SCHEMA.into(),
            kind,
            n_vertices: None,
            facets: None,
            cells: None,
            cell_map: None,
            involution: None,
            annotations: None,
        }
    }

    pub fn parse(text: &str) -> Result<Document> {
        let doc: Document = serde_json::from_str(text).map_err(|e| schema_err(e.to_string()))?;
        if doc.schema != SCHEMA {
            return Err(schema_err(format!("unknown schema {:?}", doc.schema)));
        }
        Ok(doc)
    }

    /// Canonical text, ending in a newline.
    pub fn write(&self) -> String {
        let mut out = String::from("{\"schema\":");
        out.push_str(&serde_json::to_string(&self.schema).unwrap());
        out.push_str(",\"kind\":");
        out.push_str(&serde_json::to_string(&self.kind).unwrap());
        if let Some(n) = self.n_vertices {
            out.push_str(&format!(",\"n_vertices\":{n}"));
        }
        if let Some(f) = &self.facets {
            line_list("facets", f, &mut out);
        }
        if let Some(c) = &self.cells {
            line_list("cells", c, &mut out);
        }
        if let Some(m) = &self.cell_map {
            line_list("cell_map", m, &mut out);
        }
        if let Some(m) = &self.involution {
            line_list("involution", m, &mut out);
        }
        if let Some(a) = &self.annotations {
            out.push_str(",\"annotations\":");
            out.push_str(&serde_json::to_string(a).unwrap());
        }
        out.push_str("}\n");
        out
    }

    pub fn with_annotations(mut self, a: Value) -> Document {
        self.annotations = Some(a);
        self
    }

    fn expect(&self, kind: Kind) -> Result<()> {
        if self.kind != kind {
            return Err(schema_err(format!(
                "expected a {kind:?} document, found {:?}",
                self.kind
            )));
        }
        Ok(())
    }

    fn cells(&self) -> Result<&[CellJson]> {
        self.cells
            .as_deref()
            .ok_or_else(|| schema_err("missing \"cells\""))
    }

    pub fn to_cube(&self) -> Result<CubeComplex> {
        self.expect(Kind::Cube)?;
        let mut c = CubeComplex::new();
        for (k, cell) in self.cells()?.iter().enumerate() {
            let id = cell.id;
            if id != k {
                return Err(schema_err(format!("cell {id} listed at position {k}")));
            }
            if cell.faces.len() != 2 * cell.dim {
                return Err(schema_err(format!(
                    "cell {id}: {} faces for dimension {}",
                    cell.faces.len(),
                    cell.dim
                )));
            }
            let mut slots: Vec<Option<CellRef>> = vec![None; 2 * cell.dim];
            for f in &cell.faces {
                let plus = match f.sign.as_deref() {
                    Some("+") => true,
                    Some("-") => false,
                    _ => {
                        return Err(schema_err(format!(
                            "cell {id}: face sign must be \"+\" or \"-\""
                        )))
                    }
                };
                if f.dir == 0 || f.dir > cell.dim {
                    return Err(schema_err(format!(
                        "cell {id}: face dir {} out of range",
                        f.dir
                    )));
                }
                if f.target >= id {
                    return Err(schema_err(format!(
                        "cell {id}: face target {} does not precede it",
                        f.target
                    )));
                }
                let entries = f
                    .sym
                    .as_ref()
                    .ok_or_else(|| schema_err(format!("cell {id}: face without sym")))?;
                let sym = Sym::from_signed(entries, cell.dim - 1)
                    .ok_or_else(|| schema_err(format!("cell {id}: bad sym {entries:?}")))?;
                let slot = 2 * (f.dir - 1) + plus as usize;
                if slots[slot].replace(CellRef::new(f.target, sym)).is_some() {
                    return Err(schema_err(format!(
                        "cell {id}: face dir {} sign {} repeated",
                        f.dir,
                        if plus { '+' } else { '-' }
                    )));
                }
            }
            let faces: Vec<CellRef> = slots.into_iter().map(Option::unwrap).collect();
            c.push_cell(cell.dim, &faces)
                .map_err(|e| schema_err(e.to_string()))?;
            c.check_coherence(id)
                .map_err(|e| schema_err(e.to_string()))?;
        }
        Ok(c)
    }

    pub fn to_delta(&self) -> Result<DeltaComplex> {
        self.expect(Kind::Delta)?;
        let mut x = DeltaComplex::new();
        for (k, cell) in self.cells()?.iter().enumerate() {
            let id = cell.id;
            if id != k {
                return Err(schema_err(format!("simplex {id} listed at position {k}")));
            }
            if cell.dim == 0 {
                if !cell.faces.is_empty() {
                    return Err(schema_err(format!("simplex {id}: a vertex has no faces")));
                }
                x.push_vertex();
                continue;
            }
            if cell.faces.len() != cell.dim + 1 {
                return Err(schema_err(format!(
                    "simplex {id}: {} faces for dimension {}",
                    cell.faces.len(),
                    cell.dim
                )));
            }
            let mut faces = vec![usize::MAX; cell.dim + 1];
            for f in &cell.faces {
                if f.sign.is_some() || f.sym.is_some() {
                    return Err(schema_err(format!(
                        "simplex {id}: Δ faces carry only dir and target"
                    )));
                }
                if f.dir == 0 || f.dir > cell.dim + 1 || faces[f.dir - 1] != usize::MAX {
                    return Err(schema_err(format!("simplex {id}: bad face dir {}", f.dir)));
                }
                faces[f.dir - 1] = f.target;
            }
            x.push_simplex(&faces)
                .map_err(|e| schema_err(e.to_string()))?;
        }
        Ok(x)
    }

    pub fn to_simplicial(&self) -> Result<SimplicialComplex> {
        self.expect(Kind::Simplicial)?;
        let n = self
            .n_vertices
            .ok_or_else(|| schema_err("missing \"n_vertices\""))?;
        let facets = self
            .facets
            .as_deref()
            .ok_or_else(|| schema_err("missing \"facets\""))?;
        SimplicialComplex::from_facets(n, facets).map_err(|e| schema_err(e.to_string()))
    }

    /// The `involution` field, checked against `c`.
    pub fn involution(&self, c: &CubeComplex) -> Result<Option<Involution>> {
        match &self.involution {
            None => Ok(None),
            Some(entries) => {
                let map = parse_cube_map(entries, c.len())?;
                Involution::new(c, map)
                    .map(Some)
                    .map_err(|e| schema_err(e.to_string()))
            }
        }
    }

    pub fn to_cube_map(&self) -> Result<CubeMap> {
        self.expect(Kind::CubeMap)?;
        let entries = self
            .cell_map
            .as_deref()
            .ok_or_else(|| schema_err("missing \"cell_map\""))?;
        parse_cube_map(entries, entries.len())
    }

    pub fn to_delta_map(&self) -> Result<DeltaMap> {
        self.expect(Kind::DeltaMap)?;
        let entries = self
            .cell_map
            .as_deref()
            .ok_or_else(|| schema_err("missing \"cell_map\""))?;
        let mut images = Vec::with_capacity(entries.len());
        for (k, e) in entries.iter().enumerate() {
            match e.as_slice() {
                [s, d] if s.as_u64() == Some(k as u64) => images.push(
                    d.as_u64()
                        .ok_or_else(|| schema_err(format!("map entry {k}: bad target")))?
                        as usize,
                ),
                _ => return Err(schema_err(format!("map entry {k} is not [{k}, dst]"))),
            }
        }
        Ok(DeltaMap { images })
    }
}

fn parse_cube_map(entries: &[MapEntry], len: usize) -> Result<CubeMap> {
    if entries.len() != len {
        return Err(schema_err(format!(
            "map has {} entries for {len} cells",
            entries.len()
        )));
    }
    let mut images = Vec::with_capacity(len);
    for (k, e) in entries.iter().enumerate() {
        let bad = || schema_err(format!("map entry {k} is not [{k}, dst, sym]"));
        let [s, d, sym] = e.as_slice() else {
            return Err(bad());
        };
        if s.as_u64() != Some(k as u64) {
            return Err(bad());
        }
        let dst = d.as_u64().ok_or_else(bad)? as usize;
        let entries: Vec<i32> = sym
            .as_array()
            .ok_or_else(bad)?
            .iter()
            .map(|x| x.as_i64().map(|v| v as i32).ok_or_else(bad))
            .collect::<Result<_>>()?;
        let max = entries
            .iter()
            .map(|x| x.unsigned_abs() as usize)
            .max()
            .unwrap_or(0);
        let sym = Sym::from_signed(&entries, max.max(entries.len())).ok_or_else(bad)?;
        images.push(CellRef::new(dst, sym));
    }
    Ok(CubeMap { images })
}

fn cube_map_entries(m: &CubeMap) -> Vec<MapEntry> {
    m.images
        .iter()
        .enumerate()
        .map(|(k, r)| {
            vec![
                Value::from(k),
                Value::from(r.cell()),
                Value::from(r.sym.entries()),
            ]
        })
        .collect()
}

pub fn cube_document(c: &CubeComplex) -> Document {
    let cells = c
        .cells()
        .map(|q| CellJson {
            id: q,
            dim: c.dim(q),
            faces: c
                .faces(q)
                .iter()
                .enumerate()
                .map(|(slot, f)| FaceJson {
                    dir: slot / 2 + 1,
                    sign: Some(if slot % 2 == 1 { "+" } else { "-" }.into()),
                    target: f.cell(),
                    sym: Some(f.sym.entries()),
                })
                .collect(),
        })
        .collect();
    Document {
        cells: Some(cells),
        ..Document::new(Kind::Cube)
    }
}

pub fn cube_document_with_involution(c: &CubeComplex, tau: &Involution) -> Document {
    Document {
        involution: Some(cube_map_entries(&tau.map)),
        ..cube_document(c)
    }
}

pub fn delta_document(x: &DeltaComplex) -> Document {
    let cells = x
        .simplices()
        .map(|s| CellJson {
            id: s,
            dim: x.dim(s),
            faces: x
                .faces(s)
                .iter()
                .enumerate()
                .map(|(i, &t)| FaceJson {
                    dir: i + 1,
                    sign: None,
                    target: t,
                    sym: None,
                })
                .collect(),
        })
        .collect();
    Document {
        cells: Some(cells),
        ..Document::new(Kind::Delta)
    }
}

pub fn simplicial_document(s: &SimplicialComplex) -> Document {
    let faces = s.sorted_faces();
    let sets: Vec<BTreeSet<usize>> = faces.iter().map(|f| f.iter().copied().collect()).collect();
    let facets: Vec<Vec<usize>> = faces
        .iter()
        .enumerate()
        .filter(|(k, f)| {
            !sets
                .iter()
                .any(|t| t.len() > f.len() && sets[*k].is_subset(t))
        })
        .map(|(_, f)| f.clone())
        .collect();
    Document {
        n_vertices: Some(s.n_vertices()),
        facets: Some(facets),
        ..Document::new(Kind::Simplicial)
    }
}

pub fn cube_map_document(m: &CubeMap) -> Document {
    Document {
        cell_map: Some(cube_map_entries(m)),
        ..Document::new(Kind::CubeMap)
    }
}

pub fn delta_map_document(m: &DeltaMap) -> Document {
    let entries = m
        .images
        .iter()
        .enumerate()
        .map(|(k, &d)| vec![Value::from(k), Value::from(d)])
        .collect();
    Document {
        cell_map: Some(entries),
        ..Document::new(Kind::DeltaMap)
    }
}
