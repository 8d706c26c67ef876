use crate::report::Report;
use anyhow::{bail, Context, Result};
use cubecx::complex::{DeltaComplex, SimplicialComplex};
use cubecx::homology::{
    cube_homology, cube_reduced_homology, delta_chain_complex, delta_homology, reduced_homology,
    simplicial_chain_complex, simplicial_homology, HomologyGroups,
};
use cubecx::io::{Document, Kind};
use cubecx::CubeComplex;
use std::path::Path;

pub struct Loaded {
    pub path: String,
    pub bytes: Vec<u8>,
    pub doc: Document,
}

pub fn load(path: &str) -> Result<Loaded> {
    let bytes = std::fs::read(path).with_context(|| format!("cannot read {path}"))?;
    let text = std::str::from_utf8(&bytes).with_context(|| format!("{path} is not UTF-8"))?;
    let doc = Document::parse(text).with_context(|| path.to_string())?;
    Ok(Loaded {
        path: path.to_string(),
        bytes,
        doc,
    })
}

impl Loaded {
    pub fn report(&self, command: &str) -> Report {
        let mut r = Report::new(command);
        r.set_input(&self.path, &self.bytes);
        r
    }

    pub fn cube(&self) -> Result<CubeComplex> {
        self.expect(Kind::Cube)?;
        self.doc.to_cube().with_context(|| self.path.clone())
    }

    pub fn delta(&self) -> Result<DeltaComplex> {
        self.expect(Kind::Delta)?;
        self.doc.to_delta().with_context(|| self.path.clone())
    }

    pub fn expect(&self, kind: Kind) -> Result<()> {
        if self.doc.kind != kind {
            bail!(
                "{}: expected a {:?} document, found {:?}",
                self.path,
                kind,
                self.doc.kind
            );
        }
        Ok(())
    }

    pub fn any_complex(&self) -> Result<AnyComplex> {
        Ok(match self.doc.kind {
            Kind::Cube => AnyComplex::Cube(self.cube()?),
            Kind::Delta => AnyComplex::Delta(self.delta()?),
            Kind::Simplicial => AnyComplex::Simplicial(
                self.doc
                    .to_simplicial()
                    .with_context(|| self.path.clone())?,
            ),
            k => bail!("{}: a {:?} document is not a complex", self.path, k),
        })
    }
}

pub enum AnyComplex {
    Cube(CubeComplex),
    Delta(DeltaComplex),
    Simplicial(SimplicialComplex),
}

impl AnyComplex {
    pub fn counts(&self) -> Vec<usize> {
        match self {
            AnyComplex::Cube(c) => c.counts(),
            AnyComplex::Delta(x) => x.counts(),
            AnyComplex::Simplicial(s) => match s.dimension() {
                None => Vec::new(),
                Some(d) => (0..=d).map(|k| s.count(k)).collect(),
            },
        }
    }

    pub fn homology(&self, reduced: bool) -> HomologyGroups {
        match (self, reduced) {
            (AnyComplex::Cube(c), false) => cube_homology(c),
            (AnyComplex::Cube(c), true) => cube_reduced_homology(c),
            (AnyComplex::Delta(x), false) => delta_homology(x),
            (AnyComplex::Delta(x), true) => reduced_homology(&delta_chain_complex(x)),
            (AnyComplex::Simplicial(s), false) => simplicial_homology(s),
            (AnyComplex::Simplicial(s), true) => reduced_homology(&simplicial_chain_complex(s)),
        }
    }
}

pub fn write_file(path: &str, text: &str) -> Result<()> {
    if let Some(dir) = Path::new(path).parent() {
        if !dir.as_os_str().is_empty() {
            std::fs::create_dir_all(dir)
                .with_context(|| format!("cannot create {}", dir.display()))?;
        }
    }
    std::fs::write(path, text).with_context(|| format!("cannot write {path}"))
}

/// Parses `a,b,c` into integers.
pub fn parse_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<T>()
                .map_err(|_| anyhow::anyhow!("bad list entry {t:?} in {s:?}"))
        })
        .collect()
}

/// Parses `WxH`.
pub fn parse_rect(s: &str) -> Result<(usize, usize)> {
    let (w, h) = s
        .split_once('x')
        .with_context(|| format!("expected WxH, got {s:?}"))?;
    Ok((
        w.trim().parse().context("bad width")?,
        h.trim().parse().context("bad height")?,
    ))
}

/// Compact homology: `(Z, 0, Z)`.
pub fn homology_tuple(h: &HomologyGroups) -> String {
    let parts: Vec<String> = h.groups.iter().map(|g| g.to_string()).collect();
    format!("({})", parts.join(", "))
}

/// Equality ignoring trailing zero groups.
pub fn same_homology(a: &HomologyGroups, b: &HomologyGroups) -> bool {
    let n = a.groups.len().max(b.groups.len());
    (0..n).all(|k| a.degree(k) == b.degree(k))
}
