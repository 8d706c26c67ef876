use crate::input::write_file;
use crate::make::{acyctwo_document, delta_shape, kit_document, presentation_document, DeltaShape};
use crate::polygon::polygon_document;
use crate::report::{sha256_hex, Report};
use anyhow::{Context, Result};
use clap::Subcommand;
use cubecx::complex::shapes::{square_sphere, square_torus};
use cubecx::io::{cube_document, delta_document, Document};
use cubecx::kan_thurston::build_aa_pair;
use cubecx::polygon::fig1_octagon;
use cubecx::presentation::{acycone_spec, presentation_complex, y_n_spec, ComplexSpec};
use std::collections::BTreeMap;
use std::path::Path;

pub const MANIFEST: &str = "MANIFEST.sha256";
/// Digest of the genuine kit, which is too large to ship.
pub const KIT_DIGEST: &str = "genuine_kit.sha256";
pub const KIT_NAME: &str = "genuine_kit.json";

#[derive(Subcommand)]
pub enum CorpusCmd {
    /// Write every fixture and the digest manifest into a directory.
    Write {
        #[arg(long)]
        dir: String,
        /// Also build the genuine kit and record its digest.
        #[arg(long)]
        with_kit: bool,
    },
    /// Rebuild every fixture and compare with the directory and manifest.
    Verify {
        #[arg(long)]
        dir: String,
        #[arg(long)]
        with_kit: bool,
    },
}

fn presentation_fixture(spec: cubecx::Result<ComplexSpec>) -> Result<Document> {
    let spec = spec?;
    let pc = presentation_complex(&spec)?;
    Ok(presentation_document(&spec, &pc))
}

/// The shipped fixtures, by file name.
pub fn fixtures() -> Result<Vec<(&'static str, String)>> {
    let delta = |s, n| -> Result<String> { Ok(delta_document(&delta_shape(s, n)?).write()) };
    Ok(vec![
        ("torus.json", cube_document(&square_torus()).write()),
        (
            "sphere_square.json",
            cube_document(&square_sphere()).write(),
        ),
        ("dunce_hat.json", delta(DeltaShape::DunceHat, 0)?),
        (
            "fig1_octagon.json",
            polygon_document(&fig1_octagon()?).write(),
        ),
        ("y7.json", presentation_fixture(y_n_spec(7, 4))?.write()),
        ("y8.json", presentation_fixture(y_n_spec(8, 4))?.write()),
        (
            "acycone.json",
            presentation_fixture(acycone_spec(4))?.write(),
        ),
        ("acyctwo.json", acyctwo_document()?.write()),
        ("delta0.json", delta(DeltaShape::Simplex, 0)?),
        ("delta1.json", delta(DeltaShape::Simplex, 1)?),
        ("delta2.json", delta(DeltaShape::Simplex, 2)?),
        ("delta3.json", delta(DeltaShape::Simplex, 3)?),
        ("boundary_delta2.json", delta(DeltaShape::Boundary, 2)?),
        ("boundary_delta3.json", delta(DeltaShape::Boundary, 3)?),
        ("torus_delta.json", delta(DeltaShape::Torus, 0)?),
    ])
}

fn kit_digest() -> Result<String> {
    let kit = build_aa_pair()?;
    Ok(sha256_hex(kit_document(&kit).write().as_bytes()))
}

fn manifest_text(entries: &[(&str, String)]) -> String {
    entries
        .iter()
        .map(|(name, digest)| format!("{digest}  {name}\n"))
        .collect()
}

fn parse_manifest(text: &str) -> Result<BTreeMap<String, String>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let (digest, name) = l
                .split_once("  ")
                .with_context(|| format!("bad manifest line {l:?}"))?;
            Ok((name.to_string(), digest.to_string()))
        })
        .collect()
}

pub fn run(cmd: CorpusCmd) -> Result<Report> {
    match cmd {
        CorpusCmd::Write { dir, with_kit } => {
            let mut r = Report::new("corpus write");
            let files = fixtures()?;
            let mut entries = Vec::new();
            for (name, text) in &files {
                write_file(&Path::new(&dir).join(name).to_string_lossy(), text)?;
                entries.push((*name, sha256_hex(text.as_bytes())));
            }
            write_file(
                &Path::new(&dir).join(MANIFEST).to_string_lossy(),
                &manifest_text(&entries),
            )?;
            r.put("fixtures", files.len());
            if with_kit {
                let digest = kit_digest()?;
                write_file(
                    &Path::new(&dir).join(KIT_DIGEST).to_string_lossy(),
                    &manifest_text(&[(KIT_NAME, digest)]),
                )?;
            }
            r.mark("write");
            Ok(r)
        }
        CorpusCmd::Verify { dir, with_kit } => {
            let mut r = Report::new("corpus verify");
            let dir = Path::new(&dir);
            let manifest_bytes =
                std::fs::read(dir.join(MANIFEST)).context("reading the manifest")?;
            let manifest = parse_manifest(std::str::from_utf8(&manifest_bytes)?)?;
            let files = fixtures()?;
            let mut shipped = BTreeMap::new();
            for (name, text) in &files {
                shipped.insert(name.to_string(), ());
                let on_disk = std::fs::read(dir.join(name)).ok();
                let digest = sha256_hex(text.as_bytes());
                r.check(
                    &format!("{name}: rebuilt"),
                    on_disk.as_deref() == Some(text.as_bytes()),
                    "identical bytes to the shipped file",
                );
                r.check(
                    &format!("{name}: digest"),
                    manifest.get(*name) == Some(&digest),
                    format!("sha256 {digest}"),
                );
                let rewritten = Document::parse(text).map(|d| d.write());
                r.check(
                    &format!("{name}: round trip"),
                    rewritten.as_deref() == Ok(text.as_str()),
                    "",
                );
            }
            let extra: Vec<&String> = manifest
                .keys()
                .filter(|k| !shipped.contains_key(*k))
                .collect();
            r.check(
                "manifest",
                extra.is_empty(),
                if extra.is_empty() {
                    String::new()
                } else {
                    format!("unknown entries {extra:?}")
                },
            );
            if with_kit {
                let pinned = std::fs::read_to_string(dir.join(KIT_DIGEST))
                    .context("reading the kit digest")?;
                let pinned = parse_manifest(&pinned)?;
                let digest = kit_digest()?;
                r.check(
                    &format!("{KIT_NAME}: digest"),
                    pinned.get(KIT_NAME) == Some(&digest),
                    format!("sha256 {digest}"),
                );
            } else {
                r.skip(
                    &format!("{KIT_NAME}: digest"),
                    "pass --with-kit to rebuild the genuine kit",
                );
            }
            r.mark("verify");
            Ok(r)
        }
    }
}
