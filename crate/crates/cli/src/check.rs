use crate::input::{load, Loaded};
use crate::report::Report;
use anyhow::Result;
use clap::{Args, Subcommand};
use cubecx::complex::link::{cubicality_check, gromov_check, LinkDefect, LinkFailure};
use serde_json::json;

/// Worker count for batch runs.
pub const WORKERS_VAR: &str = "CUBECX_WORKERS";

#[derive(Args)]
pub struct HomologyArgs {
    /// Input document; repeat for a batch.
    #[arg(long, required = true)]
    input: Vec<String>,
    #[arg(long)]
    reduced: bool,
}

#[derive(Args)]
pub struct Inputs {
    /// Input document; repeat for a batch.
    #[arg(long, required = true)]
    input: Vec<String>,
}

#[derive(Subcommand)]
pub enum CheckCmd {
    /// Gromov's link condition at every vertex.
    Gromov(Inputs),
    /// Cubes embed, intersections are faces, links are simplicial.
    Cubical(Inputs),
    /// Reduced integral homology vanishes.
    Acyclic(Inputs),
}

/// Runs `f` on every input, fanning out over `CUBECX_WORKERS` threads.
/// Results keep the input order.
pub fn batch<F>(inputs: &[String], f: F) -> Vec<Result<Report>>
where
    F: Fn(&str) -> Result<Report> + Sync,
{
    let workers = std::env::var(WORKERS_VAR)
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
        .min(inputs.len().max(1));
    if workers <= 1 {
        return inputs.iter().map(|p| f(p)).collect();
    }
    let mut out: Vec<Option<Result<Report>>> = (0..inputs.len()).map(|_| None).collect();
    let next = std::sync::atomic::AtomicUsize::new(0);
    let slots = std::sync::Mutex::new(&mut out);
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                if i >= inputs.len() {
                    break;
                }
                let r = f(&inputs[i]);
                slots.lock().unwrap()[i] = Some(r);
            });
        }
    });
    out.into_iter()
        .map(|r| r.expect("every input ran"))
        .collect()
}

pub fn homology(a: HomologyArgs) -> Vec<Result<Report>> {
    batch(&a.input, |path| {
        let l = load(path)?;
        let x = l.any_complex()?;
        let mut r = l.report(if a.reduced {
            "homology --reduced"
        } else {
            "homology"
        });
        r.counts = Some(x.counts());
        let h = x.homology(a.reduced);
        r.put("homology", h.to_json());
        r.lines.extend(h.lines());
        r.mark("homology");
        Ok(r)
    })
}

pub fn run(cmd: CheckCmd) -> Vec<Result<Report>> {
    match cmd {
        CheckCmd::Gromov(i) => batch(&i.input, |p| gromov(&load(p)?)),
        CheckCmd::Cubical(i) => batch(&i.input, |p| cubical(&load(p)?)),
        CheckCmd::Acyclic(i) => batch(&i.input, |p| acyclic(&load(p)?)),
    }
}

pub fn describe_defect(f: &LinkFailure) -> String {
    let what = match &f.defect {
        LinkDefect::Degenerate => "the complex has collapsed faces".to_string(),
        LinkDefect::RepeatedVertex { cube, corner } => {
            format!("corner {corner} of cube {cube} meets the same edge end twice; the link is not simplicial")
        }
        LinkDefect::SharedVertexSet { cubes } => format!(
            "corners {} of cube {} and {} of cube {} span the same link vertices; the link is not simplicial",
            cubes[0].1, cubes[0].0, cubes[1].1, cubes[1].0
        ),
        LinkDefect::MissingSimplex(vs) => {
            let ends: Vec<String> =
                vs.iter().map(|v| format!("{}{}", v.edge, if v.head { "+" } else { "-" })).collect();
            format!("link clique {{{}}} spans no simplex; the link is not flag", ends.join(", "))
        }
    };
    format!("vertex {}: {what}", f.vertex)
}

fn defect_json(f: &LinkFailure) -> serde_json::Value {
    let kind = match &f.defect {
        LinkDefect::Degenerate => "degenerate",
        LinkDefect::RepeatedVertex { .. } => "not_simplicial",
        LinkDefect::SharedVertexSet { .. } => "not_simplicial",
        LinkDefect::MissingSimplex(_) => "not_flag",
    };
    json!({ "vertex": f.vertex, "kind": kind, "detail": describe_defect(f) })
}

fn gromov(l: &Loaded) -> Result<Report> {
    let c = l.cube()?;
    let mut r = l.report("check gromov");
    r.counts = Some(c.counts());
    let g = gromov_check(&c);
    let detail = match g.failures.first() {
        None => format!(
            "{} vertex links are flag simplicial complexes",
            g.vertices_checked
        ),
        Some(f) => format!(
            "{} of {} vertices fail; first at {}",
            g.failures.len(),
            g.vertices_checked,
            describe_defect(f)
        ),
    };
    r.check("gromov", g.pass, detail);
    if !g.pass {
        r.put(
            "witnesses",
            g.failures.iter().map(defect_json).collect::<Vec<_>>(),
        );
        r.lines.extend(
            g.failures
                .iter()
                .map(|f| format!("witness {}", describe_defect(f))),
        );
    }
    r.mark("gromov");
    Ok(r)
}

fn cubical(l: &Loaded) -> Result<Report> {
    let c = l.cube()?;
    let mut r = l.report("check cubical");
    r.counts = Some(c.counts());
    let q = cubicality_check(&c);
    r.check("cubes_embed", q.cubes_embed, "");
    r.check("intersections_are_faces", q.intersections_are_faces, "");
    r.check("links_simplicial", q.links_simplicial, "");
    r.mark("cubical");
    Ok(r)
}

fn acyclic(l: &Loaded) -> Result<Report> {
    let x = l.any_complex()?;
    let mut r = l.report("check acyclic");
    r.counts = Some(x.counts());
    let h = x.homology(true);
    let detail = if h.is_trivial() {
        "reduced homology vanishes".to_string()
    } else {
        h.lines().join("; ")
    };
    r.check("acyclic", h.is_trivial(), detail);
    r.put("reduced_homology", h.to_json());
    r.mark("acyclic");
    Ok(r)
}
