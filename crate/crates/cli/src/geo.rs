use crate::input::{load, parse_list, Loaded};
use crate::report::Report;
use anyhow::{bail, Context, Result};
use clap::Subcommand;
use cubecx::cat0::{
    convex_hull_with, fixed_point, halfspaces, hyperplanes, separating_pairs, skeleton_distance,
    Hyperplanes,
};
use cubecx::complex::{is_combinatorially_convex, CubeMap};
use cubecx::{CubeComplex, Error};
use serde_json::json;

#[derive(Subcommand)]
pub enum GeoCmd {
    /// Hyperplane pairs and the sizes of their half-spaces.
    Hyperplanes {
        #[arg(long)]
        input: String,
    },
    /// The two half-spaces of one hyperplane pair.
    Halfspaces {
        #[arg(long)]
        input: String,
        #[arg(long)]
        pair: usize,
    },
    /// Edge distance between two vertices and the pairs separating them.
    Distance {
        #[arg(long)]
        input: String,
        #[arg(long)]
        v: usize,
        #[arg(long)]
        w: usize,
    },
    /// Combinatorial convex hull of some cells.
    Hull {
        #[arg(long)]
        input: String,
        /// Comma-separated cell ids.
        #[arg(long)]
        cells: String,
    },
    /// A cube invariant under the given automorphisms (by default the
    /// document's involution).
    FixedPoint {
        #[arg(long)]
        input: String,
        /// Cube-map document of an automorphism; repeatable.
        #[arg(long)]
        generator: Vec<String>,
    },
}

/// Geometric preconditions that fail for mathematical reasons rather than
/// bad input.
fn is_precondition(e: &Error) -> bool {
    matches!(
        e,
        Error::Precondition(_) | Error::MoreThanTwoComponents(_) | Error::Disconnected(..)
    )
}

/// Turns precondition failures into a failed check.
fn guarded<T>(r: &mut Report, res: cubecx::Result<T>) -> Result<Option<T>> {
    match res {
        Ok(t) => Ok(Some(t)),
        Err(e) if is_precondition(&e) => {
            r.check("cat0_preconditions", false, e.to_string());
            Ok(None)
        }
        Err(e) => Err(e.into()),
    }
}

fn setup(input: &str, command: &str) -> Result<(Loaded, CubeComplex, Report)> {
    let l = load(input)?;
    let c = l.cube()?;
    let mut r = l.report(command);
    r.counts = Some(c.counts());
    Ok((l, c, r))
}

fn edges_of_pair(hp: &Hyperplanes, p: usize) -> Vec<usize> {
    let mut edges: Vec<usize> = hp.members[hp.pairs[p].0].iter().map(|d| d / 2).collect();
    edges.sort_unstable();
    edges.dedup();
    edges
}

pub fn run(cmd: GeoCmd) -> Result<Report> {
    match cmd {
        GeoCmd::Hyperplanes { input } => {
            let (_, c, mut r) = setup(&input, "geo hyperplanes")?;
            if let Some(d) = guarded(&mut r, hyperplanes(&c))? {
                r.check("cat0_preconditions", true, "");
                let pairs: Vec<_> = (0..d.sides.len())
                    .map(|p| {
                        json!({
                            "pair": p,
                            "edges": edges_of_pair(&d.hyperplanes, p),
                            "sides": [d.sides[p][0].len(), d.sides[p][1].len()],
                        })
                    })
                    .collect();
                r.put("pairs", pairs);
                r.line(format!("{} hyperplane pairs", d.sides.len()));
            }
            Ok(r)
        }
        GeoCmd::Halfspaces { input, pair } => {
            let (_, c, mut r) = setup(&input, "geo halfspaces")?;
            if let Some(hp) = guarded(&mut r, Hyperplanes::new(&c))? {
                if pair >= hp.pairs.len() {
                    bail!("pair {pair} out of range ({} pairs)", hp.pairs.len());
                }
                if let Some(s) = guarded(&mut r, halfspaces(&c, &hp, pair))? {
                    r.check("cat0_preconditions", true, "");
                    r.put("edges", edges_of_pair(&hp, pair));
                    r.put("sides", json!([s[0], s[1]]));
                    r.line(format!("side 0: {:?}", s[0]));
                    r.line(format!("side 1: {:?}", s[1]));
                }
            }
            Ok(r)
        }
        GeoCmd::Distance { input, v, w } => {
            let (_, c, mut r) = setup(&input, "geo distance")?;
            for x in [v, w] {
                if x >= c.len() || c.dim(x) != 0 {
                    bail!("{x} is not a vertex");
                }
            }
            let Some(dist) = guarded(&mut r, skeleton_distance(&c, v, w))? else {
                return Ok(r);
            };
            r.put("distance", dist);
            r.line(format!("distance {dist}"));
            if let Some(d) = guarded(&mut r, hyperplanes(&c))? {
                r.check("cat0_preconditions", true, "");
                let sep = separating_pairs(&d, v, w);
                r.put("separating_pairs", sep);
                r.check(
                    "separating_equals_distance",
                    sep == dist,
                    format!("{sep} separating pairs, distance {dist}"),
                );
            }
            Ok(r)
        }
        GeoCmd::Hull { input, cells } => {
            let (_, c, mut r) = setup(&input, "geo hull")?;
            let cells: Vec<usize> = parse_list(&cells)?;
            if let Some(hp) = guarded(&mut r, Hyperplanes::new(&c))? {
                if let Some(h) = guarded(&mut r, convex_hull_with(&c, &hp, &cells))? {
                    r.check("cat0_preconditions", true, "");
                    let bound_ok = h.bound_exponent >= 64
                        || h.vertices.len() as u128 <= 1u128 << h.bound_exponent;
                    r.check(
                        "vertex_bound",
                        bound_ok,
                        format!(
                            "{} vertices, bound 2^{}",
                            h.vertices.len(),
                            h.bound_exponent
                        ),
                    );
                    r.check("convex", is_combinatorially_convex(&c, &h.mask)?, "");
                    let hull_cells: Vec<usize> = (0..h.mask.len()).filter(|&q| h.mask[q]).collect();
                    r.put("vertices", h.vertices.clone());
                    r.put("cells", hull_cells.len());
                    r.put("separating_pairs", h.separating);
                    r.line(format!("hull vertices {:?}", h.vertices));
                }
            }
            Ok(r)
        }
        GeoCmd::FixedPoint { input, generator } => {
            let (l, c, mut r) = setup(&input, "geo fixed-point")?;
            let gens: Vec<CubeMap> = if generator.is_empty() {
                let tau = l.doc.involution(&c).with_context(|| input.clone())?;
                vec![
                    tau.context("no --generator given and the document has no involution")?
                        .map,
                ]
            } else {
                generator
                    .iter()
                    .map(|p| {
                        let g = load(p)?;
                        g.expect(cubecx::io::Kind::CubeMap)?;
                        g.doc.to_cube_map().with_context(|| p.clone())
                    })
                    .collect::<Result<_>>()?
            };
            match fixed_point(&c, &gens) {
                Ok(f) => {
                    let invariant = gens.iter().all(|g| g.images[f.cell].cell() == f.cell);
                    r.check(
                        "invariant_cube",
                        invariant,
                        format!("cell {} of dimension {}", f.cell, f.dim),
                    );
                    r.put("cell", f.cell);
                    r.put("dim", f.dim);
                    r.put("via_hull", f.via_hull);
                }
                Err(Error::NoInvariantCube) => {
                    r.check("invariant_cube", false, "no invariant cube")
                }
                Err(e) => return Err(e.into()),
            }
            Ok(r)
        }
    }
}
