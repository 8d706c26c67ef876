use crate::input::{load, parse_list, parse_rect, write_file};
use crate::report::Report;
use anyhow::{bail, Context, Result};
use clap::Subcommand;
use cubecx::io::{cube_document, Document};
use cubecx::polygon::{
    corner_cut_rectangle, corner_cut_search, fig1_octagon, rectangle, regular_right_pentagon,
    single_vertex_polygon, solve_k, CutPlacement, TessellatedPolygon,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

pub const DEFAULT_SEED: u64 = 20240601;

#[derive(Subcommand)]
pub enum PolygonCmd {
    /// Rectangle sizes k around one vertex for the given side lengths.
    SolveK {
        #[arg(long)]
        lengths: String,
    },
    /// Polygon with a single interior vertex.
    SingleVertex {
        #[arg(long)]
        lengths: String,
        #[arg(long)]
        emit: Option<String>,
    },
    /// Rectangle with the corners lying inside sides cut away.
    CornerCut {
        /// Rectangle size, `WxH`.
        #[arg(long)]
        rect: String,
        #[arg(long)]
        lengths: String,
        /// Steps from the lower left corner to v_1; searched when omitted.
        #[arg(long)]
        offset: Option<usize>,
        #[arg(long)]
        clockwise: bool,
        #[arg(long)]
        emit: Option<String>,
    },
    /// A grid of `W × H` unit squares.
    Rectangle {
        /// Size as `WxH`.
        #[arg(long)]
        rect: String,
        #[arg(long)]
        emit: Option<String>,
    },
    /// Five `m × m` squares around a degree-5 vertex.
    Pentagon {
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long)]
        emit: Option<String>,
    },
    /// The octagon with sides (2,2,2,2,2,2,2,4).
    Fig1 {
        #[arg(long)]
        emit: Option<String>,
    },
    /// Attach a strip along side `--side` (1-based), or along every side.
    Collar {
        #[arg(long)]
        input: String,
        #[arg(long)]
        side: Option<usize>,
        /// Number of full collars when `--side` is absent.
        #[arg(long, default_value_t = 1)]
        times: usize,
        #[arg(long)]
        emit: Option<String>,
    },
    /// Split every square into four.
    Subdivide {
        #[arg(long)]
        input: String,
        #[arg(long)]
        emit: Option<String>,
    },
    /// New corner `--at` steps into side `--side` (1-based).
    InsertCorner {
        #[arg(long)]
        input: String,
        #[arg(long)]
        side: usize,
        #[arg(long)]
        at: usize,
        #[arg(long)]
        emit: Option<String>,
    },
    /// Disc invariants, Gauss-Bonnet and the CAT(0) condition.
    Check {
        #[arg(long)]
        input: String,
    },
    /// A seeded random chain of constructors and operations.
    Random {
        #[arg(long, default_value_t = 4)]
        steps: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        emit: Option<String>,
    },
}

pub fn polygon_annotations(p: &TessellatedPolygon) -> Value {
    json!({
        "polygon": {
            "n_vertices": p.n_vertices(),
            "squares": p.squares(),
            "boundary": p.boundary(),
            "corners": p.corner_positions(),
        },
        "side_lengths": p.side_lengths(),
    })
}

pub fn polygon_document(p: &TessellatedPolygon) -> Document {
    cube_document(&p.carrier().complex).with_annotations(polygon_annotations(p))
}

/// Reads the polygon annotation and checks it against the cells.
pub fn read_polygon(doc: &Document) -> Result<TessellatedPolygon> {
    let a = doc
        .annotations
        .as_ref()
        .and_then(|a| a.get("polygon"))
        .context("document has no polygon annotation")?;
    let n_vertices: usize =
        serde_json::from_value(a["n_vertices"].clone()).context("polygon.n_vertices")?;
    let squares: Vec<[usize; 4]> =
        serde_json::from_value(a["squares"].clone()).context("polygon.squares")?;
    let boundary: Vec<usize> =
        serde_json::from_value(a["boundary"].clone()).context("polygon.boundary")?;
    let corners: Vec<usize> =
        serde_json::from_value(a["corners"].clone()).context("polygon.corners")?;
    let p = TessellatedPolygon::new(n_vertices, squares, boundary, corners)
        .context("polygon annotation")?;
    if doc.to_cube()? != p.carrier().complex {
        bail!("cells do not match the polygon annotation");
    }
    Ok(p)
}

fn load_polygon(path: &str) -> Result<(crate::input::Loaded, TessellatedPolygon)> {
    let l = load(path)?;
    let p = read_polygon(&l.doc).with_context(|| path.to_string())?;
    Ok((l, p))
}

/// Shared polygon checks and summary.
pub fn describe(r: &mut Report, p: &TessellatedPolygon) {
    let n = p.n_sides() as i64;
    let gb = p.gauss_bonnet();
    let curv = p.curvatures();
    let negative: Vec<usize> = (0..curv.len()).filter(|&v| curv[v] < 0).collect();
    let positive = p.positive_curvature();
    r.counts = Some(p.carrier().complex.counts());
    r.check("disc", p.validate().is_ok(), "");
    r.check(
        "gauss_bonnet",
        gb == 4 - n,
        format!("sum of curvatures {gb}, 4 - n = {}", 4 - n),
    );
    let detail = if positive.is_empty() {
        "no vertex of positive curvature".to_string()
    } else {
        format!("positive curvature at vertices {positive:?}")
    };
    r.check("cat0", p.is_cat0(), detail);
    r.put("n_sides", p.n_sides());
    r.put("side_lengths", p.side_lengths());
    r.put("perimeter", p.perimeter());
    r.put("squares", p.n_squares());
    r.put("curvature_sum", gb);
    r.put("negative_vertices", negative.clone());
    r.put("positive_vertices", positive);
    r.line(format!(
        "sides {:?}, perimeter {}, {} squares",
        p.side_lengths(),
        p.perimeter(),
        p.n_squares()
    ));
    r.line(format!("negative curvature at {negative:?}"));
}

fn finish(
    mut r: Report,
    built: cubecx::Result<TessellatedPolygon>,
    emit: Option<String>,
) -> Result<Report> {
    match built {
        Ok(p) => {
            r.check("construction", true, "");
            describe(&mut r, &p);
            if let Some(path) = emit {
                write_file(&path, &polygon_document(&p).write())?;
            }
        }
        Err(e) => r.check("construction", false, e.to_string()),
    }
    r.mark("polygon");
    Ok(r)
}

fn lengths_i64(s: &str) -> Result<Vec<i64>> {
    parse_list(s)
}

pub fn run(cmd: PolygonCmd) -> Result<Report> {
    match cmd {
        PolygonCmd::SolveK { lengths } => {
            let l = lengths_i64(&lengths)?;
            let mut r = Report::new("polygon solve-k");
            r.put("lengths", l.clone());
            match solve_k(&l) {
                Ok(s) => {
                    r.check("solvable", true, "");
                    r.put("k", s.k.clone());
                    r.put("underdetermined", s.underdetermined);
                    r.line(format!(
                        "k = {:?}{}",
                        s.k,
                        if s.underdetermined {
                            " (one of several)"
                        } else {
                            ""
                        }
                    ));
                }
                Err(e) => r.check("solvable", false, e.to_string()),
            }
            Ok(r)
        }
        PolygonCmd::SingleVertex { lengths, emit } => {
            let l = lengths_i64(&lengths)?;
            finish(
                Report::new("polygon single-vertex"),
                single_vertex_polygon(&l),
                emit,
            )
        }
        PolygonCmd::CornerCut {
            rect,
            lengths,
            offset,
            clockwise,
            emit,
        } => {
            let (w, h) = parse_rect(&rect)?;
            let l: Vec<usize> = parse_list(&lengths)?;
            let mut r = Report::new("polygon corner-cut");
            let built = match offset {
                Some(offset) => corner_cut_rectangle(w, h, &l, CutPlacement { offset, clockwise }),
                None => corner_cut_search(w, h, &l).map(|(place, p)| {
                    r.put("offset", place.offset);
                    r.put("clockwise", place.clockwise);
                    p
                }),
            };
            finish(r, built, emit)
        }
        PolygonCmd::Rectangle { rect, emit } => {
            let (w, h) = parse_rect(&rect)?;
            finish(Report::new("polygon rectangle"), rectangle(w, h), emit)
        }
        PolygonCmd::Pentagon { m, emit } => finish(
            Report::new("polygon pentagon"),
            regular_right_pentagon(m),
            emit,
        ),
        PolygonCmd::Fig1 { emit } => finish(Report::new("polygon fig1"), fig1_octagon(), emit),
        PolygonCmd::Collar {
            input,
            side,
            times,
            emit,
        } => {
            let (l, p) = load_polygon(&input)?;
            let built = match side {
                Some(0) => bail!("sides are numbered from 1"),
                Some(i) => p.collar(i - 1),
                None => p.collar_all_iter(times),
            };
            finish(l.report("polygon collar"), built, emit)
        }
        PolygonCmd::Subdivide { input, emit } => {
            let (l, p) = load_polygon(&input)?;
            finish(l.report("polygon subdivide"), p.subdivide(), emit)
        }
        PolygonCmd::InsertCorner {
            input,
            side,
            at,
            emit,
        } => {
            let (l, p) = load_polygon(&input)?;
            if side == 0 {
                bail!("sides are numbered from 1");
            }
            finish(
                l.report("polygon insert-corner"),
                p.insert_corner(side - 1, at),
                emit,
            )
        }
        PolygonCmd::Check { input } => {
            let (l, p) = load_polygon(&input)?;
            let mut r = l.report("polygon check");
            describe(&mut r, &p);
            Ok(r)
        }
        PolygonCmd::Random { steps, seed, emit } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut r = Report::new("polygon random");
            r.put("seed", seed);
            let (mut p, mut log) = random_base(&mut rng);
            for _ in 0..steps {
                let (q, what) = random_step(&mut rng, &p);
                if let Some(q) = q {
                    p = q;
                    log.push(what);
                }
            }
            r.put("chain", log.clone());
            r.line(format!("chain: {}", log.join(", ")));
            finish(r, Ok(p), emit)
        }
    }
}

fn random_base(rng: &mut ChaCha8Rng) -> (TessellatedPolygon, Vec<String>) {
    loop {
        let kind = rng.gen_range(0..4);
        let built = match kind {
            0 => {
                let (w, h) = (rng.gen_range(1..4), rng.gen_range(1..4));
                rectangle(w, h)
                    .ok()
                    .map(|p| (p, format!("rectangle {w}x{h}")))
            }
            1 => {
                let m = rng.gen_range(1..3);
                regular_right_pentagon(m)
                    .ok()
                    .map(|p| (p, format!("pentagon {m}")))
            }
            2 => {
                let n = rng.gen_range(3..8);
                let k: Vec<i64> = (0..n).map(|_| rng.gen_range(1..4)).collect();
                let l: Vec<i64> = (0..n).map(|i| k[i] + k[(i + 2) % n]).collect();
                single_vertex_polygon(&l)
                    .ok()
                    .map(|p| (p, format!("single-vertex {l:?}")))
            }
            _ => {
                let n = rng.gen_range(4..9);
                let l: Vec<usize> = (0..n).map(|_| rng.gen_range(1..4)).collect();
                let per: usize = l.iter().sum();
                if !per.is_multiple_of(2) {
                    None
                } else {
                    let w = rng.gen_range(1..per / 2);
                    corner_cut_search(w, per / 2 - w, &l)
                        .ok()
                        .map(|(_, p)| (p, format!("corner-cut {l:?}")))
                }
            }
        };
        if let Some((p, what)) = built {
            return (p, vec![what]);
        }
    }
}

fn random_step(
    rng: &mut ChaCha8Rng,
    p: &TessellatedPolygon,
) -> (Option<TessellatedPolygon>, String) {
    let n = p.n_sides();
    match rng.gen_range(0..4) {
        0 => {
            let i = rng.gen_range(0..n);
            (p.collar(i).ok(), format!("collar {}", i + 1))
        }
        1 => (p.collar_all().ok(), "collar all".into()),
        2 => (
            (p.n_squares() < 400).then(|| p.subdivide().ok()).flatten(),
            "subdivide".into(),
        ),
        _ => {
            let i = rng.gen_range(0..n);
            let l = p.side_lengths()[i];
            if l < 2 {
                return (None, String::new());
            }
            let k = rng.gen_range(1..l);
            (
                p.insert_corner(i, k).ok(),
                format!("insert-corner {} {k}", i + 1),
            )
        }
    }
}
