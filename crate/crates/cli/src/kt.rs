use crate::check::describe_defect;
use crate::input::{homology_tuple, load, same_homology, write_file};
use crate::report::Report;
use anyhow::{Context, Result};
use clap::{Subcommand, ValueEnum};
use cubecx::complex::gromov_check;
use cubecx::homology::cube_homology;
use cubecx::io::cube_document_with_involution;
use cubecx::kan_thurston::{
    build_aa_pair, filtration_check, kt_build_with, kt_fixed, kt_quotient, mock_kit,
    t_dimension_law, AcyclicKit, KtResult,
};
use cubecx::CellRef;
use cubecx::Sym;
use serde_json::json;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KitChoice {
    /// A single point with the trivial involution.
    Mock,
    /// The acyclic pair (A′, A) built from the octagon complex.
    Genuine,
}

#[derive(Subcommand)]
pub enum KtCmd {
    /// Build T_X for a Δ-complex X.
    Build {
        #[arg(long, value_enum, default_value_t = KitChoice::Mock)]
        kit: KitChoice,
        #[arg(long)]
        input: String,
        #[arg(long)]
        emit: Option<String>,
        /// Also build U_X and write it here.
        #[arg(long)]
        emit_u: Option<String>,
    },
    /// Build T_X and check filtration, homology, curvature and dimensions.
    Verify {
        #[arg(long, value_enum, default_value_t = KitChoice::Mock)]
        kit: KitChoice,
        #[arg(long)]
        input: String,
    },
}

fn kit(choice: KitChoice) -> Result<AcyclicKit> {
    Ok(match choice {
        KitChoice::Mock => mock_kit(),
        KitChoice::Genuine => build_aa_pair().context("building the genuine kit")?,
    })
}

fn kit_name(choice: KitChoice) -> &'static str {
    match choice {
        KitChoice::Mock => "mock",
        KitChoice::Genuine => "genuine",
    }
}

/// Expected `dim T_X` for this kit.
fn expected_dimension(choice: KitChoice, dim_x: usize) -> usize {
    match choice {
        KitChoice::Genuine => t_dimension_law(dim_x),
        KitChoice::Mock => dim_x,
    }
}

fn t_document(res: &KtResult, choice: KitChoice) -> cubecx::io::Document {
    cube_document_with_involution(&res.t, &res.tau)
        .with_annotations(json!({ "kit": kit_name(choice), "owner": res.t_owner }))
}

pub fn run(cmd: KtCmd) -> Result<Report> {
    match cmd {
        KtCmd::Build {
            kit: choice,
            input,
            emit,
            emit_u,
        } => {
            let l = load(&input)?;
            let x = l.delta()?;
            x.require_category_c().with_context(|| input.clone())?;
            let k = kit(choice)?;
            let mut r = l.report(&format!("kt build --kit {}", kit_name(choice)));
            r.mark("kit");
            let res = kt_build_with(&k, &x, emit_u.is_some())?;
            r.mark("build");
            r.counts = Some(res.t.counts());
            r.put("dim_x", x.dimension());
            r.put("dim_t", res.t.dimension());
            if let Some(u) = &res.u {
                r.put("u_cells", u.complex.counts());
            }
            if let Some(path) = emit {
                write_file(&path, &t_document(&res, choice).write())?;
            }
            if let (Some(path), Some(u)) = (emit_u, &res.u) {
                let doc = cube_document_with_involution(&u.complex, &u.tau)
                    .with_annotations(json!({ "kit": kit_name(choice), "owner": u.owner }));
                write_file(&path, &doc.write())?;
            }
            r.mark("write");
            Ok(r)
        }
        KtCmd::Verify { kit: choice, input } => {
            let l = load(&input)?;
            let x = l.delta()?;
            x.require_category_c().with_context(|| input.clone())?;
            let k = kit(choice)?;
            let mut r = l.report(&format!("kt verify --kit {}", kit_name(choice)));
            r.mark("kit");
            let res = kt_build_with(&k, &x, false)?;
            r.mark("build");
            verify(&mut r, choice, &x, &res)?;
            Ok(r)
        }
    }
}

fn verify(
    r: &mut Report,
    choice: KitChoice,
    x: &cubecx::complex::DeltaComplex,
    res: &KtResult,
) -> Result<()> {
    r.counts = Some(res.t.counts());
    let f = filtration_check(res, x)?;
    r.mark("filtration");
    let levels: Vec<String> = f
        .levels
        .iter()
        .map(|lv| {
            format!(
                "k={} ({} simplices) {}",
                lv.k,
                lv.simplices,
                if lv.pass { "ok" } else { "FAIL" }
            )
        })
        .collect();
    r.check(
        "filtration",
        f.levels.iter().all(|lv| lv.pass),
        levels.join("; "),
    );
    r.check(
        "labels",
        f.labels_ok,
        "every T_W of a simplex closure or skeleton is a subcomplex",
    );
    let hx = &f.homology_x;
    r.check(
        "homology_t",
        f.homology_match,
        format!(
            "H(T) = {}, H(X) = {}",
            homology_tuple(&f.homology_t),
            homology_tuple(hx)
        ),
    );
    r.put("H", homology_tuple(&f.homology_t));
    r.put("homology_t", f.homology_t.to_json());
    r.put("homology_x", hx.to_json());
    r.line(format!("H = {}", homology_tuple(&f.homology_t)));
    r.lines.extend(f.homology_t.lines());

    match choice {
        KitChoice::Genuine => {
            let g = gromov_check(&res.t);
            let detail = match g.failures.first() {
                None => format!("{} vertex links are flag", g.vertices_checked),
                Some(fl) => describe_defect(fl),
            };
            r.check("gromov", g.pass, detail);
            r.mark("gromov");
        }
        KitChoice::Mock => r.skip("gromov", "the point kit has collapsed cells"),
    }

    let dim_x = x.dimension().unwrap_or(0);
    let dim_t = res.t.dimension().unwrap_or(0);
    let want = expected_dimension(choice, dim_x);
    r.check(
        "dimension_law",
        dim_t == want,
        format!("dim X = {dim_x}, dim T = {dim_t}, expected {want}"),
    );

    let squares_to_id = res.t.cells().all(|q| {
        let img = res.tau.image(q);
        res.tau.image(img.cell()).after(&img.sym) == CellRef::new(q, Sym::identity(res.t.dim(q)))
    });
    r.check(
        "tau_squared",
        squares_to_id,
        "τ∘τ is the identity on every cell",
    );

    let fixed = kt_fixed(res)?;
    let hf = cube_homology(&fixed);
    let dim_f = fixed.dimension().unwrap_or(0);
    r.check(
        "fixed_dimension",
        dim_f == dim_x,
        format!("dim T^τ = {dim_f}, dim X = {dim_x}"),
    );
    r.check(
        "fixed_homology",
        same_homology(&hf, hx),
        format!(
            "H(T^τ) = {}, H(X) = {}",
            homology_tuple(&hf),
            homology_tuple(hx)
        ),
    );
    let quot = kt_quotient(res)?;
    let hq = cube_homology(&quot);
    r.check(
        "quotient_homology",
        same_homology(&hq, hx),
        format!(
            "H(T/τ) = {}, H(X) = {}",
            homology_tuple(&hq),
            homology_tuple(hx)
        ),
    );
    r.put("fixed_cells", fixed.counts());
    r.put("quotient_cells", quot.counts());
    r.mark("fixed and quotient");
    Ok(())
}
