//! `cubecx`: build and verify cube complexes from the command line.
//!
//! Exit status 0 when every check passes, 1 when a mathematical check fails,
//! 2 on invalid input.

mod check;
mod corpus;
mod geo;
mod input;
mod kt;
mod make;
mod polygon;
mod report;

use clap::{Parser, Subcommand, ValueEnum};
use report::Report;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "cubecx",
    version,
    about = "Cube complexes, CAT(0) checks and the Kan-Thurston construction"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Add wall-clock timings to reports (they are then no longer reproducible).
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Tessellated polygons.
    #[command(subcommand)]
    Polygon(polygon::PolygonCmd),
    /// Presentation complexes and other named constructions.
    #[command(subcommand)]
    Make(make::MakeCmd),
    /// The Kan-Thurston construction.
    #[command(subcommand)]
    Kt(kt::KtCmd),
    /// Hyperplanes, half-spaces, hulls and fixed points.
    #[command(subcommand)]
    Geo(geo::GeoCmd),
    /// Integral homology of a cube, Δ- or simplicial complex.
    Homology(check::HomologyArgs),
    /// Curvature, cubicality and acyclicity checks.
    #[command(subcommand)]
    Check(check::CheckCmd),
    /// Shipped fixtures and their digest manifest.
    #[command(subcommand)]
    Corpus(corpus::CorpusCmd),
}

fn run(cmd: Command) -> Vec<anyhow::Result<Report>> {
    match cmd {
        Command::Polygon(c) => vec![polygon::run(c)],
        Command::Make(c) => vec![make::run(c)],
        Command::Kt(c) => vec![kt::run(c)],
        Command::Geo(c) => vec![geo::run(c)],
        Command::Homology(a) => check::homology(a),
        Command::Check(c) => check::run(c),
        Command::Corpus(c) => vec![corpus::run(c)],
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    use std::io::Write;
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let results = run(cli.command);
    let mut code = 0u8;
    let mut json = Vec::new();
    for r in results {
        match r {
            Ok(rep) => {
                if rep.failed() {
                    code = code.max(1);
                }
                match cli.format {
                    Format::Json => json.push(rep.to_json(cli.timings)),
                    Format::Text => emit(&rep.to_text(cli.timings)),
                }
            }
            Err(e) => {
                eprintln!("error: {e:#}");
                code = 2;
            }
        }
    }
    if let Format::Json = cli.format {
        let value = if json.len() == 1 {
            json.pop().unwrap()
        } else {
            serde_json::Value::Array(json)
        };
        emit(&(serde_json::to_string_pretty(&value).expect("reports serialise") + "\n"));
    }
    ExitCode::from(code)
}
