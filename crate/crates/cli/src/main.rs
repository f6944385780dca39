//! `curvplex`: realizability, distances, projections, volumes and embeddings
//! of constant-curvature simplices given by edge-length JSON files.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use curvplex::io::{
    embedding_to_json, format_significant, DocumentError, PointDocument, ProjectionDocument,
    SimplexDocument,
};
use curvplex::{
    check, embed, euclidean_face_volume, euclidean_volume, measure, project, BarycentricPoint,
    Curvature, EdgeLengths, Error, Verdict, DEFAULT_TOL,
};

const DIGITS: usize = 12;

#[derive(Parser)]
#[command(
    name = "curvplex",
    version,
    about = "Geometry of constant-curvature simplices from edge lengths"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Simplex document (JSON with `n`, `edge_lengths`, optional `curvature`).
    simplex: PathBuf,
    /// euclidean, hyperbolic, spherical or kappa=<value>. Defaults to the
    /// document's `curvature`, then euclidean.
    #[arg(long, short)]
    geometry: Option<Curvature>,
    /// Relative eigenvalue tolerance for realizability decisions.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Decide realizability and print the Gram signature and eigenvalues.
    Check(Common),
    /// Distance between two points given as barycentric-coordinate documents.
    Dist {
        #[command(flatten)]
        common: Common,
        x: PathBuf,
        y: PathBuf,
    },
    /// Orthogonal projection of a vertex onto its opposite facet.
    Project {
        #[command(flatten)]
        common: Common,
        /// Vertex to project (1-based).
        #[arg(long)]
        vertex: usize,
    },
    /// Euclidean volume of the simplex or of one facet.
    Volume {
        #[command(flatten)]
        common: Common,
        /// Measure the facet opposite this vertex (1-based) instead.
        #[arg(long)]
        face_opposite: Option<usize>,
    },
    /// Explicit model-space coordinates realizing the edge lengths.
    Embed {
        #[command(flatten)]
        common: Common,
        /// Write the embedding here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Input(String),
    Geometry(String),
    Numerical(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Geometry(_) => 3,
            Failure::Numerical(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Geometry(m) | Failure::Numerical(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::IndexOutOfRange { .. }
            | Error::DimensionMismatch { .. }
            | Error::InvalidEdgeLengths(_)
            | Error::InvalidPoint(_)
            | Error::InvalidCurvature(_)
            | Error::UnknownGeometry(_) => Failure::Input(msg),
            Error::NotRealizableInput(_)
            | Error::OutsideLightCone(_)
            | Error::DegenerateDirection(_)
            | Error::ProjectionDegenerate
            | Error::SingularFace => Failure::Geometry(msg),
            Error::DegenerateMinor | Error::WrongModel(_) | Error::Inconsistent(_) => {
                Failure::Numerical(msg)
            }
        }
    }
}

fn document_failure(path: &Path, e: DocumentError) -> Failure {
    Failure::Input(format!("{}: {e}", path.display()))
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

struct Loaded {
    edges: EdgeLengths,
    curvature: Curvature,
    tol: f64,
}

fn load(common: &Common) -> Result<Loaded, Failure> {
    if !(common.tol.is_finite() && common.tol > 0.0) {
        return Err(Failure::Input(format!(
            "--tol must be positive, got {}",
            common.tol
        )));
    }
    let doc = SimplexDocument::parse(&read(&common.simplex)?)
        .map_err(|e| document_failure(&common.simplex, e))?;
    let edges = doc
        .edge_lengths()
        .map_err(|e| document_failure(&common.simplex, e))?;
    let curvature = match (common.geometry, doc.curvature) {
        (Some(c), _) => c,
        (None, Some(k)) => Curvature::new(k)?,
        (None, None) => Curvature::EUCLIDEAN,
    };
    Ok(Loaded {
        edges,
        curvature,
        tol: common.tol,
    })
}

fn load_point(path: &Path, vertices: usize) -> Result<BarycentricPoint, Failure> {
    PointDocument::parse(&read(path)?)
        .and_then(|d| d.point(vertices))
        .map_err(|e| document_failure(path, e))
}

fn join_numbers(values: &[f64]) -> String {
    values
        .iter()
        .map(|&v| format_significant(v, DIGITS))
        .collect::<Vec<_>>()
        .join(", ")
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Check(common) => {
            let s = load(&common)?;
            let report = check(&s.edges, s.curvature, s.tol);
            println!("{}, signature {}", report.verdict, report.signature);
            if !report.eigenvalues.is_empty() {
                println!("eigenvalues: {}", join_numbers(&report.eigenvalues));
            }
            if !report.detail.is_empty() {
                println!("{}", report.detail);
            }
            if report.verdict != Verdict::Realizable {
                return Err(Failure::Geometry(format!(
                    "not realizable as a {} simplex",
                    s.curvature
                )));
            }
        }
        Command::Dist { common, x, y } => {
            let s = load(&common)?;
            let m = s.edges.vertex_count();
            let (px, py) = (load_point(&x, m)?, load_point(&y, m)?);
            let verdict = check(&s.edges, s.curvature, s.tol);
            if !verdict.is_realizable() {
                return Err(Failure::Geometry(format!(
                    "{}: {}",
                    verdict.verdict, verdict.detail
                )));
            }
            let report = measure(&s.edges, s.curvature, &px, &py)?;
            if report.outside_simplex {
                eprintln!("warning: a point has negative barycentric coordinates and lies outside the simplex");
            }
            println!("{}", format_significant(report.distance, DIGITS));
        }
        Command::Project { common, vertex } => {
            let s = load(&common)?;
            let r = project(&s.edges, s.curvature, vertex, s.tol)?;
            let doc = ProjectionDocument::from(&r);
            let text = serde_json::to_string_pretty(&doc)
                .map_err(|e| Failure::Numerical(e.to_string()))?;
            println!("{text}");
        }
        Command::Volume {
            common,
            face_opposite,
        } => {
            let s = load(&common)?;
            if s.curvature != Curvature::EUCLIDEAN {
                return Err(Failure::Input(format!(
                    "volume is only available for euclidean simplices, not {}",
                    s.curvature
                )));
            }
            let v = match face_opposite {
                Some(i) => euclidean_face_volume(&s.edges, i, s.tol)?,
                None => euclidean_volume(&s.edges, s.tol)?,
            };
            println!("{}", format_significant(v, DIGITS));
        }
        Command::Embed { common, out } => {
            let s = load(&common)?;
            let emb = embed(&s.edges, s.curvature, s.tol)?;
            let text = embedding_to_json(&emb);
            match out {
                Some(path) => fs::write(&path, text)
                    .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?,
                None => print!("{text}"),
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
