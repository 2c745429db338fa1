use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use innerbody::bodyfile;
use innerbody::cli::{cmd_curve, cmd_dist, cmd_gen, cmd_verify, GenKind, RunConfig, Suite};
use innerbody::polytope::Vector;
use innerbody::Error;

/// Inner parallel bodies of convex polytopes: generation, curve families,
/// anisotropic distances, and theorem-verification suites.
#[derive(Parser)]
#[command(name = "innerbody", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// RNG seed for generated bodies and verification corpora.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Number of λ grid points per curve.
    #[arg(long, global = true, default_value_t = 65)]
    grid: usize,
    /// Tolerance for the main verification checks.
    #[arg(long, global = true, default_value_t = 1e-7)]
    tol: f64,
    /// Ambient dimension for generated bodies.
    #[arg(long, global = true, default_value_t = 2)]
    dim: usize,
    /// Output file; stdout when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a body JSON file.
    Gen {
        #[command(subcommand)]
        kind: GenCmd,
    },
    /// Emit the mixed-volume curve family CSV for a pair of body files.
    Curve { omega: PathBuf, k: PathBuf },
    /// Run a verification suite (inequality, concavity, quotient,
    /// equality_cases, derivative, levelset, all).
    Verify {
        suite: String,
        /// Fault-injection hook: scale every computed perimeter.
        #[arg(long, hide = true)]
        corrupt_perimeter: Option<f64>,
    },
    /// Anisotropic distances from points (JSON array) to the boundary.
    Dist {
        omega: PathBuf,
        k: PathBuf,
        points: PathBuf,
    },
}

#[derive(Subcommand)]
enum GenCmd {
    /// Axis-aligned box centered at the origin with full side lengths.
    Box {
        #[arg(num_args = 2..=3, required = true)]
        sides: Vec<f64>,
    },
    /// Standard simplex in --dim dimensions.
    Simplex,
    /// Regular m-gon inscribed in the unit circle.
    #[command(name = "regular-polygon", alias = "regular_polygon")]
    RegularPolygon { m: usize },
    /// Hull of m seeded uniform points in --dim dimensions.
    #[command(name = "random-hull", alias = "random_hull")]
    RandomHull { m: usize },
    /// Tangential body of the body in FILE along the given normals.
    Circumscribed {
        k: PathBuf,
        /// Outward normal as "x,y" or "x,y,z"; repeat per facet.
        #[arg(long = "normal", required = true)]
        normals: Vec<String>,
    },
}

fn parse_normal(text: &str) -> Result<Vector, Error> {
    let coords: Result<Vec<f64>, _> = text.split(',').map(|t| t.trim().parse::<f64>()).collect();
    let coords =
        coords.map_err(|e| Error::InvalidInput(format!("bad normal '{text}': {e}")))?;
    Vector::from_slice(&coords)
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::NumericalFailure(_) => 3,
        _ => 2,
    }
}

fn run(cli: Cli) -> Result<bool, Error> {
    let config = RunConfig {
        seed: cli.seed,
        grid_points: cli.grid,
        tol_check: cli.tol,
        dim: cli.dim,
        ..RunConfig::default()
    };
    match cli.command {
        Command::Gen { kind } => {
            let kind = match kind {
                GenCmd::Box { sides } => GenKind::Box(sides),
                GenCmd::Simplex => GenKind::Simplex,
                GenCmd::RegularPolygon { m } => GenKind::RegularPolygon(m),
                GenCmd::RandomHull { m } => GenKind::RandomHull(m),
                GenCmd::Circumscribed { k, normals } => {
                    let parsed: Result<Vec<Vector>, Error> =
                        normals.iter().map(|t| parse_normal(t)).collect();
                    GenKind::Circumscribed {
                        k: bodyfile::load_body(&k)?,
                        normals: parsed?,
                    }
                }
            };
            emit(&cmd_gen(&kind, &config)?, &cli.out)?;
            Ok(true)
        }
        Command::Curve { omega, k } => {
            emit(&cmd_curve(&omega, &k, &config)?, &cli.out)?;
            Ok(true)
        }
        Command::Dist { omega, k, points } => {
            emit(&cmd_dist(&omega, &k, &points)?, &cli.out)?;
            Ok(true)
        }
        Command::Verify {
            suite,
            corrupt_perimeter,
        } => {
            let suite: Suite = suite.parse()?;
            let config = RunConfig {
                perimeter_fault: corrupt_perimeter,
                ..config
            };
            let report = cmd_verify(suite, &config)?;
            emit(&report.render(), &cli.out)?;
            Ok(report.pass)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::from(0),
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
