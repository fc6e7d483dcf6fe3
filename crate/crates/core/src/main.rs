use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use hopfkit::complex::{count_roots_by_winding, Complex, Polynomial};
use hopfkit::export::{export_json, export_obj, export_svg, ExportOptions};
use hopfkit::hopf::{HopfConvention, HopfVariant};
use hopfkit::scene::{apollonius_scene, fiber_scene, hypercube_document, tori_scene, SceneDocument};
use hopfkit::stereo::S2Point;
use hopfkit::verify::{self, Suite};
use hopfkit::GeomError;

#[derive(Parser)]
#[command(name = "hopfkit", version, about = "Hopf fibration and inversive geometry toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Obj,
    Svg,
}

#[derive(Subcommand)]
enum Command {
    /// Projected fiber over a base point of S^2.
    Fiber {
        #[arg(long, value_name = "X,Y,Z")]
        base: String,
        #[arg(long, default_value = "riemann")]
        variant: String,
        #[arg(long, default_value_t = 256)]
        samples: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long, default_value_t = 10.0)]
        clip_radius: f64,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Nested latitudinal tori with their fiber threads.
    Tori {
        #[arg(long, value_name = "R1,R2,...")]
        latitudes: String,
        #[arg(long, default_value_t = 12)]
        fibers_per_torus: usize,
        #[arg(long, default_value_t = 128)]
        samples: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Elliptic and hyperbolic Apollonian circles of two points.
    Apollonius {
        #[arg(long, value_name = "X,Y", allow_hyphen_values = true)]
        p: String,
        #[arg(long, value_name = "X,Y", allow_hyphen_values = true)]
        p2: String,
        #[arg(long, default_value_t = 6)]
        count: usize,
        #[arg(long, value_enum)]
        format: Format,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Hypercube edges on S^3, projected.
    Hypercube {
        #[arg(long, default_value_t = 32)]
        samples_per_edge: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Roots of a polynomial inside |z| < R, by winding number.
    Winding {
        /// Real coefficients in ascending degree.
        #[arg(long, value_name = "C0,C1,...", allow_hyphen_values = true)]
        poly: String,
        #[arg(long)]
        radius: f64,
    },
    /// Run invariant suites and print a pass/fail table.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
    },
}

enum Failure {
    Usage(String),
    Verification,
}

impl From<GeomError> for Failure {
    fn from(e: GeomError) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn parse_list(s: &str) -> Result<Vec<f64>, Failure> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| Failure::Usage(format!("not a finite number: {t:?}")))
        })
        .collect()
}

fn parse_fixed<const N: usize>(s: &str) -> Result<[f64; N], Failure> {
    let v = parse_list(s)?;
    v.try_into().map_err(|v: Vec<f64>| Failure::Usage(format!("expected {N} comma-separated numbers, got {}", v.len())))
}

fn emit(bytes: &[u8], output: Option<PathBuf>) -> Result<(), Failure> {
    match output {
        Some(path) => std::fs::write(&path, bytes).map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        None => std::io::stdout().write_all(bytes).map_err(|e| Failure::Usage(e.to_string())),
    }
}

fn export(doc: &SceneDocument, format: Format, opts: &ExportOptions) -> Result<Vec<u8>, Failure> {
    Ok(match format {
        Format::Json => export_json(doc, opts)?,
        Format::Obj => export_obj(doc, opts)?,
        Format::Svg => {
            if !doc.curves.is_empty() || !doc.meshes.is_empty() {
                return Err(Failure::Usage("svg export holds planar content only; use json or obj".into()));
            }
            export_svg(doc, opts)?
        }
    })
}

fn run(cli: Cli) -> Result<(), Failure> {
    let opts = ExportOptions::default();
    match cli.command {
        Command::Fiber {
            base,
            variant,
            samples,
            format,
            clip_radius,
            output,
        } => {
            let b = S2Point::normalize(parse_fixed::<3>(&base)?)?;
            let variant: HopfVariant = variant.parse()?;
            if !(clip_radius > 0.0) {
                return Err(Failure::Usage("clip radius must be positive".into()));
            }
            let doc = fiber_scene(&HopfConvention::new(variant), &[b], samples, clip_radius)?;
            emit(&export(&doc, format, &ExportOptions { clip_radius })?, output)
        }
        Command::Tori {
            latitudes,
            fibers_per_torus,
            samples,
            format,
            output,
        } => {
            let doc = tori_scene(&parse_list(&latitudes)?, fibers_per_torus, samples)?;
            emit(&export(&doc, format, &opts)?, output)
        }
        Command::Apollonius { p, p2, count, format, output } => {
            let [x, y] = parse_fixed::<2>(&p)?;
            let [x2, y2] = parse_fixed::<2>(&p2)?;
            let doc = apollonius_scene(Complex::new(x, y), Complex::new(x2, y2), count)?;
            emit(&export(&doc, format, &opts)?, output)
        }
        Command::Hypercube {
            samples_per_edge,
            format,
            output,
        } => {
            if samples_per_edge < 2 {
                return Err(Failure::Usage("need at least 2 samples per edge".into()));
            }
            emit(&export(&hypercube_document(samples_per_edge), format, &opts)?, output)
        }
        Command::Winding { poly, radius } => {
            if !(radius > 0.0) || !radius.is_finite() {
                return Err(Failure::Usage("radius must be positive".into()));
            }
            let p = Polynomial::from_real(&parse_list(&poly)?)?;
            let n = count_roots_by_winding(&p, radius)?;
            println!("{n}");
            Ok(())
        }
        Command::Verify { suite, seed } => {
            let suite: Suite = suite.parse()?;
            let checks = verify::run(suite, seed);
            print!("{}", verify::report(&checks));
            if checks.iter().all(|c| c.passed) {
                Ok(())
            } else {
                Err(Failure::Verification)
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
