use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use dualruled::io::commands::{self, to_json, write_file};
use dualruled::io::{catalog, AngleSpec, MeshOptions, OffsetMode, RunOptions, SurfaceConfig};
use dualruled::{GeomError, QuadratureSpec, Result};

/// Ruled surfaces as curves on the dual unit sphere: invariants, Mannheim
/// offsets and their verification.
///
/// Angles are in radians; offset distances (theta-star) are in model units.
/// Exit status: 0 success, 1 an asserted relation failed, 2 input error,
/// 3 geometric degeneracy.
#[derive(Parser, Debug)]
#[command(name = "dualruled", version)]
struct Cli {
    /// Samples per period for quadrature and sampled checks.
    #[arg(long, global = true, default_value_t = 256)]
    samples: usize,

    /// Tolerance for developability and relation checks.
    #[arg(long, global = true, default_value_t = 1e-6)]
    tol: f64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Striction line, drall, moving frame and integral invariants.
    Invariants {
        #[command(flatten)]
        surface: SurfaceArgs,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build an offset; writes offset.obj, offset_lines.csv and report.json.
    Offset {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[command(flatten)]
        angle: AngleArgs,
        #[command(flatten)]
        mesh: MeshArgs,
        /// Output directory.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Run every applicable relation check on a surface and its offset.
    Verify {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[command(flatten)]
        angle: AngleArgs,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export the surface as a Wavefront OBJ mesh.
    Mesh {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[command(flatten)]
        mesh: MeshArgs,
        #[arg(long, default_value = "surface.obj")]
        out: PathBuf,
    },
    /// Sample the dual curve q + eps q* as CSV.
    Dualcurve {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the catalog surfaces and their parameters.
    Catalog,
}

#[derive(Args, Debug)]
struct SurfaceArgs {
    /// Configuration file ("-" reads stdin).
    #[arg(required_unless_present = "catalog", conflicts_with = "catalog")]
    config: Option<PathBuf>,

    /// Use a catalog surface with default parameters instead of a file.
    #[arg(long)]
    catalog: Option<String>,
}

#[derive(Args, Debug)]
struct AngleArgs {
    /// Offset angle theta: a constant or an expression in t.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    theta: String,

    /// Offset distance theta-star: a constant or an expression in t.
    #[arg(long = "theta-star", default_value = "0", allow_hyphen_values = true)]
    theta_star: String,

    /// constant: use the angle as given; mannheim: start there and follow
    /// the Mannheim equation.
    #[arg(long, default_value = "constant")]
    mode: String,
}

#[derive(Args, Debug)]
struct MeshArgs {
    #[arg(long, default_value_t = 64)]
    t_samples: usize,
    #[arg(long, default_value_t = 16)]
    v_samples: usize,
    #[arg(long, default_value_t = -2.0, allow_hyphen_values = true)]
    v_min: f64,
    #[arg(long, default_value_t = 2.0, allow_hyphen_values = true)]
    v_max: f64,
    /// Leave out the striction polyline.
    #[arg(long)]
    no_striction: bool,
}

impl MeshArgs {
    fn options(&self) -> MeshOptions {
        MeshOptions {
            t_samples: self.t_samples,
            v_samples: self.v_samples,
            v_min: self.v_min,
            v_max: self.v_max,
            striction: !self.no_striction,
        }
    }
}

impl SurfaceArgs {
    fn config(&self) -> Result<SurfaceConfig> {
        if let Some(name) = &self.catalog {
            return SurfaceConfig::parse(&format!("catalog = {name}"));
        }
        let path = self
            .config
            .as_deref()
            .expect("clap enforces a config source");
        let text = if path == Path::new("-") {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            s
        } else {
            std::fs::read_to_string(path)
                .map_err(|e| GeomError::Io(format!("{}: {e}", path.display())))?
        };
        SurfaceConfig::parse(&text)
    }
}

impl AngleArgs {
    fn spec(&self) -> Result<AngleSpec> {
        AngleSpec::parse(
            &self.theta,
            &self.theta_star,
            self.mode.parse::<OffsetMode>()?,
        )
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => write_file(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Runs the command and returns whether every asserted check passed.
fn run(cli: &Cli) -> Result<bool> {
    if !(cli.tol.is_finite() && cli.tol > 0.0) {
        return Err(GeomError::Config(format!(
            "--tol must be positive, got {}",
            cli.tol
        )));
    }
    let opts = RunOptions {
        spec: QuadratureSpec::with_samples(cli.samples)?,
        tol: cli.tol,
    };
    match &cli.command {
        Command::Invariants { surface, out } => {
            let s = surface.config()?.build()?;
            emit(out.as_deref(), &to_json(&commands::invariants(&s, &opts)?))?;
        }
        Command::Offset {
            surface,
            angle,
            mesh,
            out,
        } => {
            let s = surface.config()?.build()?;
            let report = commands::offset(&s, &angle.spec()?, &opts, &mesh.options(), out)?;
            print!("{}", to_json(&report));
        }
        Command::Verify {
            surface,
            angle,
            out,
        } => {
            let report = commands::verify(&surface.config()?, &angle.spec()?, &opts)?;
            emit(out.as_deref(), &to_json(&report))?;
            for e in report.entries.iter().filter(|e| e.failed()) {
                eprintln!(
                    "FAIL {}: |{} - {}| = {:e} >= {:e}",
                    e.id, e.lhs, e.rhs, e.residual, e.tolerance
                );
            }
            return Ok(report.passed());
        }
        Command::Mesh { surface, mesh, out } => {
            let s = surface.config()?.build()?;
            let stats = commands::mesh(&s, &mesh.options(), out)?;
            eprintln!(
                "wrote {} ({} vertices, {} quads)",
                out.display(),
                stats.vertices,
                stats.quads
            );
        }
        Command::Dualcurve { surface, out } => {
            let s = surface.config()?.build()?;
            emit(out.as_deref(), &commands::dual_curve_csv(&s, cli.samples)?)?;
        }
        Command::Catalog => {
            for e in catalog::CATALOG {
                let params: Vec<String> =
                    e.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
                println!("{:<28}{}", e.name, e.summary);
                if !e.aliases.is_empty() {
                    println!("{:<28}aliases: {}", "", e.aliases.join(", "));
                }
                if !params.is_empty() {
                    println!("{:<28}params: {}", "", params.join(" "));
                }
            }
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error[{}]: {e}", e.code());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
