use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use fold3d::io::{
    cmd_enumerate, cmd_envelope, cmd_oracle, cmd_solve, cmd_verify, load_scene, parse_plane, MeshParams,
    ResultDocument, SolveSettings,
};
use fold3d::{Error, Scalar};

/// Fold planes in 3D space.
///
/// Exit codes: 0 finite solution (or success), 1 error, 2 no solution or a
/// failed verification, 3 infinite family or ill-posed instance.
#[derive(Parser)]
#[command(name = "fold3d", version)]
struct Cli {
    /// Largest accepted constraint residual [default: 1e-9, or 1e-6 for
    /// the oracle].
    #[arg(long, global = true, env = "FOLD3D_TOL")]
    tol: Option<f64>,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the elementary fold operations and the rejected combinations.
    Enumerate,
    /// Solve the operation formed by a scene's constraints.
    Solve {
        scene: PathBuf,
        /// Operation such as `I5+I6`; must match the scene's constraints.
        #[arg(long)]
        spec: Option<String>,
        /// Starts per axis of the generic solver.
        #[arg(long, default_value_t = 9)]
        seed_lattice: usize,
        /// Use the generic solver even when a dedicated one exists.
        #[arg(long)]
        generic: bool,
        /// Also write the JSON result document here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count folds by brute-force grid search.
    Oracle {
        scene: PathBuf,
        #[arg(long)]
        spec: Option<String>,
        /// Grid steps per angular axis.
        #[arg(long, default_value_t = 48)]
        resolution: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a candidate plane against every constraint of a scene.
    Verify {
        scene: PathBuf,
        /// `nx,ny,nz,offset` for n·x = offset, or a JSON plane object.
        #[arg(long, allow_hyphen_values = true)]
        plane: String,
    },
    /// Export the envelope of an I3, I5, I6 or I7 constraint as OBJ.
    Envelope {
        scene: PathBuf,
        /// 1-based index of the constraint.
        #[arg(long, default_value_t = 1)]
        constraint: usize,
        /// Number of tangent planes to add as quads.
        #[arg(long, default_value_t = 0)]
        planes: usize,
        /// Samples per parameter axis.
        #[arg(long, default_value_t = 24)]
        grid: usize,
        /// Half-width of the sampled parameter window.
        #[arg(long)]
        extent: Option<f64>,
        #[arg(long)]
        out: PathBuf,
    },
}

fn emit(doc: &ResultDocument, json: bool, out: Option<&PathBuf>) -> Result<i32, Error> {
    if json {
        println!("{}", doc.to_json());
    } else {
        print!("{}", doc.render_text());
    }
    if let Some(path) = out {
        std::fs::write(path, doc.to_json() + "\n").map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(doc.exit_code())
}

fn run(cli: Cli) -> Result<i32, Error> {
    match cli.command {
        Command::Enumerate => {
            let listing = cmd_enumerate();
            if cli.json {
                println!("{}", listing.render_json());
            } else {
                print!("{}", listing.render_text());
            }
            Ok(0)
        }
        Command::Solve { scene, spec, seed_lattice, generic, out } => {
            let scene = load_scene(&scene)?;
            let settings = SolveSettings {
                tol: cli.tol.unwrap_or(f64::incidence_tol()),
                seed_lattice,
                force_generic: generic,
            };
            let doc = cmd_solve(&scene, spec.as_deref(), &settings)?;
            emit(&doc, cli.json, out.as_ref())
        }
        Command::Oracle { scene, spec, resolution, out } => {
            let scene = load_scene(&scene)?;
            let doc = cmd_oracle(&scene, spec.as_deref(), resolution, cli.tol.unwrap_or(1e-6))?;
            emit(&doc, cli.json, out.as_ref())
        }
        Command::Verify { scene, plane } => {
            let scene = load_scene(&scene)?;
            let plane = parse_plane(&plane)?;
            let report = cmd_verify(&scene, &plane, cli.tol.unwrap_or(f64::incidence_tol()));
            if cli.json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.render_text());
            }
            Ok(report.exit_code())
        }
        Command::Envelope { scene, constraint, planes, grid, extent, out } => {
            let scene = load_scene(&scene)?;
            let index = constraint
                .checked_sub(1)
                .ok_or_else(|| Error::InvalidInput("constraint indices start at 1".into()))?;
            let params = MeshParams { grid, extent, tangent_planes: planes, ..MeshParams::default() };
            let summary = cmd_envelope(&scene, index, &params, &out)?;
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&summary).expect("summary serializes"));
            } else {
                println!(
                    "wrote {} objects, {} vertices, {} faces to {} (max surface error {:.2e})",
                    summary.objects,
                    summary.vertices,
                    summary.faces,
                    out.display(),
                    summary.max_surface_error
                );
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
