use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use crate::constraints::{FoldSolution, IncidenceKind};
use crate::envelopes::constraint_family;
use crate::error::{Error, Result};
use crate::fold_ops::{enumerate_operations, solve_operation, OperationSpec, Provenance, SolveOptions};
use crate::numerics::{grid_oracle, OracleOptions};
use crate::{Constraint, Plane3, Scalar};

use super::mesh::{envelope_mesh, to_obj, MeshParams, MeshSummary};
use super::result::{Outcome, PlaneRecord, ResultDocument, VerifyEntry, VerifyReport};
use super::scene::{PlaneSpec, Scene};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolveSettings {
    pub tol: f64,
    pub seed_lattice: usize,
    pub force_generic: bool,
}

impl Default for SolveSettings {
    fn default() -> Self {
        Self { tol: f64::incidence_tol(), seed_lattice: 9, force_generic: false }
    }
}

/// The scene's operation, or `spec` checked against the scene's constraints.
fn operation(scene: &Scene, spec: Option<&str>) -> Result<OperationSpec> {
    let Some(spec) = spec else {
        return Ok(scene.operation());
    };
    let spec: OperationSpec = spec.parse()?;
    spec.validate()?;
    if spec != scene.operation() {
        return Err(Error::InvalidInput(format!(
            "the scene's constraints form {}, not {spec}",
            scene.operation()
        )));
    }
    Ok(spec)
}

/// Records planes whose residuals are all below `tol`. Anything else is
/// dropped with a note, so every recorded plane re-verifies.
fn records(planes: &[Plane3], cs: &[Constraint], tol: f64, notes: &mut Vec<String>) -> Vec<PlaneRecord> {
    let mut out = Vec::new();
    for p in planes {
        let r = PlaneRecord::new(p, cs);
        if r.max_residual() < tol {
            out.push(r);
        } else {
            notes.push(format!("dropped a plane with residual {:.3e} ≥ tolerance", r.max_residual()));
        }
    }
    out
}

fn finite_outcome(planes: Vec<PlaneRecord>) -> Outcome {
    if planes.is_empty() {
        Outcome::NoSolution
    } else {
        Outcome::Finite { planes }
    }
}

/// Solves the scene's operation (or `spec`, which must match it).
pub fn cmd_solve(scene: &Scene, spec: Option<&str>, settings: &SolveSettings) -> Result<ResultDocument> {
    let spec = operation(scene, spec)?;
    let opts = SolveOptions {
        tol: settings.tol,
        seed_lattice: settings.seed_lattice,
        window: None,
        force_generic: settings.force_generic,
    };
    let cs = scene.constraints();
    let mut notes = Vec::new();
    let (outcome, provenance, mut incomplete) = match solve_operation(&spec, cs, &opts) {
        Ok(solved) => {
            let outcome = match &solved.solution {
                FoldSolution::Finite(planes) => finite_outcome(records(planes, cs, settings.tol, &mut notes)),
                FoldSolution::Infinite(f) => Outcome::from_family(f),
                FoldSolution::NoSolution => Outcome::NoSolution,
            };
            (outcome, solved.provenance, solved.possibly_incomplete)
        }
        Err(Error::IllPosed(message)) => (Outcome::IllPosed { message }, Provenance::Dedicated, false),
        Err(e) => return Err(e),
    };
    incomplete |= !notes.is_empty();
    Ok(ResultDocument {
        operation: spec.to_string(),
        tolerance: settings.tol,
        provenance,
        possibly_incomplete: incomplete,
        resolution: None,
        outcome,
        notes,
    })
}

/// Runs the grid oracle on the scene's operation. Low resolutions can
/// merge or miss nearby folds, which the document notes.
pub fn cmd_oracle(scene: &Scene, spec: Option<&str>, resolution: usize, tol: f64) -> Result<ResultDocument> {
    let spec = operation(scene, spec)?;
    let cs = scene.constraints();
    let opts = OracleOptions { tol, ..OracleOptions::with_resolution(resolution) };
    let result = grid_oracle(cs, &opts);
    let mut notes = vec![format!(
        "grid search with {resolution} steps per angle; folds closer than about {:.3} rad can merge or be missed",
        std::f64::consts::PI / resolution.max(1) as f64
    )];
    let planes: Vec<Plane3> = result.clusters.iter().map(|c| c.plane).collect();
    let outcome = finite_outcome(records(&planes, cs, tol, &mut notes));
    Ok(ResultDocument {
        operation: spec.to_string(),
        tolerance: tol,
        provenance: Provenance::Oracle,
        possibly_incomplete: true,
        resolution: Some(resolution),
        outcome,
        notes,
    })
}

/// Parses a candidate plane: either four comma- or space-separated numbers
/// `nx, ny, nz, offset` meaning `n·x = offset`, or a JSON plane object as in
/// scene files.
pub fn parse_plane(text: &str) -> Result<Plane3> {
    let text = text.trim();
    if text.starts_with('{') {
        let spec: PlaneSpec = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            field: "plane".into(),
            message: e.to_string(),
        })?;
        return spec.to_plane();
    }
    let nums: Vec<f64> = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::Parse { line: 1, column: 1, field: "plane".into(), message: e.to_string() })?;
    match nums[..] {
        [x, y, z, d] => Plane3::new(crate::Vec3::new(x, y, z), d),
        _ => Err(Error::Parse {
            line: 1,
            column: 1,
            field: "plane".into(),
            message: format!("expected 4 numbers nx, ny, nz, offset; got {}", nums.len()),
        }),
    }
}

/// Residual of every scene constraint at `plane`.
pub fn cmd_verify(scene: &Scene, plane: &Plane3, tol: f64) -> VerifyReport {
    VerifyReport {
        tolerance: tol,
        entries: scene
            .constraints()
            .iter()
            .map(|c| {
                let residual = c.residual(plane);
                VerifyEntry { kind: c.kind(), residual, pass: residual < tol }
            })
            .collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ListingEntry {
    pub operation: String,
    pub class: String,
    /// Codimension of each constraint, repeated by multiplicity.
    pub codimensions: Vec<u8>,
    pub total: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RejectedEntry {
    pub operation: String,
    pub reason: String,
}

/// Every elementary operation with its codimension breakdown, and the
/// rejected combinations with reasons.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Listing {
    pub valid: Vec<ListingEntry>,
    pub rejected: Vec<RejectedEntry>,
}

impl Listing {
    /// One line per valid operation, then one per rejected combination.
    pub fn render_text(&self) -> String {
        let mut s = String::new();
        for e in &self.valid {
            let parts: Vec<String> = e.codimensions.iter().map(u8::to_string).collect();
            let _ = writeln!(s, "{:<12} codimension {} = {}", e.operation, parts.join("+"), e.total);
        }
        for r in &self.rejected {
            let _ = writeln!(s, "rejected {}: {}", r.operation, r.reason);
        }
        s
    }

    /// JSON array of the valid operations.
    pub fn render_json(&self) -> String {
        serde_json::to_string_pretty(&self.valid).expect("listing serializes")
    }
}

pub fn cmd_enumerate() -> Listing {
    let e = enumerate_operations();
    let codims = |spec: &OperationSpec| spec.kinds().into_iter().map(IncidenceKind::codimension).collect();
    Listing {
        valid: e
            .valid
            .iter()
            .map(|spec| ListingEntry {
                operation: spec.to_string(),
                class: spec.class().map(|c| c.label().to_string()).unwrap_or_default(),
                codimensions: codims(spec),
                total: spec.total_codimension(),
            })
            .collect(),
        rejected: e
            .rejected
            .iter()
            .map(|(spec, why)| RejectedEntry { operation: spec.to_string(), reason: why.to_string() })
            .collect(),
    }
}

/// OBJ text for the envelope of constraint `index` (0-based) of the scene.
pub fn envelope_obj(scene: &Scene, index: usize, params: &MeshParams) -> Result<(String, MeshSummary)> {
    let c = scene.constraints().get(index).ok_or_else(|| {
        Error::InvalidInput(format!(
            "constraint {} requested, the scene has {}",
            index + 1,
            scene.constraints().len()
        ))
    })?;
    let fam = constraint_family(c)?;
    let (objects, summary) = envelope_mesh(&fam, params)?;
    let comment = format!("{} envelope of constraint {} ({})", fam.shape().name(), index + 1, c.kind());
    Ok((to_obj(&comment, &objects), summary))
}

/// Writes the envelope mesh of constraint `index` (0-based) to `out`.
pub fn cmd_envelope(scene: &Scene, index: usize, params: &MeshParams, out: &Path) -> Result<MeshSummary> {
    let (text, summary) = envelope_obj(scene, index, params)?;
    std::fs::write(out, text).map_err(|e| Error::Io(format!("{}: {e}", out.display())))?;
    Ok(summary)
}
