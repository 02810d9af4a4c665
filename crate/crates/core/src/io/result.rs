use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::constraints::{FamilyGenerator, SolutionFamily};
use crate::error::Result;
use crate::fold_ops::Provenance;
use crate::{Constraint, Plane3, Vec3};

/// A reported fold plane `normal·x = offset` with the residual of each
/// constraint, in scene order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlaneRecord {
    pub normal: [f64; 3],
    pub offset: f64,
    pub residuals: Vec<f64>,
}

impl PlaneRecord {
    pub fn new(plane: &Plane3, constraints: &[Constraint]) -> Self {
        Self {
            normal: plane.normal().to_array(),
            offset: plane.offset(),
            residuals: constraints.iter().map(|c| c.residual(plane)).collect(),
        }
    }

    pub fn plane(&self) -> Result<Plane3> {
        Plane3::new(Vec3::from_array(self.normal), self.offset)
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }
}

/// A free parameter; `None` bounds are infinite.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParameterRecord {
    pub name: String,
    pub lower: Option<f64>,
    pub upper: Option<f64>,
    pub periodic: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Outcome {
    Finite {
        planes: Vec<PlaneRecord>,
    },
    Family {
        dimension: usize,
        parameters: Vec<ParameterRecord>,
        generator: String,
        /// Scene-coordinate coefficients of the envelope quadric, when the
        /// family has one.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        envelope: Option<[f64; 10]>,
    },
    NoSolution,
    IllPosed {
        message: String,
    },
}

impl Outcome {
    pub fn from_family(f: &SolutionFamily<f64>) -> Self {
        let fmt_v = |v: Vec3| format!("({}, {}, {})", v.x, v.y, v.z);
        let (generator, envelope) = match &f.generator {
            FamilyGenerator::ThroughPoint(p) => (format!("planes through {}", fmt_v(*p)), None),
            FamilyGenerator::PerpendicularToLine(m) => (
                format!("planes perpendicular to the line through {} along {}", fmt_v(m.base()), fmt_v(m.dir())),
                None,
            ),
            FamilyGenerator::ContainingLine(m) => (
                format!("planes containing the line through {} along {}", fmt_v(m.base()), fmt_v(m.dir())),
                None,
            ),
            FamilyGenerator::PerpendicularToPlane(pi) => (
                format!("planes perpendicular to {}·x = {}", fmt_v(pi.normal()), pi.offset()),
                None,
            ),
            FamilyGenerator::Envelope(fam) => (
                format!("tangent planes of the {} envelope", fam.shape().name()),
                fam.envelope().ok().map(|q| q.in_scene_coordinates()),
            ),
        };
        let bound = |x: f64| x.is_finite().then_some(x);
        Outcome::Family {
            dimension: f.dimension,
            parameters: f
                .parameters
                .iter()
                .map(|p| ParameterRecord {
                    name: p.name.to_string(),
                    lower: bound(p.lower),
                    upper: bound(p.upper),
                    periodic: p.periodic,
                })
                .collect(),
            generator,
            envelope,
        }
    }

    /// Process exit code: 0 finite, 2 no solution, 3 family or ill-posed.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Finite { .. } => 0,
            Self::NoSolution => 2,
            Self::Family { .. } | Self::IllPosed { .. } => 3,
        }
    }
}

/// The outcome of one solver run on a scene.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub operation: String,
    /// Largest residual a reported plane may have.
    pub tolerance: f64,
    pub provenance: Provenance,
    /// Set when the solver cannot rule out missed folds.
    pub possibly_incomplete: bool,
    /// Grid resolution, for oracle runs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resolution: Option<usize>,
    pub outcome: Outcome,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl ResultDocument {
    pub fn exit_code(&self) -> i32 {
        self.outcome.exit_code()
    }

    /// Reported planes; empty unless the outcome is finite.
    pub fn planes(&self) -> Result<Vec<Plane3>> {
        match &self.outcome {
            Outcome::Finite { planes } => planes.iter().map(PlaneRecord::plane).collect(),
            _ => Ok(Vec::new()),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("result document serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| crate::Error::Parse {
            line: e.line(),
            column: e.column(),
            field: String::new(),
            message: e.to_string(),
        })
    }

    pub fn render_text(&self) -> String {
        let mut s = String::new();
        let incomplete = if self.possibly_incomplete { ", possibly incomplete" } else { "" };
        let _ = writeln!(s, "operation {} ({} solver{incomplete})", self.operation, self.provenance.as_str());
        if let Some(r) = self.resolution {
            let _ = writeln!(s, "grid resolution {r}");
        }
        match &self.outcome {
            Outcome::Finite { planes } => {
                let _ = writeln!(s, "{} fold plane{}", planes.len(), if planes.len() == 1 { "" } else { "s" });
                for (i, p) in planes.iter().enumerate() {
                    let [x, y, z] = p.normal;
                    let _ = writeln!(
                        s,
                        "  {}: {x:.12} x {:+.12} y {:+.12} z = {:.12}   max residual {:.2e}",
                        i + 1,
                        y,
                        z,
                        p.offset,
                        p.max_residual()
                    );
                }
            }
            Outcome::Family { dimension, parameters, generator, .. } => {
                let names: Vec<&str> = parameters.iter().map(|p| p.name.as_str()).collect();
                let _ = writeln!(s, "{dimension}-parameter family ({}): {generator}", names.join(", "));
            }
            Outcome::NoSolution => {
                let _ = writeln!(s, "no fold plane");
            }
            Outcome::IllPosed { message } => {
                let _ = writeln!(s, "ill-posed: {message}");
            }
        }
        for n in &self.notes {
            let _ = writeln!(s, "note: {n}");
        }
        s
    }
}

/// Per-constraint residuals of one candidate plane.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub tolerance: f64,
    pub entries: Vec<VerifyEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyEntry {
    pub kind: crate::constraints::IncidenceKind,
    pub residual: f64,
    pub pass: bool,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    /// 0 when every constraint passes, 2 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.all_pass() {
            0
        } else {
            2
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render_text(&self) -> String {
        let mut s = String::new();
        for (i, e) in self.entries.iter().enumerate() {
            let verdict = if e.pass { "pass" } else { "FAIL" };
            let _ = writeln!(s, "constraint {} ({}): residual {:.3e} {verdict}", i + 1, e.kind, e.residual);
        }
        let _ = writeln!(
            s,
            "{} at tolerance {:e}",
            if self.all_pass() { "all constraints pass" } else { "some constraints fail" },
            self.tolerance
        );
        s
    }
}
