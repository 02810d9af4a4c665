use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;
use std::path::Path;

use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::{Deserialize, Serialize};

use crate::constraints::IncidenceKind;
use crate::error::{Error, Result};
use crate::fold_ops::OperationSpec;
use crate::{Constraint, Line3, Plane3, Point3, Vec3};

/// A line given by a point on it and a direction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LineSpec {
    pub point: [f64; 3],
    pub dir: [f64; 3],
}

/// A plane given either as `normal·x = offset` or by the coefficients of
/// `a x + b y + c z + d = 0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPlane", into = "RawPlane")]
pub enum PlaneSpec {
    Normal { normal: [f64; 3], offset: f64 },
    Coeffs([f64; 4]),
}

#[derive(Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPlane {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    normal: Option<[f64; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    offset: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    coeffs: Option<[f64; 4]>,
}

impl TryFrom<RawPlane> for PlaneSpec {
    type Error = String;

    fn try_from(r: RawPlane) -> std::result::Result<Self, String> {
        match r {
            RawPlane { normal: Some(normal), offset: Some(offset), coeffs: None } => {
                Ok(Self::Normal { normal, offset })
            }
            RawPlane { normal: None, offset: None, coeffs: Some(c) } => Ok(Self::Coeffs(c)),
            _ => Err("a plane needs either `normal` and `offset`, or `coeffs`".into()),
        }
    }
}

impl From<PlaneSpec> for RawPlane {
    fn from(p: PlaneSpec) -> Self {
        match p {
            PlaneSpec::Normal { normal, offset } => {
                RawPlane { normal: Some(normal), offset: Some(offset), coeffs: None }
            }
            PlaneSpec::Coeffs(c) => RawPlane { normal: None, offset: None, coeffs: Some(c) },
        }
    }
}

impl PlaneSpec {
    pub fn to_plane(&self) -> Result<Plane3> {
        match *self {
            Self::Normal { normal, offset } => Plane3::new(Vec3::from_array(normal), offset),
            Self::Coeffs([a, b, c, d]) => Plane3::from_coeffs(a, b, c, d),
        }
    }

    pub fn from_plane(p: &Plane3) -> Self {
        Self::Normal { normal: p.normal().to_array(), offset: p.offset() }
    }
}

/// One entry of the `constraints` array: a kind and its named arguments.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstraintSpec {
    #[serde(rename = "type")]
    pub kind: IncidenceKind,
    pub args: BTreeMap<String, String>,
}

/// The scene file as written, before validation.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneData {
    #[serde(default, deserialize_with = "unique_names", skip_serializing_if = "BTreeMap::is_empty")]
    pub points: BTreeMap<String, [f64; 3]>,
    #[serde(default, deserialize_with = "unique_names", skip_serializing_if = "BTreeMap::is_empty")]
    pub lines: BTreeMap<String, LineSpec>,
    #[serde(default, deserialize_with = "unique_names", skip_serializing_if = "BTreeMap::is_empty")]
    pub planes: BTreeMap<String, PlaneSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub constraints: Vec<ConstraintSpec>,
}

/// Like the default map deserializer, but a repeated key is an error.
fn unique_names<'de, D, V>(d: D) -> std::result::Result<BTreeMap<String, V>, D::Error>
where
    D: Deserializer<'de>,
    V: Deserialize<'de>,
{
    struct Unique<V>(PhantomData<V>);

    impl<'de, V: Deserialize<'de>> Visitor<'de> for Unique<V> {
        type Value = BTreeMap<String, V>;

        fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            f.write_str("a map from names to objects")
        }

        fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> std::result::Result<Self::Value, A::Error> {
            let mut out = BTreeMap::new();
            while let Some((name, value)) = map.next_entry::<String, V>()? {
                if out.insert(name.clone(), value).is_some() {
                    return Err(de::Error::custom(format!("duplicate name `{name}`")));
                }
            }
            Ok(out)
        }
    }

    d.deserialize_map(Unique(PhantomData))
}

/// Argument names of each kind, in constructor order.
fn signature(kind: IncidenceKind) -> &'static [&'static str] {
    use IncidenceKind::*;
    match kind {
        I1 => &["point", "target"],
        I2 | I3 => &["line", "target"],
        I4 => &["plane", "target"],
        I5 => &["point", "line"],
        I6 => &["point", "plane"],
        I7 => &["line", "plane"],
        I8 => &["point"],
        I9 | I10 => &["line"],
        I11 | I12 => &["plane"],
    }
}

/// A validated scene: every name is unique, every reference resolves and
/// every constraint satisfies its precondition.
#[derive(Clone, Debug, PartialEq)]
pub struct Scene {
    data: SceneData,
    points: BTreeMap<String, Point3>,
    lines: BTreeMap<String, Line3>,
    planes: BTreeMap<String, Plane3>,
    constraints: Vec<Constraint>,
}

impl Scene {
    pub fn from_data(data: SceneData) -> Result<Self> {
        let invalid = |what: String| Error::Validation(what);
        let mut seen: BTreeMap<&str, &str> = BTreeMap::new();
        let names = data.points.keys().map(|n| (n, "point"))
            .chain(data.lines.keys().map(|n| (n, "line")))
            .chain(data.planes.keys().map(|n| (n, "plane")));
        for (name, what) in names {
            if let Some(first) = seen.insert(name, what) {
                return Err(invalid(format!("name `{name}` is used by a {first} and a {what}")));
            }
        }

        let mut points = BTreeMap::new();
        for (name, p) in &data.points {
            let p = Vec3::from_array(*p);
            if !p.is_finite() {
                return Err(invalid(format!("point `{name}` has non-finite coordinates")));
            }
            points.insert(name.clone(), p);
        }
        let mut lines = BTreeMap::new();
        for (name, l) in &data.lines {
            let line = Line3::new(Vec3::from_array(l.point), Vec3::from_array(l.dir))
                .map_err(|e| invalid(format!("line `{name}`: {e}")))?;
            lines.insert(name.clone(), line);
        }
        let mut planes = BTreeMap::new();
        for (name, p) in &data.planes {
            let plane = p.to_plane().map_err(|e| invalid(format!("plane `{name}`: {e}")))?;
            planes.insert(name.clone(), plane);
        }

        let mut scene = Self { data, points, lines, planes, constraints: Vec::new() };
        let constraints = scene
            .data
            .constraints
            .iter()
            .enumerate()
            .map(|(i, c)| scene.build(i + 1, c))
            .collect::<Result<Vec<_>>>()?;
        scene.constraints = constraints;
        Ok(scene)
    }

    fn build(&self, number: usize, spec: &ConstraintSpec) -> Result<Constraint> {
        let kind = spec.kind;
        let sig = signature(kind);
        let here = |msg: String| Error::Validation(format!("constraint {number} ({kind}): {msg}"));
        for key in spec.args.keys() {
            if !sig.contains(&key.as_str()) {
                return Err(here(format!("unexpected argument `{key}`; {kind} takes {}", sig.join(", "))));
            }
        }
        let name = |arg: &str| {
            spec.args.get(arg).ok_or_else(|| here(format!("missing argument `{arg}`")))
        };
        let point = |arg: &str| -> Result<Point3> {
            let n = name(arg)?;
            self.points.get(n).copied().ok_or_else(|| here(format!("`{arg}` refers to unknown point `{n}`")))
        };
        let line = |arg: &str| -> Result<Line3> {
            let n = name(arg)?;
            self.lines.get(n).copied().ok_or_else(|| here(format!("`{arg}` refers to unknown line `{n}`")))
        };
        let plane = |arg: &str| -> Result<Plane3> {
            let n = name(arg)?;
            self.planes.get(n).copied().ok_or_else(|| here(format!("`{arg}` refers to unknown plane `{n}`")))
        };

        use IncidenceKind::*;
        let built = match kind {
            I1 => Constraint::point_to_point(point("point")?, point("target")?),
            I2 => Constraint::line_to_line(line("line")?, line("target")?),
            I3 => Constraint::line_meets_line(line("line")?, line("target")?),
            I4 => Constraint::plane_to_plane(plane("plane")?, plane("target")?),
            I5 => Constraint::point_onto_line(point("point")?, line("line")?),
            I6 => Constraint::point_onto_plane(point("point")?, plane("plane")?),
            I7 => Constraint::line_into_plane(line("line")?, plane("plane")?),
            I8 => Ok(Constraint::point_fixed(point("point")?)),
            I9 => Ok(Constraint::line_reversed(line("line")?)),
            I10 => Ok(Constraint::line_fixed(line("line")?)),
            I11 => Ok(Constraint::plane_reversed(plane("plane")?)),
            I12 => Ok(Constraint::plane_fixed(plane("plane")?)),
        };
        built.map_err(|e| match e {
            Error::InvalidConstraint(msg) => here(format!("{msg} [incidence table, row {kind}]")),
            other => here(other.to_string()),
        })
    }

    /// Parses and validates a scene from JSON text.
    pub fn parse(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let data: SceneData = serde_path_to_error::deserialize(de).map_err(|e| {
            let field = e.path().to_string();
            let inner = e.into_inner();
            let (line, column) = (inner.line(), inner.column());
            let full = inner.to_string();
            let message = full.strip_suffix(&format!(" at line {line} column {column}")).unwrap_or(&full).to_string();
            Error::Parse { line, column, field, message }
        })?;
        Self::from_data(data)
    }

    /// Pretty-printed JSON. Numbers use the shortest representation that
    /// parses back to the same `f64`.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.data).expect("scene data serializes")
    }

    pub fn data(&self) -> &SceneData {
        &self.data
    }

    pub fn point(&self, name: &str) -> Option<Point3> {
        self.points.get(name).copied()
    }

    pub fn line(&self, name: &str) -> Option<Line3> {
        self.lines.get(name).copied()
    }

    pub fn plane(&self, name: &str) -> Option<Plane3> {
        self.planes.get(name).copied()
    }

    /// Constraints in file order.
    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    /// The operation formed by all constraints of the scene.
    pub fn operation(&self) -> OperationSpec {
        let kinds: Vec<IncidenceKind> = self.constraints.iter().map(|c| c.kind()).collect();
        OperationSpec::from_kinds(&kinds)
    }
}

pub fn load_scene(path: impl AsRef<Path>) -> Result<Scene> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    Scene::parse(&text)
}

pub fn write_scene(scene: &Scene, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, scene.to_json() + "\n").map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}
