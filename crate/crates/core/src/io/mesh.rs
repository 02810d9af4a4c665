use std::fmt::Write as _;

use serde::Serialize;

use crate::envelopes::Contact;
use crate::error::{Error, Result};
use crate::{PlaneFamily, Point3, Quadric};

/// Tessellation settings for envelope export.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeshParams {
    /// Samples per parameter axis, and along each contact line.
    pub grid: usize,
    /// Half-width of unbounded parameter ranges and of contact-line
    /// segments; `None` means four times the family scale.
    pub extent: Option<f64>,
    /// Number of sampled tangent planes exported as quads.
    pub tangent_planes: usize,
    /// Half side of the tangent-plane quads; `None` means a quarter of the
    /// extent.
    pub plane_size: Option<f64>,
    /// Largest accepted `|Q(v)| / (1 + |v|²)` at a surface vertex, with `Q`
    /// the normalized quadric in its own frame.
    pub tol: f64,
}

impl Default for MeshParams {
    fn default() -> Self {
        Self { grid: 24, extent: None, tangent_planes: 0, plane_size: None, tol: 1e-6 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MeshObject {
    pub name: String,
    pub vertices: Vec<Point3>,
    /// Polygons as 0-based indices into `vertices`.
    pub faces: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MeshSummary {
    pub objects: usize,
    pub vertices: usize,
    pub faces: usize,
    pub max_surface_error: f64,
}

/// Wavefront OBJ with one `o` block per object, vertices in scene
/// coordinates.
pub fn to_obj(comment: &str, objects: &[MeshObject]) -> String {
    let mut s = format!("# {comment}\n");
    let mut base = 1;
    for o in objects {
        let _ = writeln!(s, "o {}", o.name);
        for v in &o.vertices {
            let _ = writeln!(s, "v {} {} {}", v.x, v.y, v.z);
        }
        for f in &o.faces {
            let idx: Vec<String> = f.iter().map(|i| (i + base).to_string()).collect();
            let _ = writeln!(s, "f {}", idx.join(" "));
        }
        base += o.vertices.len();
    }
    s
}

fn surface_error(q: &Quadric, p: Point3) -> f64 {
    let local = q.frame().apply_point(p);
    q.eval(p).abs() / (1.0 + local.norm_squared())
}

/// Point `i` of the low-discrepancy sequence in `[0, 1)²`.
fn r2_sequence(i: usize) -> [f64; 2] {
    // plastic-number increments
    const A1: f64 = 0.754_877_666_246_692_8;
    const A2: f64 = 0.569_840_290_998_053_3;
    let k = i as f64 + 1.0;
    [(0.5 + A1 * k).fract(), (0.5 + A2 * k).fract()]
}

/// The envelope patch of `fam` and optionally some of its planes as quads.
///
/// Two-parameter families are sampled on a grid of contact points. For
/// one-parameter families each grid row is a segment of the contact line,
/// so the patch is ruled.
pub fn envelope_mesh(fam: &PlaneFamily, params: &MeshParams) -> Result<(Vec<MeshObject>, MeshSummary)> {
    let quadric = fam.envelope()?;
    let n = params.grid.max(2);
    let extent = params.extent.unwrap_or(4.0 * fam.scale());
    if !(extent > 0.0) || !extent.is_finite() {
        return Err(Error::InvalidInput(format!("mesh extent must be positive, got {extent}")));
    }
    let ranges = fam.parameters();
    let at = |i: usize| i as f64 / (n - 1) as f64;

    let mut grid: Vec<Option<Point3>> = Vec::with_capacity(n * n);
    for i in 0..n {
        let first = ranges[0].lerp(at(i), extent);
        let contact = if ranges.len() == 2 {
            None
        } else {
            fam.contact(&[first]).ok()
        };
        for j in 0..n {
            let p = if ranges.len() == 2 {
                match fam.contact(&[first, ranges[1].lerp(at(j), extent)]) {
                    Ok(Contact::Point(p)) => Some(p),
                    _ => None,
                }
            } else {
                match contact {
                    Some(Contact::Line(l)) => Some(l.point_at(-extent + 2.0 * extent * at(j))),
                    _ => None,
                }
            };
            grid.push(p.filter(|p| p.is_finite()));
        }
    }

    let mut max_err = 0.0f64;
    let mut index = vec![usize::MAX; n * n];
    let mut vertices = Vec::new();
    for (k, p) in grid.iter().enumerate() {
        if let Some(p) = p {
            let e = surface_error(&quadric, *p);
            if !(e <= params.tol) {
                return Err(Error::VerificationFailed {
                    sample: k,
                    params: vec![at(k / n), at(k % n)],
                    reason: "mesh vertex is off the envelope quadric".into(),
                    error: e,
                });
            }
            max_err = max_err.max(e);
            index[k] = vertices.len();
            vertices.push(*p);
        }
    }
    let mut faces = Vec::new();
    for i in 0..n - 1 {
        for j in 0..n - 1 {
            let c = [i * n + j, (i + 1) * n + j, (i + 1) * n + j + 1, i * n + j + 1].map(|k| index[k]);
            if c.iter().all(|&k| k != usize::MAX) {
                faces.push(vec![c[0], c[1], c[2]]);
                faces.push(vec![c[0], c[2], c[3]]);
            }
        }
    }
    let mut objects = vec![MeshObject { name: "envelope".into(), vertices, faces }];

    let size = params.plane_size.unwrap_or(extent / 4.0);
    for k in 0..params.tangent_planes {
        let u = r2_sequence(k);
        let p: Vec<f64> = ranges.iter().zip(u).map(|(r, u)| r.lerp(u, extent)).collect();
        let plane = fam.plane(&p)?;
        let center = match fam.contact(&p)? {
            Contact::Point(c) => c,
            Contact::Line(l) => l.point_at(0.0),
        };
        let center = plane.project(center);
        let (a, b) = plane.basis();
        let corners = [(-1.0, -1.0), (1.0, -1.0), (1.0, 1.0), (-1.0, 1.0)]
            .map(|(x, y)| center + a * (x * size) + b * (y * size));
        objects.push(MeshObject {
            name: format!("tangent_plane_{}", k + 1),
            vertices: corners.to_vec(),
            faces: vec![vec![0, 1, 2, 3]],
        });
    }

    let summary = MeshSummary {
        objects: objects.len(),
        vertices: objects.iter().map(|o| o.vertices.len()).sum(),
        faces: objects.iter().map(|o| o.faces.len()).sum(),
        max_surface_error: max_err,
    };
    Ok((objects, summary))
}
