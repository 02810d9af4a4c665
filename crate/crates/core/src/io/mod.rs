//! Scene files, result documents, mesh export and the commands behind the
//! `fold3d` binary. Everything here works in `f64`.
//!
//! A scene is JSON with named objects and constraints referring to them:
//!
//! ```json
//! {
//!   "points": { "P": [0, 0, 1] },
//!   "lines": { "m": { "point": [0, 0, -1], "dir": [1, 0, 0] } },
//!   "planes": { "pi": { "normal": [0, 0, 1], "offset": -1 } },
//!   "constraints": [ { "type": "I5", "args": { "point": "P", "line": "m" } } ]
//! }
//! ```
//!
//! Argument names: I1 `point, target`; I2, I3 `line, target`; I4
//! `plane, target`; I5 `point, line`; I6 `point, plane`; I7 `line, plane`;
//! I8 `point`; I9, I10 `line`; I11, I12 `plane`. A plane may also be given as
//! `{"coeffs": [a, b, c, d]}` for `a x + b y + c z + d = 0`.

mod commands;
mod mesh;
mod result;
mod scene;

pub use commands::{
    cmd_enumerate, cmd_envelope, cmd_oracle, cmd_solve, cmd_verify, envelope_obj, parse_plane, Listing,
    ListingEntry, RejectedEntry, SolveSettings,
};
pub use mesh::{envelope_mesh, to_obj, MeshObject, MeshParams, MeshSummary};
pub use result::{Outcome, ParameterRecord, PlaneRecord, ResultDocument, VerifyEntry, VerifyReport};
pub use scene::{load_scene, write_scene, ConstraintSpec, LineSpec, PlaneSpec, Scene, SceneData};
