//! Points, lines, planes, rigid frames and reflection in a plane.

mod frame;
mod line;
mod plane;
mod vec3;

pub use frame::{
    canonical_frame_line_plane, canonical_frame_lines, canonical_frame_point_line,
    canonical_frame_point_plane, RigidFrame,
};
pub use line::Line3;
pub use plane::{classify_line_plane, perpendicular_bisector_plane, LinePlaneRelation, Plane3};
pub use vec3::{Point3, Vec3};
