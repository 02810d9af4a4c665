use proptest::prelude::*;

use super::*;
use crate::constraints::Constraint;
use crate::geom::{RigidFrame, Vec3};
use crate::Error;

type V = Vec3<f64>;

fn v(x: f64, y: f64, z: f64) -> V {
    Vec3::new(x, y, z)
}

fn line(p: V, d: V) -> Line3<f64> {
    Line3::new(p, d).unwrap()
}

fn plane(n: V, d: f64) -> Plane3<f64> {
    Plane3::new(n, d).unwrap()
}

fn canonical_p() -> V {
    v(0.0, 0.0, 1.0)
}

fn canonical_m() -> Line3<f64> {
    line(v(0.0, 0.0, -1.0), v(0.0, 1.0, 0.0))
}

fn canonical_pi() -> Plane3<f64> {
    plane(v(0.0, 0.0, 1.0), -1.0)
}

fn scene_frame() -> RigidFrame<f64> {
    RigidFrame::from_axis_angle(v(1.0, -2.0, 0.5), 0.7, v(3.0, -1.0, 2.0)).unwrap()
}

fn coeffs_close(a: [f64; 10], b: [f64; 10], tol: f64) -> bool {
    a.iter().zip(b.iter()).all(|(x, y)| (x - y).abs() <= tol)
}

#[test]
fn i5_family_examples() {
    let f = family_i5(canonical_p(), &canonical_m()).unwrap();
    assert!(f.plane(&[2.0]).unwrap().approx_eq(&plane(v(0.0, 1.0, -1.0), 1.0), 1e-12));
    assert!(f.plane(&[0.0]).unwrap().approx_eq(&plane(v(0.0, 0.0, 1.0), 0.0), 1e-12));

    let g = scene_frame().inverse();
    let (p, m) = (g.apply_point(v(1.0, 2.0, 3.0)), g.apply_line(&line(v(0.0, 1.0, -2.0), v(1.0, 1.0, 1.0))));
    let f = family_i5(p, &m).unwrap();
    for t in [-7.0, -1.0, 0.3, 4.0] {
        let delta = f.plane(&[t]).unwrap();
        assert!(m.distance_to_point(delta.reflect_point(p)) < 1e-9);
    }
    assert!(matches!(family_i5(v(0.0, 5.0, -1.0), &canonical_m()), Err(Error::DegenerateInput(_))));
}

#[test]
fn i5_envelope_examples() {
    let q = envelope_i5(canonical_p(), &canonical_m()).unwrap();
    assert!(q.approx_eq_coeffs(&[0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, -4.0, 0.0], 1e-15));
    let f = family_i5(canonical_p(), &canonical_m()).unwrap();
    match f.contact(&[2.0]).unwrap() {
        Contact::Line(l) => {
            assert!(l.approx_eq(&line(v(0.0, 2.0, 1.0), v(1.0, 0.0, 0.0)), 1e-12));
            for x in [-3.0, 0.0, 5.0] {
                assert!(q.eval(l.point_at(x)).abs() < 1e-12);
            }
        }
        c => panic!("expected a contact line, got {c:?}"),
    }
    for t in [-4.0, 0.5, 9.0] {
        assert!(q.plane_section_discriminant(&f.plane(&[t]).unwrap()).abs() < 1e-9);
    }
}

#[test]
fn i6_examples() {
    let f = family_i6(canonical_p(), &canonical_pi()).unwrap();
    assert!(f.plane(&[0.0, 0.0]).unwrap().approx_eq(&plane(v(0.0, 0.0, 1.0), 0.0), 1e-12));
    assert!(f.plane(&[2.0, 0.0]).unwrap().approx_eq(&plane(v(1.0, 0.0, -1.0), 1.0), 1e-12));
    let q = envelope_i6(canonical_p(), &canonical_pi()).unwrap();
    assert!(q.approx_eq_coeffs(&[1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, -4.0, 0.0], 1e-15));
    assert_eq!(q.eval(v(0.0, 0.0, 0.0)), 0.0);
    assert_eq!(f.contact(&[2.0, 0.0]).unwrap(), Contact::Point(v(2.0, 0.0, 1.0)));
    assert!(matches!(family_i6(v(0.0, 0.0, -1.0), &canonical_pi()), Err(Error::DegenerateInput(_))));
}

#[test]
fn i6_focus_property() {
    // every point of the paraboloid is equidistant from the focus and the plane z = -2
    let q = envelope_i6(canonical_p(), &canonical_pi()).unwrap();
    for (x, y) in [(1.0, 2.0), (-3.0, 0.5), (0.0, 0.0)] {
        let p = v(x, y, (x * x + y * y) / 4.0);
        assert!(q.eval(p).abs() < 1e-12);
        assert!((p.distance(canonical_p()) - (p.z + 1.0)).abs() < 1e-12);
    }
}

#[test]
fn i3_examples() {
    let delta = std::f64::consts::FRAC_PI_4;
    let m = line(v(0.0, 0.0, 1.0), v(0.0, 1.0, 0.0));
    let n = line(v(0.0, 0.0, -1.0), v(delta.cos(), delta.sin(), 0.0));
    let f = family_i3(&m, &n).unwrap();
    assert!(matches!(f.shape(), FamilyShape::SkewLines { delta: d } if (d - delta).abs() < 1e-12));
    assert!(f.plane(&[0.0, 0.0]).unwrap().approx_eq(&plane(v(0.0, 0.0, 1.0), 0.0), 1e-12));
    let c = Constraint::line_meets_line(m, n).unwrap();
    assert!(c.residual(&f.plane(&[1.0, 1.0]).unwrap()) < 1e-9);

    let parallel = line(v(0.0, 0.0, -1.0), v(0.0, 1.0, 0.0));
    let f = family_i3(&m, &parallel).unwrap();
    assert_eq!(f.shape(), FamilyShape::ParallelLines);
    assert!(f.plane(&[1.5, 1.5]).unwrap().approx_eq(&plane(v(0.0, 0.0, 1.0), 0.0), 1e-12));
    assert!(matches!(envelope_i3(&m, &parallel), Err(Error::NoEnvelope(_))));

    let crossing = line(v(0.0, 0.0, 1.0), v(1.0, 0.0, 0.0));
    assert!(matches!(family_i3(&m, &crossing), Err(Error::InvalidConstraint(_))));
}

#[test]
fn i3_envelope_at_zero_angle() {
    // perpendicular skew lines: x² − y² − 4z
    let m = line(v(0.0, 0.0, 1.0), v(0.0, 1.0, 0.0));
    let n = line(v(0.0, 0.0, -1.0), v(1.0, 0.0, 0.0));
    let q = envelope_i3(&m, &n).unwrap();
    assert!(q.approx_eq_coeffs(&[1.0, -1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, -4.0, 0.0], 1e-15));
}

#[test]
fn i7_examples() {
    let theta: f64 = 0.6;
    let m = line(v(0.0, 0.0, 0.0), v(0.0, theta.sin(), theta.cos()));
    let pi = plane(v(0.0, 0.0, 1.0), 0.0);
    let f = family_i7(&m, &pi).unwrap();
    assert!(matches!(f.shape(), FamilyShape::LinePlaneOblique { theta: t } if (t - theta).abs() < 1e-12));
    let d = theta;
    let expect = plane(v(d.cos(), 0.0, -theta.cos()), 0.0);
    assert!(f.plane(&[d]).unwrap().approx_eq(&expect, 1e-12));

    let c = Constraint::line_into_plane(m, pi).unwrap();
    for d in [0.1, 1.0, 2.5, 4.0] {
        let delta = f.plane(&[d]).unwrap();
        assert!(c.residual(&delta) < 1e-9);
        assert!(delta.signed_distance(v(0.0, 0.0, 0.0)).abs() < 1e-12);
    }

    let m = line(v(0.0, 0.0, 1.0), v(0.0, 1.0, 0.0));
    let f = family_i7(&m, &canonical_pi()).unwrap();
    assert_eq!(f.shape(), FamilyShape::LinePlaneParallel);
    assert!(f.plane(&[2.0]).unwrap().approx_eq(&plane(v(-4.0, 0.0, 4.0), -4.0), 1e-12));
    let q = envelope_i7(&m, &canonical_pi()).unwrap();
    assert!(q.approx_eq_coeffs(&[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, -4.0, 0.0], 1e-15));

    let inside = line(v(0.0, 0.0, -1.0), v(1.0, 0.0, 0.0));
    assert!(matches!(family_i7(&inside, &canonical_pi()), Err(Error::DegenerateInput(_))));
}

#[test]
fn i7_perpendicular_line_gives_circular_cone() {
    let m = line(v(0.0, 0.0, 0.0), v(0.0, 0.0, 1.0));
    let q = envelope_i7(&m, &plane(v(0.0, 0.0, 1.0), 0.0)).unwrap();
    assert!(q.approx_eq_coeffs(&[1.0, 1.0, -1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0], 1e-15));
    assert_eq!(q.eval(v(0.0, 0.0, 0.0)), 0.0);
}

#[test]
fn explicit_right_angle_is_rejected() {
    let shape = FamilyShape::LinePlaneOblique { theta: std::f64::consts::FRAC_PI_2 };
    let err = PlaneFamily::canonical(shape, 1.0).unwrap_err();
    assert!(err.to_string().contains("θ ≠ π/2"), "{err}");
}

#[test]
fn normal_forms_match_rotated_envelopes() {
    for delta in [-1.2, -0.3, 0.0, 0.4, 1.1, 1.5] {
        let f = PlaneFamily::canonical(FamilyShape::SkewLines { delta }, 1.3).unwrap();
        let rotated = f.envelope().unwrap().transformed(&f.normal_frame().unwrap());
        let expect = f.normal_form().unwrap();
        assert!(coeffs_close(rotated.coeffs(), expect.coeffs(), 1e-10), "δ = {delta}");
    }
    for theta in [0.0, 0.3, 0.9, 1.4] {
        let f = PlaneFamily::canonical(FamilyShape::LinePlaneOblique { theta }, 1.0).unwrap();
        let rotated = f.envelope().unwrap().transformed(&f.normal_frame().unwrap());
        let expect = f.normal_form().unwrap();
        assert!(coeffs_close(rotated.coeffs(), expect.coeffs(), 1e-10), "θ = {theta}");
    }
}

#[test]
fn scene_coefficients_match_framed_evaluation() {
    let f = PlaneFamily::with_frame(FamilyShape::PointPlane, 0.8, scene_frame()).unwrap();
    let q = f.envelope().unwrap();
    let scene = Quadric::new(q.in_scene_coordinates(), RigidFrame::identity()).unwrap();
    let ratios: Vec<f64> = [v(1.0, 2.0, 3.0), v(-4.0, 0.0, 1.0), v(0.5, 0.5, -2.0)]
        .iter()
        .map(|p| scene.eval(*p) / q.eval(*p))
        .collect();
    assert!(ratios.iter().all(|r| (r - ratios[0]).abs() < 1e-12 && *r > 0.0));
    if let Contact::Point(c) = f.contact(&[1.0, -2.0]).unwrap() {
        assert!(scene.eval(c).abs() < 1e-10);
    }
}

fn all_families() -> Vec<PlaneFamily<f64>> {
    let frame = scene_frame();
    let g = frame.inverse();
    let m = g.apply_line(&line(v(0.0, 0.0, 1.0), v(0.0, 1.0, 0.0)));
    let n = g.apply_line(&line(v(0.0, 0.0, -1.0), v(0.8, 0.6, 0.0)));
    let p = g.apply_point(v(0.0, 0.0, 1.5));
    let pi = g.apply_plane(&plane(v(0.0, 0.0, 1.0), -0.5));
    let oblique = g.apply_line(&line(v(1.0, 0.0, 0.0), v(0.3, 0.4, 1.0)));
    vec![
        family_i5(p, &m).unwrap(),
        family_i6(p, &pi).unwrap(),
        family_i3(&m, &n).unwrap(),
        family_i7(&oblique, &pi).unwrap(),
        family_i7(&m, &pi).unwrap(),
    ]
}

#[test]
fn envelope_conditions_hold_for_every_family() {
    for f in all_families() {
        let q = f.envelope().unwrap();
        let r = verify_envelope_conditions(&f, &q, 100).unwrap_or_else(|e| panic!("{}: {e}", f.shape().name()));
        assert!(r.max_gradient_error < 1e-8);
        assert!(r.max_discriminant < 1e-8);
    }
}

#[test]
fn perturbed_quadric_fails_verification() {
    let f = family_i5(canonical_p(), &canonical_m()).unwrap();
    let mut c = f.envelope().unwrap().coeffs();
    c[1] += 0.1;
    let q = Quadric::new(c, f.frame()).unwrap();
    assert!(matches!(
        verify_envelope_conditions(&f, &q, 100),
        Err(Error::VerificationFailed { .. })
    ));
}

#[test]
fn parallel_lines_have_no_envelope_to_verify() {
    let f = PlaneFamily::canonical(FamilyShape::ParallelLines, 1.0).unwrap();
    assert!(matches!(f.envelope(), Err(Error::NoEnvelope(_))));
    assert!(matches!(f.contact(&[0.0, 1.0]), Err(Error::NoEnvelope(_))));
}

proptest! {
    #[test]
    fn frame_equivariance(
        ax in -1.0..1.0f64, ay in -1.0..1.0f64, az in 0.1..1.0f64, angle in -3.0..3.0f64,
        tx in -5.0..5.0f64, ty in -5.0..5.0f64, tz in -5.0..5.0f64,
        t in -10.0..10.0f64, s in -10.0..10.0f64,
    ) {
        let frame = RigidFrame::from_axis_angle(v(ax, ay, az), angle, v(tx, ty, tz)).unwrap();
        let g = frame.inverse();
        // scene objects whose canonical placement is the textbook one with a = 1
        let p = g.apply_point(canonical_p());
        let pi = g.apply_plane(&canonical_pi());
        let m = g.apply_line(&canonical_m());
        // the point-plane frame is fixed only up to a turn about z, so map the
        // scene plane back and read off its canonical parameters
        let f6 = family_i6(p, &pi).unwrap();
        let c6 = PlaneFamily::canonical(FamilyShape::PointPlane, 1.0).unwrap();
        let mapped = f6.frame().apply_plane(&f6.plane(&[s, t]).unwrap());
        let n = mapped.normal();
        let k = -4.0 / n.z;
        let (s2, t2) = (k * n.x / 2.0, k * n.y / 2.0);
        prop_assert!(mapped.approx_eq(&c6.plane(&[s2, t2]).unwrap(), 1e-10));
        prop_assert!(((s2 * s2 + t2 * t2) - (s * s + t * t)).abs() < 1e-8 * (1.0 + s * s + t * t));

        let f5 = family_i5(p, &m).unwrap();
        let c5 = PlaneFamily::canonical(FamilyShape::PointLine, 1.0).unwrap();
        let mapped = f5.frame().apply_plane(&f5.plane(&[t]).unwrap());
        prop_assert!(mapped.approx_eq(&c5.plane(&[t]).unwrap(), 1e-10));
    }

    #[test]
    fn tangent_sections_are_degenerate(t in -10.0..10.0f64, s in -10.0..10.0f64, delta in -1.4..1.4f64, theta in 0.0..1.5f64) {
        let fams = [
            PlaneFamily::with_frame(FamilyShape::PointPlane, 0.7, scene_frame()).unwrap(),
            PlaneFamily::with_frame(FamilyShape::SkewLines { delta }, 1.2, scene_frame()).unwrap(),
        ];
        for f in &fams {
            let q = f.envelope().unwrap();
            prop_assert!(q.plane_section_discriminant(&f.plane(&[t, s]).unwrap()).abs() < 1e-8);
        }
        let f = PlaneFamily::with_frame(FamilyShape::LinePlaneOblique { theta }, 1.0, scene_frame()).unwrap();
        let q = f.envelope().unwrap();
        prop_assert!(q.plane_section_discriminant(&f.plane(&[t]).unwrap()).abs() < 1e-8);
    }
}
