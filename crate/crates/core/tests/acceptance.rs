//! Acceptance suite. Prints one PASS/FAIL line per criterion (details
//! indented below it) and exits nonzero if any criterion fails.

use std::time::{Duration, Instant};

use fold3d::constraints::{solve_i2, solve_i4};
use fold3d::envelopes::{family_i3, family_i5, family_i6, family_i7, verify_envelope_conditions, FamilyShape};
use fold3d::fold_ops::{solve_generic, solve_operation, OperationSpec, SolveOptions};
use fold3d::io::cmd_enumerate;
use fold3d::numerics::{grid_oracle, OracleOptions};
use fold3d::{Constraint, FoldSolution, Line3, Plane3, PlaneFamily, Point3, Vec3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    summary: String,
    details: Vec<String>,
}

impl Outcome {
    fn new(pass: bool, summary: String) -> Self {
        Self { pass, summary, details: Vec::new() }
    }
}

fn rv(r: &mut ChaCha8Rng) -> Vec3 {
    Vec3::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0))
}

fn ru(r: &mut ChaCha8Rng) -> Vec3 {
    loop {
        let v = rv(r);
        let n = v.norm();
        if n > 0.2 && n < 1.0 {
            return v / n;
        }
    }
}

fn rplane(r: &mut ChaCha8Rng) -> Plane3 {
    Plane3::new(ru(r), r.gen_range(-0.5..0.5)).unwrap()
}

fn rline(r: &mut ChaCha8Rng) -> Line3 {
    Line3::new(rv(r), ru(r)).unwrap()
}

fn within(t: Instant, limit: Duration) -> (bool, String) {
    let e = t.elapsed();
    (e < limit, format!("{:.2}s of {}s", e.as_secs_f64(), limit.as_secs()))
}

fn enumeration() -> Outcome {
    let t = Instant::now();
    let listing = cmd_enumerate();
    let (fast, time) = within(t, Duration::from_secs(1));
    let mut rejected: Vec<&str> = listing.rejected.iter().map(|r| r.operation.as_str()).collect();
    rejected.sort();
    let ok = listing.valid.len() == 47 && rejected == ["2I9", "3I11", "I9+I11"];
    let mut by_class = std::collections::BTreeMap::<&str, usize>::new();
    for e in &listing.valid {
        *by_class.entry(e.class.as_str()).or_default() += 1;
    }
    Outcome::new(
        ok && fast,
        format!("{} valid, rejected {:?}, classes {by_class:?}, {time}", listing.valid.len(), rejected),
    )
}

fn reflection() -> Outcome {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (mut involution, mut isometry, mut fixed) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..1000 {
        let pi = Plane3::new(ru(&mut rng), rng.gen_range(-5.0..5.0)).unwrap();
        let p = rv(&mut rng) * 10.0;
        let q = rv(&mut rng) * 10.0;
        involution = involution.max(pi.reflect_point(pi.reflect_point(p)).distance(p));
        isometry = isometry.max((pi.reflect_point(p).distance(pi.reflect_point(q)) - p.distance(q)).abs());
        // points of the plane stay, others move by twice their distance
        let on = pi.project(p);
        fixed = fixed.max(pi.reflect_point(on).distance(on));
        fixed = fixed.max((pi.reflect_point(p).distance(p) - 2.0 * pi.distance(p)).abs());
    }
    let worst = involution.max(isometry).max(fixed);
    let (fast, time) = within(t, Duration::from_secs(5));
    Outcome::new(
        worst < 1e-10 && fast,
        format!("max errors: involution {involution:.1e}, isometry {isometry:.1e}, fixed set {fixed:.1e}; {time}"),
    )
}

/// Closed-form envelope coefficients of a canonical family, order
/// `x², y², z², xy, yz, zx, x, y, z, 1`.
fn closed_form(shape: FamilyShape<f64>, a: f64) -> [f64; 10] {
    match shape {
        FamilyShape::PointLine => [0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, -4.0 * a, 0.0],
        FamilyShape::PointPlane => [1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, -4.0 * a, 0.0],
        FamilyShape::SkewLines { delta } => {
            let (s, c) = delta.sin_cos();
            [c * c, -c * c, 0.0, 2.0 * s * c, 0.0, 0.0, 0.0, 0.0, -4.0 * a, 0.0]
        }
        FamilyShape::LinePlaneOblique { theta } => {
            let (s, c) = theta.sin_cos();
            [1.0, c * c, -c * c, 0.0, -2.0 * s * c, 0.0, 0.0, 0.0, 0.0, 0.0]
        }
        FamilyShape::LinePlaneParallel => [1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, -4.0 * a, 0.0],
        FamilyShape::ParallelLines => unreachable!(),
    }
}

fn envelopes() -> Outcome {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let p = rv(&mut rng);
    let m = rline(&mut rng);
    let pi = rplane(&mut rng);
    let inside = pi.basis().0;
    let parallel = Line3::new(pi.point() + pi.normal() * 0.7, inside).unwrap();
    let n = rline(&mut rng);
    let cases: [(&str, PlaneFamily); 5] = [
        ("I5", family_i5(p, &m).unwrap()),
        ("I6", family_i6(p, &pi).unwrap()),
        ("I7 oblique", family_i7(&m, &pi).unwrap()),
        ("I7 parallel", family_i7(&parallel, &pi).unwrap()),
        ("I3 skew", family_i3(&m, &n).unwrap()),
    ];
    let mut out = Outcome::new(true, String::new());
    let mut worst = 0.0f64;
    for (name, fam) in cases {
        let canonical = PlaneFamily::canonical(fam.shape(), fam.scale()).unwrap();
        let formula_ok = canonical.envelope().unwrap().approx_eq_coeffs(&closed_form(fam.shape(), fam.scale()), 1e-12);
        let q = fam.envelope().unwrap();
        let line = match verify_envelope_conditions(&fam, &q, 100) {
            Ok(r) => {
                worst = worst.max(r.max_gradient_error);
                let ok = formula_ok && r.max_gradient_error < 1e-8;
                out.pass &= ok;
                format!(
                    "{name}: closed form {}, surface {:.1e}, gradient {:.1e}, section {:.1e}",
                    if formula_ok { "matches" } else { "DIFFERS" },
                    r.max_surface_error,
                    r.max_gradient_error,
                    r.max_discriminant
                )
            }
            Err(e) => {
                out.pass = false;
                format!("{name}: {e}")
            }
        };
        out.details.push(line);
    }
    let (fast, time) = within(t, Duration::from_secs(30));
    out.pass &= fast;
    out.summary = format!("5 families x 100 samples, max gradient error {worst:.1e}; {time}");
    out
}

/// A random instance of a worked operation; `i` alternates constructions
/// where it matters.
fn worked_instance(op: &str, rng: &mut ChaCha8Rng, i: usize) -> Vec<Constraint> {
    loop {
        let built = match op {
            "I5+I6" => {
                let (p, m, q, pi) = (rv(rng), rline(rng), rv(rng), rplane(rng));
                Constraint::point_onto_line(p, m).and_then(|a| Ok(vec![a, Constraint::point_onto_plane(q, pi)?]))
            }
            "I5+I9" => {
                let (p, m) = (rv(rng), rline(rng));
                // every other instance puts the direction of n in span(P - foot, m), where folds exist
                let d = if i % 2 == 0 {
                    let foot = m.closest_point(p);
                    let a: f64 = rng.gen_range(-1.0..1.0);
                    let b: f64 = rng.gen_range(-1.0..1.0);
                    match ((p - foot).normalized().unwrap() * a + m.dir() * b).normalized() {
                        Some(d) => d,
                        None => continue,
                    }
                } else {
                    ru(rng)
                };
                let n = Line3::new(rv(rng), d).unwrap();
                Constraint::point_onto_line(p, m).map(|a| vec![a, Constraint::line_reversed(n)])
            }
            "I6+I8+I11" => {
                let (p, pi, q) = (rv(rng), rplane(rng), rv(rng));
                let tau = Plane3::new(ru(rng), 0.0).unwrap();
                Constraint::point_onto_plane(p, pi)
                    .map(|a| vec![a, Constraint::point_fixed(q), Constraint::plane_reversed(tau)])
            }
            "3I6" => (0..3).map(|_| Constraint::point_onto_plane(rv(rng), rplane(rng))).collect(),
            _ => unreachable!(),
        };
        if let Ok(cs) = built {
            return cs;
        }
    }
}

fn dedicated(op: &str, cs: &[Constraint]) -> FoldSolution {
    let spec: OperationSpec = op.parse().unwrap();
    solve_operation(&spec, cs, &SolveOptions::default()).unwrap().solution
}

fn max_residual(cs: &[Constraint], p: &Plane3) -> f64 {
    cs.iter().map(|c| c.residual(p)).fold(0.0, f64::max)
}

fn worked_vs_oracle() -> Outcome {
    let mut out = Outcome::new(true, String::new());
    let mut parts = Vec::new();
    for (k, (op, bound)) in [("I5+I6", 3), ("I5+I9", 1), ("I6+I8+I11", 2)].into_iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(40 + k as u64);
        let (mut agree, mut over_bound) = (0, 0);
        let mut hist = [0usize; 4];
        for i in 0..100 {
            let cs = worked_instance(op, &mut rng, i);
            let sol = dedicated(op, &cs);
            let n = sol.count().expect("finite");
            hist[n.min(3)] += 1;
            if n > bound {
                over_bound += 1;
            }
            let oracle = grid_oracle(&cs, &OracleOptions::default());
            if oracle.clusters.len() == n {
                agree += 1;
            } else {
                let res: Vec<String> = oracle.clusters.iter().map(|c| format!("{:.1e}", c.residual)).collect();
                let ded: Vec<String> = sol.planes().iter().map(|p| format!("{:.1e}", max_residual(&cs, p))).collect();
                out.details.push(format!(
                    "{op} instance {i}: dedicated {n} (residuals {}), oracle {} (residuals {})",
                    ded.join(", "),
                    oracle.clusters.len(),
                    res.join(", ")
                ));
            }
        }
        out.pass &= agree >= 98 && over_bound == 0;
        parts.push(format!("{op} {agree}/100 agree, counts 0..3 {hist:?}, bound {bound} exceeded {over_bound}x"));
    }
    out.summary = parts.join("; ");
    out
}

fn degeneracy() -> Outcome {
    let p = Vec3::new(0.0, 0.0, 1.0);
    let m = Line3::new(Vec3::new(0.0, 0.0, -1.0), Vec3::new(1.0, 0.0, 0.0)).unwrap();
    // contains m, perpendicular to the plane through P and m
    let pi = Plane3::new(Vec3::new(0.0, 0.0, 1.0), -1.0).unwrap();
    let solve = |p5: Point3| {
        let cs = [Constraint::point_onto_line(p5, m).unwrap(), Constraint::point_onto_plane(p, pi).unwrap()];
        dedicated("I5+I6", &cs)
    };
    let base = solve(p);
    let moved = solve(p + Vec3::new(0.0, 0.0, 1e-3));
    let infinite = base.is_infinite();
    let finite = matches!(moved, FoldSolution::Finite(_));
    Outcome::new(
        infinite && finite,
        format!(
            "degenerate: {}, P moved 1e-3 away from m: {}",
            if infinite { "infinite family" } else { "NOT infinite" },
            match moved.count() {
                Some(n) if finite => format!("{n} planes"),
                _ => "not finite".into(),
            }
        ),
    )
}

fn three_i6() -> Outcome {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut hist = [0usize; 10];
    let (mut max, mut worst_res, mut errors) = (0, 0.0f64, 0);
    let mut out = Outcome::new(true, String::new());
    for i in 0..1000 {
        let cs = worked_instance("3I6", &mut rng, i);
        let spec: OperationSpec = "3I6".parse().unwrap();
        match solve_operation(&spec, &cs, &SolveOptions::default()) {
            Ok(s) => {
                let n = s.solution.count().expect("finite");
                hist[n.min(9)] += 1;
                max = max.max(n);
                for p in s.solution.planes() {
                    worst_res = worst_res.max(max_residual(&cs, p));
                }
            }
            Err(e) => {
                errors += 1;
                out.details.push(format!("instance {i}: {e}"));
            }
        }
    }
    let (fast, time) = within(t, Duration::from_secs(600));
    out.pass = errors == 0 && max <= 7 && worst_res < 1e-8 && fast;
    out.summary = format!(
        "1000 instances, counts 0..9 {hist:?}, max {max}, worst residual {worst_res:.1e}, errors {errors}; {time}"
    );
    out
}

fn cross_solver() -> Outcome {
    let mut out = Outcome::new(true, String::new());
    let mut parts = Vec::new();
    for (k, op) in ["I5+I6", "I5+I9", "I6+I8+I11", "3I6"].into_iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(70 + k as u64);
        let (mut planes, mut missed) = (0, 0);
        for i in 0..50 {
            let cs = worked_instance(op, &mut rng, i);
            let d = dedicated(op, &cs);
            let g = solve_generic(&cs, 1e-9, 9, None);
            for p in d.planes() {
                planes += 1;
                if !g.planes().iter().any(|q| q.dedup_distance(p) < 1e-7) {
                    missed += 1;
                    out.details.push(format!("{op} instance {i}: generic solver missed {p:?}"));
                }
            }
        }
        out.pass &= missed == 0;
        parts.push(format!("{op} {}/{planes}", planes - missed));
    }
    out.summary = format!("dedicated planes reproduced: {}", parts.join(", "));
    out
}

fn single_incidences() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut counts = std::collections::BTreeMap::<&str, Vec<usize>>::new();
    let mut perp = 0.0f64;
    let mut record = |name: &'static str, s: FoldSolution, perp: &mut f64| {
        let planes = s.planes().to_vec();
        if planes.len() == 2 {
            *perp = perp.max(planes[0].normal().dot(planes[1].normal()).abs());
        }
        counts.entry(name).or_default().push(s.count().unwrap_or(usize::MAX));
    };
    for _ in 0..100 {
        let x = rv(&mut rng);
        let (d1, d2) = (ru(&mut rng), ru(&mut rng));
        let meeting = (Line3::new(x + d1 * 0.5, d1).unwrap(), Line3::new(x - d2 * 0.3, d2).unwrap());
        record("I2 coplanar", solve_i2(&meeting.0, &meeting.1).unwrap(), &mut perp);
        let off = d1.any_orthonormal() * rng.gen_range(0.1..1.0);
        let parallel = Line3::new(x, d1).unwrap();
        record("I2 parallel", solve_i2(&parallel, &Line3::new(x + off, -d1).unwrap()).unwrap(), &mut perp);
        let skew = Line3::new(x + d1.cross(d2).normalized().unwrap() * 0.5, d2).unwrap();
        record("I2 skew", solve_i2(&parallel, &skew).unwrap(), &mut perp);
        let (p1, p2) = (rplane(&mut rng), rplane(&mut rng));
        record("I4 crossing", solve_i4(&p1, &p2).unwrap(), &mut perp);
        let shifted = Plane3::new(p1.normal(), p1.offset() + rng.gen_range(0.1..1.0)).unwrap();
        record("I4 parallel", solve_i4(&p1, &shifted).unwrap(), &mut perp);
    }
    let expect = [("I2 coplanar", 2), ("I2 parallel", 1), ("I2 skew", 0), ("I4 crossing", 2), ("I4 parallel", 1)];
    let mut pass = perp < 1e-10;
    let mut parts = Vec::new();
    for (name, want) in expect {
        let got = &counts[name];
        let ok = got.iter().all(|&n| n == want || (want == 0 && n == usize::MAX));
        pass &= ok;
        parts.push(format!("{name} {}", if ok { want.to_string() } else { format!("{got:?}") }));
    }
    Outcome::new(pass, format!("100 cases each: {}; max |n1·n2| {perp:.1e}", parts.join(", ")))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("enumeration", enumeration),
        ("reflection", reflection),
        ("envelope tangency", envelopes),
        ("worked operations vs oracle", worked_vs_oracle),
        ("I5+I6 degeneracy", degeneracy),
        ("3I6 bound", three_i6),
        ("cross-solver agreement", cross_solver),
        ("single-incidence counts", single_incidences),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let out = run();
        println!("{} {}: {name}: {}", if out.pass { "PASS" } else { "FAIL" }, i + 1, out.summary);
        for d in &out.details {
            println!("    {d}");
        }
        failed += usize::from(!out.pass);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
