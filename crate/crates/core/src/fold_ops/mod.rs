//! Elementary fold operations: combinations of incidences whose
//! codimensions add up to 3, and solvers for them.

mod generic;
mod spec;
mod three_i6;
mod worked;

pub use generic::solve_generic;
pub use spec::{enumerate_operations, Enumeration, OperationClass, OperationSpec};
pub use three_i6::{solve_3i6, SystemInstance3I6, Unknowns3I6};
pub use worked::{solve_i5_i6, solve_i5_i9, solve_i6_i8_i11};

use crate::constraints::{solve_i1, solve_i12, solve_i2, solve_i4, Constraint, FoldSolution, Incidence, IncidenceKind};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Which solver produced a result.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Dedicated,
    Generic,
    Oracle,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Dedicated => "dedicated",
            Self::Generic => "generic",
            Self::Oracle => "oracle",
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SolveOptions<T> {
    /// Largest accepted constraint residual.
    pub tol: T,
    /// Starts per axis of the generic solver.
    pub seed_lattice: usize,
    /// Offset half-width searched by the generic solver.
    pub window: Option<T>,
    /// Use the generic solver even when a dedicated one exists.
    pub force_generic: bool,
}

impl<T: Scalar> Default for SolveOptions<T> {
    fn default() -> Self {
        Self { tol: T::incidence_tol(), seed_lattice: 9, window: None, force_generic: false }
    }
}

#[derive(Clone, Debug)]
pub struct Solved<T> {
    pub solution: FoldSolution<T>,
    pub provenance: Provenance,
    /// Set when the solver cannot guarantee that every fold was found.
    pub possibly_incomplete: bool,
}

/// Picks the constraints of the given kinds, in order, from `cs`.
fn take<'a, T>(cs: &'a [Constraint<T>], kinds: &[IncidenceKind]) -> Vec<&'a Constraint<T>>
where
    T: Scalar,
{
    let mut used = vec![false; cs.len()];
    kinds
        .iter()
        .map(|k| {
            let i = (0..cs.len()).find(|&i| !used[i] && cs[i].kind() == *k).expect("spec matches constraints");
            used[i] = true;
            &cs[i]
        })
        .collect()
}

fn dedicated<T: Scalar>(spec: &str, cs: &[Constraint<T>], tol: T) -> Option<Result<FoldSolution<T>>> {
    use IncidenceKind::*;
    use Incidence::*;
    let r = match spec {
        "I1" => match cs[0].incidence() {
            PointToPoint { point, target } => solve_i1(*point, *target),
            _ => unreachable!(),
        },
        "I2" => match cs[0].incidence() {
            LineToLine { line, target } => solve_i2(line, target),
            _ => unreachable!(),
        },
        "I4" => match cs[0].incidence() {
            PlaneToPlane { plane, target } => solve_i4(plane, target),
            _ => unreachable!(),
        },
        "I12" => match cs[0].incidence() {
            PlaneFixed { plane } => Ok(solve_i12(plane)),
            _ => unreachable!(),
        },
        "I5+I6" => match take(cs, &[I5, I6])[..] {
            [c5, c6] => match (c5.incidence(), c6.incidence()) {
                (PointOntoLine { point: p, line: m }, PointOntoPlane { point: q, plane: pi }) => {
                    solve_i5_i6(*p, m, *q, pi)
                }
                _ => unreachable!(),
            },
            _ => unreachable!(),
        },
        "I5+I9" => match take(cs, &[I5, I9])[..] {
            [c5, c9] => match (c5.incidence(), c9.incidence()) {
                (PointOntoLine { point: p, line: m }, LineReversed { line: n }) => solve_i5_i9(*p, m, n),
                _ => unreachable!(),
            },
            _ => unreachable!(),
        },
        "I6+I8+I11" => match take(cs, &[I6, I8, I11])[..] {
            [c6, c8, c11] => match (c6.incidence(), c8.incidence(), c11.incidence()) {
                (PointOntoPlane { point: p, plane: pi }, PointFixed { point: q }, PlaneReversed { plane: tau }) => {
                    solve_i6_i8_i11(*p, pi, *q, tau)
                }
                _ => unreachable!(),
            },
            _ => unreachable!(),
        },
        "3I6" => {
            let pairs: Vec<_> = cs
                .iter()
                .map(|c| match c.incidence() {
                    PointOntoPlane { point, plane } => (*point, *plane),
                    _ => unreachable!(),
                })
                .collect();
            solve_3i6([pairs[0], pairs[1], pairs[2]], tol)
        }
        _ => return None,
    };
    Some(r)
}

/// Solves the operation `spec` for the given constraints, whose kinds must
/// match `spec` as a multiset.
///
/// I1, I2, I4, I12, I5+I6, I5+I9, I6+I8+I11 and 3I6 go to their dedicated
/// solvers, everything else (or everything, with `force_generic`) to
/// [`solve_generic`].
pub fn solve_operation<T: Scalar>(
    spec: &OperationSpec,
    constraints: &[Constraint<T>],
    opts: &SolveOptions<T>,
) -> Result<Solved<T>> {
    spec.validate()?;
    let kinds: Vec<IncidenceKind> = constraints.iter().map(|c| c.kind()).collect();
    if OperationSpec::from_kinds(&kinds) != *spec {
        return Err(Error::InvalidInput(format!(
            "constraints {} do not match the operation {spec}",
            OperationSpec::from_kinds(&kinds)
        )));
    }
    if !opts.force_generic {
        let name = spec.to_string();
        if let Some(r) = dedicated(&name, constraints, opts.tol) {
            // 3I6 is solved by multistart as well
            let possibly_incomplete = name == "3I6";
            return Ok(Solved { solution: r?, provenance: Provenance::Dedicated, possibly_incomplete });
        }
    }
    Ok(Solved {
        solution: solve_generic(constraints, opts.tol, opts.seed_lattice, opts.window),
        provenance: Provenance::Generic,
        possibly_incomplete: true,
    })
}
