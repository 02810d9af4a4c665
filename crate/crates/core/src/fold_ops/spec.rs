use std::fmt;
use std::str::FromStr;

use crate::constraints::IncidenceKind;
use crate::error::{Error, Result};

/// A multiset of incidence kinds, written `a₁I_b₁+…+a_kI_b_k`, e.g. `I6+2I8`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OperationSpec {
    /// `(kind, multiplicity)` sorted by kind, multiplicities positive.
    terms: Vec<(IncidenceKind, u8)>,
}

/// Codimension pattern of an elementary operation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OperationClass {
    /// One codimension-3 constraint.
    Single,
    /// A codimension-1 and a codimension-2 constraint.
    OnePlusTwo,
    /// Two codimension-2 constraints.
    TwoPlusTwo,
    /// Three codimension-1 constraints.
    ThreeOnes,
}

impl OperationClass {
    pub fn label(self) -> &'static str {
        match self {
            Self::Single => "3",
            Self::OnePlusTwo => "1+2",
            Self::TwoPlusTwo => "2+2",
            Self::ThreeOnes => "1+1+1",
        }
    }
}

const REJECTED: [(&[(IncidenceKind, u8)], &str); 3] = [
    (
        &[(IncidenceKind::I9, 1), (IncidenceKind::I11, 1)],
        "the fold normal must be the line direction, which is perpendicular to the plane's \
         normal only when the line is parallel to the plane, and then the offset stays free",
    ),
    (
        &[(IncidenceKind::I9, 2)],
        "the fold normal must be parallel to both lines, which happens only for parallel \
         lines, and then the offset stays free",
    ),
    (
        &[(IncidenceKind::I11, 3)],
        "a plane perpendicular to three planes exists only when two of them are parallel, \
         and then the constraints are redundant",
    ),
];

impl OperationSpec {
    /// Builds a spec from a list of kinds, repeats allowed.
    pub fn from_kinds(kinds: &[IncidenceKind]) -> Self {
        let mut sorted = kinds.to_vec();
        sorted.sort();
        let mut terms: Vec<(IncidenceKind, u8)> = Vec::new();
        for k in sorted {
            match terms.last_mut() {
                Some((last, n)) if *last == k => *n += 1,
                _ => terms.push((k, 1)),
            }
        }
        Self { terms }
    }

    pub fn terms(&self) -> &[(IncidenceKind, u8)] {
        &self.terms
    }

    /// The kinds with repetition, in ascending order.
    pub fn kinds(&self) -> Vec<IncidenceKind> {
        self.terms
            .iter()
            .flat_map(|&(k, n)| std::iter::repeat(k).take(n as usize))
            .collect()
    }

    pub fn total_codimension(&self) -> u32 {
        self.terms.iter().map(|&(k, n)| k.codimension() as u32 * n as u32).sum()
    }

    pub fn multiplicity(&self, kind: IncidenceKind) -> u8 {
        self.terms.iter().find(|t| t.0 == kind).map_or(0, |t| t.1)
    }

    /// The reason this spec is one of the rejected combinations, if it is.
    pub fn rejection(&self) -> Option<&'static str> {
        REJECTED
            .iter()
            .find(|(terms, _)| *terms == self.terms.as_slice())
            .map(|(_, why)| *why)
    }

    /// Codimension pattern, if the spec is an elementary operation (minimal
    /// with total codimension 3).
    pub fn class(&self) -> Option<OperationClass> {
        let mut codims: Vec<u8> = self.kinds().iter().map(|k| k.codimension()).collect();
        codims.sort();
        match codims.as_slice() {
            [3] => Some(OperationClass::Single),
            [1, 2] => Some(OperationClass::OnePlusTwo),
            [2, 2] => Some(OperationClass::TwoPlusTwo),
            [1, 1, 1] => Some(OperationClass::ThreeOnes),
            _ => None,
        }
    }

    /// A spec can be solved when its total codimension is at least 3 and it
    /// is not a rejected combination.
    pub fn validate(&self) -> Result<()> {
        if self.terms.is_empty() {
            return Err(Error::InvalidOperation("empty operation".into()));
        }
        if let Some(why) = self.rejection() {
            return Err(Error::InvalidOperation(format!("{self} does not define a fold: {why}")));
        }
        if self.total_codimension() < 3 {
            return Err(Error::InvalidOperation(format!(
                "{self} has total codimension {} < 3 and leaves a family of folds",
                self.total_codimension()
            )));
        }
        Ok(())
    }
}

impl fmt::Display for OperationSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (k, n)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            if *n > 1 {
                write!(f, "{n}")?;
            }
            write!(f, "{k}")?;
        }
        Ok(())
    }
}

impl FromStr for OperationSpec {
    type Err = Error;

    /// Accepts `I1`, `I5+I6`, `3I6`, `I6+2I8`; a `·` or `*` may follow the
    /// multiplicity.
    fn from_str(s: &str) -> Result<Self> {
        let mut kinds = Vec::new();
        for term in s.split('+') {
            let term = term.trim();
            let split = term.find(|c: char| !c.is_ascii_digit()).unwrap_or(term.len());
            let (count, rest) = term.split_at(split);
            let rest = rest.trim_start_matches(['·', '*', ' ']);
            let n: u8 = if count.is_empty() {
                1
            } else {
                count
                    .parse()
                    .ok()
                    .filter(|n| *n > 0)
                    .ok_or_else(|| Error::InvalidInput(format!("bad multiplicity in `{term}`")))?
            };
            let kind: IncidenceKind = rest.parse()?;
            kinds.extend(std::iter::repeat(kind).take(n as usize));
        }
        Ok(Self::from_kinds(&kinds))
    }
}

/// All elementary operations.
#[derive(Clone, Debug, PartialEq)]
pub struct Enumeration {
    pub valid: Vec<OperationSpec>,
    pub rejected: Vec<(OperationSpec, &'static str)>,
}

/// Lists every combination of incidences whose codimensions add up to 3
/// exactly without a redundant member, split into the valid operations and
/// the rejected ones.
pub fn enumerate_operations() -> Enumeration {
    let by_codim = |c: u8| -> Vec<IncidenceKind> {
        IncidenceKind::ALL.iter().copied().filter(|k| k.codimension() == c).collect()
    };
    let (ones, twos, threes) = (by_codim(1), by_codim(2), by_codim(3));
    let mut all: Vec<OperationSpec> = Vec::new();
    all.extend(threes.iter().map(|&k| OperationSpec::from_kinds(&[k])));
    for &a in &ones {
        for &b in &twos {
            all.push(OperationSpec::from_kinds(&[a, b]));
        }
    }
    for (i, &a) in twos.iter().enumerate() {
        for &b in &twos[i..] {
            all.push(OperationSpec::from_kinds(&[a, b]));
        }
    }
    for (i, &a) in ones.iter().enumerate() {
        for (j, &b) in ones.iter().enumerate().skip(i) {
            for &c in &ones[j..] {
                all.push(OperationSpec::from_kinds(&[a, b, c]));
            }
        }
    }
    let mut out = Enumeration { valid: Vec::new(), rejected: Vec::new() };
    for spec in all {
        match spec.rejection() {
            Some(why) => out.rejected.push((spec, why)),
            None => out.valid.push(spec),
        }
    }
    out
}
