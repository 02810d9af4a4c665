use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// The twelve incidence kinds. Serialized as `"I5"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum IncidenceKind {
    I1,
    I2,
    I3,
    I4,
    I5,
    I6,
    I7,
    I8,
    I9,
    I10,
    I11,
    I12,
}

impl IncidenceKind {
    pub const ALL: [IncidenceKind; 12] = [
        Self::I1,
        Self::I2,
        Self::I3,
        Self::I4,
        Self::I5,
        Self::I6,
        Self::I7,
        Self::I8,
        Self::I9,
        Self::I10,
        Self::I11,
        Self::I12,
    ];

    /// Number of degrees of freedom of the fold plane the constraint consumes.
    pub fn codimension(self) -> u8 {
        use IncidenceKind::*;
        match self {
            I1 | I2 | I4 | I12 => 3,
            I5 | I7 | I9 | I10 => 2,
            I3 | I6 | I8 | I11 => 1,
        }
    }

    /// 1-based number of the kind.
    pub fn number(self) -> u8 {
        self as u8 + 1
    }

    pub fn from_number(n: u8) -> Option<Self> {
        (1..=12).contains(&n).then(|| Self::ALL[n as usize - 1])
    }

    /// Kinds whose solution set is a 1- or 2-parameter family given directly
    /// by the referenced object.
    pub fn has_direct_family(self) -> bool {
        matches!(self, Self::I8 | Self::I9 | Self::I10 | Self::I11)
    }
}

impl fmt::Display for IncidenceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "I{}", self.number())
    }
}

impl FromStr for IncidenceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let digits = s
            .trim()
            .strip_prefix(['I', 'i'])
            .ok_or_else(|| Error::InvalidInput(format!("incidence kind `{s}` must start with `I`")))?;
        digits
            .parse::<u8>()
            .ok()
            .and_then(Self::from_number)
            .ok_or_else(|| Error::InvalidInput(format!("unknown incidence kind `{s}`")))
    }
}

impl TryFrom<String> for IncidenceKind {
    type Error = Error;

    fn try_from(s: String) -> Result<Self, Error> {
        s.parse()
    }
}

impl From<IncidenceKind> for String {
    fn from(k: IncidenceKind) -> String {
        k.to_string()
    }
}
