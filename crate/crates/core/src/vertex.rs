use std::fmt;
use std::str::FromStr;

/// A vertex of a derived embedding: a group element or a lettered vortex.
///
/// The derived ordering puts every numbered vertex before every letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexId {
    Num(u32),
    Letter(u8),
}

pub const MAX_LETTERS: u8 = 8;

impl VertexId {
    pub fn letter(c: char) -> Option<VertexId> {
        let i = (c as u32).checked_sub('a' as u32)?;
        (i < MAX_LETTERS as u32).then_some(VertexId::Letter(i as u8))
    }

    pub fn is_letter(self) -> bool {
        matches!(self, VertexId::Letter(_))
    }

    pub fn num(self) -> Option<u32> {
        match self {
            VertexId::Num(x) => Some(x),
            VertexId::Letter(_) => None,
        }
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            VertexId::Num(x) => write!(f, "{x}"),
            VertexId::Letter(i) => write!(f, "{}", (b'a' + i) as char),
        }
    }
}

impl FromStr for VertexId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Ok(x) = s.parse::<u32>() {
            return Ok(VertexId::Num(x));
        }
        let mut chars = s.chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) => VertexId::letter(c).ok_or_else(|| format!("bad vertex label {s:?}")),
            _ => Err(format!("bad vertex label {s:?}")),
        }
    }
}
