use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::vertex::VertexId;

/// Per-vertex cyclic neighbor orders; the only representation of an embedding.
///
/// Rows are stored in canonical phase (starting at the least neighbor), so
/// equality of two systems is equality up to cyclic shift of every row.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RotationSystem {
    modulus: u32,
    rows: BTreeMap<VertexId, Vec<VertexId>>,
}

pub(crate) fn canonical_row(row: &[VertexId]) -> Vec<VertexId> {
    let Some(start) = row.iter().enumerate().min_by_key(|(_, v)| **v).map(|(i, _)| i) else {
        return Vec::new();
    };
    row[start..].iter().chain(&row[..start]).copied().collect()
}

impl RotationSystem {
    /// Builds and validates a rotation system.
    pub fn new(modulus: u32, rows: BTreeMap<VertexId, Vec<VertexId>>) -> Result<Self> {
        let rot = Self::from_rows_unchecked(modulus, rows);
        rot.validate()?;
        Ok(rot)
    }

    /// Builds without validation; `validate` reports the first violated invariant.
    pub fn from_rows_unchecked(modulus: u32, rows: BTreeMap<VertexId, Vec<VertexId>>) -> Self {
        let rows = rows.into_iter().map(|(v, r)| (v, canonical_row(&r))).collect();
        RotationSystem { modulus, rows }
    }

    pub fn from_pairs<I>(modulus: u32, rows: I) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, Vec<VertexId>)>,
    {
        Self::new(modulus, rows.into_iter().collect())
    }

    pub fn validate(&self) -> Result<()> {
        if self.rows.is_empty() {
            return Err(Error::Structure("empty graph".into()));
        }
        for (&v, row) in &self.rows {
            if row.is_empty() {
                return Err(Error::Structure(format!("vertex {v} has an empty row")));
            }
            let mut seen = BTreeSet::new();
            for &w in row {
                if w == v {
                    return Err(Error::Structure(format!("loop at {v}")));
                }
                if !seen.insert(w) {
                    return Err(Error::Structure(format!("{w} repeated in row {v}")));
                }
                if let (VertexId::Num(x), m) = (v, self.modulus) {
                    if m > 0 && x >= m {
                        return Err(Error::Structure(format!("vertex {x} outside modulus {m}")));
                    }
                }
                match self.rows.get(&w) {
                    None => return Err(Error::Structure(format!("{w} appears in row {v} but has no row"))),
                    Some(other) if !other.contains(&v) => return Err(Error::Asymmetric(w, v)),
                    _ => {}
                }
            }
        }
        let start = *self.rows.keys().next().unwrap();
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &w in &self.rows[&v] {
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        if seen.len() != self.rows.len() {
            return Err(Error::Structure("graph is disconnected".into()));
        }
        Ok(())
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn rows(&self) -> &BTreeMap<VertexId, Vec<VertexId>> {
        &self.rows
    }

    pub fn into_rows(self) -> BTreeMap<VertexId, Vec<VertexId>> {
        self.rows
    }

    pub fn row(&self, v: VertexId) -> Option<&[VertexId]> {
        self.rows.get(&v).map(Vec::as_slice)
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.rows.keys().copied()
    }

    pub fn vertex_count(&self) -> usize {
        self.rows.len()
    }

    pub fn letter_count(&self) -> usize {
        self.rows.keys().filter(|v| v.is_letter()).count()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.rows.get(&u).is_some_and(|r| r.contains(&v))
    }

    pub fn edge_count(&self) -> usize {
        self.rows.values().map(Vec::len).sum::<usize>() / 2
    }

    /// Undirected edges as ordered pairs `(u, v)` with `u < v`.
    pub fn edges(&self) -> BTreeSet<(VertexId, VertexId)> {
        let mut out = BTreeSet::new();
        for (&v, row) in &self.rows {
            for &w in row {
                if v < w {
                    out.insert((v, w));
                }
            }
        }
        out
    }

    /// Successor of `w` in the cyclic row of `v`.
    pub fn succ(&self, v: VertexId, w: VertexId) -> Option<VertexId> {
        let row = self.rows.get(&v)?;
        let i = row.iter().position(|&x| x == w)?;
        Some(row[(i + 1) % row.len()])
    }

    /// Predecessor of `w` in the cyclic row of `v`.
    pub fn pred(&self, v: VertexId, w: VertexId) -> Option<VertexId> {
        let row = self.rows.get(&v)?;
        let i = row.iter().position(|&x| x == w)?;
        Some(row[(i + row.len() - 1) % row.len()])
    }

    /// Rows keyed by vertex with neighbor positions, for repeated lookups.
    pub(crate) fn position_index(&self) -> HashMap<(VertexId, VertexId), usize> {
        let mut idx = HashMap::with_capacity(self.edge_count() * 2);
        for (&v, row) in &self.rows {
            for (i, &w) in row.iter().enumerate() {
                idx.insert((v, w), i);
            }
        }
        idx
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "rotation modulus={} letters={}", self.modulus, self.letter_count());
        for (v, row) in &self.rows {
            let _ = write!(out, "{v}.");
            for w in row {
                let _ = write!(out, " {w}");
            }
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "empty input".into(),
        })?;
        let mut modulus = None;
        let mut letters = None;
        let mut words = header.split_whitespace();
        if words.next() != Some("rotation") {
            return Err(Error::Parse {
                line: 1,
                msg: "expected `rotation` header".into(),
            });
        }
        for w in words {
            let (k, val) = w.split_once('=').ok_or(Error::Parse {
                line: 1,
                msg: format!("bad field {w:?}"),
            })?;
            let val: u32 = val.parse().map_err(|_| Error::Parse {
                line: 1,
                msg: format!("bad number in {w:?}"),
            })?;
            match k {
                "modulus" => modulus = Some(val),
                "letters" => letters = Some(val),
                _ => {
                    return Err(Error::Parse {
                        line: 1,
                        msg: format!("unknown field {k:?}"),
                    })
                }
            }
        }
        let modulus = modulus.ok_or(Error::Parse {
            line: 1,
            msg: "missing modulus".into(),
        })?;
        let mut rows = BTreeMap::new();
        for (i, line) in lines {
            let lineno = i + 1;
            let (label, rest) = line.split_once('.').ok_or(Error::Parse {
                line: lineno,
                msg: "expected `<label>.`".into(),
            })?;
            let v: VertexId = label.trim().parse().map_err(|msg| Error::Parse { line: lineno, msg })?;
            let row = rest
                .split_whitespace()
                .map(|t| t.parse::<VertexId>().map_err(|msg| Error::Parse { line: lineno, msg }))
                .collect::<Result<Vec<_>>>()?;
            if rows.insert(v, row).is_some() {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("duplicate row for {v}"),
                });
            }
        }
        let rot = Self::from_rows_unchecked(modulus, rows);
        if let Some(l) = letters {
            if l as usize != rot.letter_count() {
                return Err(Error::Parse {
                    line: 1,
                    msg: format!("header declares {l} letters, found {}", rot.letter_count()),
                });
            }
        }
        Ok(rot)
    }

    /// A copy with the given rows replaced (and canonicalized).
    pub(crate) fn with_rows(&self, changes: impl IntoIterator<Item = (VertexId, Vec<VertexId>)>) -> Self {
        let mut rows = self.rows.clone();
        for (v, r) in changes {
            if r.is_empty() {
                rows.remove(&v);
            } else {
                rows.insert(v, canonical_row(&r));
            }
        }
        RotationSystem {
            modulus: self.modulus,
            rows,
        }
    }
}

/// Parses a compact table such as `"0: 1 2 3\n1: 0 3 2"` into rows.
pub fn rows_from_table(table: &str) -> BTreeMap<VertexId, Vec<VertexId>> {
    let mut rows = BTreeMap::new();
    for line in table.lines().map(str::trim).filter(|l| !l.is_empty()) {
        let (label, rest) = line.split_once([':', '.']).expect("row label");
        let v: VertexId = label.trim().parse().expect("vertex label");
        let row = rest.split_whitespace().map(|t| t.parse().expect("neighbor")).collect();
        rows.insert(v, row);
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(x: u32) -> VertexId {
        VertexId::Num(x)
    }

    #[test]
    fn canonical_phase_and_roundtrip() {
        let rot = RotationSystem::new(0, rows_from_table("0: 2 1\n1: 0 2\n2: 1 0")).unwrap();
        assert_eq!(rot.row(n(0)).unwrap(), &[n(1), n(2)]);
        let text = rot.to_text();
        assert_eq!(text, "rotation modulus=0 letters=0\n0. 1 2\n1. 0 2\n2. 0 1\n");
        assert_eq!(RotationSystem::parse(&text).unwrap().to_text(), text);
    }

    #[test]
    fn asymmetric_rows_are_named() {
        let rot = RotationSystem::from_rows_unchecked(0, rows_from_table("0: 1 2\n1: 0\n2: 1"));
        let err = rot.validate().unwrap_err();
        assert!(matches!(err, Error::Asymmetric(..)), "{err}");
    }

    #[test]
    fn empty_rejected_digon_accepted() {
        assert!(RotationSystem::new(0, BTreeMap::new()).is_err());
        assert!(RotationSystem::new(0, rows_from_table("0: 1\n1: 0")).is_ok());
    }

    #[test]
    fn letters_in_header() {
        let text = "rotation modulus=3 letters=1\n0. 1 a 2\n1. 2 a 0\n2. 0 a 1\na. 0 1 2\n";
        let rot = RotationSystem::parse(text).unwrap();
        assert_eq!(rot.letter_count(), 1);
        let bad = text.replace("letters=1", "letters=2");
        assert!(RotationSystem::parse(&bad).is_err());
    }
}
