//! Parametric current graph families and the sporadic embeddings.

mod bose;
pub mod catalog;
pub mod sporadic;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::current::{CurrentGraph, End};
use crate::error::{Error, Result};
use crate::vertex::VertexId;

pub use bose::{bose_graph, bose_ladder, LadderFragment, Rung};
pub use sporadic::{sporadic, SporadicName, ALL_SPORADIC};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Case {
    C5,
    C5min,
    C6,
    C6alt,
    C8,
    C9,
    C9s1,
    C11,
    C11s1,
    C11s2,
}

pub const ALL_CASES: [Case; 10] = [
    Case::C5,
    Case::C5min,
    Case::C6,
    Case::C6alt,
    Case::C8,
    Case::C9,
    Case::C9s1,
    Case::C11,
    Case::C11s1,
    Case::C11s2,
];

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for Case {
    type Err = Error;

    fn from_str(s: &str) -> Result<Case> {
        ALL_CASES
            .iter()
            .copied()
            .find(|c| c.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Domain(format!("unknown case {s:?}")))
    }
}

impl Case {
    /// Number of vortices, so the derived graph is `K_{n+l} - K_l`.
    pub fn letters(self) -> u32 {
        match self {
            Case::C5 | Case::C5min => 2,
            Case::C6 | Case::C6alt | Case::C9s1 => 3,
            Case::C8 | Case::C11s1 | Case::C11s2 => 5,
            Case::C9 => 6,
            Case::C11 => 8,
        }
    }

    /// Group order for parameter `s`.
    pub fn modulus(self, s: u32) -> u32 {
        match self {
            Case::C9s1 | Case::C11s1 | Case::C11s2 => 12 * s + 6,
            _ => 12 * s + 3,
        }
    }

    pub fn vertices(self, s: u32) -> u32 {
        self.modulus(s) + self.letters()
    }

    /// Smallest admissible `s`, and the only one for the fixed-group cases.
    pub fn s_range(self) -> (u32, Option<u32>) {
        match self {
            Case::C5 => (0, None),
            Case::C5min => (1, None),
            Case::C6 | Case::C6alt | Case::C8 | Case::C9 => (2, None),
            Case::C11 => (3, None),
            Case::C9s1 | Case::C11s1 => (1, Some(1)),
            Case::C11s2 => (2, Some(2)),
        }
    }

    fn table(self) -> Option<&'static str> {
        match self {
            Case::C5 => None,
            Case::C5min => Some(include_str!("data/c5min.fam")),
            Case::C6 => Some(include_str!("data/c6.fam")),
            Case::C6alt => Some(include_str!("data/c6alt.fam")),
            Case::C8 => Some(include_str!("data/c8.fam")),
            Case::C9 => Some(include_str!("data/c9.fam")),
            Case::C9s1 => Some(include_str!("data/c9s1.fam")),
            Case::C11 => Some(include_str!("data/c11.fam")),
            Case::C11s1 => Some(include_str!("data/c11s1.fam")),
            Case::C11s2 => Some(include_str!("data/c11s2.fam")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FamilyParams {
    pub case: Case,
    pub s: u32,
}

impl FamilyParams {
    pub fn new(case: Case, s: u32) -> Result<Self> {
        let (lo, hi) = case.s_range();
        if s < lo || hi.is_some_and(|h| s != h) {
            let range = match hi {
                Some(h) => format!("s={h}"),
                None => format!("s>={lo}"),
            };
            return Err(Error::Domain(format!("{case} is defined for {range}, got s={s}")));
        }
        Ok(FamilyParams { case, s })
    }
}

/// `a*s + b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Affine {
    a: i64,
    b: i64,
}

impl Affine {
    fn at(self, s: u32, n: u32) -> u32 {
        (self.a * s as i64 + self.b).rem_euclid(n as i64) as u32
    }
}

impl FromStr for Affine {
    type Err = String;

    fn from_str(t: &str) -> std::result::Result<Affine, String> {
        let bad = || format!("bad affine value {t:?}");
        match t.split_once('s') {
            None => Ok(Affine {
                a: 0,
                b: t.parse().map_err(|_| bad())?,
            }),
            Some((a, b)) => Ok(Affine {
                a: a.parse().map_err(|_| bad())?,
                b: if b.is_empty() { 0 } else { b.parse().map_err(|_| bad())? },
            }),
        }
    }
}

#[derive(Clone, Copy, Debug)]
enum TableEnd {
    Arc(End),
    Port(usize),
}

/// A fixed portion: nodes and arcs with currents affine in `s`, plus the
/// ports where the ladder's rails enter it.
#[derive(Clone, Debug)]
struct Table {
    mirror: bool,
    nodes: Vec<(Vec<TableEnd>, Option<VertexId>)>,
    arcs: Vec<Affine>,
    ports: Vec<Affine>,
}

fn parse_table(text: &str) -> Table {
    let mut t = Table {
        mirror: false,
        nodes: Vec::new(),
        arcs: Vec::new(),
        ports: Vec::new(),
    };
    for line in text.lines().filter(|l| !l.trim().is_empty()) {
        let mut w = line.split_whitespace();
        let kind = w.next().unwrap();
        if kind == "family" {
            t.mirror = line.contains("mirror=1");
            continue;
        }
        let id: usize = w.next().unwrap().parse().unwrap();
        let fields: BTreeMap<&str, &str> = w.map(|f| f.split_once('=').unwrap()).collect();
        match kind {
            "node" => {
                assert_eq!(id, t.nodes.len());
                let rot = fields["rot"]
                    .split(',')
                    .map(|e| match e.as_bytes()[0] {
                        b'p' => TableEnd::Port(e[1..].parse().unwrap()),
                        b'+' => TableEnd::Arc(End::tail(e[1..].parse().unwrap())),
                        _ => TableEnd::Arc(End::head(e[1..].parse().unwrap())),
                    })
                    .collect();
                let vortex = fields.get("vortex").map(|v| v.parse().unwrap());
                t.nodes.push((rot, vortex));
            }
            "arc" => {
                assert_eq!(id, t.arcs.len());
                t.arcs.push(fields["current"].parse().unwrap());
            }
            "port" => {
                assert_eq!(id, t.ports.len());
                t.ports.push(fields["current"].parse().unwrap());
            }
            _ => panic!("unknown record in family table: {line}"),
        }
    }
    t
}

/// Joins a fixed portion to the part of the ladder between its ports.
/// The ports name rail currents, which fixes where the ladder is cut.
fn join_with_ladder(table: &Table, s: u32) -> Result<CurrentGraph> {
    let n = 12 * s + 3;
    let lay = bose::bose_layout(s, table.mirror);
    let big_n = lay.rails;
    let ring: Vec<u32> = (0..2 * big_n).map(|i| lay.graph.arcs()[i].current).collect();
    let mut pos = Vec::new();
    for p in &table.ports {
        let c = p.at(s, n);
        let hits: Vec<usize> = (0..2 * big_n).filter(|&i| ring[i] == c).collect();
        match hits[..] {
            [i] => pos.push(i),
            _ => return Err(Error::Domain(format!("s={s}: no unique rail carries port current {c}"))),
        }
    }
    let mut top: Vec<usize> = pos.iter().copied().filter(|&i| i < big_n).collect();
    let mut bottom: Vec<usize> = pos.iter().copied().filter(|&i| i >= big_n).collect();
    top.sort();
    bottom.sort();
    if top.len() != 2 || bottom != [top[0] + big_n, top[1] + big_n] || top[0] >= top[1] {
        return Err(Error::Domain(format!(
            "s={s}: ports {pos:?} do not cut the ladder in one piece"
        )));
    }
    let (lo, hi) = (top[0], top[1]);
    let mut kept_nodes = Vec::new();
    for i in lo + 1..=hi {
        kept_nodes.push(i);
        kept_nodes.push(i + big_n);
        if let Some((t, b)) = lay.bubble[i] {
            kept_nodes.push(t);
            kept_nodes.push(b);
        }
    }
    kept_nodes.sort();
    let fp = table.nodes.len();
    let node_id: BTreeMap<usize, usize> = kept_nodes.iter().enumerate().map(|(k, &v)| (v, fp + k)).collect();
    let g = &lay.graph;
    let mut currents: Vec<u32> = table.arcs.iter().map(|a| a.at(s, n)).collect();
    let mut arc_id = BTreeMap::new();
    for &i in &pos {
        arc_id.insert(i, currents.len());
        currents.push(ring[i]);
    }
    for (a, arc) in g.arcs().iter().enumerate() {
        if !arc_id.contains_key(&a) && node_id.contains_key(&arc.tail) && node_id.contains_key(&arc.head) {
            arc_id.insert(a, currents.len());
            currents.push(arc.current);
        }
    }
    let mut rots: Vec<(Vec<End>, Option<VertexId>)> = Vec::new();
    for (rot, vortex) in &table.nodes {
        let ends = rot
            .iter()
            .map(|e| match *e {
                TableEnd::Arc(e) => e,
                TableEnd::Port(p) => {
                    let i = pos[p];
                    let a = arc_id[&i];
                    if i == lo || i == lo + big_n {
                        End::tail(a)
                    } else {
                        End::head(a)
                    }
                }
            })
            .collect();
        rots.push((ends, *vortex));
    }
    for &v in &kept_nodes {
        let nd = &g.nodes()[v];
        let ends = nd
            .rot
            .iter()
            .map(|e| End {
                arc: arc_id[&e.arc],
                head: e.head,
            })
            .collect();
        rots.push((ends, nd.vortex));
    }
    CurrentGraph::from_rotations(n, rots, currents)
}

fn fixed_graph(table: &Table, modulus: u32) -> Result<CurrentGraph> {
    if table.nodes.is_empty() {
        return Err(Error::Unsupported(format!("no table for Z_{modulus}")));
    }
    let currents = table.arcs.iter().map(|a| a.at(0, modulus)).collect();
    let rots = table
        .nodes
        .iter()
        .map(|(rot, v)| {
            let ends = rot
                .iter()
                .map(|e| match e {
                    TableEnd::Arc(e) => *e,
                    TableEnd::Port(_) => unreachable!("fixed graphs have no ports"),
                })
                .collect();
            (ends, *v)
        })
        .collect();
    CurrentGraph::from_rotations(modulus, rots, currents)
}

/// Builds the family member; aborts with the principle report when the
/// result fails any construction principle.
pub fn build(params: FamilyParams) -> Result<CurrentGraph> {
    let FamilyParams { case, s } = params;
    FamilyParams::new(case, s)?;
    let g = match case.table() {
        None => bose_graph(s),
        Some(text) => {
            let table = parse_table(text);
            if table.ports.is_empty() {
                fixed_graph(&table, case.modulus(s))?
            } else {
                join_with_ladder(&table, s)?
            }
        }
    };
    let rep = g.verify_principles();
    if !rep.passes() {
        return Err(Error::Principles(format!(
            "{case} s={s}: {}",
            rep.to_string().trim_end().replace('\n', "; ")
        )));
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn affine_values() {
        let a: Affine = "6s-4".parse().unwrap();
        assert_eq!(a.at(2, 27), 8);
        let b: Affine = "-7".parse().unwrap();
        assert_eq!(b.at(2, 27), 20);
        let c: Affine = "12s".parse().unwrap();
        assert_eq!(c.at(3, 39), 36);
    }

    #[test]
    fn ranges() {
        assert!(FamilyParams::new(Case::C11, 2).is_err());
        assert!(FamilyParams::new(Case::C11s2, 2).is_ok());
        assert!(FamilyParams::new(Case::C11s1, 2).is_err());
        assert_eq!("c8".parse::<Case>().unwrap(), Case::C8);
    }
}

#[cfg(test)]
mod family_sweep {
    use super::*;
    use crate::current::derive_embedding;
    use crate::embedding::{analyze, deficit, DeficitShape};

    #[test]
    fn small_sweep() {
        for case in [
            Case::C5,
            Case::C5min,
            Case::C6,
            Case::C6alt,
            Case::C8,
            Case::C9,
            Case::C11,
            Case::C11s1,
            Case::C11s2,
        ] {
            let (lo, hi) = case.s_range();
            let lo = if case == Case::C5min { 2 } else { lo };
            for s in lo..=hi.unwrap_or(lo + 1) {
                let g = build(FamilyParams::new(case, s).unwrap()).unwrap_or_else(|e| panic!("{case} {s}: {e}"));
                let rot = derive_embedding(&g).unwrap();
                let sum = analyze(&rot).unwrap();
                assert!(sum.triangular, "{case} {s}");
                let d = deficit(&rot);
                let l = case.letters();
                let want = if l == 2 {
                    DeficitShape::K2
                } else if l == 3 {
                    DeficitShape::K3
                } else {
                    DeficitShape::K(l as u8)
                };
                assert_eq!(d.shape, want, "{case} {s}");
                assert_eq!(sum.v as u32, case.vertices(s));
            }
        }
    }

    fn ladders(case: Case, s: u32) -> Vec<crate::current::LadderSpec> {
        crate::current::find_ladders(&build(FamilyParams::new(case, s).unwrap()).unwrap())
    }

    #[test]
    fn unmodified_case5_has_no_ladder() {
        for s in 0..4 {
            assert!(ladders(Case::C5, s).is_empty(), "s={s}");
        }
    }

    #[test]
    fn ladder_families_have_ladders() {
        for (case, s) in [
            (Case::C5min, 2),
            (Case::C5min, 3),
            (Case::C6, 2),
            (Case::C6, 3),
            (Case::C8, 2),
            (Case::C9, 2),
            (Case::C11, 3),
            (Case::C11, 4),
            (Case::C11s2, 2),
        ] {
            assert!(!ladders(case, s).is_empty(), "{case} s={s}");
        }
    }

    #[test]
    fn case11_ladder_rungs() {
        let found = ladders(Case::C11, 3);
        assert!(found
            .iter()
            .any(|l| [l.entries[1], l.entries[3], l.entries[5]] == [9, 12, 15] && l.h == 3));
    }
}
