//! Index 3 current graphs over cyclic groups: circuits, logs, the
//! construction principles and the derived triangular embedding.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};

use crate::error::{Error, Result};
use crate::rotation::RotationSystem;
use crate::vertex::VertexId;

/// One end of an arc: its tail (`head == false`) or its head.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct End {
    pub arc: usize,
    pub head: bool,
}

impl End {
    pub fn tail(arc: usize) -> End {
        End { arc, head: false }
    }

    pub fn head(arc: usize) -> End {
        End { arc, head: true }
    }

    pub fn other(self) -> End {
        End {
            arc: self.arc,
            head: !self.head,
        }
    }
}

impl fmt::Display for End {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", if self.head { '-' } else { '+' }, self.arc)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    /// Cyclic order of incident arc ends.
    pub rot: Vec<End>,
    pub vortex: Option<VertexId>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Arc {
    pub tail: usize,
    pub head: usize,
    /// Element of Z_modulus; 0 marks an unassigned current in a skeleton.
    pub current: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurrentGraph {
    modulus: u32,
    nodes: Vec<Node>,
    arcs: Vec<Arc>,
    /// The traversal whose circuit is labelled [0].
    anchor: Traversal,
}

/// Traversal of an arc, along its orientation when `forward`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Traversal {
    pub arc: usize,
    pub forward: bool,
}

impl Traversal {
    fn leaving(self) -> End {
        End {
            arc: self.arc,
            head: !self.forward,
        }
    }

    fn arriving(self) -> End {
        End {
            arc: self.arc,
            head: self.forward,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    pub walk: Vec<Traversal>,
}

/// Log of a circuit: group elements and vortex letters in traversal order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircuitLog {
    pub index: usize,
    pub entries: Vec<VertexId>,
}

impl fmt::Display for CircuitLog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}].", self.index)?;
        for e in &self.entries {
            write!(f, " {e}")?;
        }
        Ok(())
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl CurrentGraph {
    /// Assembles a graph from node rotations and arcs, checking that every
    /// end appears exactly once, at the node the arc names.
    pub fn new(modulus: u32, nodes: Vec<Node>, arcs: Vec<Arc>) -> Result<Self> {
        if modulus == 0 || !modulus.is_multiple_of(3) {
            return Err(Error::Structure(format!(
                "modulus {modulus} is not a positive multiple of 3"
            )));
        }
        let mut seen = BTreeSet::new();
        for (id, node) in nodes.iter().enumerate() {
            if node.rot.is_empty() {
                return Err(Error::Structure(format!("node {id} has no arc ends")));
            }
            if let Some(v) = node.vortex {
                if !v.is_letter() {
                    return Err(Error::Structure(format!("vortex label of node {id} is not a letter")));
                }
            }
            for &e in &node.rot {
                let arc = arcs
                    .get(e.arc)
                    .ok_or_else(|| Error::Structure(format!("node {id} names missing arc {}", e.arc)))?;
                let at = if e.head { arc.head } else { arc.tail };
                if at != id {
                    return Err(Error::Structure(format!(
                        "end {e} listed at node {id} but the arc puts it at {at}"
                    )));
                }
                if !seen.insert(e) {
                    return Err(Error::Structure(format!("end {e} listed twice")));
                }
            }
        }
        if seen.len() != 2 * arcs.len() {
            return Err(Error::Structure(format!(
                "{} arc ends placed, expected {}",
                seen.len(),
                2 * arcs.len()
            )));
        }
        for (a, arc) in arcs.iter().enumerate() {
            if arc.current >= modulus {
                return Err(Error::Structure(format!(
                    "current {} on arc {a} outside Z_{modulus}",
                    arc.current
                )));
            }
        }
        let mut letters = BTreeSet::new();
        for n in &nodes {
            if let Some(v) = n.vortex {
                if !letters.insert(v) {
                    return Err(Error::Structure(format!("vortex letter {v} used twice")));
                }
            }
        }
        Ok(CurrentGraph {
            modulus,
            nodes,
            arcs,
            anchor: Traversal { arc: 0, forward: true },
        })
    }

    /// Builds from rotations alone; arc endpoints are read off the rotations.
    pub fn from_rotations(modulus: u32, rots: Vec<(Vec<End>, Option<VertexId>)>, currents: Vec<u32>) -> Result<Self> {
        let mut arcs = vec![
            Arc {
                tail: usize::MAX,
                head: usize::MAX,
                current: 0
            };
            currents.len()
        ];
        for (a, c) in currents.into_iter().enumerate() {
            arcs[a].current = c;
        }
        for (id, (rot, _)) in rots.iter().enumerate() {
            for e in rot {
                let arc = arcs
                    .get_mut(e.arc)
                    .ok_or_else(|| Error::Structure(format!("node {id} names missing arc {}", e.arc)))?;
                let slot = if e.head { &mut arc.head } else { &mut arc.tail };
                if *slot != usize::MAX {
                    return Err(Error::Structure(format!("end {e} listed twice")));
                }
                *slot = id;
            }
        }
        if let Some(a) = arcs.iter().position(|a| a.tail == usize::MAX || a.head == usize::MAX) {
            return Err(Error::Structure(format!("arc {a} has a dangling end")));
        }
        let nodes = rots.into_iter().map(|(rot, vortex)| Node { rot, vortex }).collect();
        Self::new(modulus, nodes, arcs)
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn anchor(&self) -> Traversal {
        self.anchor
    }

    /// Labels the circuit containing `t` as [0]. Any two of the three
    /// labelings allowed by the residue rule differ by a translation of the
    /// derived embedding.
    pub fn with_anchor(mut self, t: Traversal) -> Result<Self> {
        if t.arc >= self.arcs.len() {
            return Err(Error::Structure(format!("anchor names missing arc {}", t.arc)));
        }
        self.anchor = t;
        Ok(self)
    }

    pub fn letters(&self) -> Vec<VertexId> {
        let mut l: Vec<_> = self.nodes.iter().filter_map(|n| n.vortex).collect();
        l.sort();
        l
    }

    pub fn with_currents(&self, currents: &[u32]) -> Result<Self> {
        if currents.len() != self.arcs.len() {
            return Err(Error::Structure("one current per arc required".into()));
        }
        let mut g = self.clone();
        for (a, &c) in g.arcs.iter_mut().zip(currents) {
            a.current = c % self.modulus;
        }
        Ok(g)
    }

    /// Reverses every arc and negates its current.
    pub fn reversed(&self) -> Self {
        let n = self.modulus;
        let arcs = self
            .arcs
            .iter()
            .map(|a| Arc {
                tail: a.head,
                head: a.tail,
                current: (n - a.current) % n,
            })
            .collect();
        let nodes = self
            .nodes
            .iter()
            .map(|nd| Node {
                rot: nd.rot.iter().map(|e| e.other()).collect(),
                vortex: nd.vortex,
            })
            .collect();
        let anchor = Traversal {
            arc: self.anchor.arc,
            forward: !self.anchor.forward,
        };
        CurrentGraph {
            modulus: n,
            nodes,
            arcs,
            anchor,
        }
    }

    fn node_of(&self, e: End) -> usize {
        let a = &self.arcs[e.arc];
        if e.head {
            a.head
        } else {
            a.tail
        }
    }

    /// Signed value recorded by a traversal.
    pub fn recorded(&self, t: Traversal) -> u32 {
        let c = self.arcs[t.arc].current;
        if t.forward {
            c
        } else {
            (self.modulus - c) % self.modulus
        }
    }

    /// Net current into each node (inflow minus outflow).
    pub fn excess(&self) -> Vec<u32> {
        let n = self.modulus as u64;
        let mut ex = vec![0u64; self.nodes.len()];
        for a in &self.arcs {
            ex[a.head] = (ex[a.head] + a.current as u64) % n;
            ex[a.tail] = (ex[a.tail] + n - a.current as u64) % n;
        }
        ex.into_iter().map(|x| x as u32).collect()
    }

    /// Face boundary walks. Arriving at a node through an end, the walk
    /// leaves through the end preceding it in that node's rotation.
    pub fn trace_circuits(&self) -> Vec<Circuit> {
        let mut pred = BTreeMap::new();
        for nd in &self.nodes {
            let k = nd.rot.len();
            for (i, &e) in nd.rot.iter().enumerate() {
                pred.insert(e, nd.rot[(i + k - 1) % k]);
            }
        }
        let mut used = BTreeSet::new();
        let mut out = Vec::new();
        for arc in 0..self.arcs.len() {
            for forward in [true, false] {
                let start = Traversal { arc, forward };
                if used.contains(&start) {
                    continue;
                }
                let mut walk = Vec::new();
                let mut cur = start;
                while used.insert(cur) {
                    walk.push(cur);
                    let out_end = pred[&cur.arriving()];
                    cur = Traversal {
                        arc: out_end.arc,
                        forward: !out_end.head,
                    };
                }
                out.push(Circuit { walk });
            }
        }
        out
    }

    /// Raw log of one circuit walk.
    fn raw_log(&self, walk: &[Traversal]) -> Vec<VertexId> {
        let n = self.modulus;
        let mut out = Vec::with_capacity(walk.len());
        for &t in walk {
            let c = self.arcs[t.arc].current;
            let from = self.node_of(t.leaving());
            if self.nodes[from].rot.len() == 1 && (2 * c as u64).is_multiple_of(n as u64) {
                continue;
            }
            out.push(VertexId::Num(self.recorded(t)));
            if let Some(l) = self.nodes[self.node_of(t.arriving())].vortex {
                out.push(l);
            }
        }
        out
    }

    /// Labels satisfying the residue rule, with the anchor traversal in
    /// circuit [0]. `None` if there are not three circuits or no
    /// labeling is consistent.
    pub fn circuit_labels(&self, circuits: &[Circuit]) -> Option<[usize; 3]> {
        if circuits.len() != 3 || self.arcs.is_empty() {
            return None;
        }
        let mut which = BTreeMap::new();
        for (ci, c) in circuits.iter().enumerate() {
            for &t in &c.walk {
                which.insert(t, ci);
            }
        }
        let c0 = which[&self.anchor];
        let others: Vec<usize> = (0..3).filter(|&c| c != c0).collect();
        for (l1, l2) in [(1, 2), (2, 1)] {
            let mut lab = [0usize; 3];
            lab[others[0]] = l1;
            lab[others[1]] = l2;
            let ok = (0..self.arcs.len()).all(|a| {
                let fa = lab[which[&Traversal { arc: a, forward: true }]] as u64;
                let ba = lab[which[&Traversal { arc: a, forward: false }]] as u64;
                (self.arcs[a].current as u64 + fa + 3 - ba).is_multiple_of(3)
            });
            if ok {
                lab[c0] = 0;
                return Some(lab);
            }
        }
        None
    }

    /// Logs in label order `[0], [1], [2]`; `None` when no labeling exists.
    pub fn circuit_logs(&self) -> Option<[CircuitLog; 3]> {
        let circuits = self.trace_circuits();
        let lab = self.circuit_labels(&circuits)?;
        let mut logs: [CircuitLog; 3] = std::array::from_fn(|i| CircuitLog {
            index: i,
            entries: Vec::new(),
        });
        for (ci, c) in circuits.iter().enumerate() {
            logs[lab[ci]].entries = self.raw_log(&c.walk);
        }
        Some(logs)
    }

    pub fn verify_principles(&self) -> PrincipleReport {
        let n = self.modulus;
        let mut rep = PrincipleReport::default();
        for (id, nd) in self.nodes.iter().enumerate() {
            let d = nd.rot.len();
            if d != 1 && d != 3 {
                rep.push(Principle::E1, format!("node {id} has degree {d}"));
            }
            if nd.vortex.is_some() && d != 3 {
                rep.push(Principle::E1, format!("vortex node {id} has degree {d}"));
            }
        }
        if let Some(a) = self.arcs.iter().position(|a| a.current == 0) {
            rep.push(Principle::E3, format!("arc {a} carries current 0"));
        }
        let circuits = self.trace_circuits();
        if circuits.len() != 3 {
            rep.push(Principle::E2, format!("{} circuits", circuits.len()));
        }
        let labels = self.circuit_labels(&circuits);
        if circuits.len() == 3 && labels.is_none() {
            rep.push(Principle::E6, "no circuit labeling satisfies the residue rule".into());
        }
        let ex = self.excess();
        for (id, nd) in self.nodes.iter().enumerate() {
            if nd.rot.len() == 3 && nd.vortex.is_none() && ex[id] != 0 {
                rep.push(Principle::E4, format!("node {id} has excess {}", ex[id]));
            }
        }
        for (id, nd) in self.nodes.iter().enumerate() {
            if nd.rot.len() != 1 {
                continue;
            }
            let c = self.arcs[nd.rot[0].arc].current as u64;
            if !(2 * c).is_multiple_of(n as u64) && !(3 * c).is_multiple_of(n as u64) {
                rep.push(
                    Principle::E7,
                    format!("leaf {id} current {c} has order other than 2 or 3"),
                );
            }
        }
        if let Some(lab) = labels {
            let mut logs: [Vec<VertexId>; 3] = Default::default();
            for (ci, c) in circuits.iter().enumerate() {
                logs[lab[ci]] = self.raw_log(&c.walk);
            }
            for (i, log) in logs.iter().enumerate() {
                let mut count = vec![0u32; n as usize];
                for e in log {
                    if let VertexId::Num(x) = *e {
                        count[x as usize] += 1;
                    }
                }
                for (x, &k) in count.iter().enumerate().skip(1) {
                    if k != 1 {
                        rep.push(Principle::E3, format!("log [{i}] contains {x} {k} times"));
                    }
                }
            }
            for (id, nd) in self.nodes.iter().enumerate() {
                let Some(l) = nd.vortex else { continue };
                for (i, log) in logs.iter().enumerate() {
                    if !log.contains(&l) {
                        rep.push(Principle::E5, format!("vortex {l} (node {id}) misses circuit [{i}]"));
                    }
                }
                if gcd(ex[id] as u64, n as u64) != 3 {
                    rep.push(
                        Principle::E5,
                        format!("vortex {l} excess {} does not generate the multiples of 3", ex[id]),
                    );
                }
            }
        }
        rep
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = write!(out, "currentgraph modulus={}", self.modulus);
        if self.anchor != (Traversal { arc: 0, forward: true }) {
            let _ = write!(
                out,
                " anchor={}{}",
                if self.anchor.forward { '+' } else { '-' },
                self.anchor.arc
            );
        }
        out.push('\n');
        for (id, nd) in self.nodes.iter().enumerate() {
            let rot: Vec<String> = nd.rot.iter().map(End::to_string).collect();
            let _ = write!(out, "node {id} rot={}", rot.join(","));
            if let Some(v) = nd.vortex {
                let _ = write!(out, " vortex={v}");
            }
            out.push('\n');
        }
        for (a, arc) in self.arcs.iter().enumerate() {
            let slot = |node: usize, e: End| self.nodes[node].rot.iter().position(|&x| x == e).unwrap();
            let cur = if arc.current == 0 {
                "?".to_string()
            } else {
                arc.current.to_string()
            };
            let _ = writeln!(
                out,
                "arc {a} tail={}.{} head={}.{} current={cur}",
                arc.tail,
                slot(arc.tail, End::tail(a)),
                arc.head,
                slot(arc.head, End::head(a))
            );
        }
        out
    }

    /// Reads the text format; `current=?` is accepted and stored as 0.
    pub fn parse(text: &str) -> Result<Self> {
        let perr = |line: usize, msg: String| Error::Parse { line, msg };
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or_else(|| perr(1, "empty input".into()))?;
        let mut hw = header.split_whitespace();
        let bad_header = || perr(1, "expected `currentgraph modulus=<3m> [anchor=+a|-a]`".into());
        if hw.next() != Some("currentgraph") {
            return Err(bad_header());
        }
        let modulus = hw
            .next()
            .and_then(|w| w.strip_prefix("modulus="))
            .and_then(|m| m.parse::<u32>().ok())
            .ok_or_else(bad_header)?;
        let anchor = match hw.next() {
            None => Traversal { arc: 0, forward: true },
            Some(w) => {
                let e = w.strip_prefix("anchor=").and_then(parse_end).ok_or_else(bad_header)?;
                Traversal {
                    arc: e.arc,
                    forward: !e.head,
                }
            }
        };
        let mut nodes: Vec<Node> = Vec::new();
        let mut arcs: Vec<(Arc, usize, usize)> = Vec::new();
        for (i, line) in lines {
            let ln = i + 1;
            let mut words = line.split_whitespace();
            let kind = words.next().unwrap();
            let id: usize = words
                .next()
                .and_then(|w| w.parse().ok())
                .ok_or_else(|| perr(ln, "missing id".into()))?;
            let fields: BTreeMap<&str, &str> = words
                .map(|w| w.split_once('=').ok_or_else(|| perr(ln, format!("bad field {w:?}"))))
                .collect::<Result<_>>()?;
            match kind {
                "node" => {
                    if id != nodes.len() {
                        return Err(perr(ln, format!("node {id} out of order")));
                    }
                    let rot = fields
                        .get("rot")
                        .ok_or_else(|| perr(ln, "missing rot".into()))?
                        .split(',')
                        .map(|t| parse_end(t).ok_or_else(|| perr(ln, format!("bad end {t:?}"))))
                        .collect::<Result<Vec<_>>>()?;
                    let vortex = match fields.get("vortex") {
                        Some(v) => Some(
                            v.parse::<VertexId>()
                                .ok()
                                .filter(|v| v.is_letter())
                                .ok_or_else(|| perr(ln, format!("bad vortex {v:?}")))?,
                        ),
                        None => None,
                    };
                    nodes.push(Node { rot, vortex });
                }
                "arc" => {
                    if id != arcs.len() {
                        return Err(perr(ln, format!("arc {id} out of order")));
                    }
                    let slot = |k: &str| -> Result<(usize, usize)> {
                        let v = fields.get(k).ok_or_else(|| perr(ln, format!("missing {k}")))?;
                        let (a, b) = v.split_once('.').ok_or_else(|| perr(ln, format!("bad {k} {v:?}")))?;
                        match (a.parse(), b.parse()) {
                            (Ok(a), Ok(b)) => Ok((a, b)),
                            _ => Err(perr(ln, format!("bad {k} {v:?}"))),
                        }
                    };
                    let (tn, ts) = slot("tail")?;
                    let (hn, hs) = slot("head")?;
                    let cur = fields
                        .get("current")
                        .ok_or_else(|| perr(ln, "missing current".into()))?;
                    let current = if *cur == "?" {
                        0
                    } else {
                        cur.parse::<i64>()
                            .map_err(|_| perr(ln, format!("bad current {cur:?}")))?
                            .rem_euclid(modulus.max(1) as i64) as u32
                    };
                    arcs.push((
                        Arc {
                            tail: tn,
                            head: hn,
                            current,
                        },
                        ts,
                        hs,
                    ));
                }
                other => return Err(perr(ln, format!("unknown record {other:?}"))),
            }
        }
        for (a, (arc, ts, hs)) in arcs.iter().enumerate() {
            for (node, slot, e) in [(arc.tail, *ts, End::tail(a)), (arc.head, *hs, End::head(a))] {
                if nodes.get(node).and_then(|n| n.rot.get(slot)) != Some(&e) {
                    return Err(Error::Structure(format!(
                        "arc {a}: end {e} is not at slot {node}.{slot}"
                    )));
                }
            }
        }
        Self::new(modulus, nodes, arcs.into_iter().map(|(a, _, _)| a).collect())?.with_anchor(anchor)
    }
}

fn parse_end(t: &str) -> Option<End> {
    let t = t.trim();
    let (sign, rest) = t.split_at(1);
    let arc = rest.parse().ok()?;
    match sign {
        "+" => Some(End::tail(arc)),
        "-" => Some(End::head(arc)),
        _ => None,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Principle {
    E1,
    E2,
    E3,
    E4,
    E5,
    E6,
    E7,
}

pub const PRINCIPLES: [Principle; 7] = [
    Principle::E1,
    Principle::E2,
    Principle::E3,
    Principle::E4,
    Principle::E5,
    Principle::E6,
    Principle::E7,
];

impl fmt::Display for Principle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Violation witnesses per principle; a principle passes when it has none.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PrincipleReport {
    pub violations: BTreeMap<Principle, Vec<String>>,
}

impl PrincipleReport {
    fn push(&mut self, p: Principle, w: String) {
        self.violations.entry(p).or_default().push(w);
    }

    pub fn passes(&self) -> bool {
        self.violations.values().all(Vec::is_empty)
    }

    pub fn witnesses(&self, p: Principle) -> &[String] {
        self.violations.get(&p).map(Vec::as_slice).unwrap_or(&[])
    }
}

impl fmt::Display for PrincipleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in PRINCIPLES {
            let w = self.witnesses(p);
            if w.is_empty() {
                writeln!(f, "{p} pass")?;
            } else {
                writeln!(f, "{p} FAIL: {}", w.join("; "))?;
            }
        }
        Ok(())
    }
}

/// Rows of the derived embedding. Row `g` is log `[g mod 3]` shifted by `g`;
/// a vortex row lists `i` then the predecessor of the vortex in row `i`.
pub fn derive_from_logs(modulus: u32, logs: &[Vec<VertexId>; 3]) -> Result<RotationSystem> {
    let n = modulus;
    let mut rows: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    for g in 0..n {
        let row = logs[(g % 3) as usize]
            .iter()
            .map(|&e| match e {
                VertexId::Num(x) => VertexId::Num((x + g) % n),
                l => l,
            })
            .collect();
        rows.insert(VertexId::Num(g), row);
    }
    let mut letters: Vec<VertexId> = logs.iter().flatten().copied().filter(|v| v.is_letter()).collect();
    letters.sort();
    letters.dedup();
    for w in letters {
        let mut succ = vec![u32::MAX; n as usize];
        for i in 0..n {
            let row = &rows[&VertexId::Num(i)];
            let k = row
                .iter()
                .position(|&x| x == w)
                .ok_or_else(|| Error::Derivation(format!("{w} missing from row {i}")))?;
            match row[(k + row.len() - 1) % row.len()] {
                VertexId::Num(p) => succ[i as usize] = p,
                l => return Err(Error::Derivation(format!("letters {l} and {w} adjacent in row {i}"))),
            }
        }
        let mut cyc = vec![VertexId::Num(0)];
        let mut x = succ[0];
        while x != 0 && cyc.len() <= n as usize {
            cyc.push(VertexId::Num(x));
            x = succ[x as usize];
        }
        if cyc.len() != n as usize {
            return Err(Error::Derivation(format!(
                "rotation at {w} closes after {} of {n} vertices",
                cyc.len()
            )));
        }
        rows.insert(w, cyc);
    }
    let rot = RotationSystem::from_rows_unchecked(n, rows);
    rot.validate().map_err(|e| Error::Derivation(e.to_string()))?;
    Ok(rot)
}

/// Derived embedding of a current graph satisfying all principles.
pub fn derive_embedding(cg: &CurrentGraph) -> Result<RotationSystem> {
    let rep = cg.verify_principles();
    if !rep.passes() {
        return Err(Error::Principles(rep.to_string().trim_end().replace('\n', "; ")));
    }
    let logs = cg
        .circuit_logs()
        .ok_or_else(|| Error::Internal("labels vanished after verification".into()))?;
    derive_from_logs(cg.modulus(), &logs.map(|l| l.entries))
}

/// An arithmetic 3-ladder read in log `[log]` as seven consecutive entries
/// `e = (-t-h, g-h, r, g, -t, g+h, r+h)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LadderSpec {
    pub log: usize,
    pub g: u32,
    pub r: u32,
    pub t: u32,
    pub h: u32,
    pub entries: [u32; 7],
}

impl LadderSpec {
    /// The six edges removed by the handle at shift `k` (a multiple of 3).
    pub fn handle_edges(&self, modulus: u32, shift: u32) -> [(VertexId, VertexId); 6] {
        let n = modulus;
        let b = (self.log as u32 + shift) % n;
        let e = self.entries;
        let v = |x: u32| VertexId::Num((b + x) % n);
        let base = VertexId::Num(b);
        let pair = |p: VertexId, q: VertexId| if p < q { (p, q) } else { (q, p) };
        [
            pair(base, v(e[4])),
            pair(base, v(e[5])),
            pair(v(e[3]), v(self.h)),
            pair(v(e[3]), v(e[4])),
            pair(v(e[6]), v(e[5])),
            pair(v(e[6]), v(self.h)),
        ]
    }
}

impl fmt::Display for LadderSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "log [{}] g={} r={} t={} h={} entries",
            self.log, self.g, self.r, self.t, self.h
        )?;
        for e in self.entries {
            write!(f, " {e}")?;
        }
        Ok(())
    }
}

/// Every window of seven numeric log entries matching the 3-ladder pattern.
pub fn find_ladders_in_logs(modulus: u32, logs: &[Vec<VertexId>; 3]) -> Vec<LadderSpec> {
    let n = modulus;
    let sub = |a: u32, b: u32| (a + n - b) % n;
    let mut out = Vec::new();
    for (rho, log) in logs.iter().enumerate() {
        let k = log.len();
        for i in 0..k {
            let mut e = [0u32; 7];
            let mut numeric = true;
            for (j, slot) in e.iter_mut().enumerate() {
                match log[(i + j) % k] {
                    VertexId::Num(x) => *slot = x,
                    _ => numeric = false,
                }
            }
            if !numeric {
                continue;
            }
            let h = sub(e[3], e[1]);
            if h == 0 || h % 3 != 0 || sub(e[5], e[3]) != h {
                continue;
            }
            if sub(e[4], h) != e[0] || (e[2] + h) % n != e[6] {
                continue;
            }
            out.push(LadderSpec {
                log: rho,
                g: e[3],
                r: e[2],
                t: (n - e[4]) % n,
                h,
                entries: e,
            });
        }
    }
    out
}

pub fn find_ladders(cg: &CurrentGraph) -> Vec<LadderSpec> {
    match cg.circuit_logs() {
        Some(logs) => find_ladders_in_logs(cg.modulus(), &logs.map(|l| l.entries)),
        None => Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dumbbell() -> CurrentGraph {
        let text = "currentgraph modulus=3\nnode 0 rot=+0\nnode 1 rot=-0\narc 0 tail=0.0 head=1.0 current=1\n";
        CurrentGraph::parse(text).unwrap()
    }

    #[test]
    fn text_round_trip() {
        let g = dumbbell();
        let text = g.to_text();
        assert_eq!(CurrentGraph::parse(&text).unwrap().to_text(), text);
        assert!(text.ends_with("current=1\n"));
    }

    #[test]
    fn anchor_round_trips_and_relabels() {
        let g = dumbbell();
        let t = Traversal { arc: 0, forward: false };
        let a = g.clone().with_anchor(t).unwrap();
        let text = a.to_text();
        assert!(text.starts_with("currentgraph modulus=3 anchor=-0\n"));
        let back = CurrentGraph::parse(&text).unwrap();
        assert_eq!(back.anchor(), t);
        assert_eq!(back.to_text(), text);
        assert!(!g.to_text().contains("anchor"));
        assert_eq!(a.reversed().anchor(), Traversal { arc: 0, forward: true });
        assert!(g.with_anchor(Traversal { arc: 9, forward: true }).is_err());
    }

    #[test]
    fn skeleton_placeholder() {
        let text = "currentgraph modulus=3\nnode 0 rot=+0\nnode 1 rot=-0\narc 0 tail=0.0 head=1.0 current=?\n";
        let g = CurrentGraph::parse(text).unwrap();
        assert_eq!(g.arcs()[0].current, 0);
        assert_eq!(g.to_text(), text);
    }

    #[test]
    fn slot_mismatch_rejected() {
        let text = "currentgraph modulus=3\nnode 0 rot=+0\nnode 1 rot=-0\narc 0 tail=1.0 head=0.0 current=1\n";
        assert!(CurrentGraph::parse(text).is_err());
    }

    #[test]
    fn reversal_negates_recorded_values() {
        let g = dumbbell();
        let r = g.reversed();
        let t = Traversal { arc: 0, forward: true };
        assert_eq!(r.recorded(t), (3 - g.recorded(t)) % 3);
    }

    #[test]
    fn ladder_pattern_detected() {
        // Z_15 with g=7, r=2, t=3, h=3
        let e = [9u32, 4, 2, 7, 12, 10, 5];
        let logs = [e.iter().map(|&x| VertexId::Num(x)).collect(), Vec::new(), Vec::new()];
        let found = find_ladders_in_logs(15, &logs);
        assert!(found.iter().any(|l| l.entries == e && l.h == 3 && l.g == 7 && l.t == 3));
    }
}
