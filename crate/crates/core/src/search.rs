//! Exhaustive current assignment for a fixed current graph skeleton.
//!
//! The skeleton fixes rotations and vortices, so the three circuits are
//! known before any current is chosen. Each of the two circuit labelings
//! fixes every arc's current modulo 3, and the search then assigns
//! currents arc by arc with the log, Kirchhoff and vortex conditions
//! checked as soon as they are decided.
//!
//! Multiplying all currents by a unit of `Z_n` maps solutions to solutions,
//! so the designated arc 0 only takes values `c` with `gcd(c, n) = c`.

use std::collections::BTreeSet;
use std::fmt;

use crate::current::{CurrentGraph, Traversal};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct SearchReport {
    pub solutions: Vec<CurrentGraph>,
    pub nodes_explored: u64,
    pub exhausted: bool,
}

impl fmt::Display for SearchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "solutions={} nodes={} exhausted={}",
            self.solutions.len(),
            self.nodes_explored,
            self.exhausted
        )
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    /// Node budget; the search stops with `exhausted = false` beyond it.
    pub budget: u64,
    /// With pruning off, assignments are only checked once complete.
    pub prune: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: 50_000_000,
            prune: true,
        }
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

struct Ctx<'a> {
    sk: &'a CurrentGraph,
    n: u32,
    opts: SearchOptions,
    /// Circuit of the forward and backward traversal of each arc.
    circ: Vec<[usize; 2]>,
    lab: [usize; 3],
    /// Arc ends at each node: (arc, +1 for head / -1 for tail).
    ends: Vec<Vec<(usize, bool)>>,
    leaf: Vec<bool>,
    cur: Vec<u32>,
    used: [Vec<bool>; 3],
    nodes: u64,
    out_of_budget: bool,
    found: BTreeSet<Vec<u32>>,
}

impl Ctx<'_> {
    fn residue(&self, a: usize) -> u32 {
        let f = self.lab[self.circ[a][0]] as u32;
        let b = self.lab[self.circ[a][1]] as u32;
        (b + 3 - f) % 3
    }

    /// Log slots written by current `c` on arc `a`.
    fn entries(&self, a: usize, c: u32) -> Vec<(usize, u32)> {
        let arc = &self.sk.arcs()[a];
        let order2 = (2 * c as u64).is_multiple_of(self.n as u64);
        let mut v = Vec::with_capacity(2);
        if !(self.leaf[arc.tail] && order2) {
            v.push((self.lab[self.circ[a][0]], c));
        }
        if !(self.leaf[arc.head] && order2) {
            v.push((self.lab[self.circ[a][1]], (self.n - c) % self.n));
        }
        v
    }

    fn excess(&self, node: usize) -> Option<u32> {
        let n = self.n as u64;
        let mut x = 0u64;
        for &(a, head) in &self.ends[node] {
            let c = self.cur[a] as u64;
            if c == 0 {
                return None;
            }
            x = if head { (x + c) % n } else { (x + n - c) % n };
        }
        Some(x as u32)
    }

    fn node_ok(&self, node: usize) -> bool {
        let nd = &self.sk.nodes()[node];
        match self.excess(node) {
            None => true,
            Some(x) if nd.vortex.is_some() => gcd(x, self.n) == 3,
            Some(x) if nd.rot.len() == 3 => x == 0,
            Some(_) => true,
        }
    }

    /// The current forced on `a` by a Kirchhoff node whose other arcs are set.
    fn forced(&self, a: usize) -> Option<u32> {
        let arc = &self.sk.arcs()[a];
        for node in [arc.tail, arc.head] {
            let nd = &self.sk.nodes()[node];
            if nd.vortex.is_some() || nd.rot.len() != 3 {
                continue;
            }
            let n = self.n as u64;
            let mut x = 0u64;
            let mut mine = 0i64;
            let mut open = false;
            for &(b, head) in &self.ends[node] {
                if b == a {
                    mine += if head { 1 } else { -1 };
                    continue;
                }
                let c = self.cur[b] as u64;
                if c == 0 {
                    open = true;
                    break;
                }
                x = if head { (x + c) % n } else { (x + n - c) % n };
            }
            if open {
                continue;
            }
            // mine * c + x = 0
            return match mine {
                1 => Some(((n - x) % n) as u32),
                -1 => Some(x as u32),
                _ => None,
            };
        }
        None
    }

    fn next_arc(&self) -> Option<usize> {
        let unassigned = |a: &usize| self.cur[*a] == 0;
        if self.opts.prune {
            if let Some(a) = (0..self.cur.len())
                .filter(unassigned)
                .find(|&a| self.forced(a).is_some())
            {
                return Some(a);
            }
        }
        (0..self.cur.len()).find(unassigned)
    }

    fn admissible(&self, a: usize, c: u32) -> bool {
        if c == 0 || c >= self.n {
            return false;
        }
        if a == 0 && gcd(c, self.n) != c {
            return false;
        }
        if !self.opts.prune {
            return true;
        }
        if c % 3 != self.residue(a) {
            return false;
        }
        let arc = &self.sk.arcs()[a];
        for node in [arc.tail, arc.head] {
            if self.leaf[node] {
                let (o2, o3) = (
                    (2 * c as u64).is_multiple_of(self.n as u64),
                    (3 * c as u64).is_multiple_of(self.n as u64),
                );
                if !o2 && !o3 {
                    return false;
                }
            }
        }
        let es = self.entries(a, c);
        if es.len() == 2 && es[0] == es[1] {
            return false;
        }
        es.iter().all(|&(l, v)| v != 0 && !self.used[l][v as usize])
    }

    fn set(&mut self, a: usize, c: u32) {
        self.cur[a] = c;
        if self.opts.prune {
            for (l, v) in self.entries(a, c) {
                self.used[l][v as usize] = true;
            }
        }
    }

    fn unset(&mut self, a: usize) {
        let c = self.cur[a];
        if self.opts.prune {
            for (l, v) in self.entries(a, c) {
                self.used[l][v as usize] = false;
            }
        }
        self.cur[a] = 0;
    }

    fn rec(&mut self) {
        if self.out_of_budget {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.opts.budget {
            self.out_of_budget = true;
            return;
        }
        let Some(a) = self.next_arc() else {
            if let Ok(g) = self.sk.with_currents(&self.cur) {
                if g.verify_principles().passes() {
                    self.found.insert(self.cur.clone());
                }
            }
            return;
        };
        let choices: Vec<u32> = match (self.opts.prune, self.forced(a)) {
            (true, Some(c)) => vec![c],
            _ => (1..self.n).collect(),
        };
        for c in choices {
            if !self.admissible(a, c) {
                continue;
            }
            self.set(a, c);
            let arc = &self.sk.arcs()[a];
            let ok = !self.opts.prune || (self.node_ok(arc.tail) && self.node_ok(arc.head));
            if ok {
                self.rec();
            }
            self.unset(a);
            if self.out_of_budget {
                return;
            }
        }
    }
}

/// Searches all current assignments of `skeleton` (its currents are ignored).
pub fn search(skeleton: &CurrentGraph, opts: SearchOptions) -> Result<SearchReport> {
    let n = skeleton.modulus();
    let arcs = skeleton.arcs();
    if arcs.is_empty() {
        return Err(Error::Structure("skeleton has no arcs".into()));
    }
    let circuits = skeleton.trace_circuits();
    if circuits.len() != 3 {
        return Ok(SearchReport {
            solutions: Vec::new(),
            nodes_explored: 0,
            exhausted: true,
        });
    }
    let mut circ = vec![[0usize; 2]; arcs.len()];
    for (ci, c) in circuits.iter().enumerate() {
        for &Traversal { arc, forward } in &c.walk {
            circ[arc][usize::from(!forward)] = ci;
        }
    }
    let mut ends = vec![Vec::new(); skeleton.nodes().len()];
    for (a, arc) in arcs.iter().enumerate() {
        ends[arc.tail].push((a, false));
        ends[arc.head].push((a, true));
    }
    let leaf: Vec<bool> = skeleton.nodes().iter().map(|nd| nd.rot.len() == 1).collect();
    let c0 = circ[0][0];
    let others: Vec<usize> = (0..3).filter(|&c| c != c0).collect();
    let mut total = 0;
    let mut exhausted = true;
    let mut found = BTreeSet::new();
    for (l1, l2) in [(1, 2), (2, 1)] {
        let mut lab = [0usize; 3];
        lab[others[0]] = l1;
        lab[others[1]] = l2;
        let mut ctx = Ctx {
            sk: skeleton,
            n,
            opts: SearchOptions {
                budget: opts.budget.saturating_sub(total),
                ..opts
            },
            circ: circ.clone(),
            lab,
            ends: ends.clone(),
            leaf: leaf.clone(),
            cur: vec![0; arcs.len()],
            used: [
                vec![false; n as usize],
                vec![false; n as usize],
                vec![false; n as usize],
            ],
            nodes: 0,
            out_of_budget: false,
            found: BTreeSet::new(),
        };
        ctx.rec();
        total += ctx.nodes;
        found.extend(ctx.found);
        if ctx.out_of_budget {
            exhausted = false;
            break;
        }
        if !opts.prune {
            // the unpruned pass does not depend on the labeling
            break;
        }
    }
    let solutions = found
        .into_iter()
        .map(|c| skeleton.with_currents(&c))
        .collect::<Result<Vec<_>>>()?;
    Ok(SearchReport {
        solutions,
        nodes_explored: total,
        exhausted,
    })
}
