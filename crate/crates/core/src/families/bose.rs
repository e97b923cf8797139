//! The Bose ladder: the varying part of every family over Z_{12s+3}.

use crate::current::{CurrentGraph, End, Traversal};
use crate::error::{Error, Result};
use crate::vertex::VertexId;

/// One rung of the ladder with the rail currents on either side of it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rung {
    pub index: usize,
    /// Current on the rail arc entering the rung from the left, top rail.
    pub rail_in: u32,
    pub rail_out: u32,
    /// Current on the vertical arc(s), a multiple of 3.
    pub vertical: u32,
    /// Globular rungs carry a pair of parallel arcs between two extra nodes.
    pub globular: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LadderFragment {
    pub modulus: u32,
    pub rungs: Vec<Rung>,
}

/// Top rail currents: the path 0, 4s, 1, 4s-1, ... labelled gracefully and
/// mapped to the class of -1 mod 3.
fn top_rail(s: u32) -> Vec<u32> {
    let n = 12 * s + 3;
    let rails = 4 * s + 1;
    (0..rails)
        .map(|j| {
            let x = if j % 2 == 0 { j / 2 } else { 4 * s - j / 2 };
            (n - (3 * x + 1) % n) % n
        })
        .collect()
}

/// Rungs `1..=rung_count` of the ladder for `Z_{12s+3}`.
pub fn bose_ladder(s: u32, rung_count: usize) -> Result<LadderFragment> {
    let n = 12 * s + 3;
    if rung_count > 4 * s as usize {
        return Err(Error::Domain(format!(
            "the ladder for s={s} has {} rungs, {rung_count} requested",
            4 * s
        )));
    }
    let c = top_rail(s);
    let rungs = (1..=rung_count)
        .map(|i| Rung {
            index: i,
            rail_in: c[i - 1],
            rail_out: c[i],
            vertical: (c[i - 1] + n - c[i]) % n,
            globular: i % 2 == 0,
        })
        .collect();
    Ok(LadderFragment { modulus: n, rungs })
}

/// Node and arc bookkeeping of the closed ladder, used to cut windows.
pub(crate) struct BoseLayout {
    pub graph: CurrentGraph,
    /// Rails per side; rail node `i` and `i + rails` sit on rung `i`.
    pub rails: usize,
    /// Extra nodes of globular rung `i`.
    pub bubble: Vec<Option<(usize, usize)>>,
}

/// The Case 5 current graph: the full ladder closed with a twist, rung 0
/// replaced by the vortices `a` and `b`. With `mirror` every rotation is
/// reversed.
pub(crate) fn bose_layout(s: u32, mirror: bool) -> BoseLayout {
    let n = 12 * s + 3;
    let big_n = 4 * s as usize + 1;
    let top = top_rail(s);
    let ring: Vec<u32> = top.iter().copied().chain(top.iter().map(|&x| (n - x) % n)).collect();
    let mut currents: Vec<u32> = ring.clone();
    let mut rots: Vec<(Vec<End>, Option<VertexId>)> = vec![(Vec::new(), None); 2 * big_n];
    rots[0].1 = Some(VertexId::Letter(0));
    rots[big_n].1 = Some(VertexId::Letter(1));
    let mut rung_end = vec![End::tail(0); 2 * big_n];
    let vortex_rung = currents.len();
    currents.push(n - 1);
    rung_end[0] = End::tail(vortex_rung);
    rung_end[big_n] = End::head(vortex_rung);
    let mut bubble = vec![None; big_n];
    for i in 1..big_n {
        let r = (ring[i - 1] + n - ring[i]) % n;
        if i % 2 == 1 {
            let x = currents.len();
            currents.push(r);
            rung_end[i] = End::tail(x);
            rung_end[i + big_n] = End::head(x);
        } else {
            let (up, x, y, dn) = (
                currents.len(),
                currents.len() + 1,
                currents.len() + 2,
                currents.len() + 3,
            );
            currents.extend([r, ring[i - 1], (n - ring[i]) % n, r]);
            let (t, b) = (rots.len(), rots.len() + 1);
            rots.push((vec![End::tail(y), End::head(up), End::tail(x)], None));
            rots.push((vec![End::head(x), End::head(y), End::tail(dn)], None));
            bubble[i] = Some((t, b));
            rung_end[i] = End::tail(up);
            rung_end[i + big_n] = End::head(dn);
        }
    }
    for i in 0..2 * big_n {
        let prev = End::head((i + 2 * big_n - 1) % (2 * big_n));
        let next = End::tail(i);
        let k = if i < big_n { i } else { i - big_n };
        rots[i].0 = if k % 2 == 0 {
            vec![prev, next, rung_end[i]]
        } else {
            vec![prev, rung_end[i], next]
        };
    }
    if mirror {
        for r in &mut rots {
            r.0.reverse();
        }
    }
    let graph = CurrentGraph::from_rotations(n, rots, currents).expect("ladder layout is consistent");
    BoseLayout {
        graph,
        rails: big_n,
        bubble,
    }
}

/// The Case 5 graph, with [0] the circuit that records the top rail
/// currents in the class of 1 mod 3.
pub fn bose_graph(s: u32) -> CurrentGraph {
    bose_layout(s, false)
        .graph
        .with_anchor(Traversal { arc: 0, forward: false })
        .expect("arc 0 exists")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verticals_run_through_the_multiples_of_three() {
        for s in 1..5 {
            let n = 12 * s + 3;
            let lad = bose_ladder(s, 4 * s as usize).unwrap();
            for r in &lad.rungs {
                let k = 3 * (4 * s + 1 - r.index as u32);
                assert!(r.vertical == k || r.vertical == n - k, "s={s} rung {}", r.index);
            }
        }
    }

    #[test]
    fn empty_and_oversized() {
        assert!(bose_ladder(2, 0).unwrap().rungs.is_empty());
        assert!(bose_ladder(1, 5).is_err());
    }

    #[test]
    fn case5_graphs_pass() {
        for s in 0..5 {
            let g = bose_graph(s);
            let rep = g.verify_principles();
            assert!(rep.passes(), "s={s}\n{rep}");
        }
    }

    #[test]
    fn fragment_is_prefix_of_larger_ladder() {
        let small = bose_ladder(2, 3).unwrap();
        let full = bose_ladder(2, 8).unwrap();
        assert_eq!(small.rungs[..], full.rungs[..3]);
    }
}
