//! Handle additions, the completion pipelines, handle subtraction,
//! subdivision and amalgamation.
//!
//! Chords inside a nontriangular face are planned on the face's corner
//! list. A corner is a vertex together with the vertex the face walk
//! arrives from; splitting polygon `P` by a chord between corners `i` and
//! `j` leaves the polygons `P[j..=i]` and `P[i..=j]`, in each of which
//! every corner again arrives from its cyclic predecessor.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::current::LadderSpec;
use crate::embedding::{
    analyze, deficit, genus_kn, insert_edge_at_corners, Deficit, DeficitShape, EmbeddingSummary, Face,
};
use crate::error::{Error, Result};
use crate::rotation::RotationSystem;
use crate::vertex::VertexId;

pub type Edge = (VertexId, VertexId);
type Corner = (VertexId, VertexId);

fn edge(u: VertexId, v: VertexId) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Clone, Debug)]
pub struct Stage {
    pub label: String,
    pub rot: RotationSystem,
    pub summary: EmbeddingSummary,
    pub deficit: Deficit,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} deficit={}", self.label, self.summary, self.deficit.shape)
    }
}

/// Every named intermediate of a pipeline plus a log of the operations.
#[derive(Clone, Debug, Default)]
pub struct SurgeryOutcome {
    pub stages: Vec<Stage>,
    pub transcript: Vec<String>,
}

impl SurgeryOutcome {
    fn start(rot: &RotationSystem) -> Result<Self> {
        let mut out = SurgeryOutcome::default();
        out.stage(rot.clone())?;
        Ok(out)
    }

    /// Records a stage, labelled `(n,t)` when triangular and `K_n` when complete.
    fn stage(&mut self, rot: RotationSystem) -> Result<()> {
        let summary = analyze(&rot)?;
        let deficit = deficit(&rot);
        let label = if deficit.missing.is_empty() {
            format!("K{}", deficit.n)
        } else if summary.triangular {
            format!("({},{})", deficit.n, deficit.missing.len())
        } else {
            format!("({},{})*", deficit.n, deficit.missing.len())
        };
        self.transcript.push(format!("stage {label}: {summary}"));
        self.stages.push(Stage {
            label,
            rot,
            summary,
            deficit,
        });
        Ok(())
    }

    fn note(&mut self, s: String) {
        self.transcript.push(s);
    }

    pub fn last(&self) -> &Stage {
        self.stages.last().expect("outcomes start with their input")
    }

    pub fn final_rot(&self) -> &RotationSystem {
        &self.last().rot
    }

    fn extend(&mut self, other: SurgeryOutcome) {
        self.transcript.extend(other.transcript.into_iter().skip(1));
        self.stages.extend(other.stages.into_iter().skip(1));
    }

    /// Checks that the last stage is a genus embedding of the complete graph.
    fn finish(self) -> Result<Self> {
        let st = self.last();
        if !st.deficit.missing.is_empty() {
            return Err(Error::Internal(format!(
                "pipeline ended with {} missing edges",
                st.deficit.missing.len()
            )));
        }
        let g = genus_kn(st.summary.v as u32)?;
        if st.summary.genus != g {
            return Err(Error::Internal(format!(
                "K{} ended in genus {}, expected {g}",
                st.summary.v, st.summary.genus
            )));
        }
        Ok(self)
    }
}

fn row_of(rot: &RotationSystem, v: VertexId) -> Result<&[VertexId]> {
    rot.row(v).ok_or_else(|| Error::Precondition(format!("no vertex {v}")))
}

/// Row of `v` rotated to start at `first`.
fn row_from(rot: &RotationSystem, v: VertexId, first: VertexId) -> Result<Vec<VertexId>> {
    let row = row_of(rot, v)?;
    let i = row
        .iter()
        .position(|&x| x == first)
        .ok_or_else(|| Error::Precondition(format!("{first} is not a neighbor of {v}")))?;
    Ok(row[i..].iter().chain(&row[..i]).copied().collect())
}

/// Splits the row of `v` into consecutive nonempty segments starting at
/// the given vertices, which must appear in this cyclic order.
fn segments(rot: &RotationSystem, v: VertexId, firsts: &[VertexId]) -> Result<Vec<Vec<VertexId>>> {
    let row = row_from(rot, v, firsts[0])?;
    let mut cuts = Vec::new();
    for &f in firsts {
        cuts.push(
            row.iter()
                .position(|&x| x == f)
                .ok_or_else(|| Error::Precondition(format!("{f} is not a neighbor of {v}")))?,
        );
    }
    if cuts.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Precondition(format!(
            "segment starts at {v} are not in rotation order"
        )));
    }
    cuts.push(row.len());
    Ok(cuts.windows(2).map(|w| row[w[0]..w[1]].to_vec()).collect())
}

/// Construction 1: row `x y z` at `v` becomes `x z y`, adding a handle and
/// one 9-sided face.
pub fn construction1(
    rot: &RotationSystem,
    v: VertexId,
    x1: VertexId,
    y1: VertexId,
    z1: VertexId,
) -> Result<RotationSystem> {
    let seg = segments(rot, v, &[x1, y1, z1])?;
    let row = [&seg[0][..], &seg[2][..], &seg[1][..]].concat();
    Ok(rot.with_rows([(v, row)]))
}

/// Construction 2: row `x y z w` at `v` becomes `x w z y`, adding a handle
/// and two hexagons.
pub fn construction2(
    rot: &RotationSystem,
    v: VertexId,
    x1: VertexId,
    y1: VertexId,
    z1: VertexId,
    w1: VertexId,
) -> Result<RotationSystem> {
    let seg = segments(rot, v, &[x1, y1, z1, w1])?;
    let row = [&seg[0][..], &seg[3][..], &seg[2][..], &seg[1][..]].concat();
    Ok(rot.with_rows([(v, row)]))
}

/// The face traced from the directed edge `(u -> v)`.
pub fn face_from(rot: &RotationSystem, u: VertexId, v: VertexId) -> Result<Face> {
    if !rot.has_edge(u, v) {
        return Err(Error::Precondition(format!("edge ({u}, {v}) is absent")));
    }
    let mut walk = vec![(u, v)];
    loop {
        let (a, b) = *walk.last().unwrap();
        let c = rot.pred(b, a).unwrap();
        if (b, c) == (u, v) {
            return Ok(Face { walk });
        }
        walk.push((b, c));
    }
}

/// Construction 3: joins corner `i` of `f1` to corner `j` of `f2` across a
/// new handle; the two faces merge into one of length `|f1| + |f2| + 2`.
pub fn construction3(rot: &RotationSystem, f1: &Face, i: usize, f2: &Face, j: usize) -> Result<RotationSystem> {
    if f1.walk.iter().any(|e| f2.walk.contains(e)) {
        return Err(Error::Precondition("construction 3 needs two distinct faces".into()));
    }
    let c1 = crate::embedding::face_corner(f1, i);
    let c2 = crate::embedding::face_corner(f2, j);
    insert_edge_at_corners(rot, c1, c2)
}

/// Cyclic slice `p[from..=to]`.
fn arc_of(p: &[VertexId], from: usize, to: usize) -> Vec<VertexId> {
    let k = p.len();
    let mut out = vec![p[from]];
    let mut i = from;
    while i != to {
        i = (i + 1) % k;
        out.push(p[i]);
    }
    out
}

fn split(p: &[VertexId], i: usize, j: usize) -> ((Corner, Corner), Vec<VertexId>, Vec<VertexId>) {
    let k = p.len();
    let ci = (p[i], p[(i + k - 1) % k]);
    let cj = (p[j], p[(j + k - 1) % k]);
    ((ci, cj), arc_of(p, j, i), arc_of(p, i, j))
}

/// What a chord plan must achieve in a set of polygons.
#[derive(Clone, Copy, Debug)]
pub enum Fill<'a> {
    /// Triangulate, using exactly these edges as chords.
    Exact(&'a BTreeSet<Edge>),
    /// Triangulate with chords drawn from this set.
    Subset(&'a BTreeSet<Edge>),
    /// Insert exactly these edges as non-crossing chords.
    Cover(&'a BTreeSet<Edge>),
}

type Plan = Vec<(Corner, Corner)>;

struct Planner<'a, 'b> {
    rot: &'a RotationSystem,
    allowed: &'a BTreeSet<Edge>,
    used: BTreeSet<Edge>,
    chords: Plan,
    visit: &'b mut dyn FnMut(&Plan) -> bool,
}

impl Planner<'_, '_> {
    fn ok(&self, a: VertexId, b: VertexId) -> bool {
        let e = edge(a, b);
        a != b && self.allowed.contains(&e) && !self.used.contains(&e) && !self.rot.has_edge(a, b)
    }

    fn push(&mut self, c: (Corner, Corner)) {
        self.used.insert(edge(c.0 .0, c.1 .0));
        self.chords.push(c);
    }

    fn pop(&mut self) {
        let c = self.chords.pop().unwrap();
        self.used.remove(&edge(c.0 .0, c.1 .0));
    }

    /// Triangulations of every pending polygon.
    fn triangulate(&mut self, pending: &mut Vec<Vec<VertexId>>) -> bool {
        let Some(p) = pending.pop() else {
            return (self.visit)(&self.chords);
        };
        let l = p.len();
        if l <= 3 {
            let stop = self.triangulate(pending);
            pending.push(p);
            return stop;
        }
        for k in 2..l {
            let mut pushed = 0;
            let mut added = 0;
            let mut cur = p.clone();
            let mut good = true;
            if k != 2 {
                if self.ok(p[1], p[k]) {
                    let (c, q1, q2) = split(&cur, 1, k);
                    self.push(c);
                    added += 1;
                    pending.push(q2);
                    pushed += 1;
                    cur = q1;
                } else {
                    good = false;
                }
            }
            if good && k != l - 1 {
                // p0 sits at index l-k of cur when the first chord was cut, else at 0
                let (i0, ik) = if k != 2 { (l - k, 0) } else { (0, 2) };
                if self.ok(cur[i0], cur[ik]) {
                    let (c, q1, _tri) = split(&cur, i0, ik);
                    self.push(c);
                    added += 1;
                    pending.push(q1);
                    pushed += 1;
                } else {
                    good = false;
                }
            }
            if good && self.triangulate(pending) {
                return true;
            }
            for _ in 0..pushed {
                pending.pop();
            }
            for _ in 0..added {
                self.pop();
            }
        }
        pending.push(p);
        false
    }

    /// Non-crossing placements of every edge in `need`.
    fn cover(&mut self, pending: &mut Vec<Vec<VertexId>>, need: &[Edge]) -> bool {
        let Some((&(x, y), rest)) = need.split_first() else {
            return (self.visit)(&self.chords);
        };
        for pi in 0..pending.len() {
            let p = pending[pi].clone();
            let l = p.len();
            for i in 0..l {
                for j in 0..l {
                    if p[i] != x || p[j] != y || (i + 1) % l == j || (j + 1) % l == i || i == j {
                        continue;
                    }
                    if !self.ok(x, y) {
                        continue;
                    }
                    let (c, q1, q2) = split(&p, i, j);
                    self.push(c);
                    pending[pi] = q1;
                    pending.push(q2);
                    let stop = self.cover(pending, rest);
                    pending.pop();
                    pending[pi] = p.clone();
                    self.pop();
                    if stop {
                        return true;
                    }
                }
            }
        }
        false
    }
}

/// Enumerates chord plans for `polys` (corner lists in walk order) until
/// `visit` returns true. Returns whether it stopped early.
pub fn plan_chords(
    rot: &RotationSystem,
    polys: &[Vec<VertexId>],
    fill: Fill<'_>,
    visit: &mut dyn FnMut(&Plan) -> bool,
) -> bool {
    let (allowed, exact) = match fill {
        Fill::Exact(s) => (s, true),
        Fill::Subset(s) => (s, false),
        Fill::Cover(s) => (s, false),
    };
    if exact {
        let need: usize = polys.iter().map(|p| p.len().saturating_sub(3)).sum();
        if need != allowed.len() {
            return false;
        }
    }
    let mut pl = Planner {
        rot,
        allowed,
        used: BTreeSet::new(),
        chords: Vec::new(),
        visit,
    };
    let mut pending = polys.to_vec();
    match fill {
        Fill::Cover(s) => {
            let need: Vec<Edge> = s.iter().copied().collect();
            pl.cover(&mut pending, &need)
        }
        _ => pl.triangulate(&mut pending),
    }
}

pub fn apply_plan(rot: &RotationSystem, plan: &Plan) -> Result<RotationSystem> {
    let mut r = rot.clone();
    for &(a, b) in plan {
        r = insert_edge_at_corners(&r, a, b)?;
    }
    Ok(r)
}

/// Faces in canonical form: each walk starts at its least directed edge,
/// and the list is sorted.
pub fn canonical_faces(rot: &RotationSystem) -> Result<Vec<Face>> {
    let mut faces: Vec<Face> = crate::embedding::trace_faces(rot)?
        .into_iter()
        .map(|f| {
            let i = (0..f.walk.len()).min_by_key(|&i| f.walk[i]).unwrap();
            Face {
                walk: f.walk[i..].iter().chain(&f.walk[..i]).copied().collect(),
            }
        })
        .collect();
    faces.sort();
    Ok(faces)
}

/// Searches for a handle between two faces accepted by `face_ok`, carrying
/// one edge of `pool`, whose merged face is then filled according to the
/// mode with the rest. `next` may reject a result to continue the search.
fn merge_search<T>(
    rot: &RotationSystem,
    pool: &BTreeSet<Edge>,
    exact: bool,
    face_ok: &dyn Fn(&Face) -> bool,
    next: &mut dyn FnMut(RotationSystem, Edge) -> Option<T>,
) -> Result<Option<T>> {
    let faces: Vec<Face> = canonical_faces(rot)?.into_iter().filter(|f| face_ok(f)).collect();
    for (a, f1) in faces.iter().enumerate() {
        for f2 in &faces[a + 1..] {
            for i in 0..f1.len() {
                for j in 0..f2.len() {
                    let (x, y) = (f1.walk[i].0, f2.walk[j].0);
                    let e = edge(x, y);
                    if x == y || !pool.contains(&e) {
                        continue;
                    }
                    let r1 = construction3(rot, f1, i, f2, j)?;
                    let merged = face_from(&r1, x, y)?;
                    let rest: BTreeSet<Edge> = pool.iter().copied().filter(|&p| p != e).collect();
                    let fill = if exact { Fill::Exact(&rest) } else { Fill::Cover(&rest) };
                    let mut found = None;
                    plan_chords(
                        &r1,
                        &[merged.corners()],
                        fill,
                        &mut |plan| match apply_plan(&r1, plan) {
                            Ok(r2) => {
                                found = next(r2, e);
                                found.is_some()
                            }
                            Err(_) => false,
                        },
                    );
                    if found.is_some() {
                        return Ok(found);
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Subset version of [`merge_search`]: the merged face is triangulated with
/// chords from `pool` and every triangulation is offered to `next`.
fn merge_search_subset<T>(
    rot: &RotationSystem,
    pool: &BTreeSet<Edge>,
    faces: &[(Face, Face)],
    next: &mut dyn FnMut(RotationSystem) -> Option<T>,
) -> Result<Option<T>> {
    for (f1, f2) in faces {
        for i in 0..f1.len() {
            for j in 0..f2.len() {
                let (x, y) = (f1.walk[i].0, f2.walk[j].0);
                if x == y || !pool.contains(&edge(x, y)) {
                    continue;
                }
                let r1 = construction3(rot, f1, i, f2, j)?;
                let merged = face_from(&r1, x, y)?;
                let rest: BTreeSet<Edge> = pool.iter().copied().filter(|&p| p != edge(x, y)).collect();
                let mut found = None;
                plan_chords(&r1, &[merged.corners()], Fill::Subset(&rest), &mut |plan| {
                    if let Ok(r2) = apply_plan(&r1, plan) {
                        found = next(r2);
                    }
                    found.is_some()
                });
                if found.is_some() {
                    return Ok(found);
                }
            }
        }
    }
    Ok(None)
}

fn require_shape(rot: &RotationSystem, want: &[DeficitShape]) -> Result<Deficit> {
    let d = deficit(rot);
    if !want.contains(&d.shape) {
        return Err(Error::Precondition(format!(
            "deficit shape is {}, expected {:?}",
            d.shape, want
        )));
    }
    Ok(d)
}

fn triangular(rot: &RotationSystem) -> Result<()> {
    let s = analyze(rot)?;
    if !s.triangular {
        return Err(Error::Precondition(format!("embedding is not triangular: {s}")));
    }
    Ok(())
}

/// Adds the one missing edge across a handle between two faces.
pub fn complete_k2(rot: &RotationSystem) -> Result<SurgeryOutcome> {
    let d = require_shape(rot, &[DeficitShape::K2])?;
    let &(a, b) = d.missing.iter().next().unwrap();
    let mut out = SurgeryOutcome::start(rot)?;
    let faces = canonical_faces(rot)?;
    let f1 = faces.iter().find(|f| f.contains(a)).unwrap();
    let f2 = faces.iter().find(|f| f.contains(b)).unwrap();
    let i = f1.corners().iter().position(|&x| x == a).unwrap();
    let j = f2.corners().iter().position(|&x| x == b).unwrap();
    let r = construction3(rot, f1, i, f2, j)?;
    out.note(format!("construction 3: ({a}, {b}) between faces {f1} and {f2}"));
    out.stage(r)?;
    out.finish()
}

/// Construction 1 at some vertex followed by chords covering `need` inside
/// the 9-sided face. Candidate vertices are tried in order.
fn construction1_cover(
    rot: &RotationSystem,
    need: &BTreeSet<Edge>,
    candidates: &[VertexId],
) -> Result<Option<(VertexId, [VertexId; 3], RotationSystem)>> {
    let ends: BTreeSet<VertexId> = need.iter().flat_map(|&(a, b)| [a, b]).collect();
    for &v in candidates {
        let Some(row) = rot.row(v) else { continue };
        let d = row.len();
        if d < 3 {
            continue;
        }
        // a cut before position k starts a segment at row[k]
        let mut cuts: BTreeSet<usize> = BTreeSet::new();
        for (k, w) in row.iter().enumerate() {
            if ends.contains(w) {
                cuts.insert(k);
                cuts.insert((k + 1) % d);
            }
        }
        let cuts: Vec<usize> = cuts.into_iter().collect();
        for a in 0..cuts.len() {
            for b in a + 1..cuts.len() {
                for c in b + 1..cuts.len() {
                    let (x1, y1, z1) = (row[cuts[a]], row[cuts[b]], row[cuts[c]]);
                    let r1 = construction1(rot, v, x1, y1, z1)?;
                    let zk = row[(cuts[a] + d - 1) % d];
                    let nine = face_from(&r1, zk, x1)?;
                    if nine.len() != 9 {
                        return Err(Error::Internal(format!(
                            "construction 1 at {v} gave a {}-gon",
                            nine.len()
                        )));
                    }
                    let mut found = None;
                    plan_chords(&r1, &[nine.corners()], Fill::Cover(need), &mut |plan| {
                        found = apply_plan(&r1, plan).ok();
                        found.is_some()
                    });
                    if let Some(r2) = found {
                        return Ok(Some((v, [x1, y1, z1], r2)));
                    }
                }
            }
        }
    }
    Ok(None)
}

fn default_candidates(rot: &RotationSystem, d: &Deficit) -> Vec<VertexId> {
    let ends: BTreeSet<VertexId> = d.missing.iter().flat_map(|&(a, b)| [a, b]).collect();
    rot.vertices().filter(|v| !ends.contains(v)).collect()
}

fn complete_by_construction1(
    rot: &RotationSystem,
    shape: DeficitShape,
    witness: Option<VertexId>,
) -> Result<SurgeryOutcome> {
    let d = require_shape(rot, &[shape])?;
    let mut out = SurgeryOutcome::start(rot)?;
    let cands = match witness {
        Some(v) => vec![v],
        None => default_candidates(rot, &d),
    };
    match construction1_cover(rot, &d.missing, &cands)? {
        Some((v, [x1, y1, z1], r)) => {
            out.note(format!(
                "construction 1 at {v} with segments starting {x1}, {y1}, {z1}; chords {}",
                fmt_edges(&d.missing)
            ));
            out.stage(r)?;
            out.finish()
        }
        None => Err(Error::SearchFailure(format!(
            "no vertex among {} admits construction 1 with chords {}",
            fmt_vertices(&cands),
            fmt_edges(&d.missing)
        ))),
    }
}

fn fmt_edges(es: &BTreeSet<Edge>) -> String {
    es.iter()
        .map(|(a, b)| format!("{a}{}{b}", if a.is_letter() && b.is_letter() { "" } else { "-" }))
        .collect::<Vec<_>>()
        .join(",")
}

fn fmt_vertices(vs: &[VertexId]) -> String {
    vs.iter().map(VertexId::to_string).collect::<Vec<_>>().join(",")
}

/// Missing triangle: construction 1 at any vertex, then three chords.
pub fn complete_k3(rot: &RotationSystem) -> Result<SurgeryOutcome> {
    complete_by_construction1(rot, DeficitShape::K3, None)
}

/// Missing star `K_{1,3}`.
pub fn complete_k13(rot: &RotationSystem) -> Result<SurgeryOutcome> {
    complete_by_construction1(rot, DeficitShape::K13, None)
}

/// Missing star `K_{1,4}`; `witness` restricts the vertex `v` used.
pub fn complete_k14(rot: &RotationSystem, witness: Option<VertexId>) -> Result<SurgeryOutcome> {
    complete_by_construction1(rot, DeficitShape::K14, witness)
}

/// Missing 4-cycle: one handle between faces at two of its vertices, then
/// chords for the other three edges.
pub fn complete_c4(rot: &RotationSystem) -> Result<SurgeryOutcome> {
    let d = require_shape(rot, &[DeficitShape::C4])?;
    let ends: BTreeSet<VertexId> = d.missing.iter().flat_map(|&(a, b)| [a, b]).collect();
    let mut out = SurgeryOutcome::start(rot)?;
    let found = merge_search(
        rot,
        &d.missing,
        false,
        &|f: &Face| f.corners().iter().any(|v| ends.contains(v)),
        &mut |r, e| Some((r, e)),
    )?;
    let (r, e) = found.ok_or_else(|| Error::SearchFailure("no handle placement adds the 4-cycle".into()))?;
    out.note(format!(
        "construction 3 carrying ({}, {}); chords for the rest of {}",
        e.0,
        e.1,
        fmt_edges(&d.missing)
    ));
    out.stage(r)?;
    out.finish()
}

/// Flips `(u, v)`, checking the new edge is the expected one.
fn flip_to(rot: &RotationSystem, u: VertexId, v: VertexId, want: Edge) -> Result<RotationSystem> {
    let r = crate::embedding::edge_flip(rot, u, v)?;
    if !r.has_edge(want.0, want.1) {
        return Err(Error::Pattern(format!(
            "flipping ({u}, {v}) did not produce ({}, {})",
            want.0, want.1
        )));
    }
    Ok(r)
}

/// Deficit vertices in `row` matching `L p L p ... L` with `len` letters,
/// starting at index `i`; returns the letters and the `p`'s.
fn alternating_at(
    row: &[VertexId],
    i: usize,
    len: usize,
    lettered: &BTreeSet<VertexId>,
) -> Option<(Vec<VertexId>, Vec<VertexId>)> {
    let d = row.len();
    if 2 * len - 1 > d {
        return None;
    }
    let (mut ls, mut ps) = (Vec::new(), Vec::new());
    for k in 0..2 * len - 1 {
        let x = row[(i + k) % d];
        if k % 2 == 0 {
            if !lettered.contains(&x) {
                return None;
            }
            ls.push(x);
        } else {
            if lettered.contains(&x) {
                return None;
            }
            ps.push(x);
        }
    }
    Some((ls, ps))
}

/// Triples `L p L` at pairwise disjoint positions of `row`, in row order,
/// each returned as (left letter, p, right letter).
fn triples(row: &[VertexId], lettered: &BTreeSet<VertexId>, count: usize) -> Vec<Vec<(VertexId, VertexId, VertexId)>> {
    let d = row.len();
    let mut starts = Vec::new();
    for i in 0..d {
        if let Some((ls, ps)) = alternating_at(row, i, 2, lettered) {
            starts.push((i, (ls[0], ps[0], ls[1])));
        }
    }
    let mut out = Vec::new();
    let mut pick = Vec::new();
    fn rec(
        starts: &[(usize, (VertexId, VertexId, VertexId))],
        from: usize,
        count: usize,
        d: usize,
        pick: &mut Vec<(usize, (VertexId, VertexId, VertexId))>,
        out: &mut Vec<Vec<(VertexId, VertexId, VertexId)>>,
    ) {
        if pick.len() == count {
            let first = pick[0].0;
            let last = pick[count - 1].0;
            if last + 3 <= first + d {
                let ls: BTreeSet<VertexId> = pick.iter().flat_map(|p| [p.1 .0, p.1 .2]).collect();
                if ls.len() == 2 * count {
                    out.push(pick.iter().map(|p| p.1).collect());
                }
            }
            return;
        }
        for k in from..starts.len() {
            if let Some(prev) = pick.last() {
                if starts[k].0 < prev.0 + 3 {
                    continue;
                }
            }
            pick.push(starts[k]);
            rec(starts, k + 1, count, d, pick, out);
            pick.pop();
        }
    }
    rec(&starts, 0, count, d, &mut pick, &mut out);
    out
}

fn check_sigma(rot: &RotationSystem, v: VertexId, ps: &[VertexId]) -> Result<()> {
    let row = row_of(rot, v)?;
    let d = row.len();
    let pairs: Vec<(VertexId, VertexId)> = (0..d).map(|i| (row[i], row[(i + 1) % d])).collect();
    let pset: BTreeSet<VertexId> = ps.iter().copied().collect();
    let mut hits = Vec::new();
    for &(x, y) in &pairs {
        if pset.contains(&x) && pset.contains(&y) {
            hits.push((x, y));
        }
    }
    let ok = hits.iter().any(|&(a, b)| {
        hits.iter()
            .any(|&(c, e)| [a, b, c, e].iter().collect::<BTreeSet<_>>().len() == 4)
    });
    if ok {
        Ok(())
    } else {
        Err(Error::Pattern(format!(
            "row {v} has no two disjoint consecutive pairs from {}",
            fmt_vertices(ps)
        )))
    }
}

/// Witnesses for the five-vortex lemma: `u`, the `p`'s as they read in the
/// row of `u`, and optionally `v`.
#[derive(Clone, Debug, Default)]
pub struct Witness {
    pub u: Option<VertexId>,
    pub v: Option<VertexId>,
    pub p: Option<Vec<VertexId>>,
}

fn lettered_vertices(d: &Deficit) -> BTreeSet<VertexId> {
    d.missing.iter().flat_map(|&(a, b)| [a, b]).collect()
}

/// Lemma for `K_n - K_5`: stages `(n,10)`, `(n,4)` and `K_n`.
pub fn lemma_k5(rot: &RotationSystem, w: &Witness) -> Result<SurgeryOutcome> {
    let d = require_shape(rot, &[DeficitShape::K(5)])?;
    triangular(rot)?;
    let lettered = lettered_vertices(&d);
    let us: Vec<VertexId> = match w.u {
        Some(u) => vec![u],
        None => rot.vertices().filter(|v| !lettered.contains(v)).collect(),
    };
    let mut tried = 0;
    let mut last_err = None;
    for &u in &us {
        let row = row_of(rot, u)?;
        for i in 0..row.len() {
            let Some((ls, ps)) = alternating_at(row, i, 5, &lettered) else {
                continue;
            };
            if let Some(p) = &w.p {
                if *p != ps {
                    continue;
                }
            }
            tried += 1;
            match lemma_k5_at(rot, u, &ls, &ps, w.v) {
                Ok(out) => return Ok(out),
                Err(e) => last_err = Some(e),
            }
        }
    }
    match last_err {
        Some(e) if w.u.is_some() => Err(e),
        Some(e) => Err(Error::SearchFailure(format!("{tried} placements tried, last: {e}"))),
        None => Err(Error::Pattern(
            "no vertex has the row pattern a p1 b p2 c p3 d p4 e".into(),
        )),
    }
}

fn lemma_k5_at(
    rot: &RotationSystem,
    u: VertexId,
    ls: &[VertexId],
    ps: &[VertexId],
    v: Option<VertexId>,
) -> Result<SurgeryOutcome> {
    let [a, b, c, dd, e] = [ls[0], ls[1], ls[2], ls[3], ls[4]];
    let [p1, p2, p3, p4] = [ps[0], ps[1], ps[2], ps[3]];
    if let Some(v) = v {
        check_sigma(rot, v, ps)?;
    }
    let mut out = SurgeryOutcome::start(rot)?;
    out.note(format!("u={u}: {a} {p1} {b} {p2} {c} {p3} {dd} {p4} {e}"));
    // the four triangles on u between a and c become a hexagon
    let mut r = rot.clone();
    for x in [p1, b, p2] {
        r = crate::embedding::delete_edge(&r, u, x)?;
    }
    let hex = face_from(&r, u, a).or_else(|_| face_from(&r, a, u))?;
    let hex = if hex.len() == 6 { hex } else { face_from(&r, c, u)? };
    let need: BTreeSet<Edge> = [edge(a, b), edge(a, c), edge(b, c)].into();
    let mut found = None;
    plan_chords(&r, &[hex.corners()], Fill::Exact(&need), &mut |plan| {
        found = apply_plan(&r, plan).ok();
        found.is_some()
    });
    r = found.ok_or_else(|| Error::Pattern(format!("cannot re-triangulate around {u} with {a}{b}, {a}{c}, {b}{c}")))?;
    r = flip_to(&r, u, p3, edge(c, dd))?;
    r = flip_to(&r, u, p4, edge(dd, e))?;
    out.note(format!(
        "deleted ({u},{p1}), ({u},{b}), ({u},{p2}); added {a}{b}, {a}{c}, {b}{c}; flipped ({u},{p3}), ({u},{p4})"
    ));
    let need: BTreeSet<Edge> = [edge(u, b), edge(a, dd), edge(a, e), edge(b, dd), edge(b, e), edge(c, e)].into();
    let t1: BTreeSet<VertexId> = [a, b, c].into();
    let t2: BTreeSet<VertexId> = [u, dd, e].into();
    let face_ok = |f: &Face| {
        let s: BTreeSet<VertexId> = f.corners().into_iter().collect();
        f.len() == 3 && (s == t1 || s == t2)
    };
    let r4 = merge_search(&r, &need, true, &face_ok, &mut |r2, _| Some(r2))?.ok_or_else(|| {
        Error::SearchFailure(format!(
            "faces [{a},{c},{b}] and [{u},{e},{dd}] admit no handle with the six edges"
        ))
    })?;
    out.note(format!(
        "construction 3 between [{a},{c},{b}] and [{u},{e},{dd}], chords {}",
        fmt_edges(&need)
    ));
    out.stage(r4.clone())?;
    let fin = complete_k14(&r4, v)?;
    out.extend(fin);
    out.finish()
}

/// Lemma for `K_n - K_6`: stages `(n,15)`, `(n,9)`, `(n,3)` and `K_n`.
pub fn lemma_k6(rot: &RotationSystem, u: Option<VertexId>, p: Option<&[VertexId]>) -> Result<SurgeryOutcome> {
    let d = require_shape(rot, &[DeficitShape::K(6)])?;
    triangular(rot)?;
    let lettered = lettered_vertices(&d);
    let us: Vec<VertexId> = match u {
        Some(u) => vec![u],
        None => rot.vertices().filter(|v| !lettered.contains(v)).collect(),
    };
    let mut last_err = None;
    for &u in &us {
        let row = row_of(rot, u)?.to_vec();
        for trip in triples(&row, &lettered, 3) {
            if let Some(p) = p {
                if trip.iter().map(|t| t.1).collect::<Vec<_>>() != p {
                    continue;
                }
            }
            match lemma_k6_at(rot, u, &trip, &lettered) {
                Ok(out) => return Ok(out),
                Err(e) => last_err = Some(e),
            }
        }
    }
    Err(last_err.unwrap_or_else(|| Error::Pattern("no vertex has the row pattern a p1 b .. c p2 d .. e p3 f".into())))
}

fn letter_faces(rot: &RotationSystem, lettered: &BTreeSet<VertexId>) -> Result<Vec<Face>> {
    Ok(canonical_faces(rot)?
        .into_iter()
        .filter(|f| f.len() == 3 && f.corners().iter().all(|v| lettered.contains(v)))
        .collect())
}

fn missing_among(rot: &RotationSystem, vs: &BTreeSet<VertexId>) -> BTreeSet<Edge> {
    let v: Vec<VertexId> = vs.iter().copied().collect();
    let mut out = BTreeSet::new();
    for (i, &a) in v.iter().enumerate() {
        for &b in &v[i + 1..] {
            if !rot.has_edge(a, b) {
                out.insert(edge(a, b));
            }
        }
    }
    out
}

/// A final handle merging two all-letter triangles that adds exactly the
/// remaining missing letter edges.
fn closing_handle(rot: &RotationSystem, lettered: &BTreeSet<VertexId>) -> Result<Option<RotationSystem>> {
    let need = missing_among(rot, lettered);
    if need.len() != 6 {
        return Ok(None);
    }
    let faces = letter_faces(rot, lettered)?;
    let ends: BTreeSet<VertexId> = need.iter().flat_map(|&(a, b)| [a, b]).collect();
    let ok = |f: &Face| f.len() == 3 && f.corners().iter().all(|v| ends.contains(v));
    if faces.iter().filter(|f| ok(f)).count() < 2 {
        return Ok(None);
    }
    merge_search(rot, &need, true, &ok, &mut |r, _| Some(r))
}

fn lemma_k6_at(
    rot: &RotationSystem,
    u: VertexId,
    trip: &[(VertexId, VertexId, VertexId)],
    lettered: &BTreeSet<VertexId>,
) -> Result<SurgeryOutcome> {
    let [(a, p1, b), (c, p2, dd), (e, p3, f)] = [trip[0], trip[1], trip[2]];
    let mut out = SurgeryOutcome::start(rot)?;
    out.note(format!("u={u}: {a} {p1} {b} .. {c} {p2} {dd} .. {e} {p3} {f}"));
    let mut r = flip_to(rot, u, p1, edge(a, b))?;
    r = flip_to(&r, u, p2, edge(c, dd))?;
    r = flip_to(&r, u, p3, edge(e, f))?;
    out.note(format!("flipped ({u},{p1}), ({u},{p2}), ({u},{p3})"));
    let r1 = construction1(&r, u, b, dd, f)?;
    let nine = face_from(&r1, a, b).or_else(|_| face_from(&r1, b, a))?;
    let nine = if nine.len() == 9 { nine } else { face_from(&r1, a, b)? };
    if nine.len() != 9 {
        return Err(Error::Internal(format!("construction 1 at {u} did not give a 9-gon")));
    }
    out.note(format!("construction 1 at {u} with segments starting {b}, {dd}, {f}"));
    let pool = missing_among(&r1, lettered);
    let mut found = None;
    plan_chords(&r1, &[nine.corners()], Fill::Subset(&pool), &mut |plan| {
        let Ok(r2) = apply_plan(&r1, plan) else { return false };
        if let Ok(Some(r3)) = closing_handle(&r2, lettered) {
            found = Some((r2, r3));
        }
        found.is_some()
    });
    let (r9, r3) = found.ok_or_else(|| {
        Error::SearchFailure(format!(
            "no chord choice in the 9-gon at {u} leaves a closable remainder"
        ))
    })?;
    out.stage(r9)?;
    out.note("construction 3 between two letter triangles, five chords".into());
    out.stage(r3.clone())?;
    let fin = complete_k13(&r3)?;
    out.extend(fin);
    out.finish()
}

/// Lemma for `K_n - K_8`: stages `(n,28)`, `(n,22)`, `(n,16)`, `(n,10)`,
/// `(n,4)` and `K_n`.
pub fn lemma_k8(rot: &RotationSystem, w: &Witness) -> Result<SurgeryOutcome> {
    let d = require_shape(rot, &[DeficitShape::K(8)])?;
    triangular(rot)?;
    let lettered = lettered_vertices(&d);
    let us: Vec<VertexId> = match w.u {
        Some(u) => vec![u],
        None => rot.vertices().filter(|v| !lettered.contains(v)).collect(),
    };
    let mut last_err = None;
    for &u in &us {
        let row = row_of(rot, u)?.to_vec();
        for trip in triples(&row, &lettered, 4) {
            let ps: Vec<VertexId> = trip.iter().map(|t| t.1).collect();
            if let Some(p) = &w.p {
                if *p != ps {
                    continue;
                }
            }
            if let Some(v) = w.v {
                check_sigma(rot, v, &ps)?;
            }
            match lemma_k8_at(rot, u, &trip, &lettered, w.v) {
                Ok(out) => return Ok(out),
                Err(e) => last_err = Some(e),
            }
        }
    }
    Err(last_err.unwrap_or_else(|| Error::Pattern("no vertex has the eight-letter row pattern".into())))
}

fn lemma_k8_at(
    rot: &RotationSystem,
    u: VertexId,
    trip: &[(VertexId, VertexId, VertexId)],
    lettered: &BTreeSet<VertexId>,
    v: Option<VertexId>,
) -> Result<SurgeryOutcome> {
    let [(a, p1, b), (c, p2, dd), (e, p3, f), (g, p4, h)] = [trip[0], trip[1], trip[2], trip[3]];
    let mut out = SurgeryOutcome::start(rot)?;
    out.note(format!(
        "u={u}: {a} {p1} {b} .. {c} {p2} {dd} .. {e} {p3} {f} .. {g} {p4} {h}"
    ));
    let mut r = rot.clone();
    for (p, x, y) in [(p1, a, b), (p2, c, dd), (p3, e, f), (p4, g, h)] {
        r = flip_to(&r, u, p, edge(x, y))?;
    }
    out.note(format!("flipped ({u},{p1}), ({u},{p2}), ({u},{p3}), ({u},{p4})"));
    let r1 = construction2(&r, u, b, dd, f, h)?;
    out.note(format!(
        "construction 2 at {u} with segments starting {b}, {dd}, {f}, {h}"
    ));
    let hexes: Vec<Face> = canonical_faces(&r1)?.into_iter().filter(|fc| fc.len() == 6).collect();
    if hexes.len() != 2 {
        return Err(Error::Internal(format!("construction 2 left {} hexagons", hexes.len())));
    }
    let chords: BTreeSet<Edge> = [edge(dd, g), edge(c, h), edge(b, e), edge(a, f)].into();
    let mut found = None;
    plan_chords(
        &r1,
        &[hexes[0].corners(), hexes[1].corners()],
        Fill::Cover(&chords),
        &mut |plan| {
            found = apply_plan(&r1, plan).ok();
            found.is_some()
        },
    );
    let r2 = found.ok_or_else(|| Error::Pattern("hexagons do not take the four chords".into()))?;
    let quads: Vec<Face> = canonical_faces(&r2)?.into_iter().filter(|fc| fc.len() == 4).collect();
    if quads.len() != 2 {
        return Err(Error::Internal(format!(
            "expected two quadrilaterals, found {}",
            quads.len()
        )));
    }
    out.note(format!("chords {}", fmt_edges(&chords)));
    // side stage: triangulate both quadrilaterals
    let pool = missing_among(&r2, lettered);
    let mut side = None;
    plan_chords(
        &r2,
        &[quads[0].corners(), quads[1].corners()],
        Fill::Subset(&pool),
        &mut |plan| {
            side = apply_plan(&r2, plan).ok();
            side.is_some()
        },
    );
    let side = side.ok_or_else(|| Error::Internal("quadrilaterals cannot be triangulated".into()))?;
    out.note("triangulated both quadrilaterals".into());
    out.stage(side)?;
    // handle 2 joins the quadrilaterals; handles 3 and 4 each join two triangles
    let pairs = vec![(quads[0].clone(), quads[1].clone())];
    let plan = merge_search_subset(&r2, &pool, &pairs, &mut |r3| {
        let pool3 = missing_among(&r3, lettered);
        if pool3.len() != 12 {
            return None;
        }
        let tris = letter_faces(&r3, lettered).ok()?;
        let mut cands = Vec::new();
        for (i, t1) in tris.iter().enumerate() {
            for t2 in &tris[i + 1..] {
                let s1 = t1.corners();
                let s2 = t2.corners();
                let cross = s1
                    .iter()
                    .flat_map(|&x| s2.iter().map(move |&y| edge(x, y)))
                    .filter(|e| pool3.contains(e))
                    .count();
                if cross >= 6 {
                    cands.push((t1.clone(), t2.clone()));
                }
            }
        }
        if cands.len() < 2 {
            return None;
        }
        merge_search_subset(&r3, &pool3, &cands, &mut |r4| {
            if missing_among(&r4, lettered).len() != 6 {
                return None;
            }
            closing_handle(&r4, lettered)
                .ok()
                .flatten()
                .map(|r5| (r3.clone(), r4, r5))
        })
        .ok()
        .flatten()
    })?;
    let (r16, r10, r4) =
        plan.ok_or_else(|| Error::SearchFailure(format!("no handle sequence closes the eight letters at {u}")))?;
    out.note("construction 3 between the quadrilaterals, seven chords".into());
    out.stage(r16)?;
    out.note("construction 3 between two letter triangles, five chords".into());
    out.stage(r10)?;
    out.note("construction 3 between two letter triangles, five chords".into());
    out.stage(r4.clone())?;
    let fin = complete_k14(&r4, v)?;
    out.extend(fin);
    out.finish()
}

/// Removes the six edges of each handle `ladder` yields at the given shifts.
pub fn subtract_handles(rot: &RotationSystem, ladder: &LadderSpec, shifts: &[u32]) -> Result<RotationSystem> {
    let n = rot.modulus();
    if n == 0 || !n.is_multiple_of(3) {
        return Err(Error::Precondition(
            "handle subtraction needs a group-derived embedding".into(),
        ));
    }
    let mut seen: BTreeMap<Edge, u32> = BTreeMap::new();
    let mut r = rot.clone();
    let distinct: BTreeSet<u32> = shifts.iter().copied().collect();
    if distinct.len() != shifts.len() {
        return Err(Error::Precondition("repeated shift".into()));
    }
    for &k in shifts {
        if k % 3 != 0 || k >= n {
            return Err(Error::Precondition(format!(
                "shift {k} is not a multiple of 3 below {n}"
            )));
        }
        for e in ladder.handle_edges(n, k) {
            if let Some(prev) = seen.insert(e, k) {
                return Err(Error::Internal(format!(
                    "handles at shifts {prev} and {k} share edge ({}, {})",
                    e.0, e.1
                )));
            }
            if !r.has_edge(e.0, e.1) {
                return Err(Error::Internal(format!(
                    "ladder edge ({}, {}) at shift {k} is absent",
                    e.0, e.1
                )));
            }
        }
    }
    let mut rows: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    for &(a, b) in seen.keys() {
        for (x, y) in [(a, b), (b, a)] {
            let row = rows.entry(x).or_insert_with(|| r.row(x).unwrap().to_vec());
            row.retain(|&z| z != y);
        }
    }
    r = r.with_rows(rows);
    r.validate()?;
    let s = analyze(&r)?;
    if !s.triangular {
        return Err(Error::Internal("handle subtraction left a nontriangular face".into()));
    }
    Ok(r)
}

/// Puts a new vertex `z` inside `face`, joined to every corner.
pub fn subdivide_face(rot: &RotationSystem, face: &Face, z: VertexId) -> Result<RotationSystem> {
    if rot.row(z).is_some() {
        return Err(Error::Precondition(format!("vertex {z} already exists")));
    }
    if !face.is_simple() {
        return Err(Error::Precondition(format!("face {face} repeats a vertex")));
    }
    let k = face.len();
    let corners = face.corners();
    let mut changes = Vec::new();
    for i in 0..k {
        let v = corners[i];
        let from = corners[(i + k - 1) % k];
        let mut row = row_of(rot, v)?.to_vec();
        let at = row.iter().position(|&x| x == from).unwrap();
        row.insert(at, z);
        changes.push((v, row));
    }
    changes.push((z, corners));
    let out = rot.with_rows(changes);
    out.validate()?;
    Ok(out)
}

/// Contracts the edge `(u, v)` into `u`.
pub fn amalgamate(rot: &RotationSystem, u: VertexId, v: VertexId) -> Result<RotationSystem> {
    if !rot.has_edge(u, v) {
        return Err(Error::Precondition(format!("edge ({u}, {v}) is absent")));
    }
    let ru = row_from(rot, u, v)?;
    let rv = row_from(rot, v, u)?;
    if let Some(&x) = ru[1..].iter().find(|x| rv.contains(x)) {
        return Err(Error::Precondition(format!(
            "{u} and {v} share neighbor {x}; merging would double an edge"
        )));
    }
    let merged: Vec<VertexId> = rv[1..].iter().chain(&ru[1..]).copied().collect();
    let mut changes = vec![(v, Vec::new()), (u, merged)];
    for &x in &rv[1..] {
        let row = row_of(rot, x)?.iter().map(|&y| if y == v { u } else { y }).collect();
        changes.push((x, row));
    }
    let out = rot.with_rows(changes);
    out.validate()?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{sporadic, SporadicName};
    use crate::rotation::rows_from_table;

    fn n(x: u32) -> VertexId {
        VertexId::Num(x)
    }

    fn octahedron() -> RotationSystem {
        RotationSystem::new(
            0,
            rows_from_table("0: 1 2 3 4\n5: 1 4 3 2\n1: 0 4 5 2\n2: 0 1 5 3\n3: 0 2 5 4\n4: 0 3 5 1"),
        )
        .unwrap()
    }

    #[test]
    fn construction1_nine_gon() {
        let rot = octahedron();
        let g0 = analyze(&rot).unwrap().genus;
        let r = construction1(&rot, n(0), n(1), n(2), n(3)).unwrap();
        let s = analyze(&r).unwrap();
        assert_eq!(s.genus, g0 + 1);
        let lens: Vec<usize> = crate::embedding::trace_faces(&r)
            .unwrap()
            .iter()
            .map(Face::len)
            .filter(|&l| l != 3)
            .collect();
        assert_eq!(lens, vec![9]);
    }

    #[test]
    fn construction2_two_hexagons() {
        let rot = octahedron();
        let r = construction2(&rot, n(0), n(1), n(2), n(3), n(4)).unwrap();
        assert_eq!(analyze(&r).unwrap().genus, 1);
        let mut lens: Vec<usize> = crate::embedding::trace_faces(&r)
            .unwrap()
            .iter()
            .map(Face::len)
            .filter(|&l| l != 3)
            .collect();
        lens.sort();
        assert_eq!(lens, vec![6, 6]);
    }

    #[test]
    fn construction3_two_triangles() {
        let rot = octahedron();
        let faces = canonical_faces(&rot).unwrap();
        let f1 = faces.iter().find(|f| f.contains(n(0))).unwrap();
        let f2 = faces.iter().find(|f| f.contains(n(5))).unwrap();
        let i = f1.corners().iter().position(|&x| x == n(0)).unwrap();
        let j = f2.corners().iter().position(|&x| x == n(5)).unwrap();
        let r = construction3(&rot, f1, i, f2, j).unwrap();
        assert_eq!(analyze(&r).unwrap().genus, 1);
        assert_eq!(face_from(&r, n(0), n(5)).unwrap().len(), 8);
    }

    #[test]
    fn k17_minus_k2_completes() {
        let out = complete_k2(&sporadic(SporadicName::K17mK2)).unwrap();
        assert_eq!(out.last().summary.genus, 16);
    }

    #[test]
    fn k11_minus_c4_completes() {
        let rot = sporadic(SporadicName::K11mC4);
        let out = complete_c4(&rot).unwrap();
        assert_eq!(out.last().summary.genus, 5);
        let before = deficit(&rot).missing;
        let added: BTreeSet<Edge> = out.final_rot().edges().difference(&rot.edges()).copied().collect();
        assert_eq!(added, before);
        assert!(complete_c4(out.final_rot()).is_err());
    }

    #[test]
    fn k9_from_subdivided_k8() {
        let rot = sporadic(SporadicName::K8q0q1);
        let (q0, q1) = (n(8), n(9));
        let faces = canonical_faces(&rot).unwrap();
        let f1 = faces.iter().find(|f| f.contains(q0)).unwrap();
        let f2 = faces.iter().find(|f| f.contains(q1)).unwrap();
        let i = f1.corners().iter().position(|&x| x == q0).unwrap();
        let j = f2.corners().iter().position(|&x| x == q1).unwrap();
        let r = construction3(&rot, f1, i, f2, j).unwrap();
        assert_eq!(analyze(&r).unwrap().genus, 3);
        let k9 = amalgamate(&r, q0, q1).unwrap();
        let s = analyze(&k9).unwrap();
        assert_eq!((s.v, s.e, s.genus), (9, 36, 3));
        assert_eq!(deficit(&k9).shape, DeficitShape::Empty);
    }

    #[test]
    fn subdividing_k8_quadrilaterals_gives_the_table() {
        let table = sporadic(SporadicName::K8q0q1);
        let (q0, q1) = (n(8), n(9));
        let mut rows = table.rows().clone();
        rows.remove(&q0);
        rows.remove(&q1);
        for r in rows.values_mut() {
            r.retain(|&x| x != q0 && x != q1);
        }
        let k8 = RotationSystem::new(0, rows).unwrap();
        assert_eq!(analyze(&k8).unwrap().genus, 2);
        let quads: Vec<Face> = canonical_faces(&k8)
            .unwrap()
            .into_iter()
            .filter(|f| f.len() == 4)
            .collect();
        assert_eq!(quads.len(), 2);
        let q0_face = quads.iter().find(|f| f.contains(n(0))).unwrap();
        let q1_face = quads.iter().find(|f| f.contains(n(1))).unwrap();
        let r = subdivide_face(&k8, q0_face, q0).unwrap();
        let r = subdivide_face(&r, q1_face, q1).unwrap();
        assert_eq!(r, table);
    }

    #[test]
    fn subdividing_a_triangle() {
        let rot = octahedron();
        let f = canonical_faces(&rot).unwrap()[0].clone();
        let r = subdivide_face(&rot, &f, n(6)).unwrap();
        let s = analyze(&r).unwrap();
        assert!(s.triangular);
        assert_eq!(s.genus, 0);
    }

    #[test]
    fn amalgamate_rejects_common_neighbor() {
        assert!(amalgamate(&octahedron(), n(0), n(1)).is_err());
    }
}
