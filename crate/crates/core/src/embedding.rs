//! Face tracing, Euler bookkeeping and elementary edits of rotation systems.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::rotation::RotationSystem;
use crate::vertex::VertexId;

/// A face boundary walk: each directed edge's head is the next edge's tail.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face {
    pub walk: Vec<(VertexId, VertexId)>,
}

impl Face {
    pub fn len(&self) -> usize {
        self.walk.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walk.is_empty()
    }

    /// Corner vertices in walk order.
    pub fn corners(&self) -> Vec<VertexId> {
        self.walk.iter().map(|&(u, _)| u).collect()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.walk.iter().any(|&(u, _)| u == v)
    }

    /// True if no vertex occurs twice on the walk.
    pub fn is_simple(&self) -> bool {
        let c = self.corners();
        c.iter().collect::<HashSet<_>>().len() == c.len()
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.corners().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// Traces all faces. From `(u -> v)` the walk continues along `(v -> w)`,
/// where `w` immediately precedes `u` in the row of `v`.
pub fn trace_faces(rot: &RotationSystem) -> Result<Vec<Face>> {
    rot.validate()?;
    let pos = rot.position_index();
    let rows = rot.rows();
    let mut used: HashSet<(VertexId, VertexId)> = HashSet::new();
    let mut faces = Vec::new();
    for (&u0, row) in rows {
        for &v0 in row {
            if used.contains(&(u0, v0)) {
                continue;
            }
            let mut walk = Vec::new();
            let (mut u, mut v) = (u0, v0);
            while used.insert((u, v)) {
                walk.push((u, v));
                let rv = &rows[&v];
                let i = pos[&(v, u)];
                let w = rv[(i + rv.len() - 1) % rv.len()];
                (u, v) = (v, w);
            }
            if (u, v) != (u0, v0) {
                return Err(Error::Internal(format!("face walk from ({u0}->{v0}) did not close")));
            }
            faces.push(Face { walk });
        }
    }
    Ok(faces)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EmbeddingSummary {
    pub v: usize,
    pub e: usize,
    pub f: usize,
    pub genus: u32,
    pub triangular: bool,
}

impl fmt::Display for EmbeddingSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "V={} E={} F={} genus={} {}",
            self.v,
            self.e,
            self.f,
            self.genus,
            if self.triangular { "triangular" } else { "nontriangular" }
        )
    }
}

pub fn analyze(rot: &RotationSystem) -> Result<EmbeddingSummary> {
    let faces = trace_faces(rot)?;
    summary_from_faces(rot, &faces)
}

pub(crate) fn summary_from_faces(rot: &RotationSystem, faces: &[Face]) -> Result<EmbeddingSummary> {
    let (v, e, f) = (rot.vertex_count(), rot.edge_count(), faces.len());
    let chi = v as i64 - e as i64 + f as i64;
    if chi > 2 || chi % 2 != 0 {
        return Err(Error::Internal(format!("Euler characteristic {chi} is not 2 - 2g")));
    }
    Ok(EmbeddingSummary {
        v,
        e,
        f,
        genus: ((2 - chi) / 2) as u32,
        triangular: faces.iter().all(|fc| fc.len() == 3),
    })
}

/// Triangularity via the ruler rule: `... j k ...` at `i` forces `... k i ...` at `j`.
pub fn is_triangular_ruler(rot: &RotationSystem) -> bool {
    let rows = rot.rows();
    if rows.values().any(|r| r.len() < 2) {
        return false;
    }
    let mut next = BTreeMap::new();
    for (&v, r) in rows {
        for (i, &w) in r.iter().enumerate() {
            next.insert((v, w), r[(i + 1) % r.len()]);
        }
    }
    rows.iter().all(|(&i, r)| {
        (0..r.len()).all(|p| {
            let (j, k) = (r[p], r[(p + 1) % r.len()]);
            next.get(&(j, k)) == Some(&i)
        })
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeficitShape {
    Empty,
    K2,
    K3,
    K13,
    K14,
    C4,
    /// Complete graph on 4 to 8 vertices.
    K(u8),
    Other,
}

impl fmt::Display for DeficitShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DeficitShape::Empty => write!(f, "Empty"),
            DeficitShape::K2 => write!(f, "K2"),
            DeficitShape::K3 => write!(f, "K3"),
            DeficitShape::K13 => write!(f, "K13"),
            DeficitShape::K14 => write!(f, "K14"),
            DeficitShape::C4 => write!(f, "C4"),
            DeficitShape::K(l) => write!(f, "K{l}"),
            DeficitShape::Other => write!(f, "Other"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Deficit {
    pub n: usize,
    pub missing: BTreeSet<(VertexId, VertexId)>,
    pub shape: DeficitShape,
}

pub fn classify_missing(missing: &BTreeSet<(VertexId, VertexId)>) -> DeficitShape {
    if missing.is_empty() {
        return DeficitShape::Empty;
    }
    let mut deg: BTreeMap<VertexId, usize> = BTreeMap::new();
    for &(u, v) in missing {
        *deg.entry(u).or_default() += 1;
        *deg.entry(v).or_default() += 1;
    }
    let (nv, ne) = (deg.len(), missing.len());
    if ne == nv * (nv - 1) / 2 {
        return match nv {
            2 => DeficitShape::K2,
            3 => DeficitShape::K3,
            4..=8 => DeficitShape::K(nv as u8),
            _ => DeficitShape::Other,
        };
    }
    let max = deg.values().copied().max().unwrap_or(0);
    match (nv, ne) {
        (4, 3) if max == 3 => DeficitShape::K13,
        (5, 4) if max == 4 => DeficitShape::K14,
        (4, 4) if deg.values().all(|&d| d == 2) => DeficitShape::C4,
        _ => DeficitShape::Other,
    }
}

/// Missing edges against the complete graph on the rotation's vertex set.
pub fn deficit(rot: &RotationSystem) -> Deficit {
    let verts: Vec<VertexId> = rot.vertices().collect();
    let mut missing = BTreeSet::new();
    for (i, &u) in verts.iter().enumerate() {
        for &v in &verts[i + 1..] {
            if !rot.has_edge(u, v) {
                missing.insert((u, v));
            }
        }
    }
    let shape = classify_missing(&missing);
    Deficit {
        n: verts.len(),
        missing,
        shape,
    }
}

/// Genus of the complete graph: `ceil((n-3)(n-4)/12)`.
pub fn genus_kn(n: u32) -> Result<u32> {
    if n < 3 {
        return Err(Error::Domain(format!("genus of K_{n} needs n >= 3")));
    }
    let p = (n as u64 - 3) * (n as u64 - 4);
    Ok(p.div_ceil(12) as u32)
}

/// Parameters of a minimum triangulation: an `(n, t)`-triangulation exists.
pub fn mt_valid(n: i64, t: i64) -> bool {
    n >= 4 && t >= 0 && t <= n - 6 && ((n - 3) * (n - 4) - 2 * t).rem_euclid(12) == 0 && (n, t) != (9, 3)
}

/// Genus of a triangular embedding of `K_n` minus `t` edges.
pub fn triangulation_genus(n: i64, t: i64) -> Option<i64> {
    let e = n * (n - 1) / 2 - t;
    let num = e - 3 * n + 6;
    (num >= 0 && num % 6 == 0).then_some(num / 6)
}

fn require_edge(rot: &RotationSystem, u: VertexId, v: VertexId) -> Result<()> {
    if rot.has_edge(u, v) {
        Ok(())
    } else {
        Err(Error::Precondition(format!("edge ({u}, {v}) is absent")))
    }
}

/// Third vertex of the face traced along `(u -> v)`, if that face is a triangle.
pub fn triangle_apex(rot: &RotationSystem, u: VertexId, v: VertexId) -> Option<VertexId> {
    let x = rot.pred(v, u)?;
    (rot.pred(x, v)? == u && rot.pred(u, x)? == v).then_some(x)
}

/// Replaces `(u, v)` by the other diagonal of the two triangles on it.
pub fn edge_flip(rot: &RotationSystem, u: VertexId, v: VertexId) -> Result<RotationSystem> {
    require_edge(rot, u, v)?;
    let x =
        triangle_apex(rot, u, v).ok_or_else(|| Error::Precondition(format!("face on ({u}->{v}) is not a triangle")))?;
    let y =
        triangle_apex(rot, v, u).ok_or_else(|| Error::Precondition(format!("face on ({v}->{u}) is not a triangle")))?;
    if x == y {
        return Err(Error::Precondition(format!("both faces on ({u}, {v}) share apex {x}")));
    }
    if rot.has_edge(x, y) {
        return Err(Error::FlipConflict(x, y));
    }
    let remove = |row: &[VertexId], w: VertexId| row.iter().copied().filter(|&z| z != w).collect::<Vec<_>>();
    let insert_before = |row: &[VertexId], before: VertexId, new: VertexId| {
        let mut r = row.to_vec();
        let i = r.iter().position(|&z| z == before).unwrap();
        r.insert(i, new);
        r
    };
    let out = rot.with_rows([
        (u, remove(rot.row(u).unwrap(), v)),
        (v, remove(rot.row(v).unwrap(), u)),
        (x, insert_before(rot.row(x).unwrap(), v, y)),
        (y, insert_before(rot.row(y).unwrap(), u, x)),
    ]);
    Ok(out)
}

/// Inserts edge `a`-`b` at two face corners. A corner is the vertex together
/// with the neighbor it is entered from; the new neighbor goes just before it.
pub(crate) fn insert_edge_at_corners(
    rot: &RotationSystem,
    (a, from_a): (VertexId, VertexId),
    (b, from_b): (VertexId, VertexId),
) -> Result<RotationSystem> {
    if a == b {
        return Err(Error::Precondition(format!("chord would be a loop at {a}")));
    }
    if rot.has_edge(a, b) {
        return Err(Error::Precondition(format!("({a}, {b}) already present")));
    }
    let place = |v: VertexId, from: VertexId, new: VertexId| -> Result<Vec<VertexId>> {
        let mut r = rot
            .row(v)
            .ok_or_else(|| Error::Precondition(format!("no vertex {v}")))?
            .to_vec();
        let i = r
            .iter()
            .position(|&z| z == from)
            .ok_or_else(|| Error::Precondition(format!("{from} not adjacent to {v}")))?;
        r.insert(i, new);
        Ok(r)
    };
    let ra = place(a, from_a, b)?;
    let rb = place(b, from_b, a)?;
    Ok(rot.with_rows([(a, ra), (b, rb)]))
}

/// Corner `i` of a face: its vertex and the vertex the walk arrives from.
pub fn face_corner(face: &Face, i: usize) -> (VertexId, VertexId) {
    let k = face.len();
    (face.walk[i % k].0, face.walk[(i + k - 1) % k].0)
}

/// Adds a chord between corners `i` and `j` of `face`, splitting it in two.
pub fn add_edge_in_face(rot: &RotationSystem, face: &Face, i: usize, j: usize) -> Result<RotationSystem> {
    let k = face.len();
    if i >= k || j >= k || i == j {
        return Err(Error::Precondition(format!(
            "corners {i}, {j} not distinct corners of a {k}-gon"
        )));
    }
    insert_edge_at_corners(rot, face_corner(face, i), face_corner(face, j))
}

/// Removes an edge; the result must still be a connected embedding.
pub fn delete_edge(rot: &RotationSystem, u: VertexId, v: VertexId) -> Result<RotationSystem> {
    require_edge(rot, u, v)?;
    let drop = |x: VertexId, y: VertexId| {
        rot.row(x)
            .unwrap()
            .iter()
            .copied()
            .filter(|&z| z != y)
            .collect::<Vec<_>>()
    };
    let (ru, rv) = (drop(u, v), drop(v, u));
    if ru.is_empty() || rv.is_empty() {
        return Err(Error::Precondition(format!("deleting ({u}, {v}) isolates a vertex")));
    }
    let out = rot.with_rows([(u, ru), (v, rv)]);
    out.validate()?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rotation::rows_from_table;

    fn rot(table: &str) -> RotationSystem {
        RotationSystem::new(0, rows_from_table(table)).unwrap()
    }

    fn n(x: u32) -> VertexId {
        VertexId::Num(x)
    }

    const OCTAHEDRON: &str = "0: 1 2 3 4\n1: 0 4 5 2\n2: 0 1 5 3\n3: 0 2 5 4\n4: 0 3 5 1\n5: 1 4 3 2";

    #[test]
    fn digon_sphere() {
        let faces = trace_faces(&rot("0: 1\n1: 0")).unwrap();
        assert_eq!(faces.len(), 1);
        assert_eq!(faces[0].len(), 2);
        let s = analyze(&rot("0: 1\n1: 0")).unwrap();
        assert_eq!((s.v, s.e, s.f, s.genus), (2, 1, 1, 0));
    }

    #[test]
    fn triangle_sphere() {
        let s = analyze(&rot("0: 1 2\n1: 0 2\n2: 0 1")).unwrap();
        assert_eq!((s.v, s.e, s.f, s.genus, s.triangular), (3, 3, 2, 0, true));
    }

    #[test]
    fn k4_ascending_rows() {
        // Hand trace: with every row ascending the four faces are 0->1->3->2->0 style walks.
        let r = rot("0: 1 2 3\n1: 0 2 3\n2: 0 1 3\n3: 0 1 2");
        let faces = trace_faces(&r).unwrap();
        let total: usize = faces.iter().map(Face::len).sum();
        assert_eq!(total, 12);
        let s = analyze(&r).unwrap();
        assert_eq!(s.v as i64 - s.e as i64 + s.f as i64, 2 - 2 * s.genus as i64);
        assert_eq!((s.f, s.genus), (2, 1));
    }

    #[test]
    fn octahedron_is_planar_triangulation() {
        let r = rot(OCTAHEDRON);
        let s = analyze(&r).unwrap();
        assert_eq!((s.v, s.e, s.f, s.genus, s.triangular), (6, 12, 8, 0, true));
        assert!(is_triangular_ruler(&r));
    }

    #[test]
    fn flip_octahedron_and_back() {
        let r = rot(OCTAHEDRON);
        let x = triangle_apex(&r, n(0), n(1)).unwrap();
        let y = triangle_apex(&r, n(1), n(0)).unwrap();
        let f = edge_flip(&r, n(0), n(1)).unwrap();
        let s = analyze(&f).unwrap();
        assert_eq!((s.genus, s.triangular), (0, true));
        assert!(f.has_edge(x, y) && !f.has_edge(n(0), n(1)));
        let back = edge_flip(&f, x, y).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn k4_flip_conflicts() {
        let r = rot("0: 1 2 3\n1: 0 3 2\n2: 0 1 3\n3: 0 2 1");
        assert_eq!(analyze(&r).unwrap().genus, 0);
        assert!(matches!(edge_flip(&r, n(0), n(1)), Err(Error::FlipConflict(..))));
    }

    #[test]
    fn square_chord_and_delete() {
        let r = rot("0: 1 3\n1: 0 2\n2: 1 3\n3: 0 2");
        let faces = trace_faces(&r).unwrap();
        let sq = &faces[0];
        let i = sq.corners().iter().position(|&v| v == n(0)).unwrap();
        let j = sq.corners().iter().position(|&v| v == n(2)).unwrap();
        let r2 = add_edge_in_face(&r, sq, i, j).unwrap();
        let s = analyze(&r2).unwrap();
        assert_eq!((s.e, s.f, s.genus), (5, 3, 0));
        let lens: Vec<usize> = trace_faces(&r2).unwrap().iter().map(Face::len).collect();
        assert_eq!(lens.iter().filter(|&&l| l == 3).count(), 2);
        let r3 = delete_edge(&r2, n(0), n(2)).unwrap();
        assert_eq!(analyze(&r3).unwrap(), analyze(&r).unwrap());
    }

    #[test]
    fn shapes() {
        let pairs = |v: &[(u32, u32)]| v.iter().map(|&(a, b)| (n(a), n(b))).collect::<BTreeSet<_>>();
        assert_eq!(classify_missing(&pairs(&[])), DeficitShape::Empty);
        assert_eq!(classify_missing(&pairs(&[(0, 1)])), DeficitShape::K2);
        assert_eq!(classify_missing(&pairs(&[(0, 1), (1, 2), (0, 2)])), DeficitShape::K3);
        assert_eq!(classify_missing(&pairs(&[(0, 1), (0, 2), (0, 3)])), DeficitShape::K13);
        assert_eq!(
            classify_missing(&pairs(&[(0, 1), (0, 2), (0, 3), (0, 4)])),
            DeficitShape::K14
        );
        assert_eq!(
            classify_missing(&pairs(&[(0, 1), (1, 2), (2, 3), (0, 3)])),
            DeficitShape::C4
        );
        assert_eq!(classify_missing(&pairs(&[(0, 1), (1, 2), (2, 3)])), DeficitShape::Other);
        let k5: Vec<(u32, u32)> = (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b))).collect();
        assert_eq!(classify_missing(&pairs(&k5)), DeficitShape::K(5));
    }

    #[test]
    fn genus_formula() {
        assert_eq!(genus_kn(7).unwrap(), 1);
        assert_eq!(genus_kn(17).unwrap(), 16);
        assert_eq!(genus_kn(4).unwrap(), 0);
        assert!(genus_kn(2).is_err());
    }

    #[test]
    fn minimum_triangulation_parameters() {
        assert!(!mt_valid(9, 3));
        // the ten-vertex triangulation of the double torus stands in for (9,3)
        // and lies outside the range t <= n - 6
        assert!(!mt_valid(10, 9));
        assert_eq!(triangulation_genus(10, 9), Some(2));
        assert!(mt_valid(17, 1));
        assert!(mt_valid(10, 3));
        assert!(!mt_valid(17, 2));
    }
}
