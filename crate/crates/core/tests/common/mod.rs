//! Generators and property checks shared by the property suite and the
//! acceptance runner.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use trigenus::embedding::{face_corner, trace_faces};
use trigenus::families::catalog::disjoint_shifts;
use trigenus::families::{build, sporadic, Case, FamilyParams, SporadicName};
use trigenus::surgery::{canonical_faces, construction1, construction2, construction3, subtract_handles};
use trigenus::{analyze, deficit, edge_flip, find_ladders, is_triangular_ruler, RotationSystem, VertexId};

pub fn n(i: u32) -> VertexId {
    VertexId::Num(i)
}

pub fn traced_triangular(rot: &RotationSystem) -> bool {
    trace_faces(rot).unwrap().iter().all(|f| f.len() == 3)
}

pub fn octahedron() -> RotationSystem {
    let rows = [
        (0, vec![1, 2, 3, 4]),
        (5, vec![4, 3, 2, 1]),
        (1, vec![0, 4, 5, 2]),
        (2, vec![0, 1, 5, 3]),
        (3, vec![0, 2, 5, 4]),
        (4, vec![0, 3, 5, 1]),
    ];
    RotationSystem::from_pairs(0, rows.into_iter().map(|(v, r)| (n(v), r.into_iter().map(n).collect()))).unwrap()
}

fn bases() -> Vec<RotationSystem> {
    vec![
        octahedron(),
        sporadic(SporadicName::K8q0q1),
        sporadic(SporadicName::K11mC4),
        sporadic(SporadicName::K17mK2),
    ]
}

/// A triangular embedding reached from one of the bases by random flips.
fn scrambled(base: usize, picks: &[usize]) -> RotationSystem {
    let mut rot = bases()[base % 4].clone();
    for &p in picks {
        let edges: Vec<_> = rot.edges().into_iter().collect();
        let (u, v) = edges[p % edges.len()];
        if let Ok(r) = edge_flip(&rot, u, v) {
            rot = r;
        }
    }
    rot
}

pub fn triangular_embedding() -> impl Strategy<Value = RotationSystem> {
    (0usize..4, prop::collection::vec(any::<usize>(), 0..40)).prop_map(|(b, p)| scrambled(b, &p))
}

fn permutations(items: &[VertexId]) -> Vec<Vec<VertexId>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Every cyclic order of each neighbor set, first neighbor fixed.
fn all_rotations(adj: &BTreeMap<VertexId, Vec<VertexId>>) -> Vec<RotationSystem> {
    let mut partial: Vec<BTreeMap<VertexId, Vec<VertexId>>> = vec![BTreeMap::new()];
    for (&v, nb) in adj {
        let orders: Vec<Vec<VertexId>> = permutations(&nb[1..])
            .into_iter()
            .map(|mut p| {
                p.insert(0, nb[0]);
                p
            })
            .collect();
        partial = partial
            .into_iter()
            .flat_map(|m| {
                orders.iter().map(move |o| {
                    let mut m = m.clone();
                    m.insert(v, o.clone());
                    m
                })
            })
            .collect();
    }
    partial
        .into_iter()
        .filter_map(|m| RotationSystem::new(0, m).ok())
        .collect()
}

/// Compares the ruler rule with face tracing on every rotation of every
/// connected graph with 2 to 5 vertices. Returns (rotations, triangular).
pub fn exhaustive_ruler() -> Result<(usize, usize), String> {
    let mut checked = 0usize;
    let mut triangular = 0usize;
    for order in 2u32..=5 {
        let pairs: Vec<(u32, u32)> = (0..order).flat_map(|a| (a + 1..order).map(move |b| (a, b))).collect();
        for mask in 1u32..(1 << pairs.len()) {
            let mut adj: BTreeMap<VertexId, Vec<VertexId>> = (0..order).map(|v| (n(v), Vec::new())).collect();
            for (i, &(a, b)) in pairs.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    adj.get_mut(&n(a)).unwrap().push(n(b));
                    adj.get_mut(&n(b)).unwrap().push(n(a));
                }
            }
            if adj.values().any(Vec::is_empty) {
                continue;
            }
            for rot in all_rotations(&adj) {
                let t = traced_triangular(&rot);
                if is_triangular_ruler(&rot) != t {
                    return Err(format!("ruler disagrees with tracing on\n{}", rot.to_text()));
                }
                checked += 1;
                triangular += usize::from(t);
            }
        }
    }
    Ok((checked, triangular))
}

pub type RandomGraph = (u32, Vec<bool>, Vec<Vec<u32>>);

pub fn random_graph() -> impl Strategy<Value = RandomGraph> {
    (
        3u32..=8,
        prop::collection::vec(any::<bool>(), 28),
        prop::collection::vec(prop::collection::vec(any::<u32>(), 8), 8),
    )
}

pub fn check_ruler_random((order, bits, keys): RandomGraph) -> Result<(), TestCaseError> {
    let mut adj: BTreeMap<VertexId, Vec<(u32, VertexId)>> = (0..order).map(|v| (n(v), Vec::new())).collect();
    let mut k = 0;
    for a in 0..order {
        for b in a + 1..order {
            if bits[k] {
                adj.get_mut(&n(a)).unwrap().push((keys[a as usize][b as usize], n(b)));
                adj.get_mut(&n(b)).unwrap().push((keys[b as usize][a as usize], n(a)));
            }
            k += 1;
        }
    }
    let rows: BTreeMap<VertexId, Vec<VertexId>> = adj
        .into_iter()
        .map(|(v, mut r)| {
            r.sort();
            (v, r.into_iter().map(|(_, w)| w).collect())
        })
        .collect();
    let Ok(rot) = RotationSystem::new(0, rows) else {
        return Err(TestCaseError::reject("disconnected"));
    };
    prop_assert_eq!(is_triangular_ruler(&rot), traced_triangular(&rot));
    Ok(())
}

/// A triangulation with two entries of one row swapped.
pub fn check_ruler_perturbed((rot, v, i, j): (RotationSystem, usize, usize, usize)) -> Result<(), TestCaseError> {
    prop_assert!(is_triangular_ruler(&rot));
    let vs: Vec<VertexId> = rot.vertices().collect();
    let v = vs[v % vs.len()];
    let mut rows = rot.rows().clone();
    let row = rows.get_mut(&v).unwrap();
    let (i, j) = (i % row.len(), j % row.len());
    row.swap(i, j);
    let r = RotationSystem::new(0, rows).unwrap();
    prop_assert_eq!(is_triangular_ruler(&r), traced_triangular(&r));
    Ok(())
}

fn nontriangular_lengths(rot: &RotationSystem) -> Vec<usize> {
    let mut l: Vec<usize> = trace_faces(rot)
        .unwrap()
        .iter()
        .map(|f| f.len())
        .filter(|&l| l != 3)
        .collect();
    l.sort();
    l
}

/// `k` sorted distinct positions in a row of length `len`.
fn positions(len: usize, picks: &[usize], k: usize) -> Option<Vec<usize>> {
    if len < k {
        return None;
    }
    let mut all: Vec<usize> = (0..len).collect();
    for (t, &p) in picks.iter().enumerate().take(k) {
        all.swap(t, t + p % (len - t));
    }
    let set: BTreeSet<usize> = all[..k].iter().copied().collect();
    Some(set.into_iter().collect())
}

pub type RowPick = (RotationSystem, usize, Vec<usize>);

pub fn row_pick() -> impl Strategy<Value = RowPick> {
    (
        triangular_embedding(),
        any::<usize>(),
        prop::collection::vec(any::<usize>(), 4),
    )
}

fn pick_row(rot: &RotationSystem, v: usize) -> (VertexId, Vec<VertexId>) {
    let vs: Vec<VertexId> = rot.vertices().collect();
    let v = vs[v % vs.len()];
    (v, rot.row(v).unwrap().to_vec())
}

pub fn check_construction1((rot, v, picks): RowPick) -> Result<(), TestCaseError> {
    let (v, row) = pick_row(&rot, v);
    let p = positions(row.len(), &picks, 3).unwrap();
    let r = construction1(&rot, v, row[p[0]], row[p[1]], row[p[2]]).unwrap();
    prop_assert_eq!(analyze(&r).unwrap().genus, analyze(&rot).unwrap().genus + 1);
    prop_assert_eq!(nontriangular_lengths(&r), vec![9]);
    Ok(())
}

pub fn check_construction2((rot, v, picks): RowPick) -> Result<(), TestCaseError> {
    let (v, row) = pick_row(&rot, v);
    let Some(p) = positions(row.len(), &picks, 4) else {
        return Err(TestCaseError::reject("degree 3"));
    };
    let r = construction2(&rot, v, row[p[0]], row[p[1]], row[p[2]], row[p[3]]).unwrap();
    prop_assert_eq!(analyze(&r).unwrap().genus, analyze(&rot).unwrap().genus + 1);
    prop_assert_eq!(nontriangular_lengths(&r), vec![6, 6]);
    Ok(())
}

pub fn check_construction3((rot, e, picks): RowPick) -> Result<(), TestCaseError> {
    let missing: Vec<_> = deficit(&rot).missing.into_iter().collect();
    let (a, b) = missing[e % missing.len()];
    let faces = canonical_faces(&rot).unwrap();
    let at_a: Vec<_> = faces.iter().filter(|f| f.contains(a)).collect();
    let at_b: Vec<_> = faces.iter().filter(|f| f.contains(b)).collect();
    let (fa, fb) = (at_a[picks[0] % at_a.len()], at_b[picks[1] % at_b.len()]);
    let i = (0..fa.len()).find(|&i| face_corner(fa, i).0 == a).unwrap();
    let j = (0..fb.len()).find(|&j| face_corner(fb, j).0 == b).unwrap();
    let r = construction3(&rot, fa, i, fb, j).unwrap();
    prop_assert_eq!(analyze(&r).unwrap().genus, analyze(&rot).unwrap().genus + 1);
    prop_assert_eq!(nontriangular_lengths(&r), vec![fa.len() + fb.len() + 2]);
    Ok(())
}

pub fn check_flip_involution((rot, e): (RotationSystem, usize)) -> Result<(), TestCaseError> {
    let edges: Vec<_> = rot.edges().into_iter().collect();
    let (u, v) = edges[e % edges.len()];
    if let Ok(r) = edge_flip(&rot, u, v) {
        let added: Vec<_> = r.edges().difference(&rot.edges()).copied().collect();
        prop_assert_eq!(added.len(), 1);
        let (x, y) = added[0];
        prop_assert!(is_triangular_ruler(&r));
        prop_assert_eq!(edge_flip(&r, x, y).unwrap(), rot);
    }
    Ok(())
}

/// Subtracting disjoint handles of the Case 11 s=3 graph in any order, all
/// at once or one by one, gives the same embedding. Returns the number of
/// ladders checked.
pub fn subtraction_order_independent() -> Result<usize, String> {
    let cg = build(FamilyParams::new(Case::C11, 3).unwrap()).unwrap();
    let rot = trigenus::derive_embedding(&cg).unwrap();
    let ladders = find_ladders(&cg);
    let mut checked = 0;
    for lad in &ladders {
        let shifts = disjoint_shifts(lad, rot.modulus());
        if shifts.len() < 2 {
            continue;
        }
        let take: Vec<u32> = shifts.iter().copied().take(3).collect();
        let whole = subtract_handles(&rot, lad, &take).map_err(|e| e.to_string())?;
        let mut rev = take.clone();
        rev.reverse();
        if subtract_handles(&rot, lad, &rev).map_err(|e| e.to_string())? != whole {
            return Err(format!("ladder {lad}: reversed shifts differ"));
        }
        let mut one_by_one = rot.clone();
        for &k in &rev {
            one_by_one = subtract_handles(&one_by_one, lad, &[k]).map_err(|e| e.to_string())?;
        }
        if one_by_one != whole {
            return Err(format!("ladder {lad}: one-by-one subtraction differs"));
        }
        if whole.edge_count() != rot.edge_count() - 6 * take.len()
            || analyze(&whole).unwrap().genus + take.len() as u32 != analyze(&rot).unwrap().genus
        {
            return Err(format!("ladder {lad}: wrong edge count or genus"));
        }
        checked += 1;
    }
    if checked == 0 {
        return Err("no ladder with two disjoint handles".into());
    }
    Ok(checked)
}
