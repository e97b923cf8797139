//! Every minimum triangulation and the genus embedding reachable for one `n`.

use std::collections::{BTreeMap, BTreeSet};

use super::{build, sporadic, Case, FamilyParams, SporadicName};
use crate::current::{derive_embedding, find_ladders, LadderSpec};
use crate::embedding::{analyze, deficit, genus_kn, mt_valid, triangulation_genus, DeficitShape, EmbeddingSummary};
use crate::error::{Error, Result};
use crate::rotation::RotationSystem;
use crate::surgery::{self, subtract_handles, SurgeryOutcome, Witness};
use crate::vertex::VertexId;

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    /// `(n,t)` for triangulations, `K<n>` for the genus embedding.
    pub label: String,
    /// Missing edge count; `None` for the complete graph.
    pub t: Option<u32>,
    pub rot: RotationSystem,
    pub summary: EmbeddingSummary,
    pub source: String,
}

pub const SUPPORTED: &str = "9, 10, 11, 17, 12s+5 (s>=1), 12s+6 (s>=2), 12s+8 (s>=2), 12s+9 (s>=1), 12s+11 (s>=1)";

/// The family that starts the pipeline for `n`, if any.
pub fn family_for(n: u32) -> Option<FamilyParams> {
    let s = n / 12;
    let case = match (n % 12, s) {
        (5, 1) => Case::C5,
        (5, _) if s >= 2 => Case::C5min,
        (6, _) if s >= 2 => Case::C6,
        (8, _) if s >= 2 => Case::C8,
        (9, 1) => Case::C9s1,
        (9, _) if s >= 2 => Case::C9,
        (11, 1) => Case::C11s1,
        (11, 2) => Case::C11s2,
        (11, _) if s >= 3 => Case::C11,
        _ => return None,
    };
    FamilyParams::new(case, s).ok()
}

fn entry(rot: RotationSystem, source: String) -> Result<CatalogEntry> {
    let summary = analyze(&rot)?;
    let d = deficit(&rot);
    let t = d.missing.len() as u32;
    if t == 0 {
        let g = genus_kn(d.n as u32)?;
        if summary.genus != g {
            return Err(Error::Internal(format!(
                "K{} in genus {} instead of {g}",
                d.n, summary.genus
            )));
        }
        return Ok(CatalogEntry {
            label: format!("K{}", d.n),
            t: None,
            rot,
            summary,
            source,
        });
    }
    if !summary.triangular {
        return Err(Error::Internal(format!("({},{t}) output is not triangular", d.n)));
    }
    if triangulation_genus(d.n as i64, t as i64) != Some(summary.genus as i64) {
        return Err(Error::Internal(format!(
            "({},{t}) has genus {} against the Euler count",
            d.n, summary.genus
        )));
    }
    Ok(CatalogEntry {
        label: format!("({},{t})", d.n),
        t: Some(t),
        rot,
        summary,
        source,
    })
}

/// Shifts whose handles are pairwise edge-disjoint, chosen greedily in
/// increasing order.
pub fn disjoint_shifts(ladder: &LadderSpec, modulus: u32) -> Vec<u32> {
    let mut used = BTreeSet::new();
    let mut out = Vec::new();
    for k in (0..modulus).step_by(3) {
        let es = ladder.handle_edges(modulus, k);
        let set: BTreeSet<_> = es.iter().copied().collect();
        if set.len() == 6 && set.is_disjoint(&used) {
            used.extend(set);
            out.push(k);
        }
    }
    out
}

fn pipeline(rot: &RotationSystem) -> Result<SurgeryOutcome> {
    match deficit(rot).shape {
        DeficitShape::K2 => surgery::complete_k2(rot),
        DeficitShape::K3 => surgery::complete_k3(rot),
        DeficitShape::C4 => surgery::complete_c4(rot),
        DeficitShape::K(5) => surgery::lemma_k5(rot, &Witness::default()),
        DeficitShape::K(6) => surgery::lemma_k6(rot, None, None),
        DeficitShape::K(8) => surgery::lemma_k8(rot, &Witness::default()),
        s => Err(Error::Unsupported(format!("no completion pipeline for deficit {s}"))),
    }
}

/// Catalog for `n`, sorted by decreasing `t` with `K_n` last.
pub fn catalog(n: u32) -> Result<Vec<CatalogEntry>> {
    let mut by_t: BTreeMap<u32, CatalogEntry> = BTreeMap::new();
    let mut complete = None;
    let mut base = None;
    let mut ladders = Vec::new();
    match n {
        9 => {
            let k8 = sporadic(SporadicName::K8q0q1);
            let (q0, q1) = (VertexId::Num(8), VertexId::Num(9));
            let faces = surgery::canonical_faces(&k8)?;
            let f1 = faces.iter().find(|f| f.contains(q0)).unwrap();
            let f2 = faces.iter().find(|f| f.contains(q1)).unwrap();
            let i = f1.corners().iter().position(|&x| x == q0).unwrap();
            let j = f2.corners().iter().position(|&x| x == q1).unwrap();
            let joined = surgery::construction3(&k8, f1, i, f2, j)?;
            let k9 = surgery::amalgamate(&joined, q0, q1)?;
            complete = Some(entry(k9, "K8q0q1, construction 3 on (8, 9), amalgamate".into())?);
        }
        10 => {
            let e = entry(sporadic(SporadicName::K8q0q1), "sporadic K8q0q1".into())?;
            by_t.insert(e.t.unwrap(), e);
        }
        11 => base = Some((sporadic(SporadicName::K11mC4), "sporadic K11mC4".to_string())),
        _ => {
            let params = family_for(n)
                .ok_or_else(|| Error::Unsupported(format!("n={n} is not supported; supported: {SUPPORTED}")))?;
            let cg = build(params)?;
            ladders = find_ladders(&cg);
            base = Some((derive_embedding(&cg)?, format!("{} s={}", params.case, params.s)));
        }
    }
    if let Some((rot, src)) = base {
        let t0 = deficit(&rot).missing.len() as u32;
        // the ladder giving the most disjoint handles
        let best = ladders
            .iter()
            .map(|l| (disjoint_shifts(l, rot.modulus()), l))
            .max_by_key(|(s, _)| s.len());
        if let Some((shifts, lad)) = best {
            for m in 1..=shifts.len() {
                let t = t0 + 6 * m as u32;
                if !mt_valid(n as i64, t as i64) {
                    break;
                }
                let r = subtract_handles(&rot, lad, &shifts[..m])?;
                let e = entry(
                    r,
                    format!(
                        "{src}, subtract {m} handle(s) of ladder {lad} at shifts {:?}",
                        &shifts[..m]
                    ),
                )?;
                by_t.insert(t, e);
            }
        }
        let out = pipeline(&rot)?;
        for st in &out.stages {
            let t = st.deficit.missing.len() as u32;
            if t == 0 {
                complete = Some(entry(st.rot.clone(), format!("{src}, completion pipeline"))?);
            } else if st.summary.triangular && !by_t.contains_key(&t) {
                by_t.insert(t, entry(st.rot.clone(), format!("{src}, stage {}", st.label))?);
            }
        }
    }
    let mut out: Vec<CatalogEntry> = by_t.into_values().rev().collect();
    out.extend(complete);
    Ok(out)
}
