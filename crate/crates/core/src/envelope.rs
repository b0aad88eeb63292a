//! Envelope paths and envelope matchings.
//!
//! The envelope of a permutation is the highest non-increasing lattice path
//! from `(0, n)` to `(n, 0)` that stays strictly below every point of its
//! diagram. Labelling its `2n` steps and pairing the down-step in row
//! `π(i)` with the right-step in column `i` gives the envelope matching
//! `E(π)`; its long arcs form the reduced envelope `R(π)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matching::{Arc, Matching};
use crate::perm::Permutation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Step {
    Down,
    Right,
}

/// A permutation together with its envelope path and envelope matching.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "EnvelopeWire", into = "EnvelopeWire")]
pub struct EnvelopeDecomposition {
    pub perm: Permutation,
    pub path: Vec<Step>,
    pub arcs: Matching,
    /// `elem_to_arc[i]` is the index in `arcs` of the arc for position `i`.
    pub elem_to_arc: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct EnvelopeWire {
    perm: Permutation,
    path: String,
    arcs: Matching,
}

impl From<EnvelopeDecomposition> for EnvelopeWire {
    fn from(e: EnvelopeDecomposition) -> Self {
        Self {
            path: path_string(&e.path),
            perm: e.perm,
            arcs: e.arcs,
        }
    }
}

impl TryFrom<EnvelopeWire> for EnvelopeDecomposition {
    type Error = Error;

    fn try_from(w: EnvelopeWire) -> Result<Self> {
        let e = envelope_of(&w.perm);
        if path_string(&e.path) != w.path || e.arcs != w.arcs {
            return Err(Error::Parse {
                what: "envelope",
                input: w.path,
                reason: "path or arcs disagree with the permutation".into(),
            });
        }
        Ok(e)
    }
}

/// `D`/`R` rendering of a lattice path.
pub fn path_string(path: &[Step]) -> String {
    path.iter()
        .map(|s| match s {
            Step::Down => 'D',
            Step::Right => 'R',
        })
        .collect()
}

pub fn envelope_of(p: &Permutation) -> EnvelopeDecomposition {
    let n = p.len();
    let mut path = Vec::with_capacity(2 * n);
    let mut row_label = vec![0u32; n + 1];
    let mut col_label = vec![0u32; n + 1];
    let mut height = n as u32;
    let mut label = 0u32;
    let mut min = u32::MAX;
    for (i, &v) in p.values().iter().enumerate() {
        min = min.min(v);
        while height > min - 1 {
            label += 1;
            row_label[height as usize] = label;
            path.push(Step::Down);
            height -= 1;
        }
        label += 1;
        col_label[i + 1] = label;
        path.push(Step::Right);
    }
    let raw: Vec<Arc> = p
        .values()
        .iter()
        .enumerate()
        .map(|(i, &v)| Arc::new(row_label[v as usize], col_label[i + 1]))
        .collect();
    let pairs: Vec<(u32, u32)> = raw.iter().map(|a| (a.left, a.right)).collect();
    let arcs = Matching::from_pairs(&pairs).expect("envelope arcs are a perfect matching");
    let elem_to_arc = raw
        .iter()
        .map(|a| {
            arcs.arcs()
                .binary_search(a)
                .expect("labels are already normalized")
        })
        .collect();
    EnvelopeDecomposition {
        perm: p.clone(),
        path,
        arcs,
        elem_to_arc,
    }
}

/// The envelope condition: a left endpoint immediately followed by a right
/// endpoint is joined to it.
pub fn is_envelope_matching(m: &Matching) -> bool {
    let left = m.left_mask();
    let partner = m.partners();
    (1..2 * m.len()).all(|a| !(left[a] && !left[a + 1]) || partner[a] as usize == a + 1)
}

/// The unique permutation whose envelope matching is `m`, or `None` if `m`
/// violates the envelope condition.
pub fn decode_envelope(m: &Matching) -> Option<Permutation> {
    if !is_envelope_matching(m) {
        return None;
    }
    let n = m.len();
    let left = m.left_mask();
    // row of the down-step labelled a, column of the right-step labelled b
    let mut row = vec![0u32; 2 * n + 1];
    let mut col = vec![0u32; 2 * n + 1];
    let (mut downs, mut rights) = (0u32, 0u32);
    for a in 1..=2 * n {
        if left[a] {
            row[a] = n as u32 - downs;
            downs += 1;
        } else {
            rights += 1;
            col[a] = rights;
        }
    }
    let mut values = vec![0u32; n];
    for arc in m.arcs() {
        values[col[arc.right as usize] as usize - 1] = row[arc.left as usize];
    }
    let p = Permutation::new(values).ok()?;
    debug_assert_eq!(envelope_of(&p).arcs, *m);
    Some(p)
}

/// `R(π)`: the long arcs of `E(π)`, renormalized.
pub fn reduced_envelope(p: &Permutation) -> Matching {
    reduced_envelope_with_elements(p).0
}

/// `R(π)` together with, for each of its arcs, the 0-based position of the
/// covered element it represents.
pub fn reduced_envelope_with_elements(p: &Permutation) -> (Matching, Vec<usize>) {
    let e = envelope_of(p);
    let mut arc_to_elem = vec![0; p.len()];
    for (i, &a) in e.elem_to_arc.iter().enumerate() {
        arc_to_elem[a] = i;
    }
    let long: Vec<usize> = (0..e.arcs.len()).filter(|&a| !e.arcs.is_short(a)).collect();
    // `sub` keeps relative left-endpoint order, so index k of R is long[k]
    let r = e.arcs.sub(&long);
    let elems = long.iter().map(|&a| arc_to_elem[a]).collect();
    (r, elems)
}

/// Tangling of `m` in the open interval `(lo, hi)` of the normalized
/// endpoint scale.
///
/// Endpoints inside the interval are reordered so that its left endpoints
/// precede its right endpoints, each group keeping its order, and a new short
/// arc is placed between the two groups. With no endpoint inside, the new arc
/// sits where the interval is.
pub fn tangle(m: &Matching, lo: f64, hi: f64) -> Result<Matching> {
    if lo.is_nan() || hi.is_nan() || lo >= hi {
        return Err(Error::Precondition(format!("empty interval ({lo}, {hi})")));
    }
    let seq = m.endpoint_sequence();
    let left = m.left_mask();
    let new_label = m.len();
    let inside = |x: usize| (x as f64) > lo && (x as f64) < hi;
    let positions: Vec<usize> = (1..=seq.len()).filter(|&x| inside(x)).collect();
    let mut out = Vec::with_capacity(seq.len() + 2);
    match (positions.first(), positions.last()) {
        (Some(&first), Some(&last)) => {
            out.extend_from_slice(&seq[..first - 1]);
            out.extend(positions.iter().filter(|&&x| left[x]).map(|&x| seq[x - 1]));
            out.extend([new_label, new_label]);
            out.extend(positions.iter().filter(|&&x| !left[x]).map(|&x| seq[x - 1]));
            out.extend_from_slice(&seq[last..]);
        }
        _ => {
            let before = (1..=seq.len()).filter(|&x| (x as f64) <= lo).count();
            out.extend_from_slice(&seq[..before]);
            out.extend([new_label, new_label]);
            out.extend_from_slice(&seq[before..]);
        }
    }
    Ok(Matching::from_endpoint_sequence(&out))
}

/// Candidate tangling intervals: every pair of gap positions `k + 0.5`,
/// the two outer rays, and one endpoint-free interval inside each gap.
/// Endpoint order makes these exhaustive.
pub fn tangle_intervals(m: &Matching) -> Vec<(f64, f64)> {
    let top = 2 * m.len();
    let mut cuts = vec![f64::NEG_INFINITY];
    cuts.extend((0..=top).map(|k| k as f64 + 0.5));
    cuts.push(f64::INFINITY);
    let mut out = Vec::new();
    for (i, &lo) in cuts.iter().enumerate() {
        for &hi in &cuts[i + 1..] {
            out.push((lo, hi));
        }
    }
    out.extend((0..=top).map(|k| (k as f64 + 0.25, k as f64 + 0.75)));
    out
}

/// An interval whose tangling of `from` yields `to`, if one exists.
pub fn find_tangling(from: &Matching, to: &Matching) -> Option<(f64, f64)> {
    if to.len() != from.len() + 1 {
        return None;
    }
    tangle_intervals(from)
        .into_iter()
        .find(|&(lo, hi)| tangle(from, lo, hi).as_ref() == Ok(to))
}

/// Inserts a short arc into every gap between a left endpoint and an
/// immediately following right endpoint.
pub fn fill_left_right_gaps(m: &Matching) -> Matching {
    let seq = m.endpoint_sequence();
    let left = m.left_mask();
    let mut out = Vec::with_capacity(seq.len() * 2);
    let mut fresh = m.len();
    for x in 1..=seq.len() {
        out.push(seq[x - 1]);
        if x < seq.len() && left[x] && !left[x + 1] {
            out.extend([fresh, fresh]);
            fresh += 1;
        }
    }
    Matching::from_endpoint_sequence(&out)
}

/// A permutation whose reduced envelope is `m`.
pub fn matching_to_perm(m: &Matching) -> Permutation {
    decode_envelope(&fill_left_right_gaps(m)).expect("gap filling yields an envelope matching")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matching::{m_of, matching};
    use crate::perm::perm;

    #[test]
    fn envelope_examples() {
        assert_eq!(envelope_of(&perm("132")).arcs, matching("1-5 2-6 3-4"));
        assert_eq!(envelope_of(&perm("21")).arcs, matching("1-2 3-4"));
        let e = envelope_of(&perm("12"));
        assert_eq!(e.arcs, matching("1-4 2-3"));
        assert_eq!(path_string(&e.path), "DDRR");
        assert_eq!(envelope_of(&perm("231")).arcs, matching("1-4 2-3 5-6"));
    }

    #[test]
    fn decode_examples() {
        assert_eq!(decode_envelope(&matching("1-5 2-6 3-4")), Some(perm("132")));
        assert_eq!(decode_envelope(&matching("1-4 2-3")), Some(perm("12")));
        assert_eq!(decode_envelope(&matching("1-3 2-4")), None);
        assert_eq!(
            decode_envelope(&Matching::empty()),
            Some(Permutation::empty())
        );
    }

    #[test]
    fn reduced_examples() {
        assert_eq!(reduced_envelope(&perm("132")), m_of(&perm("21")));
        assert_eq!(reduced_envelope(&perm("12")), matching("1-2"));
        assert_eq!(reduced_envelope(&perm("213")), matching("1-2"));
        assert!(reduced_envelope(&perm("321")).is_empty());
    }

    #[test]
    fn tangle_examples() {
        let t = tangle(&matching("1-4 2-3"), 4.0, f64::INFINITY).unwrap();
        assert_eq!(t, matching("1-4 2-3 5-6"));
        assert_eq!(t, envelope_of(&perm("231")).arcs);
        let single = tangle(&Matching::empty(), 0.0, 1.0).unwrap();
        assert_eq!(single, matching("1-2"));
        assert!(tangle(&matching("1-2"), 2.0, 1.0).is_err());
    }

    #[test]
    fn matching_to_perm_examples() {
        assert_eq!(matching_to_perm(&m_of(&perm("21"))), perm("132"));
        assert_eq!(matching_to_perm(&matching("1-2")), perm("12"));
        assert_eq!(matching_to_perm(&Matching::empty()), Permutation::empty());
    }

    #[test]
    fn serde_round_trip() {
        let e = envelope_of(&perm("2413"));
        let s = serde_json::to_string(&e).unwrap();
        assert!(s.contains("\"path\":\"DDDRRDRR\""));
        let back: EnvelopeDecomposition = serde_json::from_str(&s).unwrap();
        assert_eq!(back, e);
        let bad = s.replace("\"arcs\":\"", "\"arcs\":\"9-10 ");
        assert!(serde_json::from_str::<EnvelopeDecomposition>(&bad).is_err());
    }

    #[test]
    fn short_arcs_are_lr_minima() {
        for n in 0..=7 {
            for p in Permutation::all_of_order(n) {
                let e = envelope_of(&p);
                let mask = p.lr_minimum_mask();
                for (i, &a) in e.elem_to_arc.iter().enumerate() {
                    assert_eq!(e.arcs.is_short(a), mask[i], "{p:?}");
                }
            }
        }
    }

    #[test]
    fn matching_to_perm_realizes_reduced_envelope() {
        for k in 0..=5 {
            for m in Matching::all_with_arcs(k) {
                assert_eq!(reduced_envelope(&matching_to_perm(&m)), m);
            }
        }
    }

    #[test]
    fn tangling_preserves_envelope_condition() {
        for k in 0..=4 {
            for m in Matching::all_with_arcs(k)
                .into_iter()
                .filter(is_envelope_matching)
            {
                for (lo, hi) in tangle_intervals(&m) {
                    assert!(is_envelope_matching(&tangle(&m, lo, hi).unwrap()));
                }
            }
        }
    }
}
