//! Ordered perfect matchings (chord diagrams).
//!
//! A [`Matching`] is always stored in canonical form: endpoints are `1..=2m`
//! and arcs are sorted by left endpoint, so isomorphism is plain equality.
//! Constructions that need fractional endpoints go through
//! [`Matching::from_coords`], which renormalizes immediately.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::perm::Permutation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arc {
    pub left: u32,
    pub right: u32,
}

impl Arc {
    pub fn new(left: u32, right: u32) -> Self {
        Self { left, right }
    }

    /// True iff the point `x` lies strictly under the arc.
    pub fn covers(&self, x: u32) -> bool {
        self.left < x && x < self.right
    }
}

/// The position of one arc relative to another.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ArcRelation {
    /// `a < c < b < d`
    CrossesFromLeft,
    /// `c < a < d < b`
    CrossesFromRight,
    /// `c < a < b < d`
    NestedBelow,
    /// `a < c < d < b`
    NestsAbove,
    /// `b < c`
    SeriesBefore,
    /// `d < a`
    SeriesAfter,
}

impl ArcRelation {
    pub fn is_crossing(self) -> bool {
        matches!(self, Self::CrossesFromLeft | Self::CrossesFromRight)
    }
}

/// Classifies `(a, b)` against `(c, d)` by the order of the four endpoints.
pub fn relation(x: Arc, y: Arc) -> Result<ArcRelation> {
    let (a, b, c, d) = (x.left, x.right, y.left, y.right);
    if a == c || a == d || b == c || b == d {
        return Err(Error::SharedEndpoint);
    }
    Ok(if b < c {
        ArcRelation::SeriesBefore
    } else if d < a {
        ArcRelation::SeriesAfter
    } else if a < c {
        if b < d {
            ArcRelation::CrossesFromLeft
        } else {
            ArcRelation::NestsAbove
        }
    } else if b < d {
        ArcRelation::NestedBelow
    } else {
        ArcRelation::CrossesFromRight
    })
}

fn rel(x: Arc, y: Arc) -> ArcRelation {
    relation(x, y).expect("arcs of one matching never share endpoints")
}

pub fn crosses(x: Arc, y: Arc) -> bool {
    rel(x, y).is_crossing()
}

/// A perfect matching on `1..=2m` in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Matching {
    arcs: Vec<Arc>,
}

impl Matching {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a matching from integer endpoint pairs in any order; the
    /// endpoints need not be `1..=2m` and each pair may be given either way round.
    pub fn from_pairs(pairs: &[(u32, u32)]) -> Result<Self> {
        let coords: Vec<(f64, f64)> = pairs.iter().map(|&(a, b)| (a as f64, b as f64)).collect();
        Self::from_coords(&coords)
    }

    /// Builds a matching from real endpoint coordinates and renormalizes them
    /// to `1..=2m`. Coordinates must be finite and pairwise distinct.
    pub fn from_coords(pairs: &[(f64, f64)]) -> Result<Self> {
        let mut points: Vec<(f64, usize)> = Vec::with_capacity(pairs.len() * 2);
        for (i, &(a, b)) in pairs.iter().enumerate() {
            if !a.is_finite() || !b.is_finite() {
                return Err(Error::InvalidMatching("non-finite endpoint".into()));
            }
            points.push((a, i));
            points.push((b, i));
        }
        points.sort_by(|x, y| x.0.total_cmp(&y.0));
        if points.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::SharedEndpoint);
        }
        let mut ends: Vec<Vec<u32>> = vec![Vec::with_capacity(2); pairs.len()];
        for (rank, &(_, i)) in points.iter().enumerate() {
            ends[i].push(rank as u32 + 1);
        }
        let arcs = ends.into_iter().map(|e| Arc::new(e[0], e[1])).collect();
        Ok(Self::from_normalized(arcs))
    }

    fn from_normalized(mut arcs: Vec<Arc>) -> Self {
        arcs.sort();
        Self { arcs }
    }

    /// Rebuilds a matching from the arc label at each endpoint position, left
    /// to right. Each label must occur exactly twice.
    pub(crate) fn from_endpoint_sequence(seq: &[usize]) -> Self {
        let mut first: std::collections::HashMap<usize, u32> = Default::default();
        let mut arcs = Vec::with_capacity(seq.len() / 2);
        for (i, &label) in seq.iter().enumerate() {
            let x = i as u32 + 1;
            match first.remove(&label) {
                Some(l) => arcs.push(Arc::new(l, x)),
                None => {
                    first.insert(label, x);
                }
            }
        }
        assert!(first.is_empty(), "unpaired endpoint label");
        Self::from_normalized(arcs)
    }

    /// The arc index at each endpoint `1..=2m`, as a 0-based sequence.
    pub(crate) fn endpoint_sequence(&self) -> Vec<usize> {
        let mut seq = vec![0; 2 * self.len()];
        for (i, a) in self.arcs.iter().enumerate() {
            seq[a.left as usize - 1] = i;
            seq[a.right as usize - 1] = i;
        }
        seq
    }

    /// Arc endpoints as real coordinates, for constructions that insert arcs
    /// between existing endpoints.
    pub fn coords(&self) -> Vec<(f64, f64)> {
        self.arcs
            .iter()
            .map(|a| (a.left as f64, a.right as f64))
            .collect()
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    /// `partner[x]` is the other endpoint of the arc at `x` (index 0 unused).
    pub fn partners(&self) -> Vec<u32> {
        let mut p = vec![0; 2 * self.len() + 1];
        for a in &self.arcs {
            p[a.left as usize] = a.right;
            p[a.right as usize] = a.left;
        }
        p
    }

    /// `is_left[x]` for each endpoint `x` (index 0 unused).
    pub fn left_mask(&self) -> Vec<bool> {
        let mut m = vec![false; 2 * self.len() + 1];
        for a in &self.arcs {
            m[a.left as usize] = true;
        }
        m
    }

    /// Index of the arc with endpoint `x`.
    pub fn arc_at(&self, x: u32) -> Option<usize> {
        self.arcs.iter().position(|a| a.left == x || a.right == x)
    }

    /// The submatching on the given arc indices, renormalized.
    pub fn sub(&self, indices: &[usize]) -> Self {
        let pairs: Vec<(u32, u32)> = indices
            .iter()
            .map(|&i| (self.arcs[i].left, self.arcs[i].right))
            .collect();
        Self::from_pairs(&pairs).expect("submatching of a valid matching")
    }

    /// `self ⊎ other`: `other` placed entirely to the right.
    pub fn disjoint_union(&self, other: &Self) -> Self {
        let shift = 2 * self.len() as u32;
        let mut arcs = self.arcs.clone();
        arcs.extend(
            other
                .arcs
                .iter()
                .map(|a| Arc::new(a.left + shift, a.right + shift)),
        );
        Self::from_normalized(arcs)
    }

    /// Mirror image: endpoint `x` goes to `2m + 1 - x`.
    pub fn mirror(&self) -> Self {
        let t = 2 * self.len() as u32 + 1;
        Self::from_normalized(
            self.arcs
                .iter()
                .map(|a| Arc::new(t - a.right, t - a.left))
                .collect(),
        )
    }

    /// An arc is short iff no endpoint lies strictly beneath it.
    pub fn is_short(&self, i: usize) -> bool {
        let a = self.arcs[i];
        a.right == a.left + 1
    }

    pub fn long_arc_count(&self) -> usize {
        (0..self.len()).filter(|&i| !self.is_short(i)).count()
    }

    /// Arc count plus long-arc count.
    pub fn weight(&self) -> usize {
        self.len() + self.long_arc_count()
    }

    pub fn crossing_count(&self) -> usize {
        let mut c = 0;
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                if crosses(self.arcs[i], self.arcs[j]) {
                    c += 1;
                }
            }
        }
        c
    }

    /// Adjacency lists of the intersection graph.
    pub fn intersection_graph(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut adj = vec![Vec::new(); n];
        for i in 0..n {
            for j in i + 1..n {
                if crosses(self.arcs[i], self.arcs[j]) {
                    adj[i].push(j);
                    adj[j].push(i);
                }
            }
        }
        adj
    }

    /// Connected components of the intersection graph, each sorted, ordered by
    /// least arc index.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.intersection_graph();
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for s in 0..self.len() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &v in &adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        stack.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Breadth-first layers of the intersection graph starting from the arc at
    /// endpoint 1. Errors on a disconnected matching.
    pub fn levels(&self) -> Result<Vec<Vec<usize>>> {
        if self.is_empty() {
            return Ok(Vec::new());
        }
        let adj = self.intersection_graph();
        let mut dist = vec![usize::MAX; self.len()];
        dist[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        if dist.contains(&usize::MAX) {
            return Err(Error::Precondition(
                "levels of a disconnected matching".into(),
            ));
        }
        let depth = dist.iter().max().copied().unwrap_or(0);
        let mut levels = vec![Vec::new(); depth + 1];
        for (i, &d) in dist.iter().enumerate() {
            levels[d].push(i);
        }
        Ok(levels)
    }

    /// Arc index sets of the blocks, left to right.
    pub fn block_indices(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        let mut reach = 0;
        for (i, a) in self.arcs.iter().enumerate() {
            if !current.is_empty() && a.left > reach {
                out.push(std::mem::take(&mut current));
            }
            current.push(i);
            reach = reach.max(a.right);
        }
        if !current.is_empty() {
            out.push(current);
        }
        out
    }

    /// The unique decomposition into ⊎-indecomposable blocks, left to right.
    pub fn blocks(&self) -> Vec<Matching> {
        self.block_indices().iter().map(|b| self.sub(b)).collect()
    }

    pub fn is_union_indecomposable(&self) -> bool {
        self.block_indices().len() <= 1
    }

    /// True iff every left endpoint precedes every right endpoint.
    pub fn is_permutation_matching(&self) -> bool {
        let m = self.len() as u32;
        self.arcs.iter().all(|a| a.left <= m && a.right > m)
    }

    /// All perfect matchings with `m` arcs.
    pub fn all_with_arcs(m: usize) -> Vec<Matching> {
        fn rec(free: &mut Vec<u32>, arcs: &mut Vec<Arc>, out: &mut Vec<Matching>) {
            if free.is_empty() {
                out.push(Matching::from_normalized(arcs.clone()));
                return;
            }
            let first = free.remove(0);
            for k in 0..free.len() {
                let other = free.remove(k);
                arcs.push(Arc::new(first, other));
                rec(free, arcs, out);
                arcs.pop();
                free.insert(k, other);
            }
            free.insert(0, first);
        }
        let mut out = Vec::new();
        rec(&mut (1..=2 * m as u32).collect(), &mut Vec::new(), &mut out);
        out.sort();
        out
    }
}

/// The permutation matching: arcs `(-p(i), i)`, renormalized to `1..=2n`.
pub fn m_of(p: &Permutation) -> Matching {
    let n = p.len() as u32;
    Matching::from_normalized(
        p.values()
            .iter()
            .enumerate()
            .map(|(i, &v)| Arc::new(n + 1 - v, n + 1 + i as u32))
            .collect(),
    )
}

/// Inverse of [`m_of`] on permutation matchings.
pub fn perm_of(m: &Matching) -> Option<Permutation> {
    perm_of_with_positions(m).map(|(p, _)| p)
}

/// Like [`perm_of`], also returning, for every arc index, the 0-based position
/// of the element it encodes.
pub fn perm_of_with_positions(m: &Matching) -> Option<(Permutation, Vec<usize>)> {
    if !m.is_permutation_matching() {
        return None;
    }
    let k = m.len() as u32;
    let mut values = vec![0u32; m.len()];
    let mut pos = Vec::with_capacity(m.len());
    for a in m.arcs() {
        let i = (a.right - k - 1) as usize;
        values[i] = k + 1 - a.left;
        pos.push(i);
    }
    Some((Permutation::new(values).expect("permutation matching"), pos))
}

/// The lexicographically least host-arc index set that is isomorphic to `pattern`.
pub fn find_submatching(pattern: &Matching, host: &Matching) -> Option<Vec<usize>> {
    fn rec(pat: &[Arc], host: &[Arc], chosen: &mut Vec<usize>) -> bool {
        let k = chosen.len();
        if k == pat.len() {
            return true;
        }
        let start = chosen.last().map_or(0, |&c| c + 1);
        let remaining = pat.len() - k;
        if host.len() < remaining {
            return false;
        }
        for h in start..=host.len() - remaining {
            let ok = chosen
                .iter()
                .enumerate()
                .all(|(t, &c)| rel(pat[t], pat[k]) == rel(host[c], host[h]));
            if ok {
                chosen.push(h);
                if rec(pat, host, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    if pattern.len() > host.len() {
        return None;
    }
    let mut chosen = Vec::with_capacity(pattern.len());
    rec(pattern.arcs(), host.arcs(), &mut chosen).then_some(chosen)
}

/// True iff some subset of `host`'s arcs is isomorphic to `pattern`.
pub fn matching_contains(pattern: &Matching, host: &Matching) -> bool {
    find_submatching(pattern, host).is_some()
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.arcs.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}-{}", a.left, a.right)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matching({self})")
    }
}

impl FromStr for Matching {
    type Err = Error;

    /// Parses `"1-5 2-4 3-6"`; endpoints may be any distinct decimals and
    /// are renormalized.
    fn from_str(s: &str) -> Result<Self> {
        let err = |reason: String| Error::Parse {
            what: "matching",
            input: s.to_string(),
            reason,
        };
        let t = s.trim();
        if t.is_empty() || t == "∅" {
            return Ok(Self::empty());
        }
        let mut pairs = Vec::new();
        for tok in t
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|w| !w.is_empty())
        {
            let (a, b) = tok
                .split_once('-')
                .ok_or_else(|| err(format!("arc {tok:?} is not of the form l-r")))?;
            let a: f64 = a.parse().map_err(|_| err(format!("bad endpoint {a:?}")))?;
            let b: f64 = b.parse().map_err(|_| err(format!("bad endpoint {b:?}")))?;
            if a == b {
                return Err(err(format!("degenerate arc {tok:?}")));
            }
            pairs.push((a, b));
        }
        Self::from_coords(&pairs).map_err(|e| err(e.to_string()))
    }
}

impl Serialize for Matching {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Matching {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses a matching literal, panicking on malformed input. Intended for
/// tests and examples.
pub fn matching(s: &str) -> Matching {
    s.parse().unwrap_or_else(|e| panic!("{e}"))
}
