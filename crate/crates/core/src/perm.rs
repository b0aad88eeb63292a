//! Permutations in one-line notation, pattern containment, sums, inflations and
//! the structural predicates used throughout the crate.
//!
//! Positions are 0-based in the Rust API. Values are the ranks `1..=n`.

use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A permutation of `1..=n` in one-line notation. The empty permutation is allowed.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Permutation {
    values: Vec<u32>,
}

/// An occurrence of a pattern: strictly increasing host positions (0-based).
/// Serializes as the 1-based position list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<usize>", try_from = "Vec<usize>")]
pub struct Embedding {
    pub positions: Vec<usize>,
}

impl From<Embedding> for Vec<usize> {
    fn from(e: Embedding) -> Self {
        e.one_based()
    }
}

impl TryFrom<Vec<usize>> for Embedding {
    type Error = Error;

    fn try_from(one_based: Vec<usize>) -> Result<Self> {
        if one_based.contains(&0) || one_based.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Parse {
                what: "embedding",
                input: format!("{one_based:?}"),
                reason: "positions must be increasing and 1-based".into(),
            });
        }
        Ok(Self {
            positions: one_based.into_iter().map(|p| p - 1).collect(),
        })
    }
}

impl Embedding {
    /// Positions in 1-based form, as used by the text interfaces.
    pub fn one_based(&self) -> Vec<usize> {
        self.positions.iter().map(|p| p + 1).collect()
    }
}

/// The four containment-preserving symmetries of the permutation poset
/// (besides the identity).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Symmetry {
    Reverse,
    Complement,
    Inverse,
    ReverseComplement,
}

impl Symmetry {
    pub const ALL: [Symmetry; 4] = [
        Symmetry::Reverse,
        Symmetry::Complement,
        Symmetry::Inverse,
        Symmetry::ReverseComplement,
    ];
}

impl Permutation {
    /// Builds a permutation, checking that `values` is a bijection on `1..=n`.
    pub fn new(values: Vec<u32>) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n];
        for &v in &values {
            let idx = v as usize;
            if idx == 0 || idx > n {
                return Err(Error::InvalidPermutation(format!(
                    "value {v} out of range 1..={n}"
                )));
            }
            if std::mem::replace(&mut seen[idx - 1], true) {
                return Err(Error::InvalidPermutation(format!("value {v} repeated")));
            }
        }
        Ok(Self { values })
    }

    pub(crate) fn from_vec_unchecked(values: Vec<u32>) -> Self {
        debug_assert!(Self::new(values.clone()).is_ok());
        Self { values }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn identity(n: usize) -> Self {
        Self::from_vec_unchecked((1..=n as u32).collect())
    }

    /// The decreasing permutation `n (n-1) ... 1`.
    pub fn decreasing(n: usize) -> Self {
        Self::from_vec_unchecked((1..=n as u32).rev().collect())
    }

    /// The permutation order-isomorphic to an arbitrary sequence of distinct keys.
    pub fn standardize<T: Ord>(keys: &[T]) -> Self {
        let mut idx: Vec<usize> = (0..keys.len()).collect();
        idx.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
        let mut values = vec![0u32; keys.len()];
        for (rank, &i) in idx.iter().enumerate() {
            values[i] = rank as u32 + 1;
        }
        Self { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    /// Value at 0-based position `i`.
    pub fn at(&self, i: usize) -> u32 {
        self.values[i]
    }

    /// The pattern formed by the elements at the given positions.
    pub fn restrict(&self, positions: &[usize]) -> Self {
        let keys: Vec<u32> = positions.iter().map(|&p| self.values[p]).collect();
        Self::standardize(&keys)
    }

    /// Removes the element at position `i` and standardizes.
    pub fn delete(&self, i: usize) -> Self {
        let keys: Vec<u32> = self
            .values
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &v)| v)
            .collect();
        Self::standardize(&keys)
    }

    /// Inserts a new element at position `pos` with value `value`, shifting
    /// values `>= value` up by one.
    pub fn insert(&self, pos: usize, value: u32) -> Self {
        assert!(pos <= self.len() && value >= 1 && value as usize <= self.len() + 1);
        let mut values: Vec<u32> = self
            .values
            .iter()
            .map(|&v| if v >= value { v + 1 } else { v })
            .collect();
        values.insert(pos, value);
        Self { values }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u32; self.len()];
        for (i, &v) in self.values.iter().enumerate() {
            inv[v as usize - 1] = i as u32 + 1;
        }
        Self { values: inv }
    }

    pub fn reverse(&self) -> Self {
        Self {
            values: self.values.iter().rev().copied().collect(),
        }
    }

    pub fn complement(&self) -> Self {
        let n = self.len() as u32;
        Self {
            values: self.values.iter().map(|&v| n + 1 - v).collect(),
        }
    }

    pub fn apply(&self, kind: Symmetry) -> Self {
        match kind {
            Symmetry::Reverse => self.reverse(),
            Symmetry::Complement => self.complement(),
            Symmetry::Inverse => self.inverse(),
            Symmetry::ReverseComplement => self.reverse().complement(),
        }
    }

    /// `self ⊕ other`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let shift = self.len() as u32;
        let mut values = self.values.clone();
        values.extend(other.values.iter().map(|&v| v + shift));
        Self { values }
    }

    /// `self ⊖ other`.
    pub fn skew_sum(&self, other: &Self) -> Self {
        let shift = other.len() as u32;
        let mut values: Vec<u32> = self.values.iter().map(|&v| v + shift).collect();
        values.extend_from_slice(&other.values);
        Self { values }
    }

    /// Splits `self = a ⊕ b` at the least possible cut; `None` if sum-indecomposable.
    pub fn sum_decompose(&self) -> Option<(Self, Self)> {
        let n = self.len();
        let mut max = 0;
        for k in 1..n {
            max = max.max(self.values[k - 1]);
            if max as usize == k {
                let (a, b) = self.values.split_at(k);
                return Some((Self::standardize(a), Self::standardize(b)));
            }
        }
        None
    }

    /// Splits `self = a ⊖ b` at the least possible cut; `None` if skew-indecomposable.
    pub fn skew_decompose(&self) -> Option<(Self, Self)> {
        let n = self.len();
        let mut min = u32::MAX;
        for k in 1..n {
            min = min.min(self.values[k - 1]);
            if min as usize == n - k + 1 {
                let (a, b) = self.values.split_at(k);
                return Some((Self::standardize(a), Self::standardize(b)));
            }
        }
        None
    }

    /// The finest decomposition `c1 ⊕ c2 ⊕ ... ⊕ ck` into sum-indecomposable pieces.
    pub fn sum_components(&self) -> Vec<Self> {
        let mut out = Vec::new();
        let mut rest = self.clone();
        while let Some((a, b)) = rest.sum_decompose() {
            out.push(a);
            rest = b;
        }
        if !rest.is_empty() {
            out.push(rest);
        }
        out
    }

    pub fn is_sum_decomposable(&self) -> bool {
        self.sum_decompose().is_some()
    }

    pub fn is_skew_decomposable(&self) -> bool {
        self.skew_decompose().is_some()
    }

    /// True iff there is no interval of length strictly between 1 and `n`.
    pub fn is_simple(&self) -> bool {
        let n = self.len();
        for i in 0..n {
            let (mut lo, mut hi) = (self.values[i], self.values[i]);
            for j in i + 1..n {
                lo = lo.min(self.values[j]);
                hi = hi.max(self.values[j]);
                let len = j - i + 1;
                if len < n && (hi - lo) as usize == j - i {
                    return false;
                }
            }
        }
        true
    }

    /// Positions of the left-to-right minima.
    pub fn lr_minima(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut min = u32::MAX;
        for (i, &v) in self.values.iter().enumerate() {
            if v < min {
                min = v;
                out.push(i);
            }
        }
        out
    }

    /// Mask of left-to-right minima, indexed by position.
    pub fn lr_minimum_mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.len()];
        for i in self.lr_minima() {
            mask[i] = true;
        }
        mask
    }

    /// All permutations of order `n` in lexicographic order.
    pub fn all_of_order(n: usize) -> AllPermutations {
        AllPermutations {
            next: Some(Self::identity(n).values),
        }
    }

    /// Canonical text: space-separated values, `ε` for the empty permutation.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    /// Digit string for `n <= 9`, falling back to the canonical form.
    pub fn to_compact(&self) -> String {
        if self.is_empty() {
            "ε".to_string()
        } else if self.len() <= 9 {
            self.values.iter().map(|v| v.to_string()).collect()
        } else {
            self.to_string()
        }
    }
}

/// Lexicographic enumeration of `S_n`.
pub struct AllPermutations {
    next: Option<Vec<u32>>,
}

impl Iterator for AllPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        let n = succ.len();
        if n >= 2 {
            if let Some(i) = (0..n - 1).rev().find(|&i| succ[i] < succ[i + 1]) {
                let j = (i + 1..n).rev().find(|&j| succ[j] > succ[i]).unwrap();
                succ.swap(i, j);
                succ[i + 1..].reverse();
                self.next = Some(succ);
            }
        }
        Some(Permutation { values: cur })
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("ε");
        }
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({})", self.to_compact())
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts `"2413"` (digits, `n <= 9`), `"2 4 1 3"`, `""` and `"ε"`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let err = |reason: &str| Error::Parse {
            what: "permutation",
            input: s.to_string(),
            reason: reason.to_string(),
        };
        if t.is_empty() || t == "ε" {
            return Ok(Self::empty());
        }
        let values: Vec<u32> = if t.chars().any(char::is_whitespace) {
            t.split_whitespace()
                .map(|w| w.parse::<u32>().map_err(|_| err("non-numeric entry")))
                .collect::<Result<_>>()?
        } else {
            if t.len() > 9 {
                return Err(err(
                    "digit notation is limited to n <= 9; separate with spaces",
                ));
            }
            t.chars()
                .map(|c| c.to_digit(10).ok_or_else(|| err("non-digit character")))
                .collect::<Result<_>>()?
        };
        Self::new(values).map_err(|e| err(&e.to_string()))
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses a permutation literal, panicking on malformed input. Intended for
/// tests and examples.
pub fn perm(s: &str) -> Permutation {
    s.parse().unwrap_or_else(|e| panic!("{e}"))
}

/// Visits every embedding of `pattern` into `host` in lexicographic order of
/// positions, stopping when the visitor breaks.
///
/// Backtracking extends a partial embedding only while its image stays
/// order-isomorphic to the corresponding prefix of the pattern.
pub fn for_each_embedding<F>(
    pattern: &Permutation,
    host: &Permutation,
    mut visit: F,
) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let (m, n) = (pattern.len(), host.len());
    if m > n {
        return ControlFlow::Continue(());
    }
    let mut pos = Vec::with_capacity(m);
    embed_rec(pattern.values(), host.values(), &mut pos, 0, &mut visit)
}

fn embed_rec<F>(
    pat: &[u32],
    host: &[u32],
    pos: &mut Vec<usize>,
    start: usize,
    visit: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let k = pos.len();
    if k == pat.len() {
        return visit(pos);
    }
    let remaining = pat.len() - k;
    for j in start..=host.len() - remaining {
        let hv = host[j];
        let consistent = pos
            .iter()
            .zip(pat)
            .all(|(&p, &pv)| (pv < pat[k]) == (host[p] < hv));
        if consistent {
            pos.push(j);
            embed_rec(pat, host, pos, j + 1, visit)?;
            pos.pop();
        }
    }
    ControlFlow::Continue(())
}

/// The lexicographically least embedding of `pattern` into `host`, if any.
pub fn contains(pattern: &Permutation, host: &Permutation) -> Option<Embedding> {
    let mut found = None;
    let _ = for_each_embedding(pattern, host, |p| {
        found = Some(Embedding {
            positions: p.to_vec(),
        });
        ControlFlow::Break(())
    });
    found
}

pub fn avoids(host: &Permutation, pattern: &Permutation) -> bool {
    contains(pattern, host).is_none()
}

pub fn avoids_all(host: &Permutation, basis: &[Permutation]) -> bool {
    basis.iter().all(|b| avoids(host, b))
}

/// The inflation `skeleton[parts[0], ..., parts[n-1]]`.
pub fn inflate(skeleton: &Permutation, parts: &[Permutation]) -> Result<Permutation> {
    if parts.len() != skeleton.len() {
        return Err(Error::ArityMismatch {
            skeleton: skeleton.len(),
            parts: parts.len(),
        });
    }
    if let Some(i) = parts.iter().position(Permutation::is_empty) {
        return Err(Error::EmptyPart(i));
    }
    // offset[v] = total size of the blocks whose skeleton value is below v
    let mut size_by_value = vec![0u32; skeleton.len() + 1];
    for (i, &v) in skeleton.values().iter().enumerate() {
        size_by_value[v as usize] = parts[i].len() as u32;
    }
    let mut offset = vec![0u32; skeleton.len() + 1];
    for v in 1..=skeleton.len() {
        offset[v] = if v == 1 {
            0
        } else {
            offset[v - 1] + size_by_value[v - 1]
        };
    }
    let mut values = Vec::new();
    for (i, &v) in skeleton.values().iter().enumerate() {
        values.extend(parts[i].values().iter().map(|&x| x + offset[v as usize]));
    }
    Ok(Permutation::from_vec_unchecked(values))
}

/// Inflates every left-to-right minimum of `outer` by a copy of `filler`,
/// leaving the covered elements as singletons.
pub fn inflate_lr_minima(outer: &Permutation, filler: &Permutation) -> Result<Permutation> {
    if filler.is_empty() {
        return Err(Error::EmptyPart(0));
    }
    let mask = outer.lr_minimum_mask();
    let one = Permutation::identity(1);
    let parts: Vec<Permutation> = mask
        .iter()
        .map(|&is_min| if is_min { filler.clone() } else { one.clone() })
        .collect();
    inflate(outer, &parts)
}

/// All permutations of order exactly `n` avoiding every pattern of `basis`,
/// in lexicographic order.
pub fn enumerate_avoiders(basis: &[Permutation], n: usize) -> Vec<Permutation> {
    avoiders_up_to(basis, n).pop().unwrap_or_default()
}

/// Avoiders of each order `0..=n`, grown by inserting the new maximum into
/// every position of each avoider one size smaller.
pub fn avoiders_up_to(basis: &[Permutation], n: usize) -> Vec<Vec<Permutation>> {
    let mut levels = Vec::with_capacity(n + 1);
    let mut current = if avoids_all(&Permutation::empty(), basis) {
        vec![Permutation::empty()]
    } else {
        Vec::new()
    };
    levels.push(current.clone());
    for k in 1..=n {
        let mut next = Vec::new();
        for p in &current {
            for pos in 0..k {
                let q = p.insert(pos, k as u32);
                if avoids_all(&q, basis) {
                    next.push(q);
                }
            }
        }
        next.sort();
        levels.push(next.clone());
        current = next;
    }
    levels
}
