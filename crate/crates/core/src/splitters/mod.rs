//! Coloring algorithms that produce splitting certificates.
//!
//! A certificate assigns every element (or arc) of a subject to one part of a
//! multiset of principal classes; it is valid when each color class avoids the
//! pattern of its part. Validation lives in [`crate::oracle`].

mod greedy;
mod matching_split;
mod refine;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{contains, Permutation};

pub use greedy::{dilworth_split, easy_split_parts, greedy_three_sum, Dilworth, GreedyThreeSum};
pub use matching_split::{
    circle_color, match_split, oneplus_split, CircleColoring, MatchSplit, OnePlus,
};
pub use refine::refine_colorer;

/// A multiset of forbidden patterns, one per part `Av(pattern)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SplittingSpec {
    parts: Vec<Permutation>,
}

impl SplittingSpec {
    pub fn new(parts: Vec<Permutation>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::Precondition(
                "a splitting needs at least one part".into(),
            ));
        }
        if parts.iter().any(Permutation::is_empty) {
            return Err(Error::Precondition("part patterns must be nonempty".into()));
        }
        Ok(Self { parts })
    }

    /// `k ⊙ self`: every multiplicity multiplied by `k`.
    pub fn times(&self, k: usize) -> Self {
        Self {
            parts: (0..k).flat_map(|_| self.parts.iter().cloned()).collect(),
        }
    }

    pub fn parts(&self) -> &[Permutation] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Distinct patterns with multiplicities, in order of first appearance.
    pub fn grouped(&self) -> Vec<(Permutation, usize)> {
        let mut out: Vec<(Permutation, usize)> = Vec::new();
        for p in &self.parts {
            match out.iter_mut().find(|(q, _)| q == p) {
                Some((_, k)) => *k += 1,
                None => out.push((p.clone(), 1)),
            }
        }
        out
    }
}

impl fmt::Display for SplittingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (p, k)) in self.grouped().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            if *k > 1 {
                write!(f, "{k}*")?;
            }
            write!(f, "{}", p.to_compact())?;
        }
        Ok(())
    }
}

impl FromStr for SplittingSpec {
    type Err = Error;

    /// Comma-separated patterns with optional `k*` multiplicity prefixes,
    /// e.g. `"2*132,213"`.
    fn from_str(s: &str) -> Result<Self> {
        let err = |reason: String| Error::Parse {
            what: "splitting spec",
            input: s.to_string(),
            reason,
        };
        if s.trim().is_empty() {
            return Err(err("empty spec".into()));
        }
        let mut parts = Vec::new();
        for item in s.split(',') {
            let item = item.trim();
            let (k, pat) = match item.split_once('*') {
                Some((k, pat)) => (
                    k.trim()
                        .parse::<usize>()
                        .map_err(|_| err(format!("bad multiplicity in {item:?}")))?,
                    pat,
                ),
                None => (1, item),
            };
            let p: Permutation = pat.parse().map_err(|e: Error| err(e.to_string()))?;
            if p.is_empty() || k == 0 {
                return Err(err(format!("empty part {item:?}")));
            }
            parts.extend(std::iter::repeat_n(p, k));
        }
        Self::new(parts).map_err(|e| err(e.to_string()))
    }
}

/// An assignment of each element (or arc) of `subject` to a part.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringCertificate<S = Permutation> {
    pub subject: S,
    pub parts: Vec<Permutation>,
    pub colors: Vec<usize>,
}

impl<S> ColoringCertificate<S> {
    /// Indices carrying color `c`.
    pub fn class(&self, c: usize) -> Vec<usize> {
        (0..self.colors.len())
            .filter(|&i| self.colors[i] == c)
            .collect()
    }

    /// Number of distinct colors actually used.
    pub fn colors_used(&self) -> usize {
        let mut seen = vec![false; self.parts.len()];
        for &c in &self.colors {
            seen[c] = true;
        }
        seen.into_iter().filter(|&b| b).count()
    }
}

impl ColoringCertificate<Permutation> {
    /// First class that contains its forbidden pattern, with that occurrence
    /// (positions in the subject). Uses plain containment, so splitters can
    /// self-check without going through the oracle.
    pub(crate) fn first_violation(&self) -> Option<(usize, Vec<usize>)> {
        (0..self.parts.len()).find_map(|c| {
            let class = self.class(c);
            let sub = self.subject.restrict(&class);
            contains(&self.parts[c], &sub)
                .map(|e| (c, e.positions.iter().map(|&i| class[i]).collect()))
        })
    }
}

/// Colors permutations of a class against a fixed multiset of parts.
pub trait Colorer {
    /// The part patterns; colors index into this list.
    fn parts(&self) -> Vec<Permutation>;

    /// A color per element of `p`.
    fn color(&self, p: &Permutation) -> Result<Vec<usize>>;

    fn certify(&self, p: &Permutation) -> Result<ColoringCertificate> {
        Ok(ColoringCertificate {
            subject: p.clone(),
            parts: self.parts(),
            colors: self.color(p)?,
        })
    }
}

/// A [`Colorer`] backed by a closure.
pub struct FnColorer<F> {
    parts: Vec<Permutation>,
    f: F,
}

impl<F> FnColorer<F>
where
    F: Fn(&Permutation) -> Result<Vec<usize>>,
{
    pub fn new(parts: Vec<Permutation>, f: F) -> Self {
        Self { parts, f }
    }
}

impl<F> Colorer for FnColorer<F>
where
    F: Fn(&Permutation) -> Result<Vec<usize>>,
{
    fn parts(&self) -> Vec<Permutation> {
        self.parts.clone()
    }

    fn color(&self, p: &Permutation) -> Result<Vec<usize>> {
        (self.f)(p)
    }
}
